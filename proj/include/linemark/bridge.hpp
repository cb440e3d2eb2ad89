// Copyright 2026 The Linemark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LINEMARK_BRIDGE_HPP_
#define LINEMARK_BRIDGE_HPP_

// Client side of the NDJSON token-source protocol spoken by an external
// model process:
//
//   -> {"type":"init","vocab_size":V}        <- {"type":"ready"}
//   -> {"type":"next","context":[...],"bias_ids":[...],"delta":d}
//   <- {"type":"token","id":k}
//
// d is a JSON number, or the string "inf" for forced sampling. A peer that
// cannot serve a request answers {"type":"error","message":"..."}. Requests
// are strictly serial: one reply is read before the next request is sent.

#include <cstdio>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "linemark/embedder.hpp"

namespace linemark {

// One line out, one line in.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual void send(const std::string& line) = 0;
  // Throws Error when the peer has closed the channel.
  virtual std::string receive() = 0;
};

class StreamChannel final : public LineChannel {
 public:
  StreamChannel(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  void send(const std::string& line) override;
  std::string receive() override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

// Runs `command` through /bin/sh with its stdin/stdout piped to us.
class ProcessChannel final : public LineChannel {
 public:
  explicit ProcessChannel(const std::string& command);
  ~ProcessChannel() override;
  ProcessChannel(const ProcessChannel&) = delete;
  ProcessChannel& operator=(const ProcessChannel&) = delete;

  void send(const std::string& line) override;
  std::string receive() override;

 private:
  int pid_ = -1;
  std::FILE* to_child_ = nullptr;
  std::FILE* from_child_ = nullptr;
};

// Tees traffic of another channel into a transcript: "> " + request and
// "< " + reply, one per line.
class RecordingChannel final : public LineChannel {
 public:
  RecordingChannel(std::unique_ptr<LineChannel> inner, const std::string& path);
  void send(const std::string& line) override;
  std::string receive() override;

 private:
  std::unique_ptr<LineChannel> inner_;
  std::ofstream transcript_;
};

// Plays a transcript back. Each send must match the next recorded request
// byte for byte (throws Error otherwise); receive returns the next reply.
class ReplayChannel final : public LineChannel {
 public:
  explicit ReplayChannel(std::istream& transcript);
  void send(const std::string& line) override;
  std::string receive() override;

  bool exhausted() const { return cursor_ == entries_.size(); }

 private:
  std::vector<std::pair<char, std::string>> entries_;
  std::size_t cursor_ = 0;
};

std::string encode_init(std::size_t vocab_size);
std::string encode_next(std::span<const TokenId> context, const TokenSet& bias,
                        double delta);

class BridgeSource final : public TokenSource {
 public:
  // Performs the handshake; throws Error if the peer does not answer ready.
  BridgeSource(std::unique_ptr<LineChannel> channel, std::size_t vocab_size);

  std::size_t vocab_size() const override { return vocab_size_; }
  TokenId next(std::span<const TokenId> context, const TokenSet& bias,
               double delta) override;

 private:
  std::unique_ptr<LineChannel> channel_;
  std::size_t vocab_size_;
};

}  // namespace linemark

#endif  // LINEMARK_BRIDGE_HPP_
