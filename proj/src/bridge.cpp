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

#include "linemark/bridge.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "linemark/error.hpp"

namespace linemark {

using nlohmann::json;

void StreamChannel::send(const std::string& line) {
  out_ << line << '\n';
  out_.flush();
}

std::string StreamChannel::receive() {
  std::string line;
  if (!std::getline(in_, line)) throw Error("bridge peer closed the channel");
  return line;
}

namespace {

// Blocks SIGPIPE on this thread so a vanished peer shows up as EPIPE.
class SigpipeGuard {
 public:
  SigpipeGuard() {
    sigemptyset(&pipe_);
    sigaddset(&pipe_, SIGPIPE);
    sigset_t pending;
    sigpending(&pending);
    was_pending_ = sigismember(&pending, SIGPIPE) == 1;
    pthread_sigmask(SIG_BLOCK, &pipe_, &old_);
  }
  ~SigpipeGuard() {
    if (!was_pending_) {
      sigset_t pending;
      sigpending(&pending);
      if (sigismember(&pending, SIGPIPE) == 1) {
        const timespec zero{0, 0};
        sigtimedwait(&pipe_, nullptr, &zero);
      }
    }
    pthread_sigmask(SIG_SETMASK, &old_, nullptr);
  }
  SigpipeGuard(const SigpipeGuard&) = delete;
  SigpipeGuard& operator=(const SigpipeGuard&) = delete;

 private:
  sigset_t pipe_{};
  sigset_t old_{};
  bool was_pending_ = false;
};

}  // namespace

ProcessChannel::ProcessChannel(const std::string& command) {
  int to_child[2];
  int from_child[2];
  if (pipe(to_child) != 0) throw Error("pipe() failed");
  if (pipe(from_child) != 0) {
    close(to_child[0]);
    close(to_child[1]);
    throw Error("pipe() failed");
  }
  pid_ = fork();
  if (pid_ < 0) throw Error("fork() failed");
  if (pid_ == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);
  to_child_ = fdopen(to_child[1], "w");
  from_child_ = fdopen(from_child[0], "r");
  if (to_child_ == nullptr || from_child_ == nullptr) throw Error("fdopen() failed");
}

ProcessChannel::~ProcessChannel() {
  if (to_child_ != nullptr) {
    const SigpipeGuard guard;
    std::fclose(to_child_);
  }
  if (from_child_ != nullptr) std::fclose(from_child_);
  if (pid_ > 0) {
    int status = 0;
    waitpid(pid_, &status, 0);
  }
}

void ProcessChannel::send(const std::string& line) {
  const SigpipeGuard guard;
  if (std::fputs(line.c_str(), to_child_) < 0 || std::fputc('\n', to_child_) == EOF ||
      std::fflush(to_child_) != 0) {
    throw Error("failed writing to bridge process");
  }
}

std::string ProcessChannel::receive() {
  std::string line;
  for (int c = std::fgetc(from_child_); c != '\n'; c = std::fgetc(from_child_)) {
    if (c == EOF) {
      if (line.empty()) throw Error("bridge process closed its output");
      break;
    }
    line.push_back(static_cast<char>(c));
  }
  return line;
}

RecordingChannel::RecordingChannel(std::unique_ptr<LineChannel> inner,
                                   const std::string& path)
    : inner_(std::move(inner)), transcript_(path) {
  if (!transcript_) throw Error("cannot open transcript " + path);
}

void RecordingChannel::send(const std::string& line) {
  transcript_ << "> " << line << '\n';
  inner_->send(line);
}

std::string RecordingChannel::receive() {
  std::string line = inner_->receive();
  transcript_ << "< " << line << '\n';
  transcript_.flush();
  return line;
}

ReplayChannel::ReplayChannel(std::istream& transcript) {
  std::string line;
  while (std::getline(transcript, line)) {
    if (line.empty()) continue;
    if (line.size() < 2 || (line[0] != '>' && line[0] != '<') || line[1] != ' ') {
      throw ParseError("malformed transcript line: " + line);
    }
    entries_.emplace_back(line[0], line.substr(2));
  }
}

void ReplayChannel::send(const std::string& line) {
  if (cursor_ >= entries_.size() || entries_[cursor_].first != '>') {
    throw Error("transcript has no request at this point");
  }
  if (entries_[cursor_].second != line) {
    throw Error("request diverges from transcript: expected " +
                entries_[cursor_].second + ", got " + line);
  }
  ++cursor_;
}

std::string ReplayChannel::receive() {
  if (cursor_ >= entries_.size() || entries_[cursor_].first != '<') {
    throw Error("transcript has no reply at this point");
  }
  return entries_[cursor_++].second;
}

std::string encode_init(std::size_t vocab_size) {
  return json{{"type", "init"}, {"vocab_size", vocab_size}}.dump();
}

std::string encode_next(std::span<const TokenId> context, const TokenSet& bias,
                        double delta) {
  json msg;
  msg["type"] = "next";
  msg["context"] = std::vector<TokenId>(context.begin(), context.end());
  msg["bias_ids"] = bias.ids();
  if (std::isinf(delta)) {
    msg["delta"] = "inf";
  } else {
    msg["delta"] = delta;
  }
  return msg.dump();
}

namespace {

json parse_reply(const std::string& line) {
  json reply = json::parse(line, nullptr, false);
  if (reply.is_discarded() || !reply.is_object() || !reply.contains("type")) {
    throw ParseError("malformed bridge reply: " + line);
  }
  if (reply["type"] == "error") {
    throw Error("bridge error: " + reply.value("message", std::string("(no message)")));
  }
  return reply;
}

}  // namespace

BridgeSource::BridgeSource(std::unique_ptr<LineChannel> channel, std::size_t vocab_size)
    : channel_(std::move(channel)), vocab_size_(vocab_size) {
  channel_->send(encode_init(vocab_size));
  const json reply = parse_reply(channel_->receive());
  if (reply["type"] != "ready") {
    throw Error("bridge handshake expected ready, got " + reply.dump());
  }
}

TokenId BridgeSource::next(std::span<const TokenId> context, const TokenSet& bias,
                           double delta) {
  channel_->send(encode_next(context, bias, delta));
  const json reply = parse_reply(channel_->receive());
  if (reply["type"] != "token" || !reply.contains("id") ||
      !reply["id"].is_number_unsigned()) {
    throw ParseError("bridge reply is not a token: " + reply.dump());
  }
  const auto id = reply["id"].get<std::uint64_t>();
  if (id >= vocab_size_) {
    throw DomainError("bridge returned token " + std::to_string(id) +
                      " outside vocabulary of " + std::to_string(vocab_size_));
  }
  return static_cast<TokenId>(id);
}

}  // namespace linemark
