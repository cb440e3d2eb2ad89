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

#ifndef LINEMARK_ERROR_HPP_
#define LINEMARK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace linemark {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FieldMismatchError : public Error {
 public:
  FieldMismatchError() : Error("operands belong to different fields") {}
};

class DivisionByZeroError : public Error {
 public:
  DivisionByZeroError() : Error("zero has no multiplicative inverse") {}
};

class InconsistentPointsError : public Error {
 public:
  using Error::Error;
};

class LengthError : public Error {
 public:
  using Error::Error;
};

class InsufficientTokensError : public Error {
 public:
  using Error::Error;
};

class NoLineRecoverableError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace linemark

#endif  // LINEMARK_ERROR_HPP_
