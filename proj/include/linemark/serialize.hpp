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

#ifndef LINEMARK_SERIALIZE_HPP_
#define LINEMARK_SERIALIZE_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linemark/adversary.hpp"
#include "linemark/embedder.hpp"
#include "linemark/extractor.hpp"
#include "linemark/poly.hpp"

namespace linemark {

// JSON artifacts. Writers emit two-space indented JSON with sorted keys and
// a trailing newline, so write(read(write(x))) == write(x). Readers throw
// ParseError naming the offending member.

std::string write_json(const Field& field);
Field read_field(std::string_view text);

std::string write_json(const Polynomial& poly);
Polynomial read_polynomial(std::string_view text);

std::string write_json(const TokenStream& stream);
TokenStream read_stream(std::string_view text);

std::string write_json(const RecoveryResult& result);
RecoveryResult read_result(std::string_view text);

std::string write_json(const ExperimentReport& report);
ExperimentReport read_experiment(std::string_view text);

// {"reports": [...]}
std::string write_json(std::span<const ExperimentReport> reports);
std::vector<ExperimentReport> read_experiments(std::string_view text);

std::string write_json(const FailureReport& report);
FailureReport read_failure(std::string_view text);

std::string write_json(const RobustnessReport& report);
RobustnessReport read_robustness(std::string_view text);

}  // namespace linemark

#endif  // LINEMARK_SERIALIZE_HPP_
