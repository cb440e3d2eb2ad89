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

#include "linemark/serialize.hpp"

#include <json.hpp>

#include "linemark/error.hpp"

namespace linemark {
namespace {

using nlohmann::json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <typename Fn>
auto guarded(std::string_view what, std::string_view text, Fn&& fn) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(std::string(what) + ": malformed JSON");
  try {
    return fn(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

json field_json(const Field& field) {
  return json{{"n", field.bits()}, {"modulus", field.modulus_hex()}};
}

Field field_from(const json& j) {
  const unsigned bits = j.at("n").get<unsigned>();
  const std::string hex = j.at("modulus").get<std::string>();
  if (bits == 0 || bits > 64) throw ParseError("field: n must be 1..64");
  if (hex.empty() || hex.size() > 17) throw ParseError("field: bad modulus '" + hex + "'");
  unsigned __int128 m = 0;
  for (std::uint8_t b : from_hex(hex.size() % 2 ? "0" + hex : hex)) m = (m << 8) | b;
  if ((m >> bits) != 1) {
    throw ParseError("field: modulus '" + hex + "' is not of degree " + std::to_string(bits));
  }
  const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  return Field(bits, static_cast<std::uint64_t>(m) & mask);
}

json poly_json(const Polynomial& poly) {
  json coeffs = json::array();
  for (std::uint64_t c : poly.coeffs()) coeffs.push_back(poly.field().to_hex(c));
  return json{{"field", field_json(poly.field())}, {"coefficients", coeffs}};
}

Polynomial coeffs_from(const Field& field, const json& arr) {
  std::vector<std::uint64_t> coeffs;
  for (const json& c : arr) coeffs.push_back(field.from_hex(c.get<std::string>()));
  return Polynomial(field, std::move(coeffs));
}

}  // namespace

std::string write_json(const Field& field) { return dump(field_json(field)); }

Field read_field(std::string_view text) {
  return guarded("field", text, [](const json& j) { return field_from(j); });
}

std::string write_json(const Polynomial& poly) { return dump(poly_json(poly)); }

Polynomial read_polynomial(std::string_view text) {
  return guarded("polynomial", text, [](const json& j) {
    return coeffs_from(field_from(j.at("field")), j.at("coefficients"));
  });
}

std::string write_json(const TokenStream& stream) {
  return dump(json{{"vocab_size", stream.vocab_size}, {"tokens", stream.tokens}});
}

TokenStream read_stream(std::string_view text) {
  TokenStream stream = guarded("stream", text, [](const json& j) {
    TokenStream s;
    s.vocab_size = j.at("vocab_size").get<std::size_t>();
    s.tokens = j.at("tokens").get<std::vector<TokenId>>();
    return s;
  });
  try {
    stream.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("stream: ") + e.what());
  }
  return stream;
}

std::string write_json(const RecoveryResult& r) {
  const Polynomial& poly = r.identity.poly();
  json j = poly_json(poly);
  j["identity"] = r.identity.hex();
  if (poly.size() == 2) {
    j["line"] = json{{"a0", poly.field().to_hex(poly.coeff(0))},
                     {"a1", poly.field().to_hex(poly.coeff(1))}};
  }
  j["support"] = r.support;
  j["total"] = r.total;
  j["spurious_max_expected"] = r.spurious_max_expected;
  j["threshold"] = r.threshold;
  j["verdict"] = verdict_name(r.verdict);
  j["supporting_indices"] = r.supporting_indices;
  json alts = json::array();
  for (const Identity& id : r.alternatives) alts.push_back(id.hex());
  j["alternatives"] = alts;
  return dump(j);
}

RecoveryResult read_result(std::string_view text) {
  return guarded("result", text, [](const json& j) {
    const Field field = field_from(j.at("field"));
    const Polynomial poly = coeffs_from(field, j.at("coefficients"));
    RecoveryResult r{Identity(poly)};
    if (r.identity.hex() != j.at("identity").get<std::string>()) {
      throw ParseError("result: identity does not match coefficients");
    }
    r.support = j.at("support").get<std::size_t>();
    r.total = j.at("total").get<std::size_t>();
    r.spurious_max_expected = j.at("spurious_max_expected").get<std::size_t>();
    r.threshold = j.at("threshold").get<std::size_t>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.supporting_indices = j.at("supporting_indices").get<std::vector<std::size_t>>();
    for (const json& alt : j.at("alternatives")) {
      r.alternatives.push_back(
          Identity::from_hex(field, poly.size(), alt.get<std::string>()));
    }
    return r;
  });
}

static json experiment_json(const ExperimentReport& r) {
  return json{{"n", r.bits},
              {"points", r.points},
              {"trials", r.trials},
              {"seed", r.seed},
              {"max_collinear", r.max_collinear},
              {"summary", {{"max", r.max()}, {"median", r.median()}, {"mean", r.mean()}}}};
}

static ExperimentReport experiment_from(const json& j) {
  ExperimentReport r;
  r.bits = j.at("n").get<unsigned>();
  r.points = j.at("points").get<std::size_t>();
  r.trials = j.at("trials").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.max_collinear = j.at("max_collinear").get<std::vector<std::size_t>>();
  if (r.max_collinear.size() != r.trials) {
    throw ParseError("experiment: max_collinear has " +
                     std::to_string(r.max_collinear.size()) + " entries for " +
                     std::to_string(r.trials) + " trials");
  }
  return r;
}

std::string write_json(const ExperimentReport& report) { return dump(experiment_json(report)); }

ExperimentReport read_experiment(std::string_view text) {
  return guarded("experiment", text, [](const json& j) { return experiment_from(j); });
}

std::string write_json(std::span<const ExperimentReport> reports) {
  json arr = json::array();
  for (const ExperimentReport& r : reports) arr.push_back(experiment_json(r));
  return dump(json{{"reports", arr}});
}

std::vector<ExperimentReport> read_experiments(std::string_view text) {
  return guarded("experiments", text, [](const json& j) {
    std::vector<ExperimentReport> out;
    for (const json& r : j.at("reports")) out.push_back(experiment_from(r));
    return out;
  });
}

std::string write_json(const FailureReport& r) {
  return dump(json{{"n", r.bits},
                   {"genuine", r.genuine},
                   {"random", r.random},
                   {"trials", r.trials},
                   {"seed", r.seed},
                   {"analytic", r.analytic},
                   {"empirical", r.empirical},
                   {"std_error", r.std_error},
                   {"empirical_any", r.empirical_any},
                   {"breakdown", r.breakdown}});
}

FailureReport read_failure(std::string_view text) {
  return guarded("failure", text, [](const json& j) {
    FailureReport r;
    r.bits = j.at("n").get<unsigned>();
    r.genuine = j.at("genuine").get<std::size_t>();
    r.random = j.at("random").get<std::size_t>();
    r.trials = j.at("trials").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.analytic = j.at("analytic").get<double>();
    r.empirical = j.at("empirical").get<double>();
    r.std_error = j.at("std_error").get<double>();
    r.empirical_any = j.at("empirical_any").get<double>();
    r.breakdown = j.at("breakdown").get<bool>();
    return r;
  });
}

std::string write_json(const RobustnessReport& r) {
  return dump(json{{"n", r.bits},
                   {"tokens", r.tokens},
                   {"genuine", r.genuine},
                   {"kept", r.kept},
                   {"runs", r.runs},
                   {"seed", r.seed},
                   {"recovered", r.recovered},
                   {"top_line_match", r.top_line_match},
                   {"ambiguous", r.ambiguous},
                   {"threshold", r.threshold},
                   {"rate", r.rate()}});
}

RobustnessReport read_robustness(std::string_view text) {
  return guarded("robustness", text, [](const json& j) {
    RobustnessReport r;
    r.bits = j.at("n").get<unsigned>();
    r.tokens = j.at("tokens").get<std::size_t>();
    r.genuine = j.at("genuine").get<std::size_t>();
    r.kept = j.at("kept").get<std::size_t>();
    r.runs = j.at("runs").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.recovered = j.at("recovered").get<std::size_t>();
    r.top_line_match = j.at("top_line_match").get<std::size_t>();
    r.ambiguous = j.at("ambiguous").get<std::size_t>();
    r.threshold = j.at("threshold").get<std::size_t>();
    return r;
  });
}

}  // namespace linemark
