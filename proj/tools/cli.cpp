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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "linemark/adversary.hpp"
#include "linemark/bridge.hpp"
#include "linemark/embedder.hpp"
#include "linemark/error.hpp"
#include "linemark/extractor.hpp"
#include "linemark/serialize.hpp"

namespace linemark::cli {
namespace {

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;

  std::string read(const std::string& path) const {
    if (path == "-") {
      return std::string(std::istreambuf_iterator<char>(in), {});
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open '" + path + "' for reading");
    return std::string(std::istreambuf_iterator<char>(file), {});
  }

  void write(const std::string& path, const std::string& text) const {
    if (path == "-") {
      out << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open '" + path + "' for writing");
    file << text;
  }

  // Human-readable side output goes wherever the JSON does not.
  std::ostream& side(const std::string& path) const { return path == "-" ? err : out; }
};

double parse_delta(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfiniteDelta;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw ConfigError("--delta must be a number or \"inf\", got '" + text + "'");
  }
  return value;
}

SecretKey resolve_key(const std::string& hex) {
  if (hex.empty()) throw ConfigError("no key: pass --key or set WM_KEY");
  try {
    return SecretKey::from_hex(hex);
  } catch (const ParseError& e) {
    throw ConfigError(std::string("--key: ") + e.what());
  }
}

// Throws ConfigError naming the supported widths.
Field make_field(unsigned n) { return Field(n); }

struct Options {
  unsigned field_n = 16;
  std::optional<std::size_t> points;
  std::optional<std::size_t> tokens;
  std::string delta = "inf";
  std::string key;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string solver = "hashing";
  std::size_t num_coeffs = 2;
  std::size_t ransac_trials = 2000;
  std::string attack_kind = "substitute";
  double rate = 0.0;
  std::optional<std::size_t> count;
  std::string out = "-";
  std::string input = "-";
  std::size_t vocab = 32768;
  double temperature = 1.0;
  std::vector<std::string> identities;
  std::string bridge;
  std::string record;
  std::string replay;
  std::optional<unsigned> table_field;
  std::optional<std::size_t> table_points;
  std::size_t trials = 0;
  std::size_t genuine = 4;
  std::size_t random = 64;
  std::size_t kept = 3;
  std::size_t runs = 500;
};

int cmd_keygen(const Options& o, const Io& io) {
  std::uint64_t seed;
  if (o.seed_given) {
    seed = derive_seed(o.seed, {0});
  } else {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  Rng rng(seed);
  io.write(o.out, random_key(rng).hex() + "\n");
  return kExitOk;
}

std::unique_ptr<TokenSource> make_source(const Options& o, std::size_t vocab) {
  if (!o.replay.empty()) {
    std::ifstream transcript(o.replay);
    if (!transcript) throw ConfigError("cannot open transcript '" + o.replay + "'");
    return std::make_unique<BridgeSource>(std::make_unique<ReplayChannel>(transcript), vocab);
  }
  if (!o.bridge.empty()) {
    std::unique_ptr<LineChannel> channel = std::make_unique<ProcessChannel>(o.bridge);
    if (!o.record.empty()) {
      channel = std::make_unique<RecordingChannel>(std::move(channel), o.record);
    }
    return std::make_unique<BridgeSource>(std::move(channel), vocab);
  }
  return std::make_unique<MockSource>(derive_seed(o.seed, {2}), vocab, o.temperature);
}

int cmd_embed(const Options& o, const Io& io) {
  EmbedParams params;
  params.field = make_field(o.field_n);
  if (o.points && o.tokens) throw ConfigError("pass either --points or --tokens, not both");
  if (o.points) {
    params.num_points = *o.points;
  } else if (o.tokens) {
    params.num_points = budget_table(*o.tokens, params.field).genuine;
  } else {
    params.num_points = 16;
  }
  params.delta = parse_delta(o.delta);
  params.key = resolve_key(o.key);
  params.vocab_size = o.vocab;
  params.validate();

  std::vector<Identity> ids;
  for (const std::string& hex : o.identities) {
    ids.push_back(Identity::from_hex(params.field, o.num_coeffs, hex));
  }
  if (ids.empty()) {
    Rng rng(derive_seed(o.seed, {1}));
    ids.push_back(random_identity(params.field, o.num_coeffs, rng));
    io.err << "identity " << ids.back().hex() << "\n";
  }
  auto source = make_source(o, params.vocab_size);
  const TokenStream stream = embed_multi(ids, *source, params);
  io.write(o.out, write_json(stream));
  return kExitOk;
}

int cmd_attack(const Options& o, const Io& io) {
  const TokenStream stream = read_stream(io.read(o.input));
  AttackSpec spec;
  spec.kind = parse_attack_kind(o.attack_kind);
  spec.rate = o.rate;
  spec.count = o.count;
  spec.seed = o.seed;
  io.write(o.out, write_json(attack(stream, spec)));
  return kExitOk;
}

int cmd_extract(const Options& o, const Io& io) {
  const Field field = make_field(o.field_n);
  const SecretKey key = resolve_key(o.key);
  const TokenStream stream = read_stream(io.read(o.input));
  RecoveryConfig config;
  config.solver = parse_solver(o.solver);
  config.num_coeffs = o.num_coeffs;
  config.ransac_trials = o.ransac_trials;
  config.seed = o.seed;
  const RecoveryResult result = recover(build_candidates(stream, key, field), config);
  io.write(o.out, write_json(result));
  return result.accepted() ? kExitOk : kExitRejected;
}

int cmd_collinear(const Options& o, const Io& io) {
  std::vector<ExperimentReport> reports;
  const std::size_t trials = o.trials ? o.trials : 100;
  for (std::size_t R : sweep_sizes()) {
    if (o.table_points && *o.table_points != R) continue;
    for (unsigned n : sweep_fields()) {
      if (o.table_field && *o.table_field != n) continue;
      reports.push_back(
          random_point_experiment(Field(n), R, trials, derive_seed(o.seed, {n, R})));
    }
  }
  if (reports.empty()) {
    // Off-grid sizes or fields run as a single cell.
    const unsigned n = o.table_field.value_or(16);
    const std::size_t R = o.table_points.value_or(64);
    reports.push_back(
        random_point_experiment(make_field(n), R, trials, derive_seed(o.seed, {n, R})));
  }
  io.write(o.out, write_json(std::span<const ExperimentReport>(reports)));
  io.side(o.out) << render_collinear_table(reports);
  return kExitOk;
}

int cmd_failure(const Options& o, const Io& io) {
  const FailureReport r =
      failure_validation(o.field_n, o.genuine, o.random, o.trials ? o.trials : 10000, o.seed);
  io.write(o.out, write_json(r));
  io.side(o.out) << "analytic " << r.analytic << "  empirical " << r.empirical << " +- "
                 << r.std_error << (r.breakdown ? "  (approximation breakdown)" : "") << "\n";
  return kExitOk;
}

int cmd_robustness(const Options& o, const Io& io) {
  const RobustnessReport r =
      robustness_experiment(o.field_n, o.tokens.value_or(700), o.kept, o.runs, o.seed);
  io.write(o.out, write_json(r));
  io.side(o.out) << "recovered " << r.recovered << "/" << r.runs << " (threshold "
                 << r.threshold << ", best line correct in " << r.top_line_match << ")\n";
  return kExitOk;
}

int cmd_analyze(const Options& o, const Io& io) {
  const RecoveryResult r = read_result(io.read(o.input));
  const Polynomial& poly = r.identity.poly();
  std::ostream& os = io.out;
  os << "verdict       " << verdict_name(r.verdict) << "\n";
  os << "identity      " << r.identity.hex() << "\n";
  os << "field         GF(2^" << poly.field().bits() << ") mod " << poly.field().modulus_hex()
     << "\n";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    os << "a" << i << "            " << poly.field().to_hex(poly.coeff(i)) << "\n";
  }
  os << "support       " << r.support << " of " << r.total << " candidates\n";
  os << "threshold     " << r.threshold << " (random sets reach " << r.spurious_max_expected
     << ")\n";
  os << "supporting   ";
  for (std::size_t i : r.supporting_indices) os << " " << i;
  os << "\n";
  for (const Identity& alt : r.alternatives) os << "alternative   " << alt.hex() << "\n";
  return r.accepted() ? kExitOk : kExitRejected;
}

void add_field(CLI::App* cmd, Options& o) {
  cmd->add_option("--field-n,--n", o.field_n, "Field width n of GF(2^n)")
      ->capture_default_str();
}

void add_key(CLI::App* cmd, Options& o) {
  cmd->add_option("--key", o.key, "128-bit key as 32 hex digits")->envname("WM_KEY");
}

void add_seed(CLI::App* cmd, Options& o) {
  cmd->add_option_function<std::uint64_t>(
      "--seed",
      [&o](const std::uint64_t& v) {
        o.seed = v;
        o.seed_given = true;
      },
      "Seed for every random choice");
}

void add_out(CLI::App* cmd, Options& o) {
  cmd->add_option("--out,-o", o.out, "Output path, - for stdout")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Io io{in, out, err};
  Options o;
  CLI::App app{"Keyed polynomial watermarks for token streams", "linemark"};
  app.require_subcommand(1);

  auto* keygen = app.add_subcommand("keygen", "Print a random key");
  add_seed(keygen, o);
  add_out(keygen, o);

  auto* embed_cmd = app.add_subcommand("embed", "Generate a watermarked token stream");
  add_field(embed_cmd, o);
  add_key(embed_cmd, o);
  add_seed(embed_cmd, o);
  add_out(embed_cmd, o);
  embed_cmd->add_option("--points", o.points, "Number of embedded points N");
  embed_cmd->add_option("--tokens", o.tokens, "Token budget T; N = (T - 1) / n");
  embed_cmd->add_option("--delta", o.delta, "Logit bias, or inf to force")->capture_default_str();
  embed_cmd->add_option("--identity", o.identities,
                        "Identity hex; repeat to embed several round-robin");
  embed_cmd->add_option("--num-coeffs", o.num_coeffs, "Coefficients per identity")
      ->capture_default_str();
  embed_cmd->add_option("--vocab", o.vocab, "Vocabulary size")->capture_default_str();
  embed_cmd->add_option("--temperature", o.temperature, "Sampling temperature")
      ->capture_default_str();
  embed_cmd->add_option("--bridge", o.bridge, "Command serving tokens over the line protocol");
  embed_cmd->add_option("--record", o.record, "Write the bridge transcript here");
  embed_cmd->add_option("--replay", o.replay, "Serve tokens from a recorded transcript");

  auto* attack_cmd = app.add_subcommand("attack", "Edit a token stream");
  attack_cmd->add_option("input", o.input, "Stream JSON, - for stdin")->capture_default_str();
  add_seed(attack_cmd, o);
  add_out(attack_cmd, o);
  attack_cmd->add_option("--attack", o.attack_kind,
                         "substitute | delete | insert | duplicate-splice")
      ->capture_default_str();
  attack_cmd->add_option("--rate", o.rate, "Fraction of tokens in [0, 1]")->capture_default_str();
  attack_cmd->add_option("--count", o.count, "Absolute token count; overrides --rate");

  auto* extract_cmd = app.add_subcommand("extract", "Recover the identity from a stream");
  extract_cmd->add_option("input", o.input, "Stream JSON, - for stdin")->capture_default_str();
  add_field(extract_cmd, o);
  add_key(extract_cmd, o);
  add_seed(extract_cmd, o);
  add_out(extract_cmd, o);
  extract_cmd->add_option("--solver", o.solver, "bruteforce | hashing | ransac")
      ->capture_default_str();
  extract_cmd->add_option("--num-coeffs", o.num_coeffs, "Coefficients per identity")
      ->capture_default_str();
  extract_cmd->add_option("--trials", o.ransac_trials, "RANSAC trials")->capture_default_str();

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments");
  experiment->require_subcommand(1);
  auto* collinear = experiment->add_subcommand("collinear", "Maximum collinear counts of random sets");
  collinear->add_option("--field-n,--n", o.table_field, "Only this field width");
  collinear->add_option("--points", o.table_points, "Only this set size R");
  collinear->add_option("--trials", o.trials, "Trials per cell (default 100)");
  add_seed(collinear, o);
  add_out(collinear, o);

  auto* failure = experiment->add_subcommand("failure", "Closed-form vs simulated failure");
  failure->add_option("--field-n,--n", o.field_n, "Field width (default 12)");
  failure->add_option("--genuine", o.genuine, "Planted collinear points F")
      ->capture_default_str();
  failure->add_option("--random", o.random, "Random points R")->capture_default_str();
  failure->add_option("--trials", o.trials, "Trials (default 10000)");
  add_seed(failure, o);
  add_out(failure, o);

  auto* robustness = experiment->add_subcommand("robustness", "Recovery after heavy substitution");
  robustness->add_option("--field-n,--n", o.field_n, "Field width")->capture_default_str();
  robustness->add_option("--tokens", o.tokens, "Token budget (default 700)");
  robustness->add_option("--kept", o.kept, "Genuine points left intact")->capture_default_str();
  robustness->add_option("--runs", o.runs, "Runs")->capture_default_str();
  add_seed(robustness, o);
  add_out(robustness, o);

  auto* analyze = app.add_subcommand("analyze", "Pretty-print a recovery result");
  analyze->add_option("input", o.input, "Result JSON, - for stdin")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*keygen) return cmd_keygen(o, io);
    if (*embed_cmd) return cmd_embed(o, io);
    if (*attack_cmd) return cmd_attack(o, io);
    if (*extract_cmd) return cmd_extract(o, io);
    if (*collinear) return cmd_collinear(o, io);
    if (*failure) {
      Options t = o;
      if (failure->count("--field-n") == 0) t.field_n = 12;
      return cmd_failure(t, io);
    }
    if (*robustness) return cmd_robustness(o, io);
    if (*analyze) return cmd_analyze(o, io);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace linemark::cli
