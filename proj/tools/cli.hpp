// Copyright 2026 The gtokit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Kept in a header so the test suite can drive it
// in-process with string streams.
//
// Exit codes: 0 success / feasible, 1 well-formed negative verdict,
// 2 input error, 3 internal invariant breach.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gtokit/gtokit.hpp"
#include "gtokit/io.hpp"
#include "gtokit/selftest.hpp"
#include "json.hpp"

namespace gtokit::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,
  kInputError = 2,
  kInternalError = 3,
};

/// Thrown when a computed result breaks an invariant that should hold by
/// construction.
class InvariantBreach : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandConfig {
  std::string subcommand;
  std::string input_path;
  std::string output_path;
  std::optional<std::uint64_t> seed;
  double tol_feasibility = 1e-9;
  double tol_state = tolerance::kStructural;
  double tol_channel = tolerance::kChannel;
  double tol_oracle = 1e-8;

  // apply
  bool oracle = false;
  // cool
  int adversary = 0;
  std::optional<double> sideband;
  double nu0 = 5.0;
  double nu_b = 2.0;
  double beta = 1.0;
  std::string format = "json";
  // thermo-curve
  double beta_state = 1.0;
  double energy = 1.0;
  int cutoff = 0;
  std::optional<double> compare;
  // decompose
  std::string kind = "williamson";
  // selftest
  bool quick = false;
};

namespace detail {

using io::Json;

inline std::string read_input(const CommandConfig &cfg, std::istream &in) {
  if (cfg.input_path.empty() || cfg.input_path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream f(cfg.input_path);
  if (!f) throw ValidationError("cannot read input file " + cfg.input_path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline Json read_json(const CommandConfig &cfg, std::istream &in) {
  return Json::parse(read_input(cfg, in));
}

inline void emit(const CommandConfig &cfg, std::ostream &out,
                 const std::string &text) {
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.output_path);
  if (!f) throw ValidationError("cannot write output file " + cfg.output_path);
  f << text;
}

inline void emit_json(const CommandConfig &cfg, std::ostream &out,
                      const Json &j) {
  emit(cfg, out, j.dump(2) + "\n");
}

inline std::uint64_t resolve_seed(const CommandConfig &cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char *env = std::getenv("GTO_KIT_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception &) {
    }
    throw ValidationError("GTO_KIT_SEED is not an unsigned integer");
  }
  return selftest::kDefaultSeed;
}

inline bool positive_definite(const RealMatrix &m) {
  const RealMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() > 0.0;
}

}  // namespace detail

// -- commands ---------------------------------------------------------------

/// Validates a state ({"cm": ...} or {"state": ...}), a channel
/// ({"channel": ...}) or a GTO spec ({"spec": ...}).
inline int cmd_validate(const CommandConfig &cfg, std::istream &in,
                        std::ostream &out) {
  const io::Json j = detail::read_json(cfg, in);
  io::Json report;
  bool valid = false;
  if (j.contains("channel")) {
    const GaussianChannel ch = io::channel_from_json(j.at("channel"));
    valid = validate_channel(ch, cfg.tol_channel);
    report = {{"kind", "channel"}, {"valid", valid}};
  } else if (j.contains("spec")) {
    const GTOSpec spec = io::gto_spec_from_json(j.at("spec"));
    const GaussianChannel ch = gto_to_channel(spec);
    valid = validate_channel(ch, cfg.tol_channel);
    report = {{"kind", "gto"}, {"valid", valid}};
  } else {
    const GaussianState s =
        io::state_from_json(j.contains("state") ? j.at("state") : j);
    valid = validate_state(s, cfg.tol_state);
    report = {{"kind", "state"}, {"valid", valid}};
    if (s.cm.allFinite() && detail::positive_definite(s.cm)) {
      report["symplectic_eigenvalues"] =
          symplectic_eigenvalues(0.5 * (s.cm + s.cm.transpose()));
    }
  }
  detail::emit_json(cfg, out, report);
  return valid ? kSuccess : kNegative;
}

inline int cmd_feasible(const CommandConfig &cfg, std::istream &in,
                        std::ostream &out) {
  const TransformQuery q = io::query_from_json(detail::read_json(cfg, in));
  const FeasibilityResult r = feasible(q, cfg.tol_feasibility);
  io::Json j = io::to_json(r);
  io::Json bounds = io::Json::array();
  for (const BoundCheck &b : necessary_bounds(q, cfg.tol_feasibility)) {
    bounds.push_back({{"name", b.name}, {"satisfied", b.satisfied}});
  }
  j["necessary_bounds"] = bounds;
  detail::emit_json(cfg, out, j);
  return r.feasible ? kSuccess : kNegative;
}

/// Input: {"state": ..., and one of "spec", "gto" (single-mode parameters)
/// or "channel"}. With --oracle (spec only) the closed form is compared
/// against explicit dilation.
inline int cmd_apply(const CommandConfig &cfg, std::istream &in,
                     std::ostream &out) {
  const io::Json j = detail::read_json(cfg, in);
  const GaussianState state = io::state_from_json(io::detail::field(j, "state"));
  if (!validate_state(state, cfg.tol_state)) {
    throw ValidationError("apply: input state is not physical");
  }
  GaussianChannel ch;
  std::optional<GTOSpec> spec;
  if (j.contains("spec")) {
    spec = io::gto_spec_from_json(j.at("spec"));
    ch = gto_to_channel(*spec);
  } else if (j.contains("gto")) {
    ch = single_mode_gto(io::single_mode_gto_from_json(j.at("gto")));
  } else if (j.contains("channel")) {
    ch = io::channel_from_json(j.at("channel"));
  } else {
    throw ValidationError("apply: need \"spec\", \"gto\" or \"channel\"");
  }
  if (!validate_channel(ch, cfg.tol_channel)) {
    throw ValidationError("apply: channel is not completely positive");
  }
  const GaussianState result = apply_channel(ch, state);
  if (!validate_state(result, cfg.tol_state)) {
    throw InvariantBreach("apply: output state is not physical");
  }
  io::Json report = {{"state", io::to_json(result)}};
  if (cfg.oracle) {
    if (!spec) throw ValidationError("apply: --oracle needs a \"spec\" input");
    const RealMatrix oracle = gto_dilation_oracle(*spec, state.cm);
    const double dev = max_abs(oracle - result.cm);
    report["oracle_max_deviation"] = dev;
    if (dev > cfg.tol_oracle) {
      detail::emit_json(cfg, out, report);
      return kInternalError;
    }
  }
  detail::emit_json(cfg, out, cfg.oracle ? report : report.at("state"));
  return kSuccess;
}

/// --adversary N, --sideband OMEGA, or a protocol on the input: either a
/// list of steps or {"initial": state | "nu0": x, "nu_b": x, "S": frame?,
/// "steps": [...]}.
inline int cmd_cool(const CommandConfig &cfg, std::istream &in,
                    std::ostream &out) {
  if (cfg.format != "json" && cfg.format != "csv") {
    throw ValidationError("cool: --format must be json or csv");
  }
  if (cfg.sideband) {
    const GaussianState hot =
        GaussianState::centered(cfg.nu0 * RealMatrix::Identity(2, 2));
    const auto [state, nu] = sideband_swap(hot, cfg.beta, *cfg.sideband);
    detail::emit_json(cfg, out,
                      {{"nu", nu},
                       {"target", nu_of(cfg.beta, *cfg.sideband)},
                       {"state", io::to_json(state)}});
    return kSuccess;
  }
  CoolingTrace trace;
  if (cfg.adversary > 0) {
    trace = greedy_adversary(cfg.nu0, cfg.nu_b, cfg.adversary);
  } else {
    io::Json j = detail::read_json(cfg, in);
    // A bare list of steps takes the start and bath values from the flags.
    if (j.is_array()) j = {{"nu0", cfg.nu0}, {"nu_b", cfg.nu_b}, {"steps", j}};
    GaussianState initial;
    if (j.contains("initial")) {
      initial = io::state_from_json(j.at("initial"));
    } else {
      initial = GaussianState::centered(io::detail::number_field(j, "nu0") *
                                        RealMatrix::Identity(2, 2));
    }
    const double nu_b = io::detail::number_field(j, "nu_b");
    const RealMatrix frame = j.contains("S") ? io::matrix_from_json(j.at("S"))
                                             : RealMatrix::Identity(2, 2);
    std::vector<ProtocolStep> steps;
    const io::Json &arr = io::detail::field(j, "steps");
    if (!arr.is_array()) throw ValidationError("cool: steps must be an array");
    for (const io::Json &s : arr) steps.push_back(io::step_from_json(s));
    trace = run_protocol(initial, steps, nu_b, frame);
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    io::write_csv(os, trace);
    detail::emit(cfg, out, os.str());
  } else {
    detail::emit_json(cfg, out, io::to_json(trace));
  }
  return trace.violated ? kInternalError : kSuccess;
}

/// Thermo-majorization curve of the thermal distribution at --beta-state
/// relative to the Gibbs state at --beta. With --compare BETA_F, reports the
/// cross-check against the Gaussian criterion instead.
inline int cmd_thermo_curve(const CommandConfig &cfg, std::ostream &out) {
  if (cfg.compare) {
    const CrossCheck c =
        cross_check(cfg.beta_state, *cfg.compare, cfg.beta, cfg.energy, cfg.cutoff);
    detail::emit_json(cfg, out, io::to_json(c));
    if (!c.agree) return kInternalError;
    return c.thermo_verdict ? kSuccess : kNegative;
  }
  const int cutoff =
      cfg.cutoff > 0
          ? cfg.cutoff
          : required_cutoff(std::min(cfg.beta_state, cfg.beta), cfg.energy);
  const GeometricDist p = geometric_probs(cfg.beta_state, cfg.energy, cutoff);
  const GeometricDist g = geometric_probs(cfg.beta, cfg.energy, cutoff);
  std::ostringstream os;
  io::write_csv(os, thermo_curve(p, g));
  detail::emit(cfg, out, os.str());
  return kSuccess;
}

/// --kind williamson ({"matrix"}), cosine_sine ({"unitary"}) or single_mode
/// ({"cm"}).
inline int cmd_decompose(const CommandConfig &cfg, std::istream &in,
                         std::ostream &out) {
  const io::Json j = detail::read_json(cfg, in);
  io::Json report;
  if (cfg.kind == "williamson") {
    const RealMatrix p = io::matrix_from_json(io::detail::field(j, "matrix"));
    const WilliamsonForm w = williamson(p);
    report = io::to_json(w);
    report["reconstruction_error"] = max_abs(w.reconstruct() - p);
  } else if (cfg.kind == "cosine_sine") {
    const ComplexMatrix u =
        io::complex_matrix_from_json(io::detail::field(j, "unitary"));
    const CosineSineForm f = cosine_sine_decompose(u);
    report = io::to_json(f);
    report["reconstruction_error"] = max_abs(f.reconstruct() - u);
  } else if (cfg.kind == "single_mode") {
    const RealMatrix cm = io::matrix_from_json(io::detail::field(j, "cm"));
    const SingleModeNormalForm f = single_mode_decompose(cm);
    report = io::to_json(f);
    report["reconstruction_error"] = max_abs(f.reconstruct() - cm);
  } else {
    throw ValidationError("decompose: unknown --kind " + cfg.kind);
  }
  detail::emit_json(cfg, out, report);
  return kSuccess;
}

inline int cmd_selftest(const CommandConfig &cfg, std::ostream &out) {
  selftest::Config sc;
  sc.seed = detail::resolve_seed(cfg);
  sc.quick = cfg.quick;
  std::ostringstream os;
  os << "seed " << sc.seed << (sc.quick ? " (quick)" : "") << "\n";
  bool all = true;
  for (const selftest::Criterion &c : selftest::criteria()) {
    const selftest::SuiteResult r = c.run(sc);
    all = all && r.passed;
    os << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail
       << "\n";
  }
  os << (all ? "all suites passed" : "some suites FAILED") << "\n";
  detail::emit(cfg, out, os.str());
  return all ? kSuccess : kNegative;
}

// -- dispatch ---------------------------------------------------------------

inline int run(const CommandConfig &cfg, std::istream &in, std::ostream &out) {
  if (cfg.subcommand == "validate") return cmd_validate(cfg, in, out);
  if (cfg.subcommand == "feasible") return cmd_feasible(cfg, in, out);
  if (cfg.subcommand == "apply") return cmd_apply(cfg, in, out);
  if (cfg.subcommand == "cool") return cmd_cool(cfg, in, out);
  if (cfg.subcommand == "thermo-curve") return cmd_thermo_curve(cfg, out);
  if (cfg.subcommand == "decompose") return cmd_decompose(cfg, in, out);
  if (cfg.subcommand == "selftest") return cmd_selftest(cfg, out);
  throw ValidationError("unknown subcommand " + cfg.subcommand);
}

inline int run_cli(int argc, const char *const *argv, std::istream &in,
                   std::ostream &out, std::ostream &err) {
  CommandConfig cfg;
  CLI::App app{"Gaussian thermal operations toolkit", "gtokit"};
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App *sub) {
    sub->add_option("--input", cfg.input_path, "input JSON file (default stdin)");
    sub->add_option("--output", cfg.output_path, "output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "seed (falls back to GTO_KIT_SEED)");
    sub->add_option("--tol-feasibility", cfg.tol_feasibility)->check(CLI::PositiveNumber);
    sub->add_option("--tol-state", cfg.tol_state)->check(CLI::PositiveNumber);
    sub->add_option("--tol-channel", cfg.tol_channel)->check(CLI::PositiveNumber);
    sub->add_option("--tol-oracle", cfg.tol_oracle)->check(CLI::PositiveNumber);
  };

  CLI::App *validate = app.add_subcommand("validate", "check a state, channel or GTO spec");
  CLI::App *feas = app.add_subcommand("feasible", "decide a single-mode transformation");
  CLI::App *apply = app.add_subcommand("apply", "apply a GTO or channel to a state");
  apply->add_flag("--oracle", cfg.oracle, "compare against explicit dilation");
  CLI::App *cool = app.add_subcommand("cool", "simulate a cooling protocol");
  cool->add_option("--adversary", cfg.adversary, "greedy adversary rounds")
      ->check(CLI::PositiveNumber);
  cool->add_option("--sideband", cfg.sideband, "ancilla frequency")
      ->check(CLI::PositiveNumber);
  cool->add_option("--nu0", cfg.nu0, "initial symplectic eigenvalue");
  cool->add_option("--nu-b", cfg.nu_b, "bath symplectic eigenvalue");
  cool->add_option("--beta", cfg.beta, "inverse temperature (sideband)");
  cool->add_option("--format", cfg.format, "json or csv");
  CLI::App *thermo = app.add_subcommand("thermo-curve", "thermo-majorization curve");
  thermo->add_option("--beta-state", cfg.beta_state, "inverse temperature of the state");
  thermo->add_option("--beta", cfg.beta, "bath inverse temperature");
  thermo->add_option("--energy", cfg.energy, "level spacing");
  thermo->add_option("--cutoff", cfg.cutoff, "levels kept (0 = automatic)");
  thermo->add_option("--compare", cfg.compare, "target inverse temperature");
  CLI::App *decomp = app.add_subcommand("decompose", "matrix decompositions");
  decomp->add_option("--kind", cfg.kind, "williamson, cosine_sine or single_mode")
      ->check(CLI::IsMember({"williamson", "cosine_sine", "single_mode"}));
  CLI::App *self = app.add_subcommand("selftest", "run the property suites");
  self->add_flag("--quick", cfg.quick, "reduced sample counts");
  for (CLI::App *sub : {validate, feas, apply, cool, thermo, decomp, self}) {
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    return run(cfg, in, out);
  } catch (const InvariantBreach &e) {
    err << "gtokit: internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const ValidationError &e) {
    err << "gtokit: invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError &e) {
    err << "gtokit: invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const CutoffError &e) {
    err << "gtokit: invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception &e) {
    err << "gtokit: malformed JSON: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception &e) {
    err << "gtokit: internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace gtokit::cli
