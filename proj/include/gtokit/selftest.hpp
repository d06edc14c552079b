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

// Seeded property suites shared by the acceptance test binary and the
// `gtokit selftest` command. Every tolerance and sample count is pinned
// here; `quick` divides the sample counts by ten.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gtokit/channels.hpp"
#include "gtokit/cooling.hpp"
#include "gtokit/feasibility.hpp"
#include "gtokit/states.hpp"
#include "gtokit/symplectic.hpp"
#include "gtokit/thermo.hpp"

namespace gtokit::selftest {

inline constexpr std::uint64_t kDefaultSeed = 20190614;

struct Config {
  std::uint64_t seed = kDefaultSeed;
  bool quick = false;

  int count(int full) const { return quick ? std::max(1, full / 10) : full; }
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

/// splitmix64 finaliser; derives independent per-sample seeds.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream,
                              std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream * 1000003ULL + index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace detail {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  std::uint64_t raw() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace detail

// 1. Worked example: (nu_i, z_i) = (2, 4) -> (5/2, 2) against nu_b = 2.
inline SuiteResult worked_example(const Config &) {
  SuiteResult r{"worked-example", true, "", 0.0, 0.0};
  TransformQuery q{2.0, 4.0, 2.5, 2.0, 2.0, std::nullopt};
  const FeasibilityResult res = single_mode_feasible(q);
  if (!res.feasible || std::abs(*res.p - 0.5) > 1e-10) {
    r.passed = false;
    r.detail = "feasibility verdict wrong";
    return r;
  }
  const GaussianState in =
      GaussianState::centered(SingleModeNormalForm{2.0, 4.0, 0.0}.reconstruct());
  const GaussianState out =
      apply_channel(single_mode_gto(*res.p, 0.0, 2.0, RealMatrix::Identity(2, 2)), in);
  const RealMatrix target = SingleModeNormalForm{2.5, 2.0, 0.0}.reconstruct();
  const double err = max_abs(out.cm - target);
  r.passed = err <= 1e-10;
  r.detail = "|p-0.5|=" + detail::fmt(std::abs(*res.p - 0.5)) +
             " cm_err=" + detail::fmt(err);
  return r;
}

// 2. Closed-form GTO built from the cosine-sine decomposition agrees with
//    explicit dilation for random passive couplings on n + n modes.
inline SuiteResult oracle_equivalence(const Config &cfg) {
  SuiteResult r{"closed-form-vs-dilation", true, "", 0.0, 0.0};
  double worst = 0.0;
  const int per_n = cfg.count(100);
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k < per_n; ++k) {
      detail::Uniform rnd(mix_seed(cfg.seed, 2, 1000 * n + k));
      const RealMatrix coupling =
          unitary_to_passive(random_unitary(2 * n, rnd.raw()));
      const double beta = rnd(0.2, 3.0);
      const double w = rnd(0.5, 3.0);
      const double nu = nu_of(beta, w);

      const CosineSineForm form =
          cosine_sine_decompose(passive_to_unitary(coupling));
      GTOSpec spec;
      spec.beta = beta;
      spec.spectrum.S = RealMatrix::Identity(2 * n, 2 * n);
      FrequencySector sector{w, n, {}};
      for (int m = 0; m < n; ++m) sector.mode_indices.push_back(m);
      spec.spectrum.sectors = {sector};
      spec.sectors = {GTOSector{form.Z, form.thetas, form.W}};
      const GaussianChannel ch = gto_to_channel(spec);

      const std::vector<double> bath(static_cast<std::size_t>(n), nu);
      for (int t = 0; t < 10; ++t) {
        const RealMatrix cm = random_covariance(n, rnd.raw());
        const RealMatrix direct = dilate_and_trace(cm, coupling, bath);
        const RealMatrix closed = ch.X * cm * ch.X.transpose() + ch.Y;
        worst = std::max(worst, max_abs(direct - closed));
      }
    }
  }
  r.passed = worst <= 1e-8;
  r.detail = "max_dev=" + detail::fmt(worst);
  return r;
}

// 3. Williamson and cosine-sine reconstructions.
inline SuiteResult decomposition_round_trips(const Config &cfg) {
  SuiteResult r{"decomposition-round-trips", true, "", 0.0, 0.0};
  double worst_w = 0.0;
  double worst_sympl = 0.0;
  double worst_cs = 0.0;
  double worst_unit = 0.0;
  const int count = cfg.count(100);
  for (int k = 0; k < count; ++k) {
    const int n = 1 + k % 6;
    const RealMatrix p = random_covariance(n, mix_seed(cfg.seed, 3, k), 10.0);
    const WilliamsonForm wf = williamson(p);
    worst_w = std::max(worst_w, max_abs(wf.reconstruct() - p) / max_abs(p));
    const RealMatrix om = omega(n);
    worst_sympl =
        std::max(worst_sympl, max_abs(wf.S * om * wf.S.transpose() - om));

    const ComplexUnitary u = random_unitary(2 * n, mix_seed(cfg.seed, 4, k));
    const CosineSineForm cs = cosine_sine_decompose(u);
    worst_cs = std::max(worst_cs, max_abs(cs.reconstruct() - u));
    for (const ComplexUnitary *m : {&cs.W, &cs.X, &cs.Y, &cs.Z}) {
      worst_unit = std::max(
          worst_unit, max_abs(*m * m->adjoint() -
                              ComplexMatrix::Identity(m->rows(), m->cols())));
    }
  }
  r.passed = worst_w <= 1e-8 && worst_sympl <= 1e-9 && worst_cs <= 1e-9 &&
             worst_unit <= 1e-9;
  r.detail = "williamson_rel=" + detail::fmt(worst_w) +
             " symplectic=" + detail::fmt(worst_sympl) +
             " cs=" + detail::fmt(worst_cs) + " unitarity=" +
             detail::fmt(worst_unit);
  return r;
}

// 4. Isotropy elements preserve (+) omega_l 1 and commute with Y Omega;
//    generic cross-sector passives do not.
inline SuiteResult isotropy(const Config &cfg) {
  SuiteResult r{"isotropy-group", true, "", 0.0, 0.0};
  double worst = 0.0;
  double worst_comm = 0.0;
  double weakest_negative = std::numeric_limits<double>::infinity();
  const int count = cfg.count(100);
  for (int k = 0; k < count; ++k) {
    detail::Uniform rnd(mix_seed(cfg.seed, 5, k));
    const int sectors = 1 + k % 3;
    std::vector<int> mult;
    std::vector<ComplexUnitary> blocks;
    std::vector<double> freqs;
    for (int l = 0; l < sectors; ++l) {
      mult.push_back(rnd.integer(1, 3));
      blocks.push_back(random_unitary(mult.back(), rnd.raw()));
      freqs.push_back(1.0 + l + rnd(0.0, 0.5));
    }
    const RealMatrix kmat = build_isotropy_element(mult, blocks);
    std::vector<double> per_mode;
    for (int l = 0; l < sectors; ++l) {
      for (int j = 0; j < mult[static_cast<std::size_t>(l)]; ++j) {
        per_mode.push_back(freqs[static_cast<std::size_t>(l)]);
      }
    }
    const RealMatrix y = gtokit::detail::mode_diagonal(per_mode);
    const RealMatrix yo = y * omega(static_cast<int>(per_mode.size()));
    worst = std::max(worst, max_abs(kmat * y * kmat.transpose() - y));
    worst_comm = std::max(worst_comm, max_abs(kmat * yo - yo * kmat));

    // Negative control: two sectors with distinct frequencies and a
    // Haar-random passive on all modes.
    const int n1 = rnd.integer(1, 2);
    const int n2 = rnd.integer(1, 2);
    std::vector<double> two(static_cast<std::size_t>(n1), 1.0);
    two.insert(two.end(), static_cast<std::size_t>(n2), 2.0);
    const RealMatrix y2 = gtokit::detail::mode_diagonal(two);
    const RealMatrix mixer =
        unitary_to_passive(random_unitary(n1 + n2, rnd.raw()));
    weakest_negative = std::min(
        weakest_negative, max_abs(mixer * y2 * mixer.transpose() - y2));
  }
  r.passed = worst <= 1e-10 && worst_comm <= 1e-10 && weakest_negative > 1e-10;
  r.detail = "KYK^T-Y=" + detail::fmt(worst) +
             " [K,YOmega]=" + detail::fmt(worst_comm) +
             " weakest_negative_control=" + detail::fmt(weakest_negative);
  return r;
}

// 5. Forward-simulated single-mode transformations are judged feasible with
//    the generating p; targets below min(nu_i, nu_b) are judged infeasible.
inline SuiteResult feasibility_sweep(const Config &cfg) {
  SuiteResult r{"feasibility-soundness", true, "", 0.0, 0.0};
  int missed = 0;
  double worst_p = 0.0;
  const int forward = cfg.count(10000);
  for (int k = 0; k < forward; ++k) {
    detail::Uniform rnd(mix_seed(cfg.seed, 6, k));
    const double nu_i = rnd(1.0, 10.0);
    const double z_i = std::pow(10.0, rnd(0.0, 1.0));
    const double phi_i = rnd(0.0, std::numbers::pi);
    const double nu_b = rnd(1.0, 10.0);
    const double p = rnd(0.0, 1.0);
    const double phi = rnd(0.0, 2.0 * std::numbers::pi);
    const RealMatrix cm_i = SingleModeNormalForm{nu_i, z_i, phi_i}.reconstruct();
    const GaussianChannel ch =
        single_mode_gto(p, phi, nu_b, RealMatrix::Identity(2, 2));
    const RealMatrix cm_f = ch.X * cm_i * ch.X.transpose() + ch.Y;
    const SingleModeNormalForm out = single_mode_decompose(cm_f);
    const FeasibilityResult res = single_mode_feasible(
        TransformQuery{nu_i, z_i, out.nu, out.z, nu_b, std::nullopt});
    if (!res.feasible) {
      ++missed;
      continue;
    }
    worst_p = std::max(worst_p, std::abs(*res.p - p));
  }
  int accepted = 0;
  const int violating = cfg.count(1000);
  for (int k = 0; k < violating; ++k) {
    detail::Uniform rnd(mix_seed(cfg.seed, 7, k));
    const double nu_i = rnd(1.5, 10.0);
    const double nu_b = rnd(1.5, 10.0);
    const double floor = std::min(nu_i, nu_b);
    TransformQuery q{nu_i, std::pow(10.0, rnd(0.0, 1.0)),
                     1.0 + rnd(0.0, 0.98) * (floor - 1.0),
                     std::pow(10.0, rnd(0.0, 1.0)), nu_b, std::nullopt};
    if (single_mode_feasible(q).feasible) ++accepted;
    q.vartheta = rnd(0.0, std::numbers::pi);
    if (squeezed_bath_feasible(q).feasible) ++accepted;
  }
  r.passed = missed == 0 && worst_p <= 1e-8 && accepted == 0;
  r.detail = "missed=" + std::to_string(missed) + " max|dp|=" +
             detail::fmt(worst_p) + " violating_accepted=" +
             std::to_string(accepted);
  return r;
}

// 6. Unsqueezed states: feasible iff nu_f lies between nu_b and nu_i.
inline SuiteResult unsqueezed_grid(const Config &cfg) {
  SuiteResult r{"unsqueezed-criterion", true, "", 0.0, 0.0};
  const int pts = cfg.quick ? 20 : 50;
  std::vector<double> grid;
  for (int k = 0; k < pts; ++k) grid.push_back(1.0 + 9.0 * k / (pts - 1));
  int mismatches = 0;
  for (double nu_i : grid) {
    for (double nu_f : grid) {
      for (double nu_b : grid) {
        const bool expected =
            nu_f >= std::min(nu_i, nu_b) && nu_f <= std::max(nu_i, nu_b);
        const bool got = single_mode_feasible(
                             TransformQuery{nu_i, 1.0, nu_f, 1.0, nu_b,
                                            std::nullopt})
                             .feasible;
        if (got != expected) ++mismatches;
      }
    }
  }
  r.passed = mismatches == 0;
  r.detail = std::to_string(pts * pts * pts) + " points, mismatches=" +
             std::to_string(mismatches);
  return r;
}

// 7. No Gaussian protocol of unitaries and GTOs cools below min(nu_0, nu_b).
inline SuiteResult cooling_no_go(const Config &cfg) {
  SuiteResult r{"cooling-no-go", true, "", 0.0, 0.0};
  const double nu_0 = 5.0;
  const double nu_b = 2.0;
  const double floor = 2.0 - 1e-6;
  const CoolingTrace adv = greedy_adversary(nu_0, nu_b, 10);
  double lowest = std::numeric_limits<double>::infinity();
  for (const TraceEntry &e : adv.steps) lowest = std::min(lowest, e.nu);
  bool ok = lowest >= floor && !adv.violated;
  const double adversary_final = adv.steps.back().nu;

  const int protocols = cfg.count(10000);
  for (int k = 0; k < protocols; ++k) {
    detail::Uniform rnd(mix_seed(cfg.seed, 8, k));
    const int len = rnd.integer(1, 20);
    std::vector<ProtocolStep> steps;
    for (int s = 0; s < len; ++s) {
      steps.push_back(ProtocolStep::from_params(
          rnd(-std::log(10.0), std::log(10.0)), rnd(0.0, 2.0 * std::numbers::pi),
          rnd(0.0, 1.0), rnd(0.0, 2.0 * std::numbers::pi)));
    }
    const RealMatrix frame =
        k % 2 == 0 ? RealMatrix::Identity(2, 2)
                   : RealMatrix(rotation(rnd(0.0, std::numbers::pi)) *
                                squeezer(std::exp(rnd(-1.0, 1.0))));
    const CoolingTrace t = run_protocol(
        GaussianState::centered(nu_0 * RealMatrix::Identity(2, 2)), steps,
        nu_b, frame);
    for (const TraceEntry &e : t.steps) lowest = std::min(lowest, e.nu);
    ok = ok && !t.violated;
  }
  ok = ok && lowest >= floor;

  // Fixed point: starting on the bath value with identity unitaries.
  double drift = 0.0;
  {
    detail::Uniform rnd(mix_seed(cfg.seed, 9, 0));
    std::vector<ProtocolStep> steps;
    for (int s = 0; s < 50; ++s) {
      steps.push_back({RealMatrix::Identity(2, 2), rnd(0.0, 0.999),
                       rnd(0.0, 2.0 * std::numbers::pi)});
    }
    const CoolingTrace t = run_protocol(
        GaussianState::centered(nu_b * RealMatrix::Identity(2, 2)), steps,
        nu_b);
    for (const TraceEntry &e : t.steps) drift = std::max(drift, std::abs(e.nu - nu_b));
  }
  ok = ok && drift <= 1e-12;
  r.passed = ok;
  r.detail = "adversary_final_nu=" + std::to_string(adversary_final) +
             " lowest_nu=" + std::to_string(lowest) +
             " fixed_point_drift=" + detail::fmt(drift);
  return r;
}

// 8. Sideband swap reaches nu_of(beta, omega_a), below 1.001 once
//    beta omega_a >= 8.
inline SuiteResult sideband(const Config &) {
  SuiteResult r{"sideband-swap", true, "", 0.0, 0.0};
  const GaussianState hot =
      GaussianState::centered(SingleModeNormalForm{5.0, 2.0, 0.4}.reconstruct());
  double worst = 0.0;
  bool cold_enough = true;
  for (double beta : {0.5, 1.0, 2.0}) {
    for (double x : {std::log(3.0), 1.0, 4.0, 8.0, 10.0, 15.0, 25.0}) {
      const auto [state, nu] = sideband_swap(hot, beta, x / beta);
      const double expected = nu_of(beta, x / beta);
      worst = std::max(worst, std::abs(nu - expected));
      if (x >= 8.0 && !(nu < 1.001)) cold_enough = false;
      (void)state;
    }
  }
  r.passed = worst <= 1e-12 && cold_enough;
  r.detail = "max|nu-nu_of|=" + detail::fmt(worst);
  return r;
}

// 9. Thermo-majorization of truncated thermal distributions agrees with the
//    Gaussian unsqueezed criterion, also at twice the cutoff. Targets just
//    past the bath temperature are infeasible only through levels whose
//    mass is far below double precision; triples whose untruncated witness
//    gap is under kResolvableGap are redrawn and counted.
inline constexpr double kResolvableGap = 1e-8;

inline SuiteResult thermo_agreement(const Config &cfg) {
  SuiteResult r{"thermo-majorization-agreement", true, "", 0.0, 0.0};
  int disagreements = 0;
  int unstable = 0;
  int feasible = 0;
  int redrawn = 0;
  const int count = cfg.count(200);
  std::uint64_t draw = 0;
  for (int k = 0; k < count; ++k) {
    double beta_i = 0.0;
    double beta_f = 0.0;
    double beta = 0.0;
    double e = 0.0;
    for (;;) {
      detail::Uniform rnd(mix_seed(cfg.seed, 10, draw++));
      beta_i = rnd(0.3, 3.0);
      beta = rnd(0.3, 3.0);
      e = rnd(0.5, 2.0);
      beta_f = k % 2 == 0 ? beta_i + rnd(0.0, 1.0) * (beta - beta_i)
                          : rnd(0.2, 4.0);
      const double gap = bath_overshoot_gap(beta_i, beta_f, beta);
      if (gap == 0.0 || gap >= kResolvableGap) break;
      ++redrawn;
    }
    const int cutoff = required_cutoff(std::min({beta_i, beta_f, beta}), e);
    const CrossCheck base = cross_check(beta_i, beta_f, beta, e, cutoff);
    const CrossCheck doubled = cross_check(beta_i, beta_f, beta, e, 2 * cutoff);
    if (!base.agree || !doubled.agree) ++disagreements;
    if (base.thermo_verdict != doubled.thermo_verdict) ++unstable;
    if (base.gaussian_verdict) ++feasible;
  }
  r.passed = disagreements == 0 && unstable == 0;
  r.detail = std::to_string(count) + " triples (" + std::to_string(feasible) +
             " feasible, " + std::to_string(redrawn) +
             " unresolvable redrawn), disagreements=" +
             std::to_string(disagreements) +
             " cutoff_unstable=" + std::to_string(unstable);
  return r;
}

// 10. At z = 1 the free energy is minimised at the bath value nu_of(beta, w).
inline SuiteResult free_energy_minimum(const Config &cfg) {
  SuiteResult r{"free-energy-minimum", true, "", 0.0, 0.0};
  const double h = 1e-4;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    detail::Uniform rnd(mix_seed(cfg.seed, 11, k));
    const double beta = rnd(0.3, 3.0);
    const double w = rnd(1.0, 3.0);
    const double nu_b = nu_of(beta, w);
    const int steps = static_cast<int>(std::ceil(2.0 * nu_b / h));
    double best_nu = 1.0;
    double best_f = free_energy(1.0, 1.0, beta, w);
    for (int j = 1; j <= steps; ++j) {
      const double nu = 1.0 + j * h;
      const double f = free_energy(nu, 1.0, beta, w);
      if (f < best_f) {
        best_f = f;
        best_nu = nu;
      }
    }
    worst = std::max(worst, std::abs(best_nu - nu_b));
  }
  r.passed = worst <= h;
  r.detail = "grid h=" + detail::fmt(h) + " max|argmin-nu_b|=" + detail::fmt(worst);
  return r;
}

struct Criterion {
  int id;
  std::function<SuiteResult(const Config &)> run;
  double budget_seconds;
};

inline std::vector<Criterion> criteria() {
  // Wall-clock budgets in seconds.
  return {{1, worked_example, 1e-3},
          {2, oracle_equivalence, 10.0},
          {3, decomposition_round_trips, 5.0},
          {4, isotropy, 2.0},
          {5, feasibility_sweep, 5.0},
          {6, unsqueezed_grid, 5.0},
          {7, cooling_no_go, 30.0},
          {8, sideband, 1.0},
          {9, thermo_agreement, 10.0},
          {10, free_energy_minimum, 2.0}};
}

/// Runs one criterion, timing it; a suite that throws fails.
inline SuiteResult run_timed(const Criterion &c, const Config &cfg) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult res;
  try {
    res = c.run(cfg);
  } catch (const std::exception &e) {
    res.name = "criterion-" + std::to_string(c.id);
    res.passed = false;
    res.detail = std::string("exception: ") + e.what();
  }
  res.budget_seconds = c.budget_seconds;
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return res;
}

}  // namespace gtokit::selftest
