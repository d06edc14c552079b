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

// Thermo-majorization for energy-diagonal single-mode Gaussian states, i.e.
// geometric occupation distributions truncated at a finite cutoff.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gtokit/errors.hpp"
#include "gtokit/feasibility.hpp"
#include "gtokit/states.hpp"

namespace gtokit {

namespace tolerance {
inline constexpr double kTail = 1e-12;
inline constexpr double kDominance = 1e-10;
}  // namespace tolerance

/// p_n proportional to e^{-beta E n}, n = 0 .. cutoff-1, renormalised.
struct GeometricDist {
  double beta = 1.0;
  double E = 1.0;
  int cutoff = 0;
  std::vector<double> probs;
  /// log(probs[n]); stays finite where probs underflows.
  std::vector<double> log_probs;
};

/// Smallest cutoff whose discarded tail e^{-beta E N} is below tail_tol.
inline int required_cutoff(double beta, double E,
                           double tail_tol = tolerance::kTail) {
  if (!(beta * E > 0.0) || !(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw DomainError("required_cutoff: need beta E > 0 and tail_tol in (0,1)");
  }
  return std::max(2, static_cast<int>(std::ceil(-std::log(tail_tol) /
                                                (beta * E))) + 1);
}

inline GeometricDist geometric_probs(double beta, double E, int cutoff,
                                     double tail_tol = tolerance::kTail) {
  if (!(beta > 0.0) || !(E > 0.0)) {
    throw DomainError("geometric_probs: beta and E must be positive");
  }
  if (cutoff < 2) throw ValidationError("geometric_probs: cutoff must be >= 2");
  const double x = beta * E;
  const double tail = std::exp(-x * cutoff);
  if (tail > tail_tol) {
    throw CutoffError("geometric_probs: cutoff " + std::to_string(cutoff) +
                      " leaves tail mass " + std::to_string(tail) +
                      "; need at least " +
                      std::to_string(required_cutoff(beta, E, tail_tol)));
  }
  GeometricDist dist{beta, E, cutoff, {}, {}};
  // (1 - e^{-x}) / (1 - e^{-xN}) normalises the truncated series.
  const double log_norm = std::log(-std::expm1(-x)) - std::log1p(-tail);
  dist.probs.resize(static_cast<std::size_t>(cutoff));
  dist.log_probs.resize(static_cast<std::size_t>(cutoff));
  for (int n = 0; n < cutoff; ++n) {
    const double lp = log_norm - x * n;
    dist.log_probs[static_cast<std::size_t>(n)] = lp;
    dist.probs[static_cast<std::size_t>(n)] = std::exp(lp);
  }
  return dist;
}

/// Concave piecewise-linear curve through (0, 0) and the cumulative sums.
struct ThermoCurve {
  std::vector<std::pair<double, double>> breakpoints;

  /// Upper envelope value at x in [0, 1].
  double at(double x) const {
    const auto it = std::upper_bound(
        breakpoints.begin(), breakpoints.end(), x,
        [](double v, const std::pair<double, double> &pt) {
          return v < pt.first;
        });
    if (it == breakpoints.begin()) return breakpoints.front().second;
    const auto &left = *(it - 1);
    if (it == breakpoints.end()) return left.second;
    const auto &right = *it;
    const double t = (x - left.first) / (right.first - left.first);
    return left.second + t * (right.second - left.second);
  }
};

/// Sorts levels by p_n / g_n descending (ties by ascending n) and
/// accumulates (sum g, sum p). Breakpoints whose x does not advance in
/// floating point are merged, so x is strictly increasing and the curve
/// starts at (0, 0).
inline ThermoCurve thermo_curve(const GeometricDist &p,
                               const GeometricDist &g) {
  if (p.cutoff != g.cutoff || p.E != g.E ||
      p.probs.size() != g.probs.size()) {
    throw ValidationError(
        "thermo_curve: distributions must share level spacing and cutoff");
  }
  std::vector<int> order(p.probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> log_ratio(p.probs.size());
  for (std::size_t n = 0; n < p.probs.size(); ++n) {
    log_ratio[n] = p.log_probs[n] - g.log_probs[n];
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return log_ratio[static_cast<std::size_t>(a)] >
           log_ratio[static_cast<std::size_t>(b)];
  });

  ThermoCurve curve;
  curve.breakpoints.reserve(order.size() + 1);
  curve.breakpoints.emplace_back(0.0, 0.0);
  double x = 0.0;
  double y = 0.0;
  for (int n : order) {
    x += g.probs[static_cast<std::size_t>(n)];
    y += p.probs[static_cast<std::size_t>(n)];
    if (x > curve.breakpoints.back().first) {
      curve.breakpoints.emplace_back(x, y);
    } else if (curve.breakpoints.size() == 1) {
      // Gibbs mass underflowed right at the start; keep the origin and
      // stand in the smallest positive x for the true tiny one.
      curve.breakpoints.emplace_back(
          std::numeric_limits<double>::denorm_min(), y);
    } else {
      curve.breakpoints.back().second = y;
    }
  }
  return curve;
}

/// True iff a lies above b (within tol) everywhere; checking the union of
/// breakpoints suffices for piecewise-linear curves.
inline bool curve_dominates(const ThermoCurve &a, const ThermoCurve &b,
                            double tol = tolerance::kDominance) {
  if (a.breakpoints.empty() || b.breakpoints.empty()) {
    throw ValidationError("curve_dominates: empty curve");
  }
  for (const auto &pt : a.breakpoints) {
    if (pt.second < b.at(pt.first) - tol) return false;
  }
  for (const auto &pt : b.breakpoints) {
    if (a.at(pt.first) < pt.second - tol) return false;
  }
  return true;
}

/// Largest amount by which the untruncated target curve rises above the
/// initial one when beta_f lies past the bath on the far side from beta_i;
/// zero otherwise. Uses the continuous curves y = x^{b/beta} (levels taken
/// from the top) and y = 1 - (1 - x)^{b/beta} (from the ground up). The
/// witness sits at levels whose mass is about this gap, so a truncated
/// check with dominance tolerance tol can only see it when gap >> tol.
inline double bath_overshoot_gap(double beta_i, double beta_f, double beta) {
  if (!(beta_i > 0.0 && beta_f > 0.0 && beta > 0.0)) {
    throw DomainError("bath_overshoot_gap: inverse temperatures must be positive");
  }
  if (beta_i > beta && beta_f < beta) {
    // Cold start, target hotter than the bath: gap near x = 0.
    const double a = beta_f / beta;
    const double c = beta_i / beta;
    const double log_x = std::log(a / c) / (1.0 - a);
    return std::exp(a * log_x) * (1.0 - a);
  }
  if (beta_i < beta && beta_f > beta) {
    // Hot start, target colder than the bath: gap near x = 1.
    const double a = beta_i / beta;
    const double b = beta_f / beta;
    const double log_u = std::log(a / b) / (b - 1.0);
    return std::exp(log_u) * a * (1.0 - 1.0 / b);
  }
  return 0.0;
}

struct CrossCheck {
  bool thermo_verdict = false;
  bool gaussian_verdict = false;
  bool agree = false;
};

/// Compares thermo-majorization of the truncated thermal distributions at
/// beta_i -> beta_f (bath beta) with the Gaussian unsqueezed criterion.
/// cutoff <= 0 picks the smallest cutoff meeting tail_tol for all three.
inline CrossCheck cross_check(double beta_i, double beta_f, double beta,
                              double E, int cutoff = 0,
                              double tail_tol = tolerance::kTail) {
  if (cutoff <= 0) {
    const double coldest = std::min({beta_i, beta_f, beta});
    cutoff = required_cutoff(coldest, E, tail_tol);
  }
  const GeometricDist initial = geometric_probs(beta_i, E, cutoff, tail_tol);
  const GeometricDist target = geometric_probs(beta_f, E, cutoff, tail_tol);
  const GeometricDist gibbs = geometric_probs(beta, E, cutoff, tail_tol);

  CrossCheck out;
  out.thermo_verdict = curve_dominates(thermo_curve(initial, gibbs),
                                       thermo_curve(target, gibbs));
  TransformQuery q;
  q.nu_i = nu_of(beta_i, E);
  q.nu_f = nu_of(beta_f, E);
  q.nu_b = nu_of(beta, E);
  out.gaussian_verdict = single_mode_feasible(q).feasible;
  out.agree = out.thermo_verdict == out.gaussian_verdict;
  return out;
}

}  // namespace gtokit
