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

// Single-mode state transformations under thermal operations.
//
// States are parametrised in the normal-mode frame of the system Hamiltonian
// by (nu, z): nu the symplectic eigenvalue, z >= 1 the squeezing. A thermal
// bath of symplectic eigenvalue nu_b maps (nu_i z_i, nu_i / z_i) only onto
// the segment joining it to (nu_b, nu_b).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtokit/errors.hpp"
#include "gtokit/symplectic.hpp"

namespace gtokit {

struct TransformQuery {
  double nu_i = 1.0;
  double z_i = 1.0;
  double nu_f = 1.0;
  double z_f = 1.0;
  double nu_b = 1.0;
  /// Optical phase between input and output; only for squeezed baths.
  std::optional<double> vartheta;
};

enum class FeasibilityReason {
  kOk,
  kPOutOfRange,
  kInconsistentSystem,
  kPositivityViolated,
};

inline const char *to_string(FeasibilityReason r) {
  switch (r) {
    case FeasibilityReason::kOk:
      return "ok";
    case FeasibilityReason::kPOutOfRange:
      return "p-out-of-range";
    case FeasibilityReason::kInconsistentSystem:
      return "inconsistent-system";
    case FeasibilityReason::kPositivityViolated:
      return "positivity-violated";
  }
  return "unknown";
}

struct FeasibilityResult {
  bool feasible = false;
  std::optional<double> p;
  FeasibilityReason reason = FeasibilityReason::kPOutOfRange;

  static FeasibilityResult ok(double p) {
    return {true, std::clamp(p, 0.0, 1.0), FeasibilityReason::kOk};
  }
  static FeasibilityResult fail(FeasibilityReason r) {
    return {false, std::nullopt, r};
  }
};

inline void check_query(const TransformQuery &q) {
  const double slack = 1.0 - tolerance::kStructural;
  const std::array<double, 5> vals{q.nu_i, q.z_i, q.nu_f, q.z_f, q.nu_b};
  for (double v : vals) {
    if (!std::isfinite(v)) {
      throw ValidationError("TransformQuery: non-finite parameter");
    }
  }
  if (q.vartheta && !std::isfinite(*q.vartheta)) {
    throw ValidationError("TransformQuery: non-finite vartheta");
  }
  if (!(q.nu_i >= slack && q.nu_f >= slack && q.nu_b >= slack)) {
    throw ValidationError("TransformQuery: symplectic eigenvalues must be >= 1");
  }
  if (!(q.z_i >= slack && q.z_f >= slack)) {
    throw ValidationError("TransformQuery: squeezing parameters must be >= 1");
  }
}

/// Point reached from (nu_i, z_i) with transmission p, in the
/// (nu z, nu / z) plane.
inline std::pair<double, double> segment_point(double nu_i, double z_i,
                                               double nu_b, double p) {
  return {p * nu_i * z_i + (1.0 - p) * nu_b,
          p * nu_i / z_i + (1.0 - p) * nu_b};
}

/// (nu_f, z_f) along the reachable segment for p = 1, ..., 0 on a uniform
/// grid; the first entry is the input, the last the bath point.
inline std::vector<std::pair<double, double>> reachable_set(double nu_i,
                                                            double z_i,
                                                            double nu_b,
                                                            int samples) {
  if (samples < 2) throw ValidationError("reachable_set: samples must be >= 2");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double p = 1.0 - static_cast<double>(k) / (samples - 1);
    const auto [x, y] = segment_point(nu_i, z_i, nu_b, p);
    out.emplace_back(std::sqrt(x * y), std::max(1.0, std::sqrt(x / y)));
  }
  return out;
}

/// Phase-covariant (thermal) bath: feasible iff a single p in [0, 1] solves
///   nu_f z_f = p nu_i z_i + (1 - p) nu_b,
///   nu_f / z_f = p nu_i / z_i + (1 - p) nu_b.
/// p is solved from the better-conditioned equation and the other one is
/// checked through its residual, which also covers an input sitting on the
/// bath value in one coordinate.
inline FeasibilityResult single_mode_feasible(const TransformQuery &q,
                                              double tol = 1e-9) {
  check_query(q);
  if (q.vartheta) {
    throw ValidationError(
        "single_mode_feasible: vartheta given; use squeezed_bath_feasible");
  }
  const double a = q.nu_i * q.z_i - q.nu_b;
  const double b = q.nu_i / q.z_i - q.nu_b;
  const double num_a = q.nu_f * q.z_f - q.nu_b;
  const double num_b = q.nu_f / q.z_f - q.nu_b;
  const double scale =
      std::max({1.0, q.nu_i * q.z_i, q.nu_f * q.z_f, q.nu_b});
  const double eps = tol * scale;

  if (std::max(std::abs(a), std::abs(b)) <= eps) {
    // Input is the bath point; every p leaves it there.
    if (std::max(std::abs(num_a), std::abs(num_b)) <= eps) {
      return FeasibilityResult::ok(1.0);
    }
    return FeasibilityResult::fail(FeasibilityReason::kInconsistentSystem);
  }

  const bool use_a = std::abs(a) >= std::abs(b);
  const double p = use_a ? num_a / a : num_b / b;
  const double residual =
      use_a ? std::abs(num_b - p * b) : std::abs(num_a - p * a);
  if (residual > eps * std::max(1.0, std::abs(p))) {
    return FeasibilityResult::fail(FeasibilityReason::kInconsistentSystem);
  }
  if (p < -tol || p > 1.0 + tol) {
    return FeasibilityResult::fail(FeasibilityReason::kPOutOfRange);
  }
  return FeasibilityResult::ok(p);
}

/// Arbitrary (possibly squeezed) pure bath state scaled by nu_b. Feasible
/// iff some p in [0, 1] solves
///   nu_f^2 + p^2 nu_i^2 - 2 p xi nu_i nu_f = (1 - p)^2 nu_b^2
/// and z_f nu_f - p nu_i (cos^2 vt z_i + sin^2 vt / z_i) >= 0, with
///   xi = 1/2 [cos^2 vt (z_i/z_f + z_f/z_i) + sin^2 vt (z_i z_f + 1/(z_i z_f))].
/// Roots are tried in ascending order; the first admissible one is returned.
inline FeasibilityResult squeezed_bath_feasible(const TransformQuery &q,
                                                double tol = 1e-9) {
  check_query(q);
  if (!q.vartheta) {
    throw ValidationError("squeezed_bath_feasible: vartheta is required");
  }
  const double c2 = std::cos(*q.vartheta) * std::cos(*q.vartheta);
  const double s2 = std::sin(*q.vartheta) * std::sin(*q.vartheta);
  const double xi =
      0.5 * (c2 * (q.z_i / q.z_f + q.z_f / q.z_i) +
             s2 * (q.z_i * q.z_f + 1.0 / (q.z_i * q.z_f)));

  const double bi = q.nu_i * q.nu_i;
  const double bf = q.nu_f * q.nu_f;
  const double bb = q.nu_b * q.nu_b;
  // quad p^2 + lin p + cst = 0
  const double quad = bi - bb;
  const double half_lin = bb - xi * q.nu_i * q.nu_f;
  const double cst = bf - bb;
  const double scale2 = std::max({1.0, bi, bf, bb, xi * q.nu_i * q.nu_f});
  const double eps2 = tol * scale2;

  std::vector<double> candidates;
  if (std::abs(quad) <= eps2) {
    if (std::abs(half_lin) <= eps2) {
      if (std::abs(cst) > eps2) {
        return FeasibilityResult::fail(FeasibilityReason::kInconsistentSystem);
      }
      // Every p solves the determinant condition; prefer the identity.
      candidates = {1.0, 0.0};
    } else {
      candidates = {-cst / (2.0 * half_lin)};
    }
  } else {
    double disc = half_lin * half_lin - quad * cst;
    if (disc < -eps2 * scale2) {
      return FeasibilityResult::fail(FeasibilityReason::kInconsistentSystem);
    }
    disc = std::max(disc, 0.0);
    // Cancellation-free pair of roots.
    const double root = std::sqrt(disc);
    const double t = -(half_lin + std::copysign(root, half_lin));
    if (t == 0.0) {
      candidates = {0.0};
    } else {
      candidates = {t / quad, cst / t};
    }
    std::sort(candidates.begin(), candidates.end());
  }

  const double pinch = c2 * q.z_i + s2 / q.z_i;
  const double scale = std::max({1.0, q.nu_f * q.z_f, q.nu_i * pinch});
  bool any_in_range = false;
  for (double p : candidates) {
    if (p < -tol || p > 1.0 + tol) continue;
    any_in_range = true;
    const double pc = std::clamp(p, 0.0, 1.0);
    if (q.z_f * q.nu_f - pc * q.nu_i * pinch >= -tol * scale) {
      return FeasibilityResult::ok(pc);
    }
  }
  return FeasibilityResult::fail(any_in_range
                                     ? FeasibilityReason::kPositivityViolated
                                     : FeasibilityReason::kPOutOfRange);
}

/// Dispatches on whether the query carries a relative phase.
inline FeasibilityResult feasible(const TransformQuery &q, double tol = 1e-9) {
  return q.vartheta ? squeezed_bath_feasible(q, tol)
                    : single_mode_feasible(q, tol);
}

struct BoundCheck {
  std::string name;
  bool satisfied = false;
};

/// Necessary conditions: z_f <= z_i (thermal bath only) and
/// nu_f >= min(nu_i, nu_b) (any Gaussian bath).
inline std::vector<BoundCheck> necessary_bounds(const TransformQuery &q,
                                                double tol = 1e-9) {
  check_query(q);
  std::vector<BoundCheck> out;
  if (!q.vartheta) {
    out.push_back({"squeezing-nonincreasing",
                   q.z_f <= q.z_i * (1.0 + tol)});
  }
  const double floor = std::min(q.nu_i, q.nu_b);
  out.push_back({"nu-above-min", q.nu_f >= floor * (1.0 - tol)});
  return out;
}

}  // namespace gtokit
