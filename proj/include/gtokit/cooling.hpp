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

// Algorithmic cooling of a single mode: Gaussian unitaries interleaved with
// single-mode thermal operations, plus the two-mode sideband swap that
// escapes the entropy floor.

#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "gtokit/channels.hpp"
#include "gtokit/errors.hpp"
#include "gtokit/states.hpp"
#include "gtokit/symplectic.hpp"

namespace gtokit {

/// A Gaussian unitary followed by a single-mode GTO.
struct ProtocolStep {
  RealMatrix unitary = RealMatrix::Identity(2, 2);
  double gto_p = 1.0;
  double gto_phi = 0.0;

  /// unitary = D(rotate) diag(e^squeeze, e^-squeeze).
  static ProtocolStep from_params(double squeeze, double rotate, double p,
                                  double phi) {
    return {rotation(rotate) * squeezer(std::exp(squeeze)), p, phi};
  }
};

struct TraceEntry {
  double nu = 1.0;
  double entropy = 0.0;
};

struct CoolingTrace {
  /// Entry 0 is the initial state, entry k the state after step k.
  std::vector<TraceEntry> steps;
  /// entropy(min(nu_0, nu_b)).
  double bound = 0.0;
  bool violated = false;
};

inline double single_mode_nu(const RealMatrix &cm) {
  return std::sqrt(std::max(cm.determinant(), 0.0));
}

inline double entropy_lower_bound(double nu_0, double nu_b) {
  if (!(nu_0 >= 1.0 - tolerance::kStructural) ||
      !(nu_b >= 1.0 - tolerance::kStructural)) {
    throw DomainError("entropy_lower_bound: symplectic eigenvalues must be >= 1");
  }
  return entropy(std::min(nu_0, nu_b));
}

/// det of p D c D^T + (1 - p) nu_b 1_2 for a 2x2 CM c. Every term is
/// non-negative, so this stays accurate when c is strongly squeezed and
/// the direct 2x2 determinant would cancel catastrophically.
inline double gto_output_det(double det_c, double trace_c, double p,
                             double nu_b) {
  return p * p * det_c + (1.0 - p) * (1.0 - p) * nu_b * nu_b +
         p * (1.0 - p) * nu_b * trace_c;
}

namespace detail {

inline void record(CoolingTrace &trace, double nu, double tol) {
  const double s = entropy(nu);
  trace.steps.push_back({nu, s});
  if (s < trace.bound - tol) trace.violated = true;
}

}  // namespace detail

/// Runs the protocol on a single-mode state; the GTOs act in the normal-mode
/// frame `s` of the system Hamiltonian.
inline CoolingTrace run_protocol(const GaussianState &initial,
                                 const std::vector<ProtocolStep> &steps,
                                 double nu_b,
                                 const RealMatrix &s = RealMatrix::Identity(2, 2),
                                 double tol = tolerance::kStructural) {
  check_dimensions(initial);
  if (initial.n_modes != 1 || !validate_state(initial)) {
    throw ValidationError("run_protocol: initial state must be a valid "
                          "single-mode state");
  }
  for (const ProtocolStep &step : steps) {
    if (step.unitary.rows() != 2 || step.unitary.cols() != 2 ||
        !is_symplectic(step.unitary,
                       tolerance::kStructural *
                           std::max(1.0, max_abs(step.unitary)))) {
      throw ValidationError("run_protocol: step unitary is not symplectic");
    }
    if (!(step.gto_p >= 0.0 && step.gto_p <= 1.0)) {
      throw ValidationError("run_protocol: step p outside [0, 1]");
    }
  }

  CoolingTrace trace;
  const double nu_0 = single_mode_nu(initial.cm);
  trace.bound = entropy_lower_bound(nu_0, nu_b);
  detail::record(trace, nu_0, tol);

  // nu^2 is carried separately: unitaries preserve it and the GTO updates
  // it through gto_output_det in the normal-mode frame.
  const RealMatrix s_inv = symplectic_inverse(s);
  RealMatrix cm = initial.cm;
  double det = nu_0 * nu_0;
  for (const ProtocolStep &step : steps) {
    const GaussianChannel gto =
        single_mode_gto(step.gto_p, step.gto_phi, nu_b, s);
    cm = step.unitary * cm * step.unitary.transpose();
    const double trace_c = (s_inv * cm * s_inv.transpose()).trace();
    det = gto_output_det(det, trace_c, step.gto_p, nu_b);
    cm = gto.X * cm * gto.X.transpose() + gto.Y;
    cm = 0.5 * (cm + cm.transpose());
    detail::record(trace, std::sqrt(det), tol);
  }
  return trace;
}

/// Search grid of the greedy adversary: squeeze factors log-spaced in
/// [1, 10], unitary rotations over [0, pi), transmissions over [0, 1].
struct AdversaryGrid {
  int squeeze_samples = 16;
  int rotation_samples = 32;
  int p_samples = 64;
};

/// Starting from the thermal state nu_0 1_2, picks at every step the
/// (squeeze, rotation, p) on the grid that minimises the output
/// symplectic eigenvalue. GTOs act in the frame S = 1.
inline CoolingTrace greedy_adversary(double nu_0, double nu_b, int n_steps,
                                     AdversaryGrid grid = {},
                                     double tol = tolerance::kStructural) {
  if (n_steps < 1) throw ValidationError("greedy_adversary: n_steps must be >= 1");
  if (grid.squeeze_samples < 1 || grid.rotation_samples < 1 ||
      grid.p_samples < 2) {
    throw ValidationError("greedy_adversary: grid too small");
  }
  CoolingTrace trace;
  trace.bound = entropy_lower_bound(nu_0, nu_b);
  detail::record(trace, nu_0, tol);

  std::vector<RealMatrix> unitaries;
  for (int i = 0; i < grid.squeeze_samples; ++i) {
    const double frac = grid.squeeze_samples == 1
                            ? 0.0
                            : static_cast<double>(i) / (grid.squeeze_samples - 1);
    const double z = std::pow(10.0, frac);
    for (int k = 0; k < grid.rotation_samples; ++k) {
      const double angle = std::numbers::pi * k / grid.rotation_samples;
      unitaries.push_back(rotation(angle) * squeezer(z));
    }
  }

  RealMatrix cm = nu_0 * RealMatrix::Identity(2, 2);
  double det = nu_0 * nu_0;
  const RealMatrix bath = nu_b * RealMatrix::Identity(2, 2);
  for (int step = 0; step < n_steps; ++step) {
    RealMatrix best = cm;
    double best_det = det;
    for (const RealMatrix &u : unitaries) {
      const RealMatrix rotated = u * cm * u.transpose();
      const double trace_c = rotated.trace();
      // p descends from 1 so ties keep the gentlest choice.
      for (int j = 0; j < grid.p_samples; ++j) {
        const double p = 1.0 - static_cast<double>(j) / (grid.p_samples - 1);
        const double cand_det = gto_output_det(det, trace_c, p, nu_b);
        if (cand_det < best_det) {
          best_det = cand_det;
          best = p * rotated + (1.0 - p) * bath;
        }
      }
    }
    cm = 0.5 * (best + best.transpose());
    det = best_det;
    detail::record(trace, std::sqrt(det), tol);
  }
  return trace;
}

/// Same search with `search_grid` squeeze samples and the default rotation
/// and transmission resolution.
inline CoolingTrace greedy_adversary(double nu_0, double nu_b, int n_steps,
                                     int search_grid,
                                     double tol = tolerance::kStructural) {
  AdversaryGrid grid;
  grid.squeeze_samples = search_grid;
  return greedy_adversary(nu_0, nu_b, n_steps, grid, tol);
}

/// Swaps the system with a fresh thermal ancilla of frequency omega_ancilla
/// through a full beam splitter. The coupling is not a thermal operation
/// (it mixes different frequencies), so the entropy floor does not apply.
/// Returns the cooled state and its symplectic eigenvalue.
inline std::pair<GaussianState, double> sideband_swap(
    const GaussianState &system, double beta, double omega_ancilla) {
  check_dimensions(system);
  if (system.n_modes != 1 || !validate_state(system)) {
    throw ValidationError("sideband_swap: system must be a valid single-mode "
                          "state");
  }
  const double nu_a = nu_of(beta, omega_ancilla);
  ComplexUnitary swap(2, 2);
  swap << 0.0, 1.0, -1.0, 0.0;
  const RealMatrix coupling = unitary_to_passive(swap);
  GaussianState out;
  out.n_modes = 1;
  out.cm = dilate_and_trace(system.cm, coupling, {nu_a});
  // The ancilla enters centred and the system leaves entirely.
  out.first_moments = RealVector::Zero(2);
  return {out, single_mode_nu(out.cm)};
}

}  // namespace gtokit
