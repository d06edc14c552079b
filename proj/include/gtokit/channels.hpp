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

// Gaussian channels and the construction of Gaussian thermal operations.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gtokit/errors.hpp"
#include "gtokit/states.hpp"
#include "gtokit/symplectic.hpp"

namespace gtokit {

namespace tolerance {
inline constexpr double kChannel = 1e-8;
}  // namespace tolerance

/// cm -> X cm X^T + Y, r -> X r + d.
struct GaussianChannel {
  RealMatrix X;
  RealMatrix Y;
  RealVector d;

  int n_modes() const { return static_cast<int>(X.rows() / 2); }

  static GaussianChannel identity(int n_modes) {
    return {RealMatrix::Identity(2 * n_modes, 2 * n_modes),
            RealMatrix::Zero(2 * n_modes, 2 * n_modes),
            RealVector::Zero(2 * n_modes)};
  }
};

inline void check_dimensions(const GaussianChannel &ch) {
  detail::require_phase_space_square(ch.X, "GaussianChannel.X");
  if (ch.Y.rows() != ch.X.rows() || ch.Y.cols() != ch.X.cols() ||
      ch.d.size() != ch.X.rows()) {
    throw ValidationError("GaussianChannel: X, Y and d sizes disagree");
  }
}

/// Complete positivity: Y + i Omega - i X Omega X^T >= -tol.
inline bool validate_channel(const GaussianChannel &ch,
                             double tol = tolerance::kChannel) {
  check_dimensions(ch);
  if (!ch.X.allFinite() || !ch.Y.allFinite() || !ch.d.allFinite()) {
    return false;
  }
  if (!detail::is_symmetric(ch.Y, tol)) return false;
  const RealMatrix om = omega(ch.n_modes());
  const RealMatrix sym_y = 0.5 * (ch.Y + ch.Y.transpose());
  const ComplexMatrix cp =
      sym_y.cast<Complex>() +
      Complex(0.0, 1.0) * (om - ch.X * om * ch.X.transpose()).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(cp, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -tol;
}

inline GaussianState apply_channel(const GaussianChannel &ch,
                                   const GaussianState &state) {
  check_dimensions(ch);
  check_dimensions(state);
  if (ch.n_modes() != state.n_modes) {
    throw ValidationError("apply_channel: channel acts on " +
                          std::to_string(ch.n_modes()) +
                          " mode(s), state has " +
                          std::to_string(state.n_modes));
  }
  if (!validate_channel(ch)) {
    throw ValidationError("apply_channel: channel is not completely positive");
  }
  if (!validate_state(state)) {
    throw ValidationError("apply_channel: input is not a valid state");
  }
  GaussianState out;
  out.n_modes = state.n_modes;
  out.cm = ch.X * state.cm * ch.X.transpose() + ch.Y;
  out.cm = 0.5 * (out.cm + out.cm.transpose());
  out.first_moments = ch.X * state.first_moments + ch.d;
  return out;
}

/// ch2 after ch1.
inline GaussianChannel compose(const GaussianChannel &ch2,
                               const GaussianChannel &ch1) {
  check_dimensions(ch1);
  check_dimensions(ch2);
  if (ch1.X.rows() != ch2.X.rows()) {
    throw ValidationError("compose: channels act on different mode counts");
  }
  GaussianChannel out;
  out.X = ch2.X * ch1.X;
  out.Y = ch2.X * ch1.Y * ch2.X.transpose() + ch2.Y;
  out.Y = 0.5 * (out.Y + out.Y.transpose());
  out.d = ch2.X * ch1.d + ch2.d;
  return out;
}

/// Thermal operation with respect to a Hamiltonian centred at `center`:
/// displace to the origin, apply ch, displace back.
inline GaussianChannel displaced_gto(const GaussianChannel &ch,
                                     const RealVector &center) {
  check_dimensions(ch);
  if (center.size() != ch.X.rows()) {
    throw ValidationError("displaced_gto: center has wrong length");
  }
  GaussianChannel out = ch;
  out.d = ch.d + (RealMatrix::Identity(ch.X.rows(), ch.X.cols()) - ch.X) *
                     center;
  return out;
}

// ---------------------------------------------------------------------------
// Dilation: couple to thermal bath modes through a passive unitary, then
// discard the bath.

/// Leading 2n x 2n block of O (cm (+) (+)_j nu_j 1_2) O^T.
inline RealMatrix dilate_and_trace(const RealMatrix &system_cm,
                                   const RealMatrix &coupling,
                                   const std::vector<double> &bath_nus,
                                   double tol = tolerance::kStructural) {
  detail::require_phase_space_square(system_cm, "dilate_and_trace");
  detail::require_phase_space_square(coupling, "dilate_and_trace");
  const Eigen::Index sys = system_cm.rows();
  const Eigen::Index bath = 2 * static_cast<Eigen::Index>(bath_nus.size());
  if (coupling.rows() != sys + bath) {
    throw ValidationError(
        "dilate_and_trace: coupling does not match system + bath size");
  }
  if (!is_passive(coupling, tol)) {
    throw ValidationError("dilate_and_trace: coupling is not passive");
  }
  RealMatrix total = RealMatrix::Zero(sys + bath, sys + bath);
  total.topLeftCorner(sys, sys) = system_cm;
  for (std::size_t j = 0; j < bath_nus.size(); ++j) {
    if (!(bath_nus[j] >= 1.0 - tol)) {
      throw DomainError("dilate_and_trace: bath symplectic eigenvalue < 1");
    }
    const Eigen::Index at = sys + 2 * static_cast<Eigen::Index>(j);
    total(at, at) = bath_nus[j];
    total(at + 1, at + 1) = bath_nus[j];
  }
  const RealMatrix out = coupling * total * coupling.transpose();
  return out.topLeftCorner(sys, sys);
}

// ---------------------------------------------------------------------------
// Multimode GTOs in normal form

/// One frequency sector: Z, then each mode k mixed with its own thermal bath
/// mode at angle thetas[k], then W.
struct GTOSector {
  ComplexUnitary Z;
  std::vector<double> thetas;
  ComplexUnitary W;
};

struct GTOSpec {
  FrequencySpectrum spectrum;
  double beta = 1.0;
  std::vector<GTOSector> sectors;
};

namespace detail {

inline void check_spec(const GTOSpec &spec) {
  const FrequencySpectrum &fs = spec.spectrum;
  detail::require_phase_space_square(fs.S, "GTOSpec.spectrum.S");
  if (!is_symplectic(fs.S, 1e-8 * std::max(1.0, max_abs(fs.S) * max_abs(fs.S)))) {
    throw ValidationError("GTOSpec: spectrum.S is not symplectic");
  }
  if (!(spec.beta > 0.0)) throw DomainError("GTOSpec: beta must be positive");
  if (spec.sectors.size() != fs.sectors.size()) {
    throw ValidationError("GTOSpec: one parameter block per sector required");
  }
  std::vector<int> seen(static_cast<std::size_t>(fs.n_modes()), 0);
  for (std::size_t l = 0; l < fs.sectors.size(); ++l) {
    const FrequencySector &fsec = fs.sectors[l];
    const GTOSector &sec = spec.sectors[l];
    const auto d = static_cast<Eigen::Index>(fsec.mode_indices.size());
    if (d < 1 || fsec.multiplicity != d) {
      throw ValidationError("GTOSpec: sector " + std::to_string(l) +
                            " multiplicity does not match its modes");
    }
    if (!(fsec.omega > 0.0)) {
      throw DomainError("GTOSpec: sector frequencies must be positive");
    }
    if (sec.Z.rows() != d || sec.W.rows() != d ||
        static_cast<Eigen::Index>(sec.thetas.size()) != d) {
      throw ValidationError("GTOSpec: sector " + std::to_string(l) +
                            " blocks do not match its multiplicity");
    }
    if (!is_unitary(sec.Z) || !is_unitary(sec.W)) {
      throw ValidationError("GTOSpec: sector " + std::to_string(l) +
                            " has a non-unitary block");
    }
    for (int idx : fsec.mode_indices) {
      if (idx < 0 || idx >= fs.n_modes() ||
          ++seen[static_cast<std::size_t>(idx)] > 1) {
        throw ValidationError("GTOSpec: sector mode indices must partition "
                              "the modes");
      }
    }
  }
  for (int count : seen) {
    if (count != 1) {
      throw ValidationError("GTOSpec: some mode belongs to no sector");
    }
  }
}

/// Writes a 2d x 2d sector matrix into the rows/cols of `modes`.
inline void embed_sector(RealMatrix &target, const RealMatrix &block,
                         const std::vector<int> &modes) {
  for (std::size_t a = 0; a < modes.size(); ++a) {
    for (std::size_t b = 0; b < modes.size(); ++b) {
      target.block(2 * modes[a], 2 * modes[b], 2, 2) =
          block.block(2 * static_cast<Eigen::Index>(a),
                      2 * static_cast<Eigen::Index>(b), 2, 2);
    }
  }
}

inline RealMatrix mode_diagonal(const std::vector<double> &values) {
  RealMatrix m = RealMatrix::Zero(2 * values.size(), 2 * values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    m(2 * k, 2 * k) = values[k];
    m(2 * k + 1, 2 * k + 1) = values[k];
  }
  return m;
}

}  // namespace detail

/// X = S (+)_l K(W_l) C_l K(Z_l) S^{-1},
/// Y = S (+)_l K(W_l) nu_l sin^2 K(W_l)^T S^T, d = 0,
/// with C_l = (+)_k cos(theta_lk) 1_2 and nu_l = nu_of(beta, omega_l).
inline GaussianChannel gto_to_channel(const GTOSpec &spec) {
  detail::check_spec(spec);
  const int n = spec.spectrum.n_modes();
  RealMatrix x_normal = RealMatrix::Zero(2 * n, 2 * n);
  RealMatrix y_normal = RealMatrix::Zero(2 * n, 2 * n);
  for (std::size_t l = 0; l < spec.sectors.size(); ++l) {
    const GTOSector &sec = spec.sectors[l];
    const double nu = nu_of(spec.beta, spec.spectrum.sectors[l].omega);
    std::vector<double> cosines;
    std::vector<double> noise;
    for (double theta : sec.thetas) {
      cosines.push_back(std::cos(theta));
      noise.push_back(nu * std::sin(theta) * std::sin(theta));
    }
    const RealMatrix kw = unitary_to_passive(sec.W);
    const RealMatrix kz = unitary_to_passive(sec.Z);
    const auto &modes = spec.spectrum.sectors[l].mode_indices;
    detail::embed_sector(x_normal, kw * detail::mode_diagonal(cosines) * kz,
                         modes);
    detail::embed_sector(
        y_normal, kw * detail::mode_diagonal(noise) * kw.transpose(), modes);
  }
  const RealMatrix &s = spec.spectrum.S;
  GaussianChannel ch;
  ch.X = s * x_normal * symplectic_inverse(s);
  ch.Y = s * y_normal * s.transpose();
  ch.Y = 0.5 * (ch.Y + ch.Y.transpose());
  ch.d = RealVector::Zero(2 * n);
  return ch;
}

/// Output CM of the GTO computed the long way: build the full passive
/// coupling of every system mode to its own bath mode, dilate, pinch, and
/// conjugate by S. Independent of gto_to_channel's closed form.
inline RealMatrix gto_dilation_oracle(const GTOSpec &spec,
                                      const RealMatrix &cm) {
  detail::check_spec(spec);
  const int n = spec.spectrum.n_modes();
  if (cm.rows() != 2 * n || cm.cols() != 2 * n) {
    throw ValidationError("gto_dilation_oracle: CM size mismatch");
  }
  // System modes 0..n-1, bath mode n + j couples to system mode j.
  ComplexMatrix coupling = ComplexMatrix::Zero(2 * n, 2 * n);
  std::vector<double> bath_nus(static_cast<std::size_t>(n), 1.0);
  for (std::size_t l = 0; l < spec.sectors.size(); ++l) {
    const GTOSector &sec = spec.sectors[l];
    const auto &modes = spec.spectrum.sectors[l].mode_indices;
    const auto d = static_cast<Eigen::Index>(modes.size());
    CosineSineForm form;
    form.W = sec.W;
    form.Z = sec.Z;
    form.X = ComplexMatrix::Identity(d, d);
    form.Y = ComplexMatrix::Identity(d, d);
    form.thetas = sec.thetas;
    const ComplexMatrix local = form.reconstruct();
    std::vector<Eigen::Index> global;
    for (int m : modes) global.push_back(m);
    for (int m : modes) global.push_back(n + m);
    for (Eigen::Index a = 0; a < 2 * d; ++a) {
      for (Eigen::Index b = 0; b < 2 * d; ++b) {
        coupling(global[static_cast<std::size_t>(a)],
                 global[static_cast<std::size_t>(b)]) = local(a, b);
      }
    }
    const double nu = nu_of(spec.beta, spec.spectrum.sectors[l].omega);
    for (int m : modes) bath_nus[static_cast<std::size_t>(m)] = nu;
  }
  const RealMatrix &s = spec.spectrum.S;
  const RealMatrix s_inv = symplectic_inverse(s);
  const RealMatrix normal = s_inv * cm * s_inv.transpose();
  const RealMatrix out =
      dilate_and_trace(normal, unitary_to_passive(coupling), bath_nus);
  return s * out * s.transpose();
}

// ---------------------------------------------------------------------------
// Single-mode GTOs

/// cm -> S (p D_phi S^{-1} cm S^{-T} D_phi^T + (1 - p) nu_b 1_2) S^T.
struct SingleModeGTO {
  double p = 1.0;
  double phi = 0.0;
  double nu_b = 1.0;
  RealMatrix S = RealMatrix::Identity(2, 2);
};

inline GaussianChannel single_mode_gto(double p, double phi, double nu_b,
                                       const RealMatrix &s) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("single_mode_gto: p must lie in [0, 1]");
  }
  if (!(nu_b >= 1.0 - tolerance::kStructural)) {
    throw DomainError("single_mode_gto: nu_b must be >= 1");
  }
  if (s.rows() != 2 || s.cols() != 2 ||
      !is_symplectic(s, tolerance::kStructural * std::max(1.0, max_abs(s)))) {
    throw ValidationError("single_mode_gto: S must be a 2x2 symplectic");
  }
  GaussianChannel ch;
  ch.X = std::sqrt(p) * s * rotation(phi) * symplectic_inverse(s);
  ch.Y = (1.0 - p) * nu_b * s * s.transpose();
  ch.Y = 0.5 * (ch.Y + ch.Y.transpose());
  ch.d = RealVector::Zero(2);
  return ch;
}

inline GaussianChannel single_mode_gto(const SingleModeGTO &g) {
  return single_mode_gto(g.p, g.phi, g.nu_b, g.S);
}

}  // namespace gtokit
