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

// Gaussian states, thermal states of quadratic Hamiltonians and single-mode
// thermodynamic quantities. Units: hbar = k_B = 1, vacuum CM = 1_2.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gtokit/errors.hpp"
#include "gtokit/symplectic.hpp"

namespace gtokit {

struct GaussianState {
  int n_modes = 0;
  RealVector first_moments;
  RealMatrix cm;

  static GaussianState centered(const RealMatrix &cm) {
    GaussianState s;
    s.n_modes = static_cast<int>(cm.rows() / 2);
    s.first_moments = RealVector::Zero(cm.rows());
    s.cm = cm;
    return s;
  }
};

inline void check_dimensions(const GaussianState &state) {
  if (state.n_modes < 1 || state.cm.rows() != 2 * state.n_modes ||
      state.cm.cols() != 2 * state.n_modes ||
      state.first_moments.size() != 2 * state.n_modes) {
    throw ValidationError("GaussianState: inconsistent dimensions for " +
                          std::to_string(state.n_modes) + " mode(s)");
  }
}

/// True iff the covariance matrix is symmetric and every symplectic
/// eigenvalue is at least 1 - tol (equivalently cm + i Omega >= 0).
inline bool validate_state(const GaussianState &state,
                           double tol = tolerance::kStructural) {
  check_dimensions(state);
  if (!state.cm.allFinite() || !state.first_moments.allFinite()) return false;
  if (!detail::is_symmetric(state.cm, tol)) return false;
  const RealMatrix sym = 0.5 * (state.cm + state.cm.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 0.0) return false;
  return symplectic_eigenvalues(sym, tol).back() >= 1.0 - tol;
}

/// Symplectic eigenvalue of a thermal mode, (e^x + 1)/(e^x - 1) with
/// x = beta * omega.
inline double nu_of(double beta, double omega) {
  if (!(beta > 0.0) || !(omega > 0.0)) {
    throw DomainError("nu_of: beta and omega must be positive");
  }
  const double x = beta * omega;
  return 1.0 / std::tanh(0.5 * x);
}

/// H(r) = 1/2 (r - center)^T H (r - center), with H strictly positive.
struct HamiltonianSpec {
  RealMatrix H;
  RealVector center;
};

struct FrequencySector {
  double omega = 0.0;
  int multiplicity = 0;
  std::vector<int> mode_indices;
};

/// S^{-1} H S^{-T} = (+)_l omega_l 1_{2 n_l}, sectors in the mode order of S.
struct FrequencySpectrum {
  RealMatrix S;
  std::vector<FrequencySector> sectors;

  int n_modes() const { return static_cast<int>(S.rows() / 2); }
};

namespace detail {

inline void require_positive_hamiltonian(const HamiltonianSpec &ham) {
  require_phase_space_square(ham.H, "HamiltonianSpec");
  if (ham.center.size() != ham.H.rows()) {
    throw ValidationError("HamiltonianSpec: center has wrong length");
  }
  if (!is_symmetric(ham.H, tolerance::kStructural)) {
    throw ValidationError("HamiltonianSpec: H is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(
      0.5 * (ham.H + ham.H.transpose()), Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw DomainError("HamiltonianSpec: H is not strictly positive");
  }
}

}  // namespace detail

/// Normal modes of H grouped into sectors of equal frequency (relative
/// tolerance `freq_tol`).
inline FrequencySpectrum normal_mode_spectrum(const HamiltonianSpec &ham,
                                              double freq_tol = 1e-9) {
  detail::require_positive_hamiltonian(ham);
  const WilliamsonForm wf = williamson(ham.H);
  FrequencySpectrum spec;
  spec.S = wf.S;
  for (std::size_t j = 0; j < wf.nus.size(); ++j) {
    const double w = wf.nus[j];
    if (spec.sectors.empty() ||
        std::abs(spec.sectors.back().omega - w) >
            freq_tol * spec.sectors.back().omega) {
      spec.sectors.push_back({w, 0, {}});
    }
    FrequencySector &sector = spec.sectors.back();
    sector.mode_indices.push_back(static_cast<int>(j));
    ++sector.multiplicity;
  }
  // Report the mean of each cluster rather than its first member.
  for (FrequencySector &sector : spec.sectors) {
    double sum = 0.0;
    for (int idx : sector.mode_indices) sum += wf.nus[static_cast<std::size_t>(idx)];
    sector.omega = sum / sector.multiplicity;
  }
  return spec;
}

/// Gibbs state of `ham` at inverse temperature beta: the normal-mode frame
/// S of H carries (+)_l nu_of(beta, omega_l) 1_{2 n_l}. beta may be +inf
/// (ground state).
inline GaussianState thermal_state(double beta, const HamiltonianSpec &ham) {
  if (!(beta > 0.0)) throw DomainError("thermal_state: beta must be positive");
  const FrequencySpectrum spec = normal_mode_spectrum(ham);
  const int n = spec.n_modes();
  RealMatrix diag = RealMatrix::Zero(2 * n, 2 * n);
  for (const FrequencySector &sector : spec.sectors) {
    const double nu = nu_of(beta, sector.omega);
    for (int idx : sector.mode_indices) {
      diag(2 * idx, 2 * idx) = nu;
      diag(2 * idx + 1, 2 * idx + 1) = nu;
    }
  }
  GaussianState out;
  out.n_modes = n;
  out.cm = spec.S * diag * spec.S.transpose();
  out.cm = 0.5 * (out.cm + out.cm.transpose());
  out.first_moments = ham.center;
  return out;
}

/// cm = nu D_phi diag(z, 1/z) D_phi^T.
struct SingleModeNormalForm {
  double nu = 1.0;
  double z = 1.0;
  double phi = 0.0;

  RealMatrix reconstruct() const {
    const RealMatrix d = rotation(phi);
    return nu * d * squeezer(z) * d.transpose();
  }
};

/// Inverse of SingleModeNormalForm::reconstruct with phi in [0, pi) and
/// phi = 0 whenever z = 1.
inline SingleModeNormalForm single_mode_decompose(
    const RealMatrix &cm, double tol = tolerance::kStructural) {
  if (cm.rows() != 2 || cm.cols() != 2) {
    throw ValidationError("single_mode_decompose: expected a 2x2 matrix");
  }
  if (!validate_state(GaussianState::centered(cm), tol)) {
    throw ValidationError("single_mode_decompose: not a valid covariance "
                          "matrix");
  }
  const double a = cm(0, 0);
  const double c = cm(1, 1);
  const double b = 0.5 * (cm(0, 1) + cm(1, 0));
  const double mean = 0.5 * (a + c);
  const double radius = std::hypot(0.5 * (a - c), b);
  const double nu = std::sqrt(std::max(a * c - b * b, 0.0));

  SingleModeNormalForm out;
  out.nu = nu;
  out.z = std::max(1.0, (mean + radius) / nu);
  if (out.z - 1.0 < 1e-12) {
    out.phi = 0.0;
    return out;
  }
  // Major axis (cos alpha, sin alpha) equals D_phi e_1 = (cos phi, -sin phi).
  const double alpha = 0.5 * std::atan2(2.0 * b, a - c);
  double phi = std::fmod(-alpha, std::numbers::pi);
  if (phi < 0.0) phi += std::numbers::pi;
  if (phi >= std::numbers::pi) phi -= std::numbers::pi;
  out.phi = phi;
  return out;
}

/// von Neumann entropy (nats) of a mode with symplectic eigenvalue nu.
/// Values within the structural tolerance below 1 are treated as 1.
inline double entropy(double nu) {
  if (!(nu >= 1.0 - tolerance::kStructural)) {
    throw DomainError("entropy: symplectic eigenvalue below 1");
  }
  // (x + 1) ln(x + 1) - x ln x with x = (nu - 1)/2, rearranged so large nu
  // does not cancel.
  const double x = 0.5 * (std::max(nu, 1.0) - 1.0);
  if (x == 0.0) return 0.0;
  return std::log1p(x) + x * std::log1p(1.0 / x);
}

/// Free energy of a single mode at frequency omega against inverse
/// temperature beta: 1/4 omega nu (z + 1/z) - entropy(nu)/beta.
inline double free_energy(double nu, double z, double beta, double omega) {
  if (!(z >= 1.0 - tolerance::kStructural)) {
    throw DomainError("free_energy: squeezing parameter below 1");
  }
  if (!(beta > 0.0) || !(omega > 0.0)) {
    throw DomainError("free_energy: beta and omega must be positive");
  }
  const double s = entropy(nu);
  return 0.25 * omega * nu * (z + 1.0 / z) - s / beta;
}

/// S (+)_j nu_j 1_2 S^T with S = random_symplectic and nu_j uniform in
/// [1, nu_max]. Used by the property sweeps.
inline RealMatrix random_covariance(int n_modes, std::uint64_t seed,
                                    double nu_max = 5.0) {
  std::mt19937_64 rng(seed);
  const RealMatrix s = random_symplectic(n_modes, rng());
  std::uniform_real_distribution<double> uni(1.0, nu_max);
  RealMatrix d = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    const double nu = uni(rng);
    d(2 * j, 2 * j) = nu;
    d(2 * j + 1, 2 * j + 1) = nu;
  }
  RealMatrix cm = s * d * s.transpose();
  return 0.5 * (cm + cm.transpose());
}

}  // namespace gtokit
