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

// Dense symplectic linear algebra on bosonic phase space.
//
// Phase-space vectors are ordered mode-major, (x_1, p_1, x_2, p_2, ...), so
// the symplectic form is Omega = Omega_1 (+) ... (+) Omega_1 with
// Omega_1 = [[0, 1], [-1, 0]]. Every function in the library assumes this
// ordering.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gtokit/errors.hpp"

namespace gtokit {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
/// Square complex matrix expected to satisfy U U^dagger = 1.
using ComplexUnitary = Eigen::MatrixXcd;

namespace tolerance {
inline constexpr double kStructural = 1e-9;
inline constexpr double kReconstruction = 1e-8;
}  // namespace tolerance

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace detail {

inline void require_phase_space_square(const RealMatrix &m,
                                       const char *what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw ValidationError(std::string(what) +
                          ": expected a non-empty square matrix of even "
                          "dimension, got " +
                          std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
}

inline void require_square(const ComplexMatrix &m, const char *what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(std::string(what) +
                          ": expected a non-empty square matrix, got " +
                          std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
}

inline bool is_symmetric(const RealMatrix &m, double tol) {
  return max_abs(m - m.transpose()) <= tol * std::max(1.0, max_abs(m));
}

}  // namespace detail

/// Symplectic form on `n_modes` modes.
inline RealMatrix omega(int n_modes) {
  if (n_modes < 1) throw ValidationError("omega: n_modes must be >= 1");
  RealMatrix om = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    om(2 * j, 2 * j + 1) = 1.0;
    om(2 * j + 1, 2 * j) = -1.0;
  }
  return om;
}

/// Phase shifter D_phi = [[cos, sin], [-sin, cos]].
inline RealMatrix rotation(double phi) {
  RealMatrix d(2, 2);
  d << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  return d;
}

/// Single-mode squeezer diag(z, 1/z).
inline RealMatrix squeezer(double z) {
  RealMatrix s = RealMatrix::Zero(2, 2);
  s(0, 0) = z;
  s(1, 1) = 1.0 / z;
  return s;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> direct_sum(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> &a,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> &b) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(
          a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

inline bool is_symplectic(const RealMatrix &s,
                          double tol = tolerance::kStructural) {
  detail::require_phase_space_square(s, "is_symplectic");
  const RealMatrix om = omega(static_cast<int>(s.rows() / 2));
  return max_abs(s * om * s.transpose() - om) <= tol;
}

inline bool is_passive(const RealMatrix &s,
                       double tol = tolerance::kStructural) {
  if (!is_symplectic(s, tol)) return false;
  return max_abs(s * s.transpose() -
                 RealMatrix::Identity(s.rows(), s.cols())) <= tol;
}

inline bool is_unitary(const ComplexMatrix &u,
                       double tol = tolerance::kStructural) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  return max_abs(u * u.adjoint() -
                 ComplexMatrix::Identity(u.rows(), u.cols())) <= tol;
}

/// Inverse of a symplectic matrix, -Omega S^T Omega. No factorisation needed.
inline RealMatrix symplectic_inverse(const RealMatrix &s) {
  detail::require_phase_space_square(s, "symplectic_inverse");
  const RealMatrix om = omega(static_cast<int>(s.rows() / 2));
  return -om * s.transpose() * om;
}

/// Real orthogonal symplectic matrix of a mode unitary.
///
/// Entry U_jk = a + ib becomes the 2x2 block [[a, b], [-b, a]] in mode-major
/// ordering, so a single-mode phase e^{i phi} maps to the phase shifter
/// D_phi and real unitaries act identically on x and p. The map is a group
/// homomorphism U(n) -> Sp(2n) cap O(2n) and a bijection onto passive
/// matrices.
inline RealMatrix unitary_to_passive(const ComplexUnitary &u,
                                     double tol = tolerance::kStructural) {
  detail::require_square(u, "unitary_to_passive");
  if (!is_unitary(u, tol)) {
    throw ValidationError("unitary_to_passive: input is not unitary");
  }
  const Eigen::Index n = u.rows();
  RealMatrix k(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const double a = u(j, l).real();
      const double b = u(j, l).imag();
      k(2 * j, 2 * l) = a;
      k(2 * j, 2 * l + 1) = b;
      k(2 * j + 1, 2 * l) = -b;
      k(2 * j + 1, 2 * l + 1) = a;
    }
  }
  return k;
}

/// Inverse of unitary_to_passive.
inline ComplexUnitary passive_to_unitary(const RealMatrix &k,
                                         double tol = tolerance::kStructural) {
  detail::require_phase_space_square(k, "passive_to_unitary");
  if (!is_passive(k, tol)) {
    throw ValidationError("passive_to_unitary: input is not passive");
  }
  const Eigen::Index n = k.rows() / 2;
  ComplexUnitary u(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      u(j, l) = Complex(k(2 * j, 2 * l), k(2 * j, 2 * l + 1));
    }
  }
  return u;
}

// ---------------------------------------------------------------------------
// Williamson normal form

struct WilliamsonForm {
  RealMatrix S;
  /// Symplectic eigenvalues, one per mode, sorted descending.
  std::vector<double> nus;

  RealMatrix normal_form() const {
    RealMatrix d = RealMatrix::Zero(2 * nus.size(), 2 * nus.size());
    for (std::size_t j = 0; j < nus.size(); ++j) {
      d(2 * j, 2 * j) = nus[j];
      d(2 * j + 1, 2 * j + 1) = nus[j];
    }
    return d;
  }
  RealMatrix reconstruct() const {
    return S * normal_form() * S.transpose();
  }
};

namespace detail {

inline Eigen::SelfAdjointEigenSolver<RealMatrix> checked_spd_eigen(
    const RealMatrix &p, double tol, const char *what) {
  require_phase_space_square(p, what);
  if (!p.allFinite()) {
    throw ValidationError(std::string(what) + ": non-finite entries");
  }
  if (!is_symmetric(p, tol)) {
    throw ValidationError(std::string(what) + ": matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(
      0.5 * (p + p.transpose()));
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw ValidationError(std::string(what) +
                          ": matrix is not positive definite");
  }
  return eig;
}

}  // namespace detail

/// Symplectic diagonalisation S (+)_j nu_j 1_2 S^T = P of a symmetric
/// positive-definite P.
///
/// With A = P^{1/2} Omega P^{1/2} (real antisymmetric, eigenvalues
/// +-i nu_j), the Hermitian matrix iA is diagonalised; each eigenvector
/// v = (u + i w)/sqrt(2) with eigenvalue +nu gives an orthonormal real pair
/// (w, u) with w^T A u = nu. Stacking the pairs into Q yields
/// Q^T A Q = (+) nu_j Omega_1 and S = P^{1/2} Q D^{-1/2}. Degenerate nu need
/// no special treatment: the Hermitian solver already returns an orthonormal
/// basis of each eigenspace, and the +nu and -nu eigenspaces are orthogonal.
inline WilliamsonForm williamson(const RealMatrix &p,
                                 double tol = tolerance::kStructural) {
  const auto eig = detail::checked_spd_eigen(p, tol, "williamson");
  const Eigen::Index dim = p.rows();
  const Eigen::Index n = dim / 2;

  const RealVector sqrt_vals = eig.eigenvalues().cwiseSqrt();
  const RealMatrix root =
      eig.eigenvectors() * sqrt_vals.asDiagonal() *
      eig.eigenvectors().transpose();
  const RealMatrix anti = root * omega(static_cast<int>(n)) * root;

  const ComplexMatrix herm = Complex(0.0, 1.0) * anti.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> heig(herm);
  if (heig.info() != Eigen::Success) {
    throw ValidationError("williamson: eigensolver failed");
  }

  WilliamsonForm out;
  out.nus.resize(static_cast<std::size_t>(n));
  RealMatrix q(dim, dim);
  // Eigenvalues come ascending; the last n are the +nu_j.
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index col = dim - 1 - j;
    const double nu = heig.eigenvalues()(col);
    const ComplexMatrix::ConstColXpr v = heig.eigenvectors().col(col);
    q.col(2 * j) = std::sqrt(2.0) * v.imag();
    q.col(2 * j + 1) = std::sqrt(2.0) * v.real();
    out.nus[static_cast<std::size_t>(j)] = nu;
  }

  RealMatrix inv_root_d = RealMatrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double f = 1.0 / std::sqrt(out.nus[static_cast<std::size_t>(j)]);
    inv_root_d(2 * j, 2 * j) = f;
    inv_root_d(2 * j + 1, 2 * j + 1) = f;
  }
  out.S = root * q * inv_root_d;
  return out;
}

/// Symplectic eigenvalues of a symmetric positive-definite matrix, sorted
/// descending.
inline std::vector<double> symplectic_eigenvalues(
    const RealMatrix &p, double tol = tolerance::kStructural) {
  const auto eig = detail::checked_spd_eigen(p, tol, "symplectic_eigenvalues");
  const Eigen::Index dim = p.rows();
  const Eigen::Index n = dim / 2;
  const RealVector sqrt_vals = eig.eigenvalues().cwiseSqrt();
  const RealMatrix root = eig.eigenvectors() * sqrt_vals.asDiagonal() *
                          eig.eigenvectors().transpose();
  const RealMatrix anti = root * omega(static_cast<int>(n)) * root;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> heig(
      Complex(0.0, 1.0) * anti.cast<Complex>(), Eigen::EigenvaluesOnly);
  std::vector<double> nus(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    nus[static_cast<std::size_t>(j)] = heig.eigenvalues()(dim - 1 - j);
  }
  return nus;
}

// ---------------------------------------------------------------------------
// Unitary factorisations used to reduce an arbitrary system+bath coupling.

struct TriangularizedUnitary {
  ComplexUnitary U_m;
  ComplexUnitary V_m;
  ComplexUnitary U_reduced;
};

/// Finds bath unitaries U_m, V_m with (1_n (+) U_m) U (1_n (+) V_m) =
/// [[alpha, beta], [gamma^T, delta]] where the n x m blocks beta and gamma
/// are lower triangular in their leading n x n part and vanish beyond it.
/// Both sides are a QR factorisation of one off-diagonal block.
inline TriangularizedUnitary triangularize_offdiagonal(
    const ComplexUnitary &u, int n, int m,
    double tol = tolerance::kStructural) {
  if (n < 1 || m < n) {
    throw ValidationError(
        "triangularize_offdiagonal: requires 1 <= n <= m, got n=" +
        std::to_string(n) + ", m=" + std::to_string(m));
  }
  if (u.rows() != n + m || u.cols() != n + m) {
    throw ValidationError("triangularize_offdiagonal: U must be (n+m)x(n+m)");
  }
  if (!is_unitary(u, tol)) {
    throw ValidationError("triangularize_offdiagonal: U is not unitary");
  }

  const ComplexMatrix lower_left = u.bottomLeftCorner(m, n);
  const ComplexMatrix upper_right = u.topRightCorner(n, m);

  Eigen::HouseholderQR<ComplexMatrix> left_qr(lower_left);
  Eigen::HouseholderQR<ComplexMatrix> right_qr(upper_right.adjoint());

  TriangularizedUnitary out;
  out.U_m = ComplexMatrix(left_qr.householderQ()).adjoint();
  out.V_m = ComplexMatrix(right_qr.householderQ());
  const ComplexMatrix left = direct_sum<Complex>(
      ComplexMatrix::Identity(n, n), out.U_m);
  const ComplexMatrix right = direct_sum<Complex>(
      ComplexMatrix::Identity(n, n), out.V_m);
  out.U_reduced = left * u * right;
  return out;
}

/// U = (W (+) X) R (Z (+) Y) with R = [[C, S], [-S, C]], C = diag(cos theta),
/// S = diag(sin theta). W, Z act on the first n ("system") modes, X, Y on
/// the last n ("bath") modes, and R mixes mode j with mode n + j.
struct CosineSineForm {
  ComplexUnitary W;
  ComplexUnitary X;
  ComplexUnitary Z;
  ComplexUnitary Y;
  std::vector<double> thetas;

  ComplexMatrix mixer() const {
    const Eigen::Index n = static_cast<Eigen::Index>(thetas.size());
    ComplexMatrix r = ComplexMatrix::Zero(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double c = std::cos(thetas[static_cast<std::size_t>(j)]);
      const double s = std::sin(thetas[static_cast<std::size_t>(j)]);
      r(j, j) = c;
      r(j, n + j) = s;
      r(n + j, j) = -s;
      r(n + j, n + j) = c;
    }
    return r;
  }
  ComplexMatrix reconstruct() const {
    return direct_sum<Complex>(W, X) * mixer() * direct_sum<Complex>(Z, Y);
  }
};

/// Cosine-sine decomposition of a 2n x 2n unitary.
///
/// Gauge produced: the cosines come out ascending (so thetas descending,
/// all in [0, pi/2]); W and Z are the left/right singular vectors of the
/// upper-left block; X is fixed by requiring real non-negative sines. Z
/// therefore carries whatever phase convention the SVD picks and is not
/// canonicalised further.
inline CosineSineForm cosine_sine_decompose(
    const ComplexUnitary &u, double tol = tolerance::kStructural) {
  detail::require_square(u, "cosine_sine_decompose");
  if (u.rows() % 2 != 0) {
    throw ValidationError("cosine_sine_decompose: odd dimension");
  }
  if (!is_unitary(u, tol)) {
    throw ValidationError("cosine_sine_decompose: input is not unitary");
  }
  const Eigen::Index n = u.rows() / 2;
  const ComplexMatrix u00 = u.topLeftCorner(n, n);
  const ComplexMatrix u01 = u.topRightCorner(n, n);
  const ComplexMatrix u10 = u.bottomLeftCorner(n, n);
  const ComplexMatrix u11 = u.bottomRightCorner(n, n);

  Eigen::JacobiSVD<ComplexMatrix, Eigen::NoQRPreconditioner> svd(
      u00, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CosineSineForm out;
  out.W = svd.matrixU().rowwise().reverse();
  const ComplexMatrix z_adj = svd.matrixV().rowwise().reverse();
  out.Z = z_adj.adjoint();
  const RealVector cosines = svd.singularValues().reverse();

  // -U10 Z^dagger = X S. With ascending cosines the column norms of the left
  // side are descending, so its QR factor is diagonal.
  Eigen::HouseholderQR<ComplexMatrix> qr(-u10 * z_adj);
  ComplexMatrix x = qr.householderQ();
  const ComplexMatrix rfac = qr.matrixQR().triangularView<Eigen::Upper>();
  RealVector sines(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = rfac(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) x.col(j) *= d / mag;
    sines(j) = std::min(1.0, mag);
  }
  out.X = x;

  out.thetas.resize(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    out.thetas[static_cast<std::size_t>(j)] =
        std::atan2(sines(j), std::min(1.0, cosines(j)));
  }

  // U01 = W S Y and U11 = X C Y; divide by whichever factor is larger.
  const ComplexMatrix from_sine = out.W.adjoint() * u01;
  const ComplexMatrix from_cosine = out.X.adjoint() * u11;
  out.Y.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (sines(j) > cosines(j)) {
      out.Y.row(j) = from_sine.row(j) / sines(j);
    } else {
      out.Y.row(j) = from_cosine.row(j) / cosines(j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isotropy group of (+)_l omega_l 1_{2 d_l}

/// Direct sum of the passive matrices of `blocks`, one per frequency sector.
/// The result preserves any Y = (+)_l omega_l 1_{2 d_l} by congruence.
inline RealMatrix build_isotropy_element(
    const std::vector<int> &multiplicities,
    const std::vector<ComplexUnitary> &blocks,
    double tol = tolerance::kStructural) {
  if (multiplicities.size() != blocks.size() || blocks.empty()) {
    throw ValidationError(
        "build_isotropy_element: need one block per sector");
  }
  int total = 0;
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    if (multiplicities[l] < 1 || blocks[l].rows() != multiplicities[l] ||
        blocks[l].cols() != multiplicities[l]) {
      throw ValidationError("build_isotropy_element: block " +
                            std::to_string(l) +
                            " does not match its multiplicity");
    }
    total += multiplicities[l];
  }
  RealMatrix k = RealMatrix::Zero(2 * total, 2 * total);
  Eigen::Index offset = 0;
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    const Eigen::Index d = 2 * multiplicities[l];
    k.block(offset, offset, d, d) = unitary_to_passive(blocks[l], tol);
    offset += d;
  }
  return k;
}

// ---------------------------------------------------------------------------
// Seeded random generators

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal folded back into Q.
inline ComplexUnitary random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw ValidationError("random_unitary: dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

/// passive * (+)_j diag(e^{r_j}, e^{-r_j}) * passive with r_j uniform in
/// [-1, 1].
inline RealMatrix random_symplectic(int n_modes, std::uint64_t seed) {
  if (n_modes < 1) {
    throw ValidationError("random_symplectic: n_modes must be >= 1");
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t left_seed = rng();
  const std::uint64_t right_seed = rng();
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  RealMatrix squeeze = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    const double r = uni(rng);
    squeeze(2 * j, 2 * j) = std::exp(r);
    squeeze(2 * j + 1, 2 * j + 1) = std::exp(-r);
  }
  return unitary_to_passive(random_unitary(n_modes, left_seed)) * squeeze *
         unitary_to_passive(random_unitary(n_modes, right_seed));
}

}  // namespace gtokit
