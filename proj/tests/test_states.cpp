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


#include <cmath>
#include <limits>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "gtokit/errors.hpp"
#include "gtokit/states.hpp"

using namespace gtokit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

HamiltonianSpec diag_hamiltonian(std::initializer_list<double> entries) {
  HamiltonianSpec h;
  h.H = RealMatrix::Zero(static_cast<Eigen::Index>(entries.size()),
                         static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (double e : entries) h.H(k, k) = e, ++k;
  h.center = RealVector::Zero(h.H.rows());
  return h;
}

}  // namespace

TEST_CASE("nu_of frozen values", "[states]") {
  // (e + 1)/(e - 1) and coth(5).
  CHECK_THAT(nu_of(1.0, 1.0), WithinRel(2.163953413738653, 1e-15));
  CHECK_THAT(nu_of(2.0, 5.0), WithinRel(1.0000908039820193, 1e-15));
  CHECK_THAT(nu_of(1.0, std::log(3.0)), WithinAbs(2.0, 1e-14));
  CHECK(nu_of(1.0, 800.0) == 1.0);
  CHECK_THROWS_AS(nu_of(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(nu_of(1.0, -1.0), DomainError);
}

TEST_CASE("nu_of tracks the high-temperature limit", "[states]") {
  // coth(x/2) ~ 2/x + x/6 for small x.
  const double x = 1e-4;
  CHECK_THAT(nu_of(1.0, x), WithinRel(2.0 / x + x / 6.0, 1e-12));
}

TEST_CASE("entropy frozen values", "[states]") {
  CHECK(entropy(1.0) == 0.0);
  CHECK(entropy(1.0 - 1e-12) == 0.0);
  // nu = 3: 2 ln 2 - 1 ln 1.
  CHECK_THAT(entropy(3.0), WithinAbs(2.0 * std::log(2.0), 1e-15));
  // Thermal mode: S = (n+1) ln(n+1) - n ln n with n = (nu - 1)/2.
  const double n = 0.7;
  CHECK_THAT(entropy(2.0 * n + 1.0),
             WithinAbs((n + 1) * std::log(n + 1) - n * std::log(n), 1e-14));
  CHECK_THROWS_AS(entropy(0.9), DomainError);
}

TEST_CASE("entropy is increasing", "[states]") {
  double prev = entropy(1.0);
  for (double nu = 1.01; nu < 50.0; nu *= 1.1) {
    const double s = entropy(nu);
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("validate_state accepts thermal states and rejects unphysical CMs",
          "[states]") {
  CHECK(validate_state(GaussianState::centered(RealMatrix::Identity(2, 2))));
  CHECK(validate_state(GaussianState::centered(3.0 * RealMatrix::Identity(4, 4))));
  CHECK_FALSE(validate_state(GaussianState::centered(0.5 * RealMatrix::Identity(2, 2))));
  RealMatrix asym = 2.0 * RealMatrix::Identity(2, 2);
  asym(0, 1) = 0.3;
  CHECK_FALSE(validate_state(GaussianState::centered(asym)));
  RealMatrix squeezed_vacuum = RealMatrix::Zero(2, 2);
  squeezed_vacuum(0, 0) = 10.0;
  squeezed_vacuum(1, 1) = 0.1;
  CHECK(validate_state(GaussianState::centered(squeezed_vacuum)));
  squeezed_vacuum(1, 1) = 0.09;
  CHECK_FALSE(validate_state(GaussianState::centered(squeezed_vacuum)));

  GaussianState bad;
  bad.n_modes = 2;
  bad.cm = RealMatrix::Identity(2, 2);
  bad.first_moments = RealVector::Zero(2);
  CHECK_THROWS_AS(validate_state(bad), ValidationError);
}

TEST_CASE("normal_mode_spectrum groups degenerate frequencies", "[states]") {
  const FrequencySpectrum fs =
      normal_mode_spectrum(diag_hamiltonian({1.0, 1.0, 2.0, 2.0, 1.0, 1.0}));
  REQUIRE(fs.sectors.size() == 2);
  CHECK_THAT(fs.sectors[0].omega, WithinAbs(2.0, 1e-12));
  CHECK(fs.sectors[0].multiplicity == 1);
  CHECK_THAT(fs.sectors[1].omega, WithinAbs(1.0, 1e-12));
  CHECK(fs.sectors[1].multiplicity == 2);
  CHECK(is_symplectic(fs.S, 1e-12));
}

TEST_CASE("normal_mode_spectrum of a squeezed oscillator", "[states]") {
  // H = diag(4, 1/4): one mode of frequency sqrt(4 * 1/4) = 1.
  const FrequencySpectrum fs = normal_mode_spectrum(diag_hamiltonian({4.0, 0.25}));
  REQUIRE(fs.sectors.size() == 1);
  CHECK_THAT(fs.sectors[0].omega, WithinAbs(1.0, 1e-14));
  CHECK_THROWS_AS(normal_mode_spectrum(diag_hamiltonian({1.0, -1.0})), DomainError);
}

TEST_CASE("thermal_state on a diagonal Hamiltonian", "[states]") {
  const GaussianState g = thermal_state(1.0, diag_hamiltonian({1.0, 1.0, 3.0, 3.0}));
  CHECK(validate_state(g));
  const std::vector<double> nus = symplectic_eigenvalues(g.cm);
  CHECK_THAT(nus[0], WithinAbs(nu_of(1.0, 1.0), 1e-12));
  CHECK_THAT(nus[1], WithinAbs(nu_of(1.0, 3.0), 1e-12));

  const GaussianState ground = thermal_state(std::numeric_limits<double>::infinity(),
                                             diag_hamiltonian({2.0, 2.0}));
  CHECK(max_abs(ground.cm - RealMatrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("thermal_state keeps the Hamiltonian frame", "[states]") {
  // The CM is S nu S^T with S from the normal-mode decomposition of H.
  const GaussianState g = thermal_state(0.5, diag_hamiltonian({4.0, 0.25}));
  CHECK_THAT(g.cm(0, 0), WithinRel(nu_of(0.5, 1.0) * 4.0, 1e-12));
  CHECK_THAT(g.cm(1, 1), WithinRel(nu_of(0.5, 1.0) * 0.25, 1e-12));
}

TEST_CASE("single_mode_decompose inverts reconstruct", "[states]") {
  for (double nu : {1.0, 1.7, 5.0}) {
    for (double z : {1.0, 1.0 + 1e-9, 2.0, 9.0}) {
      for (double phi : {0.0, 0.4, 1.5, 3.0}) {
        const SingleModeNormalForm f{nu, z, phi};
        const SingleModeNormalForm g = single_mode_decompose(f.reconstruct());
        CHECK_THAT(g.nu, WithinRel(nu, 1e-12));
        CHECK_THAT(g.z, WithinRel(z, 1e-9));
        CHECK(max_abs(g.reconstruct() - f.reconstruct()) < 1e-12 * nu * z);
        CHECK(g.phi >= 0.0);
        CHECK(g.phi < std::numbers::pi);
        if (z >= 2.0) CHECK_THAT(g.phi, WithinAbs(phi, 1e-12));
      }
    }
  }
  CHECK(single_mode_decompose(3.0 * RealMatrix::Identity(2, 2)).phi == 0.0);
}

TEST_CASE("free energy frozen value and minimum", "[states]") {
  // Vacuum: F = omega/2.
  CHECK_THAT(free_energy(1.0, 1.0, 2.0, 3.0), WithinAbs(1.5, 1e-15));
  // Squeezing costs energy at fixed entropy.
  CHECK(free_energy(2.0, 3.0, 1.0, 1.0) > free_energy(2.0, 1.0, 1.0, 1.0));
  // dF/dnu = omega/2 - 1/(2 beta) ln((nu+1)/(nu-1)) vanishes at nu_of.
  const double beta = 0.7;
  const double w = 1.3;
  const double nu_b = nu_of(beta, w);
  const double h = 1e-5;
  const double slope = (free_energy(nu_b + h, 1.0, beta, w) -
                        free_energy(nu_b - h, 1.0, beta, w)) / (2 * h);
  CHECK_THAT(slope, WithinAbs(0.0, 1e-8));
}

TEST_CASE("random_covariance produces valid states", "[states]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RealMatrix cm = random_covariance(1 + seed % 4, seed);
    CHECK(validate_state(GaussianState::centered(cm)));
    CHECK(max_abs(cm - random_covariance(1 + seed % 4, seed)) == 0.0);
  }
}

TEST_CASE("entropy stays accurate for huge nu", "[states]") {
  // S -> ln x + 1 + O(1/x) with x = (nu - 1)/2.
  for (double nu : {1e12, 1e20, 1e40}) {
    const double x = 0.5 * (nu - 1.0);
    CHECK_THAT(entropy(nu), WithinRel(std::log(x) + 1.0, 1e-12));
  }
}
