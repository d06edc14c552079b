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
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "gtokit/channels.hpp"
#include "gtokit/errors.hpp"
#include "gtokit/feasibility.hpp"
#include "gtokit/states.hpp"

using namespace gtokit;
using Catch::Matchers::WithinAbs;

namespace {

TransformQuery query(double nu_i, double z_i, double nu_f, double z_f, double nu_b) {
  return {nu_i, z_i, nu_f, z_f, nu_b, std::nullopt};
}

}  // namespace

TEST_CASE("worked example is feasible at p = 1/2", "[feasibility]") {
  const FeasibilityResult r = single_mode_feasible(query(2.0, 4.0, 2.5, 2.0, 2.0));
  REQUIRE(r.feasible);
  CHECK(r.reason == FeasibilityReason::kOk);
  CHECK_THAT(*r.p, WithinAbs(0.5, 1e-15));
  const auto [x, y] = segment_point(2.0, 4.0, 2.0, 0.5);
  CHECK(x == 5.0);
  CHECK(y == 1.25);
}

TEST_CASE("identity and full thermalisation", "[feasibility]") {
  FeasibilityResult r = single_mode_feasible(query(3.0, 1.0, 3.0, 1.0, 5.0));
  REQUIRE(r.feasible);
  CHECK(*r.p == 1.0);
  r = single_mode_feasible(query(3.0, 2.5, 5.0, 1.0, 5.0));
  REQUIRE(r.feasible);
  CHECK_THAT(*r.p, WithinAbs(0.0, 1e-15));
}

TEST_CASE("targets below both thermal values are out of range", "[feasibility]") {
  const FeasibilityResult r = single_mode_feasible(query(3.0, 1.0, 1.5, 1.0, 2.0));
  CHECK_FALSE(r.feasible);
  CHECK_FALSE(r.p.has_value());
  CHECK(r.reason == FeasibilityReason::kPOutOfRange);
}

TEST_CASE("squeezing cannot grow under a thermal bath", "[feasibility]") {
  const FeasibilityResult r = single_mode_feasible(query(2.0, 2.0, 2.0, 3.0, 2.0));
  CHECK_FALSE(r.feasible);
  CHECK(r.reason == FeasibilityReason::kInconsistentSystem);
}

TEST_CASE("input on the bath point only reaches itself", "[feasibility]") {
  CHECK(single_mode_feasible(query(2.0, 1.0, 2.0, 1.0, 2.0)).feasible);
  const FeasibilityResult r = single_mode_feasible(query(2.0, 1.0, 2.5, 1.0, 2.0));
  CHECK_FALSE(r.feasible);
  CHECK(r.reason == FeasibilityReason::kInconsistentSystem);
}

TEST_CASE("input on the bath value in one coordinate", "[feasibility]") {
  // nu_i / z_i = nu_b: the second equation has a zero denominator.
  const double nu_b = 2.0;
  const double nu_i = 4.0;
  const double z_i = 2.0;
  const auto [x, y] = segment_point(nu_i, z_i, nu_b, 0.3);
  CHECK(y == nu_b);
  const FeasibilityResult r =
      single_mode_feasible(query(nu_i, z_i, std::sqrt(x * y), std::sqrt(x / y), nu_b));
  REQUIRE(r.feasible);
  CHECK_THAT(*r.p, WithinAbs(0.3, 1e-14));
}

TEST_CASE("reachable set endpoints and membership", "[feasibility]") {
  const auto pts = reachable_set(2.0, 4.0, 2.0, 11);
  REQUIRE(pts.size() == 11);
  CHECK_THAT(pts.front().first, WithinAbs(2.0, 1e-15));
  CHECK_THAT(pts.front().second, WithinAbs(4.0, 1e-15));
  CHECK_THAT(pts.back().first, WithinAbs(2.0, 1e-15));
  CHECK_THAT(pts.back().second, WithinAbs(1.0, 1e-15));
  CHECK_THAT(pts[5].first, WithinAbs(2.5, 1e-15));
  CHECK_THAT(pts[5].second, WithinAbs(2.0, 1e-15));
  for (const auto &[nu, z] : pts) {
    CHECK(single_mode_feasible(query(2.0, 4.0, nu, z, 2.0)).feasible);
  }
  CHECK_THROWS_AS(reachable_set(2.0, 4.0, 2.0, 1), ValidationError);
}

TEST_CASE("constructive soundness through the single-mode channel", "[feasibility]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const double nu_i = 1.0 + 6.0 * u(rng);
    const double z_i = 1.0 + 5.0 * u(rng);
    const double nu_b = 1.0 + 6.0 * u(rng);
    const double p = u(rng);
    const auto [x, y] = segment_point(nu_i, z_i, nu_b, p);
    const FeasibilityResult r =
        single_mode_feasible(query(nu_i, z_i, std::sqrt(x * y), std::sqrt(x / y), nu_b));
    REQUIRE(r.feasible);
    const GaussianState out = apply_channel(
        single_mode_gto(*r.p, 0.0, nu_b, RealMatrix::Identity(2, 2)),
        GaussianState::centered(SingleModeNormalForm{nu_i, z_i, 0.0}.reconstruct()));
    const SingleModeNormalForm f = single_mode_decompose(out.cm);
    CHECK_THAT(f.nu, WithinAbs(std::sqrt(x * y), 1e-8));
    CHECK_THAT(f.z, WithinAbs(std::sqrt(x / y), 1e-8));
  }
}

TEST_CASE("necessary bounds hold on feasible queries", "[feasibility]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double nu_i = 1.0 + 9.0 * u(rng);
    const double z_i = 1.0 + 9.0 * u(rng);
    const double nu_b = 1.0 + 9.0 * u(rng);
    const auto [x, y] = segment_point(nu_i, z_i, nu_b, u(rng));
    const TransformQuery q = query(nu_i, z_i, std::sqrt(x * y), std::sqrt(x / y), nu_b);
    REQUIRE(single_mode_feasible(q).feasible);
    for (const BoundCheck &b : necessary_bounds(q)) CHECK(b.satisfied);
  }
  const auto bounds = necessary_bounds(query(3.0, 1.0, 0.9 * 2.0, 1.0, 2.0));
  REQUIRE(bounds.size() == 2);
  CHECK(bounds[0].name == "squeezing-nonincreasing");
  CHECK(bounds[0].satisfied);
  CHECK(bounds[1].name == "nu-above-min");
  CHECK_FALSE(bounds[1].satisfied);
}

TEST_CASE("invalid queries are rejected", "[feasibility]") {
  CHECK_THROWS_AS(single_mode_feasible(query(0.5, 1.0, 1.0, 1.0, 1.0)), ValidationError);
  CHECK_THROWS_AS(single_mode_feasible(query(1.0, 0.5, 1.0, 1.0, 1.0)), ValidationError);
  CHECK_THROWS_AS(single_mode_feasible(query(NAN, 1.0, 1.0, 1.0, 1.0)), ValidationError);
  TransformQuery q = query(2.0, 1.0, 2.0, 1.0, 2.0);
  q.vartheta = 0.1;
  CHECK_THROWS_AS(single_mode_feasible(q), ValidationError);
  CHECK_THROWS_AS(squeezed_bath_feasible(query(2.0, 1.0, 2.0, 1.0, 2.0)), ValidationError);
}

TEST_CASE("squeezed bath at vartheta = 0 reproduces the worked example", "[feasibility][squeezed]") {
  TransformQuery q = query(2.0, 4.0, 2.5, 2.0, 2.0);
  q.vartheta = 0.0;
  const FeasibilityResult r = squeezed_bath_feasible(q);
  REQUIRE(r.feasible);
  CHECK_THAT(*r.p, WithinAbs(0.5, 1e-14));
  CHECK(feasible(q).feasible);
}

TEST_CASE("squeezed bath on the thermal point", "[feasibility][squeezed]") {
  for (double vt : {0.0, 0.7, 2.0}) {
    TransformQuery q = query(2.0, 1.0, 2.0, 1.0, 2.0);
    q.vartheta = vt;
    const FeasibilityResult r = squeezed_bath_feasible(q);
    REQUIRE(r.feasible);
    CHECK(*r.p == 1.0);
  }
}

TEST_CASE("squeezed bath forward simulation is judged feasible", "[feasibility][squeezed]") {
  // Independent oracle: mix a rotated input with an explicitly squeezed pure
  // bath, then express the input angle in the output's principal frame.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    const double nu_i = 1.0 + 4.0 * u(rng);
    const double z_i = 1.0 + 3.0 * u(rng);
    const double nu_b = 1.0 + 4.0 * u(rng);
    const double z_b = 1.0 + 3.0 * u(rng);
    const double phi_b = std::numbers::pi * u(rng);
    const double angle = std::numbers::pi * u(rng);
    const double p = u(rng);
    const RealMatrix sigma_i = SingleModeNormalForm{nu_i, z_i, angle}.reconstruct();
    const RealMatrix sigma_b = SingleModeNormalForm{nu_b, z_b, phi_b}.reconstruct();
    const RealMatrix sigma_f = p * sigma_i + (1.0 - p) * sigma_b;
    const SingleModeNormalForm out = single_mode_decompose(sigma_f);
    if (out.z - 1.0 < 1e-6) continue;
    TransformQuery q = query(nu_i, z_i, out.nu, out.z, nu_b);
    q.vartheta = angle - out.phi;

    const double c2 = std::pow(std::cos(*q.vartheta), 2);
    const double s2 = std::pow(std::sin(*q.vartheta), 2);
    const double xi = 0.5 * (c2 * (z_i / out.z + out.z / z_i) +
                             s2 * (z_i * out.z + 1.0 / (z_i * out.z)));
    const double residual = out.nu * out.nu + p * p * nu_i * nu_i -
                            2.0 * p * xi * nu_i * out.nu -
                            (1.0 - p) * (1.0 - p) * nu_b * nu_b;
    CHECK(std::abs(residual) < 1e-9 * (1.0 + nu_i * out.nu * xi));

    const FeasibilityResult r = squeezed_bath_feasible(q);
    CHECK(r.feasible);
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("squeezed bath never lowers nu below the floor", "[feasibility][squeezed]") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double nu_i = 1.5 + 5.0 * u(rng);
    const double nu_b = 1.5 + 5.0 * u(rng);
    TransformQuery q = query(nu_i, 1.0 + 4.0 * u(rng),
                             1.0 + 0.95 * u(rng) * (std::min(nu_i, nu_b) - 1.0),
                             1.0 + 4.0 * u(rng), nu_b);
    q.vartheta = std::numbers::pi * u(rng);
    CHECK_FALSE(squeezed_bath_feasible(q).feasible);
  }
}

TEST_CASE("reason strings", "[feasibility]") {
  CHECK(std::string(to_string(FeasibilityReason::kOk)) == "ok");
  CHECK(std::string(to_string(FeasibilityReason::kPOutOfRange)) == "p-out-of-range");
  CHECK(std::string(to_string(FeasibilityReason::kInconsistentSystem)) ==
        "inconsistent-system");
  CHECK(std::string(to_string(FeasibilityReason::kPositivityViolated)) ==
        "positivity-violated");
}
