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


#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "cli.hpp"
#include "gtokit/io.hpp"

using namespace gtokit;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string &stdin_text = "") {
  args.insert(args.begin(), "gtokit");
  std::vector<const char *> argv;
  for (const std::string &a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string &name) {
  return std::string(GTOKIT_SAMPLES_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("matrices round-trip exactly through JSON", "[io]") {
  const RealMatrix m = random_covariance(3, 17);
  const RealMatrix back = io::matrix_from_json(Json::parse(io::to_json(m).dump()));
  CHECK(max_abs(m - back) == 0.0);
  const ComplexMatrix u = random_unitary(3, 4);
  const ComplexMatrix ub = io::complex_matrix_from_json(Json::parse(io::complex_to_json(u).dump()));
  CHECK(max_abs(u - ub) == 0.0);
}

TEST_CASE("malformed matrices are rejected", "[io]") {
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse("[[1, 2], [3]]")), ValidationError);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse("[[1, \"a\"], [3, 4]]")), ValidationError);
  CHECK_THROWS_AS(io::complex_matrix_from_json(Json::parse("[[[1, 2, 3]]]")), ValidationError);
}

TEST_CASE("states, specs and queries round-trip", "[io]") {
  GaussianState s = GaussianState::centered(random_covariance(2, 1));
  s.first_moments(1) = 0.25;
  const GaussianState sb = io::state_from_json(Json::parse(io::to_json(s).dump()));
  CHECK(max_abs(sb.cm - s.cm) == 0.0);
  CHECK(sb.first_moments(1) == 0.25);

  std::ifstream f(sample("two_mode_gto.json"));
  const Json j = Json::parse(f);
  const GTOSpec spec = io::gto_spec_from_json(j.at("spec"));
  const GTOSpec again = io::gto_spec_from_json(Json::parse(io::to_json(spec).dump()));
  CHECK(max_abs(gto_to_channel(spec).X - gto_to_channel(again).X) == 0.0);

  TransformQuery q{2.0, 4.0, 2.5, 2.0, 2.0, 0.3};
  const TransformQuery qb = io::query_from_json(Json::parse(io::to_json(q).dump()));
  CHECK(*qb.vartheta == 0.3);
  CHECK(qb.z_i == 4.0);
}

TEST_CASE("feasibility result JSON", "[io]") {
  const Json ok = io::to_json(FeasibilityResult::ok(0.5));
  CHECK(ok.at("feasible") == true);
  CHECK(ok.at("p") == 0.5);
  CHECK(ok.at("reason") == "ok");
  const Json bad = io::to_json(FeasibilityResult::fail(FeasibilityReason::kPOutOfRange));
  CHECK(bad.at("p").is_null());
  CHECK(bad.at("reason") == "p-out-of-range");
}

TEST_CASE("CSV exports", "[io]") {
  std::ostringstream os;
  io::write_csv(os, run_protocol(GaussianState::centered(5.0 * RealMatrix::Identity(2, 2)), {}, 2.0));
  CHECK_THAT(os.str(), ContainsSubstring("step,nu,entropy,bound\n0,5,"));
  std::ostringstream curve;
  const GeometricDist g = geometric_probs(1.0, 1.0, 40);
  io::write_csv(curve, thermo_curve(g, g));
  CHECK(curve.str().rfind("x,y\n0,0\n", 0) == 0);
}

TEST_CASE("cli feasible: worked example, identity, below floor", "[cli]") {
  Run r = run({"feasible", "--input", sample("worked_example_query.json")});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK_THAT(j.at("p").get<double>(), WithinAbs(0.5, 1e-12));

  r = run({"feasible"}, R"({"nu_i": 3, "z_i": 1, "nu_f": 3, "z_f": 1, "nu_b": 5})");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out).at("p") == 1.0);

  r = run({"feasible", "--input", sample("below_floor_query.json")});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out).at("reason") == "p-out-of-range");

  r = run({"feasible", "--input", sample("squeezed_bath_query.json")});
  CHECK((r.code == 0 || r.code == 1));
  CHECK(Json::parse(r.out).contains("necessary_bounds"));
}

TEST_CASE("cli input errors exit with 2", "[cli]") {
  Run r = run({"feasible"}, "{not json");
  CHECK(r.code == 2);
  CHECK_THAT(r.err, ContainsSubstring("malformed JSON"));
  r = run({"feasible"}, R"({"nu_i": 3})");
  CHECK(r.code == 2);
  r = run({"feasible"}, R"({"nu_i": 0.2, "z_i": 1, "nu_f": 3, "z_f": 1, "nu_b": 5})");
  CHECK(r.code == 2);
  r = run({"feasible", "--input", "/nonexistent/file.json"});
  CHECK(r.code == 2);
  r = run({"frobnicate"});
  CHECK(r.code == 2);
  r = run({"decompose", "--kind", "qr"}, "{}");
  CHECK(r.code == 2);
}

TEST_CASE("cli apply: single-mode GTO reproduces the worked example", "[cli]") {
  const Run r = run({"apply", "--input", sample("single_mode_gto.json")});
  REQUIRE(r.code == 0);
  const GaussianState s = io::state_from_json(Json::parse(r.out));
  RealMatrix target = RealMatrix::Zero(2, 2);
  target(0, 0) = 5.0;
  target(1, 1) = 1.25;
  CHECK(max_abs(s.cm - target) < 1e-12);
}

TEST_CASE("cli apply output re-validates", "[cli]") {
  const Run r = run({"apply", "--input", sample("two_mode_gto.json")});
  REQUIRE(r.code == 0);
  const Run v = run({"validate"}, r.out);
  CHECK(v.code == 0);
  CHECK(Json::parse(v.out).at("valid") == true);
}

TEST_CASE("cli apply with the dilation oracle", "[cli]") {
  for (const char *name : {"two_mode_gto.json", "degenerate_gto.json"}) {
    const Run r = run({"apply", "--oracle", "--input", sample(name)});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).at("oracle_max_deviation").get<double>() <= 1e-8);
  }
  const Run bad = run({"apply", "--oracle", "--input", sample("single_mode_gto.json")});
  CHECK(bad.code == 2);
}

TEST_CASE("cli apply identity spec echoes the state", "[cli]") {
  const std::string input = R"({
    "spec": {"spectrum": {"S": [[1,0],[0,1]], "sectors": [{"omega": 1, "mode_indices": [0]}]},
             "beta": 1, "sectors": [{"Z": [[1]], "thetas": [0], "W": [[1]]}]},
    "state": {"cm": [[3, 0.5], [0.5, 2]]}})";
  const Run r = run({"apply"}, input);
  REQUIRE(r.code == 0);
  const GaussianState s = io::state_from_json(Json::parse(r.out));
  CHECK_THAT(s.cm(0, 1), WithinAbs(0.5, 1e-15));
  CHECK_THAT(s.cm(0, 0), WithinAbs(3.0, 1e-15));
}

TEST_CASE("cli validate rejects unphysical states", "[cli]") {
  const Run r = run({"validate"}, R"({"cm": [[0.5, 0], [0, 0.5]]})");
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out).at("valid") == false);
}

TEST_CASE("cli cool modes", "[cli]") {
  Run r = run({"cool", "--adversary", "10", "--nu0", "5", "--nu-b", "2"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("steps").size() == 11);
  CHECK(j.at("steps").back().at("nu").get<double>() >= 2.0 - 1e-6);
  CHECK(j.at("violated") == false);

  r = run({"cool", "--sideband", "1.0986122886681098", "--beta", "1"});
  REQUIRE(r.code == 0);
  CHECK_THAT(Json::parse(r.out).at("nu").get<double>(), WithinAbs(2.0, 1e-12));

  r = run({"cool", "--input", sample("cooling_protocol.json"), "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("step,nu,entropy,bound\n", 0) == 0);

  r = run({"cool"}, R"({"nu0": 5, "nu_b": 2, "steps": []})");
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out).at("steps").size() == 1);

  r = run({"cool"}, R"({"nu0": 5, "nu_b": 2, "steps": [{"p": 2}]})");
  CHECK(r.code == 2);
}

TEST_CASE("cli thermo-curve", "[cli]") {
  Run r = run({"thermo-curve", "--beta-state", "2", "--beta", "1", "--energy", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("x,y\n", 0) == 0);
  r = run({"thermo-curve", "--beta-state", "2", "--beta", "1", "--compare", "1.5"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out).at("agree") == true);
  r = run({"thermo-curve", "--beta-state", "2", "--beta", "1", "--compare", "0.5"});
  CHECK(r.code == 1);
  r = run({"thermo-curve", "--beta-state", "2", "--beta", "1", "--cutoff", "3"});
  CHECK(r.code == 2);
}

TEST_CASE("cli decompose", "[cli]") {
  Run r = run({"decompose", "--kind", "williamson", "--input", sample("williamson_input.json")});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out).at("reconstruction_error").get<double>() < 1e-12);
  r = run({"decompose", "--kind", "cosine_sine", "--input", sample("cosine_sine_input.json")});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out).at("reconstruction_error").get<double>() < 1e-12);
  r = run({"decompose", "--kind", "single_mode"}, R"({"cm": [[8, 0], [0, 0.5]]})");
  REQUIRE(r.code == 0);
  CHECK_THAT(Json::parse(r.out).at("z").get<double>(), WithinAbs(4.0, 1e-14));
}

TEST_CASE("cli selftest is deterministic per seed", "[cli]") {
  const Run a = run({"selftest", "--quick", "--seed", "7"});
  const Run b = run({"selftest", "--quick", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_THAT(a.out, ContainsSubstring("seed 7 (quick)"));
  CHECK_THAT(a.out, ContainsSubstring("all suites passed"));
}

TEST_CASE("cli writes to --output", "[cli]") {
  const std::string path = "gtokit_test_output.json";
  const Run r = run({"feasible", "--input", sample("worked_example_query.json"), "--output", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  CHECK(Json::parse(f).at("feasible") == true);
  std::remove(path.c_str());
}
