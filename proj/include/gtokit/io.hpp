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

// JSON and CSV serialisation. Matrices are row-major arrays of rows; complex
// entries are [re, im] pairs. Doubles are written in shortest round-trip
// form, so parsing the output reproduces the exact bits.

#pragma once

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gtokit/channels.hpp"
#include "gtokit/cooling.hpp"
#include "gtokit/errors.hpp"
#include "gtokit/feasibility.hpp"
#include "gtokit/states.hpp"
#include "gtokit/symplectic.hpp"
#include "gtokit/thermo.hpp"
#include "json.hpp"

namespace gtokit::io {

using Json = nlohmann::json;

namespace detail {

inline const Json &field(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

inline double number(const Json &j, const char *what) {
  if (!j.is_number()) {
    throw ValidationError(std::string(what) + ": expected a number");
  }
  return j.get<double>();
}

inline double number_field(const Json &j, const char *key) {
  return number(field(j, key), key);
}

inline Complex complex_entry(const Json &j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ValidationError("complex entry must be a number or [re, im]");
}

}  // namespace detail

inline Json to_json(const RealMatrix &m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const RealVector &v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline Json complex_to_json(const ComplexMatrix &m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline RealMatrix matrix_from_json(const Json &j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ValidationError("matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json &row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("matrix rows must all have the same length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = detail::number(row[static_cast<std::size_t>(k)], "matrix entry");
    }
  }
  return m;
}

inline ComplexMatrix complex_matrix_from_json(const Json &j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ValidationError("matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json &row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("matrix rows must all have the same length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = detail::complex_entry(row[static_cast<std::size_t>(k)]);
    }
  }
  return m;
}

inline RealVector vector_from_json(const Json &j) {
  if (!j.is_array()) throw ValidationError("vector must be an array");
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = detail::number(j[i], "vector entry");
  }
  return v;
}

inline std::vector<double> doubles_from_json(const Json &j) {
  if (!j.is_array()) throw ValidationError("expected an array of numbers");
  std::vector<double> out;
  for (const Json &e : j) out.push_back(detail::number(e, "array entry"));
  return out;
}

// -- states -----------------------------------------------------------------

inline Json to_json(const GaussianState &s) {
  return {{"n_modes", s.n_modes},
          {"first_moments", to_json(s.first_moments)},
          {"cm", to_json(s.cm)}};
}

/// "n_modes" and "first_moments" may be omitted; they default to the CM
/// size and zero.
inline GaussianState state_from_json(const Json &j) {
  GaussianState s;
  s.cm = matrix_from_json(detail::field(j, "cm"));
  s.n_modes = j.contains("n_modes") ? j.at("n_modes").get<int>()
                                    : static_cast<int>(s.cm.rows() / 2);
  s.first_moments = j.contains("first_moments")
                        ? vector_from_json(j.at("first_moments"))
                        : RealVector::Zero(s.cm.rows());
  check_dimensions(s);
  return s;
}

inline HamiltonianSpec hamiltonian_from_json(const Json &j) {
  HamiltonianSpec h;
  h.H = matrix_from_json(detail::field(j, "H"));
  h.center = j.contains("center") ? vector_from_json(j.at("center"))
                                  : RealVector::Zero(h.H.rows());
  return h;
}

inline Json to_json(const SingleModeNormalForm &f) {
  return {{"nu", f.nu}, {"z", f.z}, {"phi", f.phi}};
}

inline Json to_json(const WilliamsonForm &w) {
  return {{"S", to_json(w.S)}, {"nus", w.nus}};
}

inline Json to_json(const CosineSineForm &f) {
  return {{"W", complex_to_json(f.W)},
          {"X", complex_to_json(f.X)},
          {"Z", complex_to_json(f.Z)},
          {"Y", complex_to_json(f.Y)},
          {"thetas", f.thetas}};
}

// -- channels ---------------------------------------------------------------

inline Json to_json(const GaussianChannel &ch) {
  return {{"X", to_json(ch.X)}, {"Y", to_json(ch.Y)}, {"d", to_json(ch.d)}};
}

inline GaussianChannel channel_from_json(const Json &j) {
  GaussianChannel ch;
  ch.X = matrix_from_json(detail::field(j, "X"));
  ch.Y = matrix_from_json(detail::field(j, "Y"));
  ch.d = j.contains("d") ? vector_from_json(j.at("d"))
                         : RealVector::Zero(ch.X.rows());
  check_dimensions(ch);
  return ch;
}

inline Json to_json(const FrequencySpectrum &fs) {
  Json sectors = Json::array();
  for (const FrequencySector &s : fs.sectors) {
    sectors.push_back({{"omega", s.omega},
                       {"multiplicity", s.multiplicity},
                       {"mode_indices", s.mode_indices}});
  }
  return {{"S", to_json(fs.S)}, {"sectors", sectors}};
}

inline FrequencySpectrum spectrum_from_json(const Json &j) {
  FrequencySpectrum fs;
  fs.S = matrix_from_json(detail::field(j, "S"));
  const Json &sectors = detail::field(j, "sectors");
  if (!sectors.is_array()) throw ValidationError("sectors must be an array");
  for (const Json &s : sectors) {
    FrequencySector sec;
    sec.omega = detail::number_field(s, "omega");
    sec.mode_indices =
        detail::field(s, "mode_indices").get<std::vector<int>>();
    sec.multiplicity = s.contains("multiplicity")
                           ? s.at("multiplicity").get<int>()
                           : static_cast<int>(sec.mode_indices.size());
    fs.sectors.push_back(std::move(sec));
  }
  return fs;
}

inline Json to_json(const GTOSpec &spec) {
  Json sectors = Json::array();
  for (const GTOSector &s : spec.sectors) {
    sectors.push_back({{"Z", complex_to_json(s.Z)},
                       {"thetas", s.thetas},
                       {"W", complex_to_json(s.W)}});
  }
  return {{"spectrum", to_json(spec.spectrum)},
          {"beta", spec.beta},
          {"sectors", sectors}};
}

/// The spectrum is either given explicitly ("spectrum") or derived from a
/// system Hamiltonian ("hamiltonian": {"H": ..., "center": ...}).
inline GTOSpec gto_spec_from_json(const Json &j) {
  GTOSpec spec;
  if (j.contains("spectrum")) {
    spec.spectrum = spectrum_from_json(j.at("spectrum"));
  } else if (j.contains("hamiltonian")) {
    spec.spectrum =
        normal_mode_spectrum(hamiltonian_from_json(j.at("hamiltonian")));
  } else {
    throw ValidationError("GTOSpec needs \"spectrum\" or \"hamiltonian\"");
  }
  spec.beta = detail::number_field(j, "beta");
  const Json &sectors = detail::field(j, "sectors");
  if (!sectors.is_array()) throw ValidationError("sectors must be an array");
  for (const Json &s : sectors) {
    GTOSector sec;
    sec.Z = complex_matrix_from_json(detail::field(s, "Z"));
    sec.thetas = doubles_from_json(detail::field(s, "thetas"));
    sec.W = complex_matrix_from_json(detail::field(s, "W"));
    spec.sectors.push_back(std::move(sec));
  }
  return spec;
}

inline SingleModeGTO single_mode_gto_from_json(const Json &j) {
  SingleModeGTO g;
  g.p = detail::number_field(j, "p");
  g.phi = j.contains("phi") ? detail::number(j.at("phi"), "phi") : 0.0;
  g.nu_b = detail::number_field(j, "nu_b");
  if (j.contains("S")) g.S = matrix_from_json(j.at("S"));
  return g;
}

// -- feasibility ------------------------------------------------------------

inline TransformQuery query_from_json(const Json &j) {
  TransformQuery q;
  q.nu_i = detail::number_field(j, "nu_i");
  q.z_i = detail::number_field(j, "z_i");
  q.nu_f = detail::number_field(j, "nu_f");
  q.z_f = detail::number_field(j, "z_f");
  q.nu_b = detail::number_field(j, "nu_b");
  if (j.contains("vartheta") && !j.at("vartheta").is_null()) {
    q.vartheta = detail::number(j.at("vartheta"), "vartheta");
  }
  return q;
}

inline Json to_json(const TransformQuery &q) {
  Json j = {{"nu_i", q.nu_i}, {"z_i", q.z_i}, {"nu_f", q.nu_f},
            {"z_f", q.z_f},   {"nu_b", q.nu_b}};
  if (q.vartheta) j["vartheta"] = *q.vartheta;
  return j;
}

inline Json to_json(const FeasibilityResult &r) {
  Json j = {{"feasible", r.feasible}, {"reason", to_string(r.reason)}};
  j["p"] = r.p ? Json(*r.p) : Json(nullptr);
  return j;
}

// -- cooling ----------------------------------------------------------------

/// {"squeeze": r, "rotate": phi_u, "p": p, "phi": phi}; unitary is
/// D(rotate) diag(e^r, e^-r).
inline ProtocolStep step_from_json(const Json &j) {
  const double squeeze =
      j.contains("squeeze") ? detail::number(j.at("squeeze"), "squeeze") : 0.0;
  const double rotate =
      j.contains("rotate") ? detail::number(j.at("rotate"), "rotate") : 0.0;
  const double phi = j.contains("phi") ? detail::number(j.at("phi"), "phi") : 0.0;
  return ProtocolStep::from_params(squeeze, rotate,
                                   detail::number_field(j, "p"), phi);
}

inline Json to_json(const CoolingTrace &t) {
  Json steps = Json::array();
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    steps.push_back({{"step", k},
                     {"nu", t.steps[k].nu},
                     {"entropy", t.steps[k].entropy}});
  }
  return {{"steps", steps}, {"bound", t.bound}, {"violated", t.violated}};
}

inline void write_csv(std::ostream &os, const CoolingTrace &t) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "step,nu,entropy,bound\n";
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    os << k << ',' << t.steps[k].nu << ',' << t.steps[k].entropy << ','
       << t.bound << '\n';
  }
}

// -- thermo -----------------------------------------------------------------

inline void write_csv(std::ostream &os, const ThermoCurve &c) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "x,y\n";
  for (const auto &[x, y] : c.breakpoints) os << x << ',' << y << '\n';
}

inline Json to_json(const CrossCheck &c) {
  return {{"thermo_verdict", c.thermo_verdict},
          {"gaussian_verdict", c.gaussian_verdict},
          {"agree", c.agree}};
}

}  // namespace gtokit::io
