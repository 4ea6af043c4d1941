// Copyright 2026 The steercert Authors
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
#include "steercert/io.hpp"

#include <cmath>
#include <optional>
#include <vector>

#include <json.hpp>

#include "steercert/error.hpp"

namespace steercert {

using nlohmann::json;

namespace {

json entries_json(const Complex* data, Eigen::Index count, int dim) {
  json entries = json::array();
  for (Eigen::Index k = 0; k < count; ++k) entries.push_back({data[k].real(), data[k].imag()});
  return json{{"dim", dim}, {"entries", std::move(entries)}};
}

json op_json(const Operator& op) {
  // Eigen is column-major; transpose to emit row-major.
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = op.matrix();
  return entries_json(rm.data(), rm.size(), op.dim());
}

json ket_json(const Ket& ket) {
  return entries_json(ket.amplitudes().data(), ket.amplitudes().size(), ket.dim());
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::kParse, what); }

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

double finite_number(const json& v) {
  if (!v.is_number()) fail("expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail("non-finite number");
  return x;
}

std::vector<Complex> read_entries(const json& j, int& dim, std::size_t expected_per_dim) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    fail("expected an object with \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1 ||
      j["dim"].get<long long>() > 1 << 16) {
    fail("\"dim\" must be a positive integer");
  }
  dim = j["dim"].get<int>();
  const auto& entries = j["entries"];
  if (!entries.is_array()) fail("\"entries\" must be an array");
  const std::size_t expected = expected_per_dim == 1 ? static_cast<std::size_t>(dim)
                                                     : static_cast<std::size_t>(dim) * dim;
  if (entries.size() != expected) {
    fail("expected " + std::to_string(expected) + " entries, got " + std::to_string(entries.size()));
  }
  std::vector<Complex> out;
  out.reserve(expected);
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2) fail("each entry must be [re, im]");
    out.emplace_back(finite_number(e[0]), finite_number(e[1]));
  }
  return out;
}

Operator read_operator(const json& j) {
  int dim = 0;
  const auto entries = read_entries(j, dim, 2);
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m(r, c) = entries[static_cast<std::size_t>(r) * dim + c];
  }
  return Operator(std::move(m));
}

Ket read_ket(const json& j) {
  int dim = 0;
  const auto entries = read_entries(j, dim, 1);
  Eigen::VectorXcd v(dim);
  for (int k = 0; k < dim; ++k) v(k) = entries[k];
  return Ket(std::move(v));
}

std::string key(int a, int x) { return std::to_string(a) + "|" + std::to_string(x); }

json scenario_json(const Scenario& s) {
  return json{{"n", s.n_inputs}, {"d", s.n_outcomes}, {"dimB", s.dim_b}};
}

Scenario read_scenario(const json& j) {
  if (!j.is_object() || !j.contains("scenario")) fail("missing \"scenario\"");
  const auto& s = j["scenario"];
  for (const char* k : {"n", "d", "dimB"}) {
    if (!s.contains(k) || !s[k].is_number_integer() || s[k].get<long long>() < 1 ||
        s[k].get<long long>() > 1 << 12) {
      fail(std::string("scenario field \"") + k + "\" must be a positive integer");
    }
  }
  return Scenario{s["n"].get<int>(), s["d"].get<int>(), s["dimB"].get<int>()};
}

template <typename Family>
json family_json(const Family& family) {
  const Scenario& s = family.scenario();
  json elements = json::object();
  for (int x = 0; x < s.n_inputs; ++x) {
    for (int a = 0; a < s.n_outcomes; ++a) elements[key(a, x)] = op_json(family.at(a, x));
  }
  return json{{"scenario", scenario_json(s)}, {"elements", std::move(elements)}};
}

std::vector<Operator> read_elements(const json& j, const Scenario& s) {
  if (!j.contains("elements") || !j["elements"].is_object()) fail("missing \"elements\"");
  const auto& elements = j["elements"];
  if (elements.size() != static_cast<std::size_t>(s.size())) {
    fail("expected " + std::to_string(s.size()) + " elements");
  }
  std::vector<Operator> out;
  out.reserve(s.size());
  for (int x = 0; x < s.n_inputs; ++x) {
    for (int a = 0; a < s.n_outcomes; ++a) {
      const auto it = elements.find(key(a, x));
      if (it == elements.end()) fail("missing element \"" + key(a, x) + "\"");
      out.push_back(read_operator(*it));
    }
  }
  return out;
}

template <typename T>
T rethrow_as_parse(auto&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) throw;
    fail(e.what());
  }
}

}  // namespace

std::string to_json(const Ket& ket) { return ket_json(ket).dump(); }
std::string to_json(const Operator& op) { return op_json(op).dump(); }
std::string to_json(const MeasurementSet& meas) { return family_json(meas).dump(); }
std::string to_json(const Assemblage& assemblage) { return family_json(assemblage).dump(); }

std::string to_json(const SteeringFunctional& functional) {
  json j = family_json(functional);
  if (functional.is_rank_one()) {
    const Scenario& s = functional.scenario();
    json kets = json::object();
    for (int x = 0; x < s.n_inputs; ++x) {
      for (int a = 0; a < s.n_outcomes; ++a) kets[key(a, x)] = ket_json(functional.kets(x)[a]);
    }
    j["basis_kets"] = std::move(kets);
  }
  return j.dump();
}

Ket ket_from_json(std::string_view text) {
  return rethrow_as_parse<Ket>([&] { return read_ket(parse(text)); });
}

Operator operator_from_json(std::string_view text) {
  return rethrow_as_parse<Operator>([&] { return read_operator(parse(text)); });
}

MeasurementSet measurements_from_json(std::string_view text) {
  return rethrow_as_parse<MeasurementSet>([&] {
    const json j = parse(text);
    const Scenario s = read_scenario(j);
    return MeasurementSet(s, read_elements(j, s));
  });
}

Assemblage assemblage_from_json(std::string_view text) {
  return rethrow_as_parse<Assemblage>([&] {
    const json j = parse(text);
    const Scenario s = read_scenario(j);
    return Assemblage(s, read_elements(j, s));
  });
}

SteeringFunctional functional_from_json(std::string_view text) {
  return rethrow_as_parse<SteeringFunctional>([&] {
    const json j = parse(text);
    const Scenario s = read_scenario(j);
    std::vector<Operator> elements = read_elements(j, s);
    if (!j.contains("basis_kets")) return SteeringFunctional(s, std::move(elements));
    const auto& kets = j["basis_kets"];
    if (!kets.is_object()) fail("\"basis_kets\" must be an object");
    std::vector<std::vector<Ket>> basis(s.n_inputs);
    for (int x = 0; x < s.n_inputs; ++x) {
      for (int a = 0; a < s.n_outcomes; ++a) {
        const auto it = kets.find(key(a, x));
        if (it == kets.end()) fail("missing basis ket \"" + key(a, x) + "\"");
        basis[x].push_back(read_ket(*it));
      }
    }
    SteeringFunctional f = SteeringFunctional::from_kets(std::move(basis));
    if (!(f.scenario() == s)) fail("basis kets disagree with the scenario");
    for (int k = 0; k < s.size(); ++k) {
      if (max_abs_diff(f.elements()[k], elements[k]) > 1e-10) {
        fail("elements are not the projectors onto the basis kets");
      }
    }
    return f;
  });
}

}  // namespace steercert
