// Copyright 2026 The qcrb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "documents.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "qcrb/error.h"

namespace qcrb::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing field");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number");
  return d;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

Vector as_vector(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out(i) = as_number(v[i], path + "[" + std::to_string(i) + "]");
  return out;
}

std::vector<std::string> as_strings(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) fail(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown field");
  }
}

std::vector<Ket> parse_kets(const json& v, const std::string& path, int* n_params) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of kets");
  std::vector<Ket> kets;
  *n_params = -1;
  for (size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& k = v[i];
    if (!k.is_object()) fail(p, "expected an object");
    reject_unknown(k, {"label", "re", "im", "encoding"}, p);
    Ket ket;
    if (auto it = k.find("label"); it != k.end()) {
      if (!it->is_string()) fail(p + ".label", "expected a string");
      ket.label = it->get<std::string>();
    } else {
      ket.label = std::to_string(i);
    }
    double re = as_number(require(k, "re", p), p + ".re");
    double im = k.contains("im") ? as_number(k.at("im"), p + ".im") : 0.0;
    ket.amplitude = Complex(re, im);
    ket.encoding = as_vector(require(k, "encoding", p), p + ".encoding");
    if (*n_params < 0) *n_params = static_cast<int>(ket.encoding.size());
    if (ket.encoding.size() != *n_params) {
      fail(p + ".encoding", "length " + std::to_string(ket.encoding.size()) + " differs from " +
                                std::to_string(*n_params));
    }
    kets.push_back(std::move(ket));
  }
  if (*n_params < 1) fail(path + "[0].encoding", "must not be empty");
  return kets;
}

}  // namespace

ProbeDocument parse_probe_document(const json& doc) {
  const std::string root = "probe";
  if (!doc.is_object()) fail(root, "expected a JSON object");
  const json& fam = require(doc, "family", root);
  if (!fam.is_string()) fail(root + ".family", "expected a string");
  const std::string family = fam.get<std::string>();

  ProbeDocument out;
  const std::set<std::string> common = {"family", "labels", "x", "weight"};
  auto allowed = [&](std::initializer_list<std::string> extra) {
    std::set<std::string> s = common;
    s.insert(extra.begin(), extra.end());
    return s;
  };

  int forms = static_cast<int>(doc.contains("nu")) + static_cast<int>(doc.contains("m")) +
              static_cast<int>(doc.contains("kets"));

  if (family == "ghz_like" || family == "noon_like" || family == "cyclic_paired" ||
      family == "custom") {
    if (forms != 1) fail(root, "exactly one of `nu`, `m`, `kets` must be present");
  }

  if (family == "ghz_like") {
    reject_unknown(doc, allowed({"nu"}), root);
    out.spec = FamilySpec{GhzLike{as_vector(require(doc, "nu", root), root + ".nu")}};
  } else if (family == "noon_like") {
    reject_unknown(doc, allowed({"nu"}), root);
    out.spec = FamilySpec{NoonLike{as_vector(require(doc, "nu", root), root + ".nu")}};
  } else if (family == "cyclic_paired") {
    reject_unknown(doc, allowed({"m"}), root);
    out.spec = FamilySpec{CyclicPaired{as_int(require(doc, "m", root), root + ".m")}};
  } else if (family == "custom") {
    reject_unknown(doc, allowed({"kets"}), root);
    int n_params = 0;
    std::vector<Ket> kets = parse_kets(require(doc, "kets", root), root + ".kets", &n_params);
    out.spec = FamilySpec{CustomState{n_params, std::move(kets)}};
  } else if (family == "transverse_ising") {
    reject_unknown(doc, allowed({"omega", "g", "n_sites"}), root);
    TransverseIsing t;
    t.omega = as_number(require(doc, "omega", root), root + ".omega");
    t.g = as_number(require(doc, "g", root), root + ".g");
    t.n_sites = as_int(require(doc, "n_sites", root), root + ".n_sites");
    out.spec = ManyBodySpec{t};
  } else if (family == "xy_three_site") {
    reject_unknown(doc, allowed({"lambda", "gamma", "h"}), root);
    XyThreeSite xy;
    xy.lambda = as_number(require(doc, "lambda", root), root + ".lambda");
    xy.gamma = as_number(require(doc, "gamma", root), root + ".gamma");
    xy.h = as_number(require(doc, "h", root), root + ".h");
    out.spec = ManyBodySpec{xy};
  } else {
    fail(root + ".family", "unknown family `" + family + "`");
  }

  if (auto* f = std::get_if<FamilySpec>(&out.spec)) {
    try {
      validate(*f);
    } catch (const InputError& e) {
      fail(root, e.what());
    }
  }
  if (doc.contains("labels")) out.labels = as_strings(doc.at("labels"), root + ".labels");
  if (doc.contains("x")) out.x = as_vector(doc.at("x"), root + ".x");
  if (doc.contains("weight")) out.weight = as_vector(doc.at("weight"), root + ".weight");
  return out;
}

Povm parse_povm_document(const json& doc) {
  const std::string root = "povm";
  if (!doc.is_object()) fail(root, "expected a JSON object");
  reject_unknown(doc, {"elements"}, root);
  const json& elements = require(doc, "elements", root);
  if (!elements.is_array() || elements.empty()) fail(root + ".elements", "expected a non-empty array");
  std::vector<ComplexMatrix> mats;
  for (size_t e = 0; e < elements.size(); ++e) {
    const std::string p = root + ".elements[" + std::to_string(e) + "]";
    const json& rows = elements[e];
    if (!rows.is_array() || rows.empty()) fail(p, "expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const std::string pr = p + "[" + std::to_string(r) + "]";
      const json& row = rows[r];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        fail(pr, "expected a row of " + std::to_string(n) + " [re, im] pairs");
      }
      for (Eigen::Index c = 0; c < n; ++c) {
        const std::string pc = pr + "[" + std::to_string(c) + "]";
        const json& z = row[c];
        if (!z.is_array() || z.size() != 2) fail(pc, "expected an [re, im] pair");
        m(r, c) = Complex(as_number(z[0], pc + "[0]"), as_number(z[1], pc + "[1]"));
      }
    }
    mats.push_back(std::move(m));
  }
  try {
    return Povm(std::move(mats));
  } catch (const InputError& e) {
    fail(root, e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
}

Vector parse_decimal_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t b = item.find_first_not_of(" \t");
    size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError(what + ": empty entry in `" + text + "`");
    std::string token = item.substr(b, e - b + 1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
      throw InputError(what + ": `" + token + "` is not a decimal number");
    }
    values.push_back(v);
  }
  if (values.empty()) throw InputError(what + ": expected comma-separated decimals");
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace qcrb::cli
