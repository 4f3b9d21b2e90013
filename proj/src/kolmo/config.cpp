// Copyright 2026 The kolmo Authors
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

#include "kolmo/config.hpp"

#include <cmath>
#include <filesystem>
#include <set>

#include "kolmo/error.hpp"
#include "kolmo/io.hpp"

namespace kolmo {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::set<std::string> kTopKeys = {
    "d",         "n",          "nu",          "alpha1",        "alpha2",           "alpha3",
    "alpha4",    "omega_floor", "cfl_safety", "dt_max",        "dt_min",           "t_end",
    "stride",    "s",          "blowup_threshold", "eps_lift", "eps_vac",          "prognostic",
    "output_dir", "write_timeseries", "write_snapshots", "write_manifest", "write_report",
    "initial"};

const std::set<std::string> kInitialKeys = {
    "family", "omega0", "beta0",  "amplitude", "field", "k",    "seed", "band",
    "amp_u",  "amp_omega", "amp_beta", "decay", "vacuum_fraction", "path"};

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::Validation, msg); }

template <typename T>
void read(const json& obj, const char* key, T& dst, const std::string& prefix = "") {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw std::invalid_argument("expected a number");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw std::invalid_argument("expected true or false");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw std::invalid_argument("expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (it->is_number_integer() && !it->is_number_unsigned()) {
          throw std::invalid_argument("expected a nonnegative integer");
        }
      }
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) throw std::invalid_argument("expected a string");
    }
    dst = it->get<T>();
  } catch (const std::exception& e) {
    fail("config key " + prefix + key + ": " + e.what());
  }
}

std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void set_dotted(json& doc, const std::string& key, const std::string& raw) {
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;
  }
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) fail("malformed override key \"" + key + "\"");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    if (!node->contains(part)) (*node)[part] = json::object();
    node = &(*node)[part];
    if (!node->is_object()) fail("override key \"" + key + "\" descends into a non-object");
    start = dot + 1;
  }
}

RunConfig from_json(const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) fail("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kTopKeys.count(key)) fail("unknown config key \"" + key + "\"");
  }
  RunConfig c;
  read(doc, "d", c.d);
  read(doc, "n", c.n);
  read(doc, "nu", c.params.nu);
  read(doc, "alpha1", c.params.alpha1);
  read(doc, "alpha2", c.params.alpha2);
  read(doc, "alpha3", c.params.alpha3);
  read(doc, "alpha4", c.params.alpha4);
  read(doc, "omega_floor", c.params.omega_floor);
  read(doc, "cfl_safety", c.control.cfl_safety);
  read(doc, "dt_max", c.control.dt_max);
  read(doc, "dt_min", c.control.dt_min);
  read(doc, "t_end", c.control.t_end);
  read(doc, "stride", c.control.stride);
  read(doc, "s", c.control.s);
  read(doc, "blowup_threshold", c.control.blowup_threshold);
  read(doc, "eps_lift", c.eps_lift);
  read(doc, "eps_vac", c.eps_vac);
  read(doc, "output_dir", c.output_dir);
  read(doc, "write_timeseries", c.outputs.timeseries);
  read(doc, "write_snapshots", c.outputs.snapshots);
  read(doc, "write_manifest", c.outputs.manifest);
  read(doc, "write_report", c.outputs.report);
  std::string prog = "beta";
  read(doc, "prognostic", prog);
  if (prog == "beta") {
    c.prognostic = Formulation::Beta;
  } else if (prog == "k") {
    c.prognostic = Formulation::Original;
  } else {
    fail("prognostic must be \"beta\" or \"k\" (got \"" + prog + "\")");
  }

  if (auto it = doc.find("initial"); it != doc.end()) {
    const json& ini = *it;
    if (!ini.is_object()) fail("config key initial must be an object");
    for (const auto& [key, _] : ini.items()) {
      if (!kInitialKeys.count(key)) fail("unknown config key \"initial." + key + "\"");
    }
    auto& s = c.initial;
    const std::string p = "initial.";
    read(ini, "family", s.family, p);
    read(ini, "omega0", s.omega0, p);
    read(ini, "beta0", s.beta0, p);
    read(ini, "amplitude", s.amplitude, p);
    read(ini, "field", s.field, p);
    read(ini, "seed", s.seed, p);
    read(ini, "band", s.band, p);
    read(ini, "amp_u", s.amp_u, p);
    read(ini, "amp_omega", s.amp_omega, p);
    read(ini, "amp_beta", s.amp_beta, p);
    read(ini, "decay", s.decay, p);
    read(ini, "vacuum_fraction", s.vacuum_fraction, p);
    read(ini, "path", s.path, p);
    if (auto k = ini.find("k"); k != ini.end()) {
      if (!k->is_array() || k->size() > 3 || k->empty()) {
        fail("config key initial.k: expected an array of 1 to 3 integers");
      }
      s.k = {0, 0, 0};
      for (std::size_t i = 0; i < k->size(); ++i) {
        if (!(*k)[i].is_number_integer()) fail("config key initial.k: expected integers");
        s.k[i] = (*k)[i].get<int>();
      }
    }
    if (!s.path.empty() && !base_dir.empty() && fs::path(s.path).is_relative()) {
      s.path = (fs::path(base_dir) / s.path).string();
    }
  }
  return c;
}

}  // namespace

void validate_config(const RunConfig& c) {
  if (c.d < 1 || c.d > 3) fail("d must be 1, 2 or 3 (got " + std::to_string(c.d) + ")");
  if (c.n < 8 || (c.n & (c.n - 1)) != 0) {
    fail("n must be a power of two >= 8 (got " + std::to_string(c.n) + ")");
  }
  c.params.validate();
  c.control.validate(c.d);
  if (!(c.eps_lift >= 0.0)) fail("eps_lift must be nonnegative");
  if (!(c.eps_vac > 0.0)) fail("eps_vac must be positive");
  if (c.output_dir.empty()) fail("output_dir must not be empty");
  const auto& s = c.initial;
  static const std::set<std::string> families = {"homogeneous", "taylor_green", "single_mode",
                                                 "random_band", "compact_k", "from_file"};
  if (!families.count(s.family)) fail("unknown initial-data family \"" + s.family + "\"");
  if (s.family == "from_file") {
    if (s.path.empty()) fail("initial.path is required for the from_file family");
    if (!fs::exists(s.path)) fail("initial.path does not exist: " + s.path);
  }
  if (s.family == "random_band" && !(s.band >= 1.0)) fail("initial.band must be at least 1");
}

RunConfig parse_config(const std::string& text, const Overrides& overrides,
                       const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("config parse error at " + position_of(text, e.byte) + ": " + e.what());
  }
  for (const auto& [key, value] : overrides) set_dotted(doc, key, value);
  RunConfig c = from_json(doc, base_dir);
  validate_config(c);
  return c;
}

RunConfig parse_config_file(const std::string& path, const Overrides& overrides) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::Io, e.what());
  }
  return parse_config(text, overrides, fs::path(path).parent_path().string());
}

json config_to_json(const RunConfig& c) {
  json j;
  j["d"] = c.d;
  j["n"] = c.n;
  j["nu"] = c.params.nu;
  j["alpha1"] = c.params.alpha1;
  j["alpha2"] = c.params.alpha2;
  j["alpha3"] = c.params.alpha3;
  j["alpha4"] = c.params.alpha4;
  j["omega_floor"] = c.params.omega_floor;
  j["cfl_safety"] = c.control.cfl_safety;
  j["dt_max"] = c.control.dt_max;
  j["dt_min"] = c.control.dt_min;
  j["t_end"] = c.control.t_end;
  j["stride"] = c.control.stride;
  j["s"] = c.control.s;
  j["blowup_threshold"] = c.control.blowup_threshold;
  j["eps_lift"] = c.eps_lift;
  j["eps_vac"] = c.eps_vac;
  j["prognostic"] = c.prognostic == Formulation::Beta ? "beta" : "k";
  j["output_dir"] = c.output_dir;
  j["write_timeseries"] = c.outputs.timeseries;
  j["write_snapshots"] = c.outputs.snapshots;
  j["write_manifest"] = c.outputs.manifest;
  j["write_report"] = c.outputs.report;
  const auto& s = c.initial;
  json ini;
  ini["family"] = s.family;
  ini["omega0"] = s.omega0;
  ini["beta0"] = s.beta0;
  ini["amplitude"] = s.amplitude;
  ini["field"] = s.field;
  ini["k"] = json::array();
  for (int a = 0; a < c.d; ++a) ini["k"].push_back(s.k[a]);
  ini["seed"] = s.seed;
  ini["band"] = s.band;
  ini["amp_u"] = s.amp_u;
  ini["amp_omega"] = s.amp_omega;
  ini["amp_beta"] = s.amp_beta;
  ini["decay"] = s.decay;
  ini["vacuum_fraction"] = s.vacuum_fraction;
  ini["path"] = s.path;
  j["initial"] = ini;
  return j;
}

}  // namespace kolmo
