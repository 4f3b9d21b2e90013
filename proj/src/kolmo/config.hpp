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

#ifndef KOLMO_CONFIG_HPP
#define KOLMO_CONFIG_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kolmo/initial_data.hpp"
#include "kolmo/model.hpp"
#include "kolmo/timestepper.hpp"

namespace kolmo {

struct OutputToggles {
  bool timeseries = true;
  bool snapshots = true;
  bool manifest = true;
  bool report = true;
};

struct RunConfig {
  int d = 2;
  int n = 64;
  ModelParams params;
  StepControl control;
  double eps_lift = 0.0;
  double eps_vac = 1e-4;
  Formulation prognostic = Formulation::Beta;
  InitialSpec initial;
  std::string output_dir = "kolmo_out";
  OutputToggles outputs;

  TorusGrid grid() const { return TorusGrid(d, n); }
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parses JSON config text, applies `key=value` overrides (dotted keys reach
/// into "initial"), fills defaults and validates. Relative from_file paths
/// are resolved against `base_dir`. Parse errors report line and column;
/// validation errors name the violated constraint. Both throw
/// Error(Validation).
RunConfig parse_config(const std::string& text, const Overrides& overrides = {},
                       const std::string& base_dir = "");
RunConfig parse_config_file(const std::string& path, const Overrides& overrides = {});

/// Throws Error(Validation) on the first violated constraint.
void validate_config(const RunConfig& cfg);

/// Fully resolved config, every key present; parse_config(echo) round-trips.
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace kolmo

#endif  // KOLMO_CONFIG_HPP
