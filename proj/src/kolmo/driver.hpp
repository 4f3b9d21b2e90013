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

#ifndef KOLMO_DRIVER_HPP
#define KOLMO_DRIVER_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "kolmo/config.hpp"
#include "kolmo/diagnostics.hpp"
#include "kolmo/io.hpp"

namespace kolmo {

struct RunSummary {
  StopReason reason = StopReason::Completed;
  std::string message;
  std::size_t steps = 0;
  double t_final = 0.0;
  ClampReport clamp;
  double integral_A = 0.0;
  DataBounds bounds;
  bool envelopes_pass = true;
  double worst_margin = 0.0;  // min over rows of the two omega margins and min k
  double bold_E0 = 0.0;
  double lifespan_bound = 0.0;  // C = 1
  double max_bold_E = 0.0;
  double integral_F = 0.0;
  BudgetResiduals final_residuals;
  double max_abs_r33 = 0.0;
  double max_r35 = 0.0;
  double max_r36 = 0.0;
  VacuumMeasure final_vacuum;
  std::vector<TimeseriesRow> rows;
  std::vector<State> snapshots;  // filled when keep_states is set

  bool blew_up() const noexcept { return reason != StopReason::Completed; }
};

struct RunOptions {
  bool write_outputs = true;
  bool keep_states = false;
};

/// Builds the initial state, runs the simulation with diagnostics at every
/// stride and writes the enabled outputs under cfg.output_dir.
RunSummary execute_run(const RunConfig& cfg, const RunOptions& options = {});

/// Initial state for a config (family, lift).
State initial_state(const RunConfig& cfg);

nlohmann::json summary_to_json(const RunSummary& s);
nlohmann::json manifest_json(const RunConfig& cfg);

struct TwinResult {
  StabilityReport report;
  double delta = 0.0;
  std::size_t steps = 0;
  ClampReport clamp_first, clamp_second;
  StopReason reason = StopReason::Completed;
  std::string message;
};

/// Runs cfg and a copy whose omega0 is perturbed by delta cos(x_1), stepping
/// both with the smaller of their two time steps so snapshots align, then
/// evaluates the stability functional every stride. Writes stability.csv
/// and stability.json when outputs are enabled.
TwinResult execute_twin(const RunConfig& cfg, double delta, bool write_outputs = true);

nlohmann::json twin_to_json(const TwinResult& r);

}  // namespace kolmo

#endif  // KOLMO_DRIVER_HPP
