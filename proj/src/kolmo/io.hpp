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

#ifndef KOLMO_IO_HPP
#define KOLMO_IO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kolmo/model.hpp"

namespace kolmo {

/// One diagnostic row of timeseries.csv, in column order.
struct TimeseriesRow {
  double t = 0.0;
  double dt = 0.0;
  double min_omega = 0.0;
  double max_omega = 0.0;
  double omega_min_env = 0.0;
  double omega_max_env = 0.0;
  double min_k = 0.0;
  double l2_u = 0.0;
  double l2_omega = 0.0;
  double l2_beta = 0.0;
  double E_s = 0.0;
  double F_s = 0.0;
  double bold_E_s = 0.0;
  double A = 0.0;
  double integral_A = 0.0;
  double residual_3_3 = 0.0;
  double residual_3_4 = 0.0;
  double residual_3_5 = 0.0;
  double residual_3_6 = 0.0;
  double vacuum_fraction = 0.0;
  double clamp_mass = 0.0;
};

/// Stable column contract; new columns are only ever appended.
const std::vector<std::string>& timeseries_columns();

std::string timeseries_header();
/// Values printed with 17 significant digits.
std::string timeseries_line(const TimeseriesRow& row);
/// Parses a file written by write_timeseries (used by tests and tools).
std::vector<TimeseriesRow> read_timeseries(const std::string& path);

void write_timeseries(const std::string& path, const std::vector<TimeseriesRow>& rows);

/// Writes `text` to `path`; throws Error(Io) on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// FNV-1a 64-bit over raw bytes.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);

/// Writes one little-endian float64 file per component (u0.., omega, beta)
/// next to a JSON sidecar `<stem>.json`; returns the sidecar path.
std::string write_snapshot(const State& state, const std::string& dir, const std::string& stem);

/// Inverse of write_snapshot. Throws Error(Checksum) on a checksum mismatch
/// and Error(Io) on missing files or inconsistent lengths.
State read_snapshot(const std::string& sidecar_path);

}  // namespace kolmo

#endif  // KOLMO_IO_HPP
