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

#include "kolmo/io.hpp"

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kolmo/error.hpp"

namespace kolmo {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr double TimeseriesRow::*kColumns[] = {
    &TimeseriesRow::t,            &TimeseriesRow::dt,           &TimeseriesRow::min_omega,
    &TimeseriesRow::max_omega,    &TimeseriesRow::omega_min_env, &TimeseriesRow::omega_max_env,
    &TimeseriesRow::min_k,        &TimeseriesRow::l2_u,         &TimeseriesRow::l2_omega,
    &TimeseriesRow::l2_beta,      &TimeseriesRow::E_s,          &TimeseriesRow::F_s,
    &TimeseriesRow::bold_E_s,     &TimeseriesRow::A,            &TimeseriesRow::integral_A,
    &TimeseriesRow::residual_3_3, &TimeseriesRow::residual_3_4, &TimeseriesRow::residual_3_5,
    &TimeseriesRow::residual_3_6, &TimeseriesRow::vacuum_fraction, &TimeseriesRow::clamp_mass};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<unsigned char> to_le_bytes(std::span<const double> values) {
  std::vector<unsigned char> out(values.size() * sizeof(double));
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) out[i * 8 + b] = static_cast<unsigned char>(bits >> (8 * b));
  }
  return out;
}

double from_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

std::vector<unsigned char> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

void write_bytes(const std::string& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "short write to " + path);
}

}  // namespace

const std::vector<std::string>& timeseries_columns() {
  static const std::vector<std::string> cols = {
      "t",        "dt",           "min_ω",        "max_ω",        "ω_min_env",    "ω_max_env",
      "min_k",    "L2_u",         "L2_ω",         "L2_β",         "E_s",          "F_s",
      "bold_E_s", "A",            "integral_A",   "residual_3_3", "residual_3_4", "residual_3_5",
      "residual_3_6", "vacuum_fraction", "clamp_mass"};
  return cols;
}

std::string timeseries_header() {
  std::string h;
  for (const auto& c : timeseries_columns()) h += (h.empty() ? "" : ",") + c;
  return h + "\n";
}

std::string timeseries_line(const TimeseriesRow& row) {
  std::string line;
  char buf[40];
  for (auto member : kColumns) {
    std::snprintf(buf, sizeof buf, "%.17g", row.*member);
    if (!line.empty()) line += ',';
    line += buf;
  }
  return line + "\n";
}

void write_timeseries(const std::string& path, const std::vector<TimeseriesRow>& rows) {
  std::string text = timeseries_header();
  for (const auto& r : rows) text += timeseries_line(r);
  write_text_file(path, text);
}

std::vector<TimeseriesRow> read_timeseries(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::getline(in, line);
  if (line + "\n" != timeseries_header()) throw Error(ErrorCode::Io, path + ": unexpected header");
  std::vector<TimeseriesRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TimeseriesRow r;
    std::istringstream cells(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(cells, cell, ',')) {
      if (c >= std::size(kColumns)) throw Error(ErrorCode::Io, path + ": too many columns");
      r.*kColumns[c++] = std::strtod(cell.c_str(), nullptr);
    }
    if (c != std::size(kColumns)) throw Error(ErrorCode::Io, path + ": too few columns");
    rows.push_back(r);
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "short write to " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a64(std::span<const unsigned char> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string write_snapshot(const State& state, const std::string& dir, const std::string& stem) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create directory " + dir + ": " + ec.message());
  const int d = state.grid().dim();
  std::vector<std::pair<std::string, std::span<const double>>> parts;
  for (int a = 0; a < d; ++a) parts.emplace_back("u" + std::to_string(a), state.u.component(a));
  parts.emplace_back("omega", state.omega.component(0));
  parts.emplace_back("beta", state.beta.component(0));

  json side;
  side["t"] = state.t;
  side["d"] = d;
  side["n"] = state.grid().n();
  side["fields"] = json::array();
  side["files"] = json::array();
  side["checksums"] = json::array();
  for (const auto& [name, values] : parts) {
    const std::string file = stem + "_" + name + ".bin";
    const auto bytes = to_le_bytes(values);
    write_bytes((fs::path(dir) / file).string(), bytes);
    side["fields"].push_back(name);
    side["files"].push_back(file);
    side["checksums"].push_back(hex64(fnv1a64(bytes)));
  }
  const std::string path = (fs::path(dir) / (stem + ".json")).string();
  write_text_file(path, side.dump(2) + "\n");
  return path;
}

State read_snapshot(const std::string& sidecar_path) {
  json side;
  try {
    side = json::parse(read_text_file(sidecar_path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, sidecar_path + ": malformed sidecar: " + e.what());
  }
  int d = 0, n = 0;
  std::vector<std::string> fields, files, sums;
  double t = 0.0;
  try {
    d = side.at("d").get<int>();
    n = side.at("n").get<int>();
    t = side.at("t").get<double>();
    fields = side.at("fields").get<std::vector<std::string>>();
    files = side.at("files").get<std::vector<std::string>>();
    sums = side.at("checksums").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, sidecar_path + ": " + e.what());
  }
  const TorusGrid grid(d, n);
  if (files.size() != fields.size() || sums.size() != fields.size() ||
      fields.size() != static_cast<std::size_t>(d + 2)) {
    throw Error(ErrorCode::Io, sidecar_path + ": field, file and checksum lists disagree");
  }
  State s;
  s.t = t;
  s.u = Field::vector(grid);
  s.omega = Field::scalar(grid);
  s.beta = Field::scalar(grid);
  const fs::path base = fs::path(sidecar_path).parent_path();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string path = (base / files[i]).string();
    const auto bytes = read_bytes(path);
    if (bytes.size() != grid.points() * sizeof(double)) {
      throw Error(ErrorCode::Io, path + ": length " + std::to_string(bytes.size()) +
                                     " bytes does not match n = " + std::to_string(n) +
                                     ", d = " + std::to_string(d));
    }
    if (hex64(fnv1a64(bytes)) != sums[i]) {
      throw Error(ErrorCode::Checksum, path + ": checksum mismatch");
    }
    std::span<double> dst;
    const std::string& name = fields[i];
    if (name == "omega") {
      dst = s.omega.component(0);
    } else if (name == "beta") {
      dst = s.beta.component(0);
    } else if (name.size() == 2 && name[0] == 'u' && name[1] - '0' >= 0 && name[1] - '0' < d) {
      dst = s.u.component(name[1] - '0');
    } else {
      throw Error(ErrorCode::Io, sidecar_path + ": unknown field \"" + name + "\"");
    }
    for (std::size_t p = 0; p < dst.size(); ++p) dst[p] = from_le(bytes.data() + 8 * p);
  }
  return s;
}

}  // namespace kolmo
