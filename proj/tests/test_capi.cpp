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

// Exercises the public C interface only; this binary links libkolmo alone.

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "kolmo/kolmo.h"
#include "tempdir.hpp"

using json = nlohmann::json;

namespace {

// Takes ownership of a library string.
json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  kolmo_string_free(s);
  return j;
}

struct Config {
  kolmo_config* p = nullptr;
  ~Config() { kolmo_config_free(p); }
};

struct Sim {
  kolmo_sim* p = nullptr;
  ~Sim() { kolmo_sim_free(p); }
};

std::string config_text(const std::string& out, const std::string& extra = "") {
  return R"({"d": 2, "n": 16, "t_end": 0.05, "stride": 2, "output_dir": ")" + out + "\"" + extra +
         R"(, "initial": {"family": "random_band", "seed": 3, "band": 3}})";
}

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(kolmo_version()) == "0.1.0");
  kolmo_config* cfg = nullptr;
  CHECK(kolmo_config_from_text(nullptr, nullptr, &cfg) == KOLMO_ERR_ARGUMENT);
  CHECK(kolmo_config_from_text("{}", nullptr, nullptr) == KOLMO_ERR_ARGUMENT);
  CHECK(kolmo_config_from_text("{\"s\": 1.5}", nullptr, &cfg) == KOLMO_ERR_VALIDATION);
  CHECK(cfg == nullptr);
  CHECK(std::string(kolmo_last_error()).find("s must exceed 1 + d/2 = 2.0 (got 1.5)") != std::string::npos);
  CHECK(kolmo_config_from_text("{\"d\": 2,", nullptr, &cfg) == KOLMO_ERR_VALIDATION);
  CHECK(std::string(kolmo_last_error()).find("line 1") != std::string::npos);
  CHECK(kolmo_config_from_file("/no/such/config.json", &cfg) == KOLMO_ERR_IO);
  CHECK(kolmo_config_validate(nullptr) == KOLMO_ERR_ARGUMENT);
  CHECK(kolmo_run(nullptr, nullptr) == KOLMO_ERR_ARGUMENT);
  kolmo_config_free(nullptr);
  kolmo_sim_free(nullptr);
  kolmo_string_free(nullptr);
}

TEST_CASE("config set, echo and load") {
  kt::TempDir dir("capi_cfg");
  Config c;
  REQUIRE(kolmo_config_from_text(config_text(dir.str()).c_str(), nullptr, &c.p) == KOLMO_OK);
  CHECK(kolmo_config_set(c.p, "n", "32") == KOLMO_OK);
  CHECK(kolmo_config_set(c.p, "initial.omega0", "2.5") == KOLMO_OK);
  CHECK(kolmo_config_set(c.p, "s", "2") == KOLMO_ERR_VALIDATION);
  CHECK(kolmo_config_set(c.p, "nonsense", "1") == KOLMO_ERR_VALIDATION);
  CHECK(kolmo_config_validate(c.p) == KOLMO_OK);
  char* out = nullptr;
  REQUIRE(kolmo_config_echo(c.p, &out) == KOLMO_OK);
  const json echo = take(out);
  CHECK(echo["n"] == 32);
  CHECK(echo["s"] == 2.5);
  CHECK(echo["initial"]["omega0"] == 2.5);

  kt::spit(dir.str("cfg.json"), echo.dump());
  const char* overrides[] = {"n=16", "initial.seed=11"};
  Config l;
  REQUIRE(kolmo_config_load(dir.str("cfg.json").c_str(), overrides, 2, &l.p) == KOLMO_OK);
  REQUIRE(kolmo_config_echo(l.p, &out) == KOLMO_OK);
  const json e2 = take(out);
  CHECK(e2["n"] == 16);
  CHECK(e2["initial"]["seed"] == 11);
  const char* bad[] = {"no_equals_sign"};
  Config b;
  CHECK(kolmo_config_load(dir.str("cfg.json").c_str(), bad, 1, &b.p) != KOLMO_OK);
}

TEST_CASE("full run writes its outputs") {
  kt::TempDir dir("capi_run");
  Config c;
  REQUIRE(kolmo_config_from_text(config_text(dir.str()).c_str(), nullptr, &c.p) == KOLMO_OK);
  char* report = nullptr;
  REQUIRE(kolmo_run(c.p, &report) == KOLMO_OK);
  const json r = take(report);
  CHECK(r["status"] == "completed");
  CHECK(r["t_final"] == doctest::Approx(0.05));
  for (const char* f : {"timeseries.csv", "manifest.json", "report.json", "snap_000000.json"}) {
    CHECK(std::filesystem::exists(dir.str(f)));
  }
  CHECK(kolmo_run(c.p, nullptr) == KOLMO_OK);
}

TEST_CASE("blow-up runs report status 3 and still write") {
  kt::TempDir dir("capi_blow");
  Config c;
  REQUIRE(kolmo_config_from_text(config_text(dir.str(), R"(, "blowup_threshold": 1e-9)").c_str(), nullptr, &c.p) ==
          KOLMO_OK);
  char* report = nullptr;
  CHECK(kolmo_run(c.p, &report) == KOLMO_ERR_BLOWUP);
  const json r = take(report);
  CHECK(r["status"] == "integral-threshold");
  CHECK(std::filesystem::exists(dir.str("timeseries.csv")));
}

TEST_CASE("stepping simulation") {
  kt::TempDir dir("capi_sim");
  Config c;
  REQUIRE(kolmo_config_from_text(R"({"d": 2, "n": 8, "t_end": 1, "dt_max": 1e-3, "alpha2": 1,
      "initial": {"family": "homogeneous", "omega0": 1, "beta0": 1}})",
                                 nullptr, &c.p) == KOLMO_OK);
  Sim s;
  REQUIRE(kolmo_sim_create(c.p, &s.p) == KOLMO_OK);
  int d = 0, n = 0;
  CHECK(kolmo_sim_grid(s.p, &d, &n) == KOLMO_OK);
  CHECK(d == 2);
  CHECK(n == 8);
  CHECK(kolmo_sim_step(s.p, 400) == KOLMO_OK);
  std::size_t steps = 0;
  CHECK(kolmo_sim_steps(s.p, &steps) == KOLMO_OK);
  CHECK(steps == 400);
  // Stops at t_end.
  CHECK(kolmo_sim_step(s.p, 5000) == KOLMO_OK);
  double t = 0.0;
  CHECK(kolmo_sim_time(s.p, &t) == KOLMO_OK);
  CHECK(t == 1.0);
  CHECK(kolmo_sim_steps(s.p, &steps) == KOLMO_OK);
  CHECK(steps == 1000);

  std::vector<double> buf(64);
  REQUIRE(kolmo_sim_copy_field(s.p, "omega", buf.data(), buf.size()) == KOLMO_OK);
  for (double v : buf) CHECK(std::abs(v - 0.5) <= 1e-10);
  REQUIRE(kolmo_sim_copy_field(s.p, "k", buf.data(), buf.size()) == KOLMO_OK);
  for (double v : buf) CHECK(std::abs(v - 0.5) <= 1e-10);
  REQUIRE(kolmo_sim_copy_field(s.p, "u1", buf.data(), buf.size()) == KOLMO_OK);
  for (double v : buf) CHECK(v == 0.0);
  CHECK(kolmo_sim_copy_field(s.p, "u2", buf.data(), buf.size()) != KOLMO_OK);
  CHECK(kolmo_sim_copy_field(s.p, "omega", buf.data(), 10) != KOLMO_OK);
  CHECK(kolmo_sim_copy_field(s.p, "pressure", buf.data(), buf.size()) != KOLMO_OK);
  double clamp = -1.0;
  CHECK(kolmo_sim_clamp_total(s.p, &clamp) == KOLMO_OK);
  CHECK(clamp == 0.0);
  CHECK(kolmo_sim_write_snapshot(s.p, dir.str().c_str(), "end") == KOLMO_OK);
  const json side = json::parse(kt::slurp(dir.str("end.json")));
  CHECK(side["t"] == 1.0);
}

TEST_CASE("k-form simulation exposes beta") {
  Config c;
  REQUIRE(kolmo_config_from_text(R"({"d": 1, "n": 8, "t_end": 0.1, "prognostic": "k", "s": 2,
      "initial": {"family": "homogeneous", "omega0": 1, "beta0": 2}})",
                                 nullptr, &c.p) == KOLMO_OK);
  Sim s;
  REQUIRE(kolmo_sim_create(c.p, &s.p) == KOLMO_OK);
  std::vector<double> buf(8);
  REQUIRE(kolmo_sim_copy_field(s.p, "k", buf.data(), buf.size()) == KOLMO_OK);
  CHECK(buf[0] == 4.0);
  REQUIRE(kolmo_sim_copy_field(s.p, "beta", buf.data(), buf.size()) == KOLMO_OK);
  CHECK(buf[0] == 2.0);
}

TEST_CASE("stability, harness and oracles") {
  kt::TempDir dir("capi_misc");
  Config c;
  REQUIRE(kolmo_config_from_text(config_text(dir.str()).c_str(), nullptr, &c.p) == KOLMO_OK);
  char* out = nullptr;
  REQUIRE(kolmo_stability(c.p, 1e-4, &out) == KOLMO_OK);
  const json st = take(out);
  CHECK(st["holds"] == true);
  CHECK(st["delta"] == 1e-4);
  CHECK(std::filesystem::exists(dir.str("stability.csv")));

  REQUIRE(kolmo_harness("interp", 4, 5, R"({"n": 32, "band": 4})", &out) == KOLMO_OK);
  const json h = take(out);
  CHECK(h["trials"] == 4);
  CHECK(h["finite"] == true);
  CHECK(h["options"]["n"] == 32);
  CHECK(kolmo_harness("interp", 4, 5, R"({"colour": 1})", &out) == KOLMO_ERR_VALIDATION);
  CHECK(kolmo_harness("nope", 4, 5, nullptr, &out) == KOLMO_ERR_VALIDATION);

  REQUIRE(kolmo_oracle("partition", &out) == KOLMO_OK);
  CHECK(take(out)["pass"] == true);
  CHECK(kolmo_oracle("teapot", &out) == KOLMO_ERR_VALIDATION);
}
