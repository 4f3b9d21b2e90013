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

// Drives the kolmo executable as a subprocess and checks exit codes and
// outputs.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "tempdir.hpp"

using json = nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome kolmo(const kt::TempDir& dir, const std::string& args) {
  const std::string out = dir.str("stdout.txt"), err = dir.str("stderr.txt");
  const std::string cmd = std::string("'") + KOLMO_CLI_PATH + "' " + args + " >'" + out + "' 2>'" + err + "'";
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = kt::slurp(out);
  o.err = kt::slurp(err);
  return o;
}

std::string write_config(const kt::TempDir& dir, const std::string& extra = "") {
  const std::string path = dir.str("cfg.json");
  kt::spit(path, R"({"d": 2, "n": 16, "t_end": 0.05, "stride": 2, "output_dir": ")" + dir.str("out") + "\"" + extra +
                     R"(, "initial": {"family": "random_band", "seed": 3, "band": 3}})");
  return "'" + path + "'";
}

}  // namespace

TEST_CASE("run succeeds and writes outputs") {
  kt::TempDir dir("cli_run");
  const Outcome o = kolmo(dir, "run " + write_config(dir));
  CHECK(o.code == 0);
  CHECK(json::parse(o.out)["status"] == "completed");
  CHECK(std::filesystem::exists(dir.str("out/timeseries.csv")));
  CHECK(std::filesystem::exists(dir.str("out/manifest.json")));
}

TEST_CASE("check echoes the resolved config with overrides") {
  kt::TempDir dir("cli_check");
  const Outcome o = kolmo(dir, "check " + write_config(dir) + " --nu=0.5 --initial.seed=8");
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j["nu"] == 0.5);
  CHECK(j["initial"]["seed"] == 8);
  CHECK(j.contains("alpha4"));
  CHECK_FALSE(std::filesystem::exists(dir.str("out")));
}

TEST_CASE("validation failures exit with 2") {
  kt::TempDir dir("cli_val");
  const std::string cfg = write_config(dir);
  Outcome o = kolmo(dir, "check " + cfg + " --s=1.5");
  CHECK(o.code == 2);
  CHECK(o.err.find("s must exceed 1 + d/2 = 2.0 (got 1.5)") != std::string::npos);
  o = kolmo(dir, "run " + cfg + " --mystery=1");
  CHECK(o.code == 2);
  CHECK(o.err.find("mystery") != std::string::npos);
  kt::spit(dir.str("broken.json"), "{\"d\": 2,\n \"n\": }");
  o = kolmo(dir, "check '" + dir.str("broken.json") + "'");
  CHECK(o.code == 2);
  CHECK(o.err.find("line 2") != std::string::npos);
  CHECK(kolmo(dir, "").code == 2);
  CHECK(kolmo(dir, "harness").code == 2);
  CHECK(kolmo(dir, "oracle teapot").code == 2);
  CHECK(kolmo(dir, "harness nope --trials 2").code == 2);
}

TEST_CASE("blow-up exits with 3 and keeps outputs") {
  kt::TempDir dir("cli_blow");
  const Outcome o = kolmo(dir, "run " + write_config(dir) + " --blowup_threshold=1e-9");
  CHECK(o.code == 3);
  CHECK(json::parse(o.out)["status"] == "integral-threshold");
  CHECK(std::filesystem::exists(dir.str("out/report.json")));
}

TEST_CASE("i/o failures exit with 4") {
  kt::TempDir dir("cli_io");
  CHECK(kolmo(dir, "run '" + dir.str("absent.json") + "'").code == 4);
  kt::spit(dir.str("blocker"), "x");
  const Outcome o = kolmo(dir, "run " + write_config(dir) + " --output_dir='" + dir.str("blocker/sub") + "'");
  CHECK(o.code == 4);
  CHECK(o.err.rfind("kolmo: ", 0) == 0);
}

TEST_CASE("harness, stability, oracle and version") {
  kt::TempDir dir("cli_misc");
  Outcome o = kolmo(dir, "harness interp --trials 3 --seed 4 --n 32");
  REQUIRE(o.code == 0);
  CHECK(json::parse(o.out)["trials"] == 3);
  o = kolmo(dir, "stability " + write_config(dir) + " --perturb 1e-4");
  REQUIRE(o.code == 0);
  CHECK(json::parse(o.out)["holds"] == true);
  CHECK(std::filesystem::exists(dir.str("out/stability.json")));
  o = kolmo(dir, "oracle leray");
  REQUIRE(o.code == 0);
  CHECK(json::parse(o.out)["pass"] == true);
  o = kolmo(dir, "--version");
  CHECK(o.code == 0);
  CHECK(o.out.find("0.1.0") != std::string::npos);
}
