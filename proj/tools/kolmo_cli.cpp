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

// Command-line front end. Everything goes through the C API.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kolmo/kolmo.h"

namespace {

int exit_code(kolmo_status s) {
  switch (s) {
    case KOLMO_OK: return 0;
    case KOLMO_ERR_VALIDATION:
    case KOLMO_ERR_ARGUMENT: return 2;
    case KOLMO_ERR_BLOWUP: return 3;
    case KOLMO_ERR_IO: return 4;
    default: return 1;
  }
}

int report(kolmo_status s) {
  if (s != KOLMO_OK) std::fprintf(stderr, "kolmo: %s\n", kolmo_last_error());
  return exit_code(s);
}

void print_owned(char* text) {
  if (!text) return;
  std::printf("%s\n", text);
  kolmo_string_free(text);
}

// Unrecognised "--key=value" arguments become config overrides.
bool collect_overrides(const std::vector<std::string>& extras, std::vector<std::string>& out) {
  for (const auto& e : extras) {
    if (e.rfind("--", 0) != 0 || e.find('=') == std::string::npos || e.size() < 4) {
      std::fprintf(stderr, "kolmo: unexpected argument \"%s\" (overrides take the form --key=value)\n",
                   e.c_str());
      return false;
    }
    out.push_back(e.substr(2));
  }
  return true;
}

kolmo_status load(const std::string& path, const std::vector<std::string>& overrides,
                  kolmo_config** cfg) {
  std::vector<const char*> items;
  for (const auto& o : overrides) items.push_back(o.c_str());
  return kolmo_config_load(path.c_str(), items.data(), items.size(), cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kolmo: pseudo-spectral solver and diagnostics for the Kolmogorov two-equation model"};
  app.set_version_flag("--version", std::string(kolmo_version()));
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "integrate a configuration and write its outputs");
  run->add_option("config", config_path, "JSON config file")->required();
  run->allow_extras();

  auto* check = app.add_subcommand("check", "validate a configuration and print it fully resolved");
  check->add_option("config", config_path, "JSON config file")->required();
  check->allow_extras();

  std::string harness_case;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  int hd = 2, hn = 64, threads = 0;
  double hs = 2.5, omega_o = 1.0;
  auto* harness = app.add_subcommand("harness", "ensemble ratios for one functional inequality");
  harness->add_option("case", harness_case, "bernstein, interp, comm, product, comp or key")->required();
  harness->add_option("--trials", trials, "number of random trials")->capture_default_str();
  harness->add_option("--seed", seed, "base seed")->capture_default_str();
  harness->add_option("--d", hd, "dimension")->capture_default_str();
  harness->add_option("--n", hn, "grid points per axis")->capture_default_str();
  harness->add_option("--s", hs, "Sobolev index (product uses 2)")->capture_default_str();
  harness->add_option("--omega-o", omega_o, "comp: infimum of omega")->capture_default_str();
  harness->add_option("--threads", threads, "worker threads (default: KOLMO_THREADS or 1)");

  double delta = 1e-4;
  auto* stability = app.add_subcommand("stability", "twin run with omega perturbed by delta cos(x_1)");
  stability->add_option("config", config_path, "JSON config file")->required();
  stability->add_option("--perturb", delta, "perturbation amplitude delta")->capture_default_str();
  stability->allow_extras();

  std::string oracle_name;
  auto* oracle = app.add_subcommand("oracle", "run a named brute-force oracle, or \"all\"");
  oracle->add_option("name", oracle_name,
                     "series, convolution, fd_rhs, homogeneous, partition, leray, pressure, "
                     "lp_mode, vacuum or all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*run || *check || *stability) {
    CLI::App* sub = *run ? run : (*check ? check : stability);
    std::vector<std::string> overrides;
    if (!collect_overrides(sub->remaining(), overrides)) return 2;
    kolmo_config* cfg = nullptr;
    kolmo_status s = load(config_path, overrides, &cfg);
    if (s != KOLMO_OK) return report(s);
    char* out = nullptr;
    if (*check) {
      s = kolmo_config_echo(cfg, &out);
    } else if (*run) {
      s = kolmo_run(cfg, &out);
    } else {
      s = kolmo_stability(cfg, delta, &out);
    }
    print_owned(out);
    kolmo_config_free(cfg);
    return report(s);
  }

  if (*harness) {
    std::string opts = "{\"d\":" + std::to_string(hd) + ",\"n\":" + std::to_string(hn) +
                       ",\"s\":" + std::to_string(hs) + ",\"omega_o\":" + std::to_string(omega_o);
    if (threads > 0) opts += ",\"threads\":" + std::to_string(threads);
    opts += "}";
    char* out = nullptr;
    const kolmo_status s = kolmo_harness(harness_case.c_str(), trials, seed, opts.c_str(), &out);
    print_owned(out);
    return report(s);
  }

  if (*oracle) {
    static const char* all[] = {"series", "convolution", "fd_rhs", "homogeneous", "partition",
                                "leray",  "pressure",    "lp_mode", "vacuum"};
    std::vector<std::string> names;
    if (oracle_name == "all") {
      names.assign(std::begin(all), std::end(all));
    } else {
      names.push_back(oracle_name);
    }
    kolmo_status worst = KOLMO_OK;
    for (const auto& n : names) {
      char* out = nullptr;
      const kolmo_status s = kolmo_oracle(n.c_str(), &out);
      print_owned(out);
      if (s != KOLMO_OK) {
        std::fprintf(stderr, "kolmo: %s\n", kolmo_last_error());
        if (worst == KOLMO_OK || s != KOLMO_ERR_GENERIC) worst = s;
      }
    }
    return exit_code(worst);
  }
  return 0;
}
