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

#include "kolmo/kolmo.h"

#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include <json.hpp>

#include "kolmo/config.hpp"
#include "kolmo/driver.hpp"
#include "kolmo/error.hpp"
#include "kolmo/harness.hpp"
#include "kolmo/io.hpp"
#include "kolmo/oracles.hpp"
#include "kolmo/version.hpp"

struct kolmo_config {
  kolmo::RunConfig cfg;
  std::string base_dir;
};

struct kolmo_sim {
  kolmo::RunConfig cfg;
  kolmo::State state;
  kolmo::ClampReport clamp;
  std::size_t steps = 0;
};

namespace {

using json = nlohmann::json;

thread_local std::string last_error;

kolmo_status fail(kolmo_status status, const std::string& msg) {
  last_error = msg;
  return status;
}

kolmo_status status_of(kolmo::ErrorCode code) {
  using kolmo::ErrorCode;
  switch (code) {
    case ErrorCode::Validation:
    case ErrorCode::MeanViolation:
    case ErrorCode::InsufficientData:
    case ErrorCode::Misaligned:
      return KOLMO_ERR_VALIDATION;
    case ErrorCode::FloorViolation:
    case ErrorCode::BlowUp:
    case ErrorCode::InvalidField:
      return KOLMO_ERR_BLOWUP;
    case ErrorCode::Io:
    case ErrorCode::Checksum:
      return KOLMO_ERR_IO;
    default:
      return KOLMO_ERR_GENERIC;
  }
}

// Runs fn, translating exceptions into status codes and the thread-local
// message.
template <typename Fn>
kolmo_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const kolmo::Error& e) {
    return fail(status_of(e.code()), std::string(kolmo::to_string(e.code())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(KOLMO_ERR_GENERIC, "out of memory");
  } catch (const std::exception& e) {
    return fail(KOLMO_ERR_GENERIC, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  if (out) *out = dup_string(j.dump(2));
}

}  // namespace

extern "C" {

const char* kolmo_version(void) { return kolmo::kVersionString; }

const char* kolmo_last_error(void) { return last_error.c_str(); }

void kolmo_string_free(char* s) { delete[] s; }

kolmo_status kolmo_config_from_file(const char* path, kolmo_config** out) {
  if (!path || !out) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto* c = new kolmo_config{kolmo::parse_config_file(path),
                               std::filesystem::path(path).parent_path().string()};
    *out = c;
    return KOLMO_OK;
  });
}

kolmo_status kolmo_config_load(const char* path, const char* const* overrides, size_t count,
                               kolmo_config** out) {
  if (!path || !out || (count > 0 && !overrides)) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    kolmo::Overrides ov;
    for (size_t i = 0; i < count; ++i) {
      if (!overrides[i]) return fail(KOLMO_ERR_ARGUMENT, "null override");
      const std::string item = overrides[i];
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        return fail(KOLMO_ERR_VALIDATION, "override \"" + item + "\" is not of the form key=value");
      }
      ov.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    *out = new kolmo_config{kolmo::parse_config_file(path, ov),
                            std::filesystem::path(path).parent_path().string()};
    return KOLMO_OK;
  });
}

kolmo_status kolmo_config_from_text(const char* text, const char* base_dir, kolmo_config** out) {
  if (!text || !out) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string base = base_dir ? base_dir : "";
    *out = new kolmo_config{kolmo::parse_config(text, {}, base), base};
    return KOLMO_OK;
  });
}

kolmo_status kolmo_config_set(kolmo_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    cfg->cfg = kolmo::parse_config(kolmo::config_to_json(cfg->cfg).dump(), {{key, value}},
                                   cfg->base_dir);
    return KOLMO_OK;
  });
}

kolmo_status kolmo_config_validate(const kolmo_config* cfg) {
  if (!cfg) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    kolmo::validate_config(cfg->cfg);
    return KOLMO_OK;
  });
}

kolmo_status kolmo_config_echo(const kolmo_config* cfg, char** json_out) {
  if (!cfg || !json_out) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    emit(json_out, kolmo::config_to_json(cfg->cfg));
    return KOLMO_OK;
  });
}

void kolmo_config_free(kolmo_config* cfg) { delete cfg; }

kolmo_status kolmo_run(const kolmo_config* cfg, char** report_json) {
  if (!cfg) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const kolmo::RunSummary s = kolmo::execute_run(cfg->cfg);
    emit(report_json, kolmo::summary_to_json(s));
    if (s.blew_up()) {
      return fail(KOLMO_ERR_BLOWUP, std::string(kolmo::to_string(s.reason)) + ": " + s.message);
    }
    return KOLMO_OK;
  });
}

kolmo_status kolmo_stability(const kolmo_config* cfg, double delta, char** report_json) {
  if (!cfg) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const kolmo::TwinResult r = kolmo::execute_twin(cfg->cfg, delta);
    emit(report_json, kolmo::twin_to_json(r));
    if (r.reason != kolmo::StopReason::Completed) {
      return fail(KOLMO_ERR_BLOWUP, std::string(kolmo::to_string(r.reason)) + ": " + r.message);
    }
    return KOLMO_OK;
  });
}

kolmo_status kolmo_harness(const char* name, size_t trials, uint64_t seed, const char* options_json,
                           char** result_json) {
  if (!name) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    kolmo::HarnessOptions o;
    if (options_json && *options_json) {
      json j;
      try {
        j = json::parse(options_json);
      } catch (const json::exception& e) {
        throw kolmo::Error(kolmo::ErrorCode::Validation, std::string("harness options: ") + e.what());
      }
      if (!j.is_object()) throw kolmo::Error(kolmo::ErrorCode::Validation, "harness options must be an object");
      for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) {
          throw kolmo::Error(kolmo::ErrorCode::Validation, "harness option " + k + ": expected a number");
        }
        if (k == "d") o.d = v.get<int>();
        else if (k == "n") o.n = v.get<int>();
        else if (k == "s") o.s = v.get<double>();
        else if (k == "band") o.band = v.get<double>();
        else if (k == "decay") o.decay = v.get<double>();
        else if (k == "omega_o") o.omega_o = v.get<double>();
        else if (k == "threads") o.threads = v.get<int>();
        else throw kolmo::Error(kolmo::ErrorCode::Validation, "unknown harness option \"" + k + "\"");
      }
    }
    const kolmo::HarnessResult r = kolmo::run_harness(name, trials, seed, o);
    json j;
    j["case"] = r.name;
    j["seed"] = r.seed;
    j["trials"] = r.stats.trials;
    j["used"] = r.stats.used;
    j["skipped"] = r.stats.skipped;
    j["max"] = r.stats.max;
    j["mean"] = r.stats.mean;
    j["std"] = r.stats.std;
    j["finite"] = r.stats.finite;
    j["options"] = {{"d", r.options.d},         {"n", r.options.n},
                    {"s", r.options.s},         {"band", r.options.band},
                    {"decay", r.options.decay}, {"omega_o", r.options.omega_o}};
    emit(result_json, j);
    return KOLMO_OK;
  });
}

kolmo_status kolmo_oracle(const char* name, char** result_json) {
  if (!name) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const kolmo::oracle::Result r = kolmo::oracle::run(name);
    emit(result_json, {{"name", r.name},
                       {"description", r.description},
                       {"error", r.error},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
    if (!r.pass) return fail(KOLMO_ERR_GENERIC, "oracle " + r.name + " failed");
    return KOLMO_OK;
  });
}

kolmo_status kolmo_sim_create(const kolmo_config* cfg, kolmo_sim** out) {
  if (!cfg || !out) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    kolmo::validate_config(cfg->cfg);
    kolmo::State s = kolmo::initial_state(cfg->cfg);
    kolmo::validate_initial_state(s, cfg->cfg.params);
    *out = new kolmo_sim{cfg->cfg, std::move(s), {}, 0};
    return KOLMO_OK;
  });
}

kolmo_status kolmo_sim_step(kolmo_sim* sim, size_t steps) {
  if (!sim) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& c = sim->cfg;
    const double t_tol = 1e-12 * std::max(1.0, c.control.t_end);
    for (std::size_t i = 0; i < steps && c.control.t_end - sim->state.t > t_tol; ++i) {
      double dt = kolmo::compute_dt(sim->state, c.params, c.control, c.prognostic);
      dt = kolmo::clip_to_end(sim->state.t, dt, c.control.t_end);
      const bool last = dt == c.control.t_end - sim->state.t;
      kolmo::State next = kolmo::rk4_step(sim->state, dt, c.params, c.prognostic);
      if (last) next.t = c.control.t_end;
      sim->clamp = kolmo::enforce_positivity(next, c.params, sim->clamp);
      sim->state = std::move(next);
      ++sim->steps;
    }
    return KOLMO_OK;
  });
}

kolmo_status kolmo_sim_time(const kolmo_sim* sim, double* t) {
  if (!sim || !t) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  *t = sim->state.t;
  return KOLMO_OK;
}

kolmo_status kolmo_sim_steps(const kolmo_sim* sim, size_t* steps) {
  if (!sim || !steps) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  *steps = sim->steps;
  return KOLMO_OK;
}

kolmo_status kolmo_sim_grid(const kolmo_sim* sim, int* d, int* n) {
  if (!sim || !d || !n) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  *d = sim->cfg.d;
  *n = sim->cfg.n;
  return KOLMO_OK;
}

kolmo_status kolmo_sim_copy_field(const kolmo_sim* sim, const char* name, double* buf, size_t len) {
  if (!sim || !name || !buf) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string f = name;
    const kolmo::State& s = sim->state;
    const bool k_form = sim->cfg.prognostic == kolmo::Formulation::Original;
    kolmo::Field tmp;
    const kolmo::Field* src = nullptr;
    int comp = 0;
    if (f == "omega") {
      src = &s.omega;
    } else if (f == "beta") {
      if (k_form) {
        tmp = kolmo::to_beta_form(s).beta;
        src = &tmp;
      } else {
        src = &s.beta;
      }
    } else if (f == "k") {
      if (k_form) {
        src = &s.beta;
      } else {
        tmp = s.k();
        src = &tmp;
      }
    } else if (f.size() == 2 && f[0] == 'u' && f[1] >= '0' && f[1] - '0' < sim->cfg.d) {
      src = &s.u;
      comp = f[1] - '0';
    } else {
      return fail(KOLMO_ERR_ARGUMENT, "unknown field \"" + f + "\"");
    }
    const auto v = src->component(comp);
    if (len != v.size()) {
      return fail(KOLMO_ERR_ARGUMENT, "buffer holds " + std::to_string(len) + " values, field has " +
                                          std::to_string(v.size()));
    }
    std::memcpy(buf, v.data(), v.size() * sizeof(double));
    return KOLMO_OK;
  });
}

kolmo_status kolmo_sim_clamp_total(const kolmo_sim* sim, double* total) {
  if (!sim || !total) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  *total = sim->clamp.total();
  return KOLMO_OK;
}

kolmo_status kolmo_sim_write_snapshot(const kolmo_sim* sim, const char* dir, const char* stem) {
  if (!sim || !dir || !stem) return fail(KOLMO_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    kolmo::write_snapshot(sim->state, dir, stem);
    return KOLMO_OK;
  });
}

void kolmo_sim_free(kolmo_sim* sim) { delete sim; }

}  // extern "C"
