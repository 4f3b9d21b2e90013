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

#include "kolmo/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "kolmo/error.hpp"
#include "kolmo/spectral.hpp"
#include "kolmo/version.hpp"

namespace kolmo {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory " + dir + ": " + ec.message());
}

std::string snapshot_stem(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06zu", index);
  return buf;
}

State beta_view(const State& s, Formulation form) {
  return form == Formulation::Beta ? s : to_beta_form(s);
}

json residuals_json(const BudgetResiduals& r) {
  return {{"t", r.t}, {"residual_3_3", r.r33}, {"residual_3_4", r.r34},
          {"residual_3_5", r.r35}, {"residual_3_6", r.r36}};
}

}  // namespace

State initial_state(const RunConfig& cfg) {
  const TorusGrid grid = cfg.grid();
  State s = make_initial_state(grid, cfg.initial, cfg.eps_lift);
  if (cfg.prognostic == Formulation::Original) s.beta = s.k();
  return s;
}

json manifest_json(const RunConfig& cfg) {
  return {{"program", "kolmo"}, {"version", kVersionString}, {"config", config_to_json(cfg)}};
}

RunSummary execute_run(const RunConfig& cfg, const RunOptions& options) {
  validate_config(cfg);
  const Formulation form = cfg.prognostic;
  const State init = initial_state(cfg);
  validate_initial_state(init, cfg.params);

  if (options.write_outputs) {
    ensure_dir(cfg.output_dir);
    if (cfg.outputs.manifest) {
      write_text_file((fs::path(cfg.output_dir) / "manifest.json").string(),
                      manifest_json(cfg).dump(2) + "\n");
    }
  }

  RunSummary sum;
  sum.bounds = DataBounds::of(init, form);
  sum.bold_E0 = sobolev_energies(beta_view(init, form), cfg.control.s, cfg.params).bold_E;
  sum.lifespan_bound = lifespan_lower_bound(sum.bold_E0, cfg.control.s, 1.0);
  EnergyBudget budget(cfg.params);
  bool first_row = true;
  double prev_t = 0.0, prev_F = 0.0;

  auto observe = [&](const Sample& smp) {
    const State& st = *smp.state;
    const State bv = beta_view(st, form);
    TimeseriesRow row;
    row.t = st.t;
    row.dt = smp.dt;
    const EnvelopeCheck env = envelope_check(st, sum.bounds, cfg.params, form);
    row.min_omega = env.min_omega;
    row.max_omega = env.max_omega;
    row.omega_min_env = env.env.omega_min;
    row.omega_max_env = env.env.omega_max;
    row.min_k = env.min_k;
    row.l2_u = l2_norm(to_spectral(st.u));
    row.l2_omega = l2_norm(to_spectral(st.omega));
    row.l2_beta = l2_norm(to_spectral(bv.beta));
    const SobolevEnergies se = sobolev_energies(bv, cfg.control.s, cfg.params);
    row.E_s = se.E;
    row.F_s = se.F;
    row.bold_E_s = se.bold_E;
    row.A = smp.A;
    row.integral_A = smp.integral_A;
    budget.add(budget_sample(st, cfg.params, form));
    const BudgetResiduals res = budget.residuals();
    row.residual_3_3 = res.r33;
    row.residual_3_4 = res.r34;
    row.residual_3_5 = res.r35;
    row.residual_3_6 = res.r36;
    const VacuumMeasure vac = vacuum_measure(bv, cfg.eps_vac);
    row.vacuum_fraction = vac.fraction;
    row.clamp_mass = smp.clamp.total();

    sum.envelopes_pass = sum.envelopes_pass && env.pass;
    const double worst = std::min({env.margin_lower, env.margin_upper, env.min_k});
    sum.worst_margin = first_row ? worst : std::min(sum.worst_margin, worst);
    sum.max_bold_E = std::max(sum.max_bold_E, se.bold_E);
    if (!first_row) sum.integral_F += 0.5 * (st.t - prev_t) * (prev_F + se.F);
    prev_t = st.t;
    prev_F = se.F;
    sum.final_residuals = res;
    sum.max_abs_r33 = std::max(sum.max_abs_r33, std::abs(res.r33));
    sum.max_r35 = first_row ? res.r35 : std::max(sum.max_r35, res.r35);
    sum.max_r36 = first_row ? res.r36 : std::max(sum.max_r36, res.r36);
    sum.final_vacuum = vac;

    if (options.write_outputs && cfg.outputs.snapshots) {
      write_snapshot(st, cfg.output_dir, snapshot_stem(sum.rows.size()));
    }
    if (options.keep_states) sum.snapshots.push_back(st);
    sum.rows.push_back(row);
    first_row = false;
  };

  const RunResult rr = run_simulation(init, cfg.params, cfg.control, observe, form);
  sum.reason = rr.reason;
  sum.message = rr.message;
  sum.steps = rr.steps;
  sum.t_final = rr.final_state.t;
  sum.clamp = rr.clamp;
  sum.integral_A = rr.integral_A;

  if (options.write_outputs) {
    if (cfg.outputs.timeseries) {
      write_timeseries((fs::path(cfg.output_dir) / "timeseries.csv").string(), sum.rows);
    }
    if (cfg.outputs.report) {
      write_text_file((fs::path(cfg.output_dir) / "report.json").string(),
                      summary_to_json(sum).dump(2) + "\n");
    }
  }
  return sum;
}

json summary_to_json(const RunSummary& s) {
  json j;
  j["status"] = to_string(s.reason);
  j["message"] = s.message;
  j["steps"] = s.steps;
  j["t_final"] = s.t_final;
  j["rows"] = s.rows.size();
  j["clamp"] = {{"omega_total", s.clamp.omega_total}, {"beta_total", s.clamp.beta_total},
                {"total", s.clamp.total()}};
  j["integral_A"] = s.integral_A;
  j["data_bounds"] = {{"omega_star", s.bounds.omega_star},
                      {"omega_upper_star", s.bounds.omega_upper_star},
                      {"k_star", s.bounds.k_star}};
  j["envelopes"] = {{"pass", s.envelopes_pass}, {"worst_margin", s.worst_margin}};
  j["sobolev"] = {{"bold_E0", s.bold_E0},
                  {"max_bold_E", s.max_bold_E},
                  {"integral_F", s.integral_F},
                  {"lifespan_lower_bound", s.lifespan_bound},
                  {"lifespan_constant", 1.0}};
  j["budget"] = {{"final", residuals_json(s.final_residuals)},
                 {"max_abs_residual_3_3", s.max_abs_r33},
                 {"max_residual_3_5", s.max_r35},
                 {"max_residual_3_6", s.max_r36}};
  j["vacuum"] = {{"fraction", s.final_vacuum.fraction}, {"boundary", s.final_vacuum.boundary}};
  if (!s.rows.empty()) j["final_min_k"] = s.rows.back().min_k;
  return j;
}

TwinResult execute_twin(const RunConfig& cfg, double delta, bool write_outputs) {
  validate_config(cfg);
  const Formulation form = cfg.prognostic;
  const ModelParams& params = cfg.params;
  const StepControl& control = cfg.control;
  State a = initial_state(cfg);
  State b = a;
  {
    const TorusGrid& g = b.grid();
    const std::size_t inner = g.points() / static_cast<std::size_t>(g.n());
    auto w = b.omega.component(0);
    for (std::size_t p = 0; p < w.size(); ++p) {
      const double x1 = g.spacing() * static_cast<double>(p / inner);
      w[p] += delta * std::cos(x1);
    }
  }
  validate_initial_state(a, params);
  validate_initial_state(b, params);

  TwinResult r;
  r.delta = delta;
  std::vector<State> first{beta_view(a, form)}, second{beta_view(b, form)};
  const double t_tol = 1e-12 * std::max(1.0, control.t_end);
  std::size_t step = 0;
  try {
    while (control.t_end - a.t > t_tol) {
      double dt = 0.0;
      try {
        dt = std::min(compute_dt(a, params, control, form), compute_dt(b, params, control, form));
      } catch (const Error& e) {
        r.reason = StopReason::StepCollapse;
        r.message = e.what();
        break;
      }
      dt = clip_to_end(a.t, dt, control.t_end);
      const bool last = dt == control.t_end - a.t;
      State na = rk4_step(a, dt, params, form);
      State nb = rk4_step(b, dt, params, form);
      if (last) na.t = control.t_end;
      nb.t = na.t;
      r.clamp_first = enforce_positivity(na, params, r.clamp_first);
      r.clamp_second = enforce_positivity(nb, params, r.clamp_second);
      a = std::move(na);
      b = std::move(nb);
      ++step;
      if (step % static_cast<std::size_t>(control.stride) == 0 || control.t_end - a.t <= t_tol) {
        first.push_back(beta_view(a, form));
        second.push_back(beta_view(b, form));
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FloorViolation) {
      r.reason = StopReason::FloorViolation;
    } else if (e.code() == ErrorCode::BlowUp || e.code() == ErrorCode::InvalidField) {
      r.reason = StopReason::NonFinite;
    } else {
      throw;
    }
    r.message = e.what();
  }
  r.steps = step;
  r.report = twin_stability(first, second);

  if (write_outputs) {
    ensure_dir(cfg.output_dir);
    std::string csv = "t,energy,theta,integral_theta,bound\n";
    char buf[160];
    for (const auto& p : r.report.series) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.t, p.energy, p.theta,
                    p.integral_theta, p.bound);
      csv += buf;
    }
    write_text_file((fs::path(cfg.output_dir) / "stability.csv").string(), csv);
    json j = twin_to_json(r);
    j["config"] = config_to_json(cfg);
    write_text_file((fs::path(cfg.output_dir) / "stability.json").string(), j.dump(2) + "\n");
  }
  return r;
}

json twin_to_json(const TwinResult& r) {
  json j;
  j["status"] = to_string(r.reason);
  j["message"] = r.message;
  j["delta"] = r.delta;
  j["steps"] = r.steps;
  j["c_fit"] = r.report.c_fit;
  j["holds"] = r.report.holds;
  j["energy0"] = r.report.series.empty() ? 0.0 : r.report.series.front().energy;
  j["integral_theta"] = r.report.series.empty() ? 0.0 : r.report.series.back().integral_theta;
  j["clamp_total"] = r.clamp_first.total() + r.clamp_second.total();
  return j;
}

}  // namespace kolmo
