// Copyright 2026 The catpump Authors
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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "catpump/analysis.hpp"
#include "catpump/dynamics.hpp"
#include "catpump/error.hpp"
#include "catpump/fock.hpp"
#include "catpump/tunable_loss.hpp"
#include "worker_pool.hpp"

namespace catpump::cli {
namespace {

using dynamics::CycleConfig;
using dynamics::TrajectoryRecord;

CycleConfig make_cycle(double phi_inv, const PumpConfig& pump) {
  CycleConfig c = CycleConfig::from_phi_inv(phi_inv, pump.pump_over_phi);
  c.cycle_ratio = pump.cycle_ratio;
  if (pump.n_cycles > 0) c.n_cycles = pump.n_cycles;
  return c;
}

// Fails before any work when the pump truncation cannot hold the largest pump.
void check_pump_truncation(const std::vector<double>& phi_inv, const PumpConfig& pump, int pump_dim) {
  double phi_min_inv = *std::min_element(phi_inv.begin(), phi_inv.end());
  fock::check_truncation(pump.pump_over_phi / phi_min_inv, pump_dim);
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> record_row(const TrajectoryRecord& r) {
  return {r.time, r.f_max, std::abs(r.alpha_opt), r.parity, r.purity};
}

const std::vector<std::string> kTrajectoryColumns = {"g_nl_t", "f_max", "alpha_opt_mag", "parity", "purity"};

}  // namespace

Table cmd_phi_sweep(const RunConfig& cfg, Dims dims, int workers) {
  const auto& c = cfg.phi_sweep;
  const std::vector<double> phi_inv = sorted_unique(c.phi_inv);
  check_pump_truncation(phi_inv, c.pump, dims.pump);
  Table t;
  t.columns = {"phi_inv", "f_max", "alpha_opt_mag", "alpha_opt_phase", "n_cycles", "signal_dim", "pump_dim"};
  t.rows = run_jobs<std::vector<double>>(phi_inv.size(), workers, [&](std::size_t i) {
    const CycleConfig cycle = make_cycle(phi_inv[i], c.pump);
    const auto records = dynamics::run_synchronous(cycle, dims.signal, dims.pump, cfg.common.grid);
    // First cycle with the highest fidelity.
    const auto best = std::max_element(records.begin(), records.end(),
                                       [](const auto& a, const auto& b) { return a.f_max < b.f_max; });
    return std::vector<double>{phi_inv[i],
                               best->f_max,
                               std::abs(best->alpha_opt),
                               std::arg(best->alpha_opt),
                               static_cast<double>(cycle.n_cycles),
                               static_cast<double>(dims.signal),
                               static_cast<double>(dims.pump)};
  });
  return t;
}

Table cmd_trajectory(const RunConfig& cfg, Dims dims, int /*workers*/) {
  const auto& c = cfg.trajectory;
  Table t;
  t.columns = kTrajectoryColumns;
  const analysis::CatFidelitySearch search(dims.signal, cfg.common.grid);
  const auto vacuum = fock::DensityMatrix::vacuum({dims.signal});
  if (c.mode == TrajectoryConfig::Mode::kSynchronous) {
    check_pump_truncation({c.phi_inv}, c.pump, dims.pump);
    t.rows.push_back(record_row(dynamics::record_state(search, vacuum, 0, 0.0)));
    for (const auto& r : dynamics::run_synchronous(make_cycle(c.phi_inv, c.pump), dims.signal, dims.pump,
                                                   cfg.common.grid)) {
      t.rows.push_back(record_row(r));
    }
    return t;
  }
  const dynamics::AdiabaticParams params =
      c.from_pump ? dynamics::adiabatic_params_from_pump(c.omega_p, c.g_nl, c.gamma_p)
                  : dynamics::AdiabaticParams{c.s, c.gamma_d};
  params.validate();
  fock::check_truncation(params.steady_alpha(), dims.signal);
  int index = 0;
  dynamics::evolve_adiabatic(
      vacuum, params, c.t_final, c.dt,
      [&](double time, const fock::DensityMatrix& rho) {
        t.rows.push_back(record_row(dynamics::record_state(search, rho, index++, time)));
      },
      c.sample_interval);
  return t;
}

Table cmd_loss_sweep(const RunConfig& cfg, Dims dims, int workers) {
  const auto& c = cfg.loss_sweep;
  const std::vector<double> phi_inv = sorted_unique(c.phi_inv);
  const std::vector<double> gs = sorted_unique(c.gamma_s_signal);
  const std::vector<double> gp = sorted_unique(c.gamma_s_pump);
  check_pump_truncation(phi_inv, c.pump, dims.pump);
  const Complex target{0.0, 2.0};
  fock::check_truncation(target, dims.signal);

  struct Point {
    double phi_inv, gamma_s_signal, gamma_s_pump;
  };
  std::vector<Point> points;
  for (double p : phi_inv) {
    for (double s : gs) {
      for (double q : gp) points.push_back({p, s, q});
    }
  }
  Table t;
  t.columns = {"phi_inv", "gamma_s_signal", "gamma_s_pump", "f_max", "alpha_opt_mag", "f_at_alpha2"};
  t.rows = run_jobs<std::vector<double>>(points.size(), workers, [&](std::size_t i) {
    const Point& pt = points[i];
    CycleConfig cycle = make_cycle(pt.phi_inv, c.pump);
    cycle.gamma_s_signal = pt.gamma_s_signal;
    cycle.gamma_s_pump = pt.gamma_s_pump;
    double f_fixed = 0.0;
    const auto records = dynamics::run_synchronous(
        cycle, dims.signal, dims.pump, cfg.common.grid,
        [&](const TrajectoryRecord&, const fock::DensityMatrix& rho) {
          f_fixed = std::max(f_fixed, analysis::fidelity(rho, target));
        });
    const auto best = std::max_element(records.begin(), records.end(),
                                       [](const auto& a, const auto& b) { return a.f_max < b.f_max; });
    return std::vector<double>{pt.phi_inv, pt.gamma_s_signal, pt.gamma_s_pump,
                               best->f_max, std::abs(best->alpha_opt), f_fixed};
  });
  return t;
}

Table cmd_wigner(const RunConfig& cfg, Dims dims, int workers, const std::vector<double>& extents) {
  const auto& c = cfg.wigner;
  CycleConfig cycle = make_cycle(c.phi_inv, c.pump);
  check_pump_truncation({c.phi_inv}, c.pump, dims.pump);
  const double period = cycle.cycle_time();
  const std::vector<double> snapshots = sorted_unique(c.snapshots);

  // Snapshots must fall on cycle boundaries inside the simulated horizon.
  std::vector<int> cycles;
  for (double s : snapshots) {
    const double k = std::round(s / period);
    if (std::abs(k * period - s) > 1e-9 * std::max(1.0, s)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "snapshot %.9g is not a multiple of the cycle time %.9g", s, period);
      throw ConfigError("wigner.snapshots", buf);
    }
    if (k > cycle.n_cycles) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "snapshot %.9g lies beyond the simulated horizon %.9g", s,
                    cycle.n_cycles * period);
      throw ConfigError("wigner.snapshots", buf);
    }
    cycles.push_back(static_cast<int>(k));
  }

  struct Snapshot {
    fock::DensityMatrix rho;
    double alpha_mag;
  };
  std::vector<Snapshot> states;
  const analysis::CatFidelitySearch search(dims.signal, cfg.common.grid);
  const auto vacuum = fock::DensityMatrix::vacuum({dims.signal});
  std::size_t next = 0;
  while (next < cycles.size() && cycles[next] == 0) {
    states.push_back({vacuum, std::abs(search(vacuum).alpha_opt)});
    ++next;
  }
  if (next < cycles.size()) {
    cycle.n_cycles = cycles.back();
    dynamics::run_synchronous(cycle, dims.signal, dims.pump, cfg.common.grid,
                              [&](const TrajectoryRecord& r, const fock::DensityMatrix& rho) {
                                while (next < cycles.size() && cycles[next] == r.cycle) {
                                  states.push_back({rho, std::abs(r.alpha_opt)});
                                  ++next;
                                }
                              });
  }

  auto grids = run_jobs<analysis::WignerGrid>(states.size(), workers, [&](std::size_t i) {
    double extent = !extents.empty() ? extents.at(i) : c.extent;
    if (extent <= 0.0) extent = states[i].alpha_mag + 3.0;
    const analysis::WignerGridSpec spec{-extent, extent, c.grid_points, -extent, extent, c.grid_points};
    return analysis::wigner(states[i].rho, spec);
  });

  Table t;
  t.columns = {"g_nl_t", "x", "p", "W"};
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const auto& g = grids[i];
    for (std::size_t ix = 0; ix < g.x_axis.size(); ++ix) {
      for (std::size_t ip = 0; ip < g.p_axis.size(); ++ip) {
        t.rows.push_back({snapshots[i], g.x_axis[ix], g.p_axis[ip], g.values(ix, ip)});
      }
    }
  }
  return t;
}

Table cmd_effective_loss(const RunConfig& cfg, int /*workers*/) {
  const auto& c = cfg.effective_loss;
  Table t;
  t.columns = {"g_loss_hz", "gamma_re_hz", "delta_hz", "kappa_eff_hz", "delta_shift_hz", "kappa_eff_over_gnl"};
  for (double g : sorted_unique(c.g_loss_hz)) {
    for (double gamma : sorted_unique(c.gamma_re_hz)) {
      for (double delta : sorted_unique(c.delta_hz)) {
        const tunable_loss::LossChannelParams p{g, gamma, delta};
        p.validate();
        const auto e = tunable_loss::effective_loss_shift(p);
        t.rows.push_back({g, gamma, delta, e.kappa_eff, e.delta_shift, e.kappa_eff / c.g_nl_hz});
      }
    }
  }
  return t;
}

CommandResult run_command(const RunConfig& cfg, Dims dims, int workers) {
  switch (cfg.kind) {
    case Kind::kPhiSweep:
      return {cmd_phi_sweep(cfg, dims, workers), {"f_max", "alpha_opt_mag"}};
    case Kind::kTrajectory:
      return {cmd_trajectory(cfg, dims, workers), {"f_max", "alpha_opt_mag", "parity", "purity"}};
    case Kind::kLossSweep:
      return {cmd_loss_sweep(cfg, dims, workers), {"f_max", "alpha_opt_mag", "f_at_alpha2"}};
    case Kind::kWigner:
      return {cmd_wigner(cfg, dims, workers), {"W"}};
    case Kind::kEffectiveLoss:
      return {cmd_effective_loss(cfg, workers), {}};
  }
  throw ConfigError("kind", "unhandled experiment kind");
}

std::string ConvergenceReport::describe() const {
  if (!applicable) return "convergence not_applicable=closed_form";
  char buf[256];
  std::snprintf(buf, sizeof buf, "convergence signal_dim=%d pump_dim=%d max_abs_deviation=%.3g column=%s row=%d",
                dims.signal, dims.pump, max_deviation, column.c_str(), row);
  return buf;
}

ConvergenceReport check_convergence(const RunConfig& cfg, const CommandResult& primary, int workers) {
  ConvergenceReport report;
  if (primary.converged_columns.empty()) return report;
  report.applicable = true;
  report.dims = {cfg.common.convergence_signal_dim, cfg.common.convergence_pump_dim};

  Table rerun;
  if (cfg.kind == Kind::kWigner) {
    // Keep each snapshot's grid so the rows line up.
    std::vector<double> extents;
    const int tc = primary.table.column("g_nl_t");
    const int xc = primary.table.column("x");
    for (const auto& row : primary.table.rows) {
      if (extents.empty() || row[tc] != extents.back()) extents.push_back(row[tc]);
    }
    std::map<double, double> reach;
    for (const auto& row : primary.table.rows) reach[row[tc]] = std::max(reach[row[tc]], row[xc]);
    for (double& e : extents) e = reach[e];
    rerun = cmd_wigner(cfg, report.dims, workers, extents);
  } else {
    rerun = run_command(cfg, report.dims, workers).table;
  }
  if (rerun.rows.size() != primary.table.rows.size()) {
    throw Error("convergence rerun produced a different number of rows");
  }
  for (const auto& name : primary.converged_columns) {
    const int col = primary.table.column(name);
    for (std::size_t r = 0; r < rerun.rows.size(); ++r) {
      const double d = std::abs(rerun.rows[r][col] - primary.table.rows[r][col]);
      if (report.row < 0 || d > report.max_deviation) {
        report.max_deviation = d;
        report.column = name;
        report.row = static_cast<int>(r);
      }
    }
  }
  return report;
}

}  // namespace catpump::cli
