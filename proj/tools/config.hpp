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

#pragma once

// Run configuration for the catpump command-line tool.
//
// Files are INI-style: a [common] section plus one section per subcommand.
// Only the [common] section and the section of the running subcommand are
// read; unknown keys in those sections are rejected. Lists are written either
// as comma-separated values or as an inclusive range start:step:stop.
// Complex amplitudes use the forms 2, -2i, 0.5-1.5i.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "catpump/analysis.hpp"

namespace catpump::cli {

inline constexpr int kConfigVersion = 1;

// A configuration problem, reported with the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Kind { kPhiSweep, kTrajectory, kLossSweep, kWigner, kEffectiveLoss };

const char* kind_name(Kind kind);
Kind kind_from_name(const std::string& name);

struct CommonConfig {
  int signal_dim = 40;
  int pump_dim = 20;
  int convergence_signal_dim = 60;
  int convergence_pump_dim = 30;
  double convergence_tol = 1e-3;  // max deviation tolerated by --convergence
  analysis::CatSearchGrid grid;
};

// Pump settings shared by every synchronous-pump experiment.
struct PumpConfig {
  Complex pump_over_phi{0.0, -2.0};  // alpha_p / phi
  double cycle_ratio = 1.0;
  int n_cycles = 0;  // 0: ceil(30 / phi)
};

struct PhiSweepConfig {
  std::vector<double> phi_inv;
  PumpConfig pump;
};

struct TrajectoryConfig {
  enum class Mode { kSynchronous, kAdiabatic } mode = Mode::kSynchronous;
  // synchronous
  double phi_inv = 2.0;
  PumpConfig pump;
  // adiabatic: either (S, Gamma_d) or (Omega_p, g_nl, gamma_p)
  bool from_pump = false;
  Complex s{0.128, 0.0};
  double gamma_d = 0.064;
  double omega_p = 0.0;
  double g_nl = 1.0;
  double gamma_p = 60.0;
  double t_final = 30.0;
  double dt = 0.005;
  double sample_interval = 0.05;
};

struct LossSweepConfig {
  std::vector<double> phi_inv;
  std::vector<double> gamma_s_signal;
  std::vector<double> gamma_s_pump;
  PumpConfig pump;
};

struct WignerConfig {
  double phi_inv = 2.0;
  PumpConfig pump;
  std::vector<double> snapshots{0.5, 4.0};
  int grid_points = 101;
  double extent = 0.0;  // 0: |alpha_opt| + 3 of each snapshot
};

struct EffectiveLossConfig {
  std::vector<double> g_loss_hz;
  std::vector<double> gamma_re_hz;
  std::vector<double> delta_hz;
  double g_nl_hz = 1e5;
};

struct RunConfig {
  Kind kind = Kind::kPhiSweep;
  CommonConfig common;
  PhiSweepConfig phi_sweep;
  TrajectoryConfig trajectory;
  LossSweepConfig loss_sweep;
  WignerConfig wigner;
  EffectiveLossConfig effective_loss;

  // Every setting after defaults are applied, as (section.key, value).
  std::vector<std::pair<std::string, std::string>> resolved;
};

// Raw sections: section -> key -> value.
using RawConfig = std::map<std::string, std::map<std::string, std::string>>;

// Reads an INI file, or the header line of a CSV previously written by catpump.
RawConfig read_config_file(const std::string& path);
// Inverse of header_line (the leading "# " is optional).
RawConfig parse_header_line(const std::string& line);
RunConfig resolve_config(Kind kind, const RawConfig& raw);

// One-line versioned rendering of `resolved`, without the leading '#'.
std::string header_line(const RunConfig& cfg);

// Parsers used by resolve_config; exposed for tests.
double parse_double(const std::string& field, const std::string& text);
int parse_int(const std::string& field, const std::string& text);
Complex parse_complex(const std::string& field, const std::string& text);
std::vector<double> parse_list(const std::string& field, const std::string& text);

// Shortest round-trip formatting for the config header.
std::string format_exact(double value);
std::string format_exact(Complex value);

}  // namespace catpump::cli
