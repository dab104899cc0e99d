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

// The five catpump experiments. Each produces a table for a given pair of
// truncations so that --convergence can rerun it at larger dims.

#include <string>
#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace catpump::cli {

struct Dims {
  int signal = 40;
  int pump = 20;
};

struct CommandResult {
  Table table;
  // Columns compared by --convergence; empty when dims do not enter.
  std::vector<std::string> converged_columns;
};

Table cmd_phi_sweep(const RunConfig& cfg, Dims dims, int workers);
Table cmd_trajectory(const RunConfig& cfg, Dims dims, int workers);
Table cmd_loss_sweep(const RunConfig& cfg, Dims dims, int workers);
// `extents` fixes the half-width of each snapshot's grid (same order as the
// sorted snapshots); when empty they follow cfg.wigner.extent.
Table cmd_wigner(const RunConfig& cfg, Dims dims, int workers, const std::vector<double>& extents = {});
Table cmd_effective_loss(const RunConfig& cfg, int workers);

// Dispatches on cfg.kind.
CommandResult run_command(const RunConfig& cfg, Dims dims, int workers);

struct ConvergenceReport {
  bool applicable = false;
  Dims dims;
  double max_deviation = 0.0;
  std::string column;
  int row = -1;

  std::string describe() const;
};

// Reruns the experiment at the convergence dims and compares every
// converged column row by row.
ConvergenceReport check_convergence(const RunConfig& cfg, const CommandResult& primary, int workers);

}  // namespace catpump::cli
