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

// catpump <subcommand> --config <path> [--out <path>] [--workers N] [--convergence]
//
// Exit codes: 0 success, 2 invalid usage or configuration, 3 numerical
// failure. Diagnostics go to stderr as one "catpump: key=value ..." line.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "catpump/error.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "table.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += (c == '\n') ? ' ' : c;
  }
  return out + "\"";
}

int report(int code, const std::string& error, const std::string& message, const std::string& extra = "") {
  std::cerr << "catpump: error=" << error << " exit=" << code;
  if (!extra.empty()) std::cerr << ' ' << extra;
  std::cerr << " message=" << quoted(message) << '\n';
  return code;
}

struct Options {
  std::string config;
  std::string out;
  int workers = 0;
  bool convergence = false;
};

int run(catpump::cli::Kind kind, const Options& opt) {
  using namespace catpump::cli;
  const RunConfig cfg = resolve_config(kind, read_config_file(opt.config));
  const int workers = opt.workers > 0 ? opt.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  const CommandResult result = run_command(cfg, {cfg.common.signal_dim, cfg.common.pump_dim}, workers);
  std::vector<std::string> comments{header_line(cfg)};
  bool converged = true;
  std::string convergence_line;
  if (opt.convergence) {
    const ConvergenceReport conv = check_convergence(cfg, result, workers);
    convergence_line = conv.describe();
    converged = !conv.applicable || conv.max_deviation < cfg.common.convergence_tol;
  }

  std::ostringstream csv;
  write_csv(csv, comments, result.table);
  if (!convergence_line.empty()) csv << "# " << convergence_line << '\n';
  if (opt.out.empty()) {
    std::cout << csv.str();
    std::cout.flush();
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    if (!(file << csv.str())) {
      return report(kExitConfig, "io", "cannot write output file", "path=" + quoted(opt.out));
    }
  }
  if (!convergence_line.empty()) std::cerr << "catpump: " << convergence_line << '\n';
  if (!converged) {
    std::ostringstream tol;
    tol << "tolerance=" << format_number(cfg.common.convergence_tol);
    return report(kExitNumerical, "non_convergence", "results change by more than the tolerance at the convergence dims",
                  tol.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace catpump;
  CLI::App app{"Synchronous-pump cat-state simulations"};
  app.require_subcommand(1);
  Options opt;
  cli::Kind chosen = cli::Kind::kPhiSweep;
  for (cli::Kind kind : {cli::Kind::kPhiSweep, cli::Kind::kTrajectory, cli::Kind::kLossSweep, cli::Kind::kWigner,
                         cli::Kind::kEffectiveLoss}) {
    CLI::App* sub = app.add_subcommand(cli::kind_name(kind), std::string("Run the ") + cli::kind_name(kind) +
                                                                 " experiment");
    sub->add_option("--config", opt.config, "INI configuration file")->required();
    sub->add_option("--out", opt.out, "CSV output path (default: stdout)");
    sub->add_option("--workers", opt.workers, "Worker threads (default: hardware concurrency)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--convergence", opt.convergence, "Rerun at the convergence dims and report the deviation");
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(kExitConfig, "usage", e.what());
  }

  try {
    return run(chosen, opt);
  } catch (const cli::ConfigError& e) {
    return report(kExitConfig, "config", e.what(), "field=" + e.field());
  } catch (const InvalidParameter& e) {
    return report(kExitConfig, "invalid_parameter", e.what());
  } catch (const InvalidDimension& e) {
    return report(kExitConfig, "invalid_dimension", e.what());
  } catch (const ShapeMismatch& e) {
    return report(kExitConfig, "shape_mismatch", e.what());
  } catch (const TruncationInadequate& e) {
    return report(kExitNumerical, "truncation_inadequate", e.what(),
                  "required_dim=" + std::to_string(e.required_dim()));
  } catch (const IntegratorError& e) {
    return report(kExitNumerical, "integrator", e.what(),
                  "dt=" + cli::format_number(e.dt()) + " suggested_dt=" + cli::format_number(e.suggested_dt()));
  } catch (const IncompleteReset& e) {
    return report(kExitNumerical, "incomplete_reset", e.what());
  } catch (const Error& e) {
    return report(kExitNumerical, "numerical", e.what());
  } catch (const std::exception& e) {
    return report(kExitNumerical, "internal", e.what());
  }
}
