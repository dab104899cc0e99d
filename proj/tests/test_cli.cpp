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


#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "catpump/tunable_loss.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "table.hpp"

namespace catpump::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Workspace {
 public:
  Workspace() {
    dir_ = fs::temp_directory_path() /
           ("catpump_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }
  fs::path path(const std::string& name) const { return dir_ / name; }

  // Runs the catpump binary with stderr captured; returns the exit status.
  int run(const std::string& args) const {
    const std::string cmd = std::string(CATPUMP_BINARY) + " " + args + " 2>" + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string stderr_text() const { return slurp(dir_ / "stderr.txt"); }

 private:
  fs::path dir_;
};

RawConfig ini(const std::string& text) {
  Workspace ws;
  return read_config_file(ws.write("c.ini", text).string());
}

TEST(ParseList, ValuesAndRanges) {
  EXPECT_EQ(parse_list("f", "1, 2.5,3"), (std::vector<double>{1.0, 2.5, 3.0}));
  EXPECT_EQ(parse_list("f", "1:1:5"), (std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0}));
  EXPECT_EQ(parse_list("f", "0.5:0.5:2").size(), 4u);
  EXPECT_EQ(parse_list("f", "3:-1:1"), (std::vector<double>{3.0, 2.0, 1.0}));
  EXPECT_THROW(parse_list("f", ""), ConfigError);
  EXPECT_THROW(parse_list("f", "1,,2"), ConfigError);
  EXPECT_THROW(parse_list("f", "1,2,"), ConfigError);
  EXPECT_THROW(parse_list("f", "1:0:3"), ConfigError);
  EXPECT_THROW(parse_list("f", "1:1"), ConfigError);
  EXPECT_THROW(parse_list("f", "abc"), ConfigError);
}

TEST(ParseComplex, AcceptedForms) {
  EXPECT_EQ(parse_complex("f", "2"), Complex(2.0, 0.0));
  EXPECT_EQ(parse_complex("f", "-2i"), Complex(0.0, -2.0));
  EXPECT_EQ(parse_complex("f", "0-2i"), Complex(0.0, -2.0));
  EXPECT_EQ(parse_complex("f", "0.5-1.5i"), Complex(0.5, -1.5));
  EXPECT_EQ(parse_complex("f", "1e-1+3i"), Complex(0.1, 3.0));
  EXPECT_THROW(parse_complex("f", "2j"), ConfigError);
  EXPECT_THROW(parse_complex("f", ""), ConfigError);
}

TEST(ParseScalars, RejectMalformedText) {
  EXPECT_EQ(parse_int("f", " 12 "), 12);
  EXPECT_THROW(parse_int("f", "1.5"), ConfigError);
  EXPECT_THROW(parse_double("f", "nan"), ConfigError);
  try {
    parse_double("phi-sweep.x", "oops");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "phi-sweep.x");
  }
}

TEST(FormatExact, RoundTrips) {
  for (const double v : {0.064, 1.0 / 3.0, -0.0896, 1e-300, 12.0}) {
    EXPECT_EQ(parse_double("f", format_exact(v)), v);
  }
  EXPECT_EQ(format_exact(0.064), "0.064");
  EXPECT_EQ(format_exact(Complex(0.0, -2.0)), "0-2i");
  EXPECT_EQ(parse_complex("f", format_exact(Complex(0.25, 1.0 / 3.0))), Complex(0.25, 1.0 / 3.0));
}

TEST(FormatNumber, NineSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(123456789012.0), "1.23456789e+11");
  EXPECT_EQ(format_number(2.0), "2");
}

TEST(WriteCsv, Layout) {
  Table t{{"a", "b"}, {{1.0, 0.5}, {2.0, -0.25}}};
  std::ostringstream out;
  write_csv(out, {"catpump-config/1 kind=phi-sweep"}, t);
  EXPECT_EQ(out.str(), "# catpump-config/1 kind=phi-sweep\na,b\n1,0.5\n2,-0.25\n");
  EXPECT_EQ(t.column("b"), 1);
}

TEST(ResolveConfig, DefaultsFillEveryKey) {
  const RunConfig cfg = resolve_config(Kind::kPhiSweep, {});
  EXPECT_EQ(cfg.common.signal_dim, 40);
  EXPECT_EQ(cfg.common.pump_dim, 20);
  EXPECT_EQ(cfg.phi_sweep.phi_inv.size(), 15u);
  EXPECT_EQ(cfg.phi_sweep.pump.pump_over_phi, Complex(0.0, -2.0));
  const std::string h = header_line(cfg);
  EXPECT_EQ(h.rfind("catpump-config/1 kind=phi-sweep ", 0), 0u);
  EXPECT_NE(h.find("phi-sweep.phi_inv="), std::string::npos);
  EXPECT_NE(h.find("common.signal_dim=40"), std::string::npos);
}

TEST(ResolveConfig, HeaderRoundTrip) {
  const RawConfig raw = ini(
      "[common]\nsignal_dim = 24\n[trajectory]\nmode = adiabatic\ns = -0.0896\ngamma_d = 0.064\nt_final = 7\n");
  const RunConfig cfg = resolve_config(Kind::kTrajectory, raw);
  EXPECT_EQ(cfg.trajectory.mode, TrajectoryConfig::Mode::kAdiabatic);
  EXPECT_EQ(cfg.trajectory.s, Complex(-0.0896, 0.0));
  const std::string h = header_line(cfg);
  const RawConfig again = parse_header_line("# " + h);
  const RunConfig cfg2 = resolve_config(kind_from_name("trajectory"), again);
  EXPECT_EQ(header_line(cfg2), h);
}

TEST(ResolveConfig, RejectsUnknownAndMisplacedKeys) {
  try {
    resolve_config(Kind::kPhiSweep, ini("[phi-sweep]\nphi_inv = 1\nbogus = 2\n"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "phi-sweep.bogus");
  }
  EXPECT_THROW(resolve_config(Kind::kTrajectory, ini("[trajectory]\nphi_inv = 2\ns = 0.1\n")), ConfigError);
  EXPECT_THROW(resolve_config(Kind::kTrajectory,
                              ini("[trajectory]\nmode = adiabatic\ns = 0.1\nomega_p = 1\n")),
               ConfigError);
  EXPECT_THROW(resolve_config(Kind::kPhiSweep, ini("[phi-sweep]\nphi_inv = 0, 1\n")), ConfigError);
  EXPECT_THROW(resolve_config(Kind::kPhiSweep, ini("[common]\nsignal_dim = 1\n")), ConfigError);
  // Sections of other subcommands are ignored.
  EXPECT_NO_THROW(resolve_config(Kind::kPhiSweep, ini("[wigner]\nanything = 1\n")));
}

TEST(Commands, EffectiveLossRows) {
  const RunConfig cfg = resolve_config(Kind::kEffectiveLoss, {});
  const Table t = cmd_effective_loss(cfg, 1);
  ASSERT_EQ(t.rows.size(), 5u);
  for (const auto& row : t.rows) {
    const auto e = tunable_loss::effective_loss_shift({row[0], row[1], row[2]});
    EXPECT_EQ(row[3], e.kappa_eff);
    EXPECT_EQ(row[4], e.delta_shift);
    EXPECT_EQ(row[5], e.kappa_eff / 1e5);
  }
  // delta = 1 GHz row: ~0.01 g_nl.
  EXPECT_NEAR(t.rows[4][5], 0.01, 1e-5);
}

TEST(Commands, LosslessLossSweepMatchesPhiSweep) {
  const RawConfig raw = ini(
      "[common]\nsignal_dim = 16\npump_dim = 8\n"
      "[phi-sweep]\nphi_inv = 2, 3\nn_cycles = 4\n"
      "[loss-sweep]\nphi_inv = 2, 3\nn_cycles = 4\ngamma_s_signal = 0\ngamma_s_pump = 0\n");
  const Table a = cmd_phi_sweep(resolve_config(Kind::kPhiSweep, raw), {16, 8}, 1);
  const Table b = cmd_loss_sweep(resolve_config(Kind::kLossSweep, raw), {16, 8}, 1);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_NEAR(a.rows[i][a.column("f_max")], b.rows[i][b.column("f_max")], 1e-6);
    EXPECT_NEAR(a.rows[i][a.column("alpha_opt_mag")], b.rows[i][b.column("alpha_opt_mag")], 1e-4);
  }
}

TEST(Commands, WignerOfUnpumpedVacuum) {
  const RawConfig raw = ini("[common]\nsignal_dim = 12\npump_dim = 8\n"
                            "[wigner]\npump_over_phi = 0\nsnapshots = 0, 1\ngrid_points = 21\nextent = 2\n");
  const Table t = cmd_wigner(resolve_config(Kind::kWigner, raw), {12, 8}, 1);
  ASSERT_EQ(t.rows.size(), 2u * 21 * 21);
  double max_w = -1.0, min_w = 1.0;
  std::vector<double> at_max;
  for (const auto& row : t.rows) {
    if (row[3] > max_w) {
      max_w = row[3];
      at_max = row;
    }
    min_w = std::min(min_w, row[3]);
  }
  EXPECT_NEAR(max_w, 2.0 / std::numbers::pi, 1e-12);
  EXPECT_EQ(at_max[1], 0.0);
  EXPECT_EQ(at_max[2], 0.0);
  EXPECT_GT(min_w, -1e-8);
}

TEST(Binary, WritesVersionedCsv) {
  Workspace ws;
  const auto cfg = ws.write("ps.ini", "[common]\nsignal_dim = 12\npump_dim = 8\n[phi-sweep]\nphi_inv = 2, 3\n");
  ASSERT_EQ(ws.run("phi-sweep --config " + cfg.string() + " --out " + ws.path("a.csv").string()), 0)
      << ws.stderr_text();
  std::istringstream csv(slurp(ws.path("a.csv")));
  std::string header, columns, row;
  std::getline(csv, header);
  std::getline(csv, columns);
  std::getline(csv, row);
  EXPECT_EQ(header.rfind("# catpump-config/1 kind=phi-sweep ", 0), 0u);
  EXPECT_EQ(columns, "phi_inv,f_max,alpha_opt_mag,alpha_opt_phase,n_cycles,signal_dim,pump_dim");
  EXPECT_EQ(row.rfind("2,", 0), 0u);
}

TEST(Binary, OutputIndependentOfWorkerCount) {
  Workspace ws;
  const auto cfg = ws.write("ps.ini", "[common]\nsignal_dim = 12\npump_dim = 8\n[phi-sweep]\nphi_inv = 2:0.5:5\n");
  ASSERT_EQ(ws.run("phi-sweep --config " + cfg.string() + " --workers 1 --out " + ws.path("a.csv").string()), 0);
  ASSERT_EQ(ws.run("phi-sweep --config " + cfg.string() + " --workers 3 --out " + ws.path("b.csv").string()), 0);
  EXPECT_EQ(slurp(ws.path("a.csv")), slurp(ws.path("b.csv")));
}

TEST(Binary, RerunFromCsvHeaderIsIdentical) {
  Workspace ws;
  const auto cfg = ws.write("el.ini", "[effective-loss]\ndelta_hz = 0:1e7:5e7\n");
  ASSERT_EQ(ws.run("effective-loss --config " + cfg.string() + " --out " + ws.path("a.csv").string()), 0);
  ASSERT_EQ(ws.run("effective-loss --config " + ws.path("a.csv").string() + " --out " + ws.path("b.csv").string()),
            0);
  EXPECT_EQ(slurp(ws.path("a.csv")), slurp(ws.path("b.csv")));
}

TEST(Binary, ExitCodes) {
  Workspace ws;
  const auto good = ws.write("good.ini", "[effective-loss]\ndelta_hz = 0\n");
  EXPECT_EQ(ws.run("effective-loss --config " + good.string() + " --out " + ws.path("o.csv").string()), 0);

  EXPECT_EQ(ws.run("effective-loss"), 2);
  EXPECT_NE(ws.stderr_text().find("error=usage"), std::string::npos);
  EXPECT_EQ(ws.run("no-such-command --config " + good.string()), 2);
  EXPECT_EQ(ws.run("effective-loss --config " + ws.path("missing.ini").string()), 2);
  EXPECT_EQ(ws.run("effective-loss --config " + good.string() + " --workers 0"), 2);

  const auto unknown = ws.write("unknown.ini", "[effective-loss]\ndelta = 0\n");
  EXPECT_EQ(ws.run("effective-loss --config " + unknown.string()), 2);
  EXPECT_NE(ws.stderr_text().find("field=effective-loss.delta"), std::string::npos) << ws.stderr_text();

  const auto empty = ws.write("empty.ini", "[phi-sweep]\nphi_inv =\n");
  EXPECT_EQ(ws.run("phi-sweep --config " + empty.string()), 2);

  const auto snapshot = ws.write("snap.ini", "[wigner]\nsnapshots = 0.7\n");
  EXPECT_EQ(ws.run("wigner --config " + snapshot.string()), 2);

  // A pump truncation too small for the pump amplitude is a numerical failure.
  const auto trunc = ws.write("trunc.ini", "[common]\nsignal_dim = 12\npump_dim = 2\n[phi-sweep]\nphi_inv = 1\n");
  EXPECT_EQ(ws.run("phi-sweep --config " + trunc.string()), 3);
  EXPECT_NE(ws.stderr_text().find("required_dim="), std::string::npos) << ws.stderr_text();
}

TEST(Binary, ConvergenceLineIsAppended) {
  Workspace ws;
  const auto cfg = ws.write("ps.ini",
                            "[common]\nsignal_dim = 12\npump_dim = 8\nconvergence_signal_dim = 14\n"
                            "convergence_pump_dim = 9\n[phi-sweep]\nphi_inv = 3\nn_cycles = 3\n");
  ASSERT_EQ(ws.run("phi-sweep --config " + cfg.string() + " --convergence --out " + ws.path("a.csv").string()), 0)
      << ws.stderr_text();
  EXPECT_NE(slurp(ws.path("a.csv")).find("# convergence "), std::string::npos);
  EXPECT_NE(ws.stderr_text().find("convergence"), std::string::npos);

  const auto el = ws.write("el.ini", "[effective-loss]\ndelta_hz = 0\n");
  ASSERT_EQ(ws.run("effective-loss --config " + el.string() + " --convergence --out " + ws.path("b.csv").string()),
            0);
  EXPECT_NE(slurp(ws.path("b.csv")).find("not_applicable"), std::string::npos);
}

}  // namespace
}  // namespace catpump::cli
