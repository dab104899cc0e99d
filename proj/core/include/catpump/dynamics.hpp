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

// Adiabatic two-photon master equation, the synchronous-pump cycle map
// (lossless and lossy) and the second-order reduction linking the two.
//
// Time is measured in units of 1/g_nl throughout (g_nl = 1).

#include <functional>
#include <memory>
#include <vector>

#include "catpump/analysis.hpp"
#include "catpump/fock.hpp"
#include "catpump/liouvillian.hpp"

namespace catpump::dynamics {

using fock::DensityMatrix;

// b^dag a^2 + b (a^dag)^2 on the (signal, pump) space.
fock::Operator nonlinear_hamiltonian(int signal_dim, int pump_dim);

// -i[H, rho] + sum_k (rate_k / 2) L(A_k, rho). Throws ShapeMismatch on dims mismatch.
Matrix lindblad_rhs(const DensityMatrix& rho, const fock::Operator& hamiltonian,
                    const std::vector<LindbladChannel>& channels);

struct AdiabaticParams {
  Complex S;
  double gamma_d = 0.0;

  // i sqrt(2 S / Gamma_d); the cat amplitude of the steady state.
  Complex steady_alpha() const;
  void validate() const;
};

// i (S^* a^2 - S (a^dag)^2); for real S, -i[H, rho] = -S[(a^dag)^2 - a^2, rho].
fock::Operator adiabatic_hamiltonian(const AdiabaticParams& params, int dim);
// The single two-photon loss channel (Gamma_d, a^2).
std::vector<LindbladChannel> adiabatic_channels(const AdiabaticParams& params, int dim);
// Right-hand side of the adiabatic master equation.
Matrix adiabatic_rhs(const DensityMatrix& rho, const AdiabaticParams& params);

using StateSampler = std::function<void(double time, const DensityMatrix& rho)>;

// Integrates the adiabatic master equation to t_final with RK4 steps of at
// most dt. When a sampler is given it sees the initial state and then the
// state every `sample_interval` (every step when the interval is <= dt).
// Throws IntegratorError, with a suggested step, when dt is unstable.
DensityMatrix evolve_adiabatic(const DensityMatrix& rho0, const AdiabaticParams& params,
                               double t_final, double dt, const StateSampler& sampler = {},
                               double sample_interval = 0.0);

struct CycleConfig {
  double phi = 0.5;             // t_nl * g_nl
  Complex alpha_p{0.0, -1.0};   // pump coherent amplitude
  double cycle_ratio = 1.0;     // T_cycle / t_nl
  double gamma_s_signal = 0.0;  // single-photon loss on the signal
  double gamma_s_pump = 0.0;    // single-photon loss on the pump
  int n_cycles = 1;

  // Config with alpha_p = pump_over_phi * phi and ceil(30 / phi) cycles.
  static CycleConfig from_phi_inv(double phi_inv, Complex pump_over_phi);
  static int default_cycle_count(double phi);

  double cycle_time() const noexcept { return phi * cycle_ratio; }
  bool lossless() const noexcept { return gamma_s_signal == 0.0 && gamma_s_pump == 0.0; }
  // Throws InvalidParameter naming the offending field.
  void validate() const;
};

// Default pump truncation: coherent guard plus a tail margin, plus room for
// photon pairs converted from a signal holding `signal_photons` on average.
int default_pump_dim(Complex alpha_p, double signal_photons = 4.0);

enum class Propagator {
  kRk4,    // fixed-step RK4, step <= phi / 200
  kExact,  // exponential of each conserved-excitation block (lossless only)
};

// One synchronous-pump cycle, precomputed for a fixed configuration and
// truncation so that it can be applied repeatedly.
//
// Lossless cycles are stored as Kraus operators K_k = <k|_pump U |alpha_p>_pump;
// lossy cycles integrate the joint master equation on every application.
class SynchronousCycle {
 public:
  SynchronousCycle(const CycleConfig& cfg, int signal_dim, int pump_dim,
                   Propagator propagator = Propagator::kRk4);

  DensityMatrix operator()(const DensityMatrix& rho) const;

  const CycleConfig& config() const noexcept { return cfg_; }
  int signal_dim() const noexcept { return signal_dim_; }
  int pump_dim() const noexcept { return pump_dim_; }
  int steps() const noexcept { return steps_; }

 private:
  CycleConfig cfg_;
  int signal_dim_;
  int pump_dim_;
  int steps_ = 0;
  std::vector<Matrix> kraus_;
  std::shared_ptr<const Liouvillian> generator_;
  Matrix pump_state_;
};

// Tr_b{U (rho (x) |alpha_p><alpha_p|) U^dag} with U = exp(-i H phi). Rejects lossy configs.
DensityMatrix unitary_cycle(const DensityMatrix& rho, const CycleConfig& cfg, int pump_dim,
                            Propagator propagator = Propagator::kRk4);
// Same map with single-photon loss on both modes during the coupling.
DensityMatrix lossy_cycle(const DensityMatrix& rho, const CycleConfig& cfg, int pump_dim);

struct TrajectoryRecord {
  int cycle = 0;
  double time = 0.0;  // g_nl t
  double f_max = 0.0;
  Complex alpha_opt{};
  bool hit_lower_bound = false;
  double parity = 0.0;
  double purity = 0.0;
};

// Diagnostics of a single-mode state at `time`.
TrajectoryRecord record_state(const analysis::CatFidelitySearch& search, const DensityMatrix& rho,
                              int cycle, double time);

using CycleObserver = std::function<void(const TrajectoryRecord& record, const DensityMatrix& rho)>;

// cfg.n_cycles cycles from the vacuum, one record per completed cycle.
std::vector<TrajectoryRecord> run_synchronous(const CycleConfig& cfg, int signal_dim, int pump_dim,
                                              const analysis::CatSearchGrid& grid = {},
                                              const CycleObserver& observer = {});

// S = i alpha_p / cycle_ratio, Gamma_d = phi / cycle_ratio.
AdiabaticParams second_order_params(const CycleConfig& cfg);
// The (Gamma_d, alpha_p^* a^2 + alpha_p (a^dag)^2) channel that the reduction drops.
LindbladChannel second_order_correction(const CycleConfig& cfg, int dim);

// S = 2 Omega_p g / gamma_p, Gamma_d = 4 g^2 / gamma_p.
AdiabaticParams adiabatic_params_from_pump(double omega_p, double g_nl, double gamma_p);

}  // namespace catpump::dynamics
