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

// Standing-mode synchronous pumping: the effective loss of a switchable
// dissipation channel and the reset protocol that empties the pump between
// coupling phases.

#include "catpump/dynamics.hpp"
#include "catpump/fock.hpp"

namespace catpump::tunable_loss {

using fock::DensityMatrix;

// A lossy resonator coupled to the pump mode. All rates in Hz.
struct LossChannelParams {
  double g_loss = 0.0;    // resonator-pump coupling
  double gamma_re = 1.0;  // resonator loss
  double delta = 0.0;     // resonator-pump detuning

  void validate() const;
};

struct EffectiveLoss {
  double kappa_eff = 0.0;    // g^2 Gamma / (Delta^2 + Gamma^2)
  double delta_shift = 0.0;  // -g^2 Delta / (Delta^2 + Gamma^2)
};

EffectiveLoss effective_loss_shift(const LossChannelParams& p);

struct SwitchedCycleConfig {
  dynamics::CycleConfig base;
  double kappa_off = 0.01;  // pump loss while coupled
  double kappa_on = 10.0;   // pump loss during the reset
  double t_reset = 1.0;     // reset duration
  Complex repump_alpha{0.0, -1.0};
  double residual_threshold = 1e-3;  // max pump photons left after the reset
  double min_kappa_t = 5.0;          // guard on kappa_on * t_reset

  // Repumps to base.alpha_p.
  static SwitchedCycleConfig for_cycle(const dynamics::CycleConfig& base);

  double kappa_t() const noexcept { return kappa_on * t_reset; }
  void validate() const;
};

struct SwitchedCycleResult {
  DensityMatrix joint;     // (signal, pump) state after the repump
  DensityMatrix signal;    // reduced signal state
  double residual_pump = 0.0;  // <b^dag b> at the end of the reset
};

// One cycle on a joint state:
//   1. coupling for phi under H with pump loss kappa_off + gamma_s_pump and
//      signal loss gamma_s_signal;
//   2. coupling off, pump damped by kappa_on for t_reset while the signal
//      idles under gamma_s_signal;
//   3. pump displaced by repump_alpha.
// Throws IncompleteReset when the residual pump population after step 2
// reaches residual_threshold.
SwitchedCycleResult run_switched_cycle_joint(const DensityMatrix& joint, const SwitchedCycleConfig& cfg);

// One cycle from rho (x) |alpha_p><alpha_p|, returning the signal state.
DensityMatrix run_switched_cycle(const DensityMatrix& rho, const SwitchedCycleConfig& cfg, int pump_dim);

// Kraus operators of amplitude damping with survival probability eta on `dim` levels.
std::vector<Matrix> amplitude_damping_kraus(double eta, int dim);

}  // namespace catpump::tunable_loss
