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

// Classical amplitude dynamics of the signal mode once the pump has been
// adiabatically eliminated:  dA/dt = (-2 g^2 |A|^2 A - 2 g Omega_p A^*) / gamma_p.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "catpump/fock.hpp"

namespace catpump::meanfield {

struct MeanFieldParams {
  double g_nl = 1.0;
  double omega_p = 0.0;  // pump drive amplitude
  double gamma_p = 1.0;  // pump loss rate

  void validate() const;
};

Complex amplitude_rhs(Complex a, const MeanFieldParams& p);

// {0, +i sqrt(Omega_p / g), -i sqrt(Omega_p / g)}. Requires Omega_p >= 0.
std::array<Complex, 3> fixed_points(const MeanFieldParams& p);

// 4 g Omega_p / gamma_p. Requires Omega_p > 0.
double relaxation_rate(const MeanFieldParams& p);
// |alpha|^2 Gamma_d for the adiabatic parameters of the same pump; equals
// relaxation_rate() analytically.
double relaxation_rate_adiabatic(const MeanFieldParams& p);

// Real 2x2 Jacobian of amplitude_rhs in (Re A, Im A), by central differences.
Eigen::Matrix2d jacobian(Complex a, const MeanFieldParams& p, double h = 1e-6);

// -d(delta A)/dt / delta A at A_+ along the imaginary direction, by central differences.
double linearized_decay_rate(const MeanFieldParams& p, double h = 1e-6);

struct AmplitudeTrajectory {
  std::vector<double> time;
  std::vector<Complex> amplitude;
};

// Classical RK4 from a0; records every step.
AmplitudeTrajectory integrate(Complex a0, const MeanFieldParams& p, double t_final, double dt);

// 1e-3 gamma_p / (g Omega_p)
double default_step(const MeanFieldParams& p);
// 10 / relaxation_rate
double default_horizon(const MeanFieldParams& p);

// Least-squares slope of -log|A(t) - A_+| from A_+ + perturbation, over the
// default horizon and step.
double fitted_decay_rate(const MeanFieldParams& p, Complex perturbation);

}  // namespace catpump::meanfield
