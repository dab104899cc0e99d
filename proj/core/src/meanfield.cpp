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

#include "catpump/meanfield.hpp"

#include <cmath>
#include <string>

#include "catpump/dynamics.hpp"
#include "catpump/error.hpp"

namespace catpump::meanfield {

void MeanFieldParams::validate() const {
  if (!(g_nl > 0.0) || !std::isfinite(g_nl)) throw InvalidParameter("g_nl must be > 0");
  if (!(gamma_p > 0.0) || !std::isfinite(gamma_p)) throw InvalidParameter("gamma_p must be > 0");
  if (!std::isfinite(omega_p)) throw InvalidParameter("omega_p must be finite");
}

Complex amplitude_rhs(Complex a, const MeanFieldParams& p) {
  const double g = p.g_nl;
  return (-2.0 * g * g * std::norm(a) * a - 2.0 * g * p.omega_p * std::conj(a)) / p.gamma_p;
}

std::array<Complex, 3> fixed_points(const MeanFieldParams& p) {
  p.validate();
  if (p.omega_p < 0.0) throw InvalidParameter("fixed_points: Omega_p < 0 is outside the model");
  const double r = std::sqrt(p.omega_p / p.g_nl);
  return {Complex(0.0, 0.0), Complex(0.0, r), Complex(0.0, -r)};
}

double relaxation_rate(const MeanFieldParams& p) {
  p.validate();
  if (!(p.omega_p > 0.0)) throw InvalidParameter("relaxation_rate: Omega_p must be > 0");
  return 4.0 * p.g_nl * p.omega_p / p.gamma_p;
}

double relaxation_rate_adiabatic(const MeanFieldParams& p) {
  p.validate();
  if (!(p.omega_p > 0.0)) throw InvalidParameter("relaxation_rate: Omega_p must be > 0");
  const dynamics::AdiabaticParams ap = dynamics::adiabatic_params_from_pump(p.omega_p, p.g_nl, p.gamma_p);
  return std::norm(ap.steady_alpha()) * ap.gamma_d;
}

Eigen::Matrix2d jacobian(Complex a, const MeanFieldParams& p, double h) {
  Eigen::Matrix2d j;
  const Complex dx = (amplitude_rhs(a + h, p) - amplitude_rhs(a - h, p)) / (2.0 * h);
  const Complex dy = (amplitude_rhs(a + Complex(0.0, h), p) - amplitude_rhs(a - Complex(0.0, h), p)) /
                     (2.0 * h);
  j << dx.real(), dy.real(), dx.imag(), dy.imag();
  return j;
}

double linearized_decay_rate(const MeanFieldParams& p, double h) {
  const Complex plus = fixed_points(p)[1];
  const Complex step(0.0, h);
  const Complex derivative = (amplitude_rhs(plus + step, p) - amplitude_rhs(plus - step, p)) / (2.0 * step);
  return -derivative.real();
}

AmplitudeTrajectory integrate(Complex a0, const MeanFieldParams& p, double t_final, double dt) {
  p.validate();
  if (!(dt > 0.0) || !(t_final >= 0.0)) throw InvalidParameter("integrate: need dt > 0 and t_final >= 0");
  const int steps = static_cast<int>(std::ceil(t_final / dt - 1e-9));
  const double h = steps > 0 ? t_final / steps : 0.0;
  AmplitudeTrajectory out;
  out.time.reserve(steps + 1);
  out.amplitude.reserve(steps + 1);
  Complex a = a0;
  out.time.push_back(0.0);
  out.amplitude.push_back(a);
  for (int s = 1; s <= steps; ++s) {
    const Complex k1 = amplitude_rhs(a, p);
    const Complex k2 = amplitude_rhs(a + 0.5 * h * k1, p);
    const Complex k3 = amplitude_rhs(a + 0.5 * h * k2, p);
    const Complex k4 = amplitude_rhs(a + h * k3, p);
    a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw IntegratorError("mean-field amplitude diverged at t = " + std::to_string(s * h), h, 0.5 * h);
    }
    out.time.push_back(s * h);
    out.amplitude.push_back(a);
  }
  return out;
}

double default_step(const MeanFieldParams& p) {
  p.validate();
  if (!(p.omega_p > 0.0)) throw InvalidParameter("default_step: Omega_p must be > 0");
  return 1e-3 * p.gamma_p / (p.g_nl * p.omega_p);
}

double default_horizon(const MeanFieldParams& p) { return 10.0 / relaxation_rate(p); }

double fitted_decay_rate(const MeanFieldParams& p, Complex perturbation) {
  const Complex plus = fixed_points(p)[1];
  const AmplitudeTrajectory traj = integrate(plus + perturbation, p, default_horizon(p), default_step(p));
  // Ordinary least squares of y = log|dA| against t.
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < traj.time.size(); ++i) {
    const double d = std::abs(traj.amplitude[i] - plus);
    if (d < 1e-300) continue;
    const double t = traj.time[i];
    const double y = std::log(d);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++n;
  }
  if (n < 2) throw IntegratorError("fitted_decay_rate: trajectory too short to fit", 0.0, 0.0);
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  return -slope;
}

}  // namespace catpump::meanfield
