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

#include "catpump/tunable_loss.hpp"

#include <cmath>
#include <string>

#include "catpump/error.hpp"

namespace catpump::tunable_loss {
namespace {

// Applies sum_k K_k rho K_k^dag on the pump factor of a (signal, pump) matrix.
Matrix apply_on_pump(const Matrix& rho, const std::vector<Matrix>& kraus, int signal_dim, int pump_dim) {
  Matrix out(rho.rows(), rho.cols());
  for (int i = 0; i < signal_dim; ++i) {
    for (int j = 0; j < signal_dim; ++j) {
      const auto block = rho.block(i * pump_dim, j * pump_dim, pump_dim, pump_dim);
      Matrix acc = Matrix::Zero(pump_dim, pump_dim);
      for (const Matrix& k : kraus) acc.noalias() += k * block * k.adjoint();
      out.block(i * pump_dim, j * pump_dim, pump_dim, pump_dim) = acc;
    }
  }
  return out;
}

// Same on the signal factor: rho[(i,m),(j,m')] -> sum_k K[i,i'] rho[(i',m),(j',m')] K[j,j']^*.
Matrix apply_on_signal(const Matrix& rho, const std::vector<Matrix>& kraus, int signal_dim, int pump_dim) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  Matrix slice(signal_dim, signal_dim);
  for (int m = 0; m < pump_dim; ++m) {
    for (int mp = 0; mp < pump_dim; ++mp) {
      for (int i = 0; i < signal_dim; ++i) {
        for (int j = 0; j < signal_dim; ++j) slice(i, j) = rho(i * pump_dim + m, j * pump_dim + mp);
      }
      Matrix acc = Matrix::Zero(signal_dim, signal_dim);
      for (const Matrix& k : kraus) acc.noalias() += k * slice * k.adjoint();
      for (int i = 0; i < signal_dim; ++i) {
        for (int j = 0; j < signal_dim; ++j) out(i * pump_dim + m, j * pump_dim + mp) = acc(i, j);
      }
    }
  }
  return out;
}

double pump_population(const Matrix& rho, int signal_dim, int pump_dim) {
  double total = 0.0;
  for (int i = 0; i < signal_dim; ++i) {
    for (int m = 1; m < pump_dim; ++m) total += m * rho(i * pump_dim + m, i * pump_dim + m).real();
  }
  return total;
}

}  // namespace

void LossChannelParams::validate() const {
  if (!(gamma_re > 0.0) || !std::isfinite(gamma_re)) throw InvalidParameter("gamma_re must be > 0");
  if (!(g_loss >= 0.0) || !std::isfinite(g_loss)) throw InvalidParameter("g_loss must be >= 0");
  if (!std::isfinite(delta)) throw InvalidParameter("delta must be finite");
}

EffectiveLoss effective_loss_shift(const LossChannelParams& p) {
  p.validate();
  const double denom = p.delta * p.delta + p.gamma_re * p.gamma_re;
  const double g2 = p.g_loss * p.g_loss;
  return {g2 * p.gamma_re / denom, -g2 * p.delta / denom};
}

SwitchedCycleConfig SwitchedCycleConfig::for_cycle(const dynamics::CycleConfig& base) {
  SwitchedCycleConfig cfg;
  cfg.base = base;
  cfg.repump_alpha = base.alpha_p;
  return cfg;
}

void SwitchedCycleConfig::validate() const {
  base.validate();
  if (!(kappa_off >= 0.0) || !std::isfinite(kappa_off)) throw InvalidParameter("kappa_off must be >= 0");
  if (!(kappa_on >= 0.0) || !std::isfinite(kappa_on)) throw InvalidParameter("kappa_on must be >= 0");
  if (!(t_reset >= 0.0) || !std::isfinite(t_reset)) throw InvalidParameter("t_reset must be >= 0");
  if (!(residual_threshold > 0.0)) throw InvalidParameter("residual_threshold must be > 0");
  if (kappa_t() < min_kappa_t) {
    throw InvalidParameter("kappa_on * t_reset = " + std::to_string(kappa_t()) + " is below the reset guard " +
                           std::to_string(min_kappa_t));
  }
}

std::vector<Matrix> amplitude_damping_kraus(double eta, int dim) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidParameter("amplitude damping: eta must lie in [0, 1]");
  if (dim < 2) throw InvalidDimension("amplitude damping: dim must be >= 2");
  // K_k |n> = sqrt(C(n, k) eta^(n-k) (1-eta)^k) |n-k>
  std::vector<Matrix> kraus(dim, Matrix::Zero(dim, dim));
  for (int k = 0; k < dim; ++k) {
    for (int n = k; n < dim; ++n) {
      const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      double w = std::exp(0.5 * log_binom);
      w *= std::pow(eta, 0.5 * (n - k)) * std::pow(1.0 - eta, 0.5 * k);
      kraus[k](n - k, n) = w;
    }
  }
  return kraus;
}

SwitchedCycleResult run_switched_cycle_joint(const DensityMatrix& joint, const SwitchedCycleConfig& cfg) {
  cfg.validate();
  if (joint.dims().size() != 2) throw ShapeMismatch("switched cycle: expected a (signal, pump) state");
  const int ds = joint.dims()[fock::kSignal];
  const int dp = joint.dims()[fock::kPump];
  fock::check_truncation(cfg.repump_alpha, dp);
  const Dims& dims = joint.dims();

  // 1. coupling
  const fock::Operator h = dynamics::nonlinear_hamiltonian(ds, dp);
  const std::vector<dynamics::LindbladChannel> channels{
      {cfg.base.gamma_s_signal, fock::embed(fock::annihilation(ds), fock::kSignal, dims)},
      {cfg.kappa_off + cfg.base.gamma_s_pump, fock::embed(fock::annihilation(dp), fock::kPump, dims)}};
  const dynamics::Liouvillian generator(h, channels);
  const int steps = dynamics::rk4_step_count(generator.spectral_bound(), cfg.base.phi, 200);
  Matrix rho = dynamics::rk4_evolve(generator, joint.matrix(), cfg.base.phi, steps);

  // 2. reset: uncoupled, so both damping channels have closed-form Kraus maps
  rho = apply_on_pump(rho, amplitude_damping_kraus(std::exp(-cfg.kappa_on * cfg.t_reset), dp), ds, dp);
  if (cfg.base.gamma_s_signal > 0.0) {
    rho = apply_on_signal(rho, amplitude_damping_kraus(std::exp(-cfg.base.gamma_s_signal * cfg.t_reset), ds),
                          ds, dp);
  }
  const double residue = pump_population(rho, ds, dp);
  if (residue >= cfg.residual_threshold) throw IncompleteReset(residue, cfg.residual_threshold);

  // 3. repump
  const Matrix b = fock::annihilation(dp).matrix();
  const Matrix d = dynamics::expm(cfg.repump_alpha * b.adjoint() - std::conj(cfg.repump_alpha) * b);
  rho = apply_on_pump(rho, {d}, ds, dp);
  rho = 0.5 * (rho + rho.adjoint()).eval();

  DensityMatrix out(std::move(rho), dims, DensityMatrix::Unchecked{});
  DensityMatrix signal = fock::partial_trace(out, fock::kSignal);
  return {std::move(out), std::move(signal), residue};
}

DensityMatrix run_switched_cycle(const DensityMatrix& rho, const SwitchedCycleConfig& cfg, int pump_dim) {
  if (rho.dims().size() != 1) throw ShapeMismatch("switched cycle: expected a single-mode signal state");
  const DensityMatrix pump = DensityMatrix::pure(fock::coherent_state(cfg.base.alpha_p, pump_dim));
  return run_switched_cycle_joint(fock::tensor(rho, pump), cfg).signal;
}

}  // namespace catpump::tunable_loss
