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

#include "catpump/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catpump/error.hpp"

namespace catpump::dynamics {
namespace {

// The map must resolve the coupling time with at least this many steps.
constexpr int kMinStepsPerCycle = 200;

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) throw InvalidParameter(std::string(field) + " must be finite");
}

DensityMatrix hermitian_part(Matrix m, const Dims& dims) {
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(std::move(m), dims, DensityMatrix::Unchecked{});
}

// Columns |i> (x) |pump> for every signal level i.
Matrix product_columns(const Vector& pump, int signal_dim) {
  const int pump_dim = static_cast<int>(pump.size());
  Matrix psi = Matrix::Zero(static_cast<Eigen::Index>(signal_dim) * pump_dim, signal_dim);
  for (int i = 0; i < signal_dim; ++i) psi.block(i * pump_dim, i, pump_dim, 1) = pump;
  return psi;
}

// exp(-i H t) psi, with H = b^dag a^2 + b (a^dag)^2 split into its blocks of
// fixed n + 2m.
Matrix exact_propagate(const Matrix& hamiltonian, const Matrix& psi, int signal_dim, int pump_dim,
                       double t) {
  Matrix out = Matrix::Zero(psi.rows(), psi.cols());
  const int max_excitation = (signal_dim - 1) + 2 * (pump_dim - 1);
  for (int total = 0; total <= max_excitation; ++total) {
    std::vector<int> idx;
    for (int m = 0; m < pump_dim; ++m) {
      const int n = total - 2 * m;
      if (n >= 0 && n < signal_dim) idx.push_back(n * pump_dim + m);
    }
    if (idx.empty()) continue;
    const int size = static_cast<int>(idx.size());
    Matrix block(size, size);
    for (int r = 0; r < size; ++r) {
      for (int c = 0; c < size; ++c) block(r, c) = hamiltonian(idx[r], idx[c]);
    }
    const Matrix u = expm(Complex(0.0, -t) * block);
    Matrix sub(size, psi.cols());
    for (int r = 0; r < size; ++r) sub.row(r) = psi.row(idx[r]);
    const Matrix moved = u * sub;
    for (int r = 0; r < size; ++r) out.row(idx[r]) = moved.row(r);
  }
  return out;
}

}  // namespace

fock::Operator nonlinear_hamiltonian(int signal_dim, int pump_dim) {
  const fock::Operator a = fock::annihilation(signal_dim);
  const fock::Operator b = fock::annihilation(pump_dim);
  const fock::Operator a2 = a * a;
  const fock::Operator term = fock::tensor(a2.adjoint(), b);  // b (a^dag)^2
  return term + term.adjoint();
}

Matrix lindblad_rhs(const DensityMatrix& rho, const fock::Operator& hamiltonian,
                    const std::vector<LindbladChannel>& channels) {
  if (hamiltonian.dims() != rho.dims()) throw ShapeMismatch("lindblad_rhs: H dims differ from rho");
  for (const auto& ch : channels) {
    if (ch.op.dims() != rho.dims()) throw ShapeMismatch("lindblad_rhs: channel dims differ from rho");
  }
  return Liouvillian(hamiltonian, channels).apply(rho.matrix());
}

Complex AdiabaticParams::steady_alpha() const {
  if (!(gamma_d > 0.0)) throw InvalidParameter("steady_alpha: Gamma_d must be > 0");
  return kI * std::sqrt(2.0 * S / gamma_d);
}

void AdiabaticParams::validate() const {
  require_finite(S.real(), "S");
  require_finite(S.imag(), "S");
  require_finite(gamma_d, "Gamma_d");
  if (gamma_d < 0.0) throw InvalidParameter("Gamma_d must be >= 0");
}

fock::Operator adiabatic_hamiltonian(const AdiabaticParams& params, int dim) {
  const fock::Operator a = fock::annihilation(dim);
  const fock::Operator a2 = a * a;
  return (kI * std::conj(params.S)) * a2 - (kI * params.S) * a2.adjoint();
}

std::vector<LindbladChannel> adiabatic_channels(const AdiabaticParams& params, int dim) {
  const fock::Operator a = fock::annihilation(dim);
  return {LindbladChannel{params.gamma_d, a * a}};
}

Matrix adiabatic_rhs(const DensityMatrix& rho, const AdiabaticParams& params) {
  params.validate();
  if (rho.dims().size() != 1) throw ShapeMismatch("adiabatic_rhs: expected a single-mode state");
  return lindblad_rhs(rho, adiabatic_hamiltonian(params, rho.size()),
                      adiabatic_channels(params, rho.size()));
}

DensityMatrix evolve_adiabatic(const DensityMatrix& rho0, const AdiabaticParams& params,
                               double t_final, double dt, const StateSampler& sampler,
                               double sample_interval) {
  params.validate();
  if (rho0.dims().size() != 1) throw ShapeMismatch("evolve_adiabatic: expected a single-mode state");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw InvalidParameter("t_final must be >= 0");
  if (!(dt > 0.0)) throw InvalidParameter("dt must be > 0");
  const Dims dims = rho0.dims();
  if (sampler) sampler(0.0, rho0);
  if (t_final == 0.0) return rho0;

  const Liouvillian generator(adiabatic_hamiltonian(params, rho0.size()),
                              adiabatic_channels(params, rho0.size()));
  const int steps = std::max(1, static_cast<int>(std::ceil(t_final / dt - 1e-9)));
  const double h = t_final / steps;

  StepObserver observer;
  double next_sample = sample_interval;
  if (sampler) {
    observer = [&](int step, double, const Matrix& rho) {
      const double t = step * h;
      if (sample_interval <= h || t >= next_sample - 1e-9 * h || step == steps) {
        sampler(t, DensityMatrix(rho, dims, DensityMatrix::Unchecked{}));
        while (next_sample <= t + 1e-9 * h) next_sample += sample_interval;
      }
    };
  }
  Matrix out = rk4_evolve(generator, rho0.matrix(), t_final, steps, observer);
  return hermitian_part(std::move(out), dims);
}

int CycleConfig::default_cycle_count(double phi) {
  if (!(phi > 0.0)) throw InvalidParameter("phi must be > 0");
  const double n = 30.0 / phi;
  return std::max(1, static_cast<int>(std::ceil(n - 1e-9 * std::max(1.0, n))));
}

CycleConfig CycleConfig::from_phi_inv(double phi_inv, Complex pump_over_phi) {
  if (!(phi_inv > 0.0) || !std::isfinite(phi_inv)) throw InvalidParameter("phi_inv must be > 0");
  CycleConfig cfg;
  cfg.phi = 1.0 / phi_inv;
  cfg.alpha_p = pump_over_phi * cfg.phi;
  cfg.n_cycles = default_cycle_count(cfg.phi);
  return cfg;
}

void CycleConfig::validate() const {
  require_finite(phi, "phi");
  require_finite(alpha_p.real(), "alpha_p");
  require_finite(alpha_p.imag(), "alpha_p");
  require_finite(cycle_ratio, "cycle_ratio");
  require_finite(gamma_s_signal, "gamma_s_signal");
  require_finite(gamma_s_pump, "gamma_s_pump");
  if (!(phi > 0.0)) throw InvalidParameter("phi must be > 0");
  if (!(cycle_ratio >= 1.0)) throw InvalidParameter("cycle_ratio must be >= 1");
  if (gamma_s_signal < 0.0) throw InvalidParameter("gamma_s_signal must be >= 0");
  if (gamma_s_pump < 0.0) throw InvalidParameter("gamma_s_pump must be >= 0");
  if (n_cycles < 1) throw InvalidParameter("n_cycles must be >= 1");
}

int default_pump_dim(Complex alpha_p, double signal_photons) {
  const int coherent = static_cast<int>(std::ceil(4.0 * std::norm(alpha_p)));
  const int influx = static_cast<int>(std::ceil(std::max(signal_photons, 0.0) / 2.0));
  return std::max(2, coherent + 15 + influx);
}

SynchronousCycle::SynchronousCycle(const CycleConfig& cfg, int signal_dim, int pump_dim,
                                   Propagator propagator)
    : cfg_(cfg), signal_dim_(signal_dim), pump_dim_(pump_dim) {
  cfg_.validate();
  if (signal_dim < 2 || pump_dim < 2) throw InvalidDimension("cycle: mode dims must be >= 2");
  const fock::StateVector pump = fock::coherent_state(cfg_.alpha_p, pump_dim);
  const fock::Operator h = nonlinear_hamiltonian(signal_dim, pump_dim);

  if (!cfg_.lossless()) {
    if (propagator == Propagator::kExact) {
      throw InvalidParameter("cycle: the exact propagator only covers lossless cycles");
    }
    const Dims dims{signal_dim, pump_dim};
    std::vector<LindbladChannel> channels{
        {cfg_.gamma_s_signal, fock::embed(fock::annihilation(signal_dim), fock::kSignal, dims)},
        {cfg_.gamma_s_pump, fock::embed(fock::annihilation(pump_dim), fock::kPump, dims)}};
    generator_ = std::make_shared<const Liouvillian>(h, channels);
    steps_ = rk4_step_count(generator_->spectral_bound(), cfg_.phi, kMinStepsPerCycle);
    pump_state_ = pump.vector() * pump.vector().adjoint();
    return;
  }

  const Matrix psi0 = product_columns(pump.vector(), signal_dim);
  Matrix psi;
  if (propagator == Propagator::kExact) {
    psi = exact_propagate(h.matrix(), psi0, signal_dim, pump_dim, cfg_.phi);
  } else {
    const BandedMatrix hs(h.matrix());
    steps_ = rk4_step_count(hs.norm_bound(), cfg_.phi, kMinStepsPerCycle);
    psi = rk4_schrodinger(hs, psi0, cfg_.phi, steps_);
  }
  kraus_.assign(pump_dim, Matrix(signal_dim, signal_dim));
  for (int k = 0; k < pump_dim; ++k) {
    for (int n = 0; n < signal_dim; ++n) kraus_[k].row(n) = psi.row(n * pump_dim + k);
  }
}

DensityMatrix SynchronousCycle::operator()(const DensityMatrix& rho) const {
  if (rho.dims() != Dims{signal_dim_}) throw ShapeMismatch("cycle: state dims differ from cycle signal dim");
  const Dims dims{signal_dim_};
  if (generator_) {
    Matrix joint = Matrix::Zero(static_cast<Eigen::Index>(signal_dim_) * pump_dim_,
                                static_cast<Eigen::Index>(signal_dim_) * pump_dim_);
    const Matrix& r = rho.matrix();
    for (int i = 0; i < signal_dim_; ++i) {
      for (int j = 0; j < signal_dim_; ++j) {
        joint.block(i * pump_dim_, j * pump_dim_, pump_dim_, pump_dim_) = r(i, j) * pump_state_;
      }
    }
    joint = rk4_evolve(*generator_, std::move(joint), cfg_.phi, steps_);
    Matrix reduced(signal_dim_, signal_dim_);
    for (int i = 0; i < signal_dim_; ++i) {
      for (int j = 0; j < signal_dim_; ++j) {
        reduced(i, j) = joint.block(i * pump_dim_, j * pump_dim_, pump_dim_, pump_dim_).trace();
      }
    }
    return hermitian_part(std::move(reduced), dims);
  }
  Matrix out = Matrix::Zero(signal_dim_, signal_dim_);
  for (const Matrix& k : kraus_) out.noalias() += k * rho.matrix() * k.adjoint();
  return hermitian_part(std::move(out), dims);
}

DensityMatrix unitary_cycle(const DensityMatrix& rho, const CycleConfig& cfg, int pump_dim,
                            Propagator propagator) {
  if (!cfg.lossless()) throw InvalidParameter("unitary_cycle: loss rates must be 0");
  if (rho.dims().size() != 1) throw ShapeMismatch("unitary_cycle: expected a single-mode state");
  return SynchronousCycle(cfg, rho.size(), pump_dim, propagator)(rho);
}

DensityMatrix lossy_cycle(const DensityMatrix& rho, const CycleConfig& cfg, int pump_dim) {
  if (rho.dims().size() != 1) throw ShapeMismatch("lossy_cycle: expected a single-mode state");
  if (cfg.lossless()) {
    // Integrate the joint equation anyway so the lossy path stays comparable.
    cfg.validate();
    fock::check_truncation(cfg.alpha_p, pump_dim);
    const int ds = rho.size();
    const fock::Operator h = nonlinear_hamiltonian(ds, pump_dim);
    const Liouvillian generator(h, {});
    const int steps = rk4_step_count(generator.spectral_bound(), cfg.phi, kMinStepsPerCycle);
    const fock::DensityMatrix joint =
        fock::tensor(rho, DensityMatrix::pure(fock::coherent_state(cfg.alpha_p, pump_dim)));
    Matrix out = rk4_evolve(generator, joint.matrix(), cfg.phi, steps);
    return fock::partial_trace(
        hermitian_part(std::move(out), joint.dims()), fock::kSignal);
  }
  return SynchronousCycle(cfg, rho.size(), pump_dim)(rho);
}

TrajectoryRecord record_state(const analysis::CatFidelitySearch& search, const DensityMatrix& rho,
                              int cycle, double time) {
  const analysis::FidelityResult fit = search(rho);
  TrajectoryRecord rec;
  rec.cycle = cycle;
  rec.time = time;
  rec.f_max = fit.f_max;
  rec.alpha_opt = fit.alpha_opt;
  rec.hit_lower_bound = fit.hit_lower_bound;
  rec.parity = analysis::parity_expectation(rho);
  rec.purity = rho.purity();
  return rec;
}

std::vector<TrajectoryRecord> run_synchronous(const CycleConfig& cfg, int signal_dim, int pump_dim,
                                              const analysis::CatSearchGrid& grid,
                                              const CycleObserver& observer) {
  cfg.validate();
  const SynchronousCycle cycle(cfg, signal_dim, pump_dim);
  const analysis::CatFidelitySearch search(signal_dim, grid);
  DensityMatrix rho = DensityMatrix::vacuum({signal_dim});
  std::vector<TrajectoryRecord> records;
  records.reserve(cfg.n_cycles);
  for (int n = 1; n <= cfg.n_cycles; ++n) {
    rho = cycle(rho);
    records.push_back(record_state(search, rho, n, n * cfg.cycle_time()));
    if (observer) observer(records.back(), rho);
  }
  return records;
}

AdiabaticParams second_order_params(const CycleConfig& cfg) {
  cfg.validate();
  return {kI * cfg.alpha_p / cfg.cycle_ratio, cfg.phi / cfg.cycle_ratio};
}

LindbladChannel second_order_correction(const CycleConfig& cfg, int dim) {
  const AdiabaticParams p = second_order_params(cfg);
  const fock::Operator a = fock::annihilation(dim);
  const fock::Operator a2 = a * a;
  return {p.gamma_d, std::conj(cfg.alpha_p) * a2 + cfg.alpha_p * a2.adjoint()};
}

AdiabaticParams adiabatic_params_from_pump(double omega_p, double g_nl, double gamma_p) {
  if (!(gamma_p > 0.0) || !std::isfinite(gamma_p)) throw InvalidParameter("gamma_p must be > 0");
  require_finite(omega_p, "omega_p");
  require_finite(g_nl, "g_nl");
  return {Complex(2.0 * omega_p * g_nl / gamma_p, 0.0), 4.0 * g_nl * g_nl / gamma_p};
}

}  // namespace catpump::dynamics
