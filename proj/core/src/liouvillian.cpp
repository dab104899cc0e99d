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

#include "catpump/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "catpump/error.hpp"

namespace catpump::dynamics {

BandedMatrix::BandedMatrix(const Matrix& m, double drop_tol) : n_(static_cast<int>(m.rows())) {
  if (m.rows() != m.cols()) throw ShapeMismatch("banded matrix must be square");
  for (int offset = -(n_ - 1); offset <= n_ - 1; ++offset) {
    const int first = std::max(0, -offset);
    const int len = n_ - std::abs(offset);
    Vector v(len);
    bool keep = false;
    for (int i = 0; i < len; ++i) {
      v(i) = m(first + i, first + i + offset);
      keep = keep || std::abs(v(i)) > drop_tol;
    }
    if (keep) bands_.push_back({offset, std::move(v), first});
  }
}

Matrix BandedMatrix::to_dense() const {
  Matrix m = Matrix::Zero(n_, n_);
  for (const Band& b : bands_) {
    for (int i = 0; i < b.values.size(); ++i) m(b.first_row + i, b.first_row + i + b.offset) = b.values(i);
  }
  return m;
}

BandedMatrix BandedMatrix::adjoint() const {
  BandedMatrix out;
  out.n_ = n_;
  for (auto it = bands_.rbegin(); it != bands_.rend(); ++it) {
    out.bands_.push_back({-it->offset, it->values.conjugate(), it->first_row + it->offset});
  }
  return out;
}

void BandedMatrix::multiply(const Matrix& x, Matrix& out, Complex scale, bool accumulate) const {
  if (!accumulate) out.setZero(n_, x.cols());
  for (const Band& b : bands_) {
    const int len = static_cast<int>(b.values.size());
    // (A x)(r, :) += A(r, r + offset) x(r + offset, :)
    const Vector w = scale * b.values;
    out.middleRows(b.first_row, len).noalias() += w.asDiagonal() * x.middleRows(b.first_row + b.offset, len);
  }
}

void BandedMatrix::multiply_adjoint_right(const Matrix& x, Matrix& out, Complex scale) const {
  for (const Band& b : bands_) {
    const int len = static_cast<int>(b.values.size());
    // (x A^dag)(:, c) += conj(A(c, c + offset)) x(:, c + offset)
    const Vector w = scale * b.values.conjugate();
    for (int i = 0; i < len; ++i) out.col(b.first_row + i) += w(i) * x.col(b.first_row + b.offset + i);
  }
}

double BandedMatrix::norm_bound() const {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(n_);
  Eigen::VectorXd cols = Eigen::VectorXd::Zero(n_);
  for (const Band& b : bands_) {
    for (int i = 0; i < b.values.size(); ++i) {
      const double a = std::abs(b.values(i));
      rows(b.first_row + i) += a;
      cols(b.first_row + i + b.offset) += a;
    }
  }
  if (n_ == 0) return 0.0;
  return std::sqrt(rows.maxCoeff() * cols.maxCoeff());
}

Liouvillian::Liouvillian(const fock::Operator& hamiltonian,
                         const std::vector<LindbladChannel>& channels)
    : dims_(hamiltonian.dims()) {
  Matrix h_eff = hamiltonian.matrix();
  double dissipative_bound = 0.0;
  for (const auto& ch : channels) {
    if (!(ch.rate >= 0.0)) throw InvalidParameter("Lindblad rate must be nonnegative");
    if (ch.op.dims() != dims_) throw ShapeMismatch("Lindblad operator dims differ from Hamiltonian");
    if (ch.rate == 0.0) continue;
    const Matrix& a = ch.op.matrix();
    h_eff -= Complex(0.0, 0.5 * ch.rate) * (a.adjoint() * a);
    Jump j{ch.rate, BandedMatrix(a), {}};
    if (j.op.band_count() == 1) {
      const Vector& v = j.op.bands().front().values;
      j.weight = ch.rate * (v * v.adjoint());
    }
    const double n = j.op.norm_bound();
    dissipative_bound += ch.rate * n * n;
    jumps_.push_back(std::move(j));
  }
  h_eff_ = BandedMatrix(h_eff);
  // |lambda| <= ||H_eff rho - rho H_eff^dag|| + sum rate ||A||^2.
  bound_ = 2.0 * h_eff_.norm_bound() + dissipative_bound;
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  if (rho.rows() != size() || rho.cols() != size()) {
    throw ShapeMismatch("rho has " + std::to_string(rho.rows()) + " rows, generator " +
                        std::to_string(size()));
  }
  // -i H_eff rho + i rho H_eff^dag
  Matrix out;
  h_eff_.multiply(rho, out, Complex(0.0, -1.0), false);
  h_eff_.multiply_adjoint_right(rho, out, Complex(0.0, 1.0));
  add_jumps(rho, out);
  return out;
}

void Liouvillian::apply_hermitian(const Matrix& rho, Matrix& out) const {
  // For Hermitian rho the commutator part is X + X^dag with X = -i H_eff rho.
  h_eff_.multiply(rho, out, Complex(0.0, -1.0), false);
  out += out.adjoint().eval();
  add_jumps(rho, out);
}

void Liouvillian::add_jumps(const Matrix& rho, Matrix& out) const {
  Matrix tmp;
  for (const auto& j : jumps_) {
    if (j.weight.size() > 0) {
      const auto& band = j.op.bands().front();
      const int len = static_cast<int>(band.values.size());
      const int r0 = band.first_row;
      out.block(r0, r0, len, len).array() +=
          j.weight.array() * rho.block(r0 + band.offset, r0 + band.offset, len, len).array();
      continue;
    }
    j.op.multiply(rho, tmp, 1.0, false);
    j.op.multiply_adjoint_right(tmp, out, j.rate);
  }
}

namespace {

// Replaces rho by (rho + rho^dag) / 2. apply_hermitian() is only a valid
// generator on Hermitian input: on an anti-Hermitian component it flips the
// sign of the dissipative anticommutator, so rounding noise there would grow.
void hermitize(Matrix& rho) {
  const Eigen::Index n = rho.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    rho(j, j) = rho(j, j).real();
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const Complex avg = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
      rho(i, j) = avg;
      rho(j, i) = std::conj(avg);
    }
  }
}

}  // namespace

int rk4_step_count(double spectral_bound, double duration, int min_steps) {
  const double needed = std::ceil(duration * spectral_bound / kRk4StabilityLimit);
  return std::max(min_steps, static_cast<int>(needed));
}

Matrix rk4_evolve(const Liouvillian& generator, Matrix rho, double duration, int steps,
                  const StepObserver& observer) {
  if (steps < 1) throw InvalidParameter("RK4 needs at least one step");
  const double dt = duration / steps;
  const double bound = generator.spectral_bound();
  if (dt * bound > kRk4StabilityLimit) {
    const double suggested = kRk4StabilityLimit / bound;
    throw IntegratorError("RK4 step " + std::to_string(dt) + " exceeds the stability limit " +
                              std::to_string(suggested) + " (generator bound " +
                              std::to_string(bound) + ")",
                          dt, suggested);
  }
  const int n = generator.size();
  Matrix k(n, n), acc(n, n), stage(n, n);
  hermitize(rho);
  for (int s = 0; s < steps; ++s) {
    generator.apply_hermitian(rho, k);
    acc = k;
    stage = rho + (0.5 * dt) * k;
    generator.apply_hermitian(stage, k);
    acc += 2.0 * k;
    stage = rho + (0.5 * dt) * k;
    generator.apply_hermitian(stage, k);
    acc += 2.0 * k;
    stage = rho + dt * k;
    generator.apply_hermitian(stage, k);
    acc += k;
    rho += (dt / 6.0) * acc;
    hermitize(rho);
    if (!rho.allFinite()) {
      throw IntegratorError("non-finite state after step " + std::to_string(s + 1), dt, 0.5 * dt);
    }
    if (observer) observer(s + 1, (s + 1) * dt, rho);
  }
  return rho;
}

Matrix rk4_schrodinger(const BandedMatrix& hamiltonian, Matrix psi, double duration, int steps) {
  if (steps < 1) throw InvalidParameter("RK4 needs at least one step");
  const double dt = duration / steps;
  const double bound = hamiltonian.norm_bound();
  if (dt * bound > kRk4StabilityLimit) {
    const double suggested = kRk4StabilityLimit / bound;
    throw IntegratorError("RK4 step exceeds the stability limit for the Hamiltonian", dt,
                          suggested);
  }
  const Complex mi(0.0, -1.0);
  Matrix k(psi.rows(), psi.cols()), acc(psi.rows(), psi.cols()), stage(psi.rows(), psi.cols());
  for (int s = 0; s < steps; ++s) {
    hamiltonian.multiply(psi, k, mi, false);
    acc = k;
    stage = psi + (0.5 * dt) * k;
    hamiltonian.multiply(stage, k, mi, false);
    acc += 2.0 * k;
    stage = psi + (0.5 * dt) * k;
    hamiltonian.multiply(stage, k, mi, false);
    acc += 2.0 * k;
    stage = psi + dt * k;
    hamiltonian.multiply(stage, k, mi, false);
    acc += k;
    psi += (dt / 6.0) * acc;
  }
  if (!psi.allFinite()) throw IntegratorError("non-finite state vector", dt, 0.5 * dt);
  return psi;
}

Matrix expm(const Matrix& m) { return m.exp(); }

}  // namespace catpump::dynamics
