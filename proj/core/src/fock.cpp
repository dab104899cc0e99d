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

#include "catpump/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catpump/error.hpp"

namespace catpump::fock {
namespace {

void validate_dims(const Dims& dims) {
  if (dims.empty()) throw InvalidDimension("dims must name at least one mode");
  for (int d : dims) {
    if (d < 2) throw InvalidDimension("mode truncation " + std::to_string(d) + " < 2");
  }
}

void require_same_dims(const Dims& a, const Dims& b, const char* what) {
  if (a != b) throw ShapeMismatch(std::string(what) + ": dims differ");
}

std::string dims_string(const Dims& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += "x";
    out += std::to_string(dims[i]);
  }
  return out;
}

Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Components alpha^n / sqrt(n!) in log space, unnormalized.
Vector coherent_components(Complex alpha, int dim) {
  Vector v = Vector::Zero(dim);
  const double r = std::abs(alpha);
  if (r == 0.0) {
    v(0) = 1.0;
    return v;
  }
  const double log_r = std::log(r);
  const double theta = std::arg(alpha);
  // Shift by the log of the largest magnitude to keep everything finite.
  double max_log = -INFINITY;
  std::vector<double> logs(dim);
  for (int n = 0; n < dim; ++n) {
    logs[n] = n * log_r - 0.5 * std::lgamma(n + 1.0);
    max_log = std::max(max_log, logs[n]);
  }
  for (int n = 0; n < dim; ++n) {
    v(n) = std::polar(std::exp(logs[n] - max_log), n * theta);
  }
  return v;
}

}  // namespace

int total_dim(const Dims& dims) {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Matrix data, Dims dims) : data_(std::move(data)), dims_(std::move(dims)) {
  validate_dims(dims_);
  const int n = total_dim(dims_);
  if (data_.rows() != n || data_.cols() != n) {
    throw ShapeMismatch("operator matrix is " + std::to_string(data_.rows()) + "x" +
                        std::to_string(data_.cols()) + ", dims " + dims_string(dims_) +
                        " need " + std::to_string(n));
  }
}

Operator Operator::adjoint() const { return Operator(data_.adjoint(), dims_); }

Operator& Operator::operator+=(const Operator& other) {
  require_same_dims(dims_, other.dims_, "operator sum");
  data_ += other.data_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_dims(dims_, other.dims_, "operator difference");
  data_ -= other.data_;
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  data_ *= scale;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_dims(lhs.dims_, rhs.dims_, "operator product");
  return Operator(lhs.data_ * rhs.data_, lhs.dims_);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Vector data, Dims dims) : data_(std::move(data)), dims_(std::move(dims)) {
  validate_dims(dims_);
  if (data_.size() != total_dim(dims_)) {
    throw ShapeMismatch("state vector length does not match dims " + dims_string(dims_));
  }
  if (std::abs(data_.norm() - 1.0) > 1e-10) {
    throw InvalidParameter("state vector norm " + std::to_string(data_.norm()) + " != 1");
  }
}

StateVector StateVector::normalized(Vector data, Dims dims) {
  const double norm = data.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidParameter("cannot normalize a zero vector");
  data /= norm;
  return StateVector(std::move(data), std::move(dims));
}

Complex StateVector::inner(const StateVector& other) const {
  require_same_dims(dims_, other.dims_, "inner product");
  return data_.dot(other.data_);
}

Complex StateVector::expectation(const Operator& op) const {
  require_same_dims(dims_, op.dims(), "expectation");
  return data_.dot(op.matrix() * data_);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix data, Dims dims, Unchecked)
    : data_(std::move(data)), dims_(std::move(dims)) {
  validate_dims(dims_);
  const int n = total_dim(dims_);
  if (data_.rows() != n || data_.cols() != n) {
    throw ShapeMismatch("density matrix shape does not match dims " + dims_string(dims_));
  }
}

DensityMatrix::DensityMatrix(Matrix data, Dims dims)
    : DensityMatrix(std::move(data), std::move(dims), Unchecked{}) {
  const InvariantReport r = check();
  if (!r.ok()) {
    throw InvalidParameter("not a density matrix: hermiticity error " +
                           std::to_string(r.hermiticity_error) + ", trace error " +
                           std::to_string(r.trace_error) + ", min eigenvalue " +
                           std::to_string(r.min_eigenvalue));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.vector() * psi.vector().adjoint(), psi.dims(), Unchecked{});
}

DensityMatrix DensityMatrix::vacuum(const Dims& dims) {
  validate_dims(dims);
  const int n = total_dim(dims);
  Matrix m = Matrix::Zero(n, n);
  m(0, 0) = 1.0;
  return DensityMatrix(std::move(m), dims, Unchecked{});
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return data_.squaredNorm();
}

Complex DensityMatrix::expectation(const Operator& op) const {
  require_same_dims(dims_, op.dims(), "expectation");
  // tr(rho A) without forming the product.
  return (data_.transpose().array() * op.matrix().array()).sum();
}

InvariantReport DensityMatrix::check() const {
  InvariantReport r;
  r.hermiticity_error = (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
  r.trace_error = std::abs(data_.trace() - 1.0);
  const Matrix herm = 0.5 * (data_ + data_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

// ---------------------------------------------------------------------------
// Cat parameters and truncation guard

CatParams CatParams::from_alpha(Complex alpha) {
  return CatParams{alpha, 2.0 * std::exp(-2.0 * std::norm(alpha))};
}

int required_dim(Complex alpha) {
  return std::max(2, static_cast<int>(std::ceil(4.0 * std::norm(alpha) - 1e-12)));
}

void check_truncation(Complex alpha, int dim) {
  if (dim < 2) throw InvalidDimension("mode truncation " + std::to_string(dim) + " < 2");
  if (std::norm(alpha) > dim / 4.0 + 1e-12) {
    throw TruncationInadequate("|alpha|^2 = " + std::to_string(std::norm(alpha)) +
                                   " exceeds dim/4 for dim " + std::to_string(dim),
                               required_dim(alpha));
  }
}

// ---------------------------------------------------------------------------
// Single-mode operators

Operator identity(int dim) {
  if (dim < 2) throw InvalidDimension("mode truncation " + std::to_string(dim) + " < 2");
  return Operator(Matrix::Identity(dim, dim), {dim});
}

Operator annihilation(int dim) {
  if (dim < 2) throw InvalidDimension("mode truncation " + std::to_string(dim) + " < 2");
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(m), {dim});
}

Operator creation(int dim) { return annihilation(dim).adjoint(); }

Operator number(int dim) {
  if (dim < 2) throw InvalidDimension("mode truncation " + std::to_string(dim) + " < 2");
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return Operator(std::move(m), {dim});
}

Operator parity(int dim) {
  if (dim < 2) throw InvalidDimension("mode truncation " + std::to_string(dim) + " < 2");
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return Operator(std::move(m), {dim});
}

Operator embed(const Operator& op, int mode, const Dims& dims) {
  validate_dims(dims);
  if (mode < 0 || mode >= static_cast<int>(dims.size())) {
    throw ModeIndexError("mode " + std::to_string(mode) + " outside dims " + dims_string(dims));
  }
  if (op.dims().size() != 1 || op.dims()[0] != dims[mode]) {
    throw ShapeMismatch("embedded operator does not match mode truncation");
  }
  Operator out = (mode == 0) ? op : identity(dims[0]);
  for (int k = 1; k < static_cast<int>(dims.size()); ++k) {
    out = tensor(out, k == mode ? op : identity(dims[k]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// States

StateVector basis_state(int n, int dim) {
  if (dim < 2) throw InvalidDimension("mode truncation " + std::to_string(dim) + " < 2");
  if (n < 0 || n >= dim) throw InvalidParameter("Fock level outside truncation");
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return StateVector(std::move(v), {dim});
}

StateVector coherent_state(Complex alpha, int dim) {
  check_truncation(alpha, dim);
  return StateVector::normalized(coherent_components(alpha, dim), {dim});
}

StateVector cat_state(Complex alpha, int dim) {
  check_truncation(alpha, dim);
  // cat(alpha) = cat(-alpha): build from one representative of the pair so
  // the symmetry holds bit for bit.
  if (alpha.real() < 0.0 || (alpha.real() == 0.0 && alpha.imag() < 0.0)) alpha = -alpha;
  // |alpha> + |-alpha> keeps only the even components, doubled.
  Vector v = coherent_components(alpha, dim);
  for (int n = 1; n < dim; n += 2) v(n) = 0.0;
  return StateVector::normalized(std::move(v), {dim});
}

// ---------------------------------------------------------------------------
// Tensor products and partial trace

Operator tensor(const Operator& a, const Operator& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return Operator(std::move(out), concat(a.dims(), b.dims()));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const Vector& x = a.vector();
  const Vector& y = b.vector();
  Vector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return StateVector::normalized(std::move(out), concat(a.dims(), b.dims()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return DensityMatrix(std::move(out), concat(a.dims(), b.dims()), DensityMatrix::Unchecked{});
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
  const Dims& dims = rho.dims();
  if (dims.size() != 2) throw ShapeMismatch("partial_trace needs a two-mode state");
  if (keep != kSignal && keep != kPump) {
    throw ModeIndexError("keep index " + std::to_string(keep) + " outside {0, 1}");
  }
  const int ds = dims[0];
  const int dp = dims[1];
  const Matrix& m = rho.matrix();
  if (keep == kSignal) {
    Matrix out = Matrix::Zero(ds, ds);
    for (int j = 0; j < ds; ++j) {
      for (int i = 0; i < ds; ++i) {
        out(i, j) = m.block(i * dp, j * dp, dp, dp).trace();
      }
    }
    return DensityMatrix(std::move(out), {ds}, DensityMatrix::Unchecked{});
  }
  Matrix out = Matrix::Zero(dp, dp);
  for (int n = 0; n < ds; ++n) out += m.block(n * dp, n * dp, dp, dp);
  return DensityMatrix(std::move(out), {dp}, DensityMatrix::Unchecked{});
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dims(a.dims(), b.dims(), "trace distance");
  const Matrix diff = a.matrix() - b.matrix();
  const Matrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace catpump::fock
