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

// Truncated Fock-space operators and states for one or two bosonic modes.
//
// Joint states are always ordered (signal, pump): the flat index of |n, m>
// is n * pump_dim + m.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace catpump {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<int>;

inline constexpr Complex kI{0.0, 1.0};

namespace fock {

inline constexpr int kSignal = 0;
inline constexpr int kPump = 1;

// Product of the per-mode truncations.
int total_dim(const Dims& dims);

class Operator {
 public:
  Operator(Matrix data, Dims dims);

  const Matrix& matrix() const noexcept { return data_; }
  const Dims& dims() const noexcept { return dims_; }
  int size() const noexcept { return static_cast<int>(data_.rows()); }

  Operator adjoint() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scale);

  friend Operator operator*(const Operator& lhs, const Operator& rhs);
  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(Complex scale, Operator op) { return op *= scale; }

 private:
  Matrix data_;
  Dims dims_;
};

class StateVector {
 public:
  // Throws InvalidParameter unless the norm is 1 within 1e-10.
  StateVector(Vector data, Dims dims);

  // Rescales `data` to unit norm first.
  static StateVector normalized(Vector data, Dims dims);

  const Vector& vector() const noexcept { return data_; }
  const Dims& dims() const noexcept { return dims_; }
  int size() const noexcept { return static_cast<int>(data_.size()); }

  Complex inner(const StateVector& other) const;  // <this|other>
  Complex expectation(const Operator& op) const;

 private:
  Vector data_;
  Dims dims_;
};

struct InvariantReport {
  double hermiticity_error = 0.0;  // max |rho - rho^dag|
  double trace_error = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;

  bool ok(double herm_tol = 1e-10, double trace_tol = 1e-8, double eig_tol = 1e-8) const {
    return hermiticity_error <= herm_tol && trace_error <= trace_tol &&
           min_eigenvalue >= -eig_tol;
  }
};

class DensityMatrix {
 public:
  struct Unchecked {};

  // Validated construction: Hermitian (1e-10), unit trace (1e-8), PSD (-1e-8).
  DensityMatrix(Matrix data, Dims dims);
  // Shape-checked only. Propagators use this and audit with check() in tests.
  DensityMatrix(Matrix data, Dims dims, Unchecked);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix vacuum(const Dims& dims);

  const Matrix& matrix() const noexcept { return data_; }
  const Dims& dims() const noexcept { return dims_; }
  int size() const noexcept { return static_cast<int>(data_.rows()); }

  Complex trace() const { return data_.trace(); }
  double purity() const;
  Complex expectation(const Operator& op) const;
  InvariantReport check() const;

 private:
  Matrix data_;
  Dims dims_;
};

// alpha together with the exact normalization correction 2 exp(-2|alpha|^2).
struct CatParams {
  Complex alpha;
  double epsilon;

  static CatParams from_alpha(Complex alpha);
};

// Smallest truncation that passes the coherent-amplitude guard |alpha|^2 <= dim/4.
int required_dim(Complex alpha);
// Throws TruncationInadequate when the guard fails.
void check_truncation(Complex alpha, int dim);

Operator identity(int dim);
Operator annihilation(int dim);
Operator creation(int dim);
Operator number(int dim);
// (-1)^{a^dag a}
Operator parity(int dim);
// Single-mode operator `op` acting on mode `mode` of the joint space `dims`.
Operator embed(const Operator& op, int mode, const Dims& dims);

StateVector basis_state(int n, int dim);
StateVector coherent_state(Complex alpha, int dim);
StateVector cat_state(Complex alpha, int dim);

Operator tensor(const Operator& a, const Operator& b);
StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Reduced state of a two-mode density matrix on mode `keep`.
DensityMatrix partial_trace(const DensityMatrix& rho, int keep);

// 0.5 * sum of |eigenvalues| of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace fock
}  // namespace catpump
