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

// Lindblad generators on truncated Fock spaces and the fixed-step RK4 and
// exact-exponential propagators built on them.
//
// Ladder operators, their products and tensor embeddings occupy only a few
// diagonals, so the generator stores every operator by diagonals and applies
// it as shifted, rescaled copies of whole rows or columns.

#include <functional>
#include <vector>

#include "catpump/fock.hpp"

namespace catpump::dynamics {

// Square matrix stored as its nonzero diagonals.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  // Keeps every diagonal holding an entry with modulus above drop_tol.
  explicit BandedMatrix(const Matrix& m, double drop_tol = 0.0);

  int size() const noexcept { return n_; }
  int band_count() const noexcept { return static_cast<int>(bands_.size()); }
  Matrix to_dense() const;
  BandedMatrix adjoint() const;

  // out = scale * A x, or out += scale * A x when `accumulate`. out must not alias x.
  void multiply(const Matrix& x, Matrix& out, Complex scale, bool accumulate) const;
  // out += scale * x A^dag. out must not alias x.
  void multiply_adjoint_right(const Matrix& x, Matrix& out, Complex scale) const;

  // sqrt(||A||_1 ||A||_inf), an upper bound on the spectral norm.
  double norm_bound() const;

  struct Band {
    int offset;     // column - row
    Vector values;  // values(i) = A(first_row + i, first_row + i + offset)
    int first_row;
  };
  const std::vector<Band>& bands() const noexcept { return bands_; }

 private:
  int n_ = 0;
  std::vector<Band> bands_;
};

// Contributes (rate / 2) * (2 A rho A^dag - A^dag A rho - rho A^dag A).
struct LindbladChannel {
  double rate;
  fock::Operator op;
};

class Liouvillian {
 public:
  Liouvillian(const fock::Operator& hamiltonian, const std::vector<LindbladChannel>& channels);

  const Dims& dims() const noexcept { return dims_; }
  int size() const noexcept { return h_eff_.size(); }

  // d(rho)/dt for an arbitrary square rho.
  Matrix apply(const Matrix& rho) const;
  // Same value, assuming rho is Hermitian. `out` must not alias rho.
  void apply_hermitian(const Matrix& rho, Matrix& out) const;

  // Upper bound on |lambda| over the generator spectrum.
  double spectral_bound() const noexcept { return bound_; }

 private:
  struct Jump {
    double rate;
    BandedMatrix op;
    // Single-band operators: A rho A^dag is a weighted, shifted block of rho.
    Matrix weight;  // rate * v v^dag
  };

  void add_jumps(const Matrix& rho, Matrix& out) const;

  Dims dims_;
  BandedMatrix h_eff_;  // H - (i/2) sum_k rate_k A_k^dag A_k
  std::vector<Jump> jumps_;
  double bound_ = 0.0;
};

// Largest step for which h * bound stays inside the RK4 stability region.
inline constexpr double kRk4StabilityLimit = 2.5;

// Step count for `duration`: at least `min_steps`, and enough for stability.
int rk4_step_count(double spectral_bound, double duration, int min_steps);

using StepObserver = std::function<void(int step, double time, const Matrix& rho)>;

// Classical RK4 with `steps` equal steps over `duration`. The observer (if any)
// sees the state after every step. Throws IntegratorError on an unstable step
// or a non-finite state.
Matrix rk4_evolve(const Liouvillian& generator, Matrix rho, double duration, int steps,
                  const StepObserver& observer = {});

// RK4 for a block of state vectors, d(psi)/dt = -i H psi.
Matrix rk4_schrodinger(const BandedMatrix& hamiltonian, Matrix psi, double duration, int steps);

// Dense matrix exponential (Pade scaling-and-squaring).
Matrix expm(const Matrix& m);

}  // namespace catpump::dynamics
