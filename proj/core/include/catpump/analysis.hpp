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

// Cat-state fidelity, optimal cat size search and Wigner functions of
// single-mode density matrices.

#include <vector>

#include "catpump/fock.hpp"

namespace catpump::analysis {

using fock::DensityMatrix;

// <cat(alpha)| rho |cat(alpha)>
double fidelity(const DensityMatrix& rho, Complex alpha);

double parity_expectation(const DensityMatrix& rho);

struct FidelityResult {
  double f_max = 0.0;
  Complex alpha_opt{};
  bool hit_lower_bound = false;  // maximizer pinned at |alpha| = alpha_min
};

// Search over alpha = r e^{i theta}, r in [alpha_min, alpha_max], theta in [0, pi).
struct CatSearchGrid {
  double alpha_min = 1.2;
  double alpha_max = 4.0;
  int n_mag = 141;  // step 0.02 over [1.2, 4.0]
  int n_phase = 12;
  bool refine = true;  // golden-section polish in r at the best phase
};

// Precomputes the cat amplitudes of a grid for one truncation; reusable
// across many states of that dimension.
class CatFidelitySearch {
 public:
  // alpha_max is lowered to the largest amplitude the truncation represents.
  CatFidelitySearch(int dim, const CatSearchGrid& grid = {});

  FidelityResult operator()(const DensityMatrix& rho) const;

  int dim() const noexcept { return dim_; }
  const CatSearchGrid& grid() const noexcept { return grid_; }
  // Fidelity with cat(r e^{i theta}) for this truncation.
  double evaluate(const DensityMatrix& rho, double r, double theta) const;

 private:
  int dim_;
  CatSearchGrid grid_;
  std::vector<double> magnitudes_;
  std::vector<double> phases_;
  // Even-index cat coefficients per magnitude (column = magnitude).
  Eigen::MatrixXd even_coeffs_;
};

FidelityResult optimal_cat(const DensityMatrix& rho, const CatSearchGrid& grid = {});

struct WignerGridSpec {
  double x_min = -5.0;
  double x_max = 5.0;
  int nx = 101;
  double p_min = -5.0;
  double p_max = 5.0;
  int np = 101;

  // Square grid covering +-(|alpha| + 3) in both quadratures.
  static WignerGridSpec covering(double alpha_magnitude, int points);
};

// W(x, p) with beta = x + i p and the normalization  integral W dx dp = 1.
struct WignerGrid {
  std::vector<double> x_axis;
  std::vector<double> p_axis;
  Eigen::MatrixXd values;  // values(ix, ip)
  double max_imag_residue = 0.0;

  double dx() const;
  double dp() const;
  // Riemann sum of W dx dp.
  double integral() const;
};

// Largest |beta| the closed-form Wigner evaluation accepts.
inline constexpr double kMaxWignerAmplitude = 12.0;

WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec);

// (2/pi) tr[rho D(beta) P D(-beta)] using a displacement exponentiated in a
// space padded to `work_dim`. Independent of wigner(); used to cross-check it.
double wigner_displaced_parity(const DensityMatrix& rho, Complex beta, int work_dim);

}  // namespace catpump::analysis
