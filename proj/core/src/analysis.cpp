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

#include "catpump/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catpump/error.hpp"
#include "catpump/liouvillian.hpp"

namespace catpump::analysis {
namespace {

void require_single_mode(const DensityMatrix& rho, const char* who) {
  if (rho.dims().size() != 1) {
    throw ShapeMismatch(std::string(who) + ": expected a single-mode density matrix");
  }
}

// Normalized even-index cat coefficients for real amplitude r: entry j is the
// coefficient of |2j>.
Eigen::VectorXd even_cat_coefficients(double r, int dim) {
  const int half = (dim + 1) / 2;
  Eigen::VectorXd c(half);
  if (r == 0.0) {
    c.setZero();
    c(0) = 1.0;
    return c;
  }
  const double log_r = std::log(r);
  for (int j = 0; j < half; ++j) {
    const int n = 2 * j;
    c(j) = n * log_r - 0.5 * std::lgamma(n + 1.0);
  }
  const double peak = c.maxCoeff();
  for (int j = 0; j < half; ++j) c(j) = std::exp(c(j) - peak);
  return c / c.norm();
}

Matrix even_block(const Matrix& rho) {
  const int half = static_cast<int>((rho.rows() + 1) / 2);
  Matrix out(half, half);
  for (int j = 0; j < half; ++j) {
    for (int l = 0; l < half; ++l) out(j, l) = rho(2 * j, 2 * l);
  }
  return out;
}

double even_fidelity(const Matrix& rho_even, const Eigen::VectorXd& coeffs, double theta) {
  const int half = static_cast<int>(coeffs.size());
  Vector v(half);
  for (int j = 0; j < half; ++j) v(j) = coeffs(j) * std::polar(1.0, 2.0 * j * theta);
  return (v.adjoint() * rho_even * v)(0, 0).real();
}

}  // namespace

double fidelity(const DensityMatrix& rho, Complex alpha) {
  require_single_mode(rho, "fidelity");
  const fock::StateVector cat = fock::cat_state(alpha, rho.size());
  return cat.vector().dot(rho.matrix() * cat.vector()).real();
}

double parity_expectation(const DensityMatrix& rho) {
  require_single_mode(rho, "parity_expectation");
  double sum = 0.0;
  for (int n = 0; n < rho.size(); ++n) sum += (n % 2 == 0 ? 1.0 : -1.0) * rho.matrix()(n, n).real();
  return sum;
}

CatFidelitySearch::CatFidelitySearch(int dim, const CatSearchGrid& grid) : dim_(dim), grid_(grid) {
  if (dim < 2) throw InvalidDimension("fidelity search: dim must be >= 2");
  if (!(grid.alpha_min > 0.0)) throw InvalidParameter("fidelity search: alpha_min must be > 0");
  if (grid.n_mag < 2 || grid.n_phase < 2) {
    throw InvalidParameter("fidelity search: magnitude and phase grids need >= 2 points");
  }
  if (!(grid.alpha_max > grid.alpha_min)) {
    throw InvalidParameter("fidelity search: alpha_max must exceed alpha_min");
  }
  const double representable = std::sqrt(dim / 4.0);
  if (representable < grid.alpha_min) {
    throw TruncationInadequate("fidelity search: alpha_min not representable",
                               fock::required_dim(grid.alpha_min));
  }
  grid_.alpha_max = std::min(grid.alpha_max, representable);

  magnitudes_.resize(grid_.n_mag);
  for (int i = 0; i < grid_.n_mag; ++i) {
    magnitudes_[i] = grid_.alpha_min + (grid_.alpha_max - grid_.alpha_min) * i / (grid_.n_mag - 1);
  }
  phases_.resize(grid_.n_phase);
  for (int j = 0; j < grid_.n_phase; ++j) phases_[j] = std::numbers::pi * j / grid_.n_phase;

  even_coeffs_.resize((dim + 1) / 2, grid_.n_mag);
  for (int i = 0; i < grid_.n_mag; ++i) even_coeffs_.col(i) = even_cat_coefficients(magnitudes_[i], dim);
}

double CatFidelitySearch::evaluate(const DensityMatrix& rho, double r, double theta) const {
  require_single_mode(rho, "fidelity search");
  if (rho.size() != dim_) throw ShapeMismatch("fidelity search: state dim differs from search dim");
  return even_fidelity(even_block(rho.matrix()), even_cat_coefficients(r, dim_), theta);
}

FidelityResult CatFidelitySearch::operator()(const DensityMatrix& rho) const {
  require_single_mode(rho, "fidelity search");
  if (rho.size() != dim_) throw ShapeMismatch("fidelity search: state dim differs from search dim");
  const Matrix rho_even = even_block(rho.matrix());
  const int half = static_cast<int>(rho_even.rows());

  // F(r, theta) = sum_{j,l} c_j c_l rho_{2j,2l} e^{2i(l-j) theta}
  //            = d_0 + 2 Re sum_{k>0} d_k e^{2ik theta},  d_k = sum_j c_j c_{j+k} rho_{2j,2j+2k}.
  Matrix phase_table(grid_.n_phase, half);
  for (int p = 0; p < grid_.n_phase; ++p) {
    for (int k = 0; k < half; ++k) phase_table(p, k) = std::polar(1.0, 2.0 * k * phases_[p]);
  }

  double best_f = -1.0;
  int best_mag = 0;
  int best_phase = 0;
  Vector d(half);
  for (int i = 0; i < grid_.n_mag; ++i) {
    const auto c = even_coeffs_.col(i);
    for (int k = 0; k < half; ++k) {
      Complex acc = 0.0;
      for (int j = 0; j + k < half; ++j) acc += c(j) * c(j + k) * rho_even(j, j + k);
      d(k) = acc;
    }
    for (int p = 0; p < grid_.n_phase; ++p) {
      Complex tail = 0.0;
      for (int k = 1; k < half; ++k) tail += d(k) * phase_table(p, k);
      const double f = d(0).real() + 2.0 * tail.real();
      if (f > best_f) {
        best_f = f;
        best_mag = i;
        best_phase = p;
      }
    }
  }

  double r_best = magnitudes_[best_mag];
  const double theta = phases_[best_phase];
  if (grid_.refine) {
    double lo = magnitudes_[std::max(best_mag - 1, 0)];
    double hi = magnitudes_[std::min(best_mag + 1, grid_.n_mag - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f_at = [&](double r) { return even_fidelity(rho_even, even_cat_coefficients(r, dim_), theta); };
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f_at(x1);
    double f2 = f_at(x2);
    while (hi - lo > 1e-8) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = f_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = f_at(x1);
      }
    }
    const double r_star = 0.5 * (lo + hi);
    const double f_star = f_at(r_star);
    if (f_star > best_f) {
      best_f = f_star;
      r_best = r_star;
    }
  }

  FidelityResult result;
  result.f_max = best_f;
  result.alpha_opt = std::polar(r_best, theta);
  result.hit_lower_bound = r_best <= grid_.alpha_min + 1e-6;
  return result;
}

FidelityResult optimal_cat(const DensityMatrix& rho, const CatSearchGrid& grid) {
  require_single_mode(rho, "optimal_cat");
  return CatFidelitySearch(rho.size(), grid)(rho);
}

WignerGridSpec WignerGridSpec::covering(double alpha_magnitude, int points) {
  const double half = std::abs(alpha_magnitude) + 3.0;
  return {-half, half, points, -half, half, points};
}

double WignerGrid::dx() const { return x_axis.size() > 1 ? x_axis[1] - x_axis[0] : 0.0; }
double WignerGrid::dp() const { return p_axis.size() > 1 ? p_axis[1] - p_axis[0] : 0.0; }
double WignerGrid::integral() const { return values.sum() * dx() * dp(); }

WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec) {
  require_single_mode(rho, "wigner");
  if (spec.nx < 2 || spec.np < 2 || !(spec.x_max > spec.x_min) || !(spec.p_max > spec.p_min)) {
    throw InvalidParameter("wigner: grid needs >= 2 points per axis and a positive extent");
  }
  const double reach = std::hypot(std::max(std::abs(spec.x_min), std::abs(spec.x_max)),
                                  std::max(std::abs(spec.p_min), std::abs(spec.p_max)));
  if (reach > kMaxWignerAmplitude) {
    throw TruncationInadequate("wigner: grid reaches |beta| = " + std::to_string(reach) +
                                   " beyond the closed-form evaluation range",
                               fock::required_dim(reach));
  }

  WignerGrid out;
  out.x_axis.resize(spec.nx);
  out.p_axis.resize(spec.np);
  for (int i = 0; i < spec.nx; ++i) out.x_axis[i] = spec.x_min + (spec.x_max - spec.x_min) * i / (spec.nx - 1);
  for (int j = 0; j < spec.np; ++j) out.p_axis[j] = spec.p_min + (spec.p_max - spec.p_min) * j / (spec.np - 1);
  out.values.resize(spec.nx, spec.np);

  const Matrix& r = rho.matrix();
  const int dim = rho.size();
  std::vector<double> lag(dim);
  // <n| D(b) P D(-b) |m> for n = m + k is
  //   (-1)^m (2b)^k sqrt(m!/n!) L_m^{(k)}(4|b|^2) e^{-2|b|^2};
  // the m > n entries follow from Hermiticity.
  for (int i = 0; i < spec.nx; ++i) {
    for (int j = 0; j < spec.np; ++j) {
      const Complex beta(out.x_axis[i], out.p_axis[j]);
      const double x = 4.0 * std::norm(beta);
      const double envelope = std::exp(-2.0 * std::norm(beta));
      const Complex z = 2.0 * beta;
      Complex total = 0.0;
      Complex zk = 1.0;  // (2b)^k / sqrt(k!)
      for (int k = 0; k < dim; ++k) {
        if (k > 0) zk *= z / std::sqrt(static_cast<double>(k));
        const int count = dim - k;
        lag[0] = 1.0;
        if (count > 1) lag[1] = 1.0 + k - x;
        for (int m = 1; m + 1 < count; ++m) {
          lag[m + 1] = ((2.0 * m + 1.0 + k - x) * lag[m] - (m + k) * lag[m - 1]) / (m + 1.0);
        }
        double t = 1.0;  // sqrt(m! k! / (m+k)!)
        for (int m = 0; m < count; ++m) {
          if (m > 0) t *= std::sqrt(static_cast<double>(m) / (m + k));
          const Complex element = (m % 2 == 0 ? 1.0 : -1.0) * t * lag[m] * zk;
          if (k == 0) {
            total += r(m, m) * element;
          } else {
            total += r(m, m + k) * element + r(m + k, m) * std::conj(element);
          }
        }
      }
      total *= envelope * 2.0 / std::numbers::pi;
      out.values(i, j) = total.real();
      out.max_imag_residue = std::max(out.max_imag_residue, std::abs(total.imag()));
    }
  }
  return out;
}

double wigner_displaced_parity(const DensityMatrix& rho, Complex beta, int work_dim) {
  require_single_mode(rho, "wigner_displaced_parity");
  if (work_dim < rho.size()) throw InvalidDimension("wigner_displaced_parity: work_dim below state dim");
  fock::check_truncation(beta, work_dim);
  Matrix padded = Matrix::Zero(work_dim, work_dim);
  padded.topLeftCorner(rho.size(), rho.size()) = rho.matrix();
  const Matrix a = fock::annihilation(work_dim).matrix();
  const Matrix d = dynamics::expm(beta * a.adjoint() - std::conj(beta) * a);
  const Matrix p = fock::parity(work_dim).matrix();
  const Complex value = (padded * d * p * d.adjoint()).trace();
  return 2.0 / std::numbers::pi * value.real();
}

}  // namespace catpump::analysis
