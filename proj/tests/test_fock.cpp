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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "catpump/error.hpp"
#include "catpump/fock.hpp"
#include "test_support.hpp"

namespace catpump::fock {
namespace {

using testing::max_abs;

TEST(Annihilation, DimTwoIsTheSingleExcitationLadder) {
  Matrix expected(2, 2);
  expected << 0.0, 1.0, 0.0, 0.0;
  EXPECT_EQ(annihilation(2).matrix(), expected);
}

TEST(Annihilation, NumberOperatorCountsPhotons) {
  const Operator a = annihilation(7);
  const Matrix n = (a.adjoint() * a).matrix();
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(n(k, k).real(), k, 1e-14);
  EXPECT_LT(max_abs(n - Matrix(n.diagonal().asDiagonal())), 1e-14);
}

TEST(Annihilation, TruncatedCommutator) {
  // [a, a^dag] = 1 except at the truncation edge, where it is -(dim - 1).
  const int dim = 9;
  const Operator a = annihilation(dim);
  const Matrix comm = (a * a.adjoint()).matrix() - (a.adjoint() * a).matrix();
  Matrix expected = Matrix::Identity(dim, dim);
  expected(dim - 1, dim - 1) = -(dim - 1.0);
  EXPECT_LT(max_abs(comm - expected), 1e-13);
}

TEST(Annihilation, RejectsDimensionBelowTwo) {
  EXPECT_THROW(annihilation(1), InvalidDimension);
  EXPECT_THROW(annihilation(0), InvalidDimension);
}

TEST(Operator, RejectsShapeAndDims) {
  EXPECT_THROW(Operator(Matrix::Zero(3, 3), {2}), ShapeMismatch);
  EXPECT_THROW(Operator(Matrix::Zero(2, 2), {1, 2}), InvalidDimension);
  EXPECT_THROW(Operator(Matrix::Zero(2, 2), {}), InvalidDimension);
}

TEST(CoherentState, ZeroAmplitudeIsVacuum) {
  const StateVector v = coherent_state(0.0, 6);
  EXPECT_EQ(v.vector(), basis_state(0, 6).vector());
}

TEST(CoherentState, MatchesRecursiveAmplitudes) {
  const Complex alpha{0.7, -1.3};
  EXPECT_LT(max_abs(coherent_state(alpha, 30).vector() - testing::reference_coherent(alpha, 30)), 1e-14);
}

TEST(CoherentState, MeanPhotonNumberWithMargin) {
  for (Complex alpha : {Complex(1.5, 0.0), Complex(0.0, 2.0), Complex(-1.2, 1.9)}) {
    const int dim = static_cast<int>(std::ceil(4.0 * std::norm(alpha))) + 20;
    EXPECT_NEAR(coherent_state(alpha, dim).expectation(number(dim)).real(), std::norm(alpha), 1e-6);
  }
}

TEST(CoherentState, GaussianOverlap) {
  const int dim = 60;
  const Complex alpha{1.1, -0.4};
  const Complex beta{-0.3, 1.7};
  const double overlap = std::norm(coherent_state(alpha, dim).inner(coherent_state(beta, dim)));
  EXPECT_NEAR(overlap, std::exp(-std::norm(alpha - beta)), 1e-6);
}

TEST(CoherentState, GuardNamesRequiredDimension) {
  try {
    coherent_state(Complex(0.0, 2.0), 15);
    FAIL() << "expected TruncationInadequate";
  } catch (const TruncationInadequate& e) {
    EXPECT_EQ(e.required_dim(), 16);
  }
  EXPECT_NO_THROW(coherent_state(Complex(0.0, 2.0), 16));
}

TEST(CatState, ZeroAmplitudeIsVacuum) {
  EXPECT_LT(max_abs(cat_state(0.0, 8).vector() - basis_state(0, 8).vector()), 1e-15);
}

TEST(CatState, OddComponentsVanish) {
  const StateVector cat = cat_state(Complex(0.0, 2.0), 40);
  for (int n = 1; n < 40; n += 2) EXPECT_EQ(cat.vector()(n), Complex(0.0));
}

TEST(CatState, VacuumOverlapClosedForm) {
  // |<0|cat(a)>|^2 = 4 e^{-|a|^2} / (2 + 2 e^{-2|a|^2})
  const double closed = 4.0 * std::exp(-4.0) / (2.0 + 2.0 * std::exp(-8.0));
  const double overlap = std::norm(cat_state(2.0, 40).vector()(0));
  EXPECT_NEAR(overlap, closed, 1e-12);
  EXPECT_NEAR(overlap, 0.03664, 1e-4);
}

TEST(CatState, MatchesNormalizedSuperposition) {
  const Complex alpha{0.4, 1.6};
  EXPECT_LT(max_abs(cat_state(alpha, 40).vector() - testing::reference_cat(alpha, 40)), 1e-14);
}

TEST(CatParams, EpsilonIsExactNormalization) {
  const Complex alpha{0.3, 0.8};
  const CatParams p = CatParams::from_alpha(alpha);
  EXPECT_DOUBLE_EQ(p.epsilon, 2.0 * std::exp(-2.0 * std::norm(alpha)));
  // 1/sqrt(2 + eps) normalizes |alpha> + |-alpha> with untruncated coherent states.
  const int dim = 60;
  const Vector sum = testing::reference_coherent(alpha, dim) + testing::reference_coherent(-alpha, dim);
  EXPECT_NEAR(sum.norm() / std::sqrt(2.0 + p.epsilon), 1.0, 1e-12);
}

TEST(StateVector, RejectsUnnormalizedData) {
  Vector v = Vector::Zero(3);
  v(0) = 1.1;
  EXPECT_THROW(StateVector(v, {3}), InvalidParameter);
  EXPECT_NO_THROW(StateVector::normalized(v, {3}));
}

TEST(Tensor, IdentityTimesIdentity) {
  EXPECT_EQ(tensor(identity(3), identity(4)).matrix(), identity(12).matrix());
  EXPECT_EQ(tensor(identity(3), identity(4)).dims(), (Dims{3, 4}));
}

TEST(Tensor, DisjointSupportsCommute) {
  const Operator a = tensor(annihilation(5), identity(4));
  const Operator b = tensor(identity(5), annihilation(4));
  EXPECT_LT(max_abs((a * b).matrix() - (b * a).matrix()), 1e-15);
}

TEST(Tensor, SignalThenPumpOrdering) {
  // |n, m> sits at n * pump_dim + m.
  const StateVector v = tensor(basis_state(2, 3), basis_state(1, 4));
  EXPECT_EQ(v.vector()(2 * 4 + 1), Complex(1.0));
  const Operator a = embed(annihilation(3), kSignal, {3, 4});
  EXPECT_EQ(a.matrix(), tensor(annihilation(3), identity(4)).matrix());
  const Operator b = embed(annihilation(4), kPump, {3, 4});
  EXPECT_EQ(b.matrix(), tensor(identity(3), annihilation(4)).matrix());
}

TEST(Tensor, TraceFactorizes) {
  std::mt19937_64 rng(5);
  const Operator a(testing::random_matrix(rng, 3, 3), {3});
  const Operator b(testing::random_matrix(rng, 5, 5), {5});
  EXPECT_LT(std::abs(tensor(a, b).matrix().trace() - a.matrix().trace() * b.matrix().trace()), 1e-12);
}

TEST(Embed, RejectsBadModeIndex) {
  EXPECT_THROW(embed(annihilation(3), 2, {3, 4}), ModeIndexError);
  EXPECT_THROW(embed(annihilation(3), kPump, {3, 4}), ShapeMismatch);
}

TEST(PartialTrace, ProductStateFactors) {
  std::mt19937_64 rng(6);
  const DensityMatrix a = testing::random_density(rng, {4});
  const DensityMatrix b = testing::random_density(rng, {3});
  EXPECT_LT(max_abs(partial_trace(tensor(a, b), kSignal).matrix() - a.matrix()), 1e-12);
  EXPECT_LT(max_abs(partial_trace(tensor(a, b), kPump).matrix() - b.matrix()), 1e-12);
}

TEST(PartialTrace, BellStateReducesToMaximallyMixed) {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  const DensityMatrix rho = DensityMatrix::pure(StateVector(v, {2, 2}));
  Matrix half = Matrix::Identity(2, 2) * 0.5;
  EXPECT_LT(max_abs(partial_trace(rho, kSignal).matrix() - half), 1e-15);
  EXPECT_LT(max_abs(partial_trace(rho, kPump).matrix() - half), 1e-15);
}

TEST(PartialTrace, PreservesTrace) {
  std::mt19937_64 rng(7);
  const DensityMatrix rho = testing::random_density(rng, {5, 3});
  EXPECT_NEAR(partial_trace(rho, kSignal).trace().real(), 1.0, 1e-12);
  EXPECT_NEAR(partial_trace(rho, kPump).trace().real(), 1.0, 1e-12);
}

TEST(PartialTrace, RejectsBadIndexAndSingleMode) {
  std::mt19937_64 rng(8);
  const DensityMatrix rho = testing::random_density(rng, {2, 3});
  EXPECT_THROW(partial_trace(rho, 2), ModeIndexError);
  EXPECT_THROW(partial_trace(DensityMatrix::vacuum({4}), kSignal), ShapeMismatch);
}

TEST(DensityMatrix, ValidatesInvariants) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  EXPECT_NO_THROW(DensityMatrix(m, {2}));
  Matrix not_hermitian = m;
  not_hermitian(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix(not_hermitian, {2}), InvalidParameter);
  EXPECT_THROW(DensityMatrix(2.0 * m, {2}), InvalidParameter);
  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  EXPECT_THROW(DensityMatrix(negative, {2}), InvalidParameter);
  EXPECT_THROW(DensityMatrix(m, {3}), ShapeMismatch);
}

TEST(DensityMatrix, PurityAndExpectation) {
  const DensityMatrix rho = DensityMatrix::pure(coherent_state(Complex(0.5, 0.5), 12));
  EXPECT_NEAR(rho.purity(), 1.0, 1e-14);
  const Complex mean_a = rho.expectation(annihilation(12));
  EXPECT_NEAR(mean_a.real(), 0.5, 1e-8);
  EXPECT_NEAR(mean_a.imag(), 0.5, 1e-8);
}

TEST(TraceDistance, DiagonalStatesGiveHalfL1) {
  Matrix p = Matrix::Zero(3, 3);
  Matrix q = Matrix::Zero(3, 3);
  p.diagonal() << 0.5, 0.3, 0.2;
  q.diagonal() << 0.1, 0.6, 0.3;
  const double expected = 0.5 * (0.4 + 0.3 + 0.1);
  EXPECT_NEAR(trace_distance(DensityMatrix(p, {3}), DensityMatrix(q, {3})), expected, 1e-14);
}

TEST(TraceDistance, OrthogonalPureStatesAreDistanceOne) {
  EXPECT_NEAR(trace_distance(DensityMatrix::pure(basis_state(0, 4)), DensityMatrix::pure(basis_state(3, 4))), 1.0,
              1e-14);
}

}  // namespace
}  // namespace catpump::fock
