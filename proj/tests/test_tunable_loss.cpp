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
#include <vector>

#include <gtest/gtest.h>

#include "catpump/dynamics.hpp"
#include "catpump/error.hpp"
#include "catpump/fock.hpp"
#include "catpump/tunable_loss.hpp"
#include "test_support.hpp"

namespace catpump::tunable_loss {
namespace {

using testing::max_abs;

TEST(EffectiveLoss, DetunedChannelIsSuppressed) {
  // g = Gamma = 10 MHz, Delta = 1 GHz: 1e21 / (1e18 + 1e14) and -1e23 / (1e18 + 1e14).
  const EffectiveLoss e = effective_loss_shift({1e7, 1e7, 1e9});
  EXPECT_NEAR(e.kappa_eff, 1e21 / (1e18 + 1e14), 1e-9);
  EXPECT_NEAR(e.kappa_eff, 999.90001, 1e-5);
  EXPECT_NEAR(e.delta_shift, -99990.001, 1e-3);
  // About 0.01 g_nl for g_nl = 100 kHz, with a ~100 kHz frequency shift.
  EXPECT_NEAR(e.kappa_eff / 1e5, 0.01, 1e-4);
  EXPECT_NEAR(std::abs(e.delta_shift), 1e5, 100.0);
}

TEST(EffectiveLoss, NearResonantChannelIsMegahertz) {
  const EffectiveLoss e = effective_loss_shift({1e7, 1e7, 3e7});
  EXPECT_NEAR(e.kappa_eff, 1e6, 1e-6);
  EXPECT_NEAR(e.delta_shift, -3e6, 1e-6);
}

TEST(EffectiveLoss, Limits) {
  const EffectiveLoss resonant = effective_loss_shift({2e6, 5e6, 0.0});
  EXPECT_NEAR(resonant.kappa_eff, 4e12 / 5e6, 1e-9);
  EXPECT_EQ(resonant.delta_shift, 0.0);
  const EffectiveLoss far = effective_loss_shift({1e7, 1e7, 1e15});
  EXPECT_LT(far.kappa_eff, 1e-8);
  EXPECT_LT(std::abs(far.delta_shift), 1e-1);
  const EffectiveLoss off = effective_loss_shift({0.0, 1e7, 1e8});
  EXPECT_EQ(off.kappa_eff, 0.0);
}

TEST(EffectiveLoss, RejectsInvalidChannels) {
  EXPECT_THROW(effective_loss_shift({1e7, 0.0, 0.0}), InvalidParameter);
  EXPECT_THROW(effective_loss_shift({-1.0, 1e7, 0.0}), InvalidParameter);
  EXPECT_THROW(effective_loss_shift({1e7, 1e7, std::nan("")}), InvalidParameter);
}

TEST(AmplitudeDamping, KrausOperatorsAreComplete) {
  for (const double eta : {0.0, 0.3, 0.9, 1.0}) {
    const auto kraus = amplitude_damping_kraus(eta, 9);
    Matrix sum = Matrix::Zero(9, 9);
    for (const Matrix& k : kraus) sum += k.adjoint() * k;
    EXPECT_LT(max_abs(sum - Matrix::Identity(9, 9)), 1e-14) << "eta=" << eta;
  }
}

TEST(AmplitudeDamping, FockPopulationsAreBinomial) {
  const double eta = 0.35;
  const int n = 6;
  const auto kraus = amplitude_damping_kraus(eta, 10);
  const Vector in = fock::basis_state(n, 10).vector();
  for (int k = 0; k <= n; ++k) {
    const double p = (kraus[k] * in).squaredNorm();
    const double expected = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)) *
                            std::pow(eta, n - k) * std::pow(1.0 - eta, k);
    EXPECT_NEAR(p, expected, 1e-14) << "k=" << k;
  }
}

TEST(AmplitudeDamping, CoherentStateShrinks) {
  // A coherent state stays coherent with amplitude sqrt(eta) alpha.
  const Complex alpha(0.8, -0.6);
  const double eta = 0.4;
  const Vector in = testing::reference_coherent(alpha, 30);
  Matrix out = Matrix::Zero(30, 30);
  for (const Matrix& k : amplitude_damping_kraus(eta, 30)) out += k * in * in.adjoint() * k.adjoint();
  const Vector expected = testing::reference_coherent(std::sqrt(eta) * alpha, 30);
  EXPECT_LT(max_abs(out - expected * expected.adjoint()), 1e-12);
}

TEST(AmplitudeDamping, RejectsInvalidArguments) {
  EXPECT_THROW(amplitude_damping_kraus(1.5, 4), InvalidParameter);
  EXPECT_THROW(amplitude_damping_kraus(-0.1, 4), InvalidParameter);
  EXPECT_THROW(amplitude_damping_kraus(0.5, 1), InvalidDimension);
}

TEST(SwitchedCycle, VacuumWithoutPumpIsPreserved) {
  dynamics::CycleConfig base;
  base.alpha_p = 0.0;
  SwitchedCycleConfig cfg = SwitchedCycleConfig::for_cycle(base);
  EXPECT_EQ(cfg.repump_alpha, Complex(0.0, 0.0));
  const SwitchedCycleResult r =
      run_switched_cycle_joint(fock::DensityMatrix::vacuum({8, 4}), cfg);
  EXPECT_LT(max_abs(r.joint.matrix() - fock::DensityMatrix::vacuum({8, 4}).matrix()), 1e-14);
  EXPECT_LT(max_abs(r.signal.matrix() - fock::DensityMatrix::vacuum({8}).matrix()), 1e-14);
  EXPECT_EQ(r.residual_pump, 0.0);
}

TEST(SwitchedCycle, SingleCycleMatchesIdealMap) {
  const auto base = dynamics::CycleConfig::from_phi_inv(2.0, {0.0, -2.0});
  SwitchedCycleConfig cfg = SwitchedCycleConfig::for_cycle(base);
  cfg.kappa_off = 0.0;
  cfg.t_reset = 1.0;
  const auto vac = fock::DensityMatrix::vacuum({16});
  const auto ideal = dynamics::unitary_cycle(vac, base, 10, dynamics::Propagator::kExact);
  const auto out = run_switched_cycle(vac, cfg, 10);
  EXPECT_LT(fock::trace_distance(out, ideal), 1e-3);
  EXPECT_TRUE(out.check().ok());
}

TEST(SwitchedCycle, RepumpRestoresCoherentPump) {
  // With the pump fully emptied, step 3 leaves the signal alone and the pump coherent.
  const auto base = dynamics::CycleConfig::from_phi_inv(2.0, {0.0, -2.0});
  SwitchedCycleConfig cfg = SwitchedCycleConfig::for_cycle(base);
  cfg.kappa_on = 40.0;
  const auto r = run_switched_cycle_joint(
      fock::tensor(fock::DensityMatrix::vacuum({12}),
                   fock::DensityMatrix::pure(fock::coherent_state(base.alpha_p, 20))),
      cfg);
  EXPECT_LT(r.residual_pump, 1e-12);
  const auto pump = fock::partial_trace(r.joint, fock::kPump);
  const Vector expected = fock::coherent_state(base.alpha_p, 20).vector();
  // The displacement is exponentiated on the truncated space; dim 20 keeps its edge error small.
  EXPECT_LT(max_abs(pump.matrix() - expected * expected.adjoint()), 1e-8);
}

TEST(SwitchedCycle, IncompleteResetIsReported) {
  const auto base = dynamics::CycleConfig::from_phi_inv(2.0, {0.0, -2.0});
  SwitchedCycleConfig cfg = SwitchedCycleConfig::for_cycle(base);
  cfg.kappa_on = 1.0;
  cfg.t_reset = 5.0;
  const auto joint = fock::tensor(fock::DensityMatrix::vacuum({8}),
                                  fock::DensityMatrix::pure(fock::coherent_state(base.alpha_p, 10)));
  try {
    run_switched_cycle_joint(joint, cfg);
    FAIL() << "expected IncompleteReset";
  } catch (const IncompleteReset& e) {
    // About e^{-5} of the ~1 photon left after the coupling.
    EXPECT_GT(e.residue(), 1e-3);
    EXPECT_LT(e.residue(), 2e-2);
    EXPECT_EQ(e.threshold(), 1e-3);
  }
}

TEST(SwitchedCycle, GuardRejectsShortResets) {
  SwitchedCycleConfig cfg;
  cfg.kappa_on = 10.0;
  cfg.t_reset = 0.4;
  EXPECT_THROW(cfg.validate(), InvalidParameter);
  cfg.min_kappa_t = 4.0;
  EXPECT_NO_THROW(cfg.validate());
  cfg.kappa_on = -1.0;
  EXPECT_THROW(cfg.validate(), InvalidParameter);
}

TEST(SwitchedCycle, RejectsSingleModeJointState) {
  SwitchedCycleConfig cfg;
  EXPECT_THROW(run_switched_cycle_joint(fock::DensityMatrix::vacuum({8}), cfg), ShapeMismatch);
  EXPECT_THROW(run_switched_cycle(fock::DensityMatrix::vacuum({8, 4}), cfg, 10), ShapeMismatch);
}

// Two chained cycles starting after one ideal cycle. The pump residue left by a
// short reset carries into the second coupling, so the deviation from two ideal
// cycles measures the reset quality.
std::vector<double> chained_deviations(const std::vector<double>& kappa_ts, int ds, int dp) {
  const auto base = dynamics::CycleConfig::from_phi_inv(2.0, {0.0, -2.0});
  const auto rho1 = dynamics::unitary_cycle(fock::DensityMatrix::vacuum({ds}), base, dp);
  const auto ideal = dynamics::unitary_cycle(dynamics::unitary_cycle(rho1, base, dp), base, dp);
  const auto joint = fock::tensor(rho1, fock::DensityMatrix::pure(fock::coherent_state(base.alpha_p, dp)));
  std::vector<double> out;
  for (const double kt : kappa_ts) {
    SwitchedCycleConfig cfg = SwitchedCycleConfig::for_cycle(base);
    cfg.kappa_off = 0.0;
    cfg.kappa_on = 10.0;
    cfg.t_reset = kt / cfg.kappa_on;
    cfg.min_kappa_t = 1.0;
    cfg.residual_threshold = 10.0;
    const auto first = run_switched_cycle_joint(joint, cfg);
    const auto second = run_switched_cycle_joint(first.joint, cfg);
    out.push_back(fock::trace_distance(second.signal, ideal));
  }
  return out;
}

TEST(SwitchedCycle, ConvergesMonotonicallyWithResetStrength) {
  const std::vector<double> kts{1.0, 2.0, 5.0, 10.0, 20.0};
  const auto dev = chained_deviations(kts, 16, 10);
  for (std::size_t i = 1; i < dev.size(); ++i) {
    EXPECT_LT(dev[i], dev[i - 1]) << "kappa t = " << kts[i];
  }
  EXPECT_GT(dev[0], 1e-2);
  EXPECT_LT(dev[2], 1e-1);   // kappa t = 5, the default guard
  EXPECT_LT(dev.back(), 1e-3);
}

}  // namespace
}  // namespace catpump::tunable_loss
