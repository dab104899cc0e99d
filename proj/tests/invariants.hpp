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

// Randomized invariant checks shared by the property tests and the
// acceptance runner. Each check draws its own cases from a fixed seed and
// reports the worst observed violation of every property it covers.

#include <cstdint>
#include <string>
#include <vector>

namespace catpump::testing {

struct PropertyOutcome {
  std::string name;
  int cases = 0;
  double worst = 0.0;      // largest observed violation
  double tolerance = 0.0;  // passes when worst <= tolerance

  bool passed() const;
  std::string describe() const;
};

using Outcomes = std::vector<PropertyOutcome>;

// fock
Outcomes check_state_norms(std::uint64_t seed, int cases);
Outcomes check_cat_parity(std::uint64_t seed, int cases);
Outcomes check_partial_trace_of_tensor(std::uint64_t seed, int cases);
Outcomes check_ladder_elements(std::uint64_t seed, int cases);
Outcomes check_tensor_trace(std::uint64_t seed, int cases);

// dynamics
Outcomes check_lindblad_rhs(std::uint64_t seed, int cases);
Outcomes check_adiabatic_evolution(std::uint64_t seed, int cases);
Outcomes check_unitary_cycle(std::uint64_t seed, int cases);
Outcomes check_lossy_cycle(std::uint64_t seed, int cases);

// analysis
Outcomes check_wigner(std::uint64_t seed, int cases);
Outcomes check_fidelity(std::uint64_t seed, int cases);
Outcomes check_search_refinement(std::uint64_t seed, int cases);

// meanfield and tunable_loss
Outcomes check_meanfield(std::uint64_t seed, int cases);
Outcomes check_effective_loss(std::uint64_t seed, int cases);

}  // namespace catpump::testing
