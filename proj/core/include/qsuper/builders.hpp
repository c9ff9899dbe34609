// Copyright 2026 The qsuper Authors
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

#ifndef QSUPER_BUILDERS_HPP_
#define QSUPER_BUILDERS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "qsuper/comb.hpp"
#include "qsuper/random.hpp"
#include "qsuper/superchannel.hpp"

namespace qsuper {

// A unitary together with the two-slot wiring it is meant for.
struct SuperchannelInstance {
  LinOp unitary;
  TwoSlotLayout layout;
};

// Layout with one factor per role, labelled P, AI, AO, BI, BO, F.
TwoSlotLayout simple_layout(Index dp, Index dai, Index dao, Index dbi, Index dbo, Index df);

// Coherent control of the two orders on slot dimension d. The control is
// the factor P.c (F.c on the way out) and the target P.t (F.t).
SuperchannelInstance build_quantum_switch(Index d);
// Two A-before-B branches (c = 0, 1) and one B-before-A branch (c = 2) on
// P = F = C^6, index 2c + t.
SuperchannelInstance build_d3d_example();

// Ancilla dimensions k_0 .. k_{N+1} forced by the layout; throws if the
// chain is not integral or k_{N+1} != 1.
std::vector<Index> forced_ancilla_dims(const SlotLayout& layout);
LinOp build_staircase_comb(const CombCircuit& c);
// Staircase with Haar random elements.
CombCircuit random_staircase(const SlotLayout& layout, Rng& rng);
LinOp random_pure_comb(const SlotLayout& layout, std::uint64_t seed);

LinOp random_unitary(const SystemDims& in, const SystemDims& out, std::uint64_t seed);
// Random positive operator on the comb's Choi space with trace
// d_{H_0} d_{H_2} ... d_{H_2N}, the trace a valid comb Choi operator has.
ChoiOp random_choi_shaped(const SlotLayout& layout, std::uint64_t seed);

// Random A-before-B block on a past of dimension past_ab and a random
// B-before-A block on the rest, embedded by random isometries.
struct RandomDirectSum {
  SuperchannelInstance instance;
  CombBlock ab;
  CombBlock ba;
};
RandomDirectSum random_direct_sum(const TwoSlotLayout& layout, Index past_ab, std::uint64_t seed);

}  // namespace qsuper

#endif  // QSUPER_BUILDERS_HPP_
