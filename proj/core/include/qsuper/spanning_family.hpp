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

#ifndef QSUPER_SPANNING_FAMILY_HPP_
#define QSUPER_SPANNING_FAMILY_HPP_

#include <cstdint>
#include <vector>

#include "qsuper/tensor.hpp"

namespace qsuper {

inline constexpr std::uint64_t kProbeSeed = 0x5eedULL;
inline constexpr int kProbeCount = 4;

// e_i, then (e_i + e_j)/sqrt2 and (e_i + i e_j)/sqrt2 for i < j.
// Testing a "for every unit vector" condition on this family covers the
// whole sphere whenever the condition is sesquilinear.
std::vector<Vector> spanning_family(Index dim);

// Seeded random unit vectors used to confirm results built from the family.
std::vector<Vector> stability_probes(Index dim, int count = kProbeCount);

}  // namespace qsuper

#endif  // QSUPER_SPANNING_FAMILY_HPP_
