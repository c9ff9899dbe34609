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

#include "qsuper/spanning_family.hpp"

#include <cmath>

#include "qsuper/random.hpp"

namespace qsuper {

std::vector<Vector> spanning_family(Index dim) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(dim * dim));
  for (Index i = 0; i < dim; ++i) out.push_back(Vector::Unit(dim, i));
  const double s = 1.0 / std::sqrt(2.0);
  for (const Complex w : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
    for (Index i = 0; i < dim; ++i) {
      for (Index j = i + 1; j < dim; ++j) {
        Vector v = Vector::Zero(dim);
        v(i) = s;
        v(j) = w * s;
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

std::vector<Vector> stability_probes(Index dim, int count) {
  Rng rng(kProbeSeed + static_cast<std::uint64_t>(dim));
  std::vector<Vector> out;
  for (int k = 0; k < count; ++k) out.push_back(random_unit_vector(dim, rng));
  return out;
}

}  // namespace qsuper
