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

#ifndef QSUPER_RANDOM_HPP_
#define QSUPER_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "qsuper/tensor.hpp"

namespace qsuper {

using Rng = std::mt19937_64;

// Entries (x + iy) / sqrt(2) with x, y standard normal.
Matrix gaussian_matrix(Index rows, Index cols, Rng& rng);
// QR of a complex Gaussian matrix with the diagonal of R made positive.
Matrix haar_unitary(Index dim, Rng& rng);
Vector random_unit_vector(Index dim, Rng& rng);

}  // namespace qsuper

#endif  // QSUPER_RANDOM_HPP_
