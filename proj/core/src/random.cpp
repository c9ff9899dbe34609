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

#include "qsuper/random.hpp"

#include <cmath>

namespace qsuper {

Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  // Fill column-major explicitly so the stream order is fixed.
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      const double re = n(rng);
      const double im = n(rng);
      m(r, c) = Complex(re * s, im * s);
    }
  }
  return m;
}

Matrix haar_unitary(Index dim, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(dim, dim, rng));
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Index k = 0; k < dim; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

Vector random_unit_vector(Index dim, Rng& rng) {
  Vector v = gaussian_matrix(dim, 1, rng).col(0);
  return v / v.norm();
}

}  // namespace qsuper
