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

#ifndef QSUPER_SUBSPACE_HPP_
#define QSUPER_SUBSPACE_HPP_

#include <vector>

#include "qsuper/tensor.hpp"

namespace qsuper {

// Singular values below kRankTol * max(sigma_max, 1) count as zero.
inline constexpr double kRankTol = 1e-9;
// Absolute max-norm tolerance for orthogonality and inclusion.
inline constexpr double kSubspaceTol = 1e-8;

// A subspace of a labelled space, stored as an orthonormal column basis.
class Subspace {
 public:
  Subspace() = default;
  // `basis` must already be orthonormal.
  Subspace(SystemDims ambient, Matrix basis, double built_tol = kRankTol);

  static Subspace from_spanning(const SystemDims& ambient, const Matrix& columns,
                                double tol = kRankTol);
  static Subspace from_vectors(const SystemDims& ambient, const std::vector<CVec>& vectors,
                               double tol = kRankTol);
  static Subspace zero(const SystemDims& ambient);
  static Subspace full(const SystemDims& ambient);

  const SystemDims& ambient() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  Index dim() const { return basis_.cols(); }
  double built_tol() const { return built_tol_; }
  Matrix projector() const { return basis_ * basis_.adjoint(); }

  // Same subspace with the ambient factors reordered.
  Subspace aligned_to(const SystemDims& ambient) const;

 private:
  SystemDims ambient_;
  Matrix basis_;
  double built_tol_ = kRankTol;
};

Subspace sum(const Subspace& s, const Subspace& t);
Subspace complement(const Subspace& s);
// Complement of the sum of complements.
Subspace intersect(const Subspace& s, const Subspace& t);

// max |<s_i|t_j>| over the two bases.
double orthogonality_residual(const Subspace& s, const Subspace& t);
// Max-norm of (1 - P_t) basis_s.
double subset_residual(const Subspace& s, const Subspace& t);
bool is_orthogonal(const Subspace& s, const Subspace& t, double tol = kSubspaceTol);
bool is_subset(const Subspace& s, const Subspace& t, double tol = kSubspaceTol);
bool equal(const Subspace& s, const Subspace& t, double tol = kSubspaceTol);
// Largest principal angle, computed from sines so that tiny angles stay
// accurate. Returns pi/2 when the dimensions differ.
double max_principal_angle(const Subspace& s, const Subspace& t);

// span{ <e|w> : w in W, e in E }, living on the factors `f_labels`.
Subspace reduced_subspace(const Subspace& w, const Labels& e_labels, const Labels& f_labels);
// u(S), on u's output space.
Subspace image(const LinOp& u, const Subspace& s);
// S (x) T on the concatenated ambient space.
Subspace tensor(const Subspace& s, const Subspace& t);

// Deterministic basis: pivoted Gram-Schmidt over the projected
// computational basis vectors, largest residual first, ties by index.
Subspace canonicalized(const Subspace& s);

}  // namespace qsuper

#endif  // QSUPER_SUBSPACE_HPP_
