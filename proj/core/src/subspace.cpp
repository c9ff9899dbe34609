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

#include "qsuper/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <unsupported/Eigen/KroneckerProduct>

namespace qsuper {
namespace {

void require_same_ambient(const Subspace& s, const Subspace& t, const char* what) {
  if (!s.ambient().same_factors(t.ambient())) {
    throw DimensionError(std::string(what) + ": ambient spaces differ, " +
                         s.ambient().to_string() + " vs " + t.ambient().to_string());
  }
}

}  // namespace

Subspace::Subspace(SystemDims ambient, Matrix basis, double built_tol)
    : ambient_(std::move(ambient)), basis_(std::move(basis)), built_tol_(built_tol) {
  if (basis_.rows() != ambient_.total_dim()) {
    throw DimensionError("subspace basis has " + std::to_string(basis_.rows()) +
                         " rows for ambient " + ambient_.to_string());
  }
  if (basis_.cols() > 0) {
    const Matrix g = basis_.adjoint() * basis_ - Matrix::Identity(basis_.cols(), basis_.cols());
    if (max_abs(g) > 1e-8) throw NumericalError("subspace basis is not orthonormal");
  }
}

Subspace Subspace::from_spanning(const SystemDims& ambient, const Matrix& columns, double tol) {
  if (columns.rows() != ambient.total_dim()) {
    throw DimensionError("spanning set has " + std::to_string(columns.rows()) +
                         " rows for ambient " + ambient.to_string());
  }
  if (columns.cols() == 0) return zero(ambient);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(sv(0), 1.0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return Subspace(ambient, svd.matrixU().leftCols(rank), tol);
}

Subspace Subspace::from_vectors(const SystemDims& ambient, const std::vector<CVec>& vectors,
                                double tol) {
  Matrix cols(ambient.total_dim(), static_cast<Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    cols.col(static_cast<Index>(i)) = aligned(vectors[i], ambient).data();
  }
  return from_spanning(ambient, cols, tol);
}

Subspace Subspace::zero(const SystemDims& ambient) {
  return Subspace(ambient, Matrix(ambient.total_dim(), 0));
}

Subspace Subspace::full(const SystemDims& ambient) {
  const Index d = ambient.total_dim();
  return Subspace(ambient, Matrix::Identity(d, d));
}

Subspace Subspace::aligned_to(const SystemDims& ambient) const {
  if (ambient == ambient_) return *this;
  const auto rows = permutation_map(ambient_, ambient);
  return Subspace(ambient, basis_(rows, Eigen::all), built_tol_);
}

Subspace sum(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t, "sum");
  const Subspace ta = t.aligned_to(s.ambient());
  Matrix cols(s.basis().rows(), s.dim() + ta.dim());
  cols << s.basis(), ta.basis();
  return Subspace::from_spanning(s.ambient(), cols, std::max(s.built_tol(), t.built_tol()));
}

Subspace complement(const Subspace& s) {
  const Index n = s.ambient().total_dim();
  if (s.dim() == 0) return Subspace::full(s.ambient());
  if (s.dim() == n) return Subspace::zero(s.ambient());
  Eigen::JacobiSVD<Matrix> svd(s.basis(), Eigen::ComputeFullU);
  return Subspace(s.ambient(), svd.matrixU().rightCols(n - s.dim()), s.built_tol());
}

Subspace intersect(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t, "intersect");
  return complement(sum(complement(s), complement(t)));
}

double orthogonality_residual(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t, "orthogonality_residual");
  if (s.dim() == 0 || t.dim() == 0) return 0.0;
  return max_abs(s.basis().adjoint() * t.aligned_to(s.ambient()).basis());
}

double subset_residual(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t, "subset_residual");
  if (s.dim() == 0) return 0.0;
  const Matrix bt = t.aligned_to(s.ambient()).basis();
  const Matrix r = s.basis() - bt * (bt.adjoint() * s.basis());
  return max_abs(r);
}

bool is_orthogonal(const Subspace& s, const Subspace& t, double tol) {
  return orthogonality_residual(s, t) <= tol;
}

bool is_subset(const Subspace& s, const Subspace& t, double tol) {
  return subset_residual(s, t) <= tol;
}

bool equal(const Subspace& s, const Subspace& t, double tol) {
  return s.dim() == t.dim() && is_subset(s, t, tol) && is_subset(t, s, tol);
}

double max_principal_angle(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t, "max_principal_angle");
  if (s.dim() != t.dim()) return std::numbers::pi / 2;
  if (s.dim() == 0) return 0.0;
  const Matrix bt = t.aligned_to(s.ambient()).basis();
  const Matrix r = s.basis() - bt * (bt.adjoint() * s.basis());
  Eigen::JacobiSVD<Matrix> svd(r);
  return std::asin(std::min(1.0, svd.singularValues()(0)));
}

Subspace reduced_subspace(const Subspace& w, const Labels& e_labels, const Labels& f_labels) {
  std::set<std::string> seen;
  for (const auto& l : e_labels) seen.insert(l);
  for (const auto& l : f_labels) seen.insert(l);
  if (seen.size() != e_labels.size() + f_labels.size() || seen.size() != w.ambient().size()) {
    throw LabelError("reduced_subspace: labels must split the ambient factors exactly");
  }
  const SystemDims e = w.ambient().select(e_labels);
  const SystemDims f = w.ambient().select(f_labels);
  const Subspace wa = w.aligned_to(f.concat(e));
  const Index de = e.total_dim(), df = f.total_dim();
  Matrix cols(df, wa.dim() * de);
  for (Index c = 0; c < wa.dim(); ++c) {
    for (Index k = 0; k < de; ++k) {
      for (Index j = 0; j < df; ++j) cols(j, c * de + k) = wa.basis()(j * de + k, c);
    }
  }
  return Subspace::from_spanning(f, cols, w.built_tol());
}

Subspace image(const LinOp& u, const Subspace& s) {
  if (!s.ambient().same_factors(u.in())) {
    throw DimensionError("image: subspace of " + s.ambient().to_string() +
                         " is not in the domain " + u.in().to_string());
  }
  return Subspace::from_spanning(u.out(), u.data() * s.aligned_to(u.in()).basis(),
                                 s.built_tol());
}

Subspace tensor(const Subspace& s, const Subspace& t) {
  return Subspace(s.ambient().concat(t.ambient()),
                  Eigen::kroneckerProduct(s.basis(), t.basis()).eval(),
                  std::max(s.built_tol(), t.built_tol()));
}

Subspace canonicalized(const Subspace& s) {
  const Index n = s.ambient().total_dim();
  const Matrix p = s.projector();
  Matrix q(n, s.dim());
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index k = 0; k < s.dim(); ++k) {
    // Pivot on the largest residual; quantising keeps near-ties on the
    // lowest index.
    Index best = -1;
    double best_key = -1.0;
    Vector best_v;
    for (Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      Vector v = p.col(i);
      for (int pass = 0; pass < 2; ++pass) v -= q.leftCols(k) * (q.leftCols(k).adjoint() * v);
      const double key = std::round(v.norm() * 1e10);
      if (key > best_key) {
        best_key = key;
        best = i;
        best_v = v;
      }
    }
    if (best < 0 || best_v.norm() < 1e-6) throw NumericalError("canonicalized: basis collapsed");
    used[static_cast<std::size_t>(best)] = true;
    q.col(k) = best_v / best_v.norm();
  }
  return Subspace(s.ambient(), std::move(q), s.built_tol());
}

}  // namespace qsuper
