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

#include "qsuper/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace qsuper {
namespace {

std::vector<Index> strides(const SystemDims& space) {
  std::vector<Index> s(space.size(), 1);
  for (std::size_t k = space.size(); k-- > 1;) {
    s[k - 1] = s[k] * space.factors()[k].dim;
  }
  return s;
}

void check_unique(const Labels& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw LabelError(std::string(what) + ": duplicate label '" + l + "'");
    }
  }
}

// Index of `space` for each (kept, traced) pair, laid out as
// kept * traced_dim + traced. Traced digits follow the order of `traced`.
struct Split {
  Index kept_dim = 1;
  Index traced_dim = 1;
  std::vector<Index> full;
};

Split split_index(const SystemDims& space, const Labels& traced) {
  SystemDims t = space.select(traced);
  SystemDims k = space.drop(traced);
  return {k.total_dim(), t.total_dim(), permutation_map(space, k.concat(t))};
}

}  // namespace

SystemDims::SystemDims(std::initializer_list<Factor> factors)
    : SystemDims(std::vector<Factor>(factors)) {}

SystemDims::SystemDims(std::vector<Factor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f.label.empty()) throw LabelError("empty factor label");
    if (f.dim < 1) {
      throw DimensionError("factor '" + f.label + "' has dimension " +
                           std::to_string(f.dim));
    }
  }
  check_unique(labels(), "SystemDims");
}

Index SystemDims::total_dim() const {
  Index d = 1;
  for (const auto& f : factors_) d *= f.dim;
  return d;
}

Labels SystemDims::labels() const {
  Labels out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

std::optional<std::size_t> SystemDims::position(std::string_view label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == label) return i;
  }
  return std::nullopt;
}

Index SystemDims::dim_of(std::string_view label) const {
  auto p = position(label);
  if (!p) throw LabelError("unknown label '" + std::string(label) + "' in " + to_string());
  return factors_[*p].dim;
}

SystemDims SystemDims::concat(const SystemDims& other) const {
  std::vector<Factor> f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return SystemDims(std::move(f));
}

SystemDims SystemDims::select(const Labels& labels) const {
  std::vector<Factor> f;
  f.reserve(labels.size());
  for (const auto& l : labels) f.push_back({l, dim_of(l)});
  return SystemDims(std::move(f));
}

SystemDims SystemDims::drop(const Labels& labels) const {
  for (const auto& l : labels) dim_of(l);
  std::vector<Factor> f;
  for (const auto& x : factors_) {
    if (std::find(labels.begin(), labels.end(), x.label) == labels.end()) f.push_back(x);
  }
  return SystemDims(std::move(f));
}

bool SystemDims::same_factors(const SystemDims& other) const {
  if (size() != other.size()) return false;
  for (const auto& f : factors_) {
    auto p = other.position(f.label);
    if (!p || other.factors_[*p].dim != f.dim) return false;
  }
  return true;
}

std::string SystemDims::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << ", ";
    os << factors_[i].label << ':' << factors_[i].dim;
  }
  os << ']';
  return os.str();
}

std::vector<Index> permutation_map(const SystemDims& from, const SystemDims& to) {
  if (!from.same_factors(to)) {
    throw DimensionError("cannot reorder " + from.to_string() + " as " + to.to_string());
  }
  const auto sf = strides(from);
  std::vector<Index> step(to.size());
  for (std::size_t k = 0; k < to.size(); ++k) step[k] = sf[*from.position(to.factors()[k].label)];

  const Index total = to.total_dim();
  std::vector<Index> map(static_cast<std::size_t>(total));
  std::vector<Index> digit(to.size(), 0);
  Index old = 0;
  for (Index j = 0; j < total; ++j) {
    map[static_cast<std::size_t>(j)] = old;
    // Odometer increment over `to`, last factor fastest.
    for (std::size_t k = to.size(); k-- > 0;) {
      if (++digit[k] < to.factors()[k].dim) {
        old += step[k];
        break;
      }
      old -= step[k] * (digit[k] - 1);
      digit[k] = 0;
    }
  }
  return map;
}

LinOp::LinOp(SystemDims in, SystemDims out, Matrix data)
    : in_(std::move(in)), out_(std::move(out)), data_(std::move(data)) {
  if (data_.rows() != out_.total_dim() || data_.cols() != in_.total_dim()) {
    throw DimensionError("matrix is " + std::to_string(data_.rows()) + "x" +
                         std::to_string(data_.cols()) + " but spaces are " + in_.to_string() +
                         " -> " + out_.to_string());
  }
}

LinOp LinOp::identity(const SystemDims& space) {
  const Index d = space.total_dim();
  return LinOp(space, space, Matrix::Identity(d, d));
}

CVec::CVec(SystemDims space, Vector data) : space_(std::move(space)), data_(std::move(data)) {
  if (data_.size() != space_.total_dim()) {
    throw DimensionError("vector has length " + std::to_string(data_.size()) + " but space is " +
                         space_.to_string());
  }
}

CVec CVec::basis(const SystemDims& space, Index index) {
  const Index d = space.total_dim();
  if (index < 0 || index >= d) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(d);
  v(index) = 1.0;
  return CVec(space, std::move(v));
}

LinOp kron(const LinOp& a, const LinOp& b) {
  return LinOp(a.in().concat(b.in()), a.out().concat(b.out()),
               Eigen::kroneckerProduct(a.data(), b.data()).eval());
}

CVec kron(const CVec& a, const CVec& b) {
  return CVec(a.space().concat(b.space()), Eigen::kroneckerProduct(a.data(), b.data()).eval());
}

LinOp adjoint(const LinOp& a) { return LinOp(a.out(), a.in(), a.data().adjoint()); }

LinOp permute_systems(const LinOp& a, const Labels& order) {
  check_unique(order, "permute_systems");
  Labels in_order, out_order;
  for (const auto& l : order) {
    const bool in_in = a.in().contains(l), in_out = a.out().contains(l);
    if (!in_in && !in_out) throw LabelError("permute_systems: unknown label '" + l + "'");
    if (in_in) in_order.push_back(l);
    if (in_out) out_order.push_back(l);
  }
  if (in_order.size() != a.in().size() || out_order.size() != a.out().size()) {
    throw LabelError("permute_systems: order does not cover every factor");
  }
  return aligned(a, a.in().select(in_order), a.out().select(out_order));
}

CVec permute_systems(const CVec& x, const Labels& order) {
  check_unique(order, "permute_systems");
  return aligned(x, x.space().select(order));
}

LinOp aligned(const LinOp& a, const SystemDims& in, const SystemDims& out) {
  if (in == a.in() && out == a.out()) return a;
  const auto rows = permutation_map(a.out(), out);
  const auto cols = permutation_map(a.in(), in);
  return LinOp(in, out, a.data()(rows, cols));
}

CVec aligned(const CVec& x, const SystemDims& space) {
  if (space == x.space()) return x;
  const auto idx = permutation_map(x.space(), space);
  return CVec(space, x.data()(idx));
}

LinOp partial_trace(const LinOp& a, const Labels& traced) {
  if (!a.in().same_factors(a.out())) {
    throw DimensionError("partial_trace needs matching spaces, got " + a.in().to_string() +
                         " -> " + a.out().to_string());
  }
  return trace_loops(aligned(a, a.out(), a.out()), traced);
}

LinOp trace_loops(const LinOp& a, const Labels& loops) {
  check_unique(loops, "trace_loops");
  for (const auto& l : loops) {
    if (a.in().dim_of(l) != a.out().dim_of(l)) {
      throw DimensionError("loop '" + l + "' joins wires of different dimension");
    }
  }
  const Split so = split_index(a.out(), loops);
  const Split si = split_index(a.in(), loops);
  const Index dt = so.traced_dim;
  Matrix r = Matrix::Zero(so.kept_dim, si.kept_dim);
  for (Index i = 0; i < so.kept_dim; ++i) {
    for (Index j = 0; j < si.kept_dim; ++j) {
      Complex s = 0.0;
      for (Index t = 0; t < dt; ++t) {
        s += a.data()(so.full[static_cast<std::size_t>(i * dt + t)],
                      si.full[static_cast<std::size_t>(j * dt + t)]);
      }
      r(i, j) = s;
    }
  }
  return LinOp(a.in().drop(loops), a.out().drop(loops), std::move(r));
}

LinOp partial_transpose(const LinOp& a, const Labels& labels) {
  check_unique(labels, "partial_transpose");
  for (const auto& l : labels) {
    if (a.in().dim_of(l) != a.out().dim_of(l)) {
      throw DimensionError("partial_transpose: '" + l + "' differs between spaces");
    }
  }
  const Split so = split_index(a.out(), labels);
  const Split si = split_index(a.in(), labels);
  const Index dt = so.traced_dim;
  Matrix r(a.data().rows(), a.data().cols());
  for (Index i = 0; i < so.kept_dim; ++i) {
    for (Index j = 0; j < si.kept_dim; ++j) {
      for (Index t = 0; t < dt; ++t) {
        for (Index s = 0; s < dt; ++s) {
          r(so.full[static_cast<std::size_t>(i * dt + s)],
            si.full[static_cast<std::size_t>(j * dt + t)]) =
              a.data()(so.full[static_cast<std::size_t>(i * dt + t)],
                       si.full[static_cast<std::size_t>(j * dt + s)]);
        }
      }
    }
  }
  return LinOp(a.in(), a.out(), std::move(r));
}

CVec contract_bra(const CVec& phi, const CVec& x) {
  for (const auto& f : phi.space().factors()) {
    if (x.space().dim_of(f.label) != f.dim) {
      throw DimensionError("contract_bra: '" + f.label + "' has mismatched dimension");
    }
  }
  const Split sp = split_index(x.space(), phi.space().labels());
  Vector r = Vector::Zero(sp.kept_dim);
  for (Index k = 0; k < sp.kept_dim; ++k) {
    for (Index t = 0; t < sp.traced_dim; ++t) {
      r(k) += std::conj(phi.data()(t)) * x.data()(sp.full[static_cast<std::size_t>(k * sp.traced_dim + t)]);
    }
  }
  return CVec(x.space().drop(phi.space().labels()), std::move(r));
}

LinOp compose(const LinOp& outer, const LinOp& inner) {
  if (!outer.in().same_factors(inner.out())) {
    throw DimensionError("compose: " + inner.out().to_string() + " does not feed " +
                         outer.in().to_string());
  }
  const LinOp a = aligned(inner, inner.in(), outer.in());
  return LinOp(inner.in(), outer.out(), outer.data() * a.data());
}

LinOp compose_padded(const LinOp& outer, const LinOp& inner) {
  std::vector<Factor> pad_outer, pad_inner;
  for (const auto& f : inner.out().factors()) {
    if (!outer.in().contains(f.label)) pad_outer.push_back(f);
  }
  for (const auto& f : outer.in().factors()) {
    if (!inner.out().contains(f.label)) pad_inner.push_back(f);
  }
  const LinOp o = kron(outer, LinOp::identity(SystemDims(pad_outer)));
  const LinOp i = kron(inner, LinOp::identity(SystemDims(pad_inner)));
  return compose(o, i);
}

UnitaryCheck is_unitary(const LinOp& a, double tol) {
  const Matrix& m = a.data();
  if (m.rows() != m.cols()) return {false, std::numeric_limits<double>::infinity()};
  const Index d = m.rows();
  const Matrix id = Matrix::Identity(d, d);
  const double r = std::max(max_abs(m.adjoint() * m - id), max_abs(m * m.adjoint() - id));
  return {r <= tol, r};
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Matrix canonical_phase(const Matrix& m) {
  const double top = max_abs(m);
  if (top == 0.0) return m;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      const double v = std::abs(m(r, c));
      if (v >= top * (1.0 - 1e-12)) return m * (std::conj(m(r, c)) / v);
    }
  }
  return m;
}

LinOp canonical_phase(const LinOp& a) {
  return LinOp(a.in(), a.out(), canonical_phase(a.data()));
}

double phase_residual(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("phase_residual: shape mismatch");
  }
  const Complex overlap = (b.conjugate().cwiseProduct(a)).sum();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return max_abs(a - phase * b);
}

double phase_residual(const LinOp& a, const LinOp& b) {
  return phase_residual(a.data(), aligned(b, a.in(), a.out()).data());
}

}  // namespace qsuper
