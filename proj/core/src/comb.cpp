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

#include "qsuper/comb.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qsuper/spanning_family.hpp"

namespace qsuper {
namespace {

SystemDims join(const std::vector<SystemDims>& spaces, int first, int last, int step) {
  SystemDims out;
  for (int m = first; m <= last; m += step) out = out.concat(spaces[static_cast<std::size_t>(m)]);
  return out;
}

}  // namespace

SlotLayout::SlotLayout(std::vector<SystemDims> spaces) : spaces_(std::move(spaces)) {
  if (spaces_.size() < 2 || spaces_.size() % 2 != 0) {
    throw DimensionError("a slot layout needs an even number (>= 2) of spaces");
  }
  all();  // label uniqueness
}

SystemDims SlotLayout::inputs() const {
  return join(spaces_, 0, static_cast<int>(spaces_.size()) - 2, 2);
}

SystemDims SlotLayout::outputs() const {
  return join(spaces_, 1, static_cast<int>(spaces_.size()) - 1, 2);
}

SystemDims SlotLayout::all() const {
  return join(spaces_, 0, static_cast<int>(spaces_.size()) - 1, 1);
}

Verdict verify_comb_choi(const ChoiOp& r, const SlotLayout& layout, double tol) {
  const SystemDims all = layout.all();
  if (!r.space().same_factors(all)) {
    throw DimensionError("verify_comb_choi: operator on " + r.space().to_string() +
                         ", layout is " + all.to_string());
  }
  Verdict v{true, tol, {}};
  const LinOp op = aligned(r.op(), all, all);
  const Matrix& m = op.data();
  v.record("hermiticity", max_abs(m - m.adjoint()));
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  v.record("positivity", std::max(0.0, -es.eigenvalues().minCoeff()));

  const int n_slots = layout.slots();
  LinOp lhs = op;
  for (int n = n_slots; n >= 0; --n) {
    lhs = partial_trace(lhs, layout.space(2 * n + 1).labels());
    const SystemDims evens = join(layout.spaces(), 2 * n, 2 * n_slots, 2);
    const double scale = static_cast<double>(evens.total_dim());
    LinOp rn = partial_trace(lhs, evens.labels());
    rn = LinOp(rn.in(), rn.out(), rn.data() / scale);
    const LinOp expect = kron(rn, LinOp::identity(evens));
    double res = max_abs(lhs.data() - aligned(expect, lhs.in(), lhs.out()).data());
    if (n == 0) res = std::max(res, std::abs(rn.data()(0, 0) - 1.0));
    v.record("level " + std::to_string(n), res);
  }
  return v;
}

Verdict verify_pure_comb_unitary(const LinOp& u_in, const SlotLayout& layout, double tol) {
  const LinOp u = aligned(u_in, layout.inputs(), layout.outputs());
  const auto unitary = is_unitary(u);
  if (!unitary.unitary) {
    throw NumericalError("verify_pure_comb_unitary: operator is not unitary (residual " +
                         std::to_string(unitary.residual) + ")");
  }
  Verdict v{true, tol, {}};
  const int n_slots = layout.slots();
  for (int n = 1; n <= n_slots; ++n) {
    const SystemDims& h = layout.space(2 * n);
    const Index d = h.total_dim();
    double worst = 0.0;
    if (d > 1) {
      SystemDims others;
      for (int m = 0; m <= 2 * n_slots; m += 2) {
        if (m != 2 * n) others = others.concat(layout.space(m));
      }
      const Subspace rest = Subspace::full(others);
      const Labels before = join(layout.spaces(), 1, 2 * n - 1, 2).labels();
      const Labels after = join(layout.spaces(), 2 * n + 1, 2 * n_slots + 1, 2).labels();
      auto probes = spanning_family(d);
      for (auto& p : stability_probes(d)) probes.push_back(std::move(p));
      for (const auto& alpha : probes) {
        const Subspace a = Subspace::from_spanning(h, alpha);
        const Subspace va = image(u, tensor(rest, a));
        const Subspace vb = image(u, tensor(rest, complement(a)));
        worst = std::max(worst, orthogonality_residual(reduced_subspace(va, before, after),
                                                       reduced_subspace(vb, before, after)));
      }
    }
    v.record("slot " + std::to_string(n), worst);
  }
  return v;
}

std::string ancilla_label(int n) { return "anc" + std::to_string(n); }

CombCircuit staircase_decompose(const LinOp& u, const SlotLayout& layout) {
  const int n_slots = layout.slots();
  for (int n = 0; n <= n_slots + 1; ++n) {
    if (layout.all().contains(ancilla_label(n))) {
      throw LabelError("layout uses the reserved label '" + ancilla_label(n) + "'");
    }
  }
  std::vector<SystemDims> spaces = layout.spaces();
  LinOp cur = aligned(u, layout.inputs(), layout.outputs());
  CombCircuit c{layout, std::vector<LinOp>(static_cast<std::size_t>(n_slots + 1)),
                std::vector<Index>(static_cast<std::size_t>(n_slots + 2), 1)};

  for (int m = n_slots; m >= 1; --m) {
    const SystemDims past = join(spaces, 0, 2 * m - 2, 2);
    const SystemDims a_in = join(spaces, 1, 2 * m - 1, 2);
    const SystemDims a_out = spaces[static_cast<std::size_t>(2 * m)];
    const SystemDims fut = spaces[static_cast<std::size_t>(2 * m + 1)];
    cur = aligned(cur, past.concat(a_out), a_in.concat(fut));
    const Matrix& w = cur.data();
    const Index dp = past.total_dim(), dai = a_in.total_dim();
    const Index dao = a_out.total_dim(), df = fut.total_dim();

    // Image of P (x) |0> on the slot output, reduced to the future.
    Matrix v0(dai * df, dp);
    for (Index p = 0; p < dp; ++p) v0.col(p) = w.col(p * dao);
    const Subspace x0 =
        reduced_subspace(Subspace::from_spanning(a_in.concat(fut), v0), a_in.labels(), fut.labels());
    const Index k = x0.dim();
    if (dp != dai * k || k * dao != df) {
      throw DimensionError("dimension chain broken at slot " + std::to_string(m) + ": d_P=" +
                           std::to_string(dp) + ", d_in=" + std::to_string(dai) + ", k=" +
                           std::to_string(k) + ", d_out=" + std::to_string(dao) +
                           ", d_F=" + std::to_string(df));
    }
    const Matrix& xb = x0.basis();

    // |i,x>_P = <0|_{slot out} U^dag (|i> |x,0>_F).
    Matrix q(dp, dai * k);
    for (Index i = 0; i < dai; ++i) {
      for (Index x = 0; x < k; ++x) {
        const Vector back = w.middleRows(i * df, df).adjoint() * xb.col(x);
        for (Index p = 0; p < dp; ++p) q(p, i * k + x) = back(p * dao);
      }
    }
    const double orth = max_abs(q.adjoint() * q - Matrix::Identity(dai * k, dai * k));
    if (orth > 1e-6) {
      throw NumericalError("slot " + std::to_string(m) + ": past basis is not orthonormal (" +
                           std::to_string(orth) + "), input is not a pure comb");
    }

    // |x,a>_F = <0|_{slot in} U (|0,x>_P |a>), stored with input a_out (x) A.
    Matrix y(df, dao * k);
    for (Index a = 0; a < dao; ++a) {
      for (Index x = 0; x < k; ++x) {
        Vector col = Vector::Zero(w.rows());
        for (Index p = 0; p < dp; ++p) col += q(p, x) * w.col(p * dao + a);
        y.col(a * k + x) = col.head(df);
      }
    }
    const SystemDims anc{{ancilla_label(m), k}};
    c.unitaries[static_cast<std::size_t>(m)] = LinOp(a_out.concat(anc), fut, std::move(y));
    c.ancilla_dims[static_cast<std::size_t>(m)] = k;
    cur = LinOp(past, a_in.concat(anc), q.adjoint());
    spaces[static_cast<std::size_t>(2 * m - 1)] =
        spaces[static_cast<std::size_t>(2 * m - 1)].concat(anc);
  }
  c.unitaries[0] = cur;
  for (std::size_t n = 0; n < c.unitaries.size(); ++n) {
    const auto chk = is_unitary(c.unitaries[n], 1e-6);
    if (!chk.unitary) {
      throw NumericalError("staircase element " + std::to_string(n) + " is not unitary (" +
                           std::to_string(chk.residual) + ")");
    }
  }
  return c;
}

LinOp compose_staircase(const CombCircuit& c) {
  const int n_slots = c.layout.slots();
  if (static_cast<int>(c.unitaries.size()) != n_slots + 1 ||
      static_cast<int>(c.ancilla_dims.size()) != n_slots + 2) {
    throw DimensionError("compose_staircase: circuit does not match its layout");
  }
  if (c.ancilla_dims.front() != 1 || c.ancilla_dims.back() != 1) {
    throw DimensionError("compose_staircase: outer ancillas must be trivial");
  }
  for (int n = 0; n <= n_slots; ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (c.layout.space(2 * n).total_dim() * c.ancilla_dims[i] !=
        c.layout.space(2 * n + 1).total_dim() * c.ancilla_dims[i + 1]) {
      throw DimensionError("compose_staircase: dimension chain broken at element " +
                           std::to_string(n));
    }
  }
  LinOp m = c.unitaries.front();
  for (int n = 1; n <= n_slots; ++n) m = compose_padded(c.unitaries[static_cast<std::size_t>(n)], m);
  return aligned(m, c.layout.inputs(), c.layout.outputs());
}

}  // namespace qsuper
