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

#include "qsuper/superchannel.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "qsuper/spanning_family.hpp"

namespace qsuper {
namespace {

Subspace ray(const SystemDims& space, const Vector& v) { return Subspace::from_spanning(space, v); }

Labels cat(const Labels& a, const Labels& b) {
  Labels out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Works on u aligned to the layout's input and output order.
class Context {
 public:
  Context(const LinOp& u, const TwoSlotLayout& layout) : l_(layout) {
    layout.validate();
    if (!u.in().same_factors(layout.input_space()) ||
        !u.out().same_factors(layout.output_space())) {
      throw DimensionError("unitary " + u.in().to_string() + " -> " + u.out().to_string() +
                           " does not match the two-slot layout");
    }
    u_ = aligned(u, layout.input_space(), layout.output_space());
  }

  const LinOp& u() const { return u_; }
  const TwoSlotLayout& layout() const { return l_; }

  // U(P (x) a (x) b).
  Subspace v(const Subspace& a, const Subspace& b) const {
    return image(u_, tensor(tensor(Subspace::full(l_.past), a), b));
  }
  Subspace reduce(const Subspace& w, const Labels& e, const Labels& f) const {
    return reduced_subspace(w, e, f);
  }
  Labels slots_in() const { return cat(l_.a_in.labels(), l_.b_in.labels()); }

 private:
  TwoSlotLayout l_;
  LinOp u_;
};

std::vector<Vector> probes_with_family(Index d) {
  auto out = spanning_family(d);
  for (auto& p : stability_probes(d)) out.push_back(std::move(p));
  return out;
}

SignalSplit f_point(const Context& c, const Vector& alpha, const Vector& beta) {
  const auto& l = c.layout();
  const Subspace a = ray(l.a_out, alpha), b = ray(l.b_out, beta);
  const Labels e = c.slots_in(), f = l.future.labels();
  const Subspace fab = c.reduce(c.v(a, b), e, f);
  const Subspace x_ab = c.reduce(c.v(complement(a), b), e, f);
  const Subspace x_ba = c.reduce(c.v(a, complement(b)), e, f);
  SignalSplit s;
  s.ab = intersect(fab, x_ab);
  s.ba = intersect(fab, x_ba);
  s.parallel = intersect(fab, intersect(complement(s.ab), complement(s.ba)));
  if (s.ab.dim() + s.ba.dim() + s.parallel.dim() != fab.dim()) {
    throw NumericalError("future split does not exhaust F_ab at this point");
  }
  return s;
}

SignalSplit p_point(const Context& c, const Vector& alpha, const Vector& beta) {
  const auto& l = c.layout();
  const SignalSplit fs = f_point(c, alpha, beta);
  const Subspace vab = c.v(ray(l.a_out, alpha), ray(l.b_out, beta));
  const Index dslots = l.a_in.total_dim() * l.b_in.total_dim();
  const Index dab = l.a_out.total_dim() * l.b_out.total_dim();
  const Index dp = l.past.total_dim();
  const Vector bra = Eigen::kroneckerProduct(alpha, beta).eval().conjugate();

  auto pull_back = [&](const Subspace& ft) {
    const Matrix proj =
        Eigen::kroneckerProduct(Matrix::Identity(dslots, dslots), ft.projector()).eval();
    const Subspace vt = Subspace::from_spanning(l.output_space(), proj * vab.basis());
    const Matrix back = c.u().data().adjoint() * vt.basis();
    Matrix cols(dp, back.cols());
    for (Index k = 0; k < back.cols(); ++k) {
      const Eigen::Map<const Matrix> m(back.col(k).data(), dab, dp);
      cols.col(k) = m.transpose() * bra;
    }
    return Subspace::from_spanning(l.past, cols);
  };
  SignalSplit s{pull_back(fs.ab), pull_back(fs.parallel), pull_back(fs.ba)};
  if (s.ab.dim() + s.parallel.dim() + s.ba.dim() != dp) {
    throw NumericalError("past split does not exhaust P at this point");
  }
  return s;
}

double split_overlap(const SignalSplit& s) {
  return std::max({orthogonality_residual(s.ab, s.parallel), orthogonality_residual(s.ab, s.ba),
                   orthogonality_residual(s.parallel, s.ba)});
}

}  // namespace

void TwoSlotLayout::validate() const {
  input_space().concat(output_space());  // label uniqueness
  if (input_space().total_dim() != output_space().total_dim()) {
    throw DimensionError("two-slot layout is not square: " + input_space().to_string() +
                         " -> " + output_space().to_string());
  }
}

Verdict verify_pure_superchannel(const LinOp& u, const TwoSlotLayout& layout, double tol) {
  const Context c(u, layout);
  const auto& l = c.layout();
  Verdict v{true, tol, {}};
  v.record("unitarity", is_unitary(c.u()).residual);

  const auto fa = probes_with_family(l.a_out.total_dim());
  const auto fb = probes_with_family(l.b_out.total_dim());
  const Subspace all_a = Subspace::full(l.a_out), all_b = Subspace::full(l.b_out);
  const Labels fut = l.future.labels();

  double ra = 0.0;
  for (const auto& alpha : fa) {
    const Subspace a = ray(l.a_out, alpha);
    const Subspace na = complement(a);
    for (const auto& beta : fb) {
      const Subspace b = ray(l.b_out, beta);
      ra = std::max(ra, orthogonality_residual(c.reduce(c.v(a, b), c.slots_in(), fut),
                                               c.reduce(c.v(na, complement(b)), c.slots_in(), fut)));
    }
  }
  v.record("A", ra);

  double rb = 0.0;
  const Labels ai_f = cat(l.a_in.labels(), fut);
  for (const auto& beta : fb) {
    const Subspace b = ray(l.b_out, beta);
    rb = std::max(rb, orthogonality_residual(c.reduce(c.v(all_a, b), l.b_in.labels(), ai_f),
                                             c.reduce(c.v(all_a, complement(b)), l.b_in.labels(), ai_f)));
  }
  v.record("B", rb);

  double rc = 0.0;
  const Labels bi_f = cat(l.b_in.labels(), fut);
  for (const auto& alpha : fa) {
    const Subspace a = ray(l.a_out, alpha);
    rc = std::max(rc, orthogonality_residual(c.reduce(c.v(a, all_b), l.a_in.labels(), bi_f),
                                             c.reduce(c.v(complement(a), all_b), l.a_in.labels(), bi_f)));
  }
  v.record("C", rc);
  return v;
}

SignalSplit f_point_decomposition(const LinOp& u, const TwoSlotLayout& layout,
                                  const Vector& alpha, const Vector& beta) {
  return f_point(Context(u, layout), alpha, beta);
}

SignalSplit p_point_decomposition(const LinOp& u, const TwoSlotLayout& layout,
                                  const Vector& alpha, const Vector& beta) {
  return p_point(Context(u, layout), alpha, beta);
}

SignalSplit global_p_decomposition(const LinOp& u, const TwoSlotLayout& layout) {
  const Context c(u, layout);
  const auto& l = c.layout();
  const Index da = l.a_out.total_dim(), db = l.b_out.total_dim();
  const auto fam_a = spanning_family(da), fam_b = spanning_family(db);
  const auto pr_a = stability_probes(da), pr_b = stability_probes(db);
  const Vector a0 = Vector::Unit(da, 0), b0 = Vector::Unit(db, 0);

  Subspace ab = Subspace::zero(l.past), ba = Subspace::zero(l.past);
  Subspace par = Subspace::full(l.past);
  for (const auto& alpha : fam_a) ab = sum(ab, p_point(c, alpha, b0).ab);
  for (const auto& beta : fam_b) ba = sum(ba, p_point(c, a0, beta).ba);
  for (const auto& alpha : fam_a) {
    for (const auto& beta : fam_b) par = intersect(par, p_point(c, alpha, beta).parallel);
  }

  // Seeded probes must leave every dimension unchanged.
  const Index dims[3] = {ab.dim(), par.dim(), ba.dim()};
  Subspace ab2 = ab, ba2 = ba, par2 = par;
  for (const auto& alpha : pr_a) ab2 = sum(ab2, p_point(c, alpha, b0).ab);
  for (const auto& beta : pr_b) ba2 = sum(ba2, p_point(c, a0, beta).ba);
  auto with_probes_a = fam_a, with_probes_b = fam_b;
  with_probes_a.insert(with_probes_a.end(), pr_a.begin(), pr_a.end());
  with_probes_b.insert(with_probes_b.end(), pr_b.begin(), pr_b.end());
  for (std::size_t i = 0; i < with_probes_a.size(); ++i) {
    for (std::size_t j = 0; j < with_probes_b.size(); ++j) {
      if (i < fam_a.size() && j < fam_b.size()) continue;
      par2 = intersect(par2, p_point(c, with_probes_a[i], with_probes_b[j]).parallel);
    }
  }
  if (ab2.dim() != dims[0] || par2.dim() != dims[1] || ba2.dim() != dims[2]) {
    throw NumericalError("past split is not stable under probe vectors: dims (" +
                         std::to_string(dims[0]) + "," + std::to_string(dims[1]) + "," +
                         std::to_string(dims[2]) + ") became (" + std::to_string(ab2.dim()) +
                         "," + std::to_string(par2.dim()) + "," + std::to_string(ba2.dim()) + ")");
  }
  SignalSplit s{ab, par, ba};
  if (ab.dim() + par.dim() + ba.dim() != l.past.total_dim() || split_overlap(s) > kSubspaceTol) {
    throw NumericalError("past split is not an orthogonal decomposition of P");
  }
  return s;
}

SignalSplit global_f_decomposition(const LinOp& u, const TwoSlotLayout& layout,
                                   const SignalSplit& p) {
  const Context c(u, layout);
  const auto& l = c.layout();
  const Index dslots = l.a_in.total_dim() * l.b_in.total_dim();
  auto carry = [&](const Subspace& pt) {
    const Subspace img = image(
        c.u(), tensor(tensor(pt.aligned_to(l.past), Subspace::full(l.a_out)), Subspace::full(l.b_out)));
    Subspace ft = c.reduce(img, c.slots_in(), l.future.labels());
    if (img.dim() != dslots * ft.dim()) {
      throw NumericalError("image of a past piece is not A_I B_I times a future piece");
    }
    return ft;
  };
  SignalSplit s{carry(p.ab), carry(p.parallel), carry(p.ba)};
  if (s.ab.dim() + s.parallel.dim() + s.ba.dim() != l.future.total_dim() ||
      split_overlap(s) > kSubspaceTol) {
    throw NumericalError("future split is not an orthogonal decomposition of F");
  }
  return s;
}

std::string to_string(CausalClass c) {
  switch (c) {
    case CausalClass::kOrderedAB: return "ordered-A-before-B";
    case CausalClass::kOrderedBA: return "ordered-B-before-A";
    case CausalClass::kParallel: return "parallel";
    case CausalClass::kSwitchLike: return "switch-like";
    case CausalClass::kGeneralDirectSum: return "general-direct-sum";
  }
  return "unknown";
}

LinOp embed_block(const TwoSlotLayout& layout, const CombBlock& block) {
  const Index dsi = layout.a_in.total_dim() * layout.b_in.total_dim();
  const Index dso = layout.a_out.total_dim() * layout.b_out.total_dim();
  const Subspace p = block.past.aligned_to(layout.past);
  const Subspace f = block.future.aligned_to(layout.future);
  const SystemDims bin = SystemDims{{kBlockPast, p.dim()}}.concat(layout.a_out).concat(layout.b_out);
  const SystemDims bout = layout.a_in.concat(layout.b_in).concat(SystemDims{{kBlockFuture, f.dim()}});
  const LinOp ub = aligned(block.unitary, bin, bout);
  const Matrix left = Eigen::kroneckerProduct(Matrix::Identity(dsi, dsi), f.basis()).eval();
  const Matrix right = Eigen::kroneckerProduct(p.basis(), Matrix::Identity(dso, dso)).eval();
  return LinOp(layout.input_space(), layout.output_space(), left * ub.data() * right.adjoint());
}

LinOp build_direct_sum(const TwoSlotLayout& layout, const std::optional<CombBlock>& ab,
                       const std::optional<CombBlock>& ba) {
  layout.validate();
  const Index pab = ab ? ab->past.dim() : 0, pba = ba ? ba->past.dim() : 0;
  const Index fab = ab ? ab->future.dim() : 0, fba = ba ? ba->future.dim() : 0;
  if (pab + pba != layout.past.total_dim() || fab + fba != layout.future.total_dim()) {
    throw DimensionError("block splittings (" + std::to_string(pab) + "+" + std::to_string(pba) +
                         ", " + std::to_string(fab) + "+" + std::to_string(fba) +
                         ") do not fill P and F");
  }
  if (ab && ba &&
      (orthogonality_residual(ab->past, ba->past) > kSubspaceTol ||
       orthogonality_residual(ab->future, ba->future) > kSubspaceTol)) {
    throw DimensionError("block embeddings overlap");
  }
  const Index d = layout.input_space().total_dim();
  Matrix m = Matrix::Zero(d, d);
  if (ab) m += embed_block(layout, *ab).data();
  if (ba) m += embed_block(layout, *ba).data();
  return LinOp(layout.input_space(), layout.output_space(), std::move(m));
}

LinOp assemble(const DirectSumDecomp& d) { return build_direct_sum(d.layout, d.ab, d.ba); }

CausalClass classify(const DirectSumDecomp& d) {
  const auto& l = d.layout;
  const Index dp = l.past.total_dim();
  if (d.past_split.parallel.dim() == dp) return CausalClass::kParallel;
  if (d.past_dim_ba() == 0) return CausalClass::kOrderedAB;
  if (d.past_dim_ab() == 0) return CausalClass::kOrderedBA;
  const Index s = l.a_in.total_dim();
  if (l.a_out.total_dim() == s && l.b_in.total_dim() == s && l.b_out.total_dim() == s &&
      dp == 2 * s && l.future.total_dim() == 2 * s && d.past_dim_ab() == s &&
      d.past_dim_ba() == s) {
    return CausalClass::kSwitchLike;
  }
  return CausalClass::kGeneralDirectSum;
}

DirectSumDecomp direct_sum_decompose(const LinOp& u, const TwoSlotLayout& layout) {
  const Context c(u, layout);
  const auto& l = c.layout();
  for (const auto* s : {&l.a_in, &l.a_out, &l.b_in, &l.b_out}) {
    if (s->contains(kBlockPast) || s->contains(kBlockFuture)) {
      throw LabelError("slot wires may not use the block labels P or F");
    }
  }
  DirectSumDecomp d;
  d.layout = l;
  d.checks = verify_pure_superchannel(c.u(), l);
  if (!d.checks.passed) {
    throw NotSuperchannelError("not a pure superchannel, worst residual " +
                               std::to_string(d.checks.worst()));
  }
  d.past_split = global_p_decomposition(c.u(), l);
  d.future_split = global_f_decomposition(c.u(), l, d.past_split);

  const Index dsi = l.a_in.total_dim() * l.b_in.total_dim();
  const Index dso = l.a_out.total_dim() * l.b_out.total_dim();
  auto restrict = [&](const Subspace& p, const Subspace& f) {
    const Matrix left = Eigen::kroneckerProduct(Matrix::Identity(dsi, dsi), f.basis()).eval();
    const Matrix right = Eigen::kroneckerProduct(p.basis(), Matrix::Identity(dso, dso)).eval();
    return Matrix(left.adjoint() * c.u().data() * right);
  };
  const Subspace p_ab = canonicalized(sum(d.past_split.ab, d.past_split.parallel));
  const Subspace f_ab = canonicalized(sum(d.future_split.ab, d.future_split.parallel));
  const Subspace p_ba = canonicalized(d.past_split.ba);
  const Subspace f_ba = canonicalized(d.future_split.ba);

  double off = 0.0;
  if (p_ab.dim() && f_ba.dim()) off = std::max(off, max_abs(restrict(p_ab, f_ba)));
  if (p_ba.dim() && f_ab.dim()) off = std::max(off, max_abs(restrict(p_ba, f_ab)));
  d.checks.record("off-block", off);

  auto make = [&](const Subspace& p, const Subspace& f, bool a_first) -> std::optional<CombBlock> {
    if (p.dim() == 0 && f.dim() == 0) return std::nullopt;
    if (p.dim() == 0 || f.dim() == 0) throw NumericalError("block with an empty past or future");
    const SystemDims bp{{kBlockPast, p.dim()}}, bf{{kBlockFuture, f.dim()}};
    CombBlock b{LinOp(bp.concat(l.a_out).concat(l.b_out), l.a_in.concat(l.b_in).concat(bf),
                      restrict(p, f)),
                p, f};
    const TwoSlotLayout bl{bp, l.a_in, l.a_out, l.b_in, l.b_out, bf};
    const std::string tag = a_first ? "block ab" : "block ba";
    d.checks.record(tag + " unitarity", is_unitary(b.unitary).residual);
    d.checks.record(tag + " comb",
                    verify_pure_comb_unitary(b.unitary, a_first ? bl.order_ab() : bl.order_ba())
                        .worst());
    return b;
  };
  d.ab = make(p_ab, f_ab, true);
  d.ba = make(p_ba, f_ba, false);
  if (!d.checks.passed) {
    throw NumericalError("direct-sum invariants failed, worst residual " +
                         std::to_string(d.checks.worst()));
  }
  d.classification = classify(d);
  return d;
}

TraceFutureReport trace_future_check(const DirectSumDecomp& d) {
  return trace_future_check(d, assemble(d));
}

TraceFutureReport trace_future_check(const DirectSumDecomp& d, const LinOp& u) {
  const auto& l = d.layout;
  const LinOp ua = aligned(u, l.input_space(), l.output_space());
  const Index df = l.future.total_dim();
  const SystemDims rest = l.input_space().concat(l.a_in).concat(l.b_in);
  // Choi vector index is rest * d_F + f, so Tr_F is M M^dag with M rest x d_F.
  auto traced = [&](const LinOp& op) {
    const Vector v = choi_vector(op).data();
    const Eigen::Map<const Matrix> mt(v.data(), df, rest.total_dim());
    return Matrix(mt.transpose() * mt.transpose().adjoint());
  };
  const Matrix full = traced(ua);
  Matrix parts = Matrix::Zero(full.rows(), full.cols());
  TraceFutureReport r;
  const double total = full.trace().real();
  if (d.ab) {
    const Matrix w = traced(embed_block(l, *d.ab));
    r.weight_ab = w.trace().real() / total;
    r.component_ab = LinOp(rest, rest, w);
    parts += w;
  }
  if (d.ba) {
    const Matrix w = traced(embed_block(l, *d.ba));
    r.weight_ba = w.trace().real() / total;
    r.component_ba = LinOp(rest, rest, w);
    parts += w;
  }
  r.residual = max_abs(full - parts);
  return r;
}

}  // namespace qsuper
