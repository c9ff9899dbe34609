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

#include "qsuper/builders.hpp"

namespace qsuper {

TwoSlotLayout simple_layout(Index dp, Index dai, Index dao, Index dbi, Index dbo, Index df) {
  TwoSlotLayout l{SystemDims{{"P", dp}}, SystemDims{{"AI", dai}}, SystemDims{{"AO", dao}},
                  SystemDims{{"BI", dbi}}, SystemDims{{"BO", dbo}}, SystemDims{{"F", df}}};
  l.validate();
  return l;
}

SuperchannelInstance build_quantum_switch(Index d) {
  if (d < 1) throw DimensionError("switch dimension must be positive");
  TwoSlotLayout l{SystemDims{{"P.c", 2}, {"P.t", d}}, SystemDims{{"AI", d}},
                  SystemDims{{"AO", d}}, SystemDims{{"BI", d}}, SystemDims{{"BO", d}},
                  SystemDims{{"F.c", 2}, {"F.t", d}}};
  const Index n = 2 * d * d * d;
  Matrix u = Matrix::Zero(n, n);
  for (Index c = 0; c < 2; ++c)
    for (Index t = 0; t < d; ++t)
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) {
          const Index in = ((c * d + t) * d + a) * d + b;
          // c = 0: P.t -> AI, AO -> BI, BO -> F.t. c = 1: P.t -> BI, BO -> AI, AO -> F.t.
          const Index ai = c == 0 ? t : b, bi = c == 0 ? a : t, ft = c == 0 ? b : a;
          u(((ai * d + bi) * 2 + c) * d + ft, in) = 1.0;
        }
  return {LinOp(l.input_space(), l.output_space(), std::move(u)), l};
}

SuperchannelInstance build_d3d_example() {
  const TwoSlotLayout l = simple_layout(6, 2, 2, 2, 2, 6);
  Matrix u = Matrix::Zero(24, 24);
  for (Index c = 0; c < 3; ++c)
    for (Index t = 0; t < 2; ++t)
      for (Index a = 0; a < 2; ++a)
        for (Index b = 0; b < 2; ++b) {
          const Index in = ((2 * c + t) * 2 + a) * 2 + b;
          Index ai, bi, f;
          if (c < 2) {
            ai = t, bi = c ^ a, f = 2 * a + b;
          } else {
            ai = b, bi = t, f = 4 + a;
          }
          u((ai * 2 + bi) * 6 + f, in) = 1.0;
        }
  return {LinOp(l.input_space(), l.output_space(), std::move(u)), l};
}

std::vector<Index> forced_ancilla_dims(const SlotLayout& layout) {
  const int n_slots = layout.slots();
  std::vector<Index> k(static_cast<std::size_t>(n_slots + 2), 1);
  for (int n = 0; n <= n_slots; ++n) {
    const Index num = layout.space(2 * n).total_dim() * k[static_cast<std::size_t>(n)];
    const Index den = layout.space(2 * n + 1).total_dim();
    if (num % den != 0) {
      throw DimensionError("no integral ancilla after element " + std::to_string(n));
    }
    k[static_cast<std::size_t>(n + 1)] = num / den;
  }
  if (k.back() != 1) throw DimensionError("dimensions do not close the comb");
  return k;
}

LinOp build_staircase_comb(const CombCircuit& c) { return compose_staircase(c); }

CombCircuit random_staircase(const SlotLayout& layout, Rng& rng) {
  const int n_slots = layout.slots();
  CombCircuit c{layout, {}, forced_ancilla_dims(layout)};
  for (int n = 0; n <= n_slots; ++n) {
    const auto i = static_cast<std::size_t>(n);
    SystemDims in = layout.space(2 * n), out = layout.space(2 * n + 1);
    if (n > 0) in = in.concat(SystemDims{{ancilla_label(n), c.ancilla_dims[i]}});
    if (n < n_slots) out = out.concat(SystemDims{{ancilla_label(n + 1), c.ancilla_dims[i + 1]}});
    c.unitaries.emplace_back(in, out, haar_unitary(in.total_dim(), rng));
  }
  return c;
}

LinOp random_pure_comb(const SlotLayout& layout, std::uint64_t seed) {
  Rng rng(seed);
  return compose_staircase(random_staircase(layout, rng));
}

LinOp random_unitary(const SystemDims& in, const SystemDims& out, std::uint64_t seed) {
  if (in.total_dim() != out.total_dim()) {
    throw DimensionError("random_unitary: " + in.to_string() + " -> " + out.to_string());
  }
  Rng rng(seed);
  return LinOp(in, out, haar_unitary(in.total_dim(), rng));
}

ChoiOp random_choi_shaped(const SlotLayout& layout, std::uint64_t seed) {
  Rng rng(seed);
  const SystemDims all = layout.all();
  const Index d = all.total_dim();
  const Matrix g = gaussian_matrix(d, d, rng);
  Matrix r = g * g.adjoint();
  r *= static_cast<double>(layout.inputs().total_dim()) / r.trace().real();
  return ChoiOp(LinOp(all, all, std::move(r)), layout.inputs().labels());
}

RandomDirectSum random_direct_sum(const TwoSlotLayout& layout, Index past_ab,
                                  std::uint64_t seed) {
  layout.validate();
  const Index dp = layout.past.total_dim(), df = layout.future.total_dim();
  const Index dso = layout.a_out.total_dim() * layout.b_out.total_dim();
  const Index dsi = layout.a_in.total_dim() * layout.b_in.total_dim();
  if (past_ab <= 0 || past_ab >= dp || (past_ab * dso) % dsi != 0) {
    throw DimensionError("random_direct_sum: cannot split P of dimension " + std::to_string(dp) +
                         " at " + std::to_string(past_ab));
  }
  const Index future_ab = past_ab * dso / dsi;
  Rng rng(seed);
  auto block = [&](Index p, Index f, bool a_first) {
    const SystemDims bp{{kBlockPast, p}}, bf{{kBlockFuture, f}};
    const TwoSlotLayout bl{bp, layout.a_in, layout.a_out, layout.b_in, layout.b_out, bf};
    return compose_staircase(random_staircase(a_first ? bl.order_ab() : bl.order_ba(), rng));
  };
  const LinOp uab = block(past_ab, future_ab, true);
  const LinOp uba = block(dp - past_ab, df - future_ab, false);
  const Matrix ep = haar_unitary(dp, rng), ef = haar_unitary(df, rng);
  RandomDirectSum r;
  r.ab = {uab, Subspace(layout.past, ep.leftCols(past_ab)),
          Subspace(layout.future, ef.leftCols(future_ab))};
  r.ba = {uba, Subspace(layout.past, ep.rightCols(dp - past_ab)),
          Subspace(layout.future, ef.rightCols(df - future_ab))};
  r.instance = {build_direct_sum(layout, r.ab, r.ba), layout};
  return r;
}

}  // namespace qsuper
