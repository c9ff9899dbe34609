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

#include "qsuper/choi.hpp"

#include <algorithm>

namespace qsuper {
namespace {

bool has(const Labels& ls, const std::string& l) {
  return std::find(ls.begin(), ls.end(), l) != ls.end();
}

LinOp square(const LinOp& a, const char* what) {
  if (!a.in().same_factors(a.out())) {
    throw DimensionError(std::string(what) + ": operator is not square on one space");
  }
  return aligned(a, a.out(), a.out());
}

}  // namespace

ChoiOp::ChoiOp(LinOp op, Labels inputs) : op_(square(op, "ChoiOp")), inputs_(std::move(inputs)) {
  for (const auto& l : inputs_) {
    if (!op_.out().contains(l)) throw LabelError("ChoiOp: input '" + l + "' not in space");
  }
}

Labels ChoiOp::outputs() const {
  Labels out;
  for (const auto& l : space().labels()) {
    if (!has(inputs_, l)) out.push_back(l);
  }
  return out;
}

CVec choi_vector(const LinOp& a) {
  const SystemDims space = a.in().concat(a.out());
  const Index din = a.in().total_dim(), dout = a.out().total_dim();
  Vector v(din * dout);
  for (Index i = 0; i < din; ++i) v.segment(i * dout, dout) = a.data().col(i);
  return CVec(space, std::move(v));
}

ChoiOp choi_of_unitary(const LinOp& u) {
  const CVec v = choi_vector(u);
  return ChoiOp(LinOp(v.space(), v.space(), v.data() * v.data().adjoint()), u.in().labels());
}

LinOp link_product(const LinOp& e_in, const LinOp& f_in) {
  const LinOp e0 = square(e_in, "link_product");
  const LinOp f0 = square(f_in, "link_product");
  Labels shared, only_e, only_f;
  for (const auto& fac : e0.out().factors()) {
    if (f0.out().contains(fac.label)) {
      if (f0.out().dim_of(fac.label) != fac.dim) {
        throw DimensionError("link_product: '" + fac.label + "' differs in dimension");
      }
      shared.push_back(fac.label);
    } else {
      only_e.push_back(fac.label);
    }
  }
  for (const auto& l : f0.out().labels()) {
    if (!e0.out().contains(l)) only_f.push_back(l);
  }
  const SystemDims a = e0.out().select(only_e);
  const SystemDims s = e0.out().select(shared);
  const SystemDims c = f0.out().select(only_f);
  const SystemDims as = a.concat(s), sc = s.concat(c);
  const Matrix e = aligned(e0, as, as).data();
  const Matrix f = aligned(f0, sc, sc).data();
  const Index da = a.total_dim(), ds = s.total_dim(), dc = c.total_dim();

  // Realign E[(a,s),(a',s')] -> [(a,a'),(s,s')] and F likewise, so the
  // contraction over s, s' is one matrix product.
  Matrix er(da * da, ds * ds), fr(ds * ds, dc * dc);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index x = 0; x < ds; ++x)
        for (Index y = 0; y < ds; ++y) er(i * da + j, x * ds + y) = e(i * ds + x, j * ds + y);
  for (Index x = 0; x < ds; ++x)
    for (Index y = 0; y < ds; ++y)
      for (Index i = 0; i < dc; ++i)
        for (Index j = 0; j < dc; ++j) fr(x * ds + y, i * dc + j) = f(x * dc + i, y * dc + j);
  const Matrix rr = er * fr;
  Matrix r(da * dc, da * dc);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < dc; ++k)
        for (Index l = 0; l < dc; ++l) r(i * dc + k, j * dc + l) = rr(i * da + j, k * dc + l);
  const SystemDims ac = a.concat(c);
  return LinOp(ac, ac, std::move(r));
}

ChoiOp link_product(const ChoiOp& e, const ChoiOp& f) {
  const LinOp r = link_product(e.op(), f.op());
  Labels inputs;
  for (const auto& l : r.out().labels()) {
    if (has(e.inputs(), l) || has(f.inputs(), l)) inputs.push_back(l);
  }
  return ChoiOp(r, std::move(inputs));
}

LinOp apply_channel(const ChoiOp& e, const LinOp& rho) {
  const SystemDims in = e.space().select(e.inputs());
  if (!rho.out().same_factors(in) || !rho.in().same_factors(in)) {
    throw DimensionError("apply_channel: state lives on " + rho.out().to_string() +
                         ", channel inputs are " + in.to_string());
  }
  return link_product(rho, e.op());
}

LinOp plug_unitaries(const LinOp& u, const std::vector<LinOp>& slot_unitaries) {
  if (slot_unitaries.empty()) return canonical_phase(u);
  LinOp s = slot_unitaries.front();
  for (std::size_t k = 1; k < slot_unitaries.size(); ++k) s = kron(s, slot_unitaries[k]);
  for (const auto& op : slot_unitaries) {
    bool reads = false, writes = false;
    for (const auto& l : op.in().labels()) reads = reads || u.out().contains(l);
    for (const auto& l : op.out().labels()) writes = writes || u.in().contains(l);
    if (!reads || !writes) {
      throw DimensionError("plug_unitaries: slot unitary " + op.in().to_string() + " -> " +
                           op.out().to_string() + " is not attached to the superchannel");
    }
  }

  std::vector<Factor> anc_in, future;
  for (const auto& f : s.in().factors()) {
    if (u.in().contains(f.label)) {
      throw LabelError("plug_unitaries: slot input '" + f.label + "' is an input of u");
    }
    if (!u.out().contains(f.label)) anc_in.push_back(f);
  }
  for (const auto& f : u.out().factors()) {
    if (!s.in().contains(f.label)) future.push_back(f);
  }
  Labels loops;
  for (const auto& l : s.out().labels()) {
    if (u.in().contains(l)) loops.push_back(l);
  }
  const LinOp g1 = kron(u, LinOp::identity(SystemDims(anc_in)));
  const LinOp g2 = kron(s, LinOp::identity(SystemDims(future)));
  return canonical_phase(trace_loops(compose(g2, g1), loops));
}

}  // namespace qsuper
