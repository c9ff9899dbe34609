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

#ifndef QSUPER_CHOI_HPP_
#define QSUPER_CHOI_HPP_

#include <vector>

#include "qsuper/tensor.hpp"

namespace qsuper {

// Operator on input (x) output factors of a map, with the roles of the
// factors kept alongside.
class ChoiOp {
 public:
  ChoiOp() = default;
  // `op` must map a space to the same factors; `inputs` names the map inputs.
  ChoiOp(LinOp op, Labels inputs);

  const LinOp& op() const { return op_; }
  const SystemDims& space() const { return op_.out(); }
  const Labels& inputs() const { return inputs_; }
  Labels outputs() const;

 private:
  LinOp op_;
  Labels inputs_;
};

// |A>> = sum_i |i> (x) A|i> on in (x) out.
CVec choi_vector(const LinOp& a);
ChoiOp choi_of_unitary(const LinOp& u);

// E * F = Tr_S[(E (x) 1)(1 (x) F^{T_S})], S the shared labels. The result
// lives on E's unshared factors followed by F's.
LinOp link_product(const LinOp& e, const LinOp& f);
ChoiOp link_product(const ChoiOp& e, const ChoiOp& f);
// rho * E for a state on E's inputs.
LinOp apply_channel(const ChoiOp& e, const LinOp& rho);

// Inserts slot unitaries into a pure superchannel or comb. Each slot
// unitary reads one output wire of `u` (plus fresh ancilla wires) and writes
// one input wire of `u` (plus ancilla outputs); wires are matched by label.
// The result is returned in canonical global phase.
LinOp plug_unitaries(const LinOp& u, const std::vector<LinOp>& slot_unitaries);

}  // namespace qsuper

#endif  // QSUPER_CHOI_HPP_
