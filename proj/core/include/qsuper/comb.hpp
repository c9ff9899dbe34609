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

#ifndef QSUPER_COMB_HPP_
#define QSUPER_COMB_HPP_

#include <string>
#include <vector>

#include "qsuper/choi.hpp"
#include "qsuper/subspace.hpp"
#include "qsuper/verdict.hpp"

namespace qsuper {

// Spaces H_0 ... H_{2N+1} of an N-slot comb. Even spaces are inputs of the
// comb's unitary (global past and slot outputs), odd spaces its outputs
// (slot inputs and global future). A space may hold several factors or none.
class SlotLayout {
 public:
  SlotLayout() = default;
  explicit SlotLayout(std::vector<SystemDims> spaces);

  int slots() const { return static_cast<int>(spaces_.size() / 2) - 1; }
  const std::vector<SystemDims>& spaces() const { return spaces_; }
  const SystemDims& space(int m) const { return spaces_.at(static_cast<std::size_t>(m)); }
  // H_0 H_2 ... H_2N.
  SystemDims inputs() const;
  // H_1 H_3 ... H_{2N+1}.
  SystemDims outputs() const;
  // H_0 H_1 ... H_{2N+1}.
  SystemDims all() const;

 private:
  std::vector<SystemDims> spaces_;
};

// Positivity plus the nested trace conditions
// Tr_{H_{2n+1}..H_{2N+1}} R = 1_{H_{2n}..H_{2N}} (x) R^(n), with R^(0) = 1.
Verdict verify_comb_choi(const ChoiOp& r, const SlotLayout& layout, double tol = kSubspaceTol);

// For every slot n and unit alpha in H_{2n}, the images of alpha and of its
// orthogonal complement (all other inputs free), reduced to the wires after
// the slot, are orthogonal.
Verdict verify_pure_comb_unitary(const LinOp& u, const SlotLayout& layout,
                                 double tol = kSubspaceTol);

// U_n : H_{2n} (x) A_n -> H_{2n+1} (x) A_{n+1}, with A_0 and A_{N+1} trivial.
// ancilla_dims holds k_0 .. k_{N+1}.
struct CombCircuit {
  SlotLayout layout;
  std::vector<LinOp> unitaries;
  std::vector<Index> ancilla_dims;
};

// Label of the ancilla wire A_n.
std::string ancilla_label(int n);

// Peels slots off from the last one. Requires a unitary that passes
// verify_pure_comb_unitary.
CombCircuit staircase_decompose(const LinOp& u, const SlotLayout& layout);
// Sequential composition back to H_0 H_2 .. -> H_1 H_3 .. order.
LinOp compose_staircase(const CombCircuit& c);

}  // namespace qsuper

#endif  // QSUPER_COMB_HPP_
