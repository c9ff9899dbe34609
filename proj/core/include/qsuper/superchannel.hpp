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

#ifndef QSUPER_SUPERCHANNEL_HPP_
#define QSUPER_SUPERCHANNEL_HPP_

#include <optional>
#include <string>

#include "qsuper/comb.hpp"
#include "qsuper/subspace.hpp"
#include "qsuper/verdict.hpp"

namespace qsuper {

// The operator failed verify_pure_superchannel.
class NotSuperchannelError : public Error {
 public:
  using Error::Error;
};

// Wires of a two-slot superchannel with unitary
// U : P (x) A_O (x) B_O -> A_I (x) B_I (x) F.
struct TwoSlotLayout {
  SystemDims past, a_in, a_out, b_in, b_out, future;

  void validate() const;
  SystemDims input_space() const { return past.concat(a_out).concat(b_out); }
  SystemDims output_space() const { return a_in.concat(b_in).concat(future); }
  // Comb layouts for the two fixed orders.
  SlotLayout order_ab() const { return SlotLayout({past, a_in, a_out, b_in, b_out, future}); }
  SlotLayout order_ba() const { return SlotLayout({past, b_in, b_out, a_in, a_out, future}); }
};

// Three mutually orthogonal pieces of a past or future space: the part on
// which only B's output reaches the future independently of A (ab), the part
// where A and B act side by side (parallel) and the mirror of ab (ba).
struct SignalSplit {
  Subspace ab, parallel, ba;
};

// Conditions (A), (B), (C): orthogonality of the reduced images of
// alpha(x)beta against their complements, checked on the spanning family
// plus seeded probes.
Verdict verify_pure_superchannel(const LinOp& u, const TwoSlotLayout& layout,
                                 double tol = kSubspaceTol);

// Split of F_{alpha beta} = [U(P alpha beta)]_{A_I B_I -> F}.
SignalSplit f_point_decomposition(const LinOp& u, const TwoSlotLayout& layout,
                                  const Vector& alpha, const Vector& beta);
// The matching split of P.
SignalSplit p_point_decomposition(const LinOp& u, const TwoSlotLayout& layout,
                                  const Vector& alpha, const Vector& beta);
// Point splits combined over the spanning family; the seeded probes must
// not change any dimension.
SignalSplit global_p_decomposition(const LinOp& u, const TwoSlotLayout& layout);
SignalSplit global_f_decomposition(const LinOp& u, const TwoSlotLayout& layout,
                                   const SignalSplit& p);

enum class CausalClass { kOrderedAB, kOrderedBA, kParallel, kSwitchLike, kGeneralDirectSum };
std::string to_string(CausalClass c);

// One causally ordered summand. `past` and `future` hold embedding
// isometries (their bases, in order) into P and F; `unitary` maps
// ("P", dim past) (x) A_O (x) B_O -> A_I (x) B_I (x) ("F", dim future).
struct CombBlock {
  LinOp unitary;
  Subspace past;
  Subspace future;
};

struct DirectSumDecomp {
  TwoSlotLayout layout;
  SignalSplit past_split;
  SignalSplit future_split;
  std::optional<CombBlock> ab;
  std::optional<CombBlock> ba;
  Verdict checks;
  CausalClass classification = CausalClass::kGeneralDirectSum;

  Index past_dim_ab() const { return ab ? ab->past.dim() : 0; }
  Index past_dim_ba() const { return ba ? ba->past.dim() : 0; }
  Index future_dim_ab() const { return ab ? ab->future.dim() : 0; }
  Index future_dim_ba() const { return ba ? ba->future.dim() : 0; }
};

// Block labels for the restricted past and future.
inline constexpr const char* kBlockPast = "P";
inline constexpr const char* kBlockFuture = "F";

// Throws NotSuperchannelError if u fails verification and NumericalError if
// a block invariant breaks.
DirectSumDecomp direct_sum_decompose(const LinOp& u, const TwoSlotLayout& layout);
CausalClass classify(const DirectSumDecomp& d);
// Sum of the embedded blocks, on layout.input_space() -> output_space().
LinOp assemble(const DirectSumDecomp& d);
LinOp build_direct_sum(const TwoSlotLayout& layout, const std::optional<CombBlock>& ab,
                       const std::optional<CombBlock>& ba);
// Block unitary carried into the full spaces.
LinOp embed_block(const TwoSlotLayout& layout, const CombBlock& block);

struct TraceFutureReport {
  double residual = 0.0;
  double weight_ab = 0.0;
  double weight_ba = 0.0;
  // Tr_F of each block's Choi operator, on P A_O B_O A_I B_I.
  std::optional<LinOp> component_ab;
  std::optional<LinOp> component_ba;
};

// Tr_F of the full Choi operator against the sum of the block terms. The
// one-argument form uses the assembled unitary as the full operator.
TraceFutureReport trace_future_check(const DirectSumDecomp& d);
TraceFutureReport trace_future_check(const DirectSumDecomp& d, const LinOp& u);

}  // namespace qsuper

#endif  // QSUPER_SUPERCHANNEL_HPP_
