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

#ifndef QSUPER_CLI_LAYOUT_ARGS_HPP_
#define QSUPER_CLI_LAYOUT_ARGS_HPP_

#include <map>
#include <optional>
#include <string>

#include "qsuper/comb.hpp"
#include "qsuper/superchannel.hpp"

namespace qsuper::cli {

// Factor labels carry their role as the part before the first '.':
// P, AI, AO, BI, BO, F for two-slot files and H0, H1, ... for combs.
std::string role_of(const std::string& label);

// Parsed "--dims P=4,AI=2,...".
using RoleDims = std::map<std::string, Index>;
RoleDims parse_role_dims(const std::string& text);

enum class Order { kAB, kBA };
Order parse_order(const std::string& text);

// An operator together with the layout its labels describe. When the file
// labels carry no roles the operator is relabelled from --dims; when both
// are present they must agree.
struct TwoSlotInput {
  LinOp op;
  TwoSlotLayout layout;
};
TwoSlotInput resolve_two_slot(const LinOp& op, const std::optional<RoleDims>& dims);

struct CombInput {
  LinOp op;
  SlotLayout layout;
};
// `choi` selects a Choi operator (square on all spaces) instead of a
// unitary from the even spaces to the odd ones.
CombInput resolve_comb(const LinOp& op, const std::optional<RoleDims>& dims, Order order,
                       bool choi);

// Layout built from --dims alone, for the build command.
TwoSlotLayout two_slot_from_dims(const RoleDims& dims);
SlotLayout comb_from_dims(const RoleDims& dims, Order order);

}  // namespace qsuper::cli

#endif  // QSUPER_CLI_LAYOUT_ARGS_HPP_
