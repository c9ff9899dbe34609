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

#include "qsuper_cli/layout_args.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "qsuper_cli/matrix_file.hpp"

namespace qsuper::cli {
namespace {

constexpr std::array<const char*, 6> kTwoSlotRoles = {"P", "AI", "AO", "BI", "BO", "F"};

bool is_two_slot_role(const std::string& r) {
  return std::find(kTwoSlotRoles.begin(), kTwoSlotRoles.end(), r) != kTwoSlotRoles.end();
}

// -1 if `r` is not of the form H<m>.
int comb_index(const std::string& r) {
  if (r.size() < 2 || r[0] != 'H') return -1;
  int m = 0;
  const auto [p, ec] = std::from_chars(r.data() + 1, r.data() + r.size(), m);
  if (ec != std::errc() || p != r.data() + r.size() || m < 0) return -1;
  return m;
}

bool all_labels(const SystemDims& s, bool (*pred)(const std::string&)) {
  for (const auto& l : s.labels()) {
    if (!pred(role_of(l))) return false;
  }
  return !s.empty();
}

bool two_slot_label(const std::string& r) { return is_two_slot_role(r); }
bool comb_label(const std::string& r) { return comb_index(r) >= 0; }

SystemDims with_role(const SystemDims& s, const std::string& role) {
  std::vector<Factor> fs;
  for (const auto& f : s.factors()) {
    if (role_of(f.label) == role) fs.push_back(f);
  }
  return SystemDims(std::move(fs));
}

void check_against(const RoleDims& dims, const std::string& role, const SystemDims& got) {
  const auto it = dims.find(role);
  if (it != dims.end() && it->second != got.total_dim()) {
    throw FormatError("--dims gives " + role + "=" + std::to_string(it->second) +
                      " but the file has " + std::to_string(got.total_dim()));
  }
}

TwoSlotLayout two_slot_from(const SystemDims& in, const SystemDims& out) {
  TwoSlotLayout l{with_role(in, "P"),   with_role(out, "AI"), with_role(in, "AO"),
                  with_role(out, "BI"), with_role(in, "BO"),  with_role(out, "F")};
  for (const auto* r : {"AI", "BI", "F"}) {
    if (!with_role(in, r).empty()) throw FormatError(std::string(r) + " factors must be outputs");
  }
  for (const auto* r : {"P", "AO", "BO"}) {
    if (!with_role(out, r).empty()) throw FormatError(std::string(r) + " factors must be inputs");
  }
  for (const auto* s : {&l.past, &l.a_in, &l.a_out, &l.b_in, &l.b_out, &l.future}) {
    if (s->empty()) throw FormatError("two-slot file is missing a role (need P AI AO BI BO F)");
  }
  return l;
}

SlotLayout comb_from_labels(const SystemDims& all_factors, Order order) {
  if (all_labels(all_factors, two_slot_label)) {
    const TwoSlotLayout l{with_role(all_factors, "P"),  with_role(all_factors, "AI"),
                          with_role(all_factors, "AO"), with_role(all_factors, "BI"),
                          with_role(all_factors, "BO"), with_role(all_factors, "F")};
    return order == Order::kAB ? l.order_ab() : l.order_ba();
  }
  int top = -1;
  for (const auto& lab : all_factors.labels()) top = std::max(top, comb_index(role_of(lab)));
  if (top % 2 == 0) ++top;
  std::vector<SystemDims> spaces;
  for (int m = 0; m <= top; ++m) spaces.push_back(with_role(all_factors, "H" + std::to_string(m)));
  return SlotLayout(std::move(spaces));
}

std::vector<std::string> comb_roles(const RoleDims& dims) {
  int top = -1;
  for (const auto& [r, d] : dims) {
    const int m = comb_index(r);
    if (m < 0) throw FormatError("unknown role '" + r + "' in --dims");
    top = std::max(top, m);
  }
  if (top % 2 == 0) throw FormatError("--dims must end on an odd H<m>");
  std::vector<std::string> roles;
  for (int m = 0; m <= top; ++m) roles.push_back("H" + std::to_string(m));
  return roles;
}

}  // namespace

std::string role_of(const std::string& label) { return label.substr(0, label.find('.')); }

RoleDims parse_role_dims(const std::string& text) {
  RoleDims out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw FormatError("--dims entry '" + item + "' is not ROLE=DIM");
    const std::string role = item.substr(0, eq), num = item.substr(eq + 1);
    long long d = 0;
    const auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), d);
    if (ec != std::errc() || p != num.data() + num.size() || d < 1) {
      throw FormatError("--dims entry '" + item + "' has a bad dimension");
    }
    if (!is_two_slot_role(role) && comb_index(role) < 0) {
      throw FormatError("unknown role '" + role + "' in --dims");
    }
    if (!out.emplace(role, static_cast<Index>(d)).second) {
      throw FormatError("role '" + role + "' repeated in --dims");
    }
  }
  if (out.empty()) throw FormatError("--dims is empty");
  return out;
}

Order parse_order(const std::string& text) {
  if (text == "ab") return Order::kAB;
  if (text == "ba") return Order::kBA;
  throw FormatError("--order must be ab or ba");
}

TwoSlotLayout two_slot_from_dims(const RoleDims& dims) {
  for (const auto* r : kTwoSlotRoles) {
    if (!dims.count(r)) throw FormatError(std::string("--dims lacks ") + r);
  }
  if (dims.size() != kTwoSlotRoles.size()) throw FormatError("--dims mixes roles");
  return TwoSlotLayout{SystemDims{{"P", dims.at("P")}},   SystemDims{{"AI", dims.at("AI")}},
                       SystemDims{{"AO", dims.at("AO")}}, SystemDims{{"BI", dims.at("BI")}},
                       SystemDims{{"BO", dims.at("BO")}}, SystemDims{{"F", dims.at("F")}}};
}

SlotLayout comb_from_dims(const RoleDims& dims, Order order) {
  if (dims.count("P")) {
    const TwoSlotLayout l = two_slot_from_dims(dims);
    return order == Order::kAB ? l.order_ab() : l.order_ba();
  }
  std::vector<SystemDims> spaces;
  for (const auto& r : comb_roles(dims)) {
    const auto it = dims.find(r);
    spaces.push_back(it == dims.end() ? SystemDims{} : SystemDims{{r, it->second}});
  }
  return SlotLayout(std::move(spaces));
}

TwoSlotInput resolve_two_slot(const LinOp& op, const std::optional<RoleDims>& dims) {
  if (all_labels(op.in(), two_slot_label) && all_labels(op.out(), two_slot_label)) {
    TwoSlotLayout l = two_slot_from(op.in(), op.out());
    if (dims) {
      check_against(*dims, "P", l.past);
      check_against(*dims, "AI", l.a_in);
      check_against(*dims, "AO", l.a_out);
      check_against(*dims, "BI", l.b_in);
      check_against(*dims, "BO", l.b_out);
      check_against(*dims, "F", l.future);
    }
    return {op, l};
  }
  if (!dims) throw FormatError("labels carry no two-slot roles; pass --dims");
  const TwoSlotLayout l = two_slot_from_dims(*dims);
  if (l.input_space().total_dim() != op.in().total_dim() ||
      l.output_space().total_dim() != op.out().total_dim()) {
    throw FormatError("--dims do not match the operator shape");
  }
  return {LinOp(l.input_space(), l.output_space(), op.data()), l};
}

CombInput resolve_comb(const LinOp& op, const std::optional<RoleDims>& dims, Order order,
                       bool choi) {
  if (choi && !op.in().same_factors(op.out())) {
    throw FormatError("a Choi operator must act on one space");
  }
  const SystemDims all_factors = choi ? op.out() : op.in().concat(op.out());
  const bool labelled = all_labels(all_factors, two_slot_label) || all_labels(all_factors, comb_label);
  if (labelled) {
    const SlotLayout l = comb_from_labels(all_factors, order);
    if (!choi && (!op.in().same_factors(l.inputs()) || !op.out().same_factors(l.outputs()))) {
      throw FormatError("inputs must be the even spaces and outputs the odd ones");
    }
    if (dims) {
      const SlotLayout want = comb_from_dims(*dims, order);
      if (want.spaces().size() != l.spaces().size()) throw FormatError("--dims conflict with the file");
      for (std::size_t m = 0; m < want.spaces().size(); ++m) {
        if (want.spaces()[m].total_dim() != l.spaces()[m].total_dim()) {
          throw FormatError("--dims conflict with the file at space " + std::to_string(m));
        }
      }
    }
    return {op, l};
  }
  if (!dims) throw FormatError("labels carry no roles; pass --dims");
  const SlotLayout l = comb_from_dims(*dims, order);
  if (choi) {
    const SystemDims a = l.all();
    if (a.total_dim() != op.out().total_dim()) throw FormatError("--dims do not match the operator");
    return {LinOp(a, a, op.data()), l};
  }
  if (l.inputs().total_dim() != op.in().total_dim() ||
      l.outputs().total_dim() != op.out().total_dim()) {
    throw FormatError("--dims do not match the operator shape");
  }
  return {LinOp(l.inputs(), l.outputs(), op.data()), l};
}

}  // namespace qsuper::cli
