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

// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "qsuper/qsuper.hpp"
#include "qsuper/spanning_family.hpp"
#include "qsuper_cli/cli.hpp"
#include "qsuper_cli/matrix_file.hpp"

namespace {

using namespace qsuper;

constexpr double kAngleTol = 1e-8;
constexpr double kRoundTripTol = 1e-7;
constexpr double kPlugTol = 1e-8;
constexpr double kTraceTol = 1e-8;

// Collects the worst figure seen and the first failure message.
struct Tally {
  bool ok = true;
  double worst = 0.0;
  int count = 0;
  std::string first_failure;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
  void residual(double value, double tol, const std::string& what) {
    worst = std::max(worst, value);
    std::ostringstream ss;
    ss << what << " = " << value;
    check(value < tol, ss.str());
  }
};

SlotLayout chain(const std::vector<Index>& dims) {
  std::vector<SystemDims> spaces;
  for (std::size_t m = 0; m < dims.size(); ++m) spaces.push_back(SystemDims{{"H" + std::to_string(m), dims[m]}});
  return SlotLayout(spaces);
}

// Two-slot reading of a 2-slot chain layout.
TwoSlotLayout as_two_slot(const SlotLayout& l) {
  return {l.space(0), l.space(1), l.space(2), l.space(3), l.space(4), l.space(5)};
}

Subspace coords(const SystemDims& amb, const std::vector<Index>& idx) {
  Matrix b = Matrix::Zero(amb.total_dim(), static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) b(idx[k], static_cast<Index>(k)) = 1.0;
  return Subspace(amb, b);
}

// ---- shared instances ----------------------------------------------------------

struct TwoSlotCase {
  std::string name;
  LinOp u;
  TwoSlotLayout layout;
};

struct CombCase {
  std::string name;
  LinOp u;
  SlotLayout layout;
};

const std::vector<std::vector<Index>> kCombLayouts = {{2, 2, 2, 2},       {4, 2, 2, 4},       {4, 2, 3, 6},
                                                      {2, 2, 2, 2, 2, 2}, {4, 2, 2, 2, 2, 4}, {4, 2, 2, 4, 2, 2}};

std::vector<CombCase> comb_cases() {
  std::vector<CombCase> out;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto& dims = kCombLayouts[seed % kCombLayouts.size()];
    const SlotLayout l = chain(dims);
    out.push_back({"comb seed " + std::to_string(seed), random_pure_comb(l, 1000 + seed), l});
  }
  return out;
}

struct SumCase {
  TwoSlotCase inst;
  RandomDirectSum built;
};

std::vector<SumCase> sum_cases() {
  const std::vector<std::pair<TwoSlotLayout, Index>> shapes = {
      {simple_layout(4, 2, 2, 2, 2, 4), 2}, {simple_layout(6, 2, 2, 2, 2, 6), 4},
      {simple_layout(6, 2, 2, 2, 2, 6), 2}};
  std::vector<SumCase> out;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto& [l, split] = shapes[seed % shapes.size()];
    RandomDirectSum r = random_direct_sum(l, split, 2000 + seed);
    out.push_back({{"direct sum seed " + std::to_string(seed), r.instance.unitary, l}, r});
  }
  return out;
}

// Every two-slot instance of criteria 1-4: switch, D = 3d, the 2-slot
// combs of criterion 3 read as two-slot maps, and the direct sums.
std::vector<TwoSlotCase> two_slot_cases(const std::vector<CombCase>& combs, const std::vector<SumCase>& sums) {
  std::vector<TwoSlotCase> out;
  const auto sw = build_quantum_switch(2);
  out.push_back({"switch", sw.unitary, sw.layout});
  const auto d3 = build_d3d_example();
  out.push_back({"d3d", d3.unitary, d3.layout});
  for (const auto& c : combs) {
    if (c.layout.slots() == 2) out.push_back({c.name, c.u, as_two_slot(c.layout)});
  }
  for (const auto& s : sums) out.push_back(s.inst);
  return out;
}

// ---- criteria ------------------------------------------------------------------

// Block against the identity-wire comb of one switch branch: recover the
// local bases V_P = E^dag p and V_F = f^dag E and require
// W = (1 (x) V_F) wire (V_P (x) 1) up to phase.
void check_wire_block(const CombBlock& b, const Subspace& e_past, const Subspace& e_future, bool a_first,
                      const TwoSlotLayout& l, Tally& t, const std::string& tag) {
  t.residual(max_principal_angle(b.past, e_past), kAngleTol, tag + " past angle");
  t.residual(max_principal_angle(b.future, e_future), kAngleTol, tag + " future angle");
  const Matrix vp = e_past.basis().adjoint() * b.past.aligned_to(l.past).basis();
  const Matrix vf = b.future.aligned_to(l.future).basis().adjoint() * e_future.basis();
  Matrix wire = Matrix::Zero(8, 8);
  for (int p = 0; p < 2; ++p)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        // Inputs (P, AO, BO) = (p, x, y); outputs (AI, BI, F).
        const int in = (p * 2 + x) * 2 + y;
        const int out = a_first ? (p * 2 + x) * 2 + y : (y * 2 + p) * 2 + x;
        wire(out, in) = 1.0;
      }
  const Matrix want = oracle::kron(Matrix::Identity(4, 4), vf) * wire * oracle::kron(vp, Matrix::Identity(4, 4));
  const SystemDims bp{{kBlockPast, 2}}, bf{{kBlockFuture, 2}};
  const LinOp w = aligned(b.unitary, bp.concat(l.a_out).concat(l.b_out), l.a_in.concat(l.b_in).concat(bf));
  t.residual(phase_residual(w.data(), want), kAngleTol, tag + " wire match");
}

Tally ac1() {
  Tally t;
  const auto sw = build_quantum_switch(2);
  t.check(verify_pure_superchannel(sw.unitary, sw.layout).passed, "verification failed");
  const DirectSumDecomp d = direct_sum_decompose(sw.unitary, sw.layout);
  t.check(d.past_dim_ab() == 2 && d.past_dim_ba() == 2, "past block dims");
  t.check(d.future_dim_ab() == 2 && d.future_dim_ba() == 2, "future block dims");
  t.check(d.classification == CausalClass::kSwitchLike, "classification " + to_string(d.classification));
  if (d.ab && d.ba) {
    check_wire_block(*d.ab, coords(sw.layout.past, {0, 1}), coords(sw.layout.future, {0, 1}), true, sw.layout, t, "ab");
    check_wire_block(*d.ba, coords(sw.layout.past, {2, 3}), coords(sw.layout.future, {2, 3}), false, sw.layout, t, "ba");
  }
  t.count = 1;
  return t;
}

Tally ac2() {
  Tally t;
  const auto d3 = build_d3d_example();
  t.check(verify_pure_superchannel(d3.unitary, d3.layout).passed, "verification failed");
  const DirectSumDecomp d = direct_sum_decompose(d3.unitary, d3.layout);
  t.check(d.past_dim_ab() == 4 && d.past_dim_ba() == 2, "past block dims");
  t.check(d.future_dim_ab() == 4 && d.future_dim_ba() == 2, "future block dims");
  t.check(d.classification == CausalClass::kGeneralDirectSum, "classification " + to_string(d.classification));
  if (d.ab && d.ba) {
    t.residual(max_principal_angle(d.ab->past, coords(d3.layout.past, {0, 1, 2, 3})), kAngleTol, "P ab angle");
    t.residual(max_principal_angle(d.ba->past, coords(d3.layout.past, {4, 5})), kAngleTol, "P ba angle");
    t.residual(max_principal_angle(d.ab->future, coords(d3.layout.future, {0, 1, 2, 3})), kAngleTol, "F ab angle");
    t.residual(max_principal_angle(d.ba->future, coords(d3.layout.future, {4, 5})), kAngleTol, "F ba angle");
  }
  t.count = 1;
  return t;
}

Tally ac3(const std::vector<CombCase>& combs) {
  Tally t;
  for (const auto& c : combs) {
    const CombCircuit circ = staircase_decompose(c.u, c.layout);
    const LinOp back = compose_staircase(circ);
    const LinOp ua = aligned(c.u, c.layout.inputs(), c.layout.outputs());
    t.residual(phase_residual(ua.data(), aligned(back, ua.in(), ua.out()).data()), kRoundTripTol, c.name);
    for (int n = 0; n <= c.layout.slots(); ++n) {
      const auto i = static_cast<std::size_t>(n);
      t.check(c.layout.space(2 * n).total_dim() * circ.ancilla_dims[i] ==
                  c.layout.space(2 * n + 1).total_dim() * circ.ancilla_dims[i + 1],
              c.name + " chain broken");
    }
    ++t.count;
  }
  return t;
}

Tally ac4(const std::vector<SumCase>& sums) {
  Tally t;
  for (const auto& s : sums) {
    const DirectSumDecomp d = direct_sum_decompose(s.inst.u, s.inst.layout);
    t.residual(phase_residual(assemble(d).data(), s.inst.u.data()), kRoundTripTol, s.inst.name + " round trip");
    if (!d.ab || !d.ba) {
      t.check(false, s.inst.name + " lost a block");
      continue;
    }
    t.residual(max_principal_angle(d.ab->past, s.built.ab.past), kAngleTol, s.inst.name + " P ab");
    t.residual(max_principal_angle(d.ba->past, s.built.ba.past), kAngleTol, s.inst.name + " P ba");
    t.residual(max_principal_angle(d.ab->future, s.built.ab.future), kAngleTol, s.inst.name + " F ab");
    t.residual(max_principal_angle(d.ba->future, s.built.ba.future), kAngleTol, s.inst.name + " F ba");
    ++t.count;
  }
  return t;
}

Tally ac5() {
  Tally t;
  const TwoSlotLayout l = simple_layout(4, 2, 2, 2, 2, 4);
  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    rejected += !verify_pure_superchannel(random_unitary(l.input_space(), l.output_space(), 3000 + seed), l).passed;
  }
  t.check(rejected == 100, std::to_string(rejected) + "/100 unitaries rejected");
  int rejected_choi = 0;
  const SlotLayout cl = l.order_ab();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    rejected_choi += !verify_comb_choi(random_choi_shaped(cl, 4000 + seed), cl).passed;
  }
  t.check(rejected_choi == 100, std::to_string(rejected_choi) + "/100 Choi operators rejected");
  t.count = 200;
  return t;
}

// Dimension-2 ancillas on equal-sized slots; unequal slots get the smallest
// ancilla pair that keeps the slot unitary square, scaled by 2.
LinOp slot_unitary(const SystemDims& in, const SystemDims& out, const std::string& tag, Rng& rng) {
  const Index g = std::gcd(in.total_dim(), out.total_dim());
  const SystemDims i = in.concat(SystemDims{{tag + ".in", 2 * out.total_dim() / g}});
  const SystemDims o = out.concat(SystemDims{{tag + ".out", 2 * in.total_dim() / g}});
  return LinOp(i, o, haar_unitary(i.total_dim(), rng));
}

Tally ac6(const std::vector<TwoSlotCase>& twos, const std::vector<CombCase>& combs) {
  Tally t;
  Rng rng(5000);
  for (const auto& c : twos) {
    const DirectSumDecomp d = direct_sum_decompose(c.u, c.layout);
    const LinOp u = assemble(d);
    for (int k = 0; k < 50; ++k) {
      const LinOp ua = slot_unitary(c.layout.a_in, c.layout.a_out, "xa", rng);
      const LinOp ub = slot_unitary(c.layout.b_in, c.layout.b_out, "xb", rng);
      t.residual(is_unitary(plug_unitaries(u, {ua, ub})).residual, kPlugTol, c.name);
    }
    ++t.count;
  }
  // 1-slot combs of criterion 3 take a single slot unitary.
  for (const auto& c : combs) {
    if (c.layout.slots() != 1) continue;
    for (int k = 0; k < 50; ++k) {
      const LinOp v = slot_unitary(c.layout.space(1), c.layout.space(2), "x", rng);
      t.residual(is_unitary(plug_unitaries(c.u, {v})).residual, kPlugTol, c.name);
    }
    ++t.count;
  }
  return t;
}

Tally ac7(const std::vector<TwoSlotCase>& twos) {
  Tally t;
  for (const auto& c : twos) {
    const DirectSumDecomp d = direct_sum_decompose(c.u, c.layout);
    const TraceFutureReport r = trace_future_check(d, c.u);
    t.residual(r.residual, kTraceTol, c.name);
    t.residual(std::abs(r.weight_ab + r.weight_ba - 1.0), kTraceTol, c.name + " weights");
    ++t.count;
  }
  return t;
}

Tally ac8() {
  Tally t;
  Rng rng(6000);
  std::mt19937_64 orng(6001);
  const std::vector<SystemDims> ambients = {SystemDims{{"E", 2}, {"F", 3}},
                                            SystemDims{{"E", 2}, {"F", 2}, {"G", 2}}};
  for (int k = 0; k < 200; ++k) {
    const SystemDims& amb = ambients[static_cast<std::size_t>(k % 2)];
    const oracle::Dims dims = k % 2 == 0 ? oracle::Dims{2, 3} : oracle::Dims{2, 2, 2};
    const Index n = amb.total_dim();
    const Index wdim = 1 + k % 3;
    const Subspace w = Subspace::from_spanning(amb, gaussian_matrix(n, wdim, rng));
    // Trace out E, keep the rest.
    const Labels keep = k % 2 == 0 ? Labels{"F"} : Labels{"F", "G"};
    const Subspace red = reduced_subspace(w, {"E"}, keep);
    const Subspace want(amb.select(keep), oracle::density_support(w.basis(), dims, {0}, orng, 60));
    t.residual(max_principal_angle(red, want), kAngleTol, "reduced " + std::to_string(k));

    // Intersections with a guaranteed common part.
    const Matrix common = gaussian_matrix(n, 1, rng);
    Matrix a(n, 2), b(n, 3);
    a << common, gaussian_matrix(n, 1, rng);
    b << common, gaussian_matrix(n, 2, rng);
    const Subspace s = Subspace::from_spanning(amb, a), u = Subspace::from_spanning(amb, b);
    const Subspace want_i(amb, oracle::intersection(s.basis(), u.basis()));
    t.residual(max_principal_angle(intersect(s, u), want_i), kAngleTol, "intersect " + std::to_string(k));
    ++t.count;
  }
  return t;
}

Tally ac9(const std::vector<TwoSlotCase>& twos) {
  Tally t;
  Rng rng(7000);
  for (const auto& c : twos) {
    const Index da = c.layout.a_out.total_dim(), db = c.layout.b_out.total_dim();
    std::vector<Vector> betas = spanning_family(db);
    betas.resize(std::min<std::size_t>(betas.size(), 4));
    while (betas.size() < 5) betas.push_back(random_unit_vector(db, rng));
    for (const auto& alpha : spanning_family(da)) {
      const Subspace ref = p_point_decomposition(c.u, c.layout, alpha, betas[0]).ab;
      for (std::size_t j = 1; j < betas.size(); ++j) {
        const Subspace other = p_point_decomposition(c.u, c.layout, alpha, betas[j]).ab;
        t.check(ref.dim() == other.dim(), c.name + " dimension changed with beta");
        if (ref.dim() == other.dim()) {
          t.residual(std::max(subset_residual(ref, other), subset_residual(other, ref)), kSubspaceTol, c.name);
        }
      }
    }
    ++t.count;
  }
  return t;
}

int run_quiet(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::run_cli(args, out, err);
}

Tally ac10() {
  Tally t;
  const std::string dir = QSUPER_FIXTURE_DIR;
  const std::string sw = dir + "/switch_d2.json", d3 = dir + "/d3d.json", neg = dir + "/random_unitary_4_2_2.json";
  for (const auto& f : {sw, d3, neg}) t.check(std::filesystem::exists(f), "missing fixture " + f);
  t.check(run_quiet({"verify", sw, "--kind", "pure-superchannel"}) == cli::kExitPass, "switch fixture exit");
  t.check(run_quiet({"verify", d3, "--kind", "pure-superchannel"}) == cli::kExitPass, "d3d fixture exit");
  t.check(run_quiet({"verify", neg, "--kind", "pure-superchannel"}) == cli::kExitFail, "negative fixture exit");

  const auto tmp = std::filesystem::temp_directory_path() / "qsuper_acceptance";
  std::filesystem::create_directories(tmp);
  const std::string cut = (tmp / "truncated.json").string();
  const std::string text = cli::read_text(sw);
  cli::write_text_file(cut, text.substr(0, text.size() / 2));
  t.check(run_quiet({"verify", cut, "--kind", "pure-superchannel"}) == cli::kExitUsage, "truncated file exit");

  // Bit-exact save/load on the fixtures and on random operators.
  for (const auto& f : {sw, d3, neg}) {
    const std::string body = cli::read_text(f);
    t.check(cli::to_matrix_json(cli::parse_matrix_json(body)) == body, "fixture text not reproduced: " + f);
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LinOp u = random_unitary(SystemDims{{"X", 6}}, SystemDims{{"Y", 6}}, 8000 + seed);
    const std::string p = (tmp / "rt.json").string();
    cli::write_matrix_file(p, u);
    t.check(cli::read_matrix_file(p).data() == u.data(), "save/load not bit-exact");
  }
  std::filesystem::remove_all(tmp);
  t.count = 1;
  return t;
}

}  // namespace

int main() {
  const auto combs = comb_cases();
  const auto sums = sum_cases();
  const auto twos = two_slot_cases(combs, sums);

  struct Item {
    const char* id;
    const char* title;
    std::function<Tally()> run;
  };
  const std::vector<Item> items = {
      {"AC1", "quantum switch decomposes into two wire combs", ac1},
      {"AC2", "D = 3d example splits 4 + 2, general direct sum", ac2},
      {"AC3", "staircase round trip on 100 pure combs", [&] { return ac3(combs); }},
      {"AC4", "direct-sum round trip on 50 random sums", [&] { return ac4(sums); }},
      {"AC5", "negative controls rejected", ac5},
      {"AC6", "plugged slot unitaries give a unitary", [&] { return ac6(twos, combs); }},
      {"AC7", "Tr_F splits into the block combs", [&] { return ac7(twos); }},
      {"AC8", "reduced subspace and intersection match oracles", ac8},
      {"AC9", "bar part of P independent of beta", [&] { return ac9(twos); }},
      {"AC10", "CLI fixtures, exit codes and exact save/load", ac10},
  };

  int failed = 0;
  for (const auto& it : items) {
    const auto t0 = std::chrono::steady_clock::now();
    Tally t;
    try {
      t = it.run();
    } catch (const std::exception& e) {
      t.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %-5s %s (cases %d, worst %.3g, %.1fs)%s%s\n", t.ok ? "PASS" : "FAIL", it.id, it.title,
                t.count, t.worst, secs, t.ok ? "" : ": ", t.ok ? "" : t.first_failure.c_str());
    failed += !t.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(items.size()) - failed, items.size());
  return failed == 0 ? 0 : 1;
}
