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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qsuper/qsuper.hpp"
#include "qsuper_cli/cli.hpp"
#include "qsuper_cli/layout_args.hpp"
#include "qsuper_cli/matrix_file.hpp"

namespace qsuper::cli {
namespace {

namespace fs = std::filesystem;

const std::string kFixtures = QSUPER_FIXTURE_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qsuper_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

nlohmann::json load_json(const std::string& p) { return nlohmann::json::parse(read_text(p)); }

TEST(MatrixFile, RoundTripIsBitExact) {
  const LinOp u = random_unitary(SystemDims{{"X", 3}, {"Y", 2}}, SystemDims{{"Z", 6}}, 4);
  const std::string text = to_matrix_json(u);
  const LinOp back = parse_matrix_json(text);
  EXPECT_EQ(back.in(), u.in());
  EXPECT_EQ(back.out(), u.out());
  EXPECT_TRUE(back.data() == u.data());
  EXPECT_EQ(to_matrix_json(back), text);
}

TEST(MatrixFile, AwkwardDoublesSurvive) {
  Matrix m(1, 3);
  m << Complex(0.1, -0.0), Complex(1e-300, 5e-324), Complex(-1.0 / 3.0, 1.7976931348623157e308);
  const LinOp op(SystemDims{{"I", 3}}, SystemDims{{"O", 1}}, m);
  const LinOp back = parse_matrix_json(to_matrix_json(op));
  for (Index k = 0; k < 3; ++k) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back.data()(0, k).real()),
              std::bit_cast<std::uint64_t>(m(0, k).real()));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back.data()(0, k).imag()),
              std::bit_cast<std::uint64_t>(m(0, k).imag()));
  }
}

TEST(MatrixFile, RejectsMalformedInput) {
  const std::string good = to_matrix_json(LinOp::identity(SystemDims{{"A", 2}}));
  EXPECT_THROW(parse_matrix_json(good.substr(0, good.size() / 2)), FormatError);
  EXPECT_THROW(parse_matrix_json(R"({"version":2,"in_dims":[["A",1]],"out_dims":[["B",1]],"data":[[1,0]]})"),
               FormatError);
  EXPECT_THROW(parse_matrix_json(R"({"version":1,"in_dims":[["A",2]],"out_dims":[["B",1]],"data":[[1,0]]})"),
               FormatError);
  EXPECT_THROW(parse_matrix_json(R"({"version":1,"in_dims":[["A",1]],"out_dims":[["B",1]],"data":[[1e999,0]]})"),
               FormatError);
  EXPECT_THROW(parse_matrix_json(R"({"version":1,"in_dims":[["A",0]],"out_dims":[["B",1]],"data":[]})"),
               FormatError);
  EXPECT_THROW(parse_matrix_json(R"({"version":1,"in_dims":[["A",1],["A",1]],"out_dims":[["B",1]],"data":[[1,0]]})"),
               FormatError);
  EXPECT_THROW(parse_matrix_json(R"({"version":1,"in_dims":[["A",1]],"out_dims":[["B",1]],"data":[["x",0]]})"),
               FormatError);
}

TEST(MatrixFile, Digest) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(LayoutArgs, RolesAndDims) {
  EXPECT_EQ(role_of("P.c"), "P");
  EXPECT_EQ(role_of("AI"), "AI");
  const RoleDims d = parse_role_dims("P=4,AI=2,AO=2,BI=2,BO=2,F=4");
  EXPECT_EQ(d.at("P"), 4);
  EXPECT_THROW(parse_role_dims("P=0"), FormatError);
  EXPECT_THROW(parse_role_dims("Q=2"), FormatError);
  EXPECT_THROW(parse_role_dims("P=2,P=2"), FormatError);
  EXPECT_THROW(parse_role_dims("P"), FormatError);
}

TEST_F(CliTest, VerifyFixtures) {
  EXPECT_EQ(run({"verify", fixture("switch_d2.json"), "--kind", "pure-superchannel"}).code, 0);
  EXPECT_EQ(run({"verify", fixture("d3d.json"), "--kind", "pure-superchannel"}).code, 0);
  EXPECT_EQ(run({"verify", fixture("random_unitary_4_2_2.json"), "--kind", "pure-superchannel"}).code, 1);
  EXPECT_EQ(run({"verify", fixture("ordered_comb.json"), "--kind", "pure-superchannel"}).code, 0);
}

TEST_F(CliTest, VerifyTruncatedFileIsFormatError) {
  const std::string text = read_text(fixture("switch_d2.json"));
  write_text_file(path("cut.json"), text.substr(0, text.size() / 3));
  const RunResult r = run({"verify", path("cut.json"), "--kind", "pure-superchannel"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_EQ(run({"verify", path("missing.json"), "--kind", "pure-superchannel"}).code, 2);
}

TEST_F(CliTest, VerifyJsonReport) {
  const RunResult r = run({"verify", fixture("switch_d2.json"), "--kind", "pure-superchannel", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "verify");
  EXPECT_EQ(j["verdict"], true);
  EXPECT_EQ(j["input_digest"], fnv1a_hex(read_text(fixture("switch_d2.json"))));
  EXPECT_EQ(j["residuals"].size(), 4u);
  EXPECT_EQ(j["tolerances"]["subspace"], 1e-8);
  // Same input, same report.
  EXPECT_EQ(run({"verify", fixture("switch_d2.json"), "--kind", "pure-superchannel", "--json"}).out, r.out);
}

TEST_F(CliTest, DimsAgreeConflictOrRelabel) {
  const std::string f = fixture("random_unitary_4_2_2.json");
  EXPECT_EQ(run({"verify", f, "--kind", "pure-superchannel", "--dims", "P=4,AI=2,AO=2,BI=2,BO=2,F=4"}).code, 1);
  EXPECT_EQ(run({"verify", f, "--kind", "pure-superchannel", "--dims", "P=2,AI=2,AO=2,BI=2,BO=2,F=2"}).code, 2);
  // A file with role-free labels takes its layout from --dims.
  const LinOp sw = read_matrix_file(fixture("switch_d2.json"));
  write_matrix_file(path("plain.json"), LinOp(SystemDims{{"X", 16}}, SystemDims{{"Y", 16}}, sw.data()));
  EXPECT_EQ(run({"verify", path("plain.json"), "--kind", "pure-superchannel"}).code, 2);
  EXPECT_EQ(run({"verify", path("plain.json"), "--kind", "pure-superchannel", "--dims",
                 "P=4,AI=2,AO=2,BI=2,BO=2,F=4"}).code,
            0);
}

TEST_F(CliTest, VerifyCombKinds) {
  const std::string oc = fixture("ordered_comb.json");
  EXPECT_EQ(run({"verify", oc, "--kind", "pure-comb", "--order", "ab"}).code, 0);
  EXPECT_EQ(run({"verify", oc, "--kind", "pure-comb", "--order", "ba"}).code, 1);
  write_matrix_file(path("choi.json"), choi_of_unitary(read_matrix_file(oc)).op());
  EXPECT_EQ(run({"verify", path("choi.json"), "--kind", "comb-choi", "--order", "ab"}).code, 0);
  write_matrix_file(path("bad_choi.json"),
                    choi_of_unitary(read_matrix_file(fixture("random_unitary_4_2_2.json"))).op());
  EXPECT_EQ(run({"verify", path("bad_choi.json"), "--kind", "comb-choi", "--order", "ab"}).code, 1);
  // H-labelled comb built on the command line.
  ASSERT_EQ(run({"build", "random-comb", "--dims", "H0=4,H1=2,H2=2,H3=4", "--seed", "3", "--out",
                 path("h.json")}).code,
            0);
  EXPECT_EQ(run({"verify", path("h.json"), "--kind", "pure-comb"}).code, 0);
  // A non-unitary operator is a negative verdict, not a crash.
  write_matrix_file(path("zero.json"),
                    LinOp(SystemDims{{"H0", 2}}, SystemDims{{"H1", 2}}, Matrix::Zero(2, 2)));
  EXPECT_EQ(run({"verify", path("zero.json"), "--kind", "pure-comb"}).code, 1);
}

TEST_F(CliTest, BuildShapesAndDeterminism) {
  ASSERT_EQ(run({"build", "switch", "--dim", "2", "--out", path("s.json")}).code, 0);
  EXPECT_EQ(read_matrix_file(path("s.json")).data().rows(), 16);
  ASSERT_EQ(run({"build", "d3d", "--out", path("d.json")}).code, 0);
  EXPECT_EQ(read_matrix_file(path("d.json")).data().rows(), 24);
  EXPECT_EQ(read_text(path("s.json")), read_text(fixture("switch_d2.json")));
  const std::vector<std::string> args = {"build", "random-direct-sum", "--dims", "P=6,AI=2,AO=2,BI=2,BO=2,F=6",
                                         "--split", "4", "--seed", "9"};
  const RunResult a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({"build", "random-unitary"}).code, 2);
  EXPECT_EQ(run({"build", "nonsense"}).code, 2);
}

TEST_F(CliTest, DecomposeSwitch) {
  const RunResult r = run({"decompose", fixture("switch_d2.json"), "--out", path("sw")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = load_json(path("sw.report.json"));
  EXPECT_EQ(rep["classification"], "switch-like");
  EXPECT_EQ(rep["blocks"]["ab"]["past_dim"], 2);
  EXPECT_EQ(rep["blocks"]["ba"]["past_dim"], 2);
  for (const char* tag : {"ab", "ba"}) {
    const LinOp b = read_matrix_file(path(std::string("sw.") + tag + ".json"));
    EXPECT_EQ(b.data().rows(), 8);
    EXPECT_TRUE(fs::exists(path(std::string("sw.") + tag + ".past.json")));
    EXPECT_TRUE(fs::exists(path(std::string("sw.") + tag + ".U0.json")));
  }
}

TEST_F(CliTest, DecomposeD3d) {
  ASSERT_EQ(run({"decompose", fixture("d3d.json"), "--out", path("d3")}).code, 0);
  const auto rep = load_json(path("d3.report.json"));
  EXPECT_EQ(rep["classification"], "general-direct-sum");
  EXPECT_EQ(rep["blocks"]["ab"]["past_dim"], 4);
  EXPECT_EQ(rep["blocks"]["ba"]["past_dim"], 2);
  EXPECT_EQ(rep["blocks"]["ab"]["future_dim"], 4);
  EXPECT_EQ(rep["blocks"]["ba"]["future_dim"], 2);
}

TEST_F(CliTest, DecomposeOrderedComb) {
  ASSERT_EQ(run({"decompose", fixture("ordered_comb.json"), "--out", path("oc")}).code, 0);
  const auto rep = load_json(path("oc.report.json"));
  EXPECT_EQ(rep["classification"], "ordered-A-before-B");
  EXPECT_FALSE(rep["blocks"].contains("ba"));
  EXPECT_EQ(rep["blocks"]["ab"]["ancilla_dims"], nlohmann::json::array({1, 1, 1, 1}));
  EXPECT_TRUE(fs::exists(path("oc.ab.U2.json")));
}

TEST_F(CliTest, DecomposeRejectsNonSuperchannel) {
  EXPECT_EQ(run({"decompose", fixture("random_unitary_4_2_2.json"), "--out", path("x")}).code, 1);
  EXPECT_EQ(run({"decompose", fixture("random_unitary_4_2_2.json"), "--kind", "staircase", "--order", "ab",
                 "--out", path("y")}).code,
            1);
}

double phase_gap(const std::string& a, const std::string& b) {
  const LinOp x = read_matrix_file(a), y = read_matrix_file(b);
  return phase_residual(x.data(), aligned(y, x.in(), x.out()).data());
}

TEST_F(CliTest, AssembleRoundTrips) {
  for (const char* name : {"switch_d2.json", "d3d.json"}) {
    ASSERT_EQ(run({"decompose", fixture(name), "--out", path("b")}).code, 0);
    ASSERT_EQ(run({"assemble", path("b.ab.json"), path("b.ba.json"), "--out", path("back.json")}).code, 0);
    EXPECT_LT(phase_gap(fixture(name), path("back.json")), 1e-7);
  }
  ASSERT_EQ(run({"build", "random-direct-sum", "--dims", "P=6,AI=2,AO=2,BI=2,BO=2,F=6", "--split", "2",
                 "--seed", "1", "--out", path("rds.json")}).code,
            0);
  ASSERT_EQ(run({"decompose", path("rds.json"), "--out", path("r")}).code, 0);
  ASSERT_EQ(run({"assemble", path("r.ba.json"), path("r.ab.json"), "--out", path("rback.json")}).code, 0);
  EXPECT_LT(phase_gap(path("rds.json"), path("rback.json")), 1e-7);
}

TEST_F(CliTest, AssembleSingleBlockIsEmbeddedCopy) {
  ASSERT_EQ(run({"decompose", fixture("ordered_comb.json"), "--out", path("oc")}).code, 0);
  ASSERT_EQ(run({"assemble", path("oc.ab.json"), "--out", path("back.json")}).code, 0);
  EXPECT_LT(phase_gap(fixture("ordered_comb.json"), path("back.json")), 1e-7);
}

TEST_F(CliTest, AssembleInconsistentBlocksFails) {
  ASSERT_EQ(run({"decompose", fixture("switch_d2.json"), "--out", path("sw")}).code, 0);
  ASSERT_EQ(run({"decompose", fixture("d3d.json"), "--out", path("d3")}).code, 0);
  EXPECT_EQ(run({"assemble", path("sw.ab.json"), path("d3.ba.json"), "--out", path("x.json")}).code, 2);
  EXPECT_EQ(run({"assemble", path("sw.ab.json"), path("sw.ab.json"), "--out", path("x.json")}).code, 2);
}

TEST_F(CliTest, StaircaseRoundTrip) {
  ASSERT_EQ(run({"build", "random-comb", "--dims", "H0=4,H1=2,H2=2,H3=2,H4=2,H5=4", "--seed", "8", "--out",
                 path("c.json")}).code,
            0);
  ASSERT_EQ(run({"decompose", path("c.json"), "--kind", "staircase", "--out", path("c")}).code, 0);
  const auto rep = load_json(path("c.report.json"));
  EXPECT_EQ(rep["ancilla_dims"], nlohmann::json::array({1, 2, 2, 1}));
  ASSERT_EQ(run({"assemble", "--kind", "staircase", path("c.U0.json"), path("c.U1.json"), path("c.U2.json"),
                 "--out", path("cback.json")}).code,
            0);
  EXPECT_LT(phase_gap(path("c.json"), path("cback.json")), 1e-7);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", fixture("switch_d2.json")}).code, 2);
  EXPECT_EQ(run({"verify", fixture("switch_d2.json"), "--kind", "other"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace qsuper::cli
