#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <sstream>

#include "varseq_cli.hpp"

using namespace varseq;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("varseq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    io::write_file(path(name), text);
    return path(name);
  }

  fs::path dir_;
};

bool bit_identical(const Seq& a, const Seq& b) {
  if (a.support_lo() != b.support_lo() || a.size() != b.size()) return false;
  return std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST(Io, Format15) {
  EXPECT_EQ(io::format15(5.0), "5.00000000000000");
  EXPECT_EQ(io::format15(1.0), "1.00000000000000");
  EXPECT_EQ(io::format15(std::numbers::pi), "3.14159265358979");
}

TEST(Io, ParseGrid) {
  EXPECT_EQ(io::parse_grid("-64:64"), Grid(-64, 64));
  EXPECT_EQ(io::parse_grid("3:3"), Grid(3, 3));
  for (const char* bad : {"", "5", "3:1", "a:b", "1:2x", ":4"}) EXPECT_THROW(io::parse_grid(bad), input_error) << bad;
}

TEST(Io, CsvParsesSparseRows) {
  const Seq a = io::seq_from_csv("index,value\n-2,1.5\n1,-3\n", "t");
  EXPECT_EQ(a.support(), Grid(-2, 1));
  EXPECT_EQ(a(-2), 1.5);
  EXPECT_EQ(a(0), 0.0);
  EXPECT_EQ(a(1), -3.0);
  EXPECT_THROW(io::seq_from_csv("1;2\n", "t"), input_error);
}

TEST(Io, ExponentJsonRoundTrip) {
  const auto p = ExponentSequence::log_holder(2.0, 1.0, Grid(-5, 7));
  const auto back = io::exponent_from_json(io::parse_json(io::exponent_to_json(p).dump(), "t"));
  EXPECT_EQ(back, p);
  EXPECT_THROW(io::exponent_from_json(json{{"window_lo", 0}, {"window_hi", 3}, {"values", {2.0}}, {"tail", 2.0}}),
               input_error);
}

TEST(Io, ParseExponentDescriptors) {
  EXPECT_EQ(io::parse_exponent("constant:3", Grid(0, 0)), ExponentSequence::constant(3.0));
  EXPECT_EQ(io::parse_exponent("log_holder:2,1@-4:4", Grid(0, 0)),
            ExponentSequence::log_holder(2.0, 1.0, Grid(-4, 4)));
  EXPECT_THROW(io::parse_exponent("constant:x", Grid(0, 0)), input_error);
  EXPECT_THROW(io::parse_exponent("constant:0.5", Grid(0, 0)), input_error);
}

TEST_F(CliTest, NormOfThreeFour) {
  const auto seq = write("a.json", R"({"support_lo": 0, "values": [3, 4]})");
  const auto exp = write("p2.json", io::exponent_to_json(ExponentSequence(0, {2.0, 2.0}, 2.0)).dump());
  const auto r = cli_run({"norm", "--seq", seq, "--exp", exp});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "5.00000000000000\n");
  EXPECT_EQ(cli_run({"norm", "--seq", seq, "--exp", "constant:2"}).out, "5.00000000000000\n");
}

TEST_F(CliTest, UnitWeightConstant) {
  const auto r = cli_run({"weight", "--kind", "power", "--delta", "0", "--grid", "-64:64", "--class", "ar", "--r", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1.00000000000000\n");
  EXPECT_EQ(cli_run({"weight", "--kind", "power", "--delta", "0", "--grid", "-64:64", "--class", "a1"}).out,
            "1.00000000000000\n");
}

TEST_F(CliTest, ApplyRoundTripIsBitIdentical) {
  Rng g = substream(1, 2, 3);
  const Seq a = Seq::tabulate(Grid(-20, 20), [&](index_t) { return uniform(g, -1.0, 1.0); });
  const auto in = path("a.json");
  io::save_seq(in, a);
  ASSERT_TRUE(bit_identical(io::load_seq(in), a));

  for (const char* ext : {".json", ".csv"}) {
    const auto out = path(std::string("out") + ext);
    const auto r = cli_run({"apply", "--op", "riesz", "--alpha", "0.3", "--seq", in, "--grid", "-40:40", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    const Seq expected = riesz_potential(a, 0.3, Grid(-40, 40));
    EXPECT_TRUE(bit_identical(io::load_seq(out), expected)) << ext;
  }
  const auto mout = path("m.json");
  ASSERT_EQ(cli_run({"apply", "--op", "maximal", "--seq", in, "--grid", "-20:20", "--out", mout}).code, 0);
  EXPECT_TRUE(bit_identical(io::load_seq(mout), fractional_maximal(a, 0.0, Grid(-20, 20))));
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  const auto seq = write("a.json", R"({"support_lo": 0, "values": [3, 4]})");
  const auto unknown = cli_run({"norm", "--seq", seq, "--exp", "constant:2", "--bogus"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("--bogus"), std::string::npos) << unknown.err;
  EXPECT_EQ(cli_run({}).code, 2);
  EXPECT_EQ(cli_run({"norm", "--seq", seq}).code, 2);
  EXPECT_EQ(cli_run({"norm", "--seq", path("missing.json"), "--exp", "constant:2"}).code, 2);
  EXPECT_EQ(cli_run({"norm", "--seq", write("bad.json", "{"), "--exp", "constant:2"}).code, 2);
  EXPECT_EQ(cli_run({"apply", "--op", "hilbert", "--seq", seq, "--grid", "-4:4"}).code, 2);
  EXPECT_EQ(cli_run({"apply", "--op", "riesz", "--alpha", "1.5", "--seq", seq, "--grid", "-4:4", "--out", path("o.json")}).code, 2);
  EXPECT_EQ(cli_run({"weight", "--class", "ar", "--kind", "power", "--delta", "0", "--grid", "-4:4", "--r", "1"}).code, 2);
  EXPECT_EQ(cli_run({"verify", "--config", write("c.json", R"({"version": "v9"})"), "--out", path("r")}).code, 2);
}

TEST_F(CliTest, HelpExitsZero) {
  const auto r = cli_run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST_F(CliTest, VerifyWritesReports) {
  const auto cfg = write("c.json", R"({"version": "v1", "seed": 1, "verifiers": [
      {"id": "hold", "verifier": "holder", "trials": 20},
      {"id": "neg", "verifier": "theorem1", "p": {"constant": 1}, "r": 1.5, "bypass_hypotheses": true,
       "families": ["delta"], "grid": "-2:2", "size": 3, "expect": "fail"}]})");
  const auto out = path("reports");
  const auto r = cli_run({"verify", "--config", cfg, "--out", out, "--jobs", "2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  for (const char* f : {"hold.json", "hold.csv", "neg.delta.json", "neg.delta.csv", "summary.json"})
    EXPECT_TRUE(fs::exists(fs::path(out) / f)) << f;
  const json rep = io::parse_json(io::read_file(out + "/hold.json"), "hold");
  for (const char* k : {"name", "inputs", "ratios", "max_ratio", "verdict", "runtime", "details"})
    EXPECT_TRUE(rep.contains(k)) << k;
}

TEST_F(CliTest, VerifyFailureExitsOne) {
  const auto cfg = write("c.json", R"({"version": "v1", "verifiers": [
      {"verifier": "operator_norm", "op": "hilbert", "p_in": {"constant": 2}, "grid": "-16:16",
       "families": ["dense_random"], "size": 3, "bound": 0.1}]})");
  EXPECT_EQ(cli_run({"verify", "--config", cfg, "--out", path("r")}).code, 1);
}

TEST_F(CliTest, RdfWritesTransformAndReport) {
  const auto seq = write("b.json", R"({"support_lo": 0, "values": [1]})");
  const auto out = path("rb.json");
  const auto rep = path("rep.json");
  const auto r = cli_run({"rdf", "--seq", seq, "--exp", "constant:2", "--k", "12", "--grid", "-16:16", "--out", out,
                          "--report", rep, "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = io::parse_json(io::read_file(rep), "rep");
  for (const char* k : {"A_used", "K", "a1_constant", "checks"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(io::load_seq(out).support(), Grid(-16, 16));

  const auto fixed = cli_run({"rdf", "--seq", seq, "--exp", "constant:2", "--k", "1", "--a", "2", "--grid", "-8:8",
                              "--out", out});
  // K = 1 is too short for the A_1 bound: transform written, verdict fails.
  ASSERT_EQ(fixed.code, 1) << fixed.err;
  EXPECT_EQ(io::load_seq(out)(0), 1.25);
  EXPECT_EQ(cli_run({"rdf", "--seq", write("n.json", R"({"support_lo": 0, "values": [-1]})"), "--exp", "constant:2",
                     "--k", "1", "--a", "2", "--grid", "-8:8", "--out", out}).code, 2);
}
