#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "varseq/suite.hpp"

using namespace varseq;

namespace {

const ExponentSequence p2 = ExponentSequence::constant(2.0);

HarnessOptions quick() {
  HarnessOptions o;
  o.maximal_ensemble = 10;
  return o;
}

}  // namespace

TEST(OperatorNorm, RieszDeltaMatchesDirectSum) {
  const Grid g(-200, 200);
  const Ensemble ens(Family::delta, 1, g, 0);
  const auto rep = empirical_operator_norm(OperatorKind::riesz, 0.5, ExponentSequence::constant(4.0 / 3.0),
                                           ExponentSequence::constant(4.0), ens);
  double s = 0.0;
  for (index_t j = g.lo; j <= g.hi; ++j)
    if (j != 0) s += std::pow(std::abs(static_cast<double>(j)), -2.0);  // (|j|^{-1/2})^4
  EXPECT_NEAR(rep.max_ratio, std::pow(s, 0.25), 1e-10);
  EXPECT_TRUE(rep.verdict);
}

TEST(OperatorNorm, MaximalDeltaMatchesDirectSum) {
  const Grid g(-300, 300);
  const auto rep = empirical_operator_norm(OperatorKind::maximal, 0.0, p2, p2, Ensemble(Family::delta, 1, g, 0));
  double s = 0.0;
  for (index_t j = g.lo; j <= g.hi; ++j) s += 1.0 / std::pow(1.0 + std::abs(static_cast<double>(j)), 2.0);
  EXPECT_NEAR(rep.max_ratio, std::sqrt(s), 1e-10);
  EXPECT_LT(rep.max_ratio, std::sqrt(std::numbers::pi * std::numbers::pi / 3.0 - 1.0));
}

TEST(OperatorNorm, RieszHypothesisNamed) {
  const Ensemble ens(Family::delta, 1, Grid(-8, 8), 0);
  try {
    empirical_operator_norm(OperatorKind::riesz, 0.5, ExponentSequence::constant(2.5), p2, ens);
    FAIL();
  } catch (const precondition_error& e) {
    EXPECT_NE(std::string(e.what()).find("p_plus < 1/alpha"), std::string::npos);
  }
}

TEST(OperatorNorm, HilbertBelowSymbolSup) {
  const Ensemble ens(Family::dense_random, 40, Grid(-512, 511), 7);
  const auto rep = empirical_operator_norm(OperatorKind::hilbert, 0.0, p2, p2, ens);
  EXPECT_LE(rep.max_ratio, std::numbers::pi + 0.02);
  EXPECT_GT(rep.max_ratio, 0.0);
}

TEST(Theorem1, ConstantExponentPasses) {
  const auto rep = verify_theorem1(p2, 1.5, Ensemble(Family::dense_random, 20, Grid(-128, 128), 1), quick());
  EXPECT_TRUE(rep.verdict) << rep.details.dump();
  EXPECT_LE(rep.max_ratio, std::numbers::pi + 0.02);
  EXPECT_TRUE(rep.details.contains("class_b_proxy"));
  EXPECT_TRUE(rep.details.contains("stability"));
}

TEST(Theorem1, LogHolderPasses) {
  const auto p = ExponentSequence::log_holder(2.0, 1.0, Grid(-256, 256));
  const auto rep = verify_theorem1(p, 1.3, Ensemble(Family::block, 10, Grid(-256, 256), 2), quick());
  EXPECT_TRUE(rep.verdict) << rep.details.dump();
}

TEST(Theorem1, RejectsROutOfRange) {
  const Ensemble ens(Family::delta, 2, Grid(-8, 8), 0);
  EXPECT_THROW(verify_theorem1(p2, 2.0, ens), precondition_error);
  EXPECT_THROW(verify_theorem1(p2, 1.0, ens), precondition_error);
}

TEST(Theorem1, NegativeControlAtPOneFails) {
  HarnessOptions o;
  o.bypass_hypotheses = true;
  const auto rep = verify_theorem1(ExponentSequence::constant(1.0), 1.5, Ensemble(Family::delta, 10, Grid(-2, 2), 42), o);
  EXPECT_FALSE(rep.verdict);
  // Centred delta: sum_{j != 0} 1/|j| on [-2,2] is 3, on [-4,5] it is H_4 + H_5.
  EXPECT_NEAR(rep.details["stability"]["max_ratio"].get<double>(), 3.0, 1e-12);
  EXPECT_GT(rep.details["stability"]["growth"].get<double>(), 1.3);
}

TEST(Theorem2, ConstantExponentPasses) {
  const auto rep = verify_theorem2(ExponentSequence::constant(4.0), 3.0, 0.5,
                                   Ensemble(Family::sparse_random, 10, Grid(-128, 128), 3), quick());
  EXPECT_TRUE(rep.verdict) << rep.details.dump();
  EXPECT_NEAR(rep.inputs["r"].get<double>(), 1.2, 1e-15);
  EXPECT_NEAR(rep.inputs["p"]["p_minus"].get<double>(), 4.0 / 3.0, 1e-15);
}

TEST(Theorem2, RejectsHypothesisViolations) {
  const Ensemble ens(Family::delta, 2, Grid(-8, 8), 0);
  const auto q = ExponentSequence::constant(4.0);
  EXPECT_THROW(verify_theorem2(q, 3.0, 0.0, ens), precondition_error);
  EXPECT_THROW(verify_theorem2(q, 2.0, 0.5, ens), precondition_error);
  EXPECT_THROW(verify_theorem2(q, 4.0, 0.5, ens), precondition_error);
}

TEST(Theorem3, SingleMemberReducesToScalarMaximal) {
  const Ensemble ens(Family::dense_random, 6, Grid(-64, 64), 4);
  const auto rep = verify_theorem3(p2, 1.5, 0.0, 2.0, 1, ens, quick());
  const auto scalar = operator_ratios(OperatorKind::maximal, 0.0, p2, p2, ens);
  ASSERT_EQ(rep.ratios.size(), scalar.size());
  for (std::size_t t = 0; t < scalar.size(); ++t) EXPECT_NEAR(rep.ratios[t], scalar[t], 1e-12 * scalar[t]);
}

TEST(Theorem3, EqualMembersMatchSingleMember) {
  const Grid g(-64, 64);
  const Seq a = Ensemble(Family::oscillatory, 1, g, 5).member(0);
  const auto q = ExponentSequence::constant(4.0);
  const auto p = sobolev_preimage(q, 0.25);
  const std::vector<Seq> one{a};
  const std::vector<Seq> four{a, a, a, a};
  const double r1 = vector_valued_ratio(one, 0.25, 2.0, p, q, g);
  const double r4 = vector_valued_ratio(four, 0.25, 2.0, p, q, g);
  EXPECT_NEAR(r4, r1, 1e-10 * r1);
}

TEST(Theorem3, RejectsThetaAtMostOne) {
  EXPECT_THROW(verify_theorem3(p2, 1.5, 0.0, 1.0, 2, Ensemble(Family::delta, 2, Grid(-8, 8), 0)), precondition_error);
}

TEST(Theorem3, FractionalFamilyPasses) {
  const auto rep = verify_theorem3(ExponentSequence::constant(4.0), 3.0, 0.25, 2.0, 4,
                                   Ensemble(Family::block, 6, Grid(-128, 128), 6), quick());
  EXPECT_TRUE(rep.verdict) << rep.details.dump();
}

TEST(Weighted, UnitWeightHuntBoundedBySymbolSquared) {
  const Grid g(-256, 256);
  const auto rep = verify_weighted_inequality(WeightedKind::hunt_3_1, WeightedParams{}, power_weight(0.0, g),
                                              Ensemble(Family::dense_random, 20, g, 8));
  EXPECT_TRUE(rep.verdict) << rep.details.dump();
  EXPECT_LE(rep.max_ratio, std::numbers::pi * std::numbers::pi + 0.1);
}

TEST(Weighted, HuntDeltaQuotientByDirectSum) {
  const Grid g(-100, 100);
  const Weight w = power_weight(-0.3, g);
  const auto q = weighted_quotients(WeightedKind::hunt_3_1, WeightedParams{}, w, Ensemble(Family::delta, 1, g, 0));
  double lhs = 0.0;
  for (index_t j = g.lo; j <= g.hi; ++j)
    if (j != 0) lhs += std::pow(1.0 + std::abs(static_cast<double>(j)), -0.3) / static_cast<double>(j * j);
  EXPECT_NEAR(q[0], lhs / 1.0, 1e-12);
}

TEST(Weighted, RieszPowerWeightStable) {
  const Grid g(-128, 128);
  WeightedParams prm;
  prm.s = 3.0;
  prm.alpha = 0.5;
  const auto rep = verify_weighted_inequality(WeightedKind::riesz_3_4, prm, power_weight(-0.3, g),
                                              Ensemble(Family::dense_random, 10, g, 9));
  EXPECT_TRUE(rep.verdict) << rep.details.dump();
  EXPECT_TRUE(std::isfinite(rep.max_ratio));
  EXPECT_TRUE(rep.details.contains("stability"));
}

TEST(Weighted, RejectsBadParameters) {
  const Grid g(-16, 16);
  const Ensemble ens(Family::delta, 1, g, 0);
  WeightedParams prm;
  prm.alpha = 0.0;
  prm.s = 3.0;
  EXPECT_THROW(verify_weighted_inequality(WeightedKind::riesz_3_4, prm, power_weight(-0.3, g), ens), precondition_error);
  prm.alpha = 0.5;
  prm.s = 1.5;
  EXPECT_THROW(verify_weighted_inequality(WeightedKind::riesz_3_4, prm, power_weight(-0.3, g), ens), precondition_error);
}

TEST(Ensembles, MembersDependOnlyOnIdentity) {
  const Grid g(-50, 50);
  for (Family f : all_families) {
    const Ensemble e(f, 10, g, 11);
    const Seq later = e.member(7);
    EXPECT_EQ(Ensemble(f, 3, g, 11).member(7), later);
    EXPECT_FALSE(later.is_zero()) << to_string(f);
    EXPECT_EQ(family_from_string(to_string(f)), f);
  }
  EXPECT_NE(Ensemble(Family::dense_random, 1, g, 1).member(0), Ensemble(Family::dense_random, 1, g, 2).member(0));
}

TEST(Ensembles, ParallelRunsMatchSerial) {
  const Ensemble ens(Family::oscillatory, 16, Grid(-64, 64), 12);
  EXPECT_EQ(operator_ratios(OperatorKind::hilbert, 0.0, p2, p2, ens, 1),
            operator_ratios(OperatorKind::hilbert, 0.0, p2, p2, ens, 4));
}

TEST(Reports, RatiosNonnegativeAndMaxConsistent) {
  const auto rep = empirical_operator_norm(OperatorKind::maximal, 0.3, p2, ExponentSequence::constant(2.0 / 0.4),
                                           Ensemble(Family::sparse_random, 15, Grid(-64, 64), 13));
  double m = 0.0;
  for (double x : rep.ratios) {
    EXPECT_GE(x, 0.0);
    m = std::max(m, x);
  }
  EXPECT_EQ(rep.max_ratio, m);
  const std::string csv = rep.to_csv();
  EXPECT_EQ(csv.rfind("trial_index,ratio\n", 0), 0u);
}

TEST(Suite, EmptyConfigSucceeds) {
  const auto res = run_suite(json{{"version", "v1"}, {"verifiers", json::array()}});
  EXPECT_TRUE(res.empty());
  EXPECT_TRUE(suite_passed(res));
}

TEST(Suite, UnknownVerifierNamesField) {
  const json cfg = {{"version", "v1"}, {"verifiers", {{{"verifier", "nope"}}}}};
  try {
    run_suite(cfg);
    FAIL();
  } catch (const input_error& e) {
    EXPECT_NE(std::string(e.what()).find("verifiers[0].verifier"), std::string::npos) << e.what();
  }
}

TEST(Suite, RejectsUnknownFieldAndVersion) {
  EXPECT_THROW(run_suite(json{{"version", "v2"}}), input_error);
  const json cfg = {{"version", "v1"}, {"verifiers", {{{"verifier", "holder"}, {"trails", 3}}}}};
  try {
    run_suite(cfg);
    FAIL();
  } catch (const input_error& e) {
    EXPECT_NE(std::string(e.what()).find("verifiers[0].trails"), std::string::npos) << e.what();
  }
}

TEST(Suite, FamiliesExpandAndExpectFailInverts) {
  const json cfg = {{"version", "v1"},
                    {"seed", 3},
                    {"verifiers",
                     {{{"id", "h"}, {"verifier", "operator_norm"}, {"op", "hilbert"}, {"p_in", {{"constant", 2.0}}},
                       {"grid", "-32:32"}, {"size", 4}, {"families", {"delta", "block"}}},
                      {{"id", "neg"}, {"verifier", "theorem1"}, {"p", {{"constant", 1.0}}}, {"r", 1.5},
                       {"bypass_hypotheses", true}, {"families", {"delta"}}, {"grid", "-2:2"}, {"size", 4},
                       {"expect", "fail"}}}}};
  const auto res = run_suite(cfg);
  ASSERT_EQ(res.size(), 3u);
  EXPECT_EQ(res[0].id, "h.delta");
  EXPECT_EQ(res[1].id, "h.block");
  EXPECT_FALSE(res[2].report.verdict);
  EXPECT_TRUE(res[2].ok());
  EXPECT_TRUE(suite_passed(res));
}

TEST(Suite, SameSeedSamePayload) {
  const json cfg = {{"version", "v1"},
                    {"seed", 5},
                    {"verifiers", {{{"verifier", "holder"}, {"trials", 30}}, {{"verifier", "duality"}, {"trials", 10}}}}};
  const auto a = run_suite(cfg);
  const auto b = run_suite(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(a[i].report.to_json(false).dump(), b[i].report.to_json(false).dump());
  SuiteOptions other;
  other.seed_override = 6;
  EXPECT_NE(run_suite(cfg, other)[0].report.to_json(false).dump(), a[0].report.to_json(false).dump());
}
