#include <gtest/gtest.h>

#include <random>

#include "endatlas/reduction.hpp"
#include "endatlas/suites.hpp"

using namespace endatlas;

namespace {

TorusElement a1_free(Rational torsion, Rational free) { return TorusElement::from_parts({torsion}, {{free}}); }

bool oracle_equivalent(const EndoscopicDatum& a, const EndoscopicDatum& b) {
  for (const LatticeMap& x : enumerate_weyl_group(a.rs()))
    if (conjugate(a, x).same_as(b)) return true;
  return false;
}

}  // namespace

TEST(ReductionPlan, FiniteOrderIsBypassed) {
  auto st = make_setting("A2", "c3:inner");
  EndoscopicDatum d = make_datum(st, TorusElement::from_torsion({Rational(1, 3), Rational(1, 3)}), trivial_cocycle(*st));
  Reduction r = finite_order_reduction(d, d);
  EXPECT_TRUE(r.plan.bypass);
  EXPECT_TRUE(r.first.same_as(d));
  EXPECT_TRUE(r.second.same_as(d));
}

TEST(ReductionPlan, RankOneWithFreePart) {
  auto rs = make_root_system("A1");
  TorusElement s = a1_free(Rational(1, 2), Rational(1));
  ReductionPlan p = build_reduction_plan(*rs, s);
  EXPECT_FALSE(p.bypass);
  EXPECT_TRUE(p.levi_simple.empty());
  EXPECT_EQ(p.other_simple, (std::vector<int>{0}));
  ASSERT_EQ(p.classes.size(), 1u);
  EXPECT_EQ(p.representatives, (std::vector<int>{0}));
  EXPECT_EQ(p.b, 1);
  EXPECT_EQ(p.c, 1);
  EXPECT_EQ(p.d, 3);
  EXPECT_TRUE(p.t.is_finite());
  EXPECT_EQ(p.t.torsion(0), Rational(1, 3));
}

TEST(ReductionPlan, NegativeFreePartUsesTheOppositeChamber) {
  auto rs = make_root_system("A1");
  ReductionPlan p = build_reduction_plan(*rs, a1_free(Rational(1, 2), Rational(-1)));
  EXPECT_EQ(p.d, 3);
  // t is expressed in the original frame: α(t) = -1/3.
  EXPECT_EQ(p.t.torsion(0), Rational(2, 3));
  EXPECT_EQ(p.t_frame.torsion(0), Rational(1, 3));
}

TEST(ReductionPlan, FixersOfSAndTCoincideInRankOne) {
  auto rs = make_root_system("A1");
  TorusElement s = a1_free(Rational(1, 2), Rational(1));
  ReductionPlan p = build_reduction_plan(*rs, s);
  auto family = automorphism_family(*rs, s, default_b_prime(*rs, s));
  EXPECT_EQ(family.size(), 2u);
  PlanCertificate cert = certify_plan(*rs, s, p, family);
  EXPECT_EQ(cert.automorphisms_tested, 2u);
  EXPECT_EQ(cert.fixers, 1u);
  EXPECT_TRUE(cert.violations.empty());
}

TEST(ReductionPlan, InvariantsOnRandomElements) {
  std::mt19937 rng(3);
  for (const char* type : {"A2", "B2", "B3", "C3", "G2", "A1xB2"}) {
    auto rs = make_root_system(type);
    for (int trial = 0; trial < 25; ++trial) {
      TorusElement s = random_torus_element(rs->rank(), 1 + trial % 2, rng);
      ReductionPlan p = build_reduction_plan(*rs, s);
      if (p.bypass) continue;
      // d = 3cb and t has order dividing d.
      EXPECT_EQ(p.d, 3 * p.c * p.b);
      EXPECT_EQ(p.d % p.t.order(), 0);
      // Σ^M is the set of roots whose value has no free part, in the standard frame.
      TorusElement sf = torus_action(p.frame, s);
      for (const Vec& r : rs->roots()) {
        bool in_m = std::find(p.sigma_m.begin(), p.sigma_m.end(), r) != p.sigma_m.end();
        EXPECT_EQ(in_m, sf.value(r).free_is_zero()) << type;
        bool in_p = std::find(p.sigma_p.begin(), p.sigma_p.end(), r) != p.sigma_p.end();
        bool neg_in_p = std::find(p.sigma_p.begin(), p.sigma_p.end(), -r) != p.sigma_p.end();
        EXPECT_TRUE(in_p || neg_in_p) << type;
      }
      // b kills the torsion on Σ^M.
      for (const Vec& r : p.sigma_m) EXPECT_TRUE(is_zero(mod_one(sf.value(r).torsion * p.b))) << type;
      auto cert = certify_plan(*rs, s, p, automorphism_family(*rs, s, default_b_prime(*rs, s)));
      EXPECT_TRUE(cert.violations.empty()) << type << " " << s.to_string() << ": "
                                          << (cert.violations.empty() ? "" : cert.violations.front());
    }
  }
}

TEST(Reduction, RejectsDifferentTorusElements) {
  auto st = make_setting("A1", "trivial");
  auto d1 = make_datum(st, a1_free(Rational(0), Rational(1)), trivial_cocycle(*st));
  auto d2 = make_datum(st, a1_free(Rational(1, 2), Rational(1)), trivial_cocycle(*st));
  EXPECT_THROW(finite_order_reduction(d1, d2), InputError);
}

TEST(Reduction, IdenticalDataStayEquivalent) {
  auto st = make_setting("A1", "c2:inner");
  auto d = make_datum(st, a1_free(Rational(1, 2), Rational(1)), trivial_cocycle(*st));
  auto v = reduction_equivalence_verdicts(d, d);
  EXPECT_TRUE(v.before);
  EXPECT_TRUE(v.after);
  Reduction r = finite_order_reduction(d, d);
  EXPECT_EQ(r.first.cocycle, d.cocycle);
  EXPECT_TRUE(r.first.s.is_finite());
}

TEST(Reduction, VerdictsAgreeWithTheWholeGroupOracle) {
  // Pairs of data with a shared free-part s: exhaustive cocycles, both sides
  // checked against conjugation by every Weyl element.
  std::mt19937 rng(5);
  std::size_t pairs = 0, inequivalent = 0;
  for (auto [type, galois] : {std::pair{"A2", "c2:inner"}, std::pair{"B2", "c2:inner"}, std::pair{"A1xA2", "c2:inner"}}) {
    auto st = make_setting(type, galois);
    auto weyl = enumerate_weyl_group(*st->rs);
    for (int trial = 0; trial < 15; ++trial) {
      TorusElement s = random_torus_element(st->rank(), 1, rng);
      auto bp = default_b_prime(*st->rs, s);
      auto cocycles = compatible_cocycles(*st, s, bp, weyl);
      for (std::size_t i = 0; i < cocycles.size(); ++i)
        for (std::size_t j = i; j < cocycles.size(); ++j) {
          auto d1 = make_datum(st, s, cocycles[i], bp);
          auto d2 = make_datum(st, s, cocycles[j], bp);
          Reduction r = finite_order_reduction(d1, d2);
          bool before = oracle_equivalent(d1, d2);
          EXPECT_EQ(before, oracle_equivalent(r.first, r.second)) << type << " " << s.to_string();
          EXPECT_TRUE(reduction_preserves_equivalence(d1, d2));
          ++pairs;
          inequivalent += !before;
        }
    }
  }
  EXPECT_GT(pairs, 0u);
  EXPECT_GT(inequivalent, 0u);
}

TEST(Reduction, TrialRunnerReportsNoFailures) {
  auto stats = run_reduction_trials(make_setting("B2", "c2:inner"), 30, 17);
  EXPECT_EQ(stats.trials, 30u);
  EXPECT_TRUE(stats.failures.empty()) << (stats.failures.empty() ? "" : stats.failures.front());
  EXPECT_LT(stats.bypassed, stats.trials);
}
