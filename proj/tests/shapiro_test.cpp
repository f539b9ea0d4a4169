#include <gtest/gtest.h>

#include "endatlas/shapiro.hpp"
#include "endatlas/suites.hpp"

using namespace endatlas;

namespace {

InducedModel c2_over_trivial(const char* base) {
  GaloisModel c2 = GaloisModel::cyclic(2, identity_perm(1), "c2");
  auto rs = make_root_system(base);
  return make_induced_model(c2, {0}, rs, {identity_perm(rs->rank())});
}

}  // namespace

TEST(InducedModel, CopiesAreSwapped) {
  InducedModel m = c2_over_trivial("A1");
  EXPECT_EQ(m.copies(), 2u);
  EXPECT_EQ(m.induced->rs->name(), "A1xA1");
  EXPECT_EQ(m.group->action(1), (NodePerm{1, 0}));
  EXPECT_EQ(m.base->order(), 1u);
}

TEST(InducedModel, TrivialInductionIsTheIdentity) {
  auto rs = make_root_system("A2");
  GaloisModel c3 = build_galois_model("c3:inner", *rs);
  InducedModel m = make_induced_model(c3, {0, 1, 2}, rs, {identity_perm(2), identity_perm(2), identity_perm(2)});
  EXPECT_EQ(m.copies(), 1u);
  EndoscopicDatum x = make_datum(m.base, TorusElement::from_torsion({Rational(1, 3), Rational(1, 3)}),
                                 Cocycle{LatticeMap::identity(2), m.base->omega[1].map, m.base->omega[2].map});
  EndoscopicDatum y = shapiro_induce(x, m);
  EXPECT_EQ(y.s, x.s);
  EXPECT_EQ(y.cocycle, x.cocycle);
  EXPECT_TRUE(shapiro_descend(y, m).same_as(x));
}

TEST(Shapiro, RankOneTorusDatum) {
  InducedModel m = c2_over_trivial("A1");
  EndoscopicDatum x = make_datum(m.base, TorusElement::from_torsion({Rational(1, 2)}), trivial_cocycle(*m.base));
  EndoscopicDatum y = shapiro_induce(x, m);
  EXPECT_EQ(y.s, TorusElement::from_torsion({Rational(1, 2), Rational(1, 2)}));
  EXPECT_TRUE(y.b_prime.empty());
  EXPECT_TRUE(y.cocycle[1].is_identity());
  EndoscopicDatum back = shapiro_descend(y, m);
  EXPECT_EQ(back.s, TorusElement::from_torsion({Rational(1, 2)}));
  EXPECT_TRUE(back.same_as(x));
}

TEST(Shapiro, EquivalenceTransfers) {
  InducedModel m = c2_over_trivial("A2");
  std::vector<EndoscopicDatum> base;
  for (const TorusElement& s : torsion_points(2, 3, 1000)) base.push_back(make_datum(m.base, s, trivial_cocycle(*m.base)));
  std::size_t equivalent_pairs = 0;
  for (const auto& a : base)
    for (const auto& b : base) {
      auto v = shapiro_transfer_verdicts(a, b, m);
      EXPECT_TRUE(v.agree()) << a.s.to_string() << " " << b.s.to_string();
      equivalent_pairs += v.base;
    }
  EXPECT_GT(equivalent_pairs, base.size());
}

TEST(Shapiro, RoundTripOverNontrivialSubgroups) {
  auto rs = make_root_system("A2");
  for (const ShapiroConfig& cfg : shapiro_configs(*rs)) {
    InducedModel m = make_induced_model(cfg.group, cfg.subgroup, rs, cfg.base_action);
    EndoscopicDatum x = principal_datum(m.base);
    EXPECT_TRUE(shapiro_descend(shapiro_induce(x, m), m).same_as(x)) << cfg.label;
    EXPECT_EQ(m.copies() * cfg.subgroup.size(), cfg.group.size()) << cfg.label;
  }
}

TEST(Shapiro, CheckRunnerFindsNoFailures) {
  ShapiroStats stats = run_shapiro_checks(make_root_system("A1"), 4);
  EXPECT_GT(stats.configurations, 0u);
  EXPECT_GT(stats.pairs, 0u);
  EXPECT_TRUE(stats.failures.empty()) << (stats.failures.empty() ? "" : stats.failures.front());
}

TEST(Shapiro, RejectsForeignData) {
  InducedModel m = c2_over_trivial("A1");
  auto other = principal_datum(make_setting("A1", "c2:inner"));
  EXPECT_THROW(shapiro_induce(other, m), InputError);
  EXPECT_THROW(shapiro_descend(other, m), InputError);
}
