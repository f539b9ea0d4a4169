#include <gtest/gtest.h>

#include "endatlas/elliptic.hpp"

using namespace endatlas;

namespace {

bool oracle_equivalent(const EndoscopicDatum& a, const EndoscopicDatum& b) {
  for (const LatticeMap& x : enumerate_weyl_group(a.rs()))
    if (conjugate(a, x).same_as(b)) return true;
  return false;
}

std::vector<EndoscopicDatum> all_data(const SettingPtr& st, int bound) {
  InventoryOptions opt;
  opt.elliptic_only = false;
  opt.orbit_representatives = false;
  opt.deduplicate = false;
  return brute_force_inventory(st, bound, opt).classes;
}

TorusElement torus(std::initializer_list<Rational> q) { return TorusElement::from_torsion(q); }

}  // namespace

TEST(Datum, ValidationRejectsBrokenData) {
  auto st = make_setting("A1", "c2:inner");
  LatticeMap refl = st->rs->simple_reflection(0);
  // s_α does not fix s = 1/3.
  EXPECT_THROW(make_datum(st, torus({Rational(1, 3)}), Cocycle{LatticeMap::identity(1), refl}), InputError);
  EXPECT_NO_THROW(make_datum(st, torus({Rational(1, 2)}), Cocycle{LatticeMap::identity(1), refl}));
  // B' must be a base of the roots trivial on s.
  EXPECT_THROW(make_datum(st, torus({Rational(1, 2)}), trivial_cocycle(*st), std::vector<Vec>{{1}}), InputError);
  EXPECT_THROW(make_datum(st, TorusElement(1), Cocycle{LatticeMap::identity(1)}), InputError);
  // For s = 1, σ_G' must preserve B' = {α}.
  EXPECT_THROW(make_datum(st, TorusElement(1), Cocycle{LatticeMap::identity(1), refl}), InputError);
}

TEST(Datum, ConjugationKeepsDataValid) {
  auto st = make_setting("A2", "c2:outer");
  for (const EndoscopicDatum& d : all_data(st, 3))
    for (const LatticeMap& x : enumerate_weyl_group(d.rs())) EXPECT_EQ(datum_violation(conjugate(d, x)), "");
}

TEST(Equivalence, AgreesWithWholeGroupSearch) {
  struct Case {
    const char* type;
    const char* galois;
    int bound;
  };
  for (Case c : {Case{"A1", "c2:inner", 4}, Case{"A2", "c3:inner", 3}, Case{"A2", "c2:outer", 2},
                 Case{"C2", "c2:inner", 2}, Case{"G2", "trivial", 3}}) {
    auto st = make_setting(c.type, c.galois);
    auto data = all_data(st, c.bound);
    ASSERT_FALSE(data.empty());
    std::size_t agree = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
      for (std::size_t j = i; j < data.size(); ++j) {
        bool expected = oracle_equivalent(data[i], data[j]);
        auto w = equivalent(data[i], data[j]);
        EXPECT_EQ(w.has_value(), expected) << c.type << "/" << c.galois << " " << data[i].s.to_string() << " vs "
                                           << data[j].s.to_string();
        if (w) {
          EXPECT_TRUE(conjugate(data[i], w->x).same_as(data[j]));
        }
        agree += w.has_value() == expected;
      }
    EXPECT_GT(agree, 0u);
  }
}

TEST(Equivalence, StabilizerRouteAgreesWithNormalizedRoute) {
  auto st = make_setting("A2", "c3:inner");
  auto data = all_data(st, 3);
  EquivalenceOptions forced;
  forced.force_stabilizer_route = true;
  for (const auto& a : data)
    for (const auto& b : data) EXPECT_EQ(equivalent(a, b).has_value(), equivalent(a, b, forced).has_value());
}

TEST(Equivalence, InfiniteOrderElements) {
  auto st = make_setting("B2", "trivial");
  TorusElement s = TorusElement::from_parts({Rational(0), Rational(1, 2)}, {{Rational(1)}, {Rational(0)}});
  EndoscopicDatum d = make_datum(st, s, trivial_cocycle(*st));
  for (const LatticeMap& x : enumerate_weyl_group(d.rs())) {
    auto w = equivalent(d, conjugate(d, x));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->route == "stabilizer" || w->route == "identical", true);
  }
  EndoscopicDatum other = make_datum(st, TorusElement::from_parts({Rational(0), Rational(0)}, {{Rational(1)}, {Rational(0)}}),
                                     trivial_cocycle(*st));
  EXPECT_FALSE(equivalent(d, other));
  EXPECT_FALSE(oracle_equivalent(d, other));
}

TEST(Equivalence, DifferentSettingsAreRejected) {
  auto a = principal_datum(make_setting("A2", "trivial"));
  auto b = principal_datum(make_setting("A2", "c3:inner"));
  EXPECT_THROW(equivalent(a, b), InputError);
}

TEST(Normalization, LandsOnDeltaOrCompletedDiagram) {
  auto st = make_setting("C3", "trivial");
  for (const EndoscopicDatum& d : all_data(st, 4)) {
    auto [nd, ld] = langlands_normalize(d);
    EXPECT_TRUE(nd.normalized);
    EXPECT_EQ(ld.order, d.s.order());
    EXPECT_TRUE(oracle_equivalent(d, nd));
    // The minimal set is linked to the order through the marks.
    if (ld.shape == Shape::DeltaA) {
      std::int64_t sum = 0;
      for (std::size_t k = 0; k < ld.minimal.size(); ++k)
        for (const Vec& r : ld.minimal[k]) sum += static_cast<std::int64_t>(k) * st->rs->marks()[*st->rs->node_of(r)];
      EXPECT_EQ(sum, ld.order);
    }
  }
}

TEST(Ellipticity, RankOneExamples) {
  auto st = make_setting("A1", "c2:inner");
  LatticeMap refl = st->rs->simple_reflection(0);
  EXPECT_TRUE(is_elliptic(principal_datum(st)));
  EXPECT_FALSE(is_elliptic(make_datum(st, torus({Rational(1, 2)}), trivial_cocycle(*st))));
  EXPECT_TRUE(is_elliptic(make_datum(st, torus({Rational(1, 2)}), Cocycle{LatticeMap::identity(1), refl})));
  EXPECT_TRUE(is_elliptic(make_datum(st, torus({Rational(1, 3)}), trivial_cocycle(*st))) == false);
}

TEST(Ellipticity, MatchesTheFixedRankDefinitionEverywhere) {
  // Elliptic iff the Γ-invariants of X*(T̂)⊗ℚ are spanned by B'-orbit sums, i.e. (Z(Ĝ')^Γ)° ⊂ Z(Ĝ).
  for (auto [type, galois] : {std::pair{"A2", "c3:inner"}, std::pair{"C2", "c2:inner"}, std::pair{"A2", "c2:outer"}}) {
    auto st = make_setting(type, galois);
    for (const EndoscopicDatum& d : all_data(st, 4)) EXPECT_EQ(is_elliptic(d), fixed_rank(d) == orbit_count(d, d.b_prime));
  }
}

TEST(Localization, RestrictsToTheDecompositionGroup) {
  auto st = make_setting("A2", "c3:inner");
  auto ps = places(*st->galois);
  ASSERT_EQ(ps.size(), 2u);
  for (const EndoscopicDatum& d : all_data(st, 3)) {
    EndoscopicDatum at_trivial = localize(d, ps[0]);
    EXPECT_EQ(at_trivial.cocycle.size(), 1u);
    EndoscopicDatum at_full = localize(d, ps[1]);
    EXPECT_EQ(at_full.cocycle.size(), 3u);
    EXPECT_EQ(datum_violation(at_full), "");
  }
}

TEST(OutGroup, OnlyForCompletedDiagramShape) {
  auto st = make_setting("A2", "c3:inner");
  auto rep = classify_elliptic(st);
  std::vector<std::size_t> outs;
  for (const auto& c : rep.classes)
    if (c.out_size) outs.push_back(*c.out_size);
  EXPECT_FALSE(outs.empty());
  EXPECT_THROW(out_group(principal_datum(st)), InputError);
}
