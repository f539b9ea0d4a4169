#include <gtest/gtest.h>

#include "endatlas/localglobal.hpp"

using namespace endatlas;

namespace {

std::vector<EndoscopicDatum> order_three_tori(const SettingPtr& st) {
  std::vector<EndoscopicDatum> out;
  for (const auto& c : classify_elliptic(st).classes)
    if (c.d == 3) out.push_back(c.datum);
  return out;
}

}  // namespace

TEST(LocalGlobal, DatumAgainstItself) {
  auto st = make_setting("A2", "c3:inner");
  for (const auto& c : classify_elliptic(st).classes) {
    auto v = check_local_global(c.datum, c.datum);
    EXPECT_TRUE(v.equivalent_everywhere());
    EXPECT_TRUE(v.global);
    EXPECT_TRUE(v.consistent);
    EXPECT_TRUE(v.witness_restricts);
  }
}

TEST(LocalGlobal, RankOnePrincipalAgainstTorus) {
  auto st = make_setting("A1", "c2:inner");
  auto torus = make_datum(st, TorusElement::from_torsion({Rational(1, 2)}),
                          Cocycle{LatticeMap::identity(1), st->rs->simple_reflection(0)});
  auto v = check_local_global(principal_datum(st), torus);
  ASSERT_EQ(v.places.size(), 2u);
  EXPECT_FALSE(v.local[1]);
  EXPECT_FALSE(v.global);
  EXPECT_TRUE(v.consistent);
}

TEST(LocalGlobal, OrderThreeToriAgreeOnlyAtTheTrivialPlace) {
  auto st = make_setting("A2", "c3:inner");
  auto tori = order_three_tori(st);
  ASSERT_EQ(tori.size(), 2u);
  auto v = check_local_global(tori[0], tori[1]);
  ASSERT_EQ(v.places.size(), 2u);
  EXPECT_TRUE(v.local[0]);
  EXPECT_FALSE(v.local[1]);
  EXPECT_FALSE(v.global);
  EXPECT_TRUE(v.consistent);
}

TEST(LocalGlobal, ExhaustiveSmallConfigurations) {
  struct Case {
    const char* type;
    const char* galois;
    int bound;
  };
  for (Case c : {Case{"A1", "c2:inner", 4}, Case{"A2", "c3:inner", 6}, Case{"A1", "trivial", 4}, Case{"A2", "c2:outer", 3}}) {
    auto rep = exhaustive_local_global(make_setting(c.type, c.galois), c.bound);
    EXPECT_GT(rep.pairs, 0u) << c.type;
    EXPECT_EQ(rep.inconsistencies, 0u) << c.type << "/" << c.galois;
    EXPECT_EQ(rep.witness_failures, 0u) << c.type << "/" << c.galois;
    EXPECT_TRUE(rep.falsifiers.empty());
    EXPECT_LE(rep.globally_equivalent, rep.locally_equivalent);
  }
}

TEST(CounterexampleSearch, AllPlacesNeverProduceOne) {
  for (auto [type, galois] : {std::pair{"A1", "c2:inner"}, std::pair{"A2", "c3:inner"}, std::pair{"D4", "s3"}}) {
    auto st = make_setting(type, galois);
    auto res = counterexample_search(st, all_place_indices(*st->galois), 3);
    EXPECT_GT(res.pairs_examined, 0u);
    EXPECT_FALSE(res.certificate) << type << "/" << galois;
  }
}

TEST(CounterexampleSearch, TrivialPlaceAloneIsNotEnough) {
  auto st = make_setting("A2", "c3:inner");
  auto res = counterexample_search(st, {0}, 3);
  ASSERT_TRUE(res.certificate);
  const auto& cert = *res.certificate;
  EXPECT_EQ(cert.first.s, cert.second.s);
  EXPECT_FALSE(equivalent(cert.first, cert.second));
  ASSERT_EQ(cert.witnesses.size(), 1u);
  EXPECT_TRUE(conjugate(localize(cert.first, cert.place_family[0]), cert.witnesses[0].x)
                  .same_as(localize(cert.second, cert.place_family[0])));
}

TEST(CounterexampleSearch, RankOneTrivialPlace) {
  // Same s = 1/2 with the trivial and the reflection cocycle: equal at the
  // trivial place, different globally.
  auto st = make_setting("A1", "c2:inner");
  auto res = counterexample_search(st, {0}, 4);
  ASSERT_TRUE(res.certificate);
  EXPECT_EQ(res.certificate->first.s, TorusElement::from_torsion({Rational(1, 2)}));
}

TEST(CounterexampleSearch, RejectsBadPlaceIndices) {
  auto st = make_setting("A1", "c2:inner");
  EXPECT_THROW(counterexample_search(st, {7}, 2), InputError);
}
