#include <gtest/gtest.h>

#include "endatlas/elliptic.hpp"

using namespace endatlas;

namespace {

struct Config {
  const char* type;
  const char* galois;
  std::size_t classes;
};

const std::vector<Config> configs{{"A1", "trivial", 1},  {"A1", "c2:inner", 2}, {"A2", "trivial", 1},
                                  {"A2", "c3:inner", 3}, {"A2", "c2:outer", 2}, {"C2", "c2:inner", 4},
                                  {"G2", "trivial", 3},  {"C3", "c2:inner", 4}, {"D4", "s3", 3}};

}  // namespace

TEST(Pairs, OrderIsTheMarkSumOfTheOrbit) {
  auto st = make_setting("C3", "c2:inner");
  for (const EllipticPair& p : enumerate_pairs(*st)) {
    EndoscopicDatum d = pair_to_datum(st, p);
    EXPECT_EQ(d.s.order(), pair_order(*st, p));
    EXPECT_TRUE(is_elliptic(d));
    EXPECT_EQ(datum_violation(d), "");
  }
}

TEST(Pairs, OrbitsAreOrbitsOfTheTwistedAction) {
  auto st = make_setting("A2", "c3:inner");
  for (const EllipticPair& p : enumerate_pairs(*st)) {
    for (int g = 0; g < static_cast<int>(st->order()); ++g) {
      NodePerm a = pair_node_action(*st, p, g);
      std::vector<int> img;
      for (int k : p.orbit) img.push_back(a[static_cast<std::size_t>(k)]);
      std::sort(img.begin(), img.end());
      EXPECT_EQ(img, p.orbit);
    }
  }
}

TEST(Classification, CountsMatchBruteForce) {
  for (const Config& c : configs) {
    auto st = make_setting(c.type, c.galois);
    auto rep = classify_elliptic(st);
    EXPECT_EQ(rep.classes.size(), c.classes) << c.type << "/" << c.galois;
    int bound = 0;
    for (const auto& cls : rep.classes) bound = std::max<int>(bound, static_cast<int>(cls.d));
    auto inv = brute_force_inventory(st, 2 * bound);
    EXPECT_EQ(inv.classes.size(), c.classes) << c.type << "/" << c.galois;
    // Every brute-force class is hit by exactly one constructed class.
    for (const auto& d : inv.classes) {
      std::size_t hits = 0;
      for (const auto& cls : rep.classes) hits += equivalent(cls.datum, d).has_value();
      EXPECT_EQ(hits, 1u) << c.type << "/" << c.galois << " " << d.s.to_string();
    }
  }
}

TEST(Classification, ClassesArePairwiseInequivalent) {
  for (const Config& c : configs) {
    auto rep = classify_elliptic(make_setting(c.type, c.galois));
    for (std::size_t i = 0; i < rep.classes.size(); ++i)
      for (std::size_t j = i + 1; j < rep.classes.size(); ++j)
        EXPECT_FALSE(equivalent(rep.classes[i].datum, rep.classes[j].datum)) << c.type << "/" << c.galois;
  }
}

TEST(Classification, MembersPartitionThePairs) {
  auto rep = classify_elliptic(make_setting("D4", "s3"));
  EXPECT_EQ(rep.pairs.size(), 12u);
  std::vector<std::size_t> all;
  for (const auto& c : rep.classes) all.insert(all.end(), c.members.begin(), c.members.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
}

TEST(Classification, OrderThreeClassesOfA2) {
  auto rep = classify_elliptic(make_setting("A2", "c3:inner"));
  std::vector<std::int64_t> orders;
  for (const auto& c : rep.classes) orders.push_back(c.d);
  EXPECT_EQ(orders, (std::vector<std::int64_t>{1, 3, 3}));
  for (const auto& c : rep.classes) {
    if (c.d != 3) continue;
    EXPECT_TRUE(c.dual_components.empty());
    EXPECT_TRUE(c.datum.b_prime.empty());
  }
}

TEST(SigmaStructure, HoldsForEveryPair) {
  for (const Config& c : configs) {
    auto st = make_setting(c.type, c.galois);
    for (const EllipticPair& p : enumerate_pairs(*st)) {
      SigmaReport r = verify_sigma_structure(st, p);
      EXPECT_TRUE(r.ok()) << c.type << "/" << c.galois << ": " << (r.ok() ? "" : r.violations.front());
    }
  }
}

TEST(Inventory, TorsionPointCounts) {
  // Points of order dividing m number m^rank; orders up to 3 in rank 2: 1 + 3 + 8.
  EXPECT_EQ(torsion_points(2, 3, 1000).size(), 12u);
  EXPECT_EQ(torsion_points(1, 4, 1000).size(), 6u);
  EXPECT_THROW(torsion_points(3, 10, 50), CapExceeded);
}

TEST(Inventory, CapOnTheWeylGroup) {
  InventoryOptions opt;
  opt.group_cap = 100;
  EXPECT_THROW(brute_force_inventory(make_setting("E8", "trivial"), 2, opt), CapExceeded);
}
