#include <gtest/gtest.h>

#include "endatlas/galois.hpp"

using namespace endatlas;

namespace {

// All maps Γ → candidates with c(e) = 1, filtered by the cocycle identity.
std::vector<Cocycle> brute_force_cocycles(const GaloisModel& g, const std::vector<LatticeMap>& values, std::size_t rank) {
  DiagramActionMaps phi(g);
  std::vector<Cocycle> out;
  const std::size_t n = g.size();
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    Cocycle c(n);
    c[0] = LatticeMap::identity(rank);
    for (std::size_t k = 1; k < n; ++k) c[k] = values[pick[k]];
    if (is_cocycle(g, phi, c)) out.push_back(c);
    std::size_t k = 1;
    while (k < n && ++pick[k] == values.size()) pick[k++] = 0;
    if (k >= n) break;
  }
  return out;
}

}  // namespace

TEST(GaloisModel, PresetsHaveTheRightShape) {
  RootSystem a2 = RootSystem::build("A2");
  GaloisModel c3 = build_galois_model("c3:inner", a2);
  EXPECT_EQ(c3.size(), 3u);
  EXPECT_EQ(c3.names(), (std::vector<std::string>{"e", "g", "gg"}));
  EXPECT_TRUE(c3.acts_trivially());
  GaloisModel flip = build_galois_model("c2:outer", a2);
  EXPECT_EQ(flip.action(1), (NodePerm{1, 0}));
  GaloisModel s3 = build_galois_model("s3", RootSystem::build("D4"));
  EXPECT_EQ(s3.size(), 6u);
  EXPECT_EQ(s3.kernel().size(), 1u);
  EXPECT_EQ(s3.order(s3.index_of("r")), 3);
  EXPECT_EQ(s3.order(s3.index_of("f")), 2);
}

TEST(GaloisModel, TableIsAssociativeWithInverses) {
  GaloisModel s3 = build_galois_model("s3", RootSystem::build("D4"));
  const int n = static_cast<int>(s3.size());
  for (int a = 0; a < n; ++a) {
    EXPECT_EQ(s3.mul(a, s3.inv(a)), 0);
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) EXPECT_EQ(s3.mul(s3.mul(a, b), c), s3.mul(a, s3.mul(b, c)));
      EXPECT_EQ(s3.action(s3.mul(a, b)), compose_perm(s3.action(a), s3.action(b)));
    }
  }
}

TEST(GaloisModel, RejectsInvalidInput) {
  RootSystem a1 = RootSystem::build("A1");
  EXPECT_THROW(build_galois_model("c2:outer", a1), InputError);
  EXPECT_THROW(build_galois_model("s3", RootSystem::build("A2")), InputError);
  EXPECT_THROW(build_galois_model("cx", a1), InputError);
  EXPECT_THROW(build_galois_model("c2:sideways", a1), InputError);
  EXPECT_THROW(build_galois_model("klein", a1), InputError);
  EXPECT_THROW(GaloisModel::make({"e", "g"}, {{0, 1}, {1, 1}}, {{0}, {0}}), InputError);
}

TEST(GaloisModel, JsonTable) {
  auto j = nlohmann::json::parse(R"({"elements": ["e", "t"], "table": [[0, 1], [1, 0]], "action": {"t": [2, 1]}})");
  GaloisModel g = galois_model_from_json(j, 2);
  EXPECT_EQ(g.action(1), (NodePerm{1, 0}));
  EXPECT_THROW(galois_model_from_json(nlohmann::json::parse(R"({"elements": ["e"]})"), 2), InputError);
}

TEST(Places, OnePerConjugacyClassOfCyclicSubgroups) {
  RootSystem d4 = RootSystem::build("D4");
  EXPECT_EQ(places(build_galois_model("trivial", d4)).size(), 1u);
  EXPECT_EQ(places(build_galois_model("c2:inner", d4)).size(), 2u);
  EXPECT_EQ(places(build_galois_model("c4:inner", d4)).size(), 3u);
  EXPECT_EQ(places(build_galois_model("c6:inner", d4)).size(), 4u);
  auto ps = places(build_galois_model("s3", d4));
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_EQ(ps[0].subgroup.size(), 1u);
  EXPECT_EQ(ps[1].subgroup.size(), 2u);
  EXPECT_EQ(ps[2].subgroup.size(), 3u);
}

TEST(Cocycles, OmegaCocyclesMatchBruteForce) {
  struct Case {
    const char* type;
    const char* galois;
    std::size_t count;
  };
  // Hom(ℤ/n, Ω) for trivial actions; the flip inverts Ω(A2) ≅ ℤ/3.
  for (Case c : {Case{"A1", "c2:inner", 2}, Case{"A2", "c3:inner", 3}, Case{"A2", "c2:outer", 3},
                 Case{"A3", "c2:inner", 2}, Case{"A3", "c4:inner", 4}, Case{"D4", "s3", 4},
                 Case{"D4", "c2:inner", 4}, Case{"E6", "c3:inner", 3}}) {
    RootSystem rs = RootSystem::build(c.type);
    GaloisModel g = build_galois_model(c.galois, rs);
    auto omega = omega_group(rs);
    std::vector<LatticeMap> values;
    for (const auto& o : omega) values.push_back(o.map);
    auto fast = enumerate_omega_cocycles(g, rs, omega);
    auto slow = brute_force_cocycles(g, values, rs.rank());
    EXPECT_EQ(fast.size(), c.count) << c.type << "/" << c.galois;
    ASSERT_EQ(fast.size(), slow.size()) << c.type << "/" << c.galois;
    std::sort(fast.begin(), fast.end());
    std::sort(slow.begin(), slow.end());
    EXPECT_EQ(fast, slow);
  }
}

TEST(Cocycles, RestrictionToASubgroupIsACocycle) {
  RootSystem a3 = RootSystem::build("A3");
  GaloisModel g = build_galois_model("c4:inner", a3);
  for (const Cocycle& c : enumerate_omega_cocycles(g, a3, omega_group(a3)))
    for (const Place& v : places(g)) {
      GaloisModel sub = g.restrict_to(v.subgroup, "sub");
      EXPECT_TRUE(is_cocycle(sub, DiagramActionMaps(sub), restrict_cocycle(c, v.subgroup)));
    }
}
