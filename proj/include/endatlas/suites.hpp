#ifndef ENDATLAS_SUITES_HPP
#define ENDATLAS_SUITES_HPP

// Verification suites shared by the command line and the acceptance tests.
// Each returns a JSON report and the number of falsifiers found.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "endatlas/elliptic.hpp"
#include "endatlas/localglobal.hpp"
#include "endatlas/parallel.hpp"
#include "endatlas/reduction.hpp"
#include "endatlas/serialize.hpp"
#include "endatlas/shapiro.hpp"

namespace endatlas {

struct SuiteResult {
  Json report;
  std::size_t falsifiers = 0;
};

struct SuiteCaps {
  std::size_t group_cap = 100000;
  std::size_t orbit_cap = default_orbit_cap;
};

// ---------------------------------------------------------------------------
// Classification against the brute-force inventory

inline std::int64_t max_class_order(const ClassificationReport& rep) {
  std::int64_t d = 1;
  for (const auto& c : rep.classes) d = std::max(d, c.d);
  return d;
}

/// `max_order` 0 means twice the largest constructed order.
inline SuiteResult run_bijection_suite(const SettingPtr& st, int max_order = 0, const SuiteCaps& caps = {}) {
  ClassificationReport rep = classify_elliptic(st);
  const int bound = max_order > 0 ? max_order : static_cast<int>(2 * max_class_order(rep));
  Json sigma = Json::array();
  for (const auto& p : rep.pairs) {
    SigmaReport sr = verify_sigma_structure(st, p);
    for (const auto& v : sr.violations) sigma.push_back({{"orbit", p.orbit}, {"violation", v}});
  }
  InventoryOptions io;
  io.group_cap = caps.group_cap;
  Inventory inv = brute_force_inventory(st, bound, io);

  std::vector<std::vector<int>> hits(rep.classes.size(), std::vector<int>(inv.classes.size(), 0));
  parallel_for(rep.classes.size() * inv.classes.size(), [&](std::size_t k) {
    std::size_t i = k / inv.classes.size(), j = k % inv.classes.size();
    EquivalenceOptions eo;
    eo.orbit_cap = caps.orbit_cap;
    hits[i][j] = equivalent(rep.classes[i].datum, inv.classes[j], eo).has_value() ? 1 : 0;
  });
  Json unmatched_classes = Json::array(), unmatched_inventory = Json::array();
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    int n = 0;
    for (std::size_t j = 0; j < inv.classes.size(); ++j) n += hits[i][j];
    if (n != 1) unmatched_classes.push_back({{"orbit", rep.classes[i].pair.orbit}, {"matches", n}});
  }
  for (std::size_t j = 0; j < inv.classes.size(); ++j) {
    int n = 0;
    for (std::size_t i = 0; i < rep.classes.size(); ++i) n += hits[i][j];
    if (n != 1) unmatched_inventory.push_back({{"datum", datum_json(inv.classes[j])}, {"matches", n}});
  }
  SuiteResult out;
  out.falsifiers = unmatched_classes.size() + unmatched_inventory.size() + sigma.size();
  out.report = {{"suite", "bijection"},
                {"type", rep.type},
                {"galois", rep.galois},
                {"max_order", bound},
                {"pairs", rep.pairs.size()},
                {"classes", rep.classes.size()},
                {"inventory", inv.classes.size()},
                {"torsion_points", inv.torsion_points},
                {"data_examined", inv.data_examined},
                {"unmatched_classes", unmatched_classes},
                {"unmatched_inventory", unmatched_inventory},
                {"structure_failures", sigma},
                {"falsifiers", out.falsifiers}};
  return out;
}

// ---------------------------------------------------------------------------
// Local-global

/// `place_subset` (indices into places(Γ)) additionally runs the
/// counterexample search on that family, reported but never a falsifier.
inline SuiteResult run_local_global_suite(const SettingPtr& st, int max_order,
                                          const std::optional<std::vector<std::size_t>>& place_subset = std::nullopt) {
  LocalGlobalReport rep = exhaustive_local_global(st, max_order);
  const std::vector<Place> all = places(*st->galois);
  Json place_list = Json::array();
  for (const Place& p : all) place_list.push_back(place_json(*st->galois, p));
  CounterexampleSearch full = counterexample_search(st, all_place_indices(*st->galois), max_order);
  SuiteResult out;
  out.falsifiers = rep.inconsistencies + rep.witness_failures + (full.certificate ? 1 : 0);
  Json fals = Json::array();
  for (const auto& [i, j] : rep.falsifiers) fals.push_back({i, j});
  out.report = {{"suite", "local-global"},
                {"type", rep.type},
                {"galois", rep.galois},
                {"max_order", max_order},
                {"places", place_list},
                {"data", rep.data},
                {"pairs", rep.pairs},
                {"same_s_pairs", rep.same_s_pairs},
                {"locally_equivalent", rep.locally_equivalent},
                {"globally_equivalent", rep.globally_equivalent},
                {"inconsistencies", rep.inconsistencies},
                {"witness_failures", rep.witness_failures},
                {"falsifying_pairs", fals},
                {"full_place_counterexample", full.certificate ? certificate_json(*full.certificate) : Json(nullptr)}};
  if (place_subset) {
    CounterexampleSearch sub = counterexample_search(st, *place_subset, max_order);
    CounterexampleSearch filtered = counterexample_search(st, *place_subset, max_order, true);
    out.report["subset"] = *place_subset;
    out.report["subset_counterexample"] = sub.certificate ? certificate_json(*sub.certificate) : Json(nullptr);
    out.report["subset_counterexample_elliptic_filter"] =
        filtered.certificate ? certificate_json(*filtered.certificate) : Json(nullptr);
  }
  out.report["falsifiers"] = out.falsifiers;
  return out;
}

// ---------------------------------------------------------------------------
// Finite-order reduction

struct ReductionTrialStats {
  std::size_t trials = 0;
  std::size_t bypassed = 0;
  std::size_t equivalent_pairs = 0;
  std::size_t fixers_tested = 0;
  std::vector<std::string> failures;
};

/// Random pairs of data sharing an s with free parts on one setting.
inline ReductionTrialStats run_reduction_trials(const SettingPtr& st, std::size_t count, std::uint32_t seed,
                                                std::size_t max_free_rank = 2, std::size_t group_cap = 100000) {
  ReductionTrialStats stats;
  const RootSystem& rs = *st->rs;
  std::vector<LatticeMap> weyl = enumerate_weyl_group(rs, group_cap);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> free_rank(1, max_free_rank);
  for (std::size_t trial = 0; trial < count; ++trial) {
    TorusElement s = random_torus_element(rs.rank(), free_rank(rng), rng);
    std::vector<Vec> bp = default_b_prime(rs, s);
    std::vector<Cocycle> cocycles = compatible_cocycles(*st, s, bp, weyl);
    ++stats.trials;
    const std::string tag = "trial " + std::to_string(trial) + " s=" + s.to_string() + ": ";
    if (cocycles.empty()) {
      stats.failures.push_back(tag + "no compatible cocycle");
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, cocycles.size() - 1);
    EndoscopicDatum d1 = make_datum(st, s, cocycles[pick(rng)], bp);
    EndoscopicDatum d2;
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
      std::vector<LatticeMap> stab = stabilizer_of_base(rs, s, bp);
      d2 = conjugate(d1, stab[std::uniform_int_distribution<std::size_t>(0, stab.size() - 1)(rng)]);
    } else {
      d2 = make_datum(st, s, cocycles[pick(rng)], bp);
    }
    try {
      Reduction red = finite_order_reduction(d1, d2);
      if (red.plan.bypass) ++stats.bypassed;
      if (!red.plan.t.is_finite()) stats.failures.push_back(tag + "t has infinite order");
      std::vector<LatticeMap> family = automorphism_family(rs, s, bp);
      PlanCertificate cert = certify_plan(rs, s, red.plan, family);
      stats.fixers_tested += cert.automorphisms_tested;
      for (const auto& v : cert.violations) stats.failures.push_back(tag + v);
      bool before = equivalent(d1, d2).has_value();
      bool after = equivalent(red.first, red.second).has_value();
      if (before) ++stats.equivalent_pairs;
      if (before != after) stats.failures.push_back(tag + "equivalence verdict changed under reduction");
    } catch (const Error& e) {
      stats.failures.push_back(tag + e.what());
    }
  }
  return stats;
}

inline SuiteResult run_reduction_suite(const SettingPtr& st, std::size_t count = 50, std::uint32_t seed = 7) {
  ReductionTrialStats stats = run_reduction_trials(st, count, seed);
  SuiteResult out;
  out.falsifiers = stats.failures.size();
  out.report = {{"suite", "reduction"},
                {"type", st->rs->name()},
                {"galois", st->galois->label()},
                {"trials", stats.trials},
                {"bypassed", stats.bypassed},
                {"equivalent_pairs", stats.equivalent_pairs},
                {"automorphisms_tested", stats.fixers_tested},
                {"failures", stats.failures},
                {"falsifiers", out.falsifiers}};
  return out;
}

// ---------------------------------------------------------------------------
// Restriction of scalars

struct ShapiroConfig {
  std::string label;
  GaloisModel group;
  std::vector<int> subgroup;
  std::vector<NodePerm> base_action;
};

/// ℤ/2 ⊃ 1, ℤ/4 ⊃ ℤ/2, S₃ ⊃ ℤ/3 and S₃ ⊃ ℤ/2 over the given base, with the
/// subgroup acting trivially and, where the base has one, by the diagram
/// flip.
inline std::vector<ShapiroConfig> shapiro_configs(const RootSystem& base) {
  const std::size_t n = base.rank();
  const NodePerm id = identity_perm(n);
  NodePerm flip = base.is_simple() ? detail::diagram_flip(base.type()) : NodePerm{};
  GaloisModel c2 = GaloisModel::cyclic(2, identity_perm(1), "c2");
  GaloisModel c4 = GaloisModel::cyclic(4, identity_perm(1), "c4");
  GaloisModel s3 = GaloisModel::from_generators({{1, 2, 0}, {0, 2, 1}}, {"r", "f"}, {identity_perm(1), identity_perm(1)}, 1, "s3");
  const int gg = c4.index_of("gg"), r = s3.index_of("r"), rr = s3.index_of("rr"), f = s3.index_of("f");
  std::vector<ShapiroConfig> out{
      {"c2/1", c2, {0}, {id}},
      {"c4/c2", c4, {0, gg}, {id, id}},
      {"s3/c3", s3, {0, r, rr}, {id, id, id}},
      {"s3/c2", s3, {0, f}, {id, id}},
  };
  if (!flip.empty()) {
    out.push_back({"c4/c2 flip", c4, {0, gg}, {id, flip}});
    out.push_back({"s3/c2 flip", s3, {0, f}, {id, flip}});
  }
  return out;
}

struct ShapiroStats {
  std::size_t configurations = 0;
  std::size_t data = 0;
  std::size_t pairs = 0;
  std::size_t equivalent_pairs = 0;
  std::vector<std::string> failures;
};

inline ShapiroStats run_shapiro_checks(const RootSystemPtr& base, int order_bound = 4, std::uint32_t seed = 11) {
  ShapiroStats stats;
  std::mt19937 rng(seed);
  for (const ShapiroConfig& cfg : shapiro_configs(*base)) {
    ++stats.configurations;
    InducedModel m = make_induced_model(cfg.group, cfg.subgroup, base, cfg.base_action);
    const std::string tag = base->name() + " " + cfg.label + ": ";
    InventoryOptions io;
    io.elliptic_only = false;
    io.deduplicate = false;
    std::vector<EndoscopicDatum> data = brute_force_inventory(m.base, order_bound, io).classes;
    // Twisted copies: the same data moved by Weyl elements of the base.
    std::vector<LatticeMap> weyl = enumerate_weyl_group(*base);
    std::uniform_int_distribution<std::size_t> pick(0, weyl.size() - 1);
    const std::size_t original = data.size();
    for (std::size_t i = 0; i < original; ++i) data.push_back(conjugate(data[i], weyl[pick(rng)]));
    stats.data += data.size();
    std::vector<LatticeMap> induced_weyl = enumerate_weyl_group(*m.induced->rs);
    std::uniform_int_distribution<std::size_t> pick_induced(0, induced_weyl.size() - 1);
    std::vector<EndoscopicDatum> induced;
    for (const auto& x : data) {
      try {
        EndoscopicDatum y = shapiro_induce(x, m);
        if (!shapiro_descend(y, m).same_as(x)) stats.failures.push_back(tag + "descend(induce(x)) differs from x");
        EndoscopicDatum z = conjugate(y, induced_weyl[pick_induced(rng)]);
        if (!equivalent(shapiro_induce(shapiro_descend(z, m), m), z))
          stats.failures.push_back(tag + "induce(descend(y)) is not equivalent to y");
        induced.push_back(std::move(y));
      } catch (const Error& e) {
        stats.failures.push_back(tag + e.what());
        induced.push_back(EndoscopicDatum{});
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> work;
    for (std::size_t i = 0; i < data.size(); ++i)
      for (std::size_t j = i + 1; j < data.size(); ++j)
        if (induced[i].setting && induced[j].setting) work.emplace_back(i, j);
    std::vector<int> verdict(work.size(), 0);
    parallel_for(work.size(), [&](std::size_t k) {
      auto [i, j] = work[k];
      bool a = equivalent(data[i], data[j]).has_value();
      bool b = equivalent(induced[i], induced[j]).has_value();
      verdict[k] = a == b ? (a ? 2 : 1) : 0;
    });
    for (std::size_t k = 0; k < work.size(); ++k) {
      ++stats.pairs;
      if (verdict[k] == 2) ++stats.equivalent_pairs;
      if (verdict[k] == 0)
        stats.failures.push_back(tag + "equivalence does not transfer for data " + std::to_string(work[k].first) +
                                 " and " + std::to_string(work[k].second));
    }
  }
  return stats;
}

inline SuiteResult run_shapiro_suite(const RootSystemPtr& base, int order_bound = 4) {
  ShapiroStats stats = run_shapiro_checks(base, order_bound);
  SuiteResult out;
  out.falsifiers = stats.failures.size();
  out.report = {{"suite", "shapiro"},
                {"base", base->name()},
                {"max_order", order_bound},
                {"configurations", stats.configurations},
                {"data", stats.data},
                {"pairs", stats.pairs},
                {"equivalent_pairs", stats.equivalent_pairs},
                {"failures", stats.failures},
                {"falsifiers", out.falsifiers}};
  return out;
}

}  // namespace endatlas

#endif  // ENDATLAS_SUITES_HPP
