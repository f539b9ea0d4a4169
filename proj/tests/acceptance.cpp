// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "endatlas/endatlas.hpp"

using namespace endatlas;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> all_types_through_rank_8() {
  std::vector<std::string> out;
  for (int n = 1; n <= 8; ++n) out.push_back("A" + std::to_string(n));
  for (int n = 2; n <= 8; ++n) out.push_back("B" + std::to_string(n));
  for (int n = 2; n <= 8; ++n) out.push_back("C" + std::to_string(n));
  for (int n = 4; n <= 8; ++n) out.push_back("D" + std::to_string(n));
  for (const char* t : {"E6", "E7", "E8", "F4", "G2"}) out.push_back(t);
  return out;
}

struct Config {
  std::string type;
  std::string galois;
};

std::vector<Config> bijection_configs() {
  std::vector<Config> out;
  for (const char* t : {"A1", "A2", "C2", "C3", "G2"}) {
    out.push_back({t, "trivial"});
    out.push_back({t, "c2:inner"});
    if (std::string(t) == "A2") out.push_back({t, "c2:outer"});
    out.push_back({t, "c3:inner"});
  }
  out.push_back({"D4", "s3"});
  return out;
}

// 1. Σ d(α)α = 0 over the completed diagram and m(α) ≤ d(α) on positive roots.
Outcome marks_identity() {
  auto t0 = Clock::now();
  Outcome o;
  std::size_t types = 0;
  for (const auto& t : all_types_through_rank_8()) {
    RootSystem rs = RootSystem::build(t);
    ++types;
    Vec sum(rs.rank(), 0);
    const auto& a = rs.affine();
    for (std::size_t k = 0; k < a.nodes.size(); ++k) sum = sum + scaled(a.nodes[k], a.marks[k]);
    if (!is_zero(sum)) {
      o.pass = false;
      o.detail += t + ": weighted sum of the completed diagram is nonzero; ";
    }
    for (std::size_t k = 0; k < rs.num_positive(); ++k)
      for (std::size_t i = 0; i < rs.rank(); ++i)
        if (rs.roots()[k][i] > a.marks[i + 1]) {
          o.pass = false;
          o.detail += t + ": a root coefficient exceeds its mark; ";
        }
  }
  double secs = seconds_since(t0);
  if (secs >= 5) {
    o.pass = false;
    o.detail += "too slow; ";
  }
  o.detail += std::to_string(types) + " types in " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

// 2. |Ω| equals the number of mark-1 nodes; each element is in W and
// permutes Δₐ; rank ≤ 3 cross-checked by enumerating W.
Outcome omega_sizes() {
  auto t0 = Clock::now();
  Outcome o;
  std::size_t cross = 0;
  for (const auto& t : all_types_through_rank_8()) {
    RootSystem rs = RootSystem::build(t);
    const auto& a = rs.affine();
    std::size_t mark_one = std::count(a.marks.begin(), a.marks.end(), 1);
    auto omega = omega_group(rs);
    if (omega.size() != mark_one) {
      o.pass = false;
      o.detail += t + ": |Omega| differs from the number of mark-1 nodes; ";
    }
    std::vector<int> lowest;
    for (const auto& w : omega) {
      if (!is_weyl_element(rs, w.map)) {
        o.pass = false;
        o.detail += t + ": an Omega element is not in W; ";
      }
      if (!same_root_set(map_roots(w.map, a.nodes), a.nodes)) {
        o.pass = false;
        o.detail += t + ": an Omega element moves the completed diagram; ";
      }
      lowest.push_back(w.lowest_image());
    }
    std::sort(lowest.begin(), lowest.end());
    std::vector<int> expected;
    for (std::size_t k = 0; k < a.marks.size(); ++k)
      if (a.marks[k] == 1) expected.push_back(static_cast<int>(k));
    if (lowest != expected) {
      o.pass = false;
      o.detail += t + ": Omega does not meet every mark-1 node once; ";
    }
    if (rs.rank() <= 3) {
      ++cross;
      std::size_t count = 0;
      for (const auto& w : enumerate_weyl_group(rs))
        if (same_root_set(map_roots(w, a.nodes), a.nodes)) ++count;
      if (count != omega.size()) {
        o.pass = false;
        o.detail += t + ": enumeration of W finds " + std::to_string(count) + " diagram-preserving elements; ";
      }
    }
  }
  double secs = seconds_since(t0);
  if (secs >= 30) {
    o.pass = false;
    o.detail += "too slow; ";
  }
  o.detail += std::to_string(cross) + " types cross-checked against W, " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

// 3. Classification equals the brute-force inventory.
Outcome bijection() {
  auto t0 = Clock::now();
  Outcome o;
  std::size_t configs = 0, classes = 0;
  for (const auto& c : bijection_configs()) {
    SuiteResult r = run_bijection_suite(make_setting(c.type, c.galois));
    ++configs;
    classes += r.report["classes"].get<std::size_t>();
    std::size_t mismatches = r.report["unmatched_classes"].size() + r.report["unmatched_inventory"].size();
    if (mismatches != 0 || r.report["classes"] != r.report["inventory"]) {
      o.pass = false;
      o.detail += c.type + "/" + c.galois + ": " + std::to_string(mismatches) + " mismatches; ";
    }
  }
  double secs = seconds_since(t0);
  if (secs >= 600) {
    o.pass = false;
    o.detail += "too slow; ";
  }
  o.detail += std::to_string(configs) + " configurations, " + std::to_string(classes) + " classes, " +
              std::to_string(secs).substr(0, 5) + " s";
  return o;
}

// 4. Every constructed datum normalizes back to its pair.
Outcome round_trip() {
  Outcome o;
  std::size_t pairs = 0;
  for (const auto& c : bijection_configs()) {
    SettingPtr st = make_setting(c.type, c.galois);
    for (const auto& p : enumerate_pairs(*st)) {
      ++pairs;
      SigmaReport sr = verify_sigma_structure(st, p);
      if (!sr.ok()) {
        o.pass = false;
        o.detail += c.type + "/" + c.galois + ": " + sr.violations.front() + "; ";
      }
    }
  }
  o.detail += std::to_string(pairs) + " pairs";
  return o;
}

// 5. Local equivalence everywhere implies global equivalence.
Outcome local_global() {
  auto t0 = Clock::now();
  Outcome o;
  std::size_t pairs = 0, configs = 0;
  for (const auto& c : bijection_configs()) {
    SettingPtr st = make_setting(c.type, c.galois);
    int bound = static_cast<int>(2 * max_class_order(classify_elliptic(st)));
    LocalGlobalReport rep = exhaustive_local_global(st, bound);
    ++configs;
    pairs += rep.same_s_pairs;
    if (rep.inconsistencies || rep.witness_failures) {
      o.pass = false;
      o.detail += c.type + "/" + c.galois + ": " + std::to_string(rep.inconsistencies) + " inconsistencies; ";
    }
    if (counterexample_search(st, all_place_indices(*st->galois), bound).certificate) {
      o.pass = false;
      o.detail += c.type + "/" + c.galois + ": counterexample with all places; ";
    }
  }
  double secs = seconds_since(t0);
  if (secs >= 600) {
    o.pass = false;
    o.detail += "too slow; ";
  }
  o.detail += std::to_string(configs) + " configurations, " + std::to_string(pairs) + " pairs with shared s, " +
              std::to_string(secs).substr(0, 5) + " s";
  return o;
}

// 6. Finite-order reduction on 200 random data.
Outcome reduction() {
  auto t0 = Clock::now();
  Outcome o;
  const std::vector<std::string> types = {"A1", "A2", "B2", "G2", "A3", "B3", "C3", "A1xA1", "A1xA2", "A1xA1xA1"};
  std::size_t trials = 0, bypassed = 0, equivalent_pairs = 0, failures = 0;
  std::uint32_t seed = 1000;
  for (const auto& t : types)
    for (const char* g : {"trivial", "c2:inner"}) {
      ReductionTrialStats st = run_reduction_trials(make_setting(t, g), 10, seed++);
      trials += st.trials;
      bypassed += st.bypassed;
      equivalent_pairs += st.equivalent_pairs;
      failures += st.failures.size();
      for (const auto& f : st.failures) o.detail += t + "/" + g + " " + f + "; ";
    }
  double secs = seconds_since(t0);
  if (failures || trials != 200) o.pass = false;
  if (secs >= 300) {
    o.pass = false;
    o.detail += "too slow; ";
  }
  o.detail += std::to_string(trials) + " data (" + std::to_string(bypassed) + " already finite, " +
              std::to_string(trials - equivalent_pairs) + " inequivalent pairs), " + std::to_string(secs).substr(0, 5) +
              " s";
  return o;
}

// 7. Restriction of scalars.
Outcome shapiro() {
  auto t0 = Clock::now();
  Outcome o;
  std::size_t pairs = 0, configs = 0;
  for (const char* base : {"A1", "A2"}) {
    ShapiroStats st = run_shapiro_checks(make_root_system(base));
    pairs += st.pairs;
    configs += st.configurations;
    for (const auto& f : st.failures) {
      o.pass = false;
      o.detail += f + "; ";
    }
  }
  double secs = seconds_since(t0);
  if (secs >= 120) {
    o.pass = false;
    o.detail += "too slow; ";
  }
  o.detail += std::to_string(configs) + " configurations, " + std::to_string(pairs) + " pairs, " +
              std::to_string(secs).substr(0, 5) + " s";
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8. Small classifications, checked against the inventory and the frozen
// golden files.
Outcome known_classifications() {
  Outcome o;
  struct Known {
    const char* type;
    const char* galois;
    std::size_t classes;
    const char* golden;
  };
  for (const Known& k : {Known{"A1", "trivial", 1, "a1_trivial.json"}, Known{"A1", "c2:inner", 2, "a1_c2_inner.json"},
                         Known{"A2", "c3:inner", 3, "a2_c3_inner.json"}}) {
    SettingPtr st = make_setting(k.type, k.galois);
    ClassificationReport rep = classify_elliptic(st);
    Inventory inv = brute_force_inventory(st, static_cast<int>(2 * max_class_order(rep)));
    std::string tag = std::string(k.type) + "/" + k.galois;
    if (rep.classes.size() != k.classes || inv.classes.size() != k.classes) {
      o.pass = false;
      o.detail += tag + ": " + std::to_string(rep.classes.size()) + " classes, inventory " +
                  std::to_string(inv.classes.size()) + "; ";
    }
    std::string golden = read_file(std::string(ENDATLAS_GOLDEN_DIR) + "/" + k.golden);
    if (golden != classification_json(st, rep).dump(2) + "\n") {
      o.pass = false;
      o.detail += tag + ": differs from golden file; ";
    }
  }
  if (o.pass) o.detail = "A1/trivial 1, A1/c2:inner 2, A2/c3:inner 3";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"marks identity", marks_identity},
      {"fundamental group sizes", omega_sizes},
      {"classification matches brute force", bijection},
      {"normalization round trip", round_trip},
      {"local-global consistency", local_global},
      {"finite-order reduction", reduction},
      {"restriction of scalars", shapiro},
      {"known small classifications", known_classifications},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
