#ifndef ENDATLAS_GALOIS_HPP
#define ENDATLAS_GALOIS_HPP

// Finite Galois models: a finite group Γ given by its multiplication table,
// acting on the Dynkin diagram through a homomorphism into Aut(𝒟). Places are
// cyclic subgroups up to conjugacy; cocycles take values in lattice maps.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "endatlas/error.hpp"
#include "endatlas/lattice.hpp"
#include "endatlas/rootsys.hpp"
#include "endatlas/weyl.hpp"

namespace endatlas {

class GaloisModel {
 public:
  GaloisModel() = default;

  /// Validates and builds a model. `action[g]` permutes the simple-root
  /// indices (0-based).
  static GaloisModel make(std::vector<std::string> names, std::vector<std::vector<int>> table,
                          std::vector<NodePerm> action, std::string label = "custom") {
    GaloisModel g;
    g.names_ = std::move(names);
    g.table_ = std::move(table);
    g.action_ = std::move(action);
    g.label_ = std::move(label);
    g.validate();
    return g;
  }

  /// Group generated by permutations of an abstract set, with the given
  /// diagram action on each generator. Elements are named by the shortest
  /// generator word (breadth-first), the identity "e".
  static GaloisModel from_generators(const std::vector<NodePerm>& gens, const std::vector<std::string>& gen_names,
                                     const std::vector<NodePerm>& gen_action, std::size_t rank, std::string label) {
    std::size_t deg = gens.empty() ? 1 : gens.front().size();
    std::vector<NodePerm> elems{identity_perm(deg)};
    std::vector<std::string> names{"e"};
    std::vector<NodePerm> act{identity_perm(rank)};
    std::map<NodePerm, int> index{{elems[0], 0}};
    for (std::size_t k = 0; k < elems.size(); ++k)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        NodePerm next = compose_perm(gens[i], elems[k]);
        if (index.count(next)) continue;
        index[next] = static_cast<int>(elems.size());
        names.push_back(names[k] == "e" ? gen_names[i] : gen_names[i] + names[k]);
        act.push_back(compose_perm(gen_action[i], act[k]));
        elems.push_back(std::move(next));
      }
    std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
    for (std::size_t a = 0; a < elems.size(); ++a)
      for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(compose_perm(elems[a], elems[b]));
    return make(std::move(names), std::move(table), std::move(act), std::move(label));
  }

  static GaloisModel trivial(std::size_t rank) {
    return make({"e"}, {{0}}, {identity_perm(rank)}, "trivial");
  }

  /// ℤ/n generated by "g" acting through the given diagram automorphism.
  static GaloisModel cyclic(int n, const NodePerm& generator_action, std::string label) {
    NodePerm rot(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rot[static_cast<std::size_t>(i)] = (i + 1) % n;
    return from_generators({rot}, {"g"}, {generator_action}, generator_action.size(), std::move(label));
  }

  std::size_t size() const { return names_.size(); }
  std::size_t rank() const { return action_.empty() ? 0 : action_.front().size(); }
  const std::string& label() const { return label_; }
  const std::string& name(std::size_t g) const { return names_[g]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    throw InputError("unknown Galois element \"" + name + "\"");
  }

  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const NodePerm& action(int g) const { return action_[static_cast<std::size_t>(g)]; }

  int order(int g) const {
    int k = 1;
    for (int x = g; x != 0; x = mul(x, g)) ++k;
    return k;
  }

  /// Subgroup generated by the given elements, in breadth-first order.
  std::vector<int> generated(const std::vector<int>& gens) const {
    std::vector<int> out{0};
    std::vector<bool> in(size(), false);
    in[0] = true;
    for (std::size_t k = 0; k < out.size(); ++k)
      for (int g : gens) {
        int x = mul(g, out[k]);
        if (!in[static_cast<std::size_t>(x)]) {
          in[static_cast<std::size_t>(x)] = true;
          out.push_back(x);
        }
      }
    return out;
  }

  /// Greedy generating set: elements in listed order that enlarge the span.
  std::vector<int> generators() const {
    std::vector<int> gens;
    std::vector<int> span{0};
    for (int g = 1; g < static_cast<int>(size()); ++g) {
      if (std::find(span.begin(), span.end(), g) != span.end()) continue;
      gens.push_back(g);
      span = generated(gens);
    }
    return gens;
  }

  /// Kernel of σ ↦ σ_G.
  std::vector<int> kernel() const {
    std::vector<int> out;
    for (std::size_t g = 0; g < size(); ++g)
      if (is_identity_perm(action_[g])) out.push_back(static_cast<int>(g));
    return out;
  }

  bool acts_trivially() const { return kernel().size() == size(); }

  /// The model restricted to a subgroup (listed with the identity first).
  /// Returns the restricted model; `elements` maps new indices to old ones.
  GaloisModel restrict_to(const std::vector<int>& elements, std::string label) const {
    if (elements.empty() || elements.front() != 0) throw InputError("subgroup list must start with the identity");
    std::map<int, int> pos;
    for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = static_cast<int>(i);
    std::vector<std::string> names;
    std::vector<NodePerm> act;
    std::vector<std::vector<int>> table(elements.size(), std::vector<int>(elements.size()));
    for (std::size_t i = 0; i < elements.size(); ++i) {
      names.push_back(names_[static_cast<std::size_t>(elements[i])]);
      act.push_back(action_[static_cast<std::size_t>(elements[i])]);
      for (std::size_t j = 0; j < elements.size(); ++j) {
        auto it = pos.find(mul(elements[i], elements[j]));
        if (it == pos.end()) throw InputError("element list is not a subgroup");
        table[i][j] = it->second;
      }
    }
    return make(std::move(names), std::move(table), std::move(act), std::move(label));
  }

  /// Same abstract group with another diagram action (e.g. on an induced
  /// diagram).
  GaloisModel with_action(std::vector<NodePerm> action, std::string label) const {
    return make(names_, table_, std::move(action), std::move(label));
  }

  nlohmann::json to_json() const {
    nlohmann::json act = nlohmann::json::object();
    for (std::size_t g = 0; g < size(); ++g) {
      std::vector<int> one;
      for (int x : action_[g]) one.push_back(x + 1);
      act[names_[g]] = one;
    }
    return {{"elements", names_}, {"table", table_}, {"action", act}};
  }

 private:
  void validate() {
    const std::size_t n = names_.size();
    if (n == 0) throw InputError("Galois model has no elements");
    if (table_.size() != n || action_.size() != n) throw InputError("Galois model: table/action size mismatch");
    std::set<std::string> uniq(names_.begin(), names_.end());
    if (uniq.size() != n) throw InputError("Galois model: duplicate element names");
    for (const auto& row : table_) {
      if (row.size() != n) throw InputError("Galois model: table is not square");
      for (int x : row)
        if (x < 0 || static_cast<std::size_t>(x) >= n) throw InputError("Galois model: table entry out of range");
    }
    for (std::size_t a = 0; a < n; ++a)
      if (table_[0][a] != static_cast<int>(a) || table_[a][0] != static_cast<int>(a))
        throw InputError("Galois model: first element is not the identity");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (mul(mul(static_cast<int>(a), static_cast<int>(b)), static_cast<int>(c)) !=
              mul(static_cast<int>(a), mul(static_cast<int>(b), static_cast<int>(c))))
            throw InputError("Galois model: table is not associative");
    inverse_.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] == 0) inverse_[a] = static_cast<int>(b);
    for (std::size_t a = 0; a < n; ++a)
      if (inverse_[a] < 0 || table_[static_cast<std::size_t>(inverse_[a])][a] != 0)
        throw InputError("Galois model: element without inverse");
    const std::size_t r = action_.front().size();
    for (const auto& p : action_) {
      if (p.size() != r) throw InputError("Galois model: action permutations of unequal length");
      std::vector<int> sorted = p;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != identity_perm(r)) throw InputError("Galois model: action entry is not a permutation");
    }
    if (!is_identity_perm(action_[0])) throw InputError("Galois model: identity must act trivially");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (compose_perm(action_[a], action_[b]) != action_[static_cast<std::size_t>(table_[a][b])])
          throw InputError("Galois model: action is not a homomorphism");
  }

  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<NodePerm> action_;
  std::vector<int> inverse_;
  std::string label_;
};

using GaloisModelPtr = std::shared_ptr<const GaloisModel>;

// ---------------------------------------------------------------------------
// Presets

namespace detail {

// The standard order-2 diagram automorphism, or empty when the type has none.
inline NodePerm diagram_flip(const CartanType& t) {
  const int n = t.rank;
  NodePerm p = identity_perm(static_cast<std::size_t>(n));
  if (t.family == 'A' && n >= 2) {
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = n - 1 - i;
    return p;
  }
  if (t.family == 'D') {
    std::swap(p[static_cast<std::size_t>(n - 2)], p[static_cast<std::size_t>(n - 1)]);
    return p;
  }
  if (t.family == 'E' && n == 6) {
    p = {5, 1, 4, 3, 2, 0};
    return p;
  }
  return {};
}

// α₁ → α₃ → α₄ → α₁ on D4, fixing α₂.
inline NodePerm d4_rotation() { return {2, 1, 3, 0}; }

inline int parse_order(const std::string& text, const std::string& spec) {
  if (text.empty()) throw InputError("malformed Galois preset \"" + spec + "\"");
  int n = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw InputError("malformed Galois preset \"" + spec + "\"");
    n = n * 10 + (c - '0');
    if (n > 64) throw InputError("cyclic Galois preset order too large in \"" + spec + "\"");
  }
  if (n < 1) throw InputError("cyclic Galois preset needs order >= 1 in \"" + spec + "\"");
  return n;
}

}  // namespace detail

/// Reads a model from JSON {"elements", "table", "action"}; action entries
/// are 1-based permutations of the simple roots, missing entries act
/// trivially.
inline GaloisModel galois_model_from_json(const nlohmann::json& j, std::size_t rank, std::string label = "table") {
  try {
    auto names = j.at("elements").get<std::vector<std::string>>();
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    std::vector<NodePerm> action(names.size(), identity_perm(rank));
    if (j.contains("action")) {
      for (auto it = j.at("action").begin(); it != j.at("action").end(); ++it) {
        auto pos = std::find(names.begin(), names.end(), it.key());
        if (pos == names.end()) throw InputError("Galois model: action names unknown element \"" + it.key() + "\"");
        auto perm = it.value().get<std::vector<int>>();
        if (perm.size() != rank) throw InputError("Galois model: action of \"" + it.key() + "\" has wrong length");
        for (int& x : perm) --x;
        action[static_cast<std::size_t>(pos - names.begin())] = perm;
      }
    }
    return GaloisModel::make(std::move(names), std::move(table), std::move(action), std::move(label));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed Galois model JSON: ") + e.what());
  }
}

/// Builds a model from a preset name or "table:path".
///
///   trivial      one-element group
///   cN:inner     ℤ/N acting trivially
///   c2:outer     ℤ/2 acting by the diagram flip (A_n, n>=2; D_n; E6)
///   c3:outer     ℤ/3 acting by triality (D4)
///   s3           S₃ acting faithfully on the D4 diagram
///   s3:inner     S₃ acting trivially
///   table:PATH   JSON file
inline GaloisModel build_galois_model(const std::string& spec, const RootSystem& rs) {
  const std::size_t rank = rs.rank();
  if (spec == "trivial") return GaloisModel::trivial(rank);
  if (spec.rfind("table:", 0) == 0) {
    std::ifstream in(spec.substr(6));
    if (!in) throw InputError("cannot open Galois model file \"" + spec.substr(6) + "\"");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed Galois model JSON: ") + e.what());
    }
    return galois_model_from_json(j, rank, spec);
  }
  const bool d4 = rs.is_simple() && rs.type() == CartanType{'D', 4};
  if (spec == "s3" || spec == "s3:inner") {
    NodePerm r{1, 2, 0}, f{0, 2, 1};
    if (spec == "s3:inner")
      return GaloisModel::from_generators({r, f}, {"r", "f"}, {identity_perm(rank), identity_perm(rank)}, rank, spec);
    if (!d4) throw InputError("Galois preset \"s3\" needs type D4 (S3 acts on the D4 diagram only), got " + rs.name());
    NodePerm flip{0, 1, 3, 2};
    return GaloisModel::from_generators({r, f}, {"r", "f"}, {detail::d4_rotation(), flip}, rank, spec);
  }
  if (spec.size() >= 2 && spec[0] == 'c') {
    auto colon = spec.find(':');
    int n = detail::parse_order(spec.substr(1, colon == std::string::npos ? std::string::npos : colon - 1), spec);
    std::string variant = colon == std::string::npos ? "inner" : spec.substr(colon + 1);
    if (variant == "inner") return GaloisModel::cyclic(n, identity_perm(rank), spec);
    if (variant == "outer") {
      if (!rs.is_simple()) throw InputError("outer Galois presets need a simple type");
      if (n == 2) {
        NodePerm flip = detail::diagram_flip(rs.type());
        if (flip.empty())
          throw InputError("Galois preset \"c2:outer\" needs a type with an order-2 diagram automorphism "
                           "(A_n with n>=2, D_n, E6), got " + rs.name());
        return GaloisModel::cyclic(2, flip, spec);
      }
      if (n == 3) {
        if (!d4) throw InputError("Galois preset \"c3:outer\" needs type D4 (triality), got " + rs.name());
        return GaloisModel::cyclic(3, detail::d4_rotation(), spec);
      }
      throw InputError("outer cyclic Galois presets exist for orders 2 and 3 only");
    }
    throw InputError("unknown Galois preset variant in \"" + spec + "\" (expected inner or outer)");
  }
  throw InputError("unknown Galois preset \"" + spec +
                   "\" (expected trivial, cN:inner, c2:outer, c3:outer, s3, s3:inner or table:PATH)");
}

// ---------------------------------------------------------------------------
// Places

/// A place: the cyclic subgroup generated by a Frobenius element, up to
/// conjugacy.
struct Place {
  int generator = 0;
  std::vector<int> subgroup;  // generator powers: e, γ, γ², ...
};

inline std::vector<int> cyclic_subgroup(const GaloisModel& g, int gen) {
  std::vector<int> out{0};
  for (int x = gen; x != 0; x = g.mul(x, gen)) out.push_back(x);
  return out;
}

/// One place per conjugacy class of cyclic subgroups, ordered by subgroup
/// order then by generator index.
inline std::vector<Place> places(const GaloisModel& g) {
  std::vector<std::set<int>> seen;
  std::vector<Place> out;
  for (int gen = 0; gen < static_cast<int>(g.size()); ++gen) {
    std::vector<int> sub = cyclic_subgroup(g, gen);
    std::set<int> as_set(sub.begin(), sub.end());
    bool known = false;
    for (int x = 0; x < static_cast<int>(g.size()) && !known; ++x) {
      std::set<int> conj;
      for (int h : sub) conj.insert(g.mul(g.mul(x, h), g.inv(x)));
      known = std::find(seen.begin(), seen.end(), conj) != seen.end();
    }
    if (known) continue;
    seen.push_back(as_set);
    out.push_back({gen, sub});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Place& a, const Place& b) { return a.subgroup.size() < b.subgroup.size(); });
  return out;
}

// ---------------------------------------------------------------------------
// Cocycles

/// A cocycle: one lattice map per group element, in the model's order.
using Cocycle = std::vector<LatticeMap>;

/// σ ↦ σ_G as lattice maps (permutation matrices), with inverses.
struct DiagramActionMaps {
  std::vector<LatticeMap> forward;
  std::vector<LatticeMap> inverse;

  explicit DiagramActionMaps(const GaloisModel& g) {
    for (std::size_t s = 0; s < g.size(); ++s) {
      forward.push_back(diagram_map(g.action(static_cast<int>(s))));
      inverse.push_back(diagram_map(inverse_perm(g.action(static_cast<int>(s)))));
    }
  }
};

/// True iff c(στ) = c(σ)·σ_G c(τ) σ_G⁻¹ for all σ, τ.
inline bool is_cocycle(const GaloisModel& g, const DiagramActionMaps& phi, const Cocycle& c) {
  if (c.size() != g.size()) return false;
  for (int s = 0; s < static_cast<int>(g.size()); ++s)
    for (int t = 0; t < static_cast<int>(g.size()); ++t) {
      auto su = static_cast<std::size_t>(s);
      LatticeMap rhs = c[su] * phi.forward[su] * c[static_cast<std::size_t>(t)] * phi.inverse[su];
      if (rhs != c[static_cast<std::size_t>(g.mul(s, t))]) return false;
    }
  return true;
}

/// All cocycles whose value on the k-th greedy generator lies in
/// candidates[k]: values are propagated from the generators through
/// c(gx) = c(g)·g(c(x)) and then checked on the whole table.
inline std::vector<Cocycle> enumerate_cocycles_from(const GaloisModel& g, const DiagramActionMaps& phi,
                                                    const std::vector<std::vector<LatticeMap>>& candidates,
                                                    std::size_t rank) {
  const std::vector<int> gens = g.generators();
  if (candidates.size() != gens.size()) throw InternalError("cocycle candidates do not match generators");
  std::vector<Cocycle> out;
  if (gens.empty()) {
    out.push_back({LatticeMap::identity(rank)});
    return out;
  }
  std::vector<std::size_t> pick(gens.size(), 0);
  for (const auto& c : candidates)
    if (c.empty()) return out;
  for (;;) {
    Cocycle c(g.size());
    std::vector<bool> known(g.size(), false);
    c[0] = LatticeMap::identity(rank);
    known[0] = true;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t k = 0; k < queue.size() && ok; ++k) {
      int x = queue[k];
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        auto gi = static_cast<std::size_t>(gens[i]);
        const LatticeMap& cg = candidates[i][pick[i]];
        LatticeMap v = cg * phi.forward[gi] * c[static_cast<std::size_t>(x)] * phi.inverse[gi];
        auto y = static_cast<std::size_t>(g.mul(gens[i], x));
        if (!known[y]) {
          known[y] = true;
          c[y] = std::move(v);
          queue.push_back(static_cast<int>(y));
        } else if (c[y] != v) {
          ok = false;
        }
      }
    }
    if (ok && is_cocycle(g, phi, c)) out.push_back(std::move(c));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == candidates[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

/// Z¹(Γ, Ω) for the conjugation action through φ.
inline std::vector<Cocycle> enumerate_omega_cocycles(const GaloisModel& g, const RootSystem& rs,
                                                     const std::vector<OmegaElement>& omega) {
  DiagramActionMaps phi(g);
  std::vector<LatticeMap> values;
  for (const auto& w : omega) values.push_back(w.map);
  std::vector<std::vector<LatticeMap>> cand(g.generators().size(), values);
  return enumerate_cocycles_from(g, phi, cand, rs.rank());
}

/// Restriction of a cocycle to a list of elements.
inline Cocycle restrict_cocycle(const Cocycle& c, const std::vector<int>& elements) {
  Cocycle out;
  for (int e : elements) out.push_back(c[static_cast<std::size_t>(e)]);
  return out;
}

}  // namespace endatlas

#endif  // ENDATLAS_GALOIS_HPP
