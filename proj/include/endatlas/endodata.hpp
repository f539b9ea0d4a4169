#ifndef ENDATLAS_ENDODATA_HPP
#define ENDATLAS_ENDODATA_HPP

// Endoscopic data as (s, W-valued cocycle, B′). The Galois action on the
// dual torus attached to a datum is σ ↦ σ_{G′} = w(σ)·σ_G; B′ is the simple
// system of the positive system of Σ^{G′} = {α : α(s) = 1} that every σ_{G′}
// preserves.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "endatlas/error.hpp"
#include "endatlas/galois.hpp"
#include "endatlas/lattice.hpp"
#include "endatlas/rootsys.hpp"
#include "endatlas/torus.hpp"
#include "endatlas/weyl.hpp"

namespace endatlas {

/// A root system with a Galois model acting on its diagram, plus cached
/// derived data.
struct Setting {
  RootSystemPtr rs;
  GaloisModelPtr galois;
  DiagramActionMaps phi;
  std::vector<OmegaElement> omega;  // empty unless the root system is simple

  Setting(RootSystemPtr r, GaloisModelPtr g) : rs(std::move(r)), galois(std::move(g)), phi(*galois) {
    if (galois->rank() != rs->rank())
      throw InputError("Galois model acts on rank " + std::to_string(galois->rank()) + " but the root system " +
                       rs->name() + " has rank " + std::to_string(rs->rank()));
    for (std::size_t g2 = 0; g2 < galois->size(); ++g2) {
      const NodePerm& p = galois->action(static_cast<int>(g2));
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
          if (rs->cartan(i, j) != rs->cartan(static_cast<std::size_t>(p[i]), static_cast<std::size_t>(p[j])))
            throw InputError("Galois action of \"" + galois->name(g2) + "\" is not a diagram automorphism of " +
                             rs->name());
    }
    if (rs->is_simple()) omega = omega_group(*rs);
  }

  std::size_t rank() const { return rs->rank(); }
  std::size_t order() const { return galois->size(); }

  /// φ(σ) on the completed diagram (α₀ fixed).
  NodePerm affine_action(int g) const { return extend_to_affine(galois->action(g)); }

  bool same_as(const Setting& o) const {
    return rs->name() == o.rs->name() && galois->names() == o.galois->names() &&
           galois->table() == o.galois->table() && [&] {
             for (std::size_t g = 0; g < galois->size(); ++g)
               if (galois->action(static_cast<int>(g)) != o.galois->action(static_cast<int>(g))) return false;
             return true;
           }();
  }
};

using SettingPtr = std::shared_ptr<const Setting>;

inline SettingPtr make_setting(RootSystemPtr rs, GaloisModelPtr g) {
  return std::make_shared<const Setting>(std::move(rs), std::move(g));
}

inline SettingPtr make_setting(const std::string& type, const std::string& galois_spec) {
  auto rs = make_root_system(type);
  auto g = std::make_shared<const GaloisModel>(build_galois_model(galois_spec, *rs));
  return make_setting(rs, g);
}

// ---------------------------------------------------------------------------
// Root subsets attached to s

/// Σ^{G′} = {α : α(s) = 1}, in canonical root order.
inline std::vector<Vec> endoscopic_roots(const RootSystem& rs, const TorusElement& s) {
  std::vector<Vec> out;
  for (const Vec& r : rs.roots())
    if (s.value(r).is_trivial()) out.push_back(r);
  return out;
}

/// Simple system of a positive system of a closed root subset: the elements
/// of `positive` that are not the sum of two elements of `positive`.
inline std::vector<Vec> indecomposables(const std::vector<Vec>& positive) {
  std::unordered_set<Vec, VecHash> in(positive.begin(), positive.end());
  std::vector<Vec> out;
  for (const Vec& b : positive) {
    bool dec = false;
    for (const Vec& a : positive) {
      if (a == b) continue;
      if (in.count(b - a)) {
        dec = true;
        break;
      }
    }
    if (!dec) out.push_back(b);
  }
  return out;
}

/// The default B′: simple system of Σ^{G′} ∩ Σ⁺.
inline std::vector<Vec> default_b_prime(const RootSystem& rs, const TorusElement& s) {
  std::vector<Vec> pos;
  for (const Vec& r : endoscopic_roots(rs, s))
    if (RootSystem::is_nonnegative(r)) pos.push_back(r);
  return indecomposables(pos);
}

// ---------------------------------------------------------------------------
// Data

struct EndoscopicDatum {
  SettingPtr setting;
  TorusElement s;
  Cocycle cocycle;            // w(σ) for σ in model order
  std::vector<Vec> b_prime;   // B′, canonical root order
  bool normalized = false;

  const RootSystem& rs() const { return *setting->rs; }
  const GaloisModel& galois() const { return *setting->galois; }

  /// σ_{G′} = w(σ)·σ_G.
  LatticeMap action(int g) const {
    return cocycle[static_cast<std::size_t>(g)] * setting->phi.forward[static_cast<std::size_t>(g)];
  }

  /// Same s, same B′ as a set, same cocycle.
  bool same_as(const EndoscopicDatum& o) const {
    return s == o.s && same_root_set(b_prime, o.b_prime) && cocycle == o.cocycle;
  }
};

inline void sort_canonically(const RootSystem& rs, std::vector<Vec>& roots) {
  std::sort(roots.begin(), roots.end(), [&](const Vec& a, const Vec& b) { return *rs.index_of(a) < *rs.index_of(b); });
}

/// Checks every datum invariant; returns an empty string or the first
/// violation.
inline std::string datum_violation(const EndoscopicDatum& d) {
  const RootSystem& rs = d.rs();
  if (d.s.rank() != rs.rank()) return "torus element has rank " + std::to_string(d.s.rank());
  if (d.cocycle.size() != d.galois().size()) return "cocycle is not defined on every Galois element";
  for (std::size_t g = 0; g < d.cocycle.size(); ++g) {
    if (d.cocycle[g].rank() != rs.rank()) return "cocycle value at \"" + d.galois().name(g) + "\" has wrong rank";
    if (!rs.permutes_roots(d.cocycle[g]) || !is_weyl_element(rs, d.cocycle[g]))
      return "cocycle value at \"" + d.galois().name(g) + "\" is not a Weyl group element";
  }
  if (!is_cocycle(d.galois(), d.setting->phi, d.cocycle)) return "cocycle identity fails";
  std::vector<Vec> sigma = endoscopic_roots(rs, d.s);
  if (!is_base_of(sigma, d.b_prime)) return "B' is not a base of the roots trivial on s";
  for (std::size_t g = 0; g < d.cocycle.size(); ++g) {
    LatticeMap a = d.action(static_cast<int>(g));
    if (!(torus_action(a, d.s) == d.s)) return "sigma_G' at \"" + d.galois().name(g) + "\" does not fix s";
    if (!same_root_set(map_roots(a, d.b_prime), d.b_prime))
      return "sigma_G' at \"" + d.galois().name(g) + "\" does not preserve B'";
  }
  return {};
}

inline EndoscopicDatum make_datum(SettingPtr setting, TorusElement s, Cocycle cocycle,
                                  std::optional<std::vector<Vec>> b_prime = std::nullopt) {
  EndoscopicDatum d;
  d.setting = std::move(setting);
  d.b_prime = b_prime ? std::move(*b_prime) : default_b_prime(*d.setting->rs, s);
  d.s = std::move(s);
  d.cocycle = std::move(cocycle);
  sort_canonically(d.rs(), d.b_prime);
  std::string why = datum_violation(d);
  if (!why.empty()) throw InputError("invalid endoscopic datum: " + why);
  return d;
}

inline Cocycle trivial_cocycle(const Setting& st) {
  return Cocycle(st.order(), LatticeMap::identity(st.rank()));
}

/// (1, trivial cocycle): the group itself.
inline EndoscopicDatum principal_datum(const SettingPtr& st) {
  return make_datum(st, TorusElement(st->rank()), trivial_cocycle(*st));
}

/// x·d for x ∈ W: s ↦ x·s, w(σ) ↦ x w(σ) σ_G x⁻¹ σ_G⁻¹, B′ ↦ x(B′).
inline EndoscopicDatum conjugate(const EndoscopicDatum& d, const LatticeMap& x) {
  EndoscopicDatum out = d;
  LatticeMap xinv = x.inverse();
  out.s = torus_action_inv(xinv, d.s);
  for (std::size_t g = 0; g < d.cocycle.size(); ++g)
    out.cocycle[g] = x * d.action(static_cast<int>(g)) * xinv * d.setting->phi.inverse[g];
  out.b_prime = map_roots(x, d.b_prime);
  sort_canonically(d.rs(), out.b_prime);
  out.normalized = false;
  return out;
}

// ---------------------------------------------------------------------------
// Langlands normalization

enum class Shape { Delta, DeltaA };

inline const char* shape_name(Shape s) { return s == Shape::Delta ? "Delta" : "DeltaA"; }

struct LanglandsData {
  std::int64_t order = 1;
  std::vector<std::vector<Vec>> layers;   // 𝔜_k = {α : α(s) ≡ k/d}
  std::vector<std::vector<Vec>> minimal;  // 𝔛_k
  std::vector<Vec> all;                   // 𝔛, canonical root order
  Shape shape = Shape::Delta;
  LatticeMap u;                           // u(𝔛) ∈ {Δ, Δₐ}

  /// Indices k ≥ 1 with 𝔛_k nonempty.
  std::vector<std::int64_t> nonempty_upper_layers() const {
    std::vector<std::int64_t> out;
    for (std::size_t k = 1; k < minimal.size(); ++k)
      if (!minimal[k].empty()) out.push_back(static_cast<std::int64_t>(k));
    return out;
  }
};

namespace detail {

// β − α is a non-negative integer combination of the base.
inline bool below(std::span<const Vec> base, const Vec& a, const Vec& b) {
  Vec diff = b - a;
  if (is_zero(diff)) return true;
  if (base.empty()) return false;
  auto c = coordinates_in(base, diff);
  if (!c) return false;
  for (const Rational& x : *c)
    if (x.denominator() != 1 || sign(x) < 0) return false;
  return true;
}

}  // namespace detail

/// The layers 𝔜_k, the filtered minimal sets 𝔛_k and 𝔛 for a datum of
/// finite order, in the datum's own frame (u is not computed).
inline LanglandsData langlands_layers(const EndoscopicDatum& d) {
  const RootSystem& rs = d.rs();
  if (!d.s.is_finite())
    throw InputError("Langlands normalization needs s of finite order; apply the finite-order reduction first");
  LanglandsData ld;
  ld.order = d.s.order();
  const auto n = static_cast<std::size_t>(ld.order);
  ld.layers.assign(n, {});
  for (const Vec& r : rs.roots()) {
    Rational v = d.s.value(r).torsion * ld.order;
    ld.layers[static_cast<std::size_t>(v.numerator())].push_back(r);
  }
  ld.minimal.assign(n, {});
  ld.minimal[0] = d.b_prime;
  IntLattice span(rs.rank());
  for (const Vec& r : ld.layers[0]) span.add(r);
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Vec> filtered;
    for (const Vec& r : ld.layers[k])
      if (!span.contains(r)) filtered.push_back(r);
    for (const Vec& a : filtered) {
      bool minimal = true;
      for (const Vec& b : filtered)
        if (b != a && detail::below(d.b_prime, b, a)) {
          minimal = false;
          break;
        }
      if (minimal) ld.minimal[k].push_back(a);
    }
    for (const Vec& r : ld.layers[k]) span.add(r);
  }
  for (const auto& layer : ld.minimal) ld.all.insert(ld.all.end(), layer.begin(), layer.end());
  sort_canonically(rs, ld.all);
  return ld;
}

namespace detail {

inline std::vector<Vec> affine_nodes(const RootSystem& rs) { return rs.affine().nodes; }

inline LanglandsData transport_layers(const LanglandsData& ld, const LatticeMap& u, const RootSystem& rs) {
  LanglandsData out = ld;
  for (auto& layer : out.layers) {
    layer = map_roots(u, layer);
    sort_canonically(rs, layer);
  }
  for (auto& layer : out.minimal) {
    layer = map_roots(u, layer);
    sort_canonically(rs, layer);
  }
  out.all = map_roots(u, out.all);
  sort_canonically(rs, out.all);
  return out;
}

}  // namespace detail

/// Conjugates a finite-order datum of a simple type so that 𝔛 becomes Δ or
/// Δₐ. Returns the normalized datum and its layers in the new frame.
inline std::pair<EndoscopicDatum, LanglandsData> langlands_normalize(const EndoscopicDatum& d) {
  const RootSystem& rs = d.rs();
  if (!rs.is_simple()) throw InputError("Langlands normalization needs a simple root system, got " + rs.name());
  LanglandsData ld = langlands_layers(d);
  const std::vector<Vec> simple = rs.simple_roots();
  const std::vector<Vec> affine = detail::affine_nodes(rs);
  std::optional<LatticeMap> u;
  Shape shape = Shape::Delta;
  if (same_root_set(ld.all, simple)) {
    u = LatticeMap::identity(rs.rank());
  } else if (same_root_set(ld.all, affine)) {
    u = LatticeMap::identity(rs.rank());
    shape = Shape::DeltaA;
  } else if (ld.all.size() == rs.rank()) {
    if (!is_base(rs, ld.all)) throw InternalError("the minimal set 𝔛 is not a base");
    u = transport_within(rs, ld.all, simple);
  } else if (ld.all.size() == rs.rank() + 1) {
    shape = Shape::DeltaA;
    for (std::size_t i = 0; i < ld.all.size() && !u; ++i) {
      std::vector<Vec> rest;
      for (std::size_t j = 0; j < ld.all.size(); ++j)
        if (j != i) rest.push_back(ld.all[j]);
      if (!is_base(rs, rest)) continue;
      auto cand = transport_within(rs, rest, simple);
      if (cand && cand->apply(ld.all[i]) == rs.lowest_root()) u = cand;
    }
  }
  if (!u) throw InternalError("no Weyl element carries 𝔛 to Δ or Δₐ");
  EndoscopicDatum nd = conjugate(d, *u);
  nd.normalized = true;
  LanglandsData out = detail::transport_layers(ld, *u, rs);
  out.shape = shape;
  out.u = *u;
  if (!same_root_set(out.all, shape == Shape::Delta ? simple : affine))
    throw InternalError("normalization did not produce Δ or Δₐ");
  for (std::size_t g = 0; g < nd.cocycle.size(); ++g) {
    const LatticeMap& w = nd.cocycle[g];
    if (shape == Shape::Delta) {
      if (!w.is_identity()) throw InternalError("shape Δ with a nontrivial cocycle");
    } else {
      bool in_omega = std::any_of(d.setting->omega.begin(), d.setting->omega.end(),
                                  [&](const OmegaElement& o) { return o.map == w; });
      if (!in_omega) throw InternalError("normalized cocycle value outside Ω");
    }
  }
  return {std::move(nd), std::move(out)};
}

/// Index in Ω of a normalized cocycle value.
inline int omega_index(const Setting& st, const LatticeMap& w) {
  for (std::size_t i = 0; i < st.omega.size(); ++i)
    if (st.omega[i].map == w) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// Orbits of s and stabilizers

inline constexpr std::size_t default_orbit_cap = 1000000;

/// Breadth-first exploration of the W-orbit of s under simple reflections.
/// `transversal[k]` carries s to `points[k]`.
struct TorusOrbit {
  std::vector<TorusElement> points;
  std::vector<LatticeMap> transversal;
  std::unordered_map<TorusElement, std::size_t, TorusHash> index;

  std::optional<std::size_t> find(const TorusElement& t) const {
    auto it = index.find(t);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

/// Explores the orbit, stopping early once `target` is reached (if given).
inline TorusOrbit torus_orbit(const RootSystem& rs, const TorusElement& s, std::size_t cap = default_orbit_cap,
                              const TorusElement* target = nullptr) {
  TorusOrbit o;
  o.points.push_back(s);
  o.transversal.push_back(LatticeMap::identity(rs.rank()));
  o.index.emplace(s, 0);
  if (target && *target == s) return o;
  for (std::size_t k = 0; k < o.points.size(); ++k)
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      // Simple reflections are involutions, so s_i·t = t ∘ s_i.
      TorusElement next = pull_back(rs.simple_reflection(i), o.points[k]);
      if (o.index.count(next)) continue;
      if (o.points.size() >= cap)
        throw CapExceeded("W-orbit exploration exceeded cap of " + std::to_string(cap) + " elements");
      o.index.emplace(next, o.points.size());
      o.transversal.push_back(rs.simple_reflection(i) * o.transversal[k]);
      o.points.push_back(std::move(next));
      if (target && o.points.back() == *target) return o;
    }
  return o;
}

/// Some x ∈ W with x·s1 = s2, or nullopt.
inline std::optional<LatticeMap> conjugating_weyl_element(const RootSystem& rs, const TorusElement& s1,
                                                          const TorusElement& s2, std::size_t cap = default_orbit_cap) {
  if (s1.rank() != s2.rank() || s1.free_rank() != s2.free_rank()) return std::nullopt;
  TorusOrbit o = torus_orbit(rs, s1, cap, &s2);
  auto k = o.find(s2);
  if (!k) return std::nullopt;
  return o.transversal[*k];
}

/// Elements of Stab_W(s) preserving B′ (a complement of W(Σ^{G′}) in the
/// stabilizer), from Schreier generators of the orbit.
inline std::vector<LatticeMap> stabilizer_of_base(const RootSystem& rs, const TorusElement& s,
                                                  const std::vector<Vec>& b_prime,
                                                  std::size_t cap = default_orbit_cap) {
  TorusOrbit o = torus_orbit(rs, s, cap);
  std::vector<LatticeMap> inv(o.transversal.size());
  for (std::size_t k = 0; k < o.transversal.size(); ++k) inv[k] = o.transversal[k].inverse();
  std::unordered_set<LatticeMap, LatticeMapHash> gens;
  for (std::size_t k = 0; k < o.points.size(); ++k)
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      std::size_t j = *o.find(pull_back(rs.simple_reflection(i), o.points[k]));
      LatticeMap z = inv[j] * rs.simple_reflection(i) * o.transversal[k];
      auto y = transport_within(rs, map_roots(z, b_prime), b_prime);
      if (!y) throw InternalError("stabilizer element does not preserve the root subsystem");
      LatticeMap h = *y * z;
      if (!h.is_identity()) gens.insert(std::move(h));
    }
  std::vector<LatticeMap> gen_list(gens.begin(), gens.end());
  std::sort(gen_list.begin(), gen_list.end());
  std::vector<LatticeMap> group{LatticeMap::identity(rs.rank())};
  std::unordered_set<LatticeMap, LatticeMapHash> seen{group.front()};
  for (std::size_t k = 0; k < group.size(); ++k)
    for (const LatticeMap& g : gen_list) {
      LatticeMap x = g * group[k];
      if (seen.insert(x).second) {
        if (group.size() >= cap) throw CapExceeded("stabilizer closure exceeded cap of " + std::to_string(cap));
        group.push_back(std::move(x));
      }
    }
  return group;
}

// ---------------------------------------------------------------------------
// Equivalence

struct EquivalenceWitness {
  LatticeMap x;          // Weyl element with x·d1 = d2
  int omega = -1;        // Ω element used in the normalized frame, if any
  std::string route;     // "identical", "principal", "omega" or "stabilizer"
};

struct EquivalenceOptions {
  std::size_t orbit_cap = default_orbit_cap;
  bool force_stabilizer_route = false;
};

namespace detail {

inline bool same_actions(const EndoscopicDatum& a, const EndoscopicDatum& b) {
  for (std::size_t g = 0; g < a.cocycle.size(); ++g)
    if (a.cocycle[g] != b.cocycle[g]) return false;
  return true;
}

inline void require_same_setting(const EndoscopicDatum& d1, const EndoscopicDatum& d2) {
  if (!d1.setting->same_as(*d2.setting))
    throw InputError("data live over different root systems or Galois models");
}

}  // namespace detail

/// Searches for an equivalence between two data. The s-components are
/// reconciled by orbit search, the B′ by descent inside W(Σ^{G′}); the
/// remaining freedom is Ω in the normalized frame (finite order, simple
/// type) or the stabilizer of (s, B′) otherwise.
inline std::optional<EquivalenceWitness> equivalent(const EndoscopicDatum& d1, const EndoscopicDatum& d2,
                                                    const EquivalenceOptions& opt = {}) {
  detail::require_same_setting(d1, d2);
  const RootSystem& rs = d1.rs();
  if (d1.same_as(d2)) return EquivalenceWitness{LatticeMap::identity(rs.rank()), -1, "identical"};
  auto x0 = conjugating_weyl_element(rs, d1.s, d2.s, opt.orbit_cap);
  if (!x0) return std::nullopt;
  EndoscopicDatum a = conjugate(d1, *x0);
  auto y = transport_within(rs, a.b_prime, d2.b_prime);
  if (!y) throw InternalError("B' of conjugate data are not bases of the same subsystem");
  a = conjugate(a, *y);
  LatticeMap g = *y * *x0;

  EquivalenceWitness wit;
  const bool normalized_route = rs.is_simple() && d2.s.is_finite() && !opt.force_stabilizer_route;
  if (normalized_route) {
    auto [n1, l1] = langlands_normalize(a);
    auto [n2, l2] = langlands_normalize(d2);
    if (l1.shape != l2.shape || l1.u != l2.u) throw InternalError("mixed shapes after reconciling s and B'");
    if (l1.shape == Shape::Delta) {
      if (!detail::same_actions(n1, n2)) throw InternalError("shape Δ data with different cocycles");
      wit = {g, -1, "principal"};
    } else {
      const auto& omega = d1.setting->omega;
      bool found = false;
      for (std::size_t i = 0; i < omega.size() && !found; ++i) {
        const LatticeMap& w = omega[i].map;
        bool layers_ok = true;
        for (std::size_t k = 1; k < l1.minimal.size() && layers_ok; ++k)
          layers_ok = same_root_set(map_roots(w, l1.minimal[k]), l2.minimal[k]);
        if (!layers_ok) continue;
        EndoscopicDatum c = conjugate(n1, w);
        if (!detail::same_actions(c, n2)) continue;
        LatticeMap x = l1.u.inverse() * w * l1.u * g;
        wit = {x, static_cast<int>(i), "omega"};
        found = true;
      }
      if (!found) return std::nullopt;
    }
  } else {
    bool found = false;
    for (const LatticeMap& h : stabilizer_of_base(rs, d2.s, d2.b_prime, opt.orbit_cap)) {
      EndoscopicDatum c = conjugate(a, h);
      if (!detail::same_actions(c, d2)) continue;
      wit = {h * g, -1, "stabilizer"};
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  if (!conjugate(d1, wit.x).same_as(d2)) throw InternalError("equivalence witness does not carry d1 to d2");
  return wit;
}

// ---------------------------------------------------------------------------
// Out, ellipticity, localization

/// Ω-elements preserving every 𝔛_k (k ≥ 1) and commuting with σ_{G′}.
inline std::vector<OmegaElement> out_group(const EndoscopicDatum& d) {
  auto [nd, ld] = langlands_normalize(d);
  if (ld.shape == Shape::Delta)
    throw InputError("Out is only described for data whose minimal set is the completed diagram (shape DeltaA)");
  std::vector<OmegaElement> out;
  for (const OmegaElement& o : d.setting->omega) {
    bool ok = true;
    for (std::size_t k = 1; k < ld.minimal.size() && ok; ++k)
      ok = same_root_set(map_roots(o.map, ld.minimal[k]), ld.minimal[k]);
    if (ok) ok = detail::same_actions(conjugate(nd, o.map), nd);
    if (ok) out.push_back(o);
  }
  return out;
}

/// Number of orbits of σ ↦ σ_{G′} on a σ_{G′}-stable root list.
inline std::size_t orbit_count(const EndoscopicDatum& d, const std::vector<Vec>& roots) {
  std::vector<bool> done(roots.size(), false);
  std::size_t count = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (done[i]) continue;
    ++count;
    for (std::size_t g = 0; g < d.cocycle.size(); ++g) {
      Vec img = d.action(static_cast<int>(g)).apply(roots[i]);
      auto it = std::find(roots.begin(), roots.end(), img);
      if (it == roots.end()) throw InternalError("root list is not stable under the Galois action");
      done[static_cast<std::size_t>(it - roots.begin())] = true;
    }
  }
  return count;
}

/// dim of the Γ-fixed subspace of X*(T̂)⊗ℚ under σ_{G′}, as the average
/// trace.
inline std::size_t fixed_rank(const EndoscopicDatum& d) {
  long long total = 0;
  for (std::size_t g = 0; g < d.cocycle.size(); ++g) total += d.action(static_cast<int>(g)).trace();
  auto n = static_cast<long long>(d.cocycle.size());
  if (total % n != 0) throw InternalError("average trace is not an integer");
  return static_cast<std::size_t>(total / n);
}

/// Ellipticity: dim ℚ[Δₐ]^Γ = 1 + dim ℚ[Δ^{G′}]^Γ in the normalized frame
/// (shape Δₐ), dim X*_ℚ^Γ = dim ℚ[Δ^{G′}]^Γ otherwise.
inline bool is_elliptic(const EndoscopicDatum& d) {
  if (d.rs().is_simple() && d.s.is_finite()) {
    auto [nd, ld] = langlands_normalize(d);
    if (ld.shape == Shape::DeltaA) {
      const auto nodes = d.rs().affine().nodes;
      return orbit_count(nd, nodes) == 1 + orbit_count(nd, ld.minimal[0]);
    }
    return fixed_rank(nd) == orbit_count(nd, ld.minimal[0]);
  }
  return fixed_rank(d) == orbit_count(d, d.b_prime);
}

/// The datum restricted to the decomposition group of a place.
inline EndoscopicDatum localize(const EndoscopicDatum& d, const Place& v) {
  auto sub = std::make_shared<const GaloisModel>(
      d.galois().restrict_to(v.subgroup, d.galois().label() + "@" + d.galois().name(static_cast<std::size_t>(v.generator))));
  EndoscopicDatum out;
  out.setting = make_setting(d.setting->rs, sub);
  out.s = d.s;
  out.cocycle = restrict_cocycle(d.cocycle, v.subgroup);
  out.b_prime = d.b_prime;
  out.normalized = false;
  return out;
}

}  // namespace endatlas

#endif  // ENDATLAS_ENDODATA_HPP
