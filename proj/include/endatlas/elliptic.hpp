#ifndef ENDATLAS_ELLIPTIC_HPP
#define ENDATLAS_ELLIPTIC_HPP

// Elliptic endoscopic data from pairs (Ω-valued cocycle, orbit in Δₐ), their
// classification, and a brute-force inventory over torsion elements used as
// the independent oracle for the classification.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "endatlas/endodata.hpp"
#include "endatlas/error.hpp"
#include "endatlas/galois.hpp"
#include "endatlas/rootsys.hpp"
#include "endatlas/torus.hpp"
#include "endatlas/weyl.hpp"

namespace endatlas {

struct EllipticPair {
  std::vector<int> omega;  // Ω index of ω_{G′}(σ), per Galois element
  std::vector<int> orbit;  // node labels of Δₐ, ascending

  friend bool operator==(const EllipticPair&, const EllipticPair&) = default;
  friend auto operator<=>(const EllipticPair&, const EllipticPair&) = default;
};

/// σ_{G′} = ω_{G′}(σ)σ_G as a permutation of Δₐ.
inline NodePerm pair_node_action(const Setting& st, const EllipticPair& p, int g) {
  return compose_perm(st.omega[static_cast<std::size_t>(p.omega[static_cast<std::size_t>(g)])].perm,
                      st.affine_action(g));
}

inline Cocycle pair_cocycle(const Setting& st, const EllipticPair& p) {
  Cocycle c;
  for (int i : p.omega) c.push_back(st.omega[static_cast<std::size_t>(i)].map);
  return c;
}

inline std::int64_t pair_order(const Setting& st, const EllipticPair& p) {
  std::int64_t d = 0;
  for (int k : p.orbit) d += st.rs->marks()[static_cast<std::size_t>(k)];
  return d;
}

/// Z¹(Γ, Ω) as Ω-index vectors.
inline std::vector<std::vector<int>> omega_cocycles(const Setting& st) {
  std::vector<std::vector<int>> out;
  for (const Cocycle& c : enumerate_omega_cocycles(*st.galois, *st.rs, st.omega)) {
    std::vector<int> idx;
    for (const LatticeMap& w : c) idx.push_back(omega_index(st, w));
    out.push_back(std::move(idx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All pairs (ω_{G′}, 𝒪) with 𝒪 a single σ_{G′}-orbit in Δₐ, in canonical
/// order.
inline std::vector<EllipticPair> enumerate_pairs(const Setting& st) {
  if (!st.rs->is_simple()) throw InputError("elliptic pairs need a simple root system");
  const std::size_t nodes = st.rank() + 1;
  std::vector<EllipticPair> out;
  for (const auto& c : omega_cocycles(st)) {
    EllipticPair base{c, {}};
    std::vector<NodePerm> acts;
    for (int g = 0; g < static_cast<int>(st.order()); ++g) acts.push_back(pair_node_action(st, base, g));
    std::vector<bool> done(nodes, false);
    for (std::size_t k = 0; k < nodes; ++k) {
      if (done[k]) continue;
      std::vector<int> orbit;
      for (const auto& a : acts) orbit.push_back(a[k]);
      std::sort(orbit.begin(), orbit.end());
      orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
      for (int x : orbit) done[static_cast<std::size_t>(x)] = true;
      out.push_back({c, orbit});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Some ω ∈ Ω with 𝒪₂ = ω(𝒪₁) and σ_{G′₂} = ω σ_{G′₁} ω⁻¹, as an Ω index.
inline std::optional<int> pair_equivalent(const Setting& st, const EllipticPair& p1, const EllipticPair& p2) {
  for (std::size_t i = 0; i < st.omega.size(); ++i) {
    const NodePerm& w = st.omega[i].perm;
    std::vector<int> moved;
    for (int k : p1.orbit) moved.push_back(w[static_cast<std::size_t>(k)]);
    std::sort(moved.begin(), moved.end());
    if (moved != p2.orbit) continue;
    NodePerm winv = inverse_perm(w);
    bool ok = true;
    for (int g = 0; g < static_cast<int>(st.order()) && ok; ++g)
      ok = compose_perm(w, compose_perm(pair_node_action(st, p1, g), winv)) == pair_node_action(st, p2, g);
    if (ok) return static_cast<int>(i);
  }
  return std::nullopt;
}

/// The datum of a pair: s with α(s) = 1/d on 𝒪 ∩ Δ and trivial elsewhere,
/// B′ = Δₐ ∖ 𝒪, cocycle ω_{G′}.
inline EndoscopicDatum pair_to_datum(const SettingPtr& st, const EllipticPair& p) {
  const RootSystem& rs = *st->rs;
  const std::int64_t d = pair_order(*st, p);
  std::vector<Rational> tor(rs.rank(), Rational(0));
  for (int k : p.orbit)
    if (k > 0) tor[static_cast<std::size_t>(k - 1)] = Rational(1, d);
  EndoscopicDatum out;
  out.setting = st;
  out.s = TorusElement::from_torsion(tor);
  out.cocycle = pair_cocycle(*st, p);
  for (std::size_t k = 0; k <= rs.rank(); ++k)
    if (!std::binary_search(p.orbit.begin(), p.orbit.end(), static_cast<int>(k))) out.b_prime.push_back(rs.node(k));
  sort_canonically(rs, out.b_prime);
  std::string why = datum_violation(out);
  if (!why.empty()) throw InternalError("pair does not define an endoscopic datum: " + why);
  out.normalized = d >= 2 || p.orbit == std::vector<int>{0};
  return out;
}

// ---------------------------------------------------------------------------
// Classification

struct EllipticClass {
  EllipticPair pair;
  EndoscopicDatum datum;
  std::int64_t d = 1;
  std::vector<DiagramComponent> dual_components;  // components of Δₐ ∖ 𝒪
  std::vector<NodePerm> dual_action;              // σ_{G′} on Δₐ, per element
  std::optional<std::size_t> out_size;            // absent for shape Δ
  std::vector<std::size_t> members;               // indices into the pair list
};

struct ClassificationReport {
  std::string type;
  std::string galois;
  std::vector<EllipticPair> pairs;
  std::vector<EllipticClass> classes;
};

inline ClassificationReport classify_elliptic(const SettingPtr& st) {
  ClassificationReport rep;
  rep.type = st->rs->name();
  rep.galois = st->galois->label();
  rep.pairs = enumerate_pairs(*st);
  for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
    bool placed = false;
    for (auto& cls : rep.classes)
      if (pair_equivalent(*st, cls.pair, rep.pairs[i])) {
        cls.members.push_back(i);
        placed = true;
        break;
      }
    if (placed) continue;
    EllipticClass cls;
    cls.pair = rep.pairs[i];
    cls.members = {i};
    rep.classes.push_back(std::move(cls));
  }
  for (auto& cls : rep.classes) {
    cls.datum = pair_to_datum(st, cls.pair);
    cls.d = pair_order(*st, cls.pair);
    std::vector<int> rest;
    for (int k = 0; k <= static_cast<int>(st->rank()); ++k)
      if (!std::binary_search(cls.pair.orbit.begin(), cls.pair.orbit.end(), k)) rest.push_back(k);
    cls.dual_components = subdiagram_components(*st->rs, rest);
    for (int g = 0; g < static_cast<int>(st->order()); ++g) cls.dual_action.push_back(pair_node_action(*st, cls.pair, g));
    if (cls.d >= 2) cls.out_size = out_group(cls.datum).size();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Structural checks on one pair

struct SigmaReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline SigmaReport verify_sigma_structure(const SettingPtr& st, const EllipticPair& p) {
  SigmaReport r;
  const RootSystem& rs = *st->rs;
  EndoscopicDatum d = pair_to_datum(st, p);
  const std::int64_t order = pair_order(*st, p);
  std::vector<Vec> rest = d.b_prime;
  std::vector<Vec> sigma = endoscopic_roots(rs, d.s);
  std::vector<Vec> sigma0;
  bool splits = true;
  for (const Vec& x : rs.roots()) {
    auto c = coordinates_in(rest, x);
    if (!c) continue;
    bool integral = std::all_of(c->begin(), c->end(), [](const Rational& q) { return q.denominator() == 1; });
    if (!integral) continue;
    sigma0.push_back(x);
    bool pos = std::all_of(c->begin(), c->end(), [](const Rational& q) { return sign(q) >= 0; });
    bool neg = std::all_of(c->begin(), c->end(), [](const Rational& q) { return sign(q) <= 0; });
    if (!pos && !neg) splits = false;
  }
  if (!same_root_set(sigma, sigma0)) r.violations.push_back("roots trivial on s differ from the span of the complement");
  if (!splits) r.violations.push_back("span of the complement does not split into positive and negative parts");

  if (order >= 2) {
    std::vector<Vec> level;
    for (const Vec& x : rs.roots())
      if (d.s.value(x).torsion == Rational(1, order)) level.push_back(x);
    std::vector<Vec> mins;
    for (const Vec& a : level) {
      bool minimal = true;
      for (const Vec& b : level)
        if (b != a && detail::below(rest, b, a)) minimal = false;
      if (minimal) mins.push_back(a);
    }
    std::vector<Vec> orbit_roots;
    for (int k : p.orbit) orbit_roots.push_back(rs.node(static_cast<std::size_t>(k)));
    if (!same_root_set(mins, orbit_roots)) r.violations.push_back("minimal roots of the first layer differ from the orbit");
  }

  auto [nd, ld] = langlands_normalize(d);
  if (ld.order != order) r.violations.push_back("recovered order differs from the sum of marks");
  auto upper = ld.nonempty_upper_layers();
  if (order == 1) {
    if (ld.shape != Shape::Delta) r.violations.push_back("order-1 pair does not normalize to shape Delta");
    if (!upper.empty()) r.violations.push_back("order-1 pair has nonempty upper layers");
    if (!is_elliptic(d)) r.violations.push_back("datum is not elliptic");
    return r;
  }
  if (ld.shape != Shape::DeltaA) r.violations.push_back("pair does not normalize to shape DeltaA");
  if (upper != std::vector<std::int64_t>{1}) r.violations.push_back("nonempty upper layers are not exactly {1}");
  std::vector<Vec> orbit_roots;
  for (int k : p.orbit) orbit_roots.push_back(rs.node(static_cast<std::size_t>(k)));
  if (ld.minimal.size() < 2 || !same_root_set(map_roots(ld.u.inverse(), ld.minimal[1]), orbit_roots))
    r.violations.push_back("first minimal layer differs from the orbit");
  // Round trip: the normalized cocycle reproduces ω_{G′} up to Ω-conjugacy.
  EllipticPair back;
  for (const LatticeMap& w : nd.cocycle) back.omega.push_back(omega_index(*st, w));
  for (const Vec& x : ld.minimal[1]) back.orbit.push_back(static_cast<int>(*rs.node_of(x)));
  std::sort(back.orbit.begin(), back.orbit.end());
  if (!pair_equivalent(*st, p, back)) r.violations.push_back("normalization does not recover the pair");
  if (!is_elliptic(d)) r.violations.push_back("datum is not elliptic");
  for (int g = 0; g < static_cast<int>(st->order()); ++g) {
    NodePerm a = pair_node_action(*st, p, g);
    for (std::size_t k = 0; k < a.size(); ++k)
      if (rs.marks()[k] != rs.marks()[static_cast<std::size_t>(a[k])]) {
        r.violations.push_back("Galois action does not preserve marks");
        g = static_cast<int>(st->order());
        break;
      }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Brute-force inventory

struct InventoryOptions {
  bool elliptic_only = true;
  bool orbit_representatives = true;  // one s per W-orbit
  bool deduplicate = true;            // keep one datum per equivalence class
  std::size_t group_cap = 100000;     // on |W|
  std::size_t torus_cap = 2000000;    // on the number of torsion points
};

struct Inventory {
  std::vector<EndoscopicDatum> classes;
  std::size_t torsion_points = 0;
  std::size_t data_examined = 0;
};

/// Every torsion point whose order is at most `bound`, sorted.
inline std::vector<TorusElement> torsion_points(std::size_t rank, int bound, std::size_t cap) {
  std::unordered_set<TorusElement, TorusHash> seen;
  std::vector<TorusElement> out;
  double estimate = 0;
  for (int m = 1; m <= bound; ++m) {
    double p = 1;
    for (std::size_t i = 0; i < rank; ++i) p *= m;
    estimate += p;
  }
  if (estimate > static_cast<double>(cap))
    throw CapExceeded("torsion enumeration of " + std::to_string(static_cast<long long>(estimate)) +
                      " points exceeds cap of " + std::to_string(cap));
  for (int m = 1; m <= bound; ++m) {
    std::vector<int> k(rank, 0);
    for (;;) {
      std::vector<Rational> tor;
      for (int x : k) tor.emplace_back(x, m);
      TorusElement s = TorusElement::from_torsion(tor);
      if (seen.insert(s).second) out.push_back(std::move(s));
      std::size_t i = 0;
      while (i < rank && ++k[i] == m) k[i++] = 0;
      if (i == rank) break;
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const TorusElement& a, const TorusElement& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a < b;
  });
  return out;
}

/// Weyl elements w with (wσ_G)·s = s and wσ_G(B′) = B′.
inline std::vector<LatticeMap> compatible_values(const Setting& st, const std::vector<LatticeMap>& weyl, int g,
                                                 const TorusElement& s, const std::vector<Vec>& b_prime) {
  std::vector<LatticeMap> out;
  std::vector<CharacterValue> base;
  for (std::size_t i = 0; i < st.rank(); ++i) base.push_back(s.value(unit_vector(st.rank(), i)));
  for (const LatticeMap& w : weyl) {
    LatticeMap a = w * st.phi.forward[static_cast<std::size_t>(g)];
    bool fixes = true;
    for (std::size_t i = 0; i < st.rank() && fixes; ++i) fixes = s.value(a.image(i)) == base[i];
    if (!fixes) continue;
    if (!same_root_set(map_roots(a, b_prime), b_prime)) continue;
    out.push_back(w);
  }
  return out;
}

/// All finite-order data with s of order at most `bound`, up to
/// equivalence.
inline Inventory brute_force_inventory(const SettingPtr& st, int bound, const InventoryOptions& opt = {}) {
  const RootSystem& rs = *st->rs;
  if (bound < 1) throw InputError("order bound must be positive");
  if (weyl_group_order(rs) > opt.group_cap)
    throw CapExceeded("Weyl group of " + rs.name() + " has " + std::to_string(weyl_group_order(rs)) +
                      " elements, above the cap of " + std::to_string(opt.group_cap));
  std::vector<LatticeMap> weyl = enumerate_weyl_group(rs, opt.group_cap);
  Inventory inv;
  std::vector<TorusElement> points = torsion_points(rs.rank(), bound, opt.torus_cap);
  inv.torsion_points = points.size();
  std::unordered_set<TorusElement, TorusHash> covered;
  const std::vector<int> gens = st->galois->generators();
  for (const TorusElement& s : points) {
    if (opt.orbit_representatives) {
      if (covered.count(s)) continue;
      for (const TorusElement& t : torus_orbit(rs, s).points) covered.insert(t);
    }
    std::vector<Vec> b_prime = default_b_prime(rs, s);
    std::vector<std::vector<LatticeMap>> cand;
    for (int g : gens) cand.push_back(compatible_values(*st, weyl, g, s, b_prime));
    std::size_t first_with_s = inv.classes.size();
    for (Cocycle& c : enumerate_cocycles_from(*st->galois, st->phi, cand, rs.rank())) {
      EndoscopicDatum d;
      d.setting = st;
      d.s = s;
      d.cocycle = std::move(c);
      d.b_prime = b_prime;
      ++inv.data_examined;
      if (opt.elliptic_only && !is_elliptic(d)) continue;
      bool known = false;
      if (!opt.deduplicate) {
        inv.classes.push_back(std::move(d));
        continue;
      }
      std::size_t from = opt.orbit_representatives ? first_with_s : 0;
      for (std::size_t k = from; k < inv.classes.size() && !known; ++k) known = equivalent(inv.classes[k], d).has_value();
      if (!known) inv.classes.push_back(std::move(d));
    }
  }
  return inv;
}

}  // namespace endatlas

#endif  // ENDATLAS_ELLIPTIC_HPP
