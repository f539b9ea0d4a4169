#ifndef ENDATLAS_REDUCTION_HPP
#define ENDATLAS_REDUCTION_HPP

// Replacing an element s of the dual torus that has free parts by a
// finite-order t with the same fixers among torus automorphisms, so that
// two data sharing s can be compared through their finite-order versions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "endatlas/endodata.hpp"
#include "endatlas/error.hpp"
#include "endatlas/lattice.hpp"
#include "endatlas/rootsys.hpp"
#include "endatlas/torus.hpp"
#include "endatlas/weyl.hpp"

namespace endatlas {

struct ReductionPlan {
  bool bypass = false;                           // s already of finite order
  LatticeMap frame;                              // u with u(Π) = Σ⁺, Π ⊂ Σ^P a positive system
  std::vector<std::vector<Rational>> r_basis;    // basis of the free-part group R
  // Root sets below live in the standard frame (after applying `frame`).
  std::vector<Vec> sigma_p;
  std::vector<Vec> sigma_m;
  std::vector<int> levi_simple;                  // Δ^M, simple-root indices
  std::vector<int> other_simple;                 // Δ_M
  std::vector<std::vector<int>> classes;         // Δ_1, ..., Δ_m in order
  std::vector<int> representatives;              // δ_i, first of each class
  std::int64_t b = 1;
  std::int64_t c = 0;
  std::int64_t d = 1;
  TorusElement t;                                // in the original frame
  TorusElement t_frame;                          // in the standard frame
  std::vector<Vec> s_levi;                       // S^M
  std::vector<Vec> s_upper;                      // S^U
  std::vector<Vec> s_lower;                      // S^Ū
};

namespace detail {

/// Sign of the first nonzero coordinate.
inline int lex_sign(const std::vector<Rational>& v) {
  for (const Rational& x : v)
    if (int s = sign(x)) return s;
  return 0;
}

/// d(α_i): coefficient of α_i in the highest root of its component.
inline std::vector<int> simple_marks(const RootSystem& rs) {
  std::vector<int> out(rs.rank(), 0);
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    int best = -1;
    for (std::size_t k = 0; k < rs.num_positive(); ++k) {
      const Vec& r = rs.roots()[k];
      if (r[i] > 0 && RootSystem::height(r) > best) {
        best = RootSystem::height(r);
        out[i] = r[i];
      }
    }
  }
  return out;
}

inline std::vector<std::vector<Rational>> free_basis(const RootSystem& rs, const TorusElement& s) {
  const std::size_t m = s.free_rank();
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < rs.rank(); ++i)
    for (const Rational& q : s.free(i)) scale = lcm64(scale, q.denominator());
  IntLattice lat(m);
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    Vec v(m);
    for (std::size_t k = 0; k < m; ++k) {
      Rational x = s.free(i)[k] * scale;
      v[k] = static_cast<int>(x.numerator());
    }
    if (!is_zero(v)) lat.add(v);
  }
  std::vector<std::vector<Rational>> out;
  for (const Vec& row : lat.basis()) {
    std::vector<Rational> r;
    for (int x : row) r.emplace_back(x, scale);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::int64_t mod_pos(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace detail

/// Builds the plan for s (the same for both data).
inline ReductionPlan build_reduction_plan(const RootSystem& rs, const TorusElement& s) {
  ReductionPlan p;
  p.frame = LatticeMap::identity(rs.rank());
  p.t = s;
  p.t_frame = s;
  if (s.is_finite()) {
    p.bypass = true;
    return p;
  }
  p.r_basis = detail::free_basis(rs, s);

  // A positive system inside Σ^P: order by the free part first.
  std::vector<Vec> pi;
  for (const Vec& r : rs.roots()) {
    int f = detail::lex_sign(s.value(r).free);
    if (f > 0 || (f == 0 && rs.is_positive(r))) pi.push_back(r);
  }
  std::vector<Vec> base = indecomposables(pi);
  auto u = find_base_transport(rs, base, rs.simple_roots());
  if (!u) throw InternalError("positive system adapted to s has no transport to the standard base");
  p.frame = *u;
  const TorusElement sf = torus_action(*u, s);

  for (const Vec& r : rs.roots()) {
    CharacterValue v = sf.value(r);
    int f = detail::lex_sign(v.free);
    if (f == 0 && v.free_is_zero()) p.sigma_m.push_back(r);
    if (f >= 0) p.sigma_p.push_back(r);
  }

  std::vector<std::vector<Rational>> class_free;
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    const std::vector<Rational>& f = sf.free(i);
    bool zero = std::all_of(f.begin(), f.end(), [](const Rational& q) { return is_zero(q); });
    if (zero) {
      p.levi_simple.push_back(static_cast<int>(i));
      continue;
    }
    p.other_simple.push_back(static_cast<int>(i));
    auto it = std::find(class_free.begin(), class_free.end(), f);
    if (it == class_free.end()) {
      class_free.push_back(f);
      p.classes.push_back({static_cast<int>(i)});
      p.representatives.push_back(static_cast<int>(i));
    } else {
      p.classes[static_cast<std::size_t>(it - class_free.begin())].push_back(static_cast<int>(i));
    }
  }

  // Minimal b for both conditions.
  std::int64_t b = 1;
  std::vector<CharacterValue> vals;
  for (const Vec& r : rs.roots()) vals.push_back(sf.value(r));
  for (std::size_t a = 0; a < vals.size(); ++a) {
    if (vals[a].free_is_zero()) b = lcm64(b, vals[a].torsion.denominator());
    for (std::size_t k = a + 1; k < vals.size(); ++k)
      if (vals[a].free == vals[k].free) b = lcm64(b, mod_one(vals[a].torsion - vals[k].torsion).denominator());
  }
  p.b = b;
  const std::vector<int> marks = detail::simple_marks(rs);
  std::int64_t c = 0;
  for (std::size_t i = 0; i < p.classes.size(); ++i)
    for (int a : p.classes[i]) c += static_cast<std::int64_t>(i + 1) * marks[static_cast<std::size_t>(a)];
  p.c = c;
  p.d = 3 * c * b;

  std::vector<Rational> tor(rs.rank(), Rational(0));
  for (int a : p.levi_simple) tor[static_cast<std::size_t>(a)] = sf.torsion(static_cast<std::size_t>(a));
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    const Rational& ref = sf.torsion(static_cast<std::size_t>(p.representatives[i]));
    for (int a : p.classes[i])
      tor[static_cast<std::size_t>(a)] =
          Rational(static_cast<std::int64_t>(i + 1), p.d) + sf.torsion(static_cast<std::size_t>(a)) - ref;
  }
  p.t_frame = TorusElement::from_torsion(tor);
  p.t = torus_action(u->inverse(), p.t_frame);

  const std::int64_t period = 3 * c;
  for (const Vec& r : rs.roots()) {
    Rational q = p.t_frame.value(r).torsion * p.d;
    if (q.denominator() != 1) throw InternalError("t is not of order dividing d");
    std::int64_t k = detail::mod_pos(q.numerator(), period);
    if (k == 0)
      p.s_levi.push_back(r);
    else if (k <= c)
      p.s_upper.push_back(r);
    else if (k >= 2 * c)
      p.s_lower.push_back(r);
  }
  return p;
}

struct Reduction {
  EndoscopicDatum first;
  EndoscopicDatum second;
  ReductionPlan plan;
};

/// Replaces s by t in both data; cocycles and B′ are unchanged.
inline Reduction finite_order_reduction(const EndoscopicDatum& d1, const EndoscopicDatum& d2) {
  detail::require_same_setting(d1, d2);
  if (!(d1.s == d2.s)) throw InputError("finite-order reduction needs both data to share the same s");
  Reduction out{d1, d2, build_reduction_plan(d1.rs(), d1.s)};
  if (out.plan.bypass) return out;
  out.first.s = out.plan.t;
  out.second.s = out.plan.t;
  out.first.normalized = out.second.normalized = false;
  for (const EndoscopicDatum* d : {&out.first, &out.second}) {
    std::string why = datum_violation(*d);
    if (!why.empty()) throw InternalError("reduced datum is invalid: " + why);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certification

/// The automorphisms used to test fixers: all of W ⋊ Aut(𝒟) when small,
/// otherwise a fixed-seed sample plus the stabilizer of (s, B′).
inline std::vector<LatticeMap> automorphism_family(const RootSystem& rs, const TorusElement& s,
                                                   const std::vector<Vec>& b_prime, std::size_t exhaustive_cap = 20000,
                                                   std::size_t samples = 400) {
  std::vector<NodePerm> diag = diagram_automorphisms(rs);
  std::vector<LatticeMap> out;
  if (weyl_group_order(rs) * diag.size() <= exhaustive_cap) {
    for (const LatticeMap& w : enumerate_weyl_group(rs, exhaustive_cap))
      for (const NodePerm& p : diag) out.push_back(w * diagram_map(p));
    return out;
  }
  std::mt19937 rng(20240607u);
  std::uniform_int_distribution<std::size_t> pick_simple(0, rs.rank() - 1);
  std::uniform_int_distribution<std::size_t> pick_diag(0, diag.size() - 1);
  for (std::size_t k = 0; k < samples; ++k) {
    LatticeMap w = LatticeMap::identity(rs.rank());
    for (int step = 0; step < 24; ++step) w = rs.simple_reflection(pick_simple(rng)) * w;
    out.push_back(w * diagram_map(diag[pick_diag(rng)]));
  }
  for (const LatticeMap& h : stabilizer_of_base(rs, s, b_prime)) out.push_back(h);
  return out;
}

struct PlanCertificate {
  std::size_t automorphisms_tested = 0;
  std::size_t fixers = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline PlanCertificate certify_plan(const RootSystem& rs, const TorusElement& s, const ReductionPlan& p,
                                    const std::vector<LatticeMap>& family) {
  PlanCertificate cert;
  if (p.bypass) {
    if (!(p.t == s)) cert.violations.push_back("bypass plan changed s");
    return cert;
  }
  if (!p.t.is_finite()) cert.violations.push_back("t has free parts");
  else if (p.d % p.t.order() != 0) cert.violations.push_back("order of t does not divide d");
  if (p.r_basis.size() > s.free_rank()) cert.violations.push_back("basis of R is too long");

  const TorusElement sf = torus_action(p.frame, s);
  // The two conditions on b.
  for (const Vec& a : rs.roots()) {
    CharacterValue va = sf.value(a);
    if (va.free_is_zero() && (va.torsion * p.b).denominator() != 1)
      cert.violations.push_back("b does not kill a root of the Levi part");
    for (const Vec& bb : rs.roots()) {
      CharacterValue vb = sf.value(bb);
      if (va.free == vb.free && ((va.torsion - vb.torsion) * p.b).denominator() != 1) {
        cert.violations.push_back("b does not equalize roots with the same free part");
        break;
      }
    }
  }
  // Σ^P ∪ −(Σ^P ∖ Σ^M) = Σ.
  {
    std::vector<Vec> all = p.sigma_p;
    for (const Vec& a : p.sigma_p)
      if (std::find(p.sigma_m.begin(), p.sigma_m.end(), a) == p.sigma_m.end()) all.push_back(-a);
    if (!same_root_set(all, rs.roots())) cert.violations.push_back("Sigma^P and its negatives do not cover the roots");
    for (std::size_t k = 0; k < rs.num_positive(); ++k)
      if (std::find(p.sigma_p.begin(), p.sigma_p.end(), rs.roots()[k]) == p.sigma_p.end()) {
        cert.violations.push_back("standard positive roots are not inside Sigma^P");
        break;
      }
  }
  // Inclusions and disjointness of the three residue sets.
  auto contains = [](const std::vector<Vec>& set, const Vec& v) {
    return std::find(set.begin(), set.end(), v) != set.end();
  };
  for (const Vec& a : rs.roots()) {
    int hits = contains(p.s_levi, a) + contains(p.s_upper, a) + contains(p.s_lower, a);
    if (hits > 1) cert.violations.push_back("residue sets overlap");
    bool in_m = contains(p.sigma_m, a), in_p = contains(p.sigma_p, a);
    if (in_m && !contains(p.s_levi, a)) cert.violations.push_back("a Levi root lies outside S^M");
    if (in_p && !in_m && !contains(p.s_upper, a)) cert.violations.push_back("a root of the unipotent part lies outside S^U");
    if (!in_p && !contains(p.s_lower, a)) cert.violations.push_back("a negative root lies outside S^Ubar");
  }

  // Fixers of s and t agree; fixers preserve the layers and the classes.
  LatticeMap uinv = p.frame.inverse();
  for (const LatticeMap& a : family) {
    ++cert.automorphisms_tested;
    bool fs = torus_action(a, s) == s;
    bool ft = torus_action(a, p.t) == p.t;
    if (fs != ft) {
      cert.violations.push_back("an automorphism fixes exactly one of s and t");
      continue;
    }
    if (!fs) continue;
    ++cert.fixers;
    LatticeMap af = p.frame * a * uinv;
    if (!same_root_set(map_roots(af, p.sigma_p), p.sigma_p) || !same_root_set(map_roots(af, p.sigma_m), p.sigma_m))
      cert.violations.push_back("a fixer does not preserve Sigma^P and Sigma^M");
    NodePerm v = weyl_membership(rs, af).diagram;
    for (const auto& cls : p.classes) {
      std::vector<int> img;
      for (int i : cls) img.push_back(v[static_cast<std::size_t>(i)]);
      std::sort(img.begin(), img.end());
      if (img != cls) {
        cert.violations.push_back("the diagram part of a fixer moves a class");
        break;
      }
    }
  }
  return cert;
}

struct ReductionVerdict {
  bool before = false;
  bool after = false;
  bool agree() const { return before == after; }
};

inline ReductionVerdict reduction_equivalence_verdicts(const EndoscopicDatum& d1, const EndoscopicDatum& d2) {
  Reduction r = finite_order_reduction(d1, d2);
  return {equivalent(d1, d2).has_value(), equivalent(r.first, r.second).has_value()};
}

inline bool reduction_preserves_equivalence(const EndoscopicDatum& d1, const EndoscopicDatum& d2) {
  return reduction_equivalence_verdicts(d1, d2).agree();
}

// ---------------------------------------------------------------------------
// Random data with free parts

/// A random s with `free_rank` free generators: small torsion, and free
/// parts in {-1, 0, 1} with many zero or repeated rows so that Levi parts
/// and coinciding classes occur.
template <class Rng>
TorusElement random_torus_element(std::size_t rank, std::size_t free_rank, Rng& rng) {
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> coin(0, 9);
  std::uniform_int_distribution<int> entry(-1, 1);
  std::vector<Rational> tor;
  std::vector<std::vector<Rational>> fr(rank);
  std::vector<Rational> shared(free_rank, Rational(0));
  for (auto& x : shared) x = Rational(entry(rng));
  for (std::size_t i = 0; i < rank; ++i) {
    int n = den(rng);
    tor.emplace_back(std::uniform_int_distribution<int>(0, n - 1)(rng), n);
    int mode = coin(rng);
    for (std::size_t k = 0; k < free_rank; ++k) {
      if (mode < 4) fr[i].push_back(Rational(0));
      else if (mode < 6) fr[i].push_back(shared[k]);
      else fr[i].push_back(Rational(entry(rng)));
    }
  }
  // About one element in ten stays of finite order; the rest get a nonzero
  // free part somewhere.
  if (free_rank > 0 && coin(rng) != 0) {
    bool zero = true;
    for (const auto& row : fr)
      for (const Rational& q : row) zero = zero && is_zero(q);
    if (zero) fr[std::uniform_int_distribution<std::size_t>(0, rank - 1)(rng)][0] = Rational(coin(rng) < 5 ? 1 : -1);
  }
  return TorusElement::from_parts(tor, fr);
}

/// All cocycles compatible with s and its default B′.
inline std::vector<Cocycle> compatible_cocycles(const Setting& st, const TorusElement& s,
                                                const std::vector<Vec>& b_prime,
                                                const std::vector<LatticeMap>& weyl) {
  std::vector<std::vector<LatticeMap>> cand;
  for (int g : st.galois->generators()) {
    std::vector<LatticeMap> vals;
    for (const LatticeMap& w : weyl) {
      LatticeMap a = w * st.phi.forward[static_cast<std::size_t>(g)];
      if (!(torus_action(a, s) == s)) continue;
      if (!same_root_set(map_roots(a, b_prime), b_prime)) continue;
      vals.push_back(w);
    }
    cand.push_back(std::move(vals));
  }
  return enumerate_cocycles_from(*st.galois, st.phi, cand, st.rank());
}

}  // namespace endatlas

#endif  // ENDATLAS_REDUCTION_HPP
