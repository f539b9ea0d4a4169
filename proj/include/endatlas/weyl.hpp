#ifndef ENDATLAS_WEYL_HPP
#define ENDATLAS_WEYL_HPP

// Weyl group elements as lattice maps, chamber descent between bases, the
// Weyl/diagram factorization of root-system automorphisms, and the group Ω of
// Weyl elements preserving the completed diagram.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "endatlas/error.hpp"
#include "endatlas/lattice.hpp"
#include "endatlas/rootsys.hpp"

namespace endatlas {

/// A node permutation: perm[i] is the image of node i.
using NodePerm = std::vector<int>;

inline NodePerm identity_perm(std::size_t n) {
  NodePerm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  return p;
}

inline bool is_identity_perm(const NodePerm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

/// (a ∘ b)[i] = a[b[i]].
inline NodePerm compose_perm(const NodePerm& a, const NodePerm& b) {
  NodePerm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

inline NodePerm inverse_perm(const NodePerm& p) {
  NodePerm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

/// Set equality of two root lists.
inline bool same_root_set(std::vector<Vec> a, std::vector<Vec> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline std::vector<Vec> map_roots(const LatticeMap& m, std::span<const Vec> roots) {
  std::vector<Vec> out;
  out.reserve(roots.size());
  for (const Vec& r : roots) out.push_back(m.apply(r));
  return out;
}

// ---------------------------------------------------------------------------
// Bases

/// True iff `base` is a base of the root subset `roots`: linearly
/// independent, contained in it, and every element of `roots` is a
/// non-negative or non-positive combination of it.
inline bool is_base_of(std::span<const Vec> roots, std::span<const Vec> base) {
  if (!linearly_independent(base)) return false;
  std::size_t members = 0;
  for (const Vec& r : roots) {
    auto c = coordinates_in(base, r);
    if (!c) return false;
    bool pos = true, neg = true;
    for (const Rational& x : *c) {
      if (x.denominator() != 1) return false;
      if (sign(x) < 0) pos = false;
      if (sign(x) > 0) neg = false;
    }
    if (!pos && !neg) return false;
    if (std::find(base.begin(), base.end(), r) != base.end()) ++members;
  }
  return members == base.size();
}

inline bool is_base(const RootSystem& rs, std::span<const Vec> base) {
  return base.size() == rs.rank() && is_base_of(rs.roots(), base);
}

/// Roots of `roots` that are non-negative combinations of `base`.
inline std::vector<Vec> positive_part(std::span<const Vec> roots, std::span<const Vec> base) {
  std::vector<Vec> out;
  for (const Vec& r : roots) {
    auto c = coordinates_in(base, r);
    if (c && std::all_of(c->begin(), c->end(), [](const Rational& x) { return sign(x) >= 0; })) out.push_back(r);
  }
  return out;
}

namespace detail {

inline bool in_positive_cone(std::span<const Vec> base, const Vec& v) {
  auto c = coordinates_in(base, v);
  return c && std::all_of(c->begin(), c->end(), [](const Rational& x) { return sign(x) >= 0; });
}

}  // namespace detail

/// Chamber descent: the Weyl element w with w(source) = target as sets, built
/// from reflections in target roots. Both lists must be bases of the same
/// root subsystem; returns nullopt when the descent ends on a different set.
inline std::optional<LatticeMap> transport_within(const RootSystem& rs, std::span<const Vec> source,
                                                  std::span<const Vec> target) {
  if (source.size() != target.size()) return std::nullopt;
  std::vector<Vec> cur(source.begin(), source.end());
  LatticeMap w = LatticeMap::identity(rs.rank());
  const std::size_t limit = rs.roots().size() + 1;
  for (std::size_t step = 0;; ++step) {
    if (step > limit) throw InternalError("chamber descent did not terminate");
    const Vec* bad = nullptr;
    for (const Vec& g : target)
      if (!detail::in_positive_cone(cur, g)) {
        bad = &g;
        break;
      }
    if (!bad) break;
    LatticeMap r = rs.reflection(*bad);
    w = r * w;
    cur = map_roots(r, cur);
  }
  if (!same_root_set(cur, std::vector<Vec>(target.begin(), target.end()))) return std::nullopt;
  return w;
}

/// The unique w ∈ W with w(source) = target, for two bases of the full root
/// system.
inline std::optional<LatticeMap> find_base_transport(const RootSystem& rs, std::span<const Vec> source,
                                                     std::span<const Vec> target) {
  if (!is_base(rs, source)) throw InputError("source root set is not a base");
  if (!is_base(rs, target)) throw InputError("target root set is not a base");
  return transport_within(rs, source, target);
}

// ---------------------------------------------------------------------------
// Weyl part and diagram part

struct WeylFactorization {
  LatticeMap weyl;  // w
  NodePerm diagram; // δ on simple-root indices; map = w ∘ δ
};

/// Splits a root-system automorphism as w ∘ δ with w ∈ W and δ preserving Δ.
inline WeylFactorization weyl_membership(const RootSystem& rs, const LatticeMap& map) {
  if (!rs.permutes_roots(map)) throw InputError("lattice map does not permute the roots");
  std::vector<Vec> image = map.images();
  std::vector<Vec> simple = rs.simple_roots();
  auto u = transport_within(rs, image, simple);
  if (!u) throw InternalError("image of a base is not a base");
  LatticeMap delta = *u * map;
  NodePerm perm(rs.rank(), -1);
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    Vec img = delta.image(i);
    for (std::size_t j = 0; j < rs.rank(); ++j)
      if (img == simple[j]) perm[i] = static_cast<int>(j);
    if (perm[i] < 0) throw InternalError("residual diagram part does not preserve the base");
  }
  return {u->inverse(), perm};
}

inline bool is_weyl_element(const RootSystem& rs, const LatticeMap& map) {
  return is_identity_perm(weyl_membership(rs, map).diagram);
}

// ---------------------------------------------------------------------------
// Diagram automorphisms

namespace detail {

inline void extend_automorphism(const std::vector<std::vector<int>>& c, const std::vector<int>& label, NodePerm& p,
                                std::vector<bool>& used, std::size_t i, std::vector<NodePerm>& out) {
  const std::size_t n = c.size();
  if (i == n) {
    out.push_back(p);
    return;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j] || label[j] != label[i]) continue;
    bool ok = true;
    for (std::size_t k = 0; k < i && ok; ++k) {
      auto pk = static_cast<std::size_t>(p[k]);
      ok = c[i][k] == c[j][pk] && c[k][i] == c[pk][j];
    }
    if (!ok) continue;
    used[j] = true;
    p[i] = static_cast<int>(j);
    extend_automorphism(c, label, p, used, i + 1, out);
    used[j] = false;
  }
}

inline std::vector<NodePerm> matrix_automorphisms(const std::vector<std::vector<int>>& c, const std::vector<int>& label) {
  std::vector<NodePerm> out;
  NodePerm p(c.size(), -1);
  std::vector<bool> used(c.size(), false);
  extend_automorphism(c, label, p, used, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Aut(𝒟): permutations of the simple roots preserving the Cartan matrix.
inline std::vector<NodePerm> diagram_automorphisms(const RootSystem& rs) {
  return detail::matrix_automorphisms(rs.cartan_matrix(), std::vector<int>(rs.rank(), 0));
}

/// Aut(𝒟ₐ): permutations of the completed diagram preserving bonds, arrows
/// and marks.
inline std::vector<NodePerm> affine_automorphisms(const RootSystem& rs) {
  const AffineDiagram& a = rs.affine();
  return detail::matrix_automorphisms(a.cartan, a.marks);
}

/// Linear map of the root lattice induced by a permutation of the completed
/// diagram: α_i ↦ node perm[i].
inline LatticeMap affine_perm_map(const RootSystem& rs, const NodePerm& perm) {
  std::vector<Vec> images;
  for (std::size_t i = 1; i < perm.size(); ++i) images.push_back(rs.node(static_cast<std::size_t>(perm[i])));
  return LatticeMap::from_images(images);
}

/// Linear map induced by a permutation of the simple roots.
inline LatticeMap diagram_map(const NodePerm& perm) { return LatticeMap::from_permutation(perm); }

/// Extends a permutation of Δ to Δₐ by fixing α₀.
inline NodePerm extend_to_affine(const NodePerm& perm) {
  NodePerm r{0};
  for (int x : perm) r.push_back(x + 1);
  return r;
}

/// Node permutation of Δₐ realized by a lattice map that preserves Δₐ, or
/// nullopt.
inline std::optional<NodePerm> affine_perm_of(const RootSystem& rs, const LatticeMap& m) {
  const AffineDiagram& a = rs.affine();
  NodePerm p(a.size(), -1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    auto j = rs.node_of(m.apply(a.nodes[k]));
    if (!j) return std::nullopt;
    p[k] = static_cast<int>(*j);
  }
  return p;
}

struct OmegaElement {
  NodePerm perm;  // permutation of Δₐ
  LatticeMap map; // the same element as a Weyl group element

  int lowest_image() const { return perm[0]; }
};

/// Ω: Weyl elements preserving Δₐ, ordered by the image of α₀ (identity
/// first). Each candidate diagram automorphism is tested for membership in W.
inline std::vector<OmegaElement> omega_group(const RootSystem& rs) {
  std::vector<OmegaElement> out;
  for (const NodePerm& p : affine_automorphisms(rs)) {
    LatticeMap m = affine_perm_map(rs, p);
    if (is_weyl_element(rs, m)) out.push_back({p, m});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.perm[0] < y.perm[0]; });
  const auto& marks = rs.marks();
  std::size_t mark_one = static_cast<std::size_t>(std::count(marks.begin(), marks.end(), 1));
  if (out.size() != mark_one) throw InternalError("Ω is not in bijection with the mark-1 nodes");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (marks[static_cast<std::size_t>(out[i].perm[0])] != 1) throw InternalError("Ω moves α₀ off a mark-1 node");
    if (i && out[i].perm[0] == out[i - 1].perm[0]) throw InternalError("Ω is not injective on α₀");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whole-group enumeration (small ranks and oracles only)

inline constexpr std::size_t default_group_cap = 1000000;

/// All elements of W as lattice maps, in breadth-first order from the
/// identity.
inline std::vector<LatticeMap> enumerate_weyl_group(const RootSystem& rs, std::size_t cap = default_group_cap) {
  std::vector<LatticeMap> out{LatticeMap::identity(rs.rank())};
  std::unordered_set<LatticeMap, LatticeMapHash> seen{out.front()};
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      LatticeMap next = rs.simple_reflection(i) * out[k];
      if (seen.insert(next).second) {
        if (out.size() >= cap) throw CapExceeded("Weyl group enumeration exceeded cap of " + std::to_string(cap));
        out.push_back(std::move(next));
      }
    }
  return out;
}

/// Order of W from the classical formulas (product of factors).
inline unsigned long long weyl_group_order(const RootSystem& rs) {
  unsigned long long total = 1;
  for (const CartanType& t : rs.components()) {
    unsigned long long n = static_cast<unsigned long long>(t.rank), f = 1;
    switch (t.family) {
      case 'A':
        for (unsigned long long i = 2; i <= n + 1; ++i) f *= i;
        break;
      case 'B':
      case 'C':
        for (unsigned long long i = 2; i <= n; ++i) f *= i;
        f <<= n;
        break;
      case 'D':
        for (unsigned long long i = 2; i <= n; ++i) f *= i;
        f <<= (n - 1);
        break;
      case 'E':
        f = n == 6 ? 51840ULL : n == 7 ? 2903040ULL : 696729600ULL;
        break;
      case 'F':
        f = 1152;
        break;
      case 'G':
        f = 12;
        break;
    }
    total *= f;
  }
  return total;
}

}  // namespace endatlas

#endif  // ENDATLAS_WEYL_HPP
