#ifndef ENDATLAS_TORUS_HPP
#define ENDATLAS_TORUS_HPP

// Elements of the dual torus, written additively: for each simple root the
// value α(s) is a torsion part in ℚ/ℤ (ζ_n ↔ 1/n) plus a free part in ℚ^m
// over a fixed list of multiplicatively independent generators.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "endatlas/error.hpp"
#include "endatlas/lattice.hpp"

namespace endatlas {

/// α(s) for one character α.
struct CharacterValue {
  Rational torsion;             // in [0, 1)
  std::vector<Rational> free;   // exponents over the free generators

  bool free_is_zero() const {
    for (const auto& x : free)
      if (!is_zero(x)) return false;
    return true;
  }
  bool is_trivial() const { return is_zero(torsion) && free_is_zero(); }

  friend bool operator==(const CharacterValue&, const CharacterValue&) = default;
};

class TorusElement {
 public:
  TorusElement() = default;

  /// The identity element on a lattice of rank n with m free generators.
  explicit TorusElement(std::size_t n, std::size_t m = 0)
      : torsion_(n, Rational(0)), free_(n, std::vector<Rational>(m, Rational(0))), m_(m) {}

  static TorusElement from_torsion(const std::vector<Rational>& torsion) {
    TorusElement s(torsion.size(), 0);
    for (std::size_t i = 0; i < torsion.size(); ++i) s.torsion_[i] = mod_one(torsion[i]);
    return s;
  }

  static TorusElement from_parts(const std::vector<Rational>& torsion, const std::vector<std::vector<Rational>>& free) {
    if (free.size() != torsion.size()) throw InputError("torus element: free part has wrong length");
    std::size_t m = free.empty() ? 0 : free.front().size();
    TorusElement s(torsion.size(), m);
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      if (free[i].size() != m) throw InputError("torus element: free parts of unequal length");
      s.torsion_[i] = mod_one(torsion[i]);
      s.free_[i] = free[i];
    }
    return s;
  }

  std::size_t rank() const { return torsion_.size(); }
  std::size_t free_rank() const { return m_; }

  const Rational& torsion(std::size_t i) const { return torsion_[i]; }
  const std::vector<Rational>& free(std::size_t i) const { return free_[i]; }
  const std::vector<Rational>& torsion_parts() const { return torsion_; }
  const std::vector<std::vector<Rational>>& free_parts() const { return free_; }

  /// α(s) for a character given in the simple-root basis.
  CharacterValue value(const Vec& alpha) const {
    CharacterValue v{Rational(0), std::vector<Rational>(m_, Rational(0))};
    for (std::size_t i = 0; i < rank(); ++i) {
      if (alpha[i] == 0) continue;
      v.torsion += torsion_[i] * alpha[i];
      for (std::size_t k = 0; k < m_; ++k) v.free[k] += free_[i][k] * alpha[i];
    }
    v.torsion = mod_one(v.torsion);
    return v;
  }

  bool is_finite() const {
    for (const auto& f : free_)
      for (const auto& x : f)
        if (!is_zero(x)) return false;
    return true;
  }

  /// Order of a finite-order element: lcm of the torsion denominators.
  std::int64_t order() const {
    if (!is_finite()) throw InputError("torus element has infinite order");
    std::int64_t d = 1;
    for (const auto& q : torsion_) d = lcm64(d, q.denominator());
    return d;
  }

  bool is_identity() const { return is_finite() && order() == 1; }

  /// The same element with all free parts dropped.
  TorusElement torsion_only() const { return from_torsion(torsion_); }

  friend bool operator==(const TorusElement& a, const TorusElement& b) {
    return a.torsion_ == b.torsion_ && a.free_ == b.free_;
  }

  friend bool operator<(const TorusElement& a, const TorusElement& b) {
    if (a.torsion_ != b.torsion_) return a.torsion_ < b.torsion_;
    return a.free_ < b.free_;
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < rank(); ++i) {
      if (i) out += ", ";
      out += format_fraction(torsion_[i]);
      if (m_) {
        out += " + [";
        for (std::size_t k = 0; k < m_; ++k) out += (k ? "," : "") + format_fraction(free_[i][k]);
        out += "]";
      }
    }
    return out + ")";
  }

 private:
  std::vector<Rational> torsion_;
  std::vector<std::vector<Rational>> free_;
  std::size_t m_ = 0;
};

struct TorusHash {
  std::size_t operator()(const TorusElement& s) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    auto mix = [&](std::int64_t x) { h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL; };
    for (std::size_t i = 0; i < s.rank(); ++i) {
      mix(s.torsion(i).numerator());
      mix(s.torsion(i).denominator());
      for (const auto& q : s.free(i)) {
        mix(q.numerator());
        mix(q.denominator());
      }
    }
    return h;
  }
};

/// The element t with t(α_i) = s(pre(α_i)).
inline TorusElement pull_back(const LatticeMap& pre, const TorusElement& s) {
  const std::size_t n = s.rank();
  std::vector<Rational> tor(n, Rational(0));
  std::vector<std::vector<Rational>> fr(n, std::vector<Rational>(s.free_rank(), Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    CharacterValue v = s.value(pre.image(i));
    tor[i] = v.torsion;
    fr[i] = std::move(v.free);
  }
  return TorusElement::from_parts(tor, fr);
}

/// (g·s)(α) = s(g⁻¹α), given g⁻¹.
inline TorusElement torus_action_inv(const LatticeMap& g_inverse, const TorusElement& s) { return pull_back(g_inverse, s); }

/// (g·s)(α) = s(g⁻¹α) for a Weyl element or diagram automorphism g.
inline TorusElement torus_action(const LatticeMap& g, const TorusElement& s) {
  if (g.rank() != s.rank()) throw InputError("torus action: rank mismatch");
  return pull_back(g.inverse(), s);
}

}  // namespace endatlas

#endif  // ENDATLAS_TORUS_HPP
