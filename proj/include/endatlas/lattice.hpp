#ifndef ENDATLAS_LATTICE_HPP
#define ENDATLAS_LATTICE_HPP

// Exact integer/rational linear algebra on the root lattice.
//
// Every vector is written in the basis of simple roots. Maps are stored as
// square integer matrices whose j-th column is the image of the j-th simple
// root; nothing here ever touches floating point.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "endatlas/error.hpp"

namespace endatlas {

using Vec = std::vector<int>;
using Rational = boost::rational<std::int64_t>;

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vec scaled(const Vec& a, int k) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

inline bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

inline Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 0x1234)) * 0x100000001b3ULL;
    return h;
  }
};

// ---------------------------------------------------------------------------
// Rationals and ℚ/ℤ

/// Reduces a rational into [0, 1).
inline Rational mod_one(const Rational& q) {
  std::int64_t n = q.numerator() % q.denominator();
  if (n < 0) n += q.denominator();
  return Rational(n, q.denominator());
}

/// Parses "p/q", "p" or "-p/q". Rejects zero denominators.
inline Rational parse_fraction(std::string_view text) {
  auto parse_int = [&](std::string_view part) -> std::int64_t {
    if (part.empty()) throw InputError("malformed fraction \"" + std::string(text) + "\"");
    std::size_t pos = 0;
    bool neg = false;
    if (part[0] == '-' || part[0] == '+') {
      neg = part[0] == '-';
      pos = 1;
    }
    if (pos == part.size()) throw InputError("malformed fraction \"" + std::string(text) + "\"");
    std::int64_t value = 0;
    for (; pos < part.size(); ++pos) {
      char c = part[pos];
      if (c < '0' || c > '9') throw InputError("malformed fraction \"" + std::string(text) + "\"");
      value = value * 10 + (c - '0');
      if (value > (std::int64_t{1} << 40)) throw InputError("fraction out of range \"" + std::string(text) + "\"");
    }
    return neg ? -value : value;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in fraction \"" + std::string(text) + "\"");
  return Rational(num, den);
}

inline std::string format_fraction(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// Comparisons of a boost::rational against a bare integer recurse forever
// under C++20 rewritten operators (boost 1.74), so go through the numerator.
inline int sign(const Rational& q) { return q.numerator() > 0 ? 1 : (q.numerator() < 0 ? -1 : 0); }
inline bool is_zero(const Rational& q) { return q.numerator() == 0; }

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

// ---------------------------------------------------------------------------
// LatticeMap

/// An endomorphism of ℤⁿ given by the images of the basis vectors.
class LatticeMap {
 public:
  LatticeMap() = default;

  static LatticeMap identity(std::size_t n) {
    LatticeMap m;
    m.n_ = n;
    m.a_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
  }

  static LatticeMap from_images(std::span<const Vec> images) {
    LatticeMap m;
    m.n_ = images.size();
    m.a_.assign(m.n_ * m.n_, 0);
    for (std::size_t j = 0; j < m.n_; ++j) {
      if (images[j].size() != m.n_) throw InputError("lattice map image has wrong length");
      for (std::size_t i = 0; i < m.n_; ++i) m.a_[i * m.n_ + j] = images[j][i];
    }
    return m;
  }

  /// Permutation matrix sending basis vector i to basis vector perm[i].
  static LatticeMap from_permutation(std::span<const int> perm) {
    LatticeMap m;
    m.n_ = perm.size();
    m.a_.assign(m.n_ * m.n_, 0);
    for (std::size_t j = 0; j < m.n_; ++j) m.a_[static_cast<std::size_t>(perm[j]) * m.n_ + j] = 1;
    return m;
  }

  std::size_t rank() const { return n_; }

  int at(std::size_t row, std::size_t col) const { return a_[row * n_ + col]; }

  Vec image(std::size_t j) const {
    Vec v(n_);
    for (std::size_t i = 0; i < n_; ++i) v[i] = a_[i * n_ + j];
    return v;
  }

  std::vector<Vec> images() const {
    std::vector<Vec> out;
    out.reserve(n_);
    for (std::size_t j = 0; j < n_; ++j) out.push_back(image(j));
    return out;
  }

  Vec apply(const Vec& v) const {
    Vec r(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      int acc = 0;
      for (std::size_t j = 0; j < n_; ++j) acc += a_[i * n_ + j] * v[j];
      r[i] = acc;
    }
    return r;
  }

  /// Composition: (*this) ∘ other.
  LatticeMap operator*(const LatticeMap& other) const {
    LatticeMap r;
    r.n_ = n_;
    r.a_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        int x = a_[i * n_ + k];
        if (x == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) r.a_[i * n_ + j] += x * other.a_[k * n_ + j];
      }
    return r;
  }

  bool is_identity() const { return *this == identity(n_); }

  int trace() const {
    int t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
    return t;
  }

  /// Exact inverse; throws if the map is not invertible over ℤ.
  LatticeMap inverse() const {
    const std::size_t n = n_;
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug[i][j] = a_[i * n + j];
      aug[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && is_zero(aug[piv][col])) ++piv;
      if (piv == n) throw InternalError("lattice map is singular");
      std::swap(aug[piv], aug[col]);
      Rational p = aug[col][col];
      for (auto& x : aug[col]) x /= p;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || is_zero(aug[r][col])) continue;
        Rational f = aug[r][col];
        for (std::size_t c = 0; c < 2 * n; ++c) aug[r][c] -= f * aug[col][c];
      }
    }
    LatticeMap inv;
    inv.n_ = n;
    inv.a_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& q = aug[i][n + j];
        if (q.denominator() != 1) throw InternalError("lattice map is not unimodular");
        inv.a_[i * n + j] = static_cast<int>(q.numerator());
      }
    return inv;
  }

  const std::vector<int>& raw() const { return a_; }

  friend bool operator==(const LatticeMap&, const LatticeMap&) = default;
  friend auto operator<=>(const LatticeMap& x, const LatticeMap& y) {
    if (auto c = x.n_ <=> y.n_; c != 0) return c;
    return x.a_ <=> y.a_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<int> a_;
};

struct LatticeMapHash {
  std::size_t operator()(const LatticeMap& m) const noexcept { return VecHash{}(m.raw()); }
};

// ---------------------------------------------------------------------------
// Sub-lattices of ℤⁿ in Hermite normal form

/// A sub-lattice of ℤⁿ kept in row-style Hermite normal form, supporting
/// incremental generators and membership tests.
class IntLattice {
 public:
  explicit IntLattice(std::size_t n) : n_(n) {}

  void add(Vec v) {
    if (contains(v)) return;
    rows_.push_back(std::move(v));
    normalize();
  }

  bool contains(Vec v) const {
    for (const Vec& r : rows_) {
      std::size_t p = pivot(r);
      for (std::size_t c = 0; c < p; ++c)
        if (v[c] != 0) return false;
      if (v[p] % r[p] != 0) return false;
      int q = v[p] / r[p];
      for (std::size_t i = 0; i < n_; ++i) v[i] -= q * r[i];
    }
    return is_zero(v);
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }

 private:
  static std::size_t pivot(const Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return i;
    return v.size();
  }

  // Full recomputation of the echelon basis by extended Euclid on columns.
  void normalize() {
    std::vector<Vec> m = rows_;
    std::vector<Vec> out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n_ && row < m.size(); ++col) {
      for (;;) {
        std::size_t best = m.size();
        for (std::size_t r = row; r < m.size(); ++r)
          if (m[r][col] != 0 && (best == m.size() || std::abs(m[r][col]) < std::abs(m[best][col]))) best = r;
        if (best == m.size()) break;
        std::swap(m[row], m[best]);
        bool done = true;
        for (std::size_t r = row + 1; r < m.size(); ++r) {
          if (m[r][col] == 0) continue;
          int q = m[r][col] / m[row][col];
          for (std::size_t i = 0; i < n_; ++i) m[r][i] -= q * m[row][i];
          if (m[r][col] != 0) done = false;
        }
        if (done) break;
      }
      if (m[row][col] == 0) continue;
      if (m[row][col] < 0)
        for (int& x : m[row]) x = -x;
      for (std::size_t r = 0; r < row; ++r) {
        int q = m[r][col] / m[row][col];
        if (m[r][col] - q * m[row][col] < 0) --q;
        for (std::size_t i = 0; i < n_; ++i) m[r][i] -= q * m[row][i];
      }
      ++row;
    }
    m.resize(row);
    rows_ = std::move(m);
  }

  std::size_t n_;
  std::vector<Vec> rows_;
};

// ---------------------------------------------------------------------------
// Rational linear systems

/// Coordinates of v in the span of the (linearly independent) basis, or
/// nullopt when v lies outside the ℚ-span.
inline std::optional<std::vector<Rational>> coordinates_in(std::span<const Vec> basis, const Vec& v) {
  const std::size_t k = basis.size();
  const std::size_t n = v.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = basis[j][i];
    m[i][k] = v[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && is_zero(m[piv][col])) ++piv;
    if (piv == n) continue;
    std::swap(m[piv], m[row]);
    Rational p = m[row][col];
    for (auto& x : m[row]) x /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || is_zero(m[r][col])) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c <= k; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < n; ++r)
    if (!is_zero(m[r][k])) return std::nullopt;
  std::vector<Rational> out(k, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) out[pivots[r]] = m[r][k];
  return out;
}

/// Rank of a family of integer vectors.
inline std::size_t rank_of(std::span<const Vec> vectors) {
  if (vectors.empty()) return 0;
  const std::size_t n = vectors.front().size();
  std::vector<std::vector<Rational>> m;
  for (const Vec& v : vectors) m.emplace_back(v.begin(), v.end());
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && is_zero(m[piv][col])) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      if (is_zero(m[r][col])) continue;
      Rational f = m[r][col] / m[row][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
  }
  return row;
}

inline bool linearly_independent(std::span<const Vec> vectors) { return rank_of(vectors) == vectors.size(); }

}  // namespace endatlas

#endif  // ENDATLAS_LATTICE_HPP
