#ifndef ENDATLAS_ROOTSYS_HPP
#define ENDATLAS_ROOTSYS_HPP

// Root systems of simple Cartan types (and finite products of them) in the
// basis of simple roots, with the completed Dynkin diagram of a simple type.
//
// Node numbering follows Bourbaki. The lowest root is node 0 of the
// completed diagram; simple root α_i is node i (1-based labels), stored at
// vector index i-1.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "endatlas/error.hpp"
#include "endatlas/lattice.hpp"

namespace endatlas {

struct CartanType {
  char family = 'A';
  int rank = 1;

  std::string name() const { return std::string(1, family) + std::to_string(rank); }

  /// Admissibility rule for (family, rank); empty string when admissible.
  static std::string admissibility_violation(char family, int rank) {
    switch (family) {
      case 'A': return rank >= 1 ? "" : "type A needs rank >= 1";
      case 'B': return rank >= 2 ? "" : "type B needs rank >= 2";
      case 'C': return rank >= 2 ? "" : "type C needs rank >= 2";
      case 'D': return rank >= 4 ? "" : "type D needs rank >= 4";
      case 'E': return (rank >= 6 && rank <= 8) ? "" : "type E needs rank 6, 7 or 8";
      case 'F': return rank == 4 ? "" : "type F needs rank 4";
      case 'G': return rank == 2 ? "" : "type G needs rank 2";
      default: return std::string("unknown family '") + family + "' (expected one of A,B,C,D,E,F,G)";
    }
  }

  static CartanType parse(std::string_view text) {
    if (text.size() < 2 || !std::isupper(static_cast<unsigned char>(text[0])))
      throw InputError("malformed Cartan type \"" + std::string(text) + "\" (expected e.g. \"C3\")");
    int rank = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw InputError("malformed Cartan type \"" + std::string(text) + "\" (expected e.g. \"C3\")");
      rank = rank * 10 + (text[i] - '0');
      if (rank > 64) throw InputError("Cartan type rank too large: \"" + std::string(text) + "\"");
    }
    std::string why = admissibility_violation(text[0], rank);
    if (!why.empty()) throw InputError("inadmissible Cartan type \"" + std::string(text) + "\": " + why);
    return CartanType{text[0], rank};
  }

  friend bool operator==(const CartanType&, const CartanType&) = default;
  friend auto operator<=>(const CartanType&, const CartanType&) = default;
};

/// Bond between two diagram nodes. multiplicity 0 means not adjacent; the
/// arrow points toward the shorter root (or -1 when lengths agree).
struct Bond {
  int multiplicity = 0;
  int arrow_to = -1;
};

/// The completed Dynkin diagram of a simple type: nodes 0..n, with node 0
/// the lowest root.
struct AffineDiagram {
  std::vector<Vec> nodes;                 // root vectors, nodes[0] = α₀
  std::vector<std::vector<int>> cartan;   // cartan[i][j] = <node_j, node_i^∨>
  std::vector<int> lengths;               // squared lengths (α,α)
  std::vector<int> marks;                 // d(node)

  std::size_t size() const { return nodes.size(); }

  Bond bond(std::size_t i, std::size_t j) const {
    if (i == j || cartan[i][j] == 0) return {};
    Bond b;
    b.multiplicity = cartan[i][j] * cartan[j][i];
    if (lengths[i] != lengths[j]) b.arrow_to = static_cast<int>(lengths[i] < lengths[j] ? i : j);
    return b;
  }
};

namespace detail {

inline std::vector<std::vector<int>> cartan_matrix(CartanType t) {
  const int n = t.rank;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  // Multiple bond: row of the short root carries -k.
  auto multi = [&](int long_root, int short_root, int k) {
    a[short_root][long_root] = -k;
    a[long_root][short_root] = -1;
  };
  switch (t.family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      multi(n - 2, n - 1, 2);
      break;
    case 'C':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      multi(n - 1, n - 2, 2);
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      multi(1, 2, 2);
      link(2, 3);
      break;
    case 'G':
      multi(1, 0, 3);
      break;
    default:
      throw InputError("unknown Cartan family");
  }
  return a;
}

// Squared root lengths from a (block-diagonal) Cartan matrix, scaled so the
// shortest root in each component has length 2.
inline std::vector<int> root_lengths(const std::vector<std::vector<int>>& a) {
  const std::size_t n = a.size();
  std::vector<Rational> len(n, Rational(0));
  std::vector<int> out(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp{start};
    seen[start] = true;
    len[start] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k) {
      std::size_t i = comp[k];
      for (std::size_t j = 0; j < n; ++j) {
        if (seen[j] || a[i][j] == 0) continue;
        seen[j] = true;
        len[j] = len[i] * Rational(a[i][j], a[j][i]);
        comp.push_back(j);
      }
    }
    Rational lo = len[start];
    for (std::size_t i : comp) lo = std::min(lo, len[i]);
    for (std::size_t i : comp) {
      Rational v = len[i] / lo * 2;
      out[i] = static_cast<int>(v.numerator() / v.denominator());
    }
  }
  return out;
}

}  // namespace detail

/// A reduced crystallographic root system: simple, or a finite product of
/// simple factors (used for restriction-of-scalars models).
class RootSystem {
 public:
  /// Builds the root system of a simple admissible type.
  static RootSystem build(CartanType type) {
    std::string why = CartanType::admissibility_violation(type.family, type.rank);
    if (!why.empty()) throw InputError("inadmissible Cartan type " + type.name() + ": " + why);
    RootSystem rs;
    rs.components_ = {type};
    rs.component_of_.assign(type.rank, 0);
    rs.cartan_ = detail::cartan_matrix(type);
    rs.finish();
    return rs;
  }

  static RootSystem build(std::string_view type) { return build(CartanType::parse(type)); }

  /// Direct product of simple factors, simple roots concatenated in order.
  static RootSystem product(const std::vector<CartanType>& factors) {
    if (factors.empty()) throw InputError("empty product of root systems");
    RootSystem rs;
    rs.components_ = factors;
    std::size_t n = 0;
    for (const auto& f : factors) n += static_cast<std::size_t>(f.rank);
    rs.cartan_.assign(n, std::vector<int>(n, 0));
    std::size_t off = 0;
    for (std::size_t c = 0; c < factors.size(); ++c) {
      auto block = detail::cartan_matrix(factors[c]);
      for (std::size_t i = 0; i < block.size(); ++i) {
        rs.component_of_.push_back(static_cast<int>(c));
        for (std::size_t j = 0; j < block.size(); ++j) rs.cartan_[off + i][off + j] = block[i][j];
      }
      off += block.size();
    }
    rs.finish();
    return rs;
  }

  std::size_t rank() const { return cartan_.size(); }
  bool is_simple() const { return components_.size() == 1; }
  const std::vector<CartanType>& components() const { return components_; }
  int component_of(std::size_t simple_index) const { return component_of_[simple_index]; }

  CartanType type() const {
    if (!is_simple()) throw InputError("root system " + name() + " is not simple");
    return components_.front();
  }

  std::string name() const {
    std::string out;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (i) out += "x";
      out += components_[i].name();
    }
    return out;
  }

  /// All roots: positive roots by increasing height, then their negatives in
  /// the same order.
  const std::vector<Vec>& roots() const { return roots_; }
  std::size_t num_positive() const { return num_positive_; }
  const Vec& root(std::size_t idx) const { return roots_[idx]; }

  std::optional<std::size_t> index_of(const Vec& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool is_root(const Vec& v) const { return index_.count(v) != 0; }

  static bool is_nonnegative(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
  }
  bool is_positive(const Vec& v) const { return is_root(v) && is_nonnegative(v); }

  Vec simple_root(std::size_t i) const { return unit_vector(rank(), i); }

  std::vector<Vec> simple_roots() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < rank(); ++i) out.push_back(simple_root(i));
    return out;
  }

  int cartan(std::size_t i, std::size_t j) const { return cartan_[i][j]; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }

  /// W-invariant symmetric form on the root lattice.
  int inner(const Vec& x, const Vec& y) const {
    int acc = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j) acc += x[i] * gram_[i][j] * y[j];
    }
    return acc;
  }

  /// <beta, gamma^∨> for a root gamma.
  int pairing(const Vec& beta, const Vec& gamma) const { return 2 * inner(beta, gamma) / inner(gamma, gamma); }

  Vec reflect(const Vec& gamma, const Vec& v) const { return v - scaled(gamma, pairing(v, gamma)); }

  LatticeMap reflection(const Vec& gamma) const {
    std::vector<Vec> images;
    for (std::size_t i = 0; i < rank(); ++i) images.push_back(reflect(gamma, simple_root(i)));
    return LatticeMap::from_images(images);
  }

  const LatticeMap& simple_reflection(std::size_t i) const { return simple_reflections_[i]; }

  static int height(const Vec& v) { return std::accumulate(v.begin(), v.end(), 0); }

  /// True iff the map permutes the root set.
  bool permutes_roots(const LatticeMap& m) const {
    if (m.rank() != rank()) return false;
    std::vector<bool> hit(roots_.size(), false);
    for (const Vec& r : roots_) {
      auto idx = index_of(m.apply(r));
      if (!idx || hit[*idx]) return false;
      hit[*idx] = true;
    }
    return true;
  }

  /// Inverse of a map that permutes the roots.
  LatticeMap inverse(const LatticeMap& m) const { return m.inverse(); }

  // --- completed diagram (simple types only) ---------------------------------

  const AffineDiagram& affine() const {
    if (!affine_) throw InputError("completed Dynkin diagram needs a simple type, got " + name());
    return *affine_;
  }

  const Vec& lowest_root() const { return affine().nodes[0]; }
  const std::vector<int>& marks() const { return affine().marks; }

  /// Root vector of node k of the completed diagram (0 = lowest root).
  const Vec& node(std::size_t k) const { return affine().nodes[k]; }

  std::optional<std::size_t> node_of(const Vec& v) const {
    const auto& a = affine();
    for (std::size_t k = 0; k < a.nodes.size(); ++k)
      if (a.nodes[k] == v) return k;
    return std::nullopt;
  }

  /// Dynkin bond between simple roots i and j (0-based indices).
  Bond bond(std::size_t i, std::size_t j) const {
    if (i == j || cartan_[i][j] == 0) return {};
    Bond b;
    b.multiplicity = cartan_[i][j] * cartan_[j][i];
    if (lengths_[i] != lengths_[j]) b.arrow_to = static_cast<int>(lengths_[i] < lengths_[j] ? i : j);
    return b;
  }

  int length(std::size_t i) const { return lengths_[i]; }

 private:
  void finish() {
    const std::size_t n = cartan_.size();
    lengths_ = detail::root_lengths(cartan_);
    gram_.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram_[i][j] = cartan_[i][j] * lengths_[i] / 2;
    for (std::size_t i = 0; i < n; ++i) simple_reflections_.push_back(reflection(simple_root(i)));

    // Closure of the simple roots under the simple reflections.
    std::vector<Vec> found;
    std::unordered_map<Vec, std::size_t, VecHash> seen;
    std::deque<Vec> queue;
    for (std::size_t i = 0; i < n; ++i) {
      Vec v = simple_root(i);
      seen.emplace(v, 0);
      queue.push_back(v);
    }
    while (!queue.empty()) {
      Vec v = std::move(queue.front());
      queue.pop_front();
      found.push_back(v);
      for (std::size_t i = 0; i < n; ++i) {
        Vec w = simple_reflections_[i].apply(v);
        if (seen.emplace(w, 0).second) queue.push_back(std::move(w));
      }
    }
    std::vector<Vec> positive;
    for (const Vec& v : found)
      if (is_nonnegative(v)) positive.push_back(v);
    std::sort(positive.begin(), positive.end(), [](const Vec& x, const Vec& y) {
      int hx = height(x), hy = height(y);
      if (hx != hy) return hx < hy;
      return x > y;
    });
    num_positive_ = positive.size();
    roots_ = positive;
    for (const Vec& v : positive) roots_.push_back(-v);
    if (roots_.size() != found.size()) throw InternalError("root closure is not symmetric");
    for (std::size_t k = 0; k < roots_.size(); ++k) index_[roots_[k]] = k;

    if (components_.size() == 1) {
      AffineDiagram a;
      const Vec& theta = positive.back();
      a.nodes.push_back(-theta);
      for (std::size_t i = 0; i < n; ++i) a.nodes.push_back(simple_root(i));
      a.marks.push_back(1);
      for (std::size_t i = 0; i < n; ++i) a.marks.push_back(theta[i]);
      a.lengths.push_back(inner(theta, theta));
      for (std::size_t i = 0; i < n; ++i) a.lengths.push_back(lengths_[i]);
      a.cartan.assign(n + 1, std::vector<int>(n + 1, 0));
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) a.cartan[i][j] = pairing(a.nodes[j], a.nodes[i]);
      affine_ = std::make_shared<const AffineDiagram>(std::move(a));
    }
  }

  std::vector<CartanType> components_;
  std::vector<int> component_of_;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> lengths_;
  std::vector<std::vector<int>> gram_;
  std::vector<LatticeMap> simple_reflections_;
  std::vector<Vec> roots_;
  std::size_t num_positive_ = 0;
  std::unordered_map<Vec, std::size_t, VecHash> index_;
  std::shared_ptr<const AffineDiagram> affine_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// A simple type ("C3") or a product of simple types ("A1xA2").
inline RootSystemPtr make_root_system(std::string_view type) {
  if (type.find('x') == std::string_view::npos) return std::make_shared<const RootSystem>(RootSystem::build(type));
  std::vector<CartanType> factors;
  std::size_t start = 0;
  for (;;) {
    std::size_t cut = type.find('x', start);
    factors.push_back(CartanType::parse(type.substr(start, cut == std::string_view::npos ? cut : cut - start)));
    if (cut == std::string_view::npos) break;
    start = cut + 1;
  }
  return std::make_shared<const RootSystem>(RootSystem::product(factors));
}

inline RootSystem build_root_system(CartanType type) { return RootSystem::build(type); }

// ---------------------------------------------------------------------------
// Subdiagrams of the completed diagram

struct DiagramComponent {
  CartanType type;
  std::vector<int> nodes;  // node labels of the completed diagram, ascending

  friend bool operator==(const DiagramComponent&, const DiagramComponent&) = default;
};

namespace detail {

// Recognizes the Cartan type of a connected finite-type diagram given by its
// Cartan-like matrix on k nodes.
inline CartanType recognize_connected(const std::vector<std::vector<int>>& c, const std::vector<int>& lengths) {
  const int k = static_cast<int>(c.size());
  if (k == 1) return {'A', 1};
  std::vector<int> degree(k, 0);
  int doubles = 0, triples = 0, edges = 0;
  int double_a = -1, double_b = -1;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (c[i][j] == 0) continue;
      ++edges;
      ++degree[i];
      ++degree[j];
      int m = c[i][j] * c[j][i];
      if (m == 2) {
        ++doubles;
        double_a = i;
        double_b = j;
      } else if (m == 3) {
        ++triples;
      } else if (m != 1) {
        throw InputError("subdiagram is not of finite type");
      }
    }
  if (edges != k - 1) throw InputError("subdiagram is not of finite type");
  if (triples == 1 && k == 2) return {'G', 2};
  if (triples) throw InputError("subdiagram is not of finite type");
  int branch = -1;
  for (int i = 0; i < k; ++i) {
    if (degree[i] > 3) throw InputError("subdiagram is not of finite type");
    if (degree[i] == 3) {
      if (branch >= 0) throw InputError("subdiagram is not of finite type");
      branch = i;
    }
  }
  if (doubles > 1) throw InputError("subdiagram is not of finite type");
  if (doubles == 1) {
    if (branch >= 0) throw InputError("subdiagram is not of finite type");
    if (k == 2) return {'B', 2};
    bool a_end = degree[double_a] == 1, b_end = degree[double_b] == 1;
    if (!a_end && !b_end) {
      if (k == 4) return {'F', 4};
      throw InputError("subdiagram is not of finite type");
    }
    int end = a_end ? double_a : double_b;
    int other = end == double_a ? double_b : double_a;
    // End node short: B; end node long: C.
    return {lengths[end] < lengths[other] ? 'B' : 'C', k};
  }
  if (branch < 0) return {'A', k};
  // Arm lengths from the branch node.
  std::vector<int> arms;
  for (int j = 0; j < k; ++j) {
    if (c[branch][j] == 0 || j == branch) continue;
    int len = 1, prev = branch, cur = j;
    for (;;) {
      int next = -1;
      for (int x = 0; x < k; ++x)
        if (x != prev && x != cur && c[cur][x] != 0) next = x;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {'D', k};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {'E', k};
  throw InputError("subdiagram is not of finite type");
}

}  // namespace detail

/// Connected components of the subdiagram of the completed diagram induced on
/// the given node labels, with recognized Cartan types.
inline std::vector<DiagramComponent> subdiagram_components(const RootSystem& rs, std::vector<int> nodes) {
  const AffineDiagram& a = rs.affine();
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<Vec> vecs;
  for (int k : nodes) {
    if (k < 0 || static_cast<std::size_t>(k) >= a.size()) throw InputError("node label out of range");
    vecs.push_back(a.nodes[k]);
  }
  if (!linearly_independent(vecs)) throw InputError("subdiagram node set is linearly dependent");
  std::vector<bool> used(nodes.size(), false);
  std::vector<DiagramComponent> out;
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    if (used[s]) continue;
    std::vector<std::size_t> comp{s};
    used[s] = true;
    for (std::size_t q = 0; q < comp.size(); ++q)
      for (std::size_t t = 0; t < nodes.size(); ++t)
        if (!used[t] && a.cartan[nodes[comp[q]]][nodes[t]] != 0) {
          used[t] = true;
          comp.push_back(t);
        }
    std::sort(comp.begin(), comp.end());
    std::vector<std::vector<int>> c(comp.size(), std::vector<int>(comp.size()));
    std::vector<int> lens;
    DiagramComponent dc;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      dc.nodes.push_back(nodes[comp[i]]);
      lens.push_back(a.lengths[nodes[comp[i]]]);
      for (std::size_t j = 0; j < comp.size(); ++j) c[i][j] = a.cartan[nodes[comp[i]]][nodes[comp[j]]];
    }
    dc.type = detail::recognize_connected(c, lens);
    out.push_back(std::move(dc));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.nodes.front() < y.nodes.front(); });
  return out;
}

}  // namespace endatlas

#endif  // ENDATLAS_ROOTSYS_HPP
