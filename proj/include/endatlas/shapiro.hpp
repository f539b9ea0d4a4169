#ifndef ENDATLAS_SHAPIRO_HPP
#define ENDATLAS_SHAPIRO_HPP

// Data of an induced group (one copy of the base diagram per right coset of
// a subgroup) versus data of the base group over the subgroup.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "endatlas/endodata.hpp"
#include "endatlas/error.hpp"
#include "endatlas/galois.hpp"
#include "endatlas/rootsys.hpp"
#include "endatlas/torus.hpp"
#include "endatlas/weyl.hpp"

namespace endatlas {

struct InducedModel {
  GaloisModelPtr group;               // Γ with its action on the induced diagram
  std::vector<int> subgroup;          // Γ₁ as indices into Γ, identity first
  std::vector<int> cosets;            // representatives r_j of Γ₁\Γ, r_0 = e
  SettingPtr base;                    // base root system with Γ₁ acting
  SettingPtr induced;                 // product of copies with Γ acting

  std::size_t copies() const { return cosets.size(); }
  std::size_t base_rank() const { return base->rank(); }

  /// Coset index of Γ₁x.
  std::size_t coset_of(int x) const {
    for (std::size_t j = 0; j < cosets.size(); ++j)
      for (int h : subgroup)
        if (group->mul(h, cosets[j]) == x) return j;
    throw InternalError("element outside every coset");
  }

  /// For r_j σ = a r_k: returns (k, index of a in the subgroup list).
  std::pair<std::size_t, std::size_t> move(std::size_t j, int sigma) const {
    int x = group->mul(cosets[j], sigma);
    std::size_t k = coset_of(x);
    int a = group->mul(x, group->inv(cosets[k]));
    auto it = std::find(subgroup.begin(), subgroup.end(), a);
    if (it == subgroup.end()) throw InternalError("coset decomposition failed");
    return {k, static_cast<std::size_t>(it - subgroup.begin())};
  }
};

namespace detail {

inline LatticeMap block_diagonal(const std::vector<LatticeMap>& blocks) {
  const std::size_t n = blocks.front().rank();
  std::vector<Vec> images;
  for (std::size_t j = 0; j < blocks.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Vec v(n * blocks.size(), 0);
      Vec b = blocks[j].image(i);
      for (std::size_t r = 0; r < n; ++r) v[j * n + r] = b[r];
      images.push_back(std::move(v));
    }
  return LatticeMap::from_images(images);
}

inline LatticeMap block(const LatticeMap& m, std::size_t j, std::size_t n) {
  std::vector<Vec> images;
  for (std::size_t i = 0; i < n; ++i) {
    Vec full = m.image(j * n + i);
    Vec b(full.begin() + static_cast<std::ptrdiff_t>(j * n), full.begin() + static_cast<std::ptrdiff_t>((j + 1) * n));
    for (std::size_t r = 0; r < full.size(); ++r)
      if ((r < j * n || r >= (j + 1) * n) && full[r] != 0) throw InputError("Weyl element is not block diagonal");
    images.push_back(std::move(b));
  }
  return LatticeMap::from_images(images);
}

inline Vec embed(const Vec& v, std::size_t j, std::size_t copies) {
  Vec out(v.size() * copies, 0);
  for (std::size_t r = 0; r < v.size(); ++r) out[j * v.size() + r] = v[r];
  return out;
}

}  // namespace detail

/// Builds the induced model. `base_action[k]` is the diagram action of
/// subgroup[k] on the base system.
inline InducedModel make_induced_model(const GaloisModel& gamma, const std::vector<int>& subgroup,
                                       const RootSystemPtr& base_rs, const std::vector<NodePerm>& base_action) {
  if (subgroup.size() != base_action.size()) throw InputError("one base action per subgroup element is required");
  InducedModel m;
  m.subgroup = subgroup;
  auto base_group = std::make_shared<const GaloisModel>(
      gamma.restrict_to(subgroup, gamma.label() + "|sub").with_action(base_action, gamma.label() + "|sub"));
  m.base = make_setting(base_rs, base_group);

  auto tmp = std::make_shared<const GaloisModel>(gamma);
  m.group = tmp;
  std::vector<bool> covered(gamma.size(), false);
  for (int x = 0; x < static_cast<int>(gamma.size()); ++x) {
    if (covered[static_cast<std::size_t>(x)]) continue;
    m.cosets.push_back(x);
    for (int h : subgroup) covered[static_cast<std::size_t>(gamma.mul(h, x))] = true;
  }

  const std::size_t n = base_rs->rank();
  const std::size_t k = m.cosets.size();
  std::vector<NodePerm> action;
  for (int sigma = 0; sigma < static_cast<int>(gamma.size()); ++sigma) {
    NodePerm p(n * k);
    for (std::size_t j = 0; j < k; ++j) {
      auto [src, a] = m.move(j, sigma);
      for (std::size_t i = 0; i < n; ++i)
        p[src * n + i] = static_cast<int>(j * n + static_cast<std::size_t>(base_action[a][i]));
    }
    action.push_back(std::move(p));
  }
  std::vector<CartanType> factors;
  for (std::size_t j = 0; j < k; ++j)
    for (const CartanType& t : base_rs->components()) factors.push_back(t);
  auto induced_rs = std::make_shared<const RootSystem>(RootSystem::product(factors));
  auto induced_group = std::make_shared<const GaloisModel>(gamma.with_action(action, gamma.label() + "|induced"));
  m.induced = make_setting(induced_rs, induced_group);
  m.group = induced_group;
  return m;
}

/// s = s₁ on every copy, w(σ) block j = w₁(a) for r_jσ = a r_k, B′ = copies.
inline EndoscopicDatum shapiro_induce(const EndoscopicDatum& x, const InducedModel& m) {
  if (!x.setting->same_as(*m.base)) throw InputError("datum does not live on the base of the induced model");
  const std::size_t n = m.base_rank(), k = m.copies();
  std::vector<Rational> tor;
  std::vector<std::vector<Rational>> fr;
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      tor.push_back(x.s.torsion(i));
      fr.push_back(x.s.free(i));
    }
  EndoscopicDatum out;
  out.setting = m.induced;
  out.s = TorusElement::from_parts(tor, fr);
  for (int sigma = 0; sigma < static_cast<int>(m.group->size()); ++sigma) {
    std::vector<LatticeMap> blocks;
    for (std::size_t j = 0; j < k; ++j) blocks.push_back(x.cocycle[m.move(j, sigma).second]);
    out.cocycle.push_back(detail::block_diagonal(blocks));
  }
  for (std::size_t j = 0; j < k; ++j)
    for (const Vec& b : x.b_prime) out.b_prime.push_back(detail::embed(b, j, k));
  sort_canonically(out.rs(), out.b_prime);
  std::string why = datum_violation(out);
  if (!why.empty()) throw InternalError("induced datum is inconsistent: " + why);
  return out;
}

/// The identity-coset component: s₁ = s(1), w₁(τ) = w(τ)(1) for τ ∈ Γ₁.
inline EndoscopicDatum shapiro_descend(const EndoscopicDatum& x, const InducedModel& m) {
  if (!x.setting->same_as(*m.induced)) throw InputError("datum does not live on the induced system");
  const std::size_t n = m.base_rank(), k = m.copies();
  std::vector<Rational> tor;
  std::vector<std::vector<Rational>> fr;
  for (std::size_t i = 0; i < n; ++i) {
    tor.push_back(x.s.torsion(i));
    fr.push_back(x.s.free(i));
  }
  EndoscopicDatum out;
  out.setting = m.base;
  out.s = TorusElement::from_parts(tor, fr);
  for (int tau : m.subgroup) out.cocycle.push_back(detail::block(x.cocycle[static_cast<std::size_t>(tau)], 0, n));
  for (const Vec& b : x.b_prime) {
    bool outside = false;
    for (std::size_t r = n; r < n * k; ++r) outside = outside || b[r] != 0;
    if (!outside) out.b_prime.push_back(Vec(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n)));
  }
  sort_canonically(out.rs(), out.b_prime);
  std::string why = datum_violation(out);
  if (!why.empty()) throw InternalError("descended datum is inconsistent: " + why);
  return out;
}

struct TransferVerdict {
  bool base = false;
  bool induced = false;
  bool agree() const { return base == induced; }
};

inline TransferVerdict shapiro_transfer_verdicts(const EndoscopicDatum& x1, const EndoscopicDatum& x2,
                                                 const InducedModel& m) {
  return {equivalent(x1, x2).has_value(), equivalent(shapiro_induce(x1, m), shapiro_induce(x2, m)).has_value()};
}

inline bool equivalence_transfers_under_shapiro(const EndoscopicDatum& x1, const EndoscopicDatum& x2,
                                                const InducedModel& m) {
  return shapiro_transfer_verdicts(x1, x2, m).agree();
}

}  // namespace endatlas

#endif  // ENDATLAS_SHAPIRO_HPP
