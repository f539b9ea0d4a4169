#ifndef ENDATLAS_LOCALGLOBAL_HPP
#define ENDATLAS_LOCALGLOBAL_HPP

// Local versus global equivalence in the finite Galois model, where a place
// is a cyclic subgroup and every element occurs as a Frobenius.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "endatlas/elliptic.hpp"
#include "endatlas/endodata.hpp"
#include "endatlas/galois.hpp"
#include "endatlas/parallel.hpp"

namespace endatlas {

struct LocalGlobalVerdict {
  std::vector<Place> places;
  std::vector<std::optional<EquivalenceWitness>> local;
  std::optional<EquivalenceWitness> global;
  bool consistent = true;         // equivalent everywhere ⟹ equivalent globally
  bool witness_restricts = true;  // a global witness is a witness at every place

  bool equivalent_everywhere() const {
    for (const auto& w : local)
      if (!w) return false;
    return true;
  }
};

inline LocalGlobalVerdict check_local_global(const EndoscopicDatum& d1, const EndoscopicDatum& d2,
                                             const EquivalenceOptions& opt = {}) {
  detail::require_same_setting(d1, d2);
  LocalGlobalVerdict v;
  v.places = places(d1.galois());
  for (const Place& p : v.places) {
    EndoscopicDatum l1 = localize(d1, p), l2 = localize(d2, p);
    v.local.push_back(equivalent(l1, l2, opt));
  }
  v.global = equivalent(d1, d2, opt);
  v.consistent = !v.equivalent_everywhere() || v.global.has_value();
  if (v.global)
    for (const Place& p : v.places)
      if (!conjugate(localize(d1, p), v.global->x).same_as(localize(d2, p))) v.witness_restricts = false;
  return v;
}

struct LocalGlobalReport {
  std::string type;
  std::string galois;
  int order_bound = 0;
  std::size_t data = 0;
  std::size_t pairs = 0;
  std::size_t same_s_pairs = 0;          // pairs sharing the torus element
  std::size_t locally_equivalent = 0;    // equivalent at every place
  std::size_t globally_equivalent = 0;
  std::size_t inconsistencies = 0;
  std::size_t witness_failures = 0;
  std::vector<std::pair<std::size_t, std::size_t>> falsifiers;
};

/// Every finite-order datum with default B′ and s within the bound, one s
/// per W-orbit, without identifying equivalent cocycles.
inline Inventory full_inventory(const SettingPtr& st, int order_bound) {
  InventoryOptions io;
  io.elliptic_only = false;
  io.deduplicate = false;
  return brute_force_inventory(st, order_bound, io);
}

/// Checks every pair of the inventory. Data with non-conjugate s are
/// inequivalent at every place, so their verdict is immediate; pairs with
/// the same s are checked place by place.
inline LocalGlobalReport exhaustive_local_global(const SettingPtr& st, int order_bound) {
  LocalGlobalReport rep;
  rep.type = st->rs->name();
  rep.galois = st->galois->label();
  rep.order_bound = order_bound;
  Inventory inv = full_inventory(st, order_bound);
  const auto& data = inv.classes;
  rep.data = data.size();
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = i + 1; j < data.size(); ++j) {
      ++rep.pairs;
      if (data[i].s == data[j].s) work.emplace_back(i, j);
    }
  rep.same_s_pairs = work.size();
  std::vector<LocalGlobalVerdict> verdicts(work.size());
  parallel_for(work.size(), [&](std::size_t k) {
    verdicts[k] = check_local_global(data[work[k].first], data[work[k].second]);
  });
  for (std::size_t k = 0; k < work.size(); ++k) {
    const auto& v = verdicts[k];
    if (v.equivalent_everywhere()) ++rep.locally_equivalent;
    if (v.global) ++rep.globally_equivalent;
    if (!v.consistent) ++rep.inconsistencies;
    if (!v.witness_restricts) ++rep.witness_failures;
    if (!v.consistent || !v.witness_restricts) rep.falsifiers.push_back(work[k]);
  }
  return rep;
}

struct CounterexampleCertificate {
  EndoscopicDatum first;
  EndoscopicDatum second;
  std::vector<Place> place_family;
  std::vector<EquivalenceWitness> witnesses;  // one per place of the family
  std::vector<bool> elliptic_at;              // per place of places(Γ), elliptic filter only
};

struct CounterexampleSearch {
  std::size_t pairs_examined = 0;
  std::optional<CounterexampleCertificate> certificate;
};

/// Looks for two data equivalent at every place of `place_subset` (indices
/// into places(Γ)) but globally inequivalent. With `elliptic_filter`, the
/// pair must also be simultaneously elliptic or not at every place and
/// equivalent wherever it is elliptic.
inline CounterexampleSearch counterexample_search(const SettingPtr& st, const std::vector<std::size_t>& place_subset,
                                                  int order_bound, bool elliptic_filter = false) {
  const std::vector<Place> all = places(*st->galois);
  std::vector<Place> family;
  for (std::size_t k : place_subset) {
    if (k >= all.size()) throw InputError("place index " + std::to_string(k) + " out of range");
    family.push_back(all[k]);
  }
  Inventory inv = full_inventory(st, order_bound);
  const auto& data = inv.classes;
  CounterexampleSearch out;
  for (std::size_t i = 0; i < data.size() && !out.certificate; ++i)
    for (std::size_t j = i + 1; j < data.size() && !out.certificate; ++j) {
      if (!(data[i].s == data[j].s)) continue;  // never locally equivalent
      ++out.pairs_examined;
      CounterexampleCertificate cert{data[i], data[j], family, {}, {}};
      bool ok = true;
      for (const Place& p : family) {
        auto w = equivalent(localize(data[i], p), localize(data[j], p));
        if (!w) {
          ok = false;
          break;
        }
        cert.witnesses.push_back(*w);
      }
      if (!ok) continue;
      if (elliptic_filter) {
        for (const Place& p : all) {
          EndoscopicDatum l1 = localize(data[i], p), l2 = localize(data[j], p);
          bool e1 = is_elliptic(l1), e2 = is_elliptic(l2);
          if (e1 != e2 || (e1 && !equivalent(l1, l2))) {
            ok = false;
            break;
          }
          cert.elliptic_at.push_back(e1);
        }
        if (!ok) continue;
      }
      if (equivalent(data[i], data[j])) continue;
      out.certificate = std::move(cert);
    }
  return out;
}

inline std::vector<std::size_t> all_place_indices(const GaloisModel& g) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < places(g).size(); ++k) out.push_back(k);
  return out;
}

}  // namespace endatlas

#endif  // ENDATLAS_LOCALGLOBAL_HPP
