#ifndef ENDATLAS_SERIALIZE_HPP
#define ENDATLAS_SERIALIZE_HPP

// JSON forms of data, witnesses, classification reports, reduction plans
// and local-global certificates. Object keys keep insertion order so output
// is byte-stable.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "endatlas/elliptic.hpp"
#include "endatlas/endodata.hpp"
#include "endatlas/error.hpp"
#include "endatlas/localglobal.hpp"
#include "endatlas/reduction.hpp"

namespace endatlas {

using Json = nlohmann::ordered_json;

inline Json vec_json(const Vec& v) { return Json(v); }

inline Json roots_json(const std::vector<Vec>& roots) {
  Json out = Json::array();
  for (const Vec& r : roots) out.push_back(vec_json(r));
  return out;
}

/// A lattice map as the list of images of the simple roots.
inline Json map_json(const LatticeMap& m) { return roots_json(m.images()); }

inline Json perm_json(const NodePerm& p) { return Json(p); }

inline Json torus_json(const TorusElement& s) {
  Json tor = Json::array();
  for (const Rational& q : s.torsion_parts()) tor.push_back(format_fraction(q));
  Json out = {{"torsion", tor}};
  if (s.free_rank() > 0) {
    Json fr = Json::array();
    for (const auto& row : s.free_parts()) {
      Json r = Json::array();
      for (const Rational& q : row) r.push_back(format_fraction(q));
      fr.push_back(r);
    }
    out["free"] = fr;
  }
  return out;
}

inline Json datum_json(const EndoscopicDatum& d) {
  Json coc = Json::object();
  for (std::size_t g = 0; g < d.cocycle.size(); ++g) coc[d.galois().name(g)] = map_json(d.cocycle[g]);
  return {{"type", d.rs().name()},
          {"galois", d.galois().label()},
          {"s", torus_json(d.s)},
          {"b_prime", roots_json(d.b_prime)},
          {"cocycle", coc}};
}

// ---------------------------------------------------------------------------
// Reading

namespace detail {

inline Rational json_fraction(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_fraction(j.get<std::string>());
  throw InputError("expected a fraction string such as \"1/3\"");
}

inline Vec json_vec(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw InputError(what + " must be a list of " + std::to_string(n) + " integers");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError(what + " must contain integers");
    v.push_back(x.get<int>());
  }
  return v;
}

}  // namespace detail

inline TorusElement torus_from_json(const Json& j, std::size_t rank) {
  if (!j.is_object() || !j.contains("torsion")) throw InputError("\"s\" needs a \"torsion\" list");
  const Json& t = j.at("torsion");
  if (!t.is_array() || t.size() != rank) throw InputError("\"s.torsion\" must have " + std::to_string(rank) + " entries");
  std::vector<Rational> tor;
  for (const auto& x : t) tor.push_back(detail::json_fraction(x));
  if (!j.contains("free")) return TorusElement::from_torsion(tor);
  const Json& f = j.at("free");
  if (!f.is_array() || f.size() != rank) throw InputError("\"s.free\" must have " + std::to_string(rank) + " rows");
  std::vector<std::vector<Rational>> fr;
  for (const auto& row : f) {
    if (!row.is_array()) throw InputError("\"s.free\" rows must be lists");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(detail::json_fraction(x));
    fr.push_back(std::move(r));
  }
  return TorusElement::from_parts(tor, fr);
}

/// Reads {"type", "galois", "s", "cocycle", optional "b_prime"}. Missing
/// cocycle entries are the identity.
inline EndoscopicDatum datum_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw InputError("datum file must hold a JSON object");
    SettingPtr st = make_setting(j.at("type").get<std::string>(), j.value("galois", std::string("trivial")));
    const std::size_t n = st->rank();
    TorusElement s = torus_from_json(j.at("s"), n);
    Cocycle c = trivial_cocycle(*st);
    if (j.contains("cocycle")) {
      for (auto it = j.at("cocycle").begin(); it != j.at("cocycle").end(); ++it) {
        int g = st->galois->index_of(it.key());
        if (g < 0) throw InputError("cocycle names unknown Galois element \"" + it.key() + "\"");
        if (!it.value().is_array() || it.value().size() != n)
          throw InputError("cocycle value at \"" + it.key() + "\" must list " + std::to_string(n) + " images");
        std::vector<Vec> images;
        for (const auto& col : it.value()) images.push_back(detail::json_vec(col, n, "cocycle image"));
        c[static_cast<std::size_t>(g)] = LatticeMap::from_images(images);
      }
    }
    std::optional<std::vector<Vec>> bp;
    if (j.contains("b_prime")) {
      bp.emplace();
      for (const auto& r : j.at("b_prime")) bp->push_back(detail::json_vec(r, n, "b_prime root"));
    }
    return make_datum(st, std::move(s), std::move(c), std::move(bp));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed datum JSON: ") + e.what());
  }
}

inline EndoscopicDatum read_datum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open datum file \"" + path + "\"");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in \"" + path + "\": " + e.what());
  }
  return datum_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports

inline Json omega_label_json(const Setting& st, const EllipticPair& p) {
  Json out = Json::object();
  for (std::size_t g = 0; g < p.omega.size(); ++g)
    out[st.galois->name(g)] = st.omega[static_cast<std::size_t>(p.omega[g])].lowest_image();
  return out;
}

inline std::string components_text(const std::vector<DiagramComponent>& comps) {
  if (comps.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) out += " + ";
    out += comps[i].type.name() + "{";
    for (std::size_t k = 0; k < comps[i].nodes.size(); ++k) out += (k ? "," : "") + std::to_string(comps[i].nodes[k]);
    out += "}";
  }
  return out;
}

inline Json classification_json(const SettingPtr& st, const ClassificationReport& rep) {
  Json classes = Json::array();
  for (const auto& c : rep.classes) {
    Json comps = Json::array();
    for (const auto& dc : c.dual_components) comps.push_back({{"type", dc.type.name()}, {"nodes", dc.nodes}});
    Json action = Json::object();
    for (std::size_t g = 0; g < c.dual_action.size(); ++g) action[st->galois->name(g)] = perm_json(c.dual_action[g]);
    classes.push_back({{"pair", {{"omega", omega_label_json(*st, c.pair)}, {"orbit", c.pair.orbit}}},
                       {"d", c.d},
                       {"s", torus_json(c.datum.s)},
                       {"dual_components", comps},
                       {"dual_action", action},
                       {"out_size", c.out_size ? Json(*c.out_size) : Json(nullptr)},
                       {"members", c.members.size()}});
  }
  return {{"type", rep.type},
          {"galois", rep.galois},
          {"pairs", rep.pairs.size()},
          {"class_count", rep.classes.size()},
          {"classes", classes}};
}

inline Json witness_json(const EndoscopicDatum& d, const EquivalenceWitness& w) {
  Json out = {{"equivalent", true}, {"route", w.route}, {"x", map_json(w.x)}};
  out["omega"] = w.omega >= 0 ? Json(d.setting->omega[static_cast<std::size_t>(w.omega)].lowest_image()) : Json(nullptr);
  return out;
}

inline Json place_json(const GaloisModel& g, const Place& p) {
  Json sub = Json::array();
  for (int x : p.subgroup) sub.push_back(g.name(static_cast<std::size_t>(x)));
  return {{"frobenius", g.name(static_cast<std::size_t>(p.generator))}, {"subgroup", sub}};
}

inline Json plan_json(const ReductionPlan& p) {
  Json basis = Json::array();
  for (const auto& r : p.r_basis) {
    Json row = Json::array();
    for (const Rational& q : r) row.push_back(format_fraction(q));
    basis.push_back(row);
  }
  return {{"bypass", p.bypass},
          {"frame", map_json(p.frame)},
          {"r_basis", basis},
          {"sigma_p", roots_json(p.sigma_p)},
          {"sigma_m", roots_json(p.sigma_m)},
          {"levi_simple", p.levi_simple},
          {"other_simple", p.other_simple},
          {"classes", p.classes},
          {"representatives", p.representatives},
          {"b", p.b},
          {"c", p.c},
          {"d", p.d},
          {"t", torus_json(p.t)},
          {"s_levi", roots_json(p.s_levi)},
          {"s_upper", roots_json(p.s_upper)},
          {"s_lower", roots_json(p.s_lower)}};
}

inline Json certificate_json(const CounterexampleCertificate& c) {
  const GaloisModel& g = c.first.galois();
  Json fam = Json::array(), wit = Json::array();
  for (const Place& p : c.place_family) fam.push_back(place_json(g, p));
  for (const auto& w : c.witnesses) wit.push_back({{"route", w.route}, {"x", map_json(w.x)}});
  Json out = {{"first", datum_json(c.first)}, {"second", datum_json(c.second)}, {"places", fam}, {"witnesses", wit}};
  if (!c.elliptic_at.empty()) out["elliptic_at"] = c.elliptic_at;
  return out;
}

}  // namespace endatlas

#endif  // ENDATLAS_SERIALIZE_HPP
