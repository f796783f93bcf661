#pragma once

#include "galfan/descent.hpp"
#include "galfan/subdivide.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace galfan {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// scalars
//
// Integers are JSON numbers while they fit the double-safe range and decimal
// strings beyond it; rationals are always "p/q" strings in lowest terms.

namespace io_detail {

inline const Int& json_int_cutoff() {
  static const Int cutoff = Int(1) << 53;
  return cutoff;
}

}  // namespace io_detail

inline Json int_to_json(const Int& v) {
  if (abs(v) >= io_detail::json_int_cutoff()) return Json(v.str());
  return Json(static_cast<std::int64_t>(v));
}

inline Int int_from_json(const Json& j) {
  if (j.is_string()) return int_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  throw std::invalid_argument("expected an integer, got: " + j.dump());
}

inline Json rat_to_json(const Rat& v) { return Json(rat_to_string(v)); }

inline Rat rat_from_json(const Json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  throw std::invalid_argument("expected a rational, got: " + j.dump());
}

inline Json int_vec_to_json(const IntVec& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(int_to_json(x));
  return out;
}

inline IntVec int_vec_from_json(const Json& j, std::size_t expect = 0) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of integers");
  IntVec out;
  for (const Json& x : j) out.push_back(int_from_json(x));
  if (expect && out.size() != expect)
    throw std::invalid_argument("vector has wrong length");
  return out;
}

inline Json rat_vec_to_json(const RatVec& v) {
  Json out = Json::array();
  for (const Rat& x : v) out.push_back(rat_to_json(x));
  return out;
}

inline RatVec rat_vec_from_json(const Json& j, std::size_t expect = 0) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  RatVec out;
  for (const Json& x : j) out.push_back(rat_from_json(x));
  if (expect && out.size() != expect)
    throw std::invalid_argument("vector has wrong length");
  return out;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) out.push_back(int_vec_to_json(m.row(i)));
  return out;
}

inline IntMatrix matrix_from_json(const Json& j, std::size_t rank) {
  if (!j.is_array() || j.size() != rank)
    throw std::invalid_argument("matrix must have one row per lattice dimension");
  std::vector<IntVec> rows;
  for (const Json& r : j) rows.push_back(int_vec_from_json(r, rank));
  return IntMatrix::from_rows(rows);
}

// ---------------------------------------------------------------------------
// documents

struct ColoredInput {
  Cone valuation_cone;
  std::vector<Color> colors;
  std::vector<std::pair<std::vector<IntVec>, std::vector<std::string>>> maximal_cones;
};

struct CertificatePayload {
  std::string type;     // "farkas" | "support-family" | "cyclic-difference"
  std::string context;  // "qp" | "qp-colored" | "descent-orbit" | "descent-orbit-colored"
  std::optional<std::vector<IntVec>> orbit_rays;
  std::optional<std::vector<std::string>> orbit_colors;
  FarkasCertificate farkas;
  SupportFamily family;
  CyclicDifferenceCertificate cyclic;
};

struct Document {
  int schema_version = 1;
  std::string kind;  // "fan" | "colored_fan" | "certificate" | "verdict"
  std::size_t lattice_rank = 0;
  std::optional<FiniteMatrixGroup> group;
  std::optional<Fan> fan;
  std::optional<ColoredInput> colored;
  std::optional<CertificatePayload> certificate;
  std::optional<Json> verdict;
  std::string notes;
};

inline const FiniteMatrixGroup& document_group(const Document& doc) {
  if (!doc.group) throw std::invalid_argument("document has no group");
  return *doc.group;
}

inline const Fan& document_fan(const Document& doc) {
  if (doc.kind != "fan" || !doc.fan) throw std::invalid_argument("document is not a fan");
  return *doc.fan;
}

/// Assembles the colored fan, enforcing the datum invariants. Throws
/// std::invalid_argument when the data violates them.
inline ColoredFan build_colored_fan(const Document& doc) {
  if (doc.kind != "colored_fan" || !doc.colored)
    throw std::invalid_argument("document is not a colored fan");
  const ColoredInput& in = *doc.colored;
  FiniteMatrixGroup grp = doc.group ? *doc.group : trivial_group(doc.lattice_rank);
  SphericalDatum datum =
      make_spherical_datum(doc.lattice_rank, in.valuation_cone, in.colors, std::move(grp));
  std::vector<ColoredCone> cones;
  for (const auto& [rays, colors] : in.maximal_cones)
    cones.push_back(make_colored_cone(cone_from_generators(doc.lattice_rank, rays), colors));
  return make_colored_fan(std::move(datum), std::move(cones));
}

// ---------------------------------------------------------------------------
// serialization (canonical: parse . serialize = id on canonical documents)

namespace io_detail {

inline Json group_to_json(const FiniteMatrixGroup& g) {
  std::vector<IntMatrix> gens = g.generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  Json out;
  Json arr = Json::array();
  for (const IntMatrix& m : gens) arr.push_back(matrix_to_json(m));
  out["generators"] = std::move(arr);
  return out;
}

inline Json fan_to_json(const Fan& f) {
  Json out;
  Json rays = Json::array();
  for (const IntVec& r : f.ray_index) rays.push_back(int_vec_to_json(r));
  out["rays"] = std::move(rays);
  Json cones = Json::array();
  for (const Cone& c : f.maximal_cones) {
    Json idx = Json::array();
    for (const IntVec& r : c.rays) {
      auto it = std::lower_bound(f.ray_index.begin(), f.ray_index.end(), r, LexLess{});
      idx.push_back(static_cast<std::uint64_t>(it - f.ray_index.begin()));
    }
    cones.push_back(std::move(idx));
  }
  out["maximal_cones"] = std::move(cones);
  return out;
}

inline Json cone_generators_json(const Cone& c) {
  std::vector<IntVec> gens = c.rays;
  for (const IntVec& l : c.lineality_basis) {
    gens.push_back(l);
    gens.push_back(negate(l));
  }
  std::sort(gens.begin(), gens.end(), LexLess{});
  Json arr = Json::array();
  for (const IntVec& g : gens) arr.push_back(int_vec_to_json(g));
  return arr;
}

inline Json colored_to_json(const ColoredInput& in) {
  Json out;
  out["valuation_cone"] = Json{{"generators", cone_generators_json(in.valuation_cone)}};
  Json colors = Json::array();
  for (const Color& c : in.colors)
    colors.push_back(Json{{"name", c.name}, {"rho", int_vec_to_json(c.rho)}});
  out["colors"] = std::move(colors);
  Json cones = Json::array();
  for (const auto& [rays, names] : in.maximal_cones) {
    Json rays_json = Json::array();
    for (const IntVec& r : rays) rays_json.push_back(int_vec_to_json(r));
    Json names_json = Json::array();
    for (const std::string& n : names) names_json.push_back(n);
    cones.push_back(Json{{"rays", std::move(rays_json)}, {"colors", std::move(names_json)}});
  }
  out["maximal_cones"] = std::move(cones);
  return out;
}

inline Json certificate_to_json(const CertificatePayload& c) {
  Json out;
  out["type"] = c.type;
  out["context"] = c.context;
  if (c.orbit_rays) {
    Json rep;
    Json rays = Json::array();
    for (const IntVec& r : *c.orbit_rays) rays.push_back(int_vec_to_json(r));
    rep["rays"] = std::move(rays);
    if (c.orbit_colors) {
      Json names = Json::array();
      for (const std::string& n : *c.orbit_colors) names.push_back(n);
      rep["colors"] = std::move(names);
    }
    out["orbit_representative"] = std::move(rep);
  }
  if (c.type == "farkas") {
    Json ineq = Json::array();
    for (const Rat& m : c.farkas.ineq_multipliers) ineq.push_back(rat_to_json(m));
    Json eq = Json::array();
    for (const Rat& m : c.farkas.eq_multipliers) eq.push_back(rat_to_json(m));
    out["inequality_multipliers"] = std::move(ineq);
    out["equality_multipliers"] = std::move(eq);
  } else if (c.type == "support-family") {
    Json forms = Json::array();
    for (const RatVec& f : c.family.forms) forms.push_back(rat_vec_to_json(f));
    out["forms"] = std::move(forms);
  } else if (c.type == "cyclic-difference") {
    out["difference"] = rat_vec_to_json(c.cyclic.difference);
    Json cycle = Json::array();
    for (const CyclicStep& s : c.cyclic.steps)
      cycle.push_back(Json{{"cone", static_cast<std::uint64_t>(s.cone_index)},
                           {"point_in", rat_vec_to_json(s.point_in)},
                           {"point_next", rat_vec_to_json(s.point_next)}});
    out["cycle"] = std::move(cycle);
  } else {
    throw std::invalid_argument("unknown certificate type: " + c.type);
  }
  return out;
}

}  // namespace io_detail

inline std::string serialize(const Document& doc) {
  Json out;
  out["schema_version"] = doc.schema_version;
  out["kind"] = doc.kind;
  if (doc.kind == "verdict") {
    if (!doc.verdict) throw std::invalid_argument("verdict document without payload");
    for (auto& [key, value] : doc.verdict->items()) out[key] = value;
  } else {
    out["lattice_rank"] = static_cast<std::uint64_t>(doc.lattice_rank);
    if (doc.group) out["group"] = io_detail::group_to_json(*doc.group);
    if (doc.kind == "fan") {
      out["fan"] = io_detail::fan_to_json(document_fan(doc));
    } else if (doc.kind == "colored_fan") {
      if (!doc.colored) throw std::invalid_argument("colored fan document without payload");
      out["colored"] = io_detail::colored_to_json(*doc.colored);
    } else if (doc.kind == "certificate") {
      if (!doc.certificate) throw std::invalid_argument("certificate document without payload");
      out["certificate"] = io_detail::certificate_to_json(*doc.certificate);
    } else {
      throw std::invalid_argument("unknown document kind: " + doc.kind);
    }
  }
  if (!doc.notes.empty()) out["notes"] = doc.notes;
  return out.dump(2) + "\n";
}

namespace io_detail {

inline void expect_keys(const Json& j, const std::vector<std::string>& allowed,
                        const std::string& where) {
  for (auto& [key, value] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw std::invalid_argument("unexpected field \"" + key + "\" in " + where);
}

inline Cone cone_from_json(const Json& j, std::size_t rank, const std::string& where) {
  expect_keys(j, {"generators", "inequalities"}, where);
  if (j.contains("generators") == j.contains("inequalities"))
    throw std::invalid_argument(where + " needs exactly one of generators/inequalities");
  std::vector<IntVec> vecs;
  const Json& arr = j.contains("generators") ? j["generators"] : j["inequalities"];
  if (!arr.is_array()) throw std::invalid_argument(where + ": expected an array of vectors");
  for (const Json& v : arr) vecs.push_back(int_vec_from_json(v, rank));
  return j.contains("generators") ? cone_from_generators(rank, vecs)
                                  : cone_from_inequalities(rank, vecs);
}

}  // namespace io_detail

inline Document parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("document must be a JSON object");
  Document doc;
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    throw std::invalid_argument("missing schema_version");
  doc.schema_version = j["schema_version"].get<int>();
  if (doc.schema_version != 1)
    throw std::invalid_argument("unsupported schema_version");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("missing kind");
  doc.kind = j["kind"].get<std::string>();
  if (j.contains("notes")) doc.notes = j["notes"].get<std::string>();

  if (doc.kind == "verdict") {
    Json rest = Json::object();
    for (auto& [key, value] : j.items())
      if (key != "schema_version" && key != "kind" && key != "notes") rest[key] = value;
    doc.verdict = std::move(rest);
    return doc;
  }

  if (!j.contains("lattice_rank") || !j["lattice_rank"].is_number_integer())
    throw std::invalid_argument("missing lattice_rank");
  doc.lattice_rank = j["lattice_rank"].get<std::size_t>();
  if (doc.lattice_rank == 0) throw std::invalid_argument("lattice_rank must be positive");

  if (j.contains("group")) {
    const Json& g = j["group"];
    io_detail::expect_keys(g, {"generators"}, "group");
    std::vector<IntMatrix> gens;
    if (!g.contains("generators") || !g["generators"].is_array())
      throw std::invalid_argument("group needs a generators array");
    for (const Json& m : g["generators"]) gens.push_back(matrix_from_json(m, doc.lattice_rank));
    doc.group = group_closure(doc.lattice_rank, gens);
  }

  if (doc.kind == "fan") {
    if (!j.contains("fan")) throw std::invalid_argument("fan document without fan field");
    const Json& fj = j["fan"];
    io_detail::expect_keys(fj, {"rays", "maximal_cones"}, "fan");
    std::vector<IntVec> rays;
    if (!fj.contains("rays") || !fj["rays"].is_array())
      throw std::invalid_argument("fan needs a rays array");
    for (const Json& r : fj["rays"]) rays.push_back(int_vec_from_json(r, doc.lattice_rank));
    std::vector<Cone> cones;
    if (!fj.contains("maximal_cones") || !fj["maximal_cones"].is_array())
      throw std::invalid_argument("fan needs a maximal_cones array");
    for (const Json& cj : fj["maximal_cones"]) {
      if (!cj.is_array()) throw std::invalid_argument("maximal cone must be a ray index list");
      std::vector<IntVec> gens;
      for (const Json& ij : cj) {
        std::size_t idx = ij.get<std::size_t>();
        if (idx >= rays.size()) throw std::invalid_argument("ray index out of range");
        gens.push_back(rays[idx]);
      }
      cones.push_back(cone_from_generators(doc.lattice_rank, gens));
    }
    doc.fan = make_fan(doc.lattice_rank, std::move(cones));
    return doc;
  }

  if (doc.kind == "colored_fan") {
    if (!j.contains("colored"))
      throw std::invalid_argument("colored fan document without colored field");
    const Json& cj = j["colored"];
    io_detail::expect_keys(cj, {"valuation_cone", "colors", "maximal_cones"}, "colored");
    ColoredInput in;
    if (!cj.contains("valuation_cone"))
      throw std::invalid_argument("colored fan needs a valuation_cone");
    in.valuation_cone =
        io_detail::cone_from_json(cj["valuation_cone"], doc.lattice_rank, "valuation_cone");
    if (cj.contains("colors"))
      for (const Json& col : cj["colors"]) {
        io_detail::expect_keys(col, {"name", "rho"}, "color");
        if (!col.contains("name") || !col.contains("rho"))
          throw std::invalid_argument("color needs name and rho");
        in.colors.push_back(
            {col["name"].get<std::string>(), int_vec_from_json(col["rho"], doc.lattice_rank)});
      }
    if (!cj.contains("maximal_cones") || !cj["maximal_cones"].is_array())
      throw std::invalid_argument("colored fan needs a maximal_cones array");
    for (const Json& mc : cj["maximal_cones"]) {
      io_detail::expect_keys(mc, {"rays", "colors"}, "colored maximal cone");
      std::vector<IntVec> rays;
      if (!mc.contains("rays") || !mc["rays"].is_array())
        throw std::invalid_argument("colored cone needs a rays array");
      for (const Json& r : mc["rays"]) rays.push_back(int_vec_from_json(r, doc.lattice_rank));
      std::vector<std::string> names;
      if (mc.contains("colors"))
        for (const Json& n : mc["colors"]) names.push_back(n.get<std::string>());
      std::sort(names.begin(), names.end());
      names.erase(std::unique(names.begin(), names.end()), names.end());
      std::sort(rays.begin(), rays.end(), LexLess{});
      in.maximal_cones.emplace_back(std::move(rays), std::move(names));
    }
    std::sort(in.maximal_cones.begin(), in.maximal_cones.end());
    doc.colored = std::move(in);
    return doc;
  }

  if (doc.kind == "certificate") {
    if (!j.contains("certificate"))
      throw std::invalid_argument("certificate document without certificate field");
    const Json& cj = j["certificate"];
    CertificatePayload payload;
    if (!cj.contains("type")) throw std::invalid_argument("certificate needs a type");
    payload.type = cj["type"].get<std::string>();
    payload.context = cj.contains("context") ? cj["context"].get<std::string>() : "qp";
    if (cj.contains("orbit_representative")) {
      const Json& rep = cj["orbit_representative"];
      std::vector<IntVec> rays;
      for (const Json& r : rep["rays"]) rays.push_back(int_vec_from_json(r, doc.lattice_rank));
      payload.orbit_rays = std::move(rays);
      if (rep.contains("colors")) {
        std::vector<std::string> names;
        for (const Json& n : rep["colors"]) names.push_back(n.get<std::string>());
        payload.orbit_colors = std::move(names);
      }
    }
    if (payload.type == "farkas") {
      for (const Json& m : cj["inequality_multipliers"])
        payload.farkas.ineq_multipliers.push_back(rat_from_json(m));
      for (const Json& m : cj["equality_multipliers"])
        payload.farkas.eq_multipliers.push_back(rat_from_json(m));
    } else if (payload.type == "support-family") {
      for (const Json& f : cj["forms"])
        payload.family.forms.push_back(rat_vec_from_json(f, doc.lattice_rank));
    } else if (payload.type == "cyclic-difference") {
      payload.cyclic.difference = rat_vec_from_json(cj["difference"], doc.lattice_rank);
      for (const Json& s : cj["cycle"]) {
        CyclicStep step;
        step.cone_index = s["cone"].get<std::size_t>();
        step.point_in = rat_vec_from_json(s["point_in"], doc.lattice_rank);
        step.point_next = rat_vec_from_json(s["point_next"], doc.lattice_rank);
        payload.cyclic.steps.push_back(std::move(step));
      }
    } else {
      throw std::invalid_argument("unknown certificate type: " + payload.type);
    }
    doc.certificate = std::move(payload);
    return doc;
  }

  throw std::invalid_argument("unknown document kind: " + doc.kind);
}

// ---------------------------------------------------------------------------
// certificate verification: pure arithmetic re-checks with no solver call

inline bool verify_certificate(const Document& subject, const Document& cert_doc) {
  if (cert_doc.kind != "certificate" || !cert_doc.certificate)
    throw std::invalid_argument("second document is not a certificate");
  const CertificatePayload& cert = *cert_doc.certificate;

  auto check_against_system =
      [&](const LinearSystem& sys, const auto& family_check) -> bool {
    if (cert.type == "farkas") return verify_farkas(sys, cert.farkas);
    if (cert.type == "support-family") return family_check(cert.family);
    throw std::invalid_argument("certificate type does not fit the context");
  };

  if (cert.context == "qp") {
    const Fan& f = document_fan(subject);
    if (cert.type == "cyclic-difference") return verify_cyclic_certificate(f, cert.cyclic);
    return check_against_system(encode_fan_qp(f), [&](const SupportFamily& fam) {
      return verify_support_family(f, fam);
    });
  }
  if (cert.context == "descent-orbit") {
    const Fan& f = document_fan(subject);
    if (!cert.orbit_rays) throw std::invalid_argument("descent certificate without orbit data");
    Cone rep = cone_from_generators(subject.lattice_rank, *cert.orbit_rays);
    FiniteMatrixGroup grp =
        subject.group ? *subject.group : trivial_group(subject.lattice_rank);
    Fan orbit_fan = orbit_subfan(f, rep, grp);
    return check_against_system(encode_fan_qp(orbit_fan), [&](const SupportFamily& fam) {
      return verify_support_family(orbit_fan, fam);
    });
  }
  if (cert.context == "qp-colored" || cert.context == "descent-orbit-colored") {
    ColoredFan cf = build_colored_fan(subject);
    if (cert.context == "descent-orbit-colored") {
      if (!cert.orbit_rays) throw std::invalid_argument("descent certificate without orbit data");
      ColoredCone rep = make_colored_cone(
          cone_from_generators(subject.lattice_rank, *cert.orbit_rays),
          cert.orbit_colors.value_or(std::vector<std::string>{}));
      std::vector<ColoredCone> cones;
      for (std::size_t ei = 0; ei < cf.datum.group.elements.size(); ++ei)
        cones.push_back(colored_image(cf.datum, rep, ei));
      cf = make_colored_fan(cf.datum, std::move(cones));
    }
    return check_against_system(encode_colored_qp(cf), [&](const SupportFamily& fam) {
      return verify_support_family_colored(cf, fam);
    });
  }
  throw std::invalid_argument("unknown certificate context: " + cert.context);
}

// ---------------------------------------------------------------------------
// document builders

inline Document fan_document(std::size_t rank, Fan fan, FiniteMatrixGroup group,
                             std::string notes = "") {
  Document doc;
  doc.kind = "fan";
  doc.lattice_rank = rank;
  doc.fan = std::move(fan);
  doc.group = std::move(group);
  doc.notes = std::move(notes);
  return doc;
}

inline Document colored_fan_document(const ColoredFan& cf, std::string notes = "") {
  Document doc;
  doc.kind = "colored_fan";
  doc.lattice_rank = cf.datum.rank;
  doc.group = cf.datum.group;
  ColoredInput in;
  in.valuation_cone = cf.datum.valuation_cone;
  in.colors = cf.datum.colors;
  for (const ColoredCone& cc : cf.maximal) in.maximal_cones.emplace_back(cc.cone.rays, cc.colors);
  std::sort(in.maximal_cones.begin(), in.maximal_cones.end());
  doc.colored = std::move(in);
  doc.notes = std::move(notes);
  return doc;
}

inline Document certificate_document(std::size_t rank, CertificatePayload payload,
                                     std::string notes = "") {
  Document doc;
  doc.kind = "certificate";
  doc.lattice_rank = rank;
  doc.certificate = std::move(payload);
  doc.notes = std::move(notes);
  return doc;
}

}  // namespace galfan
