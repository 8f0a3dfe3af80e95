// JSON serialization for models, reduced-level data, quasi-polynomials, and
// certificates. Rationals round-trip exactly: integers stay integers, proper
// fractions become "p/q" strings, and nothing passes through floating point.
#pragma once

#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include "json.hpp"
#include "qr/examples.hpp"
#include "qr/quasipoly.hpp"
#include "qr/reduction.hpp"

namespace qr {

using nlohmann::json;

inline json rat_json(const Rat& q) {
  if (is_integer(q) && num(q) >= std::numeric_limits<int64_t>::min() &&
      num(q) <= std::numeric_limits<int64_t>::max())
    return num(q).convert_to<int64_t>();
  return rat_to_string(q);
}

inline json int_json(const Int& n) { return rat_json(Rat(n)); }

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<int64_t>()));
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw InputError("expected an integer or fraction string");
}

inline Int int_from_json(const json& j) {
  Rat q = rat_from_json(j);
  if (!is_integer(q)) throw InputError("expected an integer");
  return num(q);
}

inline json weight_json(const VecQ& w) {
  json a = json::array();
  for (const auto& c : w) a.push_back(rat_json(c));
  return a;
}

inline VecQ weight_from_json(const json& j) {
  VecQ w;
  for (const auto& c : j) w.push_back(rat_from_json(c));
  return w;
}

inline json vecz_json(const VecZ& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(int_json(c));
  return a;
}

inline VecZ vecz_from_json(const json& j) {
  VecZ v;
  for (const auto& c : j) v.push_back(int_from_json(c));
  return v;
}

inline json reduced_data_json(const ReducedLevelData& data) {
  json points = json::array();
  for (const auto& pt : data.points) {
    json phases = json::array();
    for (const auto& r : pt.gl_phase) phases.push_back(rat_json(r));
    points.push_back(json{{"gL", phases}});
  }
  json group = json::array();
  for (const auto& g : data.group) group.push_back(weight_json(g));
  return json{{"xi", weight_json(data.xi)},
              {"group", group},
              {"d", int_json(data.d)},
              {"points", points}};
}

inline ReducedLevelData reduced_data_from_json(const json& j) {
  ReducedLevelData data;
  data.xi = weight_from_json(j.at("xi"));
  for (const auto& g : j.at("group")) data.group.push_back(weight_from_json(g));
  data.d = int_from_json(j.at("d"));
  for (const auto& p : j.at("points")) {
    OrbifoldPoint pt;
    for (const auto& r : p.at("gL")) pt.gl_phase.push_back(rat_from_json(r));
    data.points.push_back(std::move(pt));
  }
  data.validate();
  return data;
}

inline json model_document(const ExampleModel& ex) {
  json gram = json::array();
  for (const auto& row : ex.model.lattice.gram) gram.push_back(weight_json(row));
  json points = json::array();
  for (const auto& p : ex.model.points) {
    json wts = json::array();
    for (const auto& w : p.tangent_weights) wts.push_back(weight_json(w));
    points.push_back(json{{"mu", weight_json(p.mu)}, {"tangent_weights", wts}});
  }
  json doc{{"lattice", json{{"rank", ex.model.lattice.rank}, {"gram", gram}}},
           {"fixed_points", points}};
  if (!ex.simple_roots.empty()) {
    json simple = json::array();
    for (const auto& a : ex.simple_roots) simple.push_back(weight_json(a));
    doc["roots"] = json{{"simple", simple}};
  }
  if (!ex.model.edges.empty()) {
    json edges = json::array();
    for (const auto& e : ex.model.edges)
      edges.push_back(json::array({e.a, e.b, weight_json(e.weight)}));
    doc["edges"] = edges;
  }
  json meta{{"name", ex.name},
            {"description", ex.description},
            {"delta_is_kirwan", ex.delta_is_kirwan}};
  if (ex.suggested_xi) meta["suggested_xi"] = weight_json(*ex.suggested_xi);
  if (ex.reduced_data) meta["reduced_data"] = reduced_data_json(*ex.reduced_data);
  doc["metadata"] = meta;
  return doc;
}

inline ExampleModel parse_model_document(const json& j) {
  try {
    ExampleModel ex;
    ex.model.lattice.rank = j.at("lattice").at("rank").get<int>();
    for (const auto& row : j.at("lattice").at("gram"))
      ex.model.lattice.gram.push_back(weight_from_json(row));
    ex.model.lattice.validate();
    for (const auto& p : j.at("fixed_points")) {
      FixedPoint pt;
      pt.mu = weight_from_json(p.at("mu"));
      for (const auto& w : p.at("tangent_weights")) pt.tangent_weights.push_back(weight_from_json(w));
      ex.model.points.push_back(std::move(pt));
    }
    if (j.contains("roots"))
      for (const auto& a : j.at("roots").at("simple")) ex.simple_roots.push_back(weight_from_json(a));
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) {
        GkmEdge edge;
        edge.a = e.at(0).get<int>();
        edge.b = e.at(1).get<int>();
        edge.weight = weight_from_json(e.at(2));
        ex.model.edges.push_back(std::move(edge));
      }
    if (j.contains("metadata")) {
      const json& meta = j.at("metadata");
      ex.name = meta.value("name", std::string("unnamed"));
      ex.description = meta.value("description", std::string());
      ex.delta_is_kirwan = meta.value("delta_is_kirwan", true);
      if (meta.contains("suggested_xi")) ex.suggested_xi = weight_from_json(meta.at("suggested_xi"));
      if (meta.contains("reduced_data"))
        ex.reduced_data = reduced_data_from_json(meta.at("reduced_data"));
    }
    ex.model.validate();
    if (!ex.model.edges.empty()) ex.model.validate_edges();
    return ex;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad model document: ") + e.what());
  }
}

inline json polynomial_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [expo, coeff] : p.terms) {
    json ev = json::array();
    for (int e : expo) ev.push_back(e);
    terms.push_back(json{{"exponents", ev}, {"coeff", rat_json(coeff)}});
  }
  return terms;
}

inline Polynomial polynomial_from_json(const json& j) {
  Polynomial p;
  for (const auto& t : j) {
    std::vector<int> expo;
    for (const auto& e : t.at("exponents")) expo.push_back(e.get<int>());
    p.terms[expo] = rat_from_json(t.at("coeff"));
  }
  return p;
}

inline json quasipoly_json(const QuasiPolynomial& qp) {
  json period = json::array();
  for (const auto& row : qp.period) period.push_back(vecz_json(row));
  json cosets = json::array();
  for (const auto& [rep, poly] : qp.cosets)
    cosets.push_back(json{{"rep", vecz_json(rep)}, {"monomial_coefficients", polynomial_json(poly)}});
  return json{{"nvars", qp.nvars},
              {"period_matrix", period},
              {"cosets", cosets},
              {"degree", qp.degree_bound},
              {"scalar_period", qp.scalar_period}};
}

inline QuasiPolynomial quasipoly_from_json(const json& j) {
  QuasiPolynomial qp;
  qp.nvars = j.at("nvars").get<size_t>();
  for (const auto& row : j.at("period_matrix")) qp.period.push_back(vecz_from_json(row));
  for (const auto& c : j.at("cosets"))
    qp.cosets[vecz_from_json(c.at("rep"))] = polynomial_from_json(c.at("monomial_coefficients"));
  qp.degree_bound = j.at("degree").get<int>();
  qp.scalar_period = j.at("scalar_period").get<int>();
  return qp;
}

inline json certificate_json(const QRCertificate& cert) {
  json comparisons = json::array();
  for (const auto& c : cert.comparisons)
    comparisons.push_back(json{{"k", int_json(c.k)},
                               {"lambda", vecz_json(c.lambda)},
                               {"left", int_json(c.left)},
                               {"right", rat_json(c.right)}});
  json out{{"model", cert.model_id},
           {"mode", cert.mode == QRMode::PointCase  ? "point-case"
                    : cert.mode == QRMode::FitCase ? "fit-case"
                                                   : "vanishing"},
           {"comparisons", comparisons},
           {"mismatches", cert.mismatches},
           {"pass", cert.pass}};
  if (cert.xi) {
    out["xi"] = weight_json(*cert.xi);
    out["xi_chamber_verified"] = cert.xi_chamber_verified;
  }
  if (cert.gamma) out["gamma"] = weight_json(*cert.gamma);
  if (cert.level_data) out["level_data"] = reduced_data_json(*cert.level_data);
  if (cert.fit) out["fit"] = quasipoly_json(*cert.fit);
  return out;
}

// FNV-1a, for stable input fingerprints in reports.
inline std::string hash_hex(const std::string& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace qr
