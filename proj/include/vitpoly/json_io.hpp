#pragma once

#include "vitpoly/catalog.hpp"
#include "vitpoly/chain.hpp"
#include "vitpoly/hull.hpp"
#include "vitpoly/rational.hpp"
#include "vitpoly/sequence.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

namespace vitpoly::io {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

inline void require_schema(const json& j, const std::string& kind) {
  if (!j.is_object() || !j.contains("schema_version"))
    throw FormatError(kind + ": missing schema_version");
  int v = j.at("schema_version").get<int>();
  if (v != kSchemaVersion)
    throw FormatError(kind + ": schema_version " + std::to_string(v) + " is not supported (expected " +
                      std::to_string(kSchemaVersion) + "); regenerate the file");
}

// ---- rationals: exact "num/den" strings ----

inline json to_json(const Rational& r) { return format_rational(r); }
inline Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw FormatError("rational: expected \"num/den\" string");
  return parse_rational(j.get<std::string>());
}

inline json to_json(const RVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}
inline RVec rvec_from_json(const json& j) {
  RVec out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

inline json to_json(const RMat& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(to_json(row));
  return out;
}
inline RMat rmat_from_json(const json& j) {
  RMat out;
  for (const auto& row : j) out.push_back(rvec_from_json(row));
  return out;
}

// ---- domain types ----

inline json to_json(const Sequence& s) { return json{{"k", s.k}, {"states", s.states}}; }
inline Sequence sequence_from_json(const json& j) {
  Sequence s(j.at("k").get<int>(), j.at("states").get<std::vector<int>>());
  if (!s.well_formed()) throw FormatError("sequence: malformed");
  return s;
}

inline json to_json(const ExponentVector& ev) {
  return json{{"k", ev.k}, {"start", ev.start}, {"counts", ev.counts}};
}
inline ExponentVector exponent_from_json(const json& j) {
  ExponentVector ev(j.at("k").get<int>(), j.at("start").get<int>(),
                    j.at("counts").get<std::vector<long long>>());
  if (static_cast<int>(ev.counts.size()) != ev.k * ev.k)
    throw FormatError("exponent vector: bad counts size");
  return ev;
}

inline json to_json(const MarkovChain& c) {
  return json{{"k", c.k}, {"pi", to_json(c.pi)}, {"p", to_json(c.p)}};
}
inline MarkovChain chain_from_json(const json& j) {
  MarkovChain c(j.at("k").get<int>(), rvec_from_json(j.at("pi")), rmat_from_json(j.at("p")));
  c.validate();
  return c;
}

inline json to_json(const WeightScheme& w) {
  json out{{"k", w.k}, {"w", to_json(w.w)}};
  if (w.omega) out["omega"] = to_json(*w.omega);
  return out;
}
inline WeightScheme weights_from_json(const json& j) {
  WeightScheme w(j.at("k").get<int>(), rmat_from_json(j.at("w")));
  if (j.contains("omega")) w.omega = rvec_from_json(j.at("omega"));
  w.validate();
  return w;
}

// ---- classification and catalogs ----

inline json to_json(const Classification& c) {
  json out{{"status", to_string(c.status)},
           {"competitors_impossible", c.competitors_impossible},
           {"budget",
            {{"seeds_tried", c.budget.seeds_tried},
             {"cone_lps", c.budget.cone_lps},
             {"restarts", c.budget.restarts},
             {"steps", c.budget.steps},
             {"verifications", c.budget.verifications}}}};
  if (c.witness) out["witness"] = to_json(*c.witness);
  if (c.margin_ratio) out["margin_ratio"] = to_json(*c.margin_ratio);
  if (c.impossibility_tag) out["impossibility_tag"] = *c.impossibility_tag;
  return out;
}
inline Classification classification_from_json(const json& j) {
  Classification c;
  c.status = entry_status_from_string(j.at("status").get<std::string>());
  c.competitors_impossible = j.value("competitors_impossible", false);
  if (j.contains("witness")) c.witness = chain_from_json(j.at("witness"));
  if (j.contains("margin_ratio")) c.margin_ratio = rational_from_json(j.at("margin_ratio"));
  if (j.contains("impossibility_tag"))
    c.impossibility_tag = j.at("impossibility_tag").get<std::string>();
  if (j.contains("budget")) {
    const auto& b = j.at("budget");
    c.budget.seeds_tried = b.value("seeds_tried", 0ll);
    c.budget.cone_lps = b.value("cone_lps", 0ll);
    c.budget.restarts = b.value("restarts", 0ll);
    c.budget.steps = b.value("steps", 0ll);
    c.budget.verifications = b.value("verifications", 0ll);
  }
  return c;
}

inline json to_json(const CatalogEntry& e) {
  json out{{"exponents", to_json(e.exponents)},
           {"representative", to_json(e.representative)},
           {"witness", to_json(e.witness)},
           {"status", to_string(e.status)}};
  if (e.classification) out["classification"] = to_json(*e.classification);
  return out;
}
inline CatalogEntry entry_from_json(const json& j) {
  CatalogEntry e;
  e.exponents = exponent_from_json(j.at("exponents"));
  e.representative = sequence_from_json(j.at("representative"));
  e.witness = rmat_from_json(j.at("witness"));
  e.status = entry_status_from_string(j.at("status").get<std::string>());
  if (j.contains("classification")) e.classification = classification_from_json(j.at("classification"));
  return e;
}

inline json to_json(const VertexCatalog& cat) {
  json entries = json::array();
  for (const auto& e : cat.entries) entries.push_back(to_json(e));
  return json{{"schema_version", kSchemaVersion}, {"kind", "catalog"},   {"k", cat.k},
              {"n", cat.n},                       {"start", cat.start}, {"entries", entries}};
}
inline VertexCatalog catalog_from_json(const json& j) {
  require_schema(j, "catalog");
  if (j.value("kind", "") != "catalog") throw FormatError("catalog: wrong kind");
  VertexCatalog cat;
  cat.k = j.at("k").get<int>();
  cat.n = j.at("n").get<int>();
  cat.start = j.at("start").get<int>();
  for (const auto& e : j.at("entries")) cat.entries.push_back(entry_from_json(e));
  return cat;
}

// ---- polytopes ----

inline json polytope_to_json(const hull::PointSet& ps, const hull::HullReport& report) {
  json witnesses = json::array();
  for (const auto& w : report.witnesses)
    witnesses.push_back(w ? to_json(*w) : json(nullptr));
  json edges = json::array();
  for (const auto& [a, b] : report.edges) edges.push_back(json::array({a, b}));
  json out{{"schema_version", kSchemaVersion},
           {"kind", "polytope"},
           {"dim", ps.dim},
           {"points", ps.points},
           {"vertex_flags", std::vector<int>(report.vertex_flags.begin(), report.vertex_flags.end())},
           {"witnesses", witnesses},
           {"edges", edges}};
  if (report.f_vector) out["f_vector"] = *report.f_vector;
  return out;
}

// `.poly`-style plain text: one point per line, coordinates space-separated.
inline std::string polytope_to_poly_text(const hull::PointSet& ps) {
  std::string out;
  for (const auto& p : ps.points) {
    for (size_t i = 0; i < p.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(p[i]);
    }
    out += '\n';
  }
  return out;
}

// ---- files ----

inline void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  return j;
}

inline std::string catalog_filename(int k, int n, int start) {
  return "catalog_k" + std::to_string(k) + "_n" + std::to_string(n) + "_s" +
         std::to_string(start) + ".json";
}

}  // namespace vitpoly::io
