#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "backbone_solver.hpp"
#include "cmatrix.hpp"
#include "half_int.hpp"
#include "rational.hpp"
#include "representation.hpp"

namespace dsirrep::io {

using nlohmann::json;

/// Malformed or unreadable document.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string &path, const json &doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << doc.dump(1) << '\n';
}

// Half-integers are strings ("3/2") on output; integers are also accepted on input.
inline json half_to_json(HalfInt h) { return h.is_integer() ? json(h.twice() / 2) : json(h.to_string()); }

inline HalfInt half_from_json(const json &j, const std::string &what) {
  if (j.is_number_integer()) return HalfInt::integer(j.get<int>());
  if (j.is_string()) {
    try {
      return HalfInt::parse(j.get<std::string>());
    } catch (const std::invalid_argument &e) {
      throw ParseError(what + ": " + e.what());
    }
  }
  throw ParseError(what + ": expected an integer or a string such as \"3/2\"");
}

inline Algebra algebra_from_string(const std::string &s) {
  if (s == "ds") return Algebra::dS;
  if (s == "ads") return Algebra::AdS;
  throw ParseError("algebra must be \"ds\" or \"ads\", got \"" + s + "\"");
}

struct BackboneDocument {
  BackboneGraph graph;
  Algebra algebra = Algebra::dS;
};

inline json backbone_to_json(const BackboneGraph &g) {
  json blocks = json::array(), edges = json::array();
  for (const auto &b : g.blocks) blocks.push_back({{"A", half_to_json(b.A)}, {"B", half_to_json(b.B)}});
  for (const auto &e : g.edges) edges.push_back({e.p, e.q});
  json out{{"blocks", blocks}, {"edges", edges}};
  if (!g.names.empty()) out["names"] = g.names;
  return out;
}

inline BackboneGraph backbone_from_json(const json &j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw ParseError("backbone: missing \"blocks\" array");
  BackboneGraph g;
  for (std::size_t i = 0; i < j["blocks"].size(); ++i) {
    const auto &b = j["blocks"][i];
    const std::string where = "block " + std::to_string(i);
    if (!b.is_object() || !b.contains("A") || !b.contains("B")) throw ParseError(where + ": needs \"A\" and \"B\"");
    try {
      g.blocks.emplace_back(half_from_json(b["A"], where + " A"), half_from_json(b["B"], where + " B"));
    } catch (const DomainError &e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("backbone: \"edges\" must be an array");
    for (const auto &e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
        throw ParseError("backbone: each edge must be a pair of block indices");
      g.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
    }
  }
  if (j.contains("names")) {
    if (!j["names"].is_array() || j["names"].size() != g.blocks.size())
      throw ParseError("backbone: \"names\" must list one name per block");
    for (const auto &n : j["names"]) g.names.push_back(n.is_string() ? n.get<std::string>() : n.dump());
  }
  try {
    g.check_indices();
  } catch (const DomainError &e) {
    throw ParseError(std::string("backbone: ") + e.what());
  }
  return g;
}

inline BackboneDocument backbone_document_from_json(const json &j) {
  BackboneDocument doc;
  const json &bb = j.contains("backbone") ? j["backbone"] : j;
  doc.graph = backbone_from_json(bb);
  if (j.contains("algebra")) {
    if (!j["algebra"].is_string()) throw ParseError("\"algebra\" must be a string");
    doc.algebra = algebra_from_string(j["algebra"].get<std::string>());
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Matrices as sparse triplets
// ---------------------------------------------------------------------------

inline json matrix_to_json(std::string_view name, const CMatrix &m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (m(r, c) != Complex(0.0, 0.0)) entries.push_back({r, c, m(r, c).real(), m(r, c).imag()});
  return {{"name", name}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline CMatrix matrix_from_json(const json &j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("matrix: needs \"rows\", \"cols\" and \"entries\"");
  const auto rows = j["rows"].get<Eigen::Index>(), cols = j["cols"].get<Eigen::Index>();
  if (rows < 0 || cols < 0) throw ParseError("matrix: negative size");
  CMatrix m = zeros(rows, cols);
  for (const auto &e : j["entries"]) {
    if (!e.is_array() || e.size() != 4) throw ParseError("matrix: entries are [row, col, re, im]");
    const auto r = e[0].get<Eigen::Index>(), c = e[1].get<Eigen::Index>();
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw ParseError("matrix: entry outside the matrix");
    m(r, c) = Complex(e[2].get<double>(), e[3].get<double>());
  }
  return m;
}

// ---------------------------------------------------------------------------
// Representation documents
// ---------------------------------------------------------------------------

inline json representation_to_json(const GeneratorSet &g, std::optional<CanonicalSpec> spec = std::nullopt) {
  json t = json::array();
  for (const auto &c : g.couplings) t.push_back({c.t_pq, c.t_qp});
  json gens = json::array();
  for (auto name : kGeneratorNames) gens.push_back(matrix_to_json(name, g.generator(name)));
  json out{{"kind", "representation"},
           {"algebra", algebra_name(g.algebra)},
           {"dimension", g.dim()},
           {"backbone", backbone_to_json(g.backbone)},
           {"t", t},
           {"generators", gens}};
  if (spec) {
    out["family"] = family_name(spec->family);
    out["n"] = spec->n;
  }
  return out;
}

/// Generators as stored, with the backbone and t values they claim to come from.
struct RepresentationDocument {
  GeneratorSet generators;
  bool has_couplings = false;
};

inline RepresentationDocument representation_from_json(const json &j) {
  RepresentationDocument doc;
  auto &g = doc.generators;
  try {
    if (!j.is_object() || !j.contains("generators")) throw ParseError("representation: missing \"generators\"");
    g.algebra = j.contains("algebra") ? algebra_from_string(j["algebra"].get<std::string>()) : Algebra::dS;
    if (j.contains("backbone")) g.backbone = backbone_from_json(j["backbone"]);

    std::vector<bool> seen(kGeneratorNames.size(), false);
    for (const auto &m : j["generators"]) {
      const auto name = m.at("name").get<std::string>();
      const auto it = std::find(kGeneratorNames.begin(), kGeneratorNames.end(), name);
      if (it == kGeneratorNames.end()) throw ParseError("representation: unknown generator \"" + name + "\"");
      g.generator(name) = matrix_from_json(m);
      seen[std::size_t(it - kGeneratorNames.begin())] = true;
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k]) throw ParseError("representation: generator " + std::string(kGeneratorNames[k]) + " missing");
    const auto n = g.vt.rows();
    for (auto name : kGeneratorNames) {
      const auto &m = g.generator(name);
      if (m.rows() != n || m.cols() != n)
        throw ParseError("representation: generator " + std::string(name) + " is not " + std::to_string(n) + "x" +
                         std::to_string(n));
    }

    if (j.contains("t")) {
      for (const auto &t : j["t"]) {
        if (!t.is_array() || t.size() != 2) throw ParseError("representation: each t entry is [t_PQ, t_QP]");
        g.couplings.push_back({t[0].get<double>(), t[1].get<double>()});
      }
      if (g.couplings.size() != g.backbone.edges.size())
        throw ParseError("representation: " + std::to_string(g.couplings.size()) + " t entries for " +
                         std::to_string(g.backbone.edges.size()) + " edges");
      doc.has_couplings = !g.backbone.blocks.empty();
    }
  } catch (const json::exception &e) {
    throw ParseError(std::string("representation: ") + e.what());
  }
  return doc;
}

} // namespace dsirrep::io
