#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgraph/cardinal.hpp"
#include "tgraph/errors.hpp"
#include "tgraph/factor_map.hpp"
#include "tgraph/graph.hpp"
#include "tgraph/projective.hpp"

namespace tgraph {

using json = nlohmann::json;

inline json cardinal_to_json(Cardinal c) {
  if (c.is_omega()) return "omega";
  return c.finite();
}

inline Cardinal cardinal_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "omega") return Cardinal::omega();
    throw ParseError("mult must be a positive integer or \"omega\"");
  }
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
    throw ParseError("mult must be a positive integer or \"omega\"");
  return Cardinal(j.get<std::uint64_t>());
}

inline TopGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ParseError("graph needs 'vertices' and 'edges' fields");
  if (!j["vertices"].is_array() || !j["edges"].is_array())
    throw ParseError("'vertices' and 'edges' must be lists");
  TopGraph g;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ParseError("vertex ids must be strings");
    g.add_vertex(v.get<std::string>());
  }
  for (const auto& e : j["edges"]) {
    if (!e.is_object() || !e.contains("id") || !e.contains("dom") ||
        !e.contains("ran"))
      throw ParseError("edges need 'id', 'dom', 'ran' (and optional 'mult')");
    EdgeClass c;
    c.id = e["id"].get<std::string>();
    c.dom = e["dom"].get<std::string>();
    c.ran = e["ran"].get<std::string>();
    c.mult = e.contains("mult") ? cardinal_from_json(e["mult"]) : Cardinal(1);
    g.add_class(std::move(c));
  }
  return g;
}

inline json graph_to_json(const TopGraph& g) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices()) j["vertices"].push_back(v);
  j["edges"] = json::array();
  for (const auto& [id, c] : g.classes()) {
    json e;
    e["id"] = c.id;
    e["dom"] = c.dom;
    e["ran"] = c.ran;
    e["mult"] = cardinal_to_json(c.mult);
    j["edges"].push_back(std::move(e));
  }
  return j;
}

namespace detail {

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("bad JSON in '" + path.string() + "': " + e.what());
  }
  return j;
}

// A graph position may hold a file reference (resolved against base) or an
// inline object.
inline TopGraph resolve_graph(const json& j, const std::filesystem::path& base) {
  if (j.is_string()) {
    auto path = base / j.get<std::string>();
    return graph_from_json(read_json_file(path));
  }
  return graph_from_json(j);
}

}  // namespace detail

constexpr const char* kInfinity = "infinity";

/// Factor-map schema: source/target graphs (file reference or inline) plus
/// vertex_map and edge_map objects. The reserved value "infinity" marks an
/// unmapped item; so does omitting it.
inline FactorMap map_from_json(const json& j, const std::filesystem::path& base) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target"))
    throw ParseError("factor map needs 'source' and 'target'");
  FactorMap m;
  m.source = detail::resolve_graph(j["source"], base);
  m.target = detail::resolve_graph(j["target"], base);
  auto read_partial = [](const json& obj, std::map<std::string, std::string>& into) {
    if (obj.is_null()) return;
    if (!obj.is_object()) throw ParseError("maps must be objects of id -> id");
    for (const auto& [k, v] : obj.items()) {
      if (!v.is_string()) throw ParseError("map values must be strings");
      auto s = v.get<std::string>();
      if (s == kInfinity) continue;
      into[k] = s;
    }
  };
  read_partial(j.value("vertex_map", json::object()), m.vertex_map);
  read_partial(j.value("edge_map", json::object()), m.edge_map);
  return m;
}

inline json map_to_json(const FactorMap& m) {
  json j;
  j["source"] = graph_to_json(m.source);
  j["target"] = graph_to_json(m.target);
  j["vertex_map"] = json::object();
  for (const auto& v : m.source.vertices()) {
    auto img = m.vertex_image(v);
    j["vertex_map"][v] = img ? json(*img) : json(kInfinity);
  }
  j["edge_map"] = json::object();
  for (const auto& [id, c] : m.source.classes()) {
    auto img = m.edge_image(id);
    j["edge_map"][id] = img ? json(*img) : json(kInfinity);
  }
  return j;
}

/// System schema: either {"stationary": {"graph": g, "map": m}} or
/// {"stages": [g0, g1, ...], "maps": [m0, ...]} with m_k joining stage k+1
/// to stage k. Graphs and maps may be file references or inline; maps inside
/// a system may omit source/target, which are filled from the stages.
inline ProjectiveSystem system_from_json(const json& j,
                                         const std::filesystem::path& base) {
  if (j.contains("stationary")) {
    const json& st = j["stationary"];
    if (!st.is_object() || !st.contains("graph") || !st.contains("map"))
      throw ParseError("stationary system needs 'graph' and 'map'");
    TopGraph g = detail::resolve_graph(st["graph"], base);
    json mj = st["map"];
    if (mj.is_string()) mj = detail::read_json_file(base / mj.get<std::string>());
    if (!mj.contains("source")) mj["source"] = graph_to_json(g);
    if (!mj.contains("target")) mj["target"] = graph_to_json(g);
    FactorMap m = map_from_json(mj, base);
    return ProjectiveSystem::make_stationary(std::move(g), std::move(m));
  }
  if (!j.contains("stages") || !j["stages"].is_array())
    throw ParseError("system needs 'stages' or 'stationary'");
  std::vector<TopGraph> stages;
  for (const auto& s : j["stages"]) stages.push_back(detail::resolve_graph(s, base));
  std::vector<FactorMap> maps;
  const json& mlist = j.value("maps", json::array());
  for (std::size_t k = 0; k < mlist.size(); ++k) {
    json mj = mlist[k];
    if (mj.is_string()) mj = detail::read_json_file(base / mj.get<std::string>());
    if (k + 1 < stages.size()) {
      if (!mj.contains("source")) mj["source"] = graph_to_json(stages[k + 1]);
      if (!mj.contains("target")) mj["target"] = graph_to_json(stages[k]);
    }
    maps.push_back(map_from_json(mj, base));
  }
  return ProjectiveSystem::make_explicit(std::move(stages), std::move(maps));
}

inline json system_to_json(const ProjectiveSystem& s) {
  json j;
  if (s.stationary()) {
    j["stationary"]["graph"] = graph_to_json(s.stage(0));
    j["stationary"]["map"] = map_to_json(s.map(0));
    return j;
  }
  j["stages"] = json::array();
  for (std::size_t k = 0; k < *s.stage_count(); ++k)
    j["stages"].push_back(graph_to_json(s.stage(k)));
  j["maps"] = json::array();
  for (std::size_t k = 0; k < s.map_count(); ++k)
    j["maps"].push_back(map_to_json(s.map(k)));
  return j;
}

inline BratteliData bratteli_from_json(const json& j) {
  if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array())
    throw ParseError("bratteli data needs a 'levels' list");
  BratteliData b;
  for (const auto& level : j["levels"]) {
    if (!level.is_array()) throw ParseError("each level must be a list");
    std::vector<std::uint64_t> row;
    for (const auto& k : level) {
      if (!k.is_number_unsigned()) throw ParseError("level entries must be non-negative integers");
      row.push_back(k.get<std::uint64_t>());
    }
    b.levels.push_back(std::move(row));
  }
  for (const auto& sigma : j.value("multiplicities", json::array())) {
    if (!sigma.is_array()) throw ParseError("each multiplicity matrix must be a list of rows");
    std::vector<std::vector<std::uint64_t>> mat;
    for (const auto& row : sigma) {
      if (!row.is_array()) throw ParseError("matrix rows must be lists");
      std::vector<std::uint64_t> r;
      for (const auto& x : row) {
        if (!x.is_number_unsigned())
          throw ParseError("matrix entries must be non-negative integers");
        r.push_back(x.get<std::uint64_t>());
      }
      mat.push_back(std::move(r));
    }
    b.multiplicities.push_back(std::move(mat));
  }
  return b;
}

inline json bratteli_to_json(const BratteliData& b) {
  json j;
  j["levels"] = b.levels;
  j["multiplicities"] = b.multiplicities;
  return j;
}

inline TopGraph load_graph_file(const std::filesystem::path& path) {
  return graph_from_json(detail::read_json_file(path));
}

inline FactorMap load_map_file(const std::filesystem::path& path) {
  return map_from_json(detail::read_json_file(path), path.parent_path());
}

inline ProjectiveSystem load_system_file(const std::filesystem::path& path) {
  return system_from_json(detail::read_json_file(path), path.parent_path());
}

inline BratteliData load_bratteli_file(const std::filesystem::path& path) {
  return bratteli_from_json(detail::read_json_file(path));
}

/// Graphviz rendering: one node per vertex, one arrow per class labeled
/// id×mult (omega drawn as ω).
inline std::string to_dot(const TopGraph& g) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (const auto& v : g.vertices()) out << "  \"" << v << "\";\n";
  for (const auto& [id, c] : g.classes()) {
    out << "  \"" << c.dom << "\" -> \"" << c.ran << "\" [label=\"" << id
        << "×" << (c.mult.is_omega() ? "ω" : std::to_string(c.mult.finite()))
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tgraph
