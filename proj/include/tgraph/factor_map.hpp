#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tgraph/cardinal.hpp"
#include "tgraph/errors.hpp"
#include "tgraph/graph.hpp"

namespace tgraph {

/// Factor map between discrete topological graphs. The vertex and edge-class
/// maps are partial; an absent entry means the item is sent to the point at
/// infinity of the target's one-point compactification.
struct FactorMap {
  TopGraph source;  // the F of a map F -> E
  TopGraph target;  // the E
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::string> edge_map;

  std::optional<std::string> vertex_image(const std::string& v) const {
    auto it = vertex_map.find(v);
    if (it == vertex_map.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::string> edge_image(const std::string& c) const {
    auto it = edge_map.find(c);
    if (it == edge_map.end()) return std::nullopt;
    return it->second;
  }
};

inline FactorMap identity_map(const TopGraph& g) {
  FactorMap m{g, g, {}, {}};
  for (const auto& v : g.vertices()) m.vertex_map[v] = v;
  for (const auto& [id, c] : g.classes()) m.edge_map[id] = id;
  return m;
}

/// Checks the factor-map conditions:
///  (i)  mapped classes have mapped endpoints matching the image class;
///  (ii) over every target class c' and every source vertex v sitting over
///       dom(c'), the classes above c' with domain v total mult(c');
///  properness: an omega class may only map to an omega class (such an
///  assignment is read as an edge-level bijection of the fibers).
inline void validate(const FactorMap& m) {
  validate(m.source);
  validate(m.target);
  for (const auto& [v, w] : m.vertex_map) {
    if (!m.source.has_vertex(v))
      throw Error("UnknownVertex", "vertex_map key '" + v + "' not in source");
    if (!m.target.has_vertex(w))
      throw Error("UnknownVertex", "vertex_map value '" + w + "' not in target");
  }
  for (const auto& [c, c2] : m.edge_map) {
    if (!m.source.has_class(c))
      throw Error("UnknownEdgeClass", "edge_map key '" + c + "' not in source");
    if (!m.target.has_class(c2))
      throw Error("UnknownEdgeClass", "edge_map value '" + c2 + "' not in target");
  }
  // properness
  for (const auto& [cid, image] : m.edge_map) {
    const EdgeClass& c = m.source.class_at(cid);
    const EdgeClass& c2 = m.target.class_at(image);
    if (c.mult.is_omega() && c2.mult.is_finite())
      throw Error("PropernessViolation",
                  "omega class '" + cid + "' maps onto finite class '" + image + "'");
  }
  // condition (i)
  for (const auto& [cid, image] : m.edge_map) {
    const EdgeClass& c = m.source.class_at(cid);
    const EdgeClass& c2 = m.target.class_at(image);
    auto dom_img = m.vertex_image(c.dom);
    auto ran_img = m.vertex_image(c.ran);
    if (!dom_img || *dom_img != c2.dom || !ran_img || *ran_img != c2.ran)
      throw Error("ConditionIViolation",
                  "class '" + cid + "' maps to '" + image +
                      "' but its endpoints do not map to the image endpoints");
  }
  // condition (ii)
  for (const auto& [c2id, c2] : m.target.classes()) {
    for (const auto& [v, w] : m.vertex_map) {
      if (w != c2.dom) continue;
      Cardinal total(0);
      for (const auto& [cid, c] : m.source.classes()) {
        if (c.dom != v) continue;
        auto img = m.edge_image(cid);
        if (img && *img == c2id) total += c.mult;
      }
      if (total != c2.mult)
        throw Error("ConditionIIViolation",
                    "fiber over class '" + c2id + "' at vertex '" + v +
                        "' totals " + total.to_string() + ", expected " +
                        c2.mult.to_string());
    }
  }
}

/// Regularity: every source vertex over a regular target vertex receives at
/// least one edge, and all of its incoming classes map to real classes.
inline bool is_regular(const FactorMap& m) {
  auto target_rg = regular_vertices(m.target);
  for (const auto& [v, w] : m.vertex_map) {
    if (!target_rg.count(w)) continue;
    auto incoming = m.source.classes_into(v);
    if (incoming.empty()) return false;
    for (const EdgeClass* c : incoming)
      if (!m.edge_image(c->id)) return false;
  }
  return true;
}

inline bool is_vertex_surjective(const FactorMap& m) {
  std::set<std::string> image;
  for (const auto& [v, w] : m.vertex_map) image.insert(w);
  return image.size() == m.target.vertices().size();
}

/// Componentwise composition with the point at infinity absorbing.
inline FactorMap compose(const FactorMap& outer, const FactorMap& inner) {
  if (inner.target != outer.source)
    throw Error("GraphMismatch", "inner target differs from outer source");
  FactorMap out{inner.source, outer.target, {}, {}};
  for (const auto& [v, w] : inner.vertex_map) {
    auto w2 = outer.vertex_image(w);
    if (w2) out.vertex_map[v] = *w2;
  }
  for (const auto& [c, c2] : inner.edge_map) {
    auto c3 = outer.edge_image(c2);
    if (c3) out.edge_map[c] = *c3;
  }
  return out;
}

/// The classes over target_class with domain v, with their multiplicities.
/// Condition (ii) makes the multiplicities total mult(target_class).
inline std::vector<std::pair<std::string, Cardinal>> lift_edge(
    const FactorMap& m, const std::string& target_class, const std::string& v) {
  const EdgeClass& c2 = m.target.class_at(target_class);
  auto img = m.vertex_image(v);
  if (!img || *img != c2.dom)
    throw Error("PreconditionViolation",
                "vertex '" + v + "' does not sit over dom(" + target_class + ")");
  std::vector<std::pair<std::string, Cardinal>> out;
  for (const auto& [cid, c] : m.source.classes()) {
    if (c.dom != v) continue;
    auto ei = m.edge_image(cid);
    if (ei && *ei == target_class) out.emplace_back(cid, c.mult);
  }
  return out;
}

}  // namespace tgraph
