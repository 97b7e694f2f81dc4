#pragma once

// Hand-built graphs shared across the suites.

#include <string>

#include "tgraph/tgraph.hpp"

namespace fx {

// Two sources feeding one sink: a single plain edge v -> w next to a fan of
// countably many parallel edges v' -> w.
inline tgraph::TopGraph fan_graph() {
  tgraph::TopGraph g;
  g.add_vertex("v");
  g.add_vertex("v'");
  g.add_vertex("w");
  g.add_class("e0", "v", "w", tgraph::Cardinal(1));
  g.add_class("E1", "v'", "w", tgraph::Cardinal::omega());
  return g;
}

// Self-map of fan_graph keeping the plain edge and dropping the fan.
inline tgraph::FactorMap fan_collapse() {
  tgraph::FactorMap m;
  m.source = fan_graph();
  m.target = fan_graph();
  m.vertex_map = {{"v", "v"}, {"w", "w"}};
  m.edge_map = {{"e0", "e0"}};
  return m;
}

// Directed line on n vertices: u1 -> u2 -> ... -> un.
inline tgraph::TopGraph line_graph(std::size_t n) {
  tgraph::TopGraph g;
  for (std::size_t i = 1; i <= n; ++i) g.add_vertex("u" + std::to_string(i));
  for (std::size_t i = 1; i + 1 <= n; ++i)
    g.add_class("f" + std::to_string(i), "u" + std::to_string(i),
                "u" + std::to_string(i + 1));
  return g;
}

inline tgraph::TopGraph single_vertex(const std::string& name = "p") {
  tgraph::TopGraph g;
  g.add_vertex(name);
  return g;
}

inline tgraph::TopGraph single_loop(tgraph::Cardinal mult = tgraph::Cardinal(1)) {
  tgraph::TopGraph g;
  g.add_vertex("z");
  g.add_class("s", "z", "z", mult);
  return g;
}

// Two-cycle a -> b -> a.
inline tgraph::TopGraph two_cycle() {
  tgraph::TopGraph g;
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_class("ab", "a", "b");
  g.add_class("ba", "b", "a");
  return g;
}

}  // namespace fx
