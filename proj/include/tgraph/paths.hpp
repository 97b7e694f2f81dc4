#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tgraph/cardinal.hpp"
#include "tgraph/errors.hpp"
#include "tgraph/graph.hpp"

namespace tgraph {

/// One step of a path: an edge class plus which parallel copy is taken
/// (1-based). Paths through omega classes are never materialized, so copy
/// always fits a finite index.
struct PathStep {
  std::string cls;
  std::uint64_t copy = 1;

  friend bool operator==(const PathStep& a, const PathStep& b) {
    return a.cls == b.cls && a.copy == b.copy;
  }
  friend bool operator<(const PathStep& a, const PathStep& b) {
    return a.cls != b.cls ? a.cls < b.cls : a.copy < b.copy;
  }
};

/// Finite path. steps follows the composition convention: steps[0] is the
/// range-side edge, steps.back() the domain-side edge, and consecutive
/// entries (e', e) satisfy dom(e') = ran(e). base is the domain vertex (and
/// the whole path for length 0).
struct Path {
  std::string base;
  std::vector<PathStep> steps;

  std::size_t length() const { return steps.size(); }

  friend bool operator==(const Path& a, const Path& b) {
    return a.base == b.base && a.steps == b.steps;
  }
  friend bool operator<(const Path& a, const Path& b) {
    return a.base != b.base ? a.base < b.base : a.steps < b.steps;
  }
};

inline std::string path_domain(const TopGraph& g, const Path& p) {
  if (p.steps.empty()) return p.base;
  return g.class_at(p.steps.back().cls).dom;
}

inline std::string path_range(const TopGraph& g, const Path& p) {
  if (p.steps.empty()) return p.base;
  return g.class_at(p.steps.front().cls).ran;
}

/// Renders a path in traversal order, domain first: "v -e0-> w -e1#2-> u".
/// The copy index is shown only for classes with more than one copy.
inline std::string format_path(const TopGraph& g, const Path& p) {
  std::string out = path_domain(g, p);
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) {
    const EdgeClass& c = g.class_at(it->cls);
    out += " -" + it->cls;
    if (c.mult != Cardinal(1)) out += "#" + std::to_string(it->copy);
    out += "-> " + c.ran;
  }
  return out;
}

/// Result of path enumeration up to a length bound. Paths crossing omega
/// classes are counted, not listed; counts carry the omega totals.
struct PathEnumeration {
  std::vector<std::vector<Path>> by_length;
  std::vector<Cardinal> counts;                              // per length
  std::vector<std::map<std::string, Cardinal>> counts_by_domain;
};

namespace detail {

// counts[n][v] = number of paths of length n with domain v, with omega
// propagation: a length-n path picks its first traversed edge at v and
// continues from that edge's range.
inline std::vector<std::map<std::string, Cardinal>> path_counts(
    const TopGraph& g, std::size_t max_len) {
  std::vector<std::map<std::string, Cardinal>> counts(max_len + 1);
  for (const auto& v : g.vertices()) counts[0][v] = Cardinal(1);
  for (std::size_t n = 1; n <= max_len; ++n) {
    for (const auto& v : g.vertices()) {
      Cardinal total(0);
      for (const auto& [id, c] : g.classes()) {
        if (c.dom != v) continue;
        total += c.mult * counts[n - 1][c.ran];
      }
      counts[n][v] = total;
    }
  }
  return counts;
}

// Materialized paths of each length, finite-multiplicity classes only.
// Traversal order is built forward from the domain and reversed into the
// composition convention, which keeps the output lexicographically sorted.
inline std::vector<std::vector<Path>> materialize_paths(const TopGraph& g,
                                                        std::size_t max_len) {
  std::vector<std::vector<Path>> by_length(max_len + 1);
  for (const auto& v : g.vertices())
    by_length[0].push_back(Path{v, {}});
  // frontier holds (domain, traversal-order steps, current endpoint)
  struct Partial {
    std::string dom;
    std::vector<PathStep> traversal;
    std::string at;
  };
  std::vector<Partial> frontier;
  for (const auto& v : g.vertices()) frontier.push_back({v, {}, v});
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::vector<Partial> next;
    for (const auto& part : frontier) {
      for (const auto& [id, c] : g.classes()) {
        if (c.dom != part.at || c.mult.is_omega()) continue;
        for (std::uint64_t copy = 1; copy <= c.mult.finite(); ++copy) {
          Partial ext = part;
          ext.traversal.push_back(PathStep{id, copy});
          ext.at = c.ran;
          next.push_back(std::move(ext));
        }
      }
    }
    for (const auto& part : next) {
      Path p{part.dom, {part.traversal.rbegin(), part.traversal.rend()}};
      by_length[n].push_back(std::move(p));
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  for (auto& bucket : by_length) std::sort(bucket.begin(), bucket.end());
  return by_length;
}

}  // namespace detail

inline PathEnumeration enumerate_paths(const TopGraph& g, std::size_t max_len) {
  PathEnumeration out;
  out.counts_by_domain = detail::path_counts(g, max_len);
  out.counts.resize(max_len + 1, Cardinal(0));
  for (std::size_t n = 0; n <= max_len; ++n)
    for (const auto& [v, c] : out.counts_by_domain[n]) out.counts[n] += c;
  out.by_length = detail::materialize_paths(g, max_len);
  return out;
}

/// True when the class-level digraph has a directed cycle.
inline bool has_loops(const TopGraph& g) {
  std::map<std::string, int> mark;  // 0 fresh, 1 in stack, 2 done
  for (const auto& v : g.vertices()) mark[v] = 0;
  std::vector<std::pair<std::string, bool>> stack;
  for (const auto& start : g.vertices()) {
    if (mark[start] != 0) continue;
    stack.push_back({start, false});
    while (!stack.empty()) {
      auto [v, leaving] = stack.back();
      stack.pop_back();
      if (leaving) {
        mark[v] = 2;
        continue;
      }
      if (mark[v] != 0) continue;
      mark[v] = 1;
      stack.push_back({v, true});
      for (const auto& [id, c] : g.classes()) {
        if (c.dom != v) continue;
        if (mark[c.ran] == 1) return true;
        if (mark[c.ran] == 0) stack.push_back({c.ran, false});
      }
    }
  }
  return false;
}

/// Number of paths (any length >= 0) with domain v. Acyclic graphs only;
/// their paths have length < |vertices|, so the sum is finite or omega.
inline Cardinal path_count_from(const TopGraph& g, const std::string& v) {
  if (!g.has_vertex(v)) throw Error("UnknownVertex", "no vertex '" + v + "'");
  if (has_loops(g)) throw Error("HasLoops", "graph has a loop");
  std::size_t bound = g.vertices().empty() ? 0 : g.vertices().size() - 1;
  auto counts = detail::path_counts(g, bound);
  Cardinal total(0);
  for (std::size_t n = 0; n <= bound; ++n) total += counts[n][v];
  return total;
}

/// Loops of length 1..max_len, base point = common domain/range. Loops
/// through omega classes are only counted.
struct LoopSet {
  std::vector<Path> items;
  std::vector<Cardinal> counts;  // counts[n] = loops of length n; counts[0] = 0
};

inline LoopSet loops(const TopGraph& g, std::size_t max_len) {
  if (max_len < 1) throw Error("PreconditionViolation", "max_len must be >= 1");
  LoopSet out;
  out.counts.resize(max_len + 1, Cardinal(0));
  // pair counts: number of length-n paths with domain v and range u
  std::map<std::pair<std::string, std::string>, Cardinal> cur, next;
  for (const auto& v : g.vertices()) cur[{v, v}] = Cardinal(1);
  for (std::size_t n = 1; n <= max_len; ++n) {
    next.clear();
    for (const auto& [id, c] : g.classes()) {
      for (const auto& u : g.vertices()) {
        auto it = cur.find({c.ran, u});
        if (it == cur.end() || it->second == Cardinal(0)) continue;
        Cardinal& slot = next[{c.dom, u}];
        slot += c.mult * it->second;
      }
    }
    cur = next;
    for (const auto& v : g.vertices()) {
      auto it = cur.find({v, v});
      if (it != cur.end()) out.counts[n] += it->second;
    }
  }
  auto by_length = detail::materialize_paths(g, max_len);
  for (std::size_t n = 1; n <= max_len && n < by_length.size(); ++n)
    for (const auto& p : by_length[n])
      if (path_domain(g, p) == path_range(g, p)) out.items.push_back(p);
  return out;
}

/// Discrete topological freeness: no loop without entrances. A loop without
/// entrances forces indegree 1 along its support, so it suffices to search
/// for a simple cycle all of whose vertices have total indegree exactly 1.
struct FreenessResult {
  bool free = true;
  std::optional<Path> witness;  // a loop without entrances, when not free
};

inline FreenessResult is_topologically_free(const TopGraph& g) {
  // unique incoming class of each indegree-1 vertex
  std::map<std::string, const EdgeClass*> sole_in;
  for (const auto& v : g.vertices())
    if (g.indegree(v) == Cardinal(1)) sole_in[v] = g.classes_into(v).front();
  std::map<std::string, int> state;  // 0 fresh, 1 on chain, 2 cleared
  for (const auto& [v, c] : sole_in) state[v] = 0;
  for (const auto& [start, c0] : sole_in) {
    if (state[start] != 0) continue;
    std::vector<std::string> chain;
    std::string v = start;
    while (sole_in.count(v) && state[v] == 0) {
      state[v] = 1;
      chain.push_back(v);
      v = sole_in[v]->dom;
    }
    if (sole_in.count(v) && state[v] == 1) {
      // v closes a cycle within the current chain
      auto cycle_start = std::find(chain.begin(), chain.end(), v);
      Path loop;
      loop.base = v;
      for (auto it = cycle_start; it != chain.end(); ++it)
        loop.steps.push_back(PathStep{sole_in[*it]->id, 1});
      return FreenessResult{false, loop};
    }
    for (const auto& u : chain) state[u] = 2;
  }
  return FreenessResult{};
}

}  // namespace tgraph
