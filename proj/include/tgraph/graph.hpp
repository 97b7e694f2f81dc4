#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tgraph/cardinal.hpp"
#include "tgraph/errors.hpp"

namespace tgraph {

/// One class of parallel edges: mult copies of an arrow dom -> ran.
/// mult is a positive count or omega.
struct EdgeClass {
  std::string id;
  std::string dom;
  std::string ran;
  Cardinal mult = Cardinal(1);

  friend bool operator==(const EdgeClass& a, const EdgeClass& b) {
    return a.id == b.id && a.dom == b.dom && a.ran == b.ran && a.mult == b.mult;
  }
};

/// Discrete topological graph: a finite vertex set and finitely many edge
/// classes. Values are immutable once built; every operation on them is a
/// pure function. Iteration order is lexicographic throughout, so all
/// derived output is deterministic.
class TopGraph {
 public:
  void add_vertex(const std::string& v) { vertices_.insert(v); }

  void add_class(EdgeClass c) {
    if (c.mult == Cardinal(0))
      throw Error("InvariantViolation", "edge class '" + c.id + "' has multiplicity 0");
    auto [it, inserted] = classes_.emplace(c.id, std::move(c));
    if (!inserted)
      throw Error("DuplicateId", "edge class id '" + it->first + "' already present");
  }

  void add_class(const std::string& id, const std::string& dom,
                 const std::string& ran, Cardinal mult = Cardinal(1)) {
    add_class(EdgeClass{id, dom, ran, mult});
  }

  const std::set<std::string>& vertices() const { return vertices_; }
  const std::map<std::string, EdgeClass>& classes() const { return classes_; }

  bool has_vertex(const std::string& v) const { return vertices_.count(v) != 0; }
  bool has_class(const std::string& id) const { return classes_.count(id) != 0; }

  const EdgeClass& class_at(const std::string& id) const {
    auto it = classes_.find(id);
    if (it == classes_.end())
      throw Error("UnknownEdgeClass", "no edge class '" + id + "'");
    return it->second;
  }

  Cardinal indegree(const std::string& v) const {
    Cardinal total(0);
    for (const auto& [id, c] : classes_)
      if (c.ran == v) total += c.mult;
    return total;
  }

  std::vector<const EdgeClass*> classes_into(const std::string& v) const {
    std::vector<const EdgeClass*> out;
    for (const auto& [id, c] : classes_)
      if (c.ran == v) out.push_back(&c);
    return out;
  }

  std::vector<const EdgeClass*> classes_from(const std::string& v) const {
    std::vector<const EdgeClass*> out;
    for (const auto& [id, c] : classes_)
      if (c.dom == v) out.push_back(&c);
    return out;
  }

  friend bool operator==(const TopGraph& a, const TopGraph& b) {
    return a.vertices_ == b.vertices_ && a.classes_ == b.classes_;
  }
  friend bool operator!=(const TopGraph& a, const TopGraph& b) { return !(a == b); }

 private:
  std::set<std::string> vertices_;
  std::map<std::string, EdgeClass> classes_;
};

/// Checks the structural invariants: every endpoint names a known vertex.
/// Duplicate class ids cannot be built through add_class, but re-check here
/// so independently constructed values fail loudly too.
inline void validate(const TopGraph& g) {
  for (const auto& [id, c] : g.classes()) {
    if (!g.has_vertex(c.dom))
      throw Error("DanglingEndpoint",
                  "class '" + id + "' has unknown domain vertex '" + c.dom + "'");
    if (!g.has_vertex(c.ran))
      throw Error("DanglingEndpoint",
                  "class '" + id + "' has unknown range vertex '" + c.ran + "'");
  }
}

/// Partition of the vertex set by indegree: sources (0), regular receivers
/// (finite positive) and infinite receivers (omega), plus the derived fin
/// and sg sets.
struct VertexClassification {
  std::set<std::string> sce;
  std::set<std::string> inf;
  std::set<std::string> rg;
  std::set<std::string> fin;
  std::set<std::string> sg;
};

inline VertexClassification classify(const TopGraph& g) {
  VertexClassification c;
  for (const auto& v : g.vertices()) {
    Cardinal deg = g.indegree(v);
    if (deg == Cardinal(0)) {
      c.sce.insert(v);
    } else if (deg.is_omega()) {
      c.inf.insert(v);
    } else {
      c.rg.insert(v);
    }
    if (!deg.is_omega()) c.fin.insert(v);
  }
  c.sg = c.sce;
  c.sg.insert(c.inf.begin(), c.inf.end());
  return c;
}

/// Regular receivers only; shorthand used by the constructions.
inline std::set<std::string> regular_vertices(const TopGraph& g) {
  return classify(g).rg;
}

}  // namespace tgraph
