#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tgraph/cardinal.hpp"
#include "tgraph/errors.hpp"
#include "tgraph/graph.hpp"

namespace tgraph {

/// Attaches a fresh copy w.v of every vertex v in Y, together with a copy
/// w.c of every class c whose domain lies in Y, redirected to start at the
/// copied vertex. Y must consist of regular vertices; discretely there is no
/// boundary to glue along, so this is a plain disjoint attachment.
inline TopGraph attach_e_y(const TopGraph& g, const std::set<std::string>& y) {
  auto rg = regular_vertices(g);
  for (const auto& v : y)
    if (!rg.count(v))
      throw Error("NotRegularSubset", "vertex '" + v + "' is not regular");
  TopGraph out = g;
  for (const auto& v : y) out.add_vertex("w." + v);
  for (const auto& [id, c] : g.classes())
    if (y.count(c.dom))
      out.add_class("w." + id, "w." + c.dom, c.ran, c.mult);
  return out;
}

/// The graph presenting the Toeplitz algebra: attach over every regular
/// vertex.
inline TopGraph toeplitz_graph(const TopGraph& g) {
  return attach_e_y(g, regular_vertices(g));
}

/// Subgraph induced by a vertex set V: all classes with range in V, plus
/// the vertices needed to carry them.
inline TopGraph subgraph_f_v(const TopGraph& g, const std::set<std::string>& v_set) {
  for (const auto& v : v_set)
    if (!g.has_vertex(v)) throw Error("UnknownVertex", "no vertex '" + v + "'");
  TopGraph out;
  for (const auto& v : v_set) out.add_vertex(v);
  for (const auto& [id, c] : g.classes()) {
    if (!v_set.count(c.ran)) continue;
    out.add_vertex(c.dom);
    out.add_class(c);
  }
  return out;
}

namespace detail {
// Multiplicity of class edges in g left out of sub; whole-class inclusion of
// an omega class leaves nothing out, partial inclusion leaves omega out.
inline Cardinal leftover_mult(Cardinal full, Cardinal sub) {
  if (sub.is_omega()) {
    if (!full.is_omega())
      throw Error("NotASubgraph", "omega class inside finite class");
    return Cardinal(0);
  }
  if (full.is_omega()) return Cardinal::omega();
  if (sub.finite() > full.finite())
    throw Error("NotASubgraph", "subgraph multiplicity exceeds ambient one");
  return Cardinal(full.finite() - sub.finite());
}
}  // namespace detail

/// The defect of a subgraph: the regular vertices of sub that still receive
/// excluded ambient edges. The subalgebra generated by sub inside the
/// ambient algebra is presented by sub with this set attached.
struct DefectReport {
  std::set<std::string> y;
  TopGraph completed;  // attach_e_y(sub, y)
};

inline DefectReport subalgebra_defect(const TopGraph& g, const TopGraph& sub) {
  validate(sub);
  for (const auto& v : sub.vertices())
    if (!g.has_vertex(v))
      throw Error("NotASubgraph", "vertex '" + v + "' not in ambient graph");
  std::set<std::string> excluded_ranges;
  for (const auto& [id, c] : g.classes()) {
    Cardinal sub_mult(0);
    if (sub.has_class(id)) {
      const EdgeClass& sc = sub.class_at(id);
      if (sc.dom != c.dom || sc.ran != c.ran)
        throw Error("NotASubgraph", "class '" + id + "' has different endpoints");
      sub_mult = sc.mult;
    }
    if (detail::leftover_mult(c.mult, sub_mult) > Cardinal(0))
      excluded_ranges.insert(c.ran);
  }
  for (const auto& [id, c] : sub.classes())
    if (!g.has_class(id))
      throw Error("NotASubgraph", "class '" + id + "' not in ambient graph");
  DefectReport out;
  for (const auto& v : regular_vertices(sub))
    if (excluded_ranges.count(v)) out.y.insert(v);
  out.completed = attach_e_y(sub, out.y);
  return out;
}

/// V is hereditary when edges into V start in V.
inline bool is_hereditary_v(const TopGraph& g, const std::set<std::string>& v_set) {
  for (const auto& v : v_set)
    if (!g.has_vertex(v)) throw Error("UnknownVertex", "no vertex '" + v + "'");
  for (const auto& [id, c] : g.classes())
    if (v_set.count(c.ran) && !v_set.count(c.dom)) return false;
  return true;
}

/// Fullness certificate for a hereditary V: every outside vertex is regular
/// and all of its depth-n incoming paths start in V for some n; the witness
/// records the minimal such n per vertex. The stages W_n are increasing for
/// hereditary V, so stabilization occurs within |vertices| steps.
struct FullnessResult {
  bool full = true;
  std::map<std::string, std::size_t> witness;  // minimal n per outside vertex
  std::string reason;                          // set when not full
};

inline FullnessResult is_full_v(const TopGraph& g, const std::set<std::string>& v_set) {
  if (!is_hereditary_v(g, v_set))
    throw Error("NotHereditary", "vertex set is not hereditary");
  FullnessResult out;
  auto rg = regular_vertices(g);
  for (const auto& v : g.vertices()) {
    if (v_set.count(v)) continue;
    if (!rg.count(v)) {
      out.full = false;
      out.reason = "vertex '" + v + "' outside V is not regular";
      return out;
    }
  }
  std::set<std::string> reached = v_set;
  std::size_t bound = g.vertices().size();
  for (std::size_t n = 1; n <= bound; ++n) {
    std::set<std::string> next;
    for (const auto& v : g.vertices()) {
      bool all_in = true;
      for (const EdgeClass* c : g.classes_into(v))
        if (!reached.count(c->dom)) {
          all_in = false;
          break;
        }
      if (all_in) next.insert(v);
    }
    for (const auto& v : next)
      if (!v_set.count(v) && !out.witness.count(v)) out.witness[v] = n;
    reached = std::move(next);
  }
  for (const auto& v : g.vertices()) {
    if (v_set.count(v)) continue;
    if (!out.witness.count(v)) {
      out.full = false;
      out.reason = "vertex '" + v + "' has no certifying depth within " +
                   std::to_string(bound);
      return out;
    }
  }
  return out;
}

/// One stage of a tower: fresh vertices fed from the previous stage.
/// Class dom names a previous-stage vertex (raw name; the original graph's
/// ids for stage 1), ran a vertex of this stage.
struct TowerStage {
  std::set<std::string> vertices;
  std::vector<EdgeClass> classes;
};

/// Attaches tower stages below g. Stage ranges must be proper surjections:
/// every stage vertex receives at least one edge and only finitely many.
/// Fresh ids carry the stage prefix x<k>.
inline TopGraph attach_tower(const TopGraph& g, const std::vector<TowerStage>& stages) {
  TopGraph out = g;
  std::set<std::string> prev = g.vertices();
  for (std::size_t k = 1; k <= stages.size(); ++k) {
    const TowerStage& st = stages[k - 1];
    std::string prefix = "x" + std::to_string(k) + ".";
    std::map<std::string, Cardinal> fiber;
    for (const auto& v : st.vertices) fiber[v] = Cardinal(0);
    for (const EdgeClass& c : st.classes) {
      if (!prev.count(c.dom))
        throw Error("DanglingEndpoint",
                    "stage " + std::to_string(k) + " class '" + c.id +
                        "' has unknown domain '" + c.dom + "'");
      if (!st.vertices.count(c.ran))
        throw Error("DanglingEndpoint",
                    "stage " + std::to_string(k) + " class '" + c.id +
                        "' has unknown range '" + c.ran + "'");
      fiber[c.ran] += c.mult;
    }
    for (const auto& [v, deg] : fiber) {
      if (deg == Cardinal(0))
        throw Error("RangeNotSurjective",
                    "stage " + std::to_string(k) + " vertex '" + v +
                        "' receives no edge");
      if (deg.is_omega())
        throw Error("RangeNotProper",
                    "stage " + std::to_string(k) + " vertex '" + v +
                        "' receives an omega fiber");
    }
    for (const auto& v : st.vertices) out.add_vertex(prefix + v);
    for (const EdgeClass& c : st.classes) {
      std::string dom = (k == 1) ? c.dom
                                 : "x" + std::to_string(k - 1) + "." + c.dom;
      out.add_class(prefix + c.id, dom, prefix + c.ran, c.mult);
    }
    prev = st.vertices;  // raw names; the next stage's doms refer to these
  }
  return out;
}

enum class AmplifyVariant { chain, star };

/// Amplification by N vertex-set copies joined with identity edges. The
/// chain variant links each copy to the previous one, the star variant
/// feeds every copy directly from the original vertex set; both present the
/// original algebra tensored with M_{N+1}.
inline TopGraph amplify(const TopGraph& g, std::size_t n, AmplifyVariant variant) {
  TopGraph out = g;
  for (std::size_t k = 1; k <= n; ++k) {
    std::string prefix = "x" + std::to_string(k) + ".";
    std::string prev_prefix = (k == 1) ? "" : "x" + std::to_string(k - 1) + ".";
    for (const auto& v : g.vertices()) out.add_vertex(prefix + v);
    for (const auto& v : g.vertices()) {
      std::string dom = (variant == AmplifyVariant::chain) ? prev_prefix + v : v;
      out.add_class(prefix + v, dom, prefix + v, Cardinal(1));
    }
  }
  return out;
}

inline TopGraph disjoint_union(const TopGraph& a, const TopGraph& b) {
  TopGraph out;
  for (const auto& v : a.vertices()) out.add_vertex("1." + v);
  for (const auto& v : b.vertices()) out.add_vertex("2." + v);
  for (const auto& [id, c] : a.classes())
    out.add_class("1." + id, "1." + c.dom, "1." + c.ran, c.mult);
  for (const auto& [id, c] : b.classes())
    out.add_class("2." + id, "2." + c.dom, "2." + c.ran, c.mult);
  return out;
}

/// Product with a finite discrete set of size n: n disjoint copies.
inline TopGraph product_with_set(const TopGraph& g, std::size_t n) {
  if (n == 0)
    throw Error("PreconditionViolation", "product set must be nonempty");
  TopGraph out;
  for (std::size_t i = 1; i <= n; ++i) {
    std::string prefix = std::to_string(i) + ".";
    for (const auto& v : g.vertices()) out.add_vertex(prefix + v);
    for (const auto& [id, c] : g.classes())
      out.add_class(prefix + id, prefix + c.dom, prefix + c.ran, c.mult);
  }
  return out;
}

/// Adds one fresh isolated vertex; the classification of the original
/// vertices is unchanged and the new point is a source.
inline TopGraph one_point_compactify(const TopGraph& g) {
  std::string name = "inf";
  for (std::size_t i = 1; g.has_vertex(name); ++i)
    name = "inf." + std::to_string(i);
  TopGraph out = g;
  out.add_vertex(name);
  return out;
}

}  // namespace tgraph
