#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tgraph/algebra.hpp"
#include "tgraph/constructions.hpp"
#include "tgraph/errors.hpp"
#include "tgraph/factor_map.hpp"
#include "tgraph/graph.hpp"

namespace tgraph {

/// Chain-indexed projective system: either an explicit finite prefix
/// G_0 <- G_1 <- ... <- G_K of graphs and factor maps, or a stationary rule
/// (one graph with a self-factor-map repeated forever).
class ProjectiveSystem {
 public:
  static ProjectiveSystem make_explicit(std::vector<TopGraph> stages,
                                        std::vector<FactorMap> maps) {
    if (stages.empty())
      throw Error("InvariantViolation", "a system needs at least one stage");
    if (maps.size() + 1 != stages.size())
      throw Error("GraphMismatch", "need exactly one map per adjacent stage pair");
    for (std::size_t k = 0; k < maps.size(); ++k) {
      if (maps[k].source != stages[k + 1] || maps[k].target != stages[k])
        throw Error("GraphMismatch",
                    "map " + std::to_string(k) + " does not join stage " +
                        std::to_string(k + 1) + " to stage " + std::to_string(k));
    }
    ProjectiveSystem s;
    s.stages_ = std::move(stages);
    s.maps_ = std::move(maps);
    return s;
  }

  static ProjectiveSystem make_stationary(TopGraph graph, FactorMap map) {
    if (map.source != graph || map.target != graph)
      throw Error("GraphMismatch", "stationary map must be a self-map of the graph");
    ProjectiveSystem s;
    s.stationary_ = true;
    s.stages_ = {std::move(graph)};
    s.maps_ = {std::move(map)};
    return s;
  }

  bool stationary() const { return stationary_; }

  /// Number of available stages; stationary systems have no bound.
  std::optional<std::size_t> stage_count() const {
    if (stationary_) return std::nullopt;
    return stages_.size();
  }

  const TopGraph& stage(std::size_t k) const {
    if (stationary_) return stages_[0];
    if (k >= stages_.size())
      throw Error("DepthExceedsStages", "no stage " + std::to_string(k));
    return stages_[k];
  }

  /// The map joining stage k+1 to stage k.
  const FactorMap& map(std::size_t k) const {
    if (stationary_) return maps_[0];
    if (k >= maps_.size())
      throw Error("DepthExceedsStages", "no map at index " + std::to_string(k));
    return maps_[k];
  }

  std::size_t map_count() const { return stationary_ ? 1 : maps_.size(); }

 private:
  ProjectiveSystem() = default;
  bool stationary_ = false;
  std::vector<TopGraph> stages_;
  std::vector<FactorMap> maps_;
};

struct SystemReport {
  bool regular = true;
  bool surjective = true;
};

inline SystemReport validate_system(const ProjectiveSystem& s) {
  SystemReport out;
  for (std::size_t k = 0; k < s.map_count(); ++k) {
    try {
      validate(s.map(k));
    } catch (const Error& e) {
      std::string detail = e.what();  // "<name>: <detail>"
      detail = detail.substr(detail.find(": ") + 2);
      throw Error(e.name(), "stage " + std::to_string(k) + ": " + detail);
    }
    if (!is_regular(s.map(k))) out.regular = false;
    if (!is_vertex_surjective(s.map(k))) out.surjective = false;
  }
  return out;
}

namespace detail {

// Eventual cores of a self-map: the intersection of all forward images of
// the vertex and class sets (with the point at infinity adjoined). Both
// stabilize within |F|+1 iterations, and the restricted maps are bijections
// of the cores.
struct StationaryCore {
  std::set<std::string> vertices;
  std::set<std::string> classes;
  std::map<std::string, std::string> vertex_back;  // core inverse of m^0
  std::map<std::string, std::string> class_back;   // core inverse of m^1
};

inline StationaryCore stationary_core(const FactorMap& m) {
  const TopGraph& f = m.source;
  std::set<std::string> vs = f.vertices();
  std::set<std::string> cs;
  for (const auto& [id, c] : f.classes()) cs.insert(id);
  // absent map entries land at infinity and drop out of the image
  for (;;) {
    std::set<std::string> vs2, cs2;
    for (const auto& v : vs) {
      auto img = m.vertex_image(v);
      if (img) vs2.insert(*img);
    }
    for (const auto& c : cs) {
      auto img = m.edge_image(c);
      if (img) cs2.insert(*img);
    }
    if (vs2 == vs && cs2 == cs) break;
    vs = std::move(vs2);
    cs = std::move(cs2);
  }
  StationaryCore core;
  core.vertices = vs;
  core.classes = cs;
  for (const auto& v : vs) {
    auto img = m.vertex_image(v);
    if (img && vs.count(*img)) core.vertex_back[*img] = v;
  }
  for (const auto& c : cs) {
    auto img = m.edge_image(c);
    if (img && cs.count(*img)) core.class_back[*img] = c;
  }
  return core;
}

}  // namespace detail

/// Realizes the projective limit of the stationary system as a graph when
/// the thread space is finite: threads are in bijection with the eventual
/// core, identified with their stage-0 coordinates. The typed empty outcome
/// is returned if the core-restricted map fails to be an injective,
/// multiplicity-preserving class bijection (the limit would then be an
/// infinite pro-finite space).
inline std::optional<TopGraph> stationary_limit(const TopGraph& f, const FactorMap& m) {
  if (m.source != f || m.target != f)
    throw Error("GraphMismatch", "map is not a self-map of the given graph");
  validate(m);
  auto core = detail::stationary_core(m);
  // injectivity of the core restriction: every core element must be hit
  // exactly once from inside the core
  if (core.vertex_back.size() != core.vertices.size()) return std::nullopt;
  if (core.class_back.size() != core.classes.size()) return std::nullopt;
  for (const auto& c : core.classes) {
    const EdgeClass& ec = f.class_at(c);
    auto img = m.edge_image(c);
    if (!img || f.class_at(*img).mult != ec.mult) return std::nullopt;
  }
  TopGraph out;
  for (const auto& v : core.vertices) out.add_vertex(v);
  for (const auto& c : core.classes) out.add_class(f.class_at(c));
  validate(out);
  return out;
}

/// The factor map projecting the realized limit onto its stage-k coordinate.
inline FactorMap coordinate_projection(const TopGraph& f, const FactorMap& m,
                                       std::size_t k) {
  auto limit = stationary_limit(f, m);
  if (!limit)
    throw Error("PreconditionViolation", "stationary limit is not representable");
  auto core = detail::stationary_core(m);
  FactorMap out{*limit, f, {}, {}};
  for (const auto& v : limit->vertices()) {
    std::string x = v;
    for (std::size_t j = 0; j < k; ++j) x = core.vertex_back.at(x);
    out.vertex_map[v] = x;
  }
  for (const auto& [id, c] : limit->classes()) {
    std::string x = id;
    for (std::size_t j = 0; j < k; ++j) x = core.class_back.at(x);
    out.edge_map[id] = x;
  }
  return out;
}

struct ObstructionReport {
  std::set<std::string> open_set;  // O: limit vertices certified regular at some stage
  std::set<std::string> y;         // Y = rg(limit) \ O
};

/// The obstruction set of a stationary system. A limit vertex lies in O when
/// its coordinate at some stage is regular there; stationary coordinates run
/// along the backward core orbit, which is periodic, so scanning |F| stages
/// decides membership.
inline ObstructionReport obstruction_report(const TopGraph& f, const FactorMap& m,
                                            const TopGraph& limit) {
  auto computed = stationary_limit(f, m);
  if (!computed || *computed != limit)
    throw Error("PreconditionViolation",
                "limit does not match the stationary limit of (graph, map)");
  auto core = detail::stationary_core(m);
  auto stage_rg = regular_vertices(f);
  ObstructionReport out;
  for (const auto& v : limit.vertices()) {
    std::string x = v;
    for (std::size_t j = 0; j <= f.vertices().size(); ++j) {
      if (stage_rg.count(x)) {
        out.open_set.insert(v);
        break;
      }
      x = core.vertex_back.at(x);
    }
  }
  for (const auto& v : regular_vertices(limit))
    if (!out.open_set.count(v)) out.y.insert(v);
  return out;
}

inline std::set<std::string> obstruction_set(const TopGraph& f, const FactorMap& m,
                                             const TopGraph& limit) {
  return obstruction_report(f, m, limit).y;
}

/// Lower approximation of O for an explicit prefix: only the available
/// stages can certify regularity, so the result is relative to the deepest
/// stage's vertices and reported as computed from that many stages.
struct ApproxObstruction {
  std::size_t stages_used = 0;
  std::set<std::string> open_set;  // subset of the deepest stage's vertices
};

inline ApproxObstruction approx_obstruction(const ProjectiveSystem& s) {
  if (s.stationary())
    throw Error("PreconditionViolation", "use obstruction_report for stationary systems");
  std::size_t last = *s.stage_count() - 1;
  ApproxObstruction out;
  out.stages_used = last + 1;
  for (const auto& v : s.stage(last).vertices()) {
    std::optional<std::string> x = v;
    for (std::size_t j = last + 1; j-- > 0;) {
      if (x && regular_vertices(s.stage(j)).count(*x)) {
        out.open_set.insert(v);
        break;
      }
      if (j > 0 && x) x = s.map(j - 1).vertex_image(*x);
    }
  }
  return out;
}

/// Coherent coordinate tuples (x_0..x_depth) with m_k(x_{k+1}) = x_k. The
/// infinity symbol may only occupy leading coordinates; a tuple that is real
/// everywhere approximates a point of the limit.
struct ThreadTable {
  static constexpr const char* infinity = "infinity";
  std::vector<std::vector<std::string>> vertex_threads;
  std::vector<std::vector<std::string>> edge_threads;
  std::size_t real_vertex_threads = 0;
  std::size_t real_edge_threads = 0;
  std::vector<std::size_t> vertex_real_by_stage;
  std::vector<std::size_t> edge_real_by_stage;
};

namespace detail {

template <typename Items, typename Preimages>
std::vector<std::vector<std::string>> coherent_tuples(
    const ProjectiveSystem& s, std::size_t depth, Items items,
    Preimages preimages) {
  std::vector<std::vector<std::string>> tuples;
  tuples.push_back({ThreadTable::infinity});
  for (const auto& x : items(s.stage(0))) tuples.push_back({x});
  for (std::size_t k = 1; k <= depth; ++k) {
    std::vector<std::vector<std::string>> next;
    for (const auto& t : tuples) {
      for (const auto& x : preimages(s, k - 1, t.back())) {
        auto ext = t;
        ext.push_back(x);
        next.push_back(std::move(ext));
      }
    }
    tuples = std::move(next);
  }
  std::sort(tuples.begin(), tuples.end());
  return tuples;
}

}  // namespace detail

inline ThreadTable thread_approximation(const ProjectiveSystem& s, std::size_t depth) {
  if (!s.stationary() && depth + 1 > *s.stage_count())
    throw Error("DepthExceedsStages",
                "depth " + std::to_string(depth) + " exceeds available stages");
  auto vertex_items = [](const TopGraph& g) { return g.vertices(); };
  auto vertex_pre = [](const ProjectiveSystem& sys, std::size_t k,
                       const std::string& x) {
    std::vector<std::string> out;
    const FactorMap& m = sys.map(k);
    bool want_inf = (x == ThreadTable::infinity);
    if (want_inf) out.push_back(ThreadTable::infinity);
    for (const auto& v : m.source.vertices()) {
      auto img = m.vertex_image(v);
      if (want_inf ? !img.has_value() : (img && *img == x)) out.push_back(v);
    }
    return out;
  };
  auto edge_items = [](const TopGraph& g) {
    std::set<std::string> out;
    for (const auto& [id, c] : g.classes()) out.insert(id);
    return out;
  };
  auto edge_pre = [](const ProjectiveSystem& sys, std::size_t k,
                     const std::string& x) {
    std::vector<std::string> out;
    const FactorMap& m = sys.map(k);
    bool want_inf = (x == ThreadTable::infinity);
    if (want_inf) out.push_back(ThreadTable::infinity);
    for (const auto& [id, c] : m.source.classes()) {
      auto img = m.edge_image(id);
      if (want_inf ? !img.has_value() : (img && *img == x)) out.push_back(id);
    }
    return out;
  };
  ThreadTable out;
  out.vertex_threads = detail::coherent_tuples(s, depth, vertex_items, vertex_pre);
  out.edge_threads = detail::coherent_tuples(s, depth, edge_items, edge_pre);
  out.vertex_real_by_stage.assign(depth + 1, 0);
  out.edge_real_by_stage.assign(depth + 1, 0);
  auto tally = [&](const std::vector<std::vector<std::string>>& threads,
                   std::size_t& real_total, std::vector<std::size_t>& by_stage) {
    for (const auto& t : threads) {
      bool all_real = true;
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] == ThreadTable::infinity)
          all_real = false;
        else
          ++by_stage[k];
      }
      if (all_real) ++real_total;
    }
  };
  tally(out.vertex_threads, out.real_vertex_threads, out.vertex_real_by_stage);
  tally(out.edge_threads, out.real_edge_threads, out.edge_real_by_stage);
  return out;
}

/// Everything the limit analysis yields for a stationary system:
/// the realized limit, the obstruction set, the attachment presenting the
/// inductive-limit algebra, and finite-dimensional identifications when the
/// graphs are acyclic with finite multiplicities.
struct LimitReport {
  std::optional<TopGraph> limit;
  std::set<std::string> obstruction_open;
  std::set<std::string> obstruction_y;
  std::optional<TopGraph> e_y;
  bool colim_isomorphic_to_limit_algebra = false;
  std::optional<AlgebraExpr> limit_algebra;
  std::optional<AlgebraExpr> colim_algebra;
};

inline LimitReport limit_algebra_report(const TopGraph& f, const FactorMap& m) {
  LimitReport out;
  out.limit = stationary_limit(f, m);
  if (!out.limit) return out;
  auto obs = obstruction_report(f, m, *out.limit);
  out.obstruction_open = obs.open_set;
  out.obstruction_y = obs.y;
  out.e_y = attach_e_y(*out.limit, obs.y);
  out.colim_isomorphic_to_limit_algebra = obs.y.empty();
  auto try_identify = [](const TopGraph& g) -> std::optional<AlgebraExpr> {
    try {
      return identify_finite_dim(g);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  out.limit_algebra = try_identify(*out.limit);
  out.colim_algebra = try_identify(*out.e_y);
  return out;
}

/// Levelled presentation of an AF algebra: dimension vectors and
/// multiplicity matrices, with sigma_n of shape i_{n+1} x i_n.
struct BratteliData {
  std::vector<std::vector<std::uint64_t>> levels;
  std::vector<std::vector<std::vector<std::uint64_t>>> multiplicities;

  friend bool operator==(const BratteliData& a, const BratteliData& b) {
    return a.levels == b.levels && a.multiplicities == b.multiplicities;
  }
};

inline void validate(const BratteliData& b) {
  if (b.levels.empty())
    throw Error("InvariantViolation", "need at least one level");
  if (b.multiplicities.size() + 1 != b.levels.size())
    throw Error("InvariantViolation",
                "need exactly one multiplicity matrix per adjacent level pair");
  for (const auto& level : b.levels) {
    if (level.empty())
      throw Error("InvariantViolation", "empty dimension vector");
    for (auto k : level)
      if (k == 0) throw Error("InvariantViolation", "dimension entries must be positive");
  }
  for (std::size_t n = 0; n + 1 < b.levels.size(); ++n) {
    const auto& sigma = b.multiplicities[n];
    if (sigma.size() != b.levels[n + 1].size())
      throw Error("InvariantViolation",
                  "sigma_" + std::to_string(n) + " has wrong row count");
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (sigma[i].size() != b.levels[n].size())
        throw Error("InvariantViolation",
                    "sigma_" + std::to_string(n) + " has wrong column count");
      std::uint64_t used = 0;
      for (std::size_t j = 0; j < sigma[i].size(); ++j) {
        std::uint64_t part;
        if (__builtin_mul_overflow(sigma[i][j], b.levels[n][j], &part) ||
            __builtin_add_overflow(used, part, &used))
          throw std::overflow_error("BratteliData: size overflow");
      }
      if (used > b.levels[n + 1][i])
        throw Error("InvariantViolation",
                    "embedding multiplicities exceed block size at level " +
                        std::to_string(n + 1) + " block " + std::to_string(i + 1));
    }
  }
}

namespace detail {
inline std::string bratteli_vertex(std::size_t i, std::size_t k) {
  return "v" + std::to_string(i) + "." + std::to_string(k);
}
inline std::string bratteli_edge(std::size_t i, std::size_t k) {
  return "e" + std::to_string(i) + "." + std::to_string(k);
}
}  // namespace detail

/// The level-n stage graph: one directed line per block, with k_n^{(i)}
/// vertices v<i>.<1..k> chained by edges e<i>.<1..k-1>.
inline TopGraph bratteli_stage(const std::vector<std::uint64_t>& level) {
  TopGraph g;
  for (std::size_t i = 1; i <= level.size(); ++i) {
    std::uint64_t len = level[i - 1];
    for (std::uint64_t k = 1; k <= len; ++k)
      g.add_vertex(detail::bratteli_vertex(i, k));
    for (std::uint64_t k = 1; k + 1 <= len; ++k)
      g.add_class(detail::bratteli_edge(i, k), detail::bratteli_vertex(i, k),
                  detail::bratteli_vertex(i, k + 1));
  }
  return g;
}

/// Builds the explicit projective system presenting the AF chain: stage
/// graphs are disjoint unions of lines, and the connecting factor maps place
/// sigma_n^{(i,j)} interleaved copies of block j inside block i, sending the
/// slack tail to infinity.
inline ProjectiveSystem bratteli_to_system(const BratteliData& b) {
  validate(b);
  std::vector<TopGraph> stages;
  for (const auto& level : b.levels) stages.push_back(bratteli_stage(level));
  std::vector<FactorMap> maps;
  for (std::size_t n = 0; n + 1 < b.levels.size(); ++n) {
    const auto& lower = b.levels[n];
    const auto& upper = b.levels[n + 1];
    const auto& sigma = b.multiplicities[n];
    FactorMap m{stages[n + 1], stages[n], {}, {}};
    for (std::size_t i = 1; i <= upper.size(); ++i) {
      for (std::uint64_t k = 1; k <= upper[i - 1]; ++k) {
        // locate the block j whose copies cover position k
        std::uint64_t offset = 0;
        std::optional<std::size_t> block;
        std::uint64_t rel = 0;
        for (std::size_t j = 1; j <= lower.size(); ++j) {
          std::uint64_t span = sigma[i - 1][j - 1] * lower[j - 1];
          if (k <= offset + span) {
            block = j;
            rel = k - offset;  // k' in 1..sigma*k_n
            break;
          }
          offset += span;
        }
        if (!block) continue;  // slack tail: maps to infinity
        std::uint64_t len = lower[*block - 1];
        std::uint64_t l = ((rel - 1) % len) + 1;
        m.vertex_map[detail::bratteli_vertex(i, k)] =
            detail::bratteli_vertex(*block, l);
        if (k + 1 <= upper[i - 1] && l + 1 <= len)
          m.edge_map[detail::bratteli_edge(i, k)] =
              detail::bratteli_edge(*block, l);
      }
    }
    maps.push_back(std::move(m));
  }
  return ProjectiveSystem::make_explicit(std::move(stages), std::move(maps));
}

namespace detail {

// digit-aware comparison so block sources v2.1 < v10.1 sort numerically
inline bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) &&
        std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      auto na = a.substr(i, i2 - i), nb = b.substr(j, j2 - j);
      auto trim = [](std::string s) {
        auto pos = s.find_first_not_of('0');
        return pos == std::string::npos ? std::string("0") : s.substr(pos);
      };
      na = trim(na);
      nb = trim(nb);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

// Decomposes a stage into directed lines, each listed source-first.
inline std::vector<std::vector<std::string>> line_blocks(const TopGraph& g) {
  std::map<std::string, std::string> next;  // vertex -> successor along its line
  std::map<std::string, int> indeg, outdeg;
  for (const auto& v : g.vertices()) indeg[v] = outdeg[v] = 0;
  for (const auto& [id, c] : g.classes()) {
    if (c.mult != Cardinal(1))
      throw Error("NotLineShaped", "class '" + id + "' has multiplicity > 1");
    if (++outdeg[c.dom] > 1)
      throw Error("NotLineShaped", "vertex '" + c.dom + "' has out-degree > 1");
    if (++indeg[c.ran] > 1)
      throw Error("NotLineShaped", "vertex '" + c.ran + "' has in-degree > 1");
    next[c.dom] = c.ran;
  }
  std::vector<std::vector<std::string>> blocks;
  std::set<std::string> seen;
  std::vector<std::string> sources;
  for (const auto& v : g.vertices())
    if (indeg[v] == 0) sources.push_back(v);
  std::sort(sources.begin(), sources.end(), natural_less);
  for (const auto& src : sources) {
    std::vector<std::string> line;
    std::string v = src;
    for (;;) {
      line.push_back(v);
      seen.insert(v);
      auto it = next.find(v);
      if (it == next.end()) break;
      v = it->second;
    }
    blocks.push_back(std::move(line));
  }
  if (seen.size() != g.vertices().size())
    throw Error("NotLineShaped", "stage contains a cycle");
  return blocks;
}

}  // namespace detail

/// Reads the levelled data back off a system of line-shaped stages:
/// sigma_n^{(i,j)} counts the level-(n+1) block-i vertices sitting over the
/// source of level-n block j. Inverse of bratteli_to_system.
inline BratteliData recover_bratteli(const ProjectiveSystem& s) {
  if (s.stationary())
    throw Error("PreconditionViolation", "explicit systems only");
  std::size_t count = *s.stage_count();
  BratteliData b;
  std::vector<std::vector<std::vector<std::string>>> blocks;
  for (std::size_t n = 0; n < count; ++n) {
    blocks.push_back(detail::line_blocks(s.stage(n)));
    std::vector<std::uint64_t> level;
    for (const auto& line : blocks.back()) level.push_back(line.size());
    b.levels.push_back(std::move(level));
  }
  for (std::size_t n = 0; n + 1 < count; ++n) {
    const auto& lower = blocks[n];
    const auto& upper = blocks[n + 1];
    const FactorMap& m = s.map(n);
    std::map<std::string, std::size_t> source_block;
    for (std::size_t j = 0; j < lower.size(); ++j)
      source_block[lower[j].front()] = j;
    std::vector<std::vector<std::uint64_t>> sigma(
        upper.size(), std::vector<std::uint64_t>(lower.size(), 0));
    for (std::size_t i = 0; i < upper.size(); ++i) {
      for (const auto& v : upper[i]) {
        auto img = m.vertex_image(v);
        if (!img) continue;
        auto it = source_block.find(*img);
        if (it != source_block.end()) ++sigma[i][it->second];
      }
    }
    b.multiplicities.push_back(std::move(sigma));
  }
  validate(b);
  return b;
}

}  // namespace tgraph
