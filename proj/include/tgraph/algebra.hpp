#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tgraph/errors.hpp"
#include "tgraph/graph.hpp"
#include "tgraph/paths.hpp"

namespace tgraph {

/// Formal finite direct sum of matrix algebras, kept as a multiset of block
/// sizes. M_1 stands for the complex numbers. Two expressions are isomorphic
/// exactly when the multisets agree.
class AlgebraExpr {
 public:
  AlgebraExpr() = default;
  explicit AlgebraExpr(std::vector<std::uint64_t> summands)
      : summands_(std::move(summands)) {
    for (auto n : summands_)
      if (n == 0) throw Error("InvariantViolation", "matrix block of size 0");
    std::sort(summands_.begin(), summands_.end());
  }

  const std::vector<std::uint64_t>& summands() const { return summands_; }
  bool empty() const { return summands_.empty(); }

  std::uint64_t dimension() const {
    std::uint64_t total = 0;
    for (auto n : summands_) {
      std::uint64_t sq;
      if (__builtin_mul_overflow(n, n, &sq) ||
          __builtin_add_overflow(total, sq, &total))
        throw std::overflow_error("AlgebraExpr: dimension overflow");
    }
    return total;
  }

  /// "M_4 ⊕ M_2 ⊕ M_1", largest block first; "0" for the zero algebra.
  std::string to_string() const {
    if (summands_.empty()) return "0";
    std::string out;
    for (auto it = summands_.rbegin(); it != summands_.rend(); ++it) {
      if (!out.empty()) out += " ⊕ ";
      out += "M_" + std::to_string(*it);
    }
    return out;
  }

  friend bool operator==(const AlgebraExpr& a, const AlgebraExpr& b) {
    return a.summands_ == b.summands_;
  }
  friend bool operator!=(const AlgebraExpr& a, const AlgebraExpr& b) {
    return !(a == b);
  }

 private:
  std::vector<std::uint64_t> summands_;  // ascending
};

namespace detail {
inline std::uint64_t mul_sizes(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("AlgebraExpr: block size overflow");
  return r;
}
}  // namespace detail

inline AlgebraExpr direct_sum(const AlgebraExpr& a, const AlgebraExpr& b) {
  std::vector<std::uint64_t> s = a.summands();
  s.insert(s.end(), b.summands().begin(), b.summands().end());
  return AlgebraExpr(std::move(s));
}

/// Tensoring with M_k scales every block size by k.
inline AlgebraExpr tensor_matrix(const AlgebraExpr& a, std::uint64_t k) {
  if (k == 0) throw Error("InvariantViolation", "tensor factor must be positive");
  std::vector<std::uint64_t> s;
  s.reserve(a.summands().size());
  for (auto n : a.summands()) s.push_back(detail::mul_sizes(n, k));
  return AlgebraExpr(std::move(s));
}

/// Identifies the algebra of a finite acyclic graph with finite
/// multiplicities: one matrix block per source, sized by the number of
/// paths leaving it. Relations are imposed at receiving vertices, so every
/// monomial reduces to a pair of paths anchored at a common source.
inline AlgebraExpr identify_finite_dim(const TopGraph& g) {
  for (const auto& [id, c] : g.classes())
    if (c.mult.is_omega())
      throw Error("HasInfiniteMultiplicity",
                  "class '" + id + "' has multiplicity omega");
  if (has_loops(g)) throw Error("HasLoops", "graph has a loop");
  std::vector<std::uint64_t> blocks;
  for (const auto& v : classify(g).sce)
    blocks.push_back(path_count_from(g, v).finite());
  return AlgebraExpr(std::move(blocks));
}

}  // namespace tgraph
