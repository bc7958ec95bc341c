#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "svccomp/cst.hpp"

namespace svccomp {

struct SearchOutcome {
  bool found = false;
  std::optional<NodeId> node;
  std::optional<std::size_t> nws;
  std::optional<std::size_t> depth;
  bool truncated = false;  // the tree hit a build limit; the answer covers only what was built

  static SearchOutcome not_found(const Cst& cst) { return {false, {}, {}, {}, cst.truncated()}; }
  static SearchOutcome at(const Cst& cst, NodeId id);
};

struct SolutionRecord {
  NodeId node;
  std::size_t nws;
  std::size_t depth;

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

/// First Solution met in level order (left, middle, right within a parent).
SearchOutcome find_shortest_depth(const Cst& cst);

/// Level-order search for the Solution with the fewest services. Stops as
/// soon as a level cannot beat the best found so far: every node carries at
/// least as many services as its depth.
SearchOutcome find_leanest(const Cst& cst);

/// Every Solution node once, in discovery order.
std::vector<SolutionRecord> enumerate_solutions(const Cst& cst);

/// Least fixed point of firing services (restricted to `allowed` when given)
/// whose inputs are all available, starting from `start`.
ParamSet forward_closure(const Registry& registry, const ParamSet& start, const IdSet* allowed = nullptr);

struct OracleReport {
  bool satisfiable = false;
  std::optional<std::size_t> minimal_count;
  std::optional<IdSet> witness;
};

/// Exhaustive search over service subsets of size 0..max_k in lexicographic
/// id order for the smallest set whose closure from the query inputs covers the desired outputs.
/// Exponential; meant for registries of a few dozen services.
OracleReport oracle_leanest(const Registry& registry, const Query& query, std::size_t max_k);

}  // namespace svccomp
