#include "svccomp/search.hpp"

#include <limits>
#include <numeric>

namespace svccomp {

SearchOutcome SearchOutcome::at(const Cst& cst, NodeId id) {
  const auto& n = cst.node(id);
  return {true, id, n.nws, n.depth, cst.truncated()};
}

SearchOutcome find_shortest_depth(const Cst& cst) {
  std::vector<NodeId> level = cst.children_of(cst.root().id);
  while (!level.empty()) {
    std::vector<NodeId> next;
    for (NodeId id : level) {
      const auto& n = cst.node(id);
      if (n.kind == NodeKind::Solution) return SearchOutcome::at(cst, id);
      if (n.kind == NodeKind::Unsolvable) continue;
      for (NodeId c : cst.children_of(id)) next.push_back(c);
    }
    level = std::move(next);
  }
  return SearchOutcome::not_found(cst);
}

SearchOutcome find_leanest(const Cst& cst) {
  std::optional<NodeId> best;
  std::size_t min_nws = std::numeric_limits<std::size_t>::max();
  std::size_t level_no = 0;
  std::vector<NodeId> level = cst.children_of(cst.root().id);
  while (!level.empty()) {
    ++level_no;
    // Nothing at this depth or below can carry fewer than level_no services.
    if (level_no > min_nws) break;
    std::vector<NodeId> next;
    for (NodeId id : level) {
      const auto& n = cst.node(id);
      if (n.kind == NodeKind::Solution) {
        if (n.nws < min_nws) {
          best = id;
          min_nws = n.nws;
        }
        if (n.nws == level_no) return SearchOutcome::at(cst, *best);
        continue;
      }
      if (n.kind == NodeKind::Unsolvable) continue;
      for (NodeId c : cst.children_of(id)) next.push_back(c);
    }
    level = std::move(next);
  }
  return best ? SearchOutcome::at(cst, *best) : SearchOutcome::not_found(cst);
}

std::vector<SolutionRecord> enumerate_solutions(const Cst& cst) {
  std::vector<SolutionRecord> out;
  out.reserve(cst.solutions().size());
  for (NodeId id : cst.solutions()) {
    const auto& n = cst.node(id);
    out.push_back({id, n.nws, n.depth});
  }
  return out;
}

ParamSet forward_closure(const Registry& registry, const ParamSet& start, const IdSet* allowed) {
  ParamSet available = start;
  std::vector<const ServiceDescriptor*> pending;
  for (const auto& s : registry.services()) {
    if (allowed == nullptr || allowed->contains(s.id)) pending.push_back(&s);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = pending.begin(); it != pending.end();) {
      if (is_subset((*it)->inputs, available)) {
        available.insert((*it)->outputs.begin(), (*it)->outputs.end());
        it = pending.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return available;
}

OracleReport oracle_leanest(const Registry& registry, const Query& query, std::size_t max_k) {
  if (max_k == 0) throw ContractViolation("oracle_leanest: max_k must be at least 1");
  const auto& services = registry.services();
  const std::size_t n = services.size();
  for (std::size_t k = 0; k <= std::min(max_k, n); ++k) {
    // Lexicographic k-combinations of indices into the id-sorted service list.
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      IdSet subset;
      for (std::size_t i : pick) subset.insert(services[i].id);
      if (is_subset(query.desired_outputs, forward_closure(registry, query.initial_inputs, &subset))) {
        return {true, k, std::move(subset)};
      }
      // Advance to the next combination.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return {};
}

}  // namespace svccomp
