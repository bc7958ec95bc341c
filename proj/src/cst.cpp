#include "svccomp/cst.hpp"

#include <algorithm>
#include <tuple>

namespace svccomp {

const char* to_string(CompositionType t) {
  switch (t) {
    case CompositionType::None: return "None";
    case CompositionType::Exact: return "Exact";
    case CompositionType::Super: return "Super";
    case CompositionType::Collaborative: return "Collaborative";
  }
  return "?";
}

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Root: return "Root";
    case NodeKind::Internal: return "Internal";
    case NodeKind::Unsolvable: return "Unsolvable";
    case NodeKind::Solution: return "Solution";
  }
  return "?";
}

std::vector<NodeId> Cst::children_of(NodeId id) const {
  std::vector<NodeId> out;
  for (const auto& c : node(id).children) {
    if (c) out.push_back(*c);
  }
  return out;
}

std::vector<NodeId> Cst::path_to(NodeId id) const {
  std::vector<NodeId> path;
  std::optional<NodeId> cur = id;
  while (cur) {
    path.push_back(*cur);
    cur = node(*cur).parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

IdSet Cst::services_on_path(NodeId id) const {
  IdSet used;
  for (NodeId n : path_to(id)) used.insert(node(n).ws.begin(), node(n).ws.end());
  return used;
}

ParamSet required_inputs_single(const ServiceDescriptor& service, const ParamSet& q_in) {
  return set_difference(service.inputs, q_in);
}

ParamSet required_inputs_collab(std::span<const ServiceDescriptor* const> group, const ParamSet& q_in) {
  if (group.empty()) throw ContractViolation("required_inputs_collab: empty group");
  ParamSet collective_inputs;
  ParamSet first_round_outputs;  // outputs of members runnable on the query inputs alone
  for (const auto* s : group) {
    collective_inputs.insert(s->inputs.begin(), s->inputs.end());
    if (is_subset(s->inputs, q_in)) first_round_outputs.insert(s->outputs.begin(), s->outputs.end());
  }
  return set_difference(set_difference(collective_inputs, q_in), first_round_outputs);
}

std::optional<ServiceId> choose_exact(std::span<const ServiceId> candidates) {
  if (candidates.empty()) return std::nullopt;
  return *std::min_element(candidates.begin(), candidates.end());
}

std::optional<ServiceId> choose_super(std::span<const ServiceId> candidates, const ParamSet& desired,
                                      const Registry& registry) {
  std::optional<ServiceId> best;
  std::size_t best_surplus = 0;
  for (const auto& id : candidates) {
    const std::size_t surplus = set_difference(registry.service(id).outputs, desired).size();
    if (!best || surplus < best_surplus || (surplus == best_surplus && id < *best)) {
      best = id;
      best_surplus = surplus;
    }
  }
  return best;
}

std::optional<std::vector<ServiceId>> choose_collaborative(std::span<const ServiceId> partials,
                                                           const ParamSet& desired,
                                                           const ParamSet& q_in,
                                                           const Registry& registry) {
  ParamSet uncovered = desired;
  std::vector<ServiceId> remaining(partials.begin(), partials.end());
  std::vector<ServiceId> selected;
  while (!uncovered.empty()) {
    std::optional<std::size_t> pick;
    // (gain, missing inputs, id): larger gain wins, then fewer missing, then smaller id.
    std::tuple<std::size_t, std::size_t> best_key{0, 0};
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const auto& s = registry.service(remaining[i]);
      const std::size_t gain = set_intersection(s.outputs, uncovered).size();
      if (gain == 0) continue;
      const std::size_t missing = set_difference(s.inputs, q_in).size();
      const auto& [best_gain, best_missing] = best_key;
      const bool better = !pick || gain > best_gain ||
                          (gain == best_gain && missing < best_missing) ||
                          (gain == best_gain && missing == best_missing && remaining[i] < remaining[*pick]);
      if (better) {
        pick = i;
        best_key = {gain, missing};
      }
    }
    if (!pick) return std::nullopt;
    const auto& chosen = registry.service(remaining[*pick]);
    uncovered = set_difference(uncovered, chosen.outputs);
    selected.push_back(chosen.id);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*pick));
  }
  if (selected.size() < 2) return std::nullopt;  // unreachable for genuine partial matches
  std::sort(selected.begin(), selected.end());
  return selected;
}

CstBuilder::CstBuilder(const Registry& registry, Query query, BuildLimits limits)
    : registry_(registry), limits_(limits) {
  if (limits_.max_depth == 0 || limits_.max_nodes == 0) {
    throw ContractViolation("build limits must be positive");
  }
  if (query.desired_outputs.empty()) throw QueryError("query requests no outputs");
  std::vector<std::string> unknown;
  for (const auto* set : {&query.initial_inputs, &query.desired_outputs}) {
    for (const auto& p : *set) {
      if (!registry.parameters().contains(p)) unknown.push_back(p.display);
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown parameter(s):";
    for (const auto& u : unknown) msg += " " + u;
    throw QueryError(msg, std::move(unknown));
  }

  CstNode root;
  root.id = 0;
  root.kind = NodeKind::Root;
  root.ctype = CompositionType::None;
  root.d_out = query.desired_outputs;
  cst_.query_ = std::move(query);
  cst_.nodes_.push_back(std::move(root));
  live_.push_back(0);
}

std::optional<NodeId> CstBuilder::next_live() {
  if (live_.empty()) return std::nullopt;
  const NodeId id = live_.front();
  live_.pop_front();
  return id;
}

bool CstBuilder::repeats_ancestor(NodeId parent, const ParamSet& d_out) const {
  std::optional<NodeId> cur = parent;
  while (cur) {
    const auto& n = cst_.nodes_[*cur];
    if (n.d_out == d_out) return true;
    cur = n.parent;
  }
  return false;
}

NodeId CstBuilder::add_child(NodeId parent, ChildSlot slot, CompositionType ctype, std::vector<ServiceId> ws,
                             ParamSet d_out) {
  CstNode child;
  child.id = cst_.nodes_.size();
  child.ctype = ctype;
  child.nws = cst_.nodes_[parent].nws + ws.size();
  child.ws = std::move(ws);
  child.parent = parent;
  child.depth = cst_.nodes_[parent].depth + 1;

  if (d_out.empty()) {
    child.kind = NodeKind::Solution;
    cst_.solutions_.push_back(child.id);
  } else if (repeats_ancestor(parent, d_out)) {
    // Asking again for something an ancestor already asks for cannot make progress.
    child.kind = NodeKind::Unsolvable;
    ++cst_.unsolvable_count_;
  } else if (child.depth >= limits_.max_depth) {
    child.kind = NodeKind::Unsolvable;
    ++cst_.unsolvable_count_;
    cst_.truncated_ = true;
  } else {
    child.kind = NodeKind::Internal;
    live_.push_back(child.id);
  }
  child.d_out = std::move(d_out);

  const NodeId id = child.id;
  cst_.nodes_[parent].children[static_cast<std::size_t>(slot)] = id;
  cst_.nodes_.push_back(std::move(child));
  return id;
}

std::vector<NodeId> CstBuilder::expand_node(NodeId id) {
  {
    const auto& n = cst_.nodes_.at(id);
    if (n.is_leaf()) throw ContractViolation("expand_node: node is a leaf");
    if (n.d_out.empty()) throw ContractViolation("expand_node: node has nothing to satisfy");
  }
  // Copies: add_child grows the arena and would invalidate references.
  const ParamSet desired = cst_.nodes_[id].d_out;
  const ParamSet& q_in = cst_.query_.initial_inputs;
  const IdSet used = cst_.services_on_path(id);

  MatchLists lists = find_matching_services(registry_, desired);
  auto drop_used = [&](std::vector<ServiceId>& v) {
    std::erase_if(v, [&](const ServiceId& s) { return used.contains(s); });
  };
  drop_used(lists.exact);
  drop_used(lists.super);
  drop_used(lists.partial);

  const auto exact = choose_exact(lists.exact);
  const auto super = choose_super(lists.super, desired, registry_);
  const auto collab = choose_collaborative(lists.partial, desired, q_in, registry_);

  if (!exact && !super && !collab) {
    cst_.nodes_[id].kind = NodeKind::Unsolvable;
    ++cst_.unsolvable_count_;
    return {};
  }

  std::vector<NodeId> created;
  auto room = [&] {
    if (cst_.nodes_.size() < limits_.max_nodes) return true;
    cst_.truncated_ = true;
    return false;
  };
  if (exact && room()) {
    created.push_back(add_child(id, ChildSlot::Left, CompositionType::Exact, {*exact},
                                required_inputs_single(registry_.service(*exact), q_in)));
  }
  if (super && room()) {
    created.push_back(add_child(id, ChildSlot::Middle, CompositionType::Super, {*super},
                                required_inputs_single(registry_.service(*super), q_in)));
  }
  if (collab && room()) {
    std::vector<const ServiceDescriptor*> group;
    for (const auto& s : *collab) group.push_back(&registry_.service(s));
    created.push_back(add_child(id, ChildSlot::Right, CompositionType::Collaborative, *collab,
                                required_inputs_collab(group, q_in)));
  }
  return created;
}

Cst CstBuilder::finish() && { return std::move(cst_); }

Cst build_cst(const Registry& registry, const Query& query, const BuildLimits& limits) {
  CstBuilder builder(registry, query, limits);
  while (auto id = builder.next_live()) builder.expand_node(*id);
  return std::move(builder).finish();
}

}  // namespace svccomp
