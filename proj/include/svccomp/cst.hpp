#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "svccomp/registry.hpp"

namespace svccomp {

enum class CompositionType { None, Exact, Super, Collaborative };
enum class NodeKind { Root, Internal, Unsolvable, Solution };

const char* to_string(CompositionType t);
const char* to_string(NodeKind k);

using NodeId = std::size_t;

// Child slots of a node: left = Exact, middle = Super, right = Collaborative.
enum class ChildSlot : std::size_t { Left = 0, Middle = 1, Right = 2 };

struct CstNode {
  NodeId id = 0;
  NodeKind kind = NodeKind::Internal;
  CompositionType ctype = CompositionType::None;
  std::vector<ServiceId> ws;  // services added at this node, ascending
  std::size_t nws = 0;        // services used from the root down to here
  ParamSet d_out;             // parameters still required
  std::optional<NodeId> parent;
  std::array<std::optional<NodeId>, 3> children;
  std::size_t depth = 0;

  bool is_leaf() const { return kind == NodeKind::Solution || kind == NodeKind::Unsolvable; }
  std::optional<NodeId> child(ChildSlot slot) const { return children[static_cast<std::size_t>(slot)]; }
};

struct BuildLimits {
  std::size_t max_depth = 32;
  std::size_t max_nodes = 10'000;
};

/// Composition Search Tree. Nodes live in one arena in creation order, which
/// is also level order because construction is breadth-first.
class Cst {
 public:
  const CstNode& root() const { return nodes_.front(); }
  const CstNode& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<CstNode>& nodes() const { return nodes_; }
  const std::vector<NodeId>& solutions() const { return solutions_; }
  std::size_t unsolvable_count() const { return unsolvable_count_; }
  bool truncated() const { return truncated_; }
  const Query& query() const { return query_; }

  /// Children of `id` in left/middle/right order, skipping empty slots.
  std::vector<NodeId> children_of(NodeId id) const;
  /// Node ids from the root down to `id`, inclusive.
  std::vector<NodeId> path_to(NodeId id) const;
  /// Union of ws along the root-to-`id` path.
  IdSet services_on_path(NodeId id) const;

 private:
  friend class CstBuilder;

  std::vector<CstNode> nodes_;
  std::vector<NodeId> solutions_;
  std::size_t unsolvable_count_ = 0;
  bool truncated_ = false;
  Query query_;
};

/// Service inputs minus query inputs. Shared by the Exact and Super children.
ParamSet required_inputs_single(const ServiceDescriptor& service, const ParamSet& q_in);

/// Collective inputs of the group minus the query inputs minus the outputs of the members
/// that can run on the query inputs alone.
ParamSet required_inputs_collab(std::span<const ServiceDescriptor* const> group, const ParamSet& q_in);

std::optional<ServiceId> choose_exact(std::span<const ServiceId> candidates);

/// Fewest outputs outside `desired`, then smallest id.
std::optional<ServiceId> choose_super(std::span<const ServiceId> candidates, const ParamSet& desired,
                                      const Registry& registry);

/// Greedy set cover of `desired` by partial matches. Each round takes the
/// candidate covering the most uncovered parameters; ties go to fewer inputs
/// outside the query inputs, then to the smallest id. Empty when no full cover is reached.
std::optional<std::vector<ServiceId>> choose_collaborative(std::span<const ServiceId> partials,
                                                           const ParamSet& desired,
                                                           const ParamSet& q_in,
                                                           const Registry& registry);

/// Step-wise breadth-first construction. build_cst drives it to completion;
/// tests can call expand_node directly.
class CstBuilder {
 public:
  CstBuilder(const Registry& registry, Query query, BuildLimits limits = {});

  /// Pops the next live node, or nothing once the queue is drained.
  std::optional<NodeId> next_live();

  /// Creates up to three children for `id`. Children with nothing left to
  /// satisfy become Solution nodes; cyclic or over-deep ones become
  /// Unsolvable; the rest are queued. Marks `id` Unsolvable when no child
  /// can be formed.
  std::vector<NodeId> expand_node(NodeId id);

  const Cst& tree() const { return cst_; }
  Cst finish() &&;

 private:
  NodeId add_child(NodeId parent, ChildSlot slot, CompositionType ctype, std::vector<ServiceId> ws,
                   ParamSet d_out);
  bool repeats_ancestor(NodeId parent, const ParamSet& d_out) const;

  const Registry& registry_;
  BuildLimits limits_;
  Cst cst_;
  std::deque<NodeId> live_;
};

Cst build_cst(const Registry& registry, const Query& query, const BuildLimits& limits = {});

}  // namespace svccomp
