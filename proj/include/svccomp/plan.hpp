#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "svccomp/cst.hpp"
#include "svccomp/search.hpp"

namespace svccomp {

struct CompositionStep {
  CompositionType ctype = CompositionType::None;
  std::vector<ServiceId> ws;
  ParamSet d_out;

  friend bool operator==(const CompositionStep&, const CompositionStep&) = default;
};

struct CompositionAnswer {
  IdSet services;
  std::vector<CompositionStep> steps;  // root-side first; the root itself is omitted
  std::size_t nws = 0;
  std::size_t depth = 0;
  std::vector<ServiceId> execution_order;  // empty until order_services runs

  friend bool operator==(const CompositionAnswer&, const CompositionAnswer&) = default;
};

class UnorderableComposition : public std::runtime_error {
 public:
  explicit UnorderableComposition(std::vector<ServiceId> stuck);
  const std::vector<ServiceId>& stuck() const { return stuck_; }

 private:
  std::vector<ServiceId> stuck_;
};

/// Walks parent links from a Solution node and lists each composition step.
CompositionAnswer extract_path(const Cst& cst, NodeId solution);

/// Fills execution_order by repeatedly firing the smallest-id service whose
/// inputs are available, starting from q_in.
CompositionAnswer order_services(CompositionAnswer answer, const ParamSet& q_in, const Registry& registry);

/// Fires `order` from q_in. Returns the final parameter set, or nothing when a
/// service is reached before its inputs are available.
std::optional<ParamSet> replay(std::span<const ServiceId> order, const ParamSet& q_in, const Registry& registry);

/// Graphviz rendering of the whole tree. Byte-stable for identical trees.
std::string render_dot(const Cst& cst);

/// JSON answer document. `answer == nullptr` renders {"found": false}.
std::string render_answer(const CompositionAnswer* answer);

/// Inverse of render_answer; empty optional for a found=false document.
/// Throws std::invalid_argument on documents that do not follow the schema.
std::optional<CompositionAnswer> parse_answer(std::string_view document);

/// Convenience: extract + order for a search outcome, or nothing when not found.
std::optional<CompositionAnswer> answer_for(const Cst& cst, const SearchOutcome& outcome, const Registry& registry);

}  // namespace svccomp
