#include "svccomp/plan.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace svccomp {

namespace {

using ojson = nlohmann::ordered_json;

std::string describe(const std::vector<ServiceId>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id.str();
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

const char* slot_label(std::size_t slot) {
  static constexpr const char* kLabels[] = {"E", "S", "C"};
  return kLabels[slot];
}

ojson id_list(const auto& ids) {
  ojson arr = ojson::array();
  for (const auto& id : ids) arr.push_back(id.str());
  return arr;
}

CompositionType parse_ctype(const std::string& s) {
  for (auto t : {CompositionType::Exact, CompositionType::Super, CompositionType::Collaborative}) {
    if (s == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown composition type '" + s + "'");
}

}  // namespace

UnorderableComposition::UnorderableComposition(std::vector<ServiceId> stuck)
    : std::runtime_error("unorderable composition; stuck services: " + describe(stuck)), stuck_(std::move(stuck)) {}

CompositionAnswer extract_path(const Cst& cst, NodeId solution) {
  const auto& leaf = cst.node(solution);
  if (leaf.kind != NodeKind::Solution) throw ContractViolation("extract_path: node is not a Solution");
  CompositionAnswer answer;
  for (NodeId id : cst.path_to(solution)) {
    const auto& n = cst.node(id);
    if (!n.parent) continue;
    answer.steps.push_back({n.ctype, n.ws, n.d_out});
    answer.services.insert(n.ws.begin(), n.ws.end());
  }
  answer.nws = leaf.nws;
  answer.depth = leaf.depth;
  return answer;
}

CompositionAnswer order_services(CompositionAnswer answer, const ParamSet& q_in, const Registry& registry) {
  ParamSet available = q_in;
  std::vector<ServiceId> pending(answer.services.begin(), answer.services.end());
  answer.execution_order.clear();
  while (!pending.empty()) {
    auto it = std::find_if(pending.begin(), pending.end(), [&](const ServiceId& id) {
      return is_subset(registry.service(id).inputs, available);
    });
    if (it == pending.end()) throw UnorderableComposition(std::move(pending));
    const auto& s = registry.service(*it);
    available.insert(s.outputs.begin(), s.outputs.end());
    answer.execution_order.push_back(*it);
    pending.erase(it);
  }
  return answer;
}

std::optional<ParamSet> replay(std::span<const ServiceId> order, const ParamSet& q_in, const Registry& registry) {
  ParamSet available = q_in;
  for (const auto& id : order) {
    const auto& s = registry.service(id);
    if (!is_subset(s.inputs, available)) return std::nullopt;
    available.insert(s.outputs.begin(), s.outputs.end());
  }
  return available;
}

std::string render_dot(const Cst& cst) {
  std::ostringstream out;
  out << "digraph cst {\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (const auto& n : cst.nodes()) {
    std::string label = n.parent ? dot_escape(describe(n.ws)) : std::string("root");
    label += "\\nnws " + std::to_string(n.nws);
    label += "\\nneeds: " + (n.d_out.empty() ? std::string("-") : dot_escape(join_display(n.d_out)));
    out << "  n" << n.id << " [label=\"" << label << "\"";
    if (n.kind == NodeKind::Solution) out << ", style=\"filled,bold\", fillcolor=\"palegreen\"";
    else if (n.kind == NodeKind::Unsolvable) out << ", style=dashed, color=\"gray40\"";
    out << "];\n";
  }
  for (const auto& n : cst.nodes()) {
    for (std::size_t slot = 0; slot < n.children.size(); ++slot) {
      if (n.children[slot]) {
        out << "  n" << n.id << " -> n" << *n.children[slot] << " [label=\"" << slot_label(slot) << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string render_answer(const CompositionAnswer* answer) {
  ojson doc;
  doc["found"] = answer != nullptr;
  if (answer != nullptr) {
    doc["services"] = id_list(answer->services);
    doc["steps"] = ojson::array();
    for (const auto& step : answer->steps) {
      ojson s;
      s["type"] = to_string(step.ctype);
      s["services"] = id_list(step.ws);
      s["remaining"] = ojson::array();
      for (const auto& p : step.d_out) s["remaining"].push_back(p.display);
      doc["steps"].push_back(std::move(s));
    }
    doc["nws"] = answer->nws;
    doc["depth"] = answer->depth;
    doc["execution_order"] = id_list(answer->execution_order);
  }
  return doc.dump(2) + "\n";
}

std::optional<CompositionAnswer> parse_answer(std::string_view document) {
  try {
    const auto doc = ojson::parse(document);
    if (!doc.at("found").get<bool>()) return std::nullopt;
    CompositionAnswer a;
    for (const auto& id : doc.at("services")) a.services.insert(ServiceId(id.get<std::string>()));
    for (const auto& s : doc.at("steps")) {
      CompositionStep step;
      step.ctype = parse_ctype(s.at("type").get<std::string>());
      for (const auto& id : s.at("services")) step.ws.emplace_back(id.get<std::string>());
      for (const auto& p : s.at("remaining")) step.d_out.insert(normalize_param(p.get<std::string>()));
      a.steps.push_back(std::move(step));
    }
    a.nws = doc.at("nws").get<std::size_t>();
    a.depth = doc.at("depth").get<std::size_t>();
    for (const auto& id : doc.at("execution_order")) a.execution_order.emplace_back(id.get<std::string>());
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed answer document: ") + e.what());
  }
}

std::optional<CompositionAnswer> answer_for(const Cst& cst, const SearchOutcome& outcome, const Registry& registry) {
  if (!outcome.found) return std::nullopt;
  return order_services(extract_path(cst, *outcome.node), cst.query().initial_inputs, registry);
}

}  // namespace svccomp
