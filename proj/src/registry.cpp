#include "svccomp/registry.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace svccomp {

namespace {

using json = nlohmann::json;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += "; ";
    out += l;
  }
  return out;
}

// Splits "ws10" into ["ws", "10"]: alternating digit / non-digit runs.
std::vector<std::string_view> natural_chunks(std::string_view s) {
  std::vector<std::string_view> chunks;
  std::size_t i = 0;
  while (i < s.size()) {
    const bool digit = std::isdigit(static_cast<unsigned char>(s[i])) != 0;
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) != 0) == digit) ++j;
    chunks.push_back(s.substr(i, j - i));
    i = j;
  }
  return chunks;
}

std::strong_ordering compare_numeric(std::string_view a, std::string_view b) {
  auto strip = [](std::string_view s) {
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    return s;
  };
  a = strip(a);
  b = strip(b);
  if (a.size() != b.size()) return a.size() <=> b.size();
  return a <=> b;
}

}  // namespace

RegistryError::RegistryError(std::vector<std::string> issues)
    : std::runtime_error(join_lines(issues)), issues_(std::move(issues)) {}

std::strong_ordering operator<=>(const ServiceId& a, const ServiceId& b) {
  const auto ca = natural_chunks(a.value_);
  const auto cb = natural_chunks(b.value_);
  const std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const bool da = std::isdigit(static_cast<unsigned char>(ca[i].front())) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(cb[i].front())) != 0;
    std::strong_ordering c = (da && db) ? compare_numeric(ca[i], cb[i]) : ca[i] <=> cb[i];
    if (c != 0) return c;
  }
  if (ca.size() != cb.size()) return ca.size() <=> cb.size();
  // "ws01" and "ws1" compare equal numerically; fall back to the raw text.
  return a.value_ <=> b.value_;
}

const char* to_string(MatchClass m) {
  switch (m) {
    case MatchClass::Exact: return "Exact";
    case MatchClass::Super: return "Super";
    case MatchClass::Partial: return "Partial";
    case MatchClass::None: return "None";
  }
  return "?";
}

Parameter normalize_param(std::string_view raw, std::string_view field) {
  const std::string_view t = trim(raw);
  if (t.empty()) {
    throw RegistryError({std::string(field) + ": parameter name is empty"});
  }
  Parameter p;
  p.display = std::string(t);
  p.canonical.reserve(t.size());
  for (char c : t) p.canonical.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return p;
}

ProducerIndex build_producer_index(std::span<const ServiceDescriptor> services) {
  ProducerIndex index;
  for (const auto& s : services) {
    for (const auto& p : s.outputs) index.by_output[p].insert(s.id);
    for (const auto& p : s.inputs) index.by_input[p].insert(s.id);
  }
  return index;
}

Registry::Registry(ParamSet parameters, std::vector<ServiceDescriptor> services)
    : parameters_(std::move(parameters)), services_(std::move(services)) {
  std::sort(services_.begin(), services_.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  index_ = build_producer_index(services_);
}

const ServiceDescriptor* Registry::find(const ServiceId& id) const {
  auto it = std::lower_bound(services_.begin(), services_.end(), id,
                             [](const ServiceDescriptor& s, const ServiceId& v) { return s.id < v; });
  if (it == services_.end() || it->id != id) return nullptr;
  return &*it;
}

const ServiceDescriptor& Registry::service(const ServiceId& id) const {
  const auto* s = find(id);
  if (s == nullptr) throw ContractViolation("unknown service id '" + id.str() + "'");
  return *s;
}

std::optional<Parameter> Registry::resolve(std::string_view raw) const {
  const std::string_view t = trim(raw);
  if (t.empty()) return std::nullopt;
  auto it = parameters_.find(normalize_param(t));
  if (it == parameters_.end()) return std::nullopt;
  return *it;
}

namespace {

bool same_params(const ParamSet& a, const ParamSet& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
    return x.canonical == y.canonical && x.display == y.display;
  });
}

}  // namespace

bool operator==(const Registry& a, const Registry& b) {
  if (!same_params(a.parameters_, b.parameters_)) return false;
  if (a.services_.size() != b.services_.size()) return false;
  for (std::size_t i = 0; i < a.services_.size(); ++i) {
    const auto& x = a.services_[i];
    const auto& y = b.services_[i];
    if (x.id != y.id || x.name != y.name || !same_params(x.inputs, y.inputs) ||
        !same_params(x.outputs, y.outputs)) {
      return false;
    }
  }
  return a.index_ == b.index_;
}

namespace {

// Reads a list of parameter names, reporting problems into `issues`.
ParamSet read_param_list(const json& node, const std::string& where, std::vector<std::string>& issues) {
  ParamSet out;
  if (!node.is_array()) {
    issues.push_back(where + ": expected a list of strings");
    return out;
  }
  for (std::size_t i = 0; i < node.size(); ++i) {
    const auto& item = node[i];
    const std::string field = where + "[" + std::to_string(i) + "]";
    if (!item.is_string()) {
      issues.push_back(field + ": expected a string");
      continue;
    }
    try {
      Parameter p = normalize_param(item.get<std::string>(), field);
      if (!out.insert(p).second) issues.push_back(field + ": duplicate parameter '" + p.display + "'");
    } catch (const RegistryError& e) {
      issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    }
  }
  return out;
}

}  // namespace

Registry load_registry(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw RegistryError({std::string("malformed document: ") + e.what()});
  }
  if (!doc.is_object()) throw RegistryError({"malformed document: top level must be an object"});

  std::vector<std::string> issues;
  for (const auto& [key, _] : doc.items()) {
    if (key != "services" && key != "parameters") issues.push_back("unknown top-level key '" + key + "'");
  }
  if (!doc.contains("services")) issues.push_back("missing top-level key 'services'");
  else if (!doc["services"].is_array()) issues.push_back("services: expected a list");
  if (!issues.empty()) throw RegistryError(std::move(issues));

  std::vector<ServiceDescriptor> services;
  std::set<ServiceId> seen;
  ParamSet inferred;
  const auto& list = doc["services"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& entry = list[i];
    std::string where = "services[" + std::to_string(i) + "]";
    if (!entry.is_object()) {
      issues.push_back(where + ": expected an object");
      continue;
    }
    if (entry.contains("id") && entry["id"].is_string()) {
      where = "service '" + entry["id"].get<std::string>() + "'";
    }
    for (const auto& [key, _] : entry.items()) {
      if (key != "id" && key != "name" && key != "inputs" && key != "outputs") {
        issues.push_back(where + ": unknown key '" + key + "'");
      }
    }
    bool ok = true;
    for (const char* key : {"id", "name", "inputs", "outputs"}) {
      if (!entry.contains(key)) {
        issues.push_back(where + ": missing field '" + key + "'");
        ok = false;
      }
    }
    if (!ok) continue;
    if (!entry["id"].is_string() || trim(entry["id"].get<std::string>()).empty()) {
      issues.push_back(where + ".id: expected a non-empty string");
      continue;
    }
    if (!entry["name"].is_string()) {
      issues.push_back(where + ".name: expected a string");
      continue;
    }

    ServiceDescriptor s;
    s.id = ServiceId(std::string(trim(entry["id"].get<std::string>())));
    s.name = entry["name"].get<std::string>();
    const std::size_t before = issues.size();
    s.inputs = read_param_list(entry["inputs"], where + ".inputs", issues);
    s.outputs = read_param_list(entry["outputs"], where + ".outputs", issues);
    if (entry["outputs"].is_array() && entry["outputs"].empty()) {
      issues.push_back(where + ".outputs: a service must produce at least one parameter");
    }
    if (!seen.insert(s.id).second) {
      issues.push_back("duplicate service id '" + s.id.str() + "'");
    }
    if (issues.size() != before) continue;
    inferred.insert(s.inputs.begin(), s.inputs.end());
    inferred.insert(s.outputs.begin(), s.outputs.end());
    services.push_back(std::move(s));
  }

  ParamSet parameters;
  if (doc.contains("parameters")) {
    parameters = read_param_list(doc["parameters"], "parameters", issues);
    for (const auto& p : inferred) {
      if (!parameters.contains(p)) {
        issues.push_back("parameters: '" + p.display + "' is used by a service but not declared");
      }
    }
  } else {
    parameters = std::move(inferred);
  }
  if (!issues.empty()) throw RegistryError(std::move(issues));

  // Services share the registry's spelling of each parameter (first seen wins).
  auto canonicalize = [&](ParamSet& set) {
    ParamSet out;
    for (const auto& p : set) out.insert(*parameters.find(p));
    set = std::move(out);
  };
  for (auto& s : services) {
    canonicalize(s.inputs);
    canonicalize(s.outputs);
  }
  return Registry(std::move(parameters), std::move(services));
}

Registry load_registry_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RegistryError({"cannot open registry file '" + path.string() + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_registry(buf.str());
}

std::string dump_registry(const Registry& registry) {
  nlohmann::ordered_json services = nlohmann::ordered_json::array();
  for (const auto& s : registry.services()) {
    nlohmann::ordered_json entry;
    entry["id"] = s.id.str();
    entry["name"] = s.name;
    entry["inputs"] = nlohmann::ordered_json::array();
    for (const auto& p : s.inputs) entry["inputs"].push_back(p.display);
    entry["outputs"] = nlohmann::ordered_json::array();
    for (const auto& p : s.outputs) entry["outputs"].push_back(p.display);
    services.push_back(std::move(entry));
  }
  nlohmann::ordered_json doc;
  doc["services"] = std::move(services);
  return doc.dump(2) + "\n";
}

Query make_query(const Registry& registry, const std::vector<std::string>& inputs,
                 const std::vector<std::string>& outputs) {
  Query q;
  std::vector<std::string> unknown;
  auto resolve_all = [&](const std::vector<std::string>& raw, ParamSet& into) {
    for (const auto& r : raw) {
      if (trim(r).empty()) continue;
      if (auto p = registry.resolve(r)) into.insert(*p);
      else unknown.emplace_back(trim(r));
    }
  };
  resolve_all(inputs, q.initial_inputs);
  resolve_all(outputs, q.desired_outputs);
  if (!unknown.empty()) {
    std::string msg = "unknown parameter(s):";
    for (const auto& u : unknown) msg += " " + u;
    throw QueryError(msg, std::move(unknown));
  }
  if (q.desired_outputs.empty()) throw QueryError("query requests no outputs");
  return q;
}

MatchClass classify_match(const ParamSet& outputs, const ParamSet& desired) {
  if (desired.empty()) throw ContractViolation("classify_match: desired set is empty");
  const bool covers = is_subset(desired, outputs);
  if (covers) return outputs.size() == desired.size() ? MatchClass::Exact : MatchClass::Super;
  for (const auto& p : desired) {
    if (outputs.contains(p)) return MatchClass::Partial;
  }
  return MatchClass::None;
}

MatchLists find_matching_services(const Registry& registry, const ParamSet& desired) {
  if (desired.empty()) throw ContractViolation("find_matching_services: desired set is empty");
  IdSet candidates;
  const auto& by_output = registry.index().by_output;
  for (const auto& p : desired) {
    if (auto it = by_output.find(p); it != by_output.end()) candidates.insert(it->second.begin(), it->second.end());
  }
  MatchLists lists;
  for (const auto& id : candidates) {
    switch (classify_match(registry.service(id).outputs, desired)) {
      case MatchClass::Exact: lists.exact.push_back(id); break;
      case MatchClass::Super: lists.super.push_back(id); break;
      case MatchClass::Partial: lists.partial.push_back(id); break;
      case MatchClass::None: break;
    }
  }
  return lists;
}

ParamSet set_difference(const ParamSet& a, const ParamSet& b) {
  ParamSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

ParamSet set_intersection(const ParamSet& a, const ParamSet& b) {
  ParamSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool is_subset(const ParamSet& a, const ParamSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string join_display(const ParamSet& params, std::string_view sep) {
  std::string out;
  for (const auto& p : params) {
    if (!out.empty()) out += sep;
    out += p.display;
  }
  return out;
}

}  // namespace svccomp
