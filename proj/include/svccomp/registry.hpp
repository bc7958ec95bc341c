#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svccomp/errors.hpp"

namespace svccomp {

// A parameter name. Equality and ordering use only the canonical key, so
// "HotelCost" and " hotelcost" are the same parameter.
struct Parameter {
  std::string canonical;
  std::string display;

  friend bool operator==(const Parameter& a, const Parameter& b) {
    return a.canonical == b.canonical;
  }
  friend std::strong_ordering operator<=>(const Parameter& a, const Parameter& b) {
    return a.canonical <=> b.canonical;
  }
};

using ParamSet = std::set<Parameter>;

// Service identifier. Ordered naturally ("ws2" < "ws10") so every candidate
// list and tie-break in the engine is deterministic.
class ServiceId {
 public:
  ServiceId() = default;
  explicit ServiceId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const { return value_; }

  friend bool operator==(const ServiceId&, const ServiceId&) = default;
  friend std::strong_ordering operator<=>(const ServiceId& a, const ServiceId& b);

 private:
  std::string value_;
};

using IdSet = std::set<ServiceId>;

struct ServiceDescriptor {
  ServiceId id;
  std::string name;
  ParamSet inputs;
  ParamSet outputs;
};

// Parameter -> services that produce / consume it. Built once at load time.
struct ProducerIndex {
  std::map<Parameter, IdSet> by_output;
  std::map<Parameter, IdSet> by_input;

  friend bool operator==(const ProducerIndex&, const ProducerIndex&) = default;
};

enum class MatchClass { Exact, Super, Partial, None };

const char* to_string(MatchClass m);

/// Trims surrounding whitespace and case-folds to obtain the canonical key.
/// Throws RegistryError naming `field` when nothing but whitespace remains.
Parameter normalize_param(std::string_view raw, std::string_view field = "parameter");

ProducerIndex build_producer_index(std::span<const ServiceDescriptor> services);

/// Immutable service universe plus its producer index. Services are held in
/// ascending id order.
class Registry {
 public:
  Registry() = default;
  Registry(ParamSet parameters, std::vector<ServiceDescriptor> services);

  const ParamSet& parameters() const { return parameters_; }
  const std::vector<ServiceDescriptor>& services() const { return services_; }
  const ProducerIndex& index() const { return index_; }

  const ServiceDescriptor* find(const ServiceId& id) const;
  const ServiceDescriptor& service(const ServiceId& id) const;

  // Looks up the registry's own spelling of a parameter, if known.
  std::optional<Parameter> resolve(std::string_view raw) const;

  friend bool operator==(const Registry& a, const Registry& b);

 private:
  ParamSet parameters_;
  std::vector<ServiceDescriptor> services_;
  ProducerIndex index_;
};

Registry load_registry(std::string_view document);
Registry load_registry_file(const std::filesystem::path& path);

/// Serializes a registry back into the document format accepted by
/// load_registry (without the optional "parameters" key).
std::string dump_registry(const Registry& registry);

struct Query {
  ParamSet initial_inputs;
  ParamSet desired_outputs;
};

/// Normalizes raw names and resolves them against the registry. Unknown names
/// and an empty output list raise QueryError.
Query make_query(const Registry& registry, const std::vector<std::string>& inputs,
                 const std::vector<std::string>& outputs);

MatchClass classify_match(const ParamSet& outputs, const ParamSet& desired);

struct MatchLists {
  std::vector<ServiceId> exact;
  std::vector<ServiceId> super;
  std::vector<ServiceId> partial;
};

MatchLists find_matching_services(const Registry& registry, const ParamSet& desired);

// Small set helpers shared across modules.
ParamSet set_difference(const ParamSet& a, const ParamSet& b);
ParamSet set_intersection(const ParamSet& a, const ParamSet& b);
bool is_subset(const ParamSet& a, const ParamSet& b);
std::string join_display(const ParamSet& params, std::string_view sep = ", ");

}  // namespace svccomp
