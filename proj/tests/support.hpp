#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "svccomp/registry.hpp"

namespace svccomp::testing {

inline Registry travel_registry() { return load_registry_file(SVCCOMP_FIXTURE_DIR "/travel_registry.json"); }

// The worked travel query: from {Date, City} to four booking outputs.
inline Query travel_query(const Registry& r) {
  return make_query(r, {"Date", "City"}, {"HotelName", "FlightInfo", "CarType", "TourCost"});
}

inline ParamSet params(std::initializer_list<const char*> names) {
  ParamSet out;
  for (const char* n : names) out.insert(normalize_param(n));
  return out;
}

inline std::vector<ServiceId> ids(std::initializer_list<const char*> names) {
  std::vector<ServiceId> out;
  for (const char* n : names) out.emplace_back(n);
  return out;
}

inline IdSet id_set(std::initializer_list<const char*> names) {
  IdSet out;
  for (const char* n : names) out.emplace(n);
  return out;
}

inline std::vector<std::string> canon(const ParamSet& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.canonical);
  return out;
}

// Builds a registry from inline rows without going through the document loader.
struct Row {
  const char* id;
  std::initializer_list<const char*> inputs;
  std::initializer_list<const char*> outputs;
};

inline Registry registry_of(std::initializer_list<Row> rows) {
  std::vector<ServiceDescriptor> services;
  ParamSet all;
  for (const auto& row : rows) {
    ServiceDescriptor s{ServiceId(row.id), row.id, params(row.inputs), params(row.outputs)};
    all.insert(s.inputs.begin(), s.inputs.end());
    all.insert(s.outputs.begin(), s.outputs.end());
    services.push_back(std::move(s));
  }
  return Registry(std::move(all), std::move(services));
}

}  // namespace svccomp::testing
