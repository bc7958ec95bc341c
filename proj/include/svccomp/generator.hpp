#pragma once

#include <cstdint>
#include <random>

#include "svccomp/registry.hpp"

namespace svccomp {

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::size_t services = 10;
  std::size_t params = 8;
  std::size_t max_inputs = 3;
  std::size_t max_outputs = 3;
};

/// Deterministic pseudo-random registry. Parameters are named p0..p{n-1} and
/// services s1..s{n}; every service has at least one output. Throws
/// std::invalid_argument when params or max_outputs is zero.
Registry generate_registry(const GeneratorConfig& config);

/// Random query over a registry: 1..max_in initial inputs and 1..max_out
/// desired outputs drawn from the parameters not already given.
Query generate_query(const Registry& registry, std::mt19937_64& rng, std::size_t max_in = 3, std::size_t max_out = 3);

}  // namespace svccomp
