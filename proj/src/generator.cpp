#include "svccomp/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace svccomp {

namespace {

// Modulo reduction keeps output identical across standard libraries, unlike
// std::uniform_int_distribution.
std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

std::vector<std::size_t> sample(std::mt19937_64& rng, std::vector<std::size_t> pool, std::size_t k) {
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + draw(rng, pool.size() - i)]);
  pool.resize(k);
  return pool;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace

Registry generate_registry(const GeneratorConfig& config) {
  if (config.params == 0) throw std::invalid_argument("generator needs at least one parameter");
  if (config.max_outputs == 0) throw std::invalid_argument("generator needs max_outputs >= 1");

  std::vector<Parameter> params;
  for (std::size_t i = 0; i < config.params; ++i) params.push_back(normalize_param("p" + std::to_string(i)));

  std::mt19937_64 rng(config.seed);
  std::vector<ServiceDescriptor> services;
  for (std::size_t i = 0; i < config.services; ++i) {
    ServiceDescriptor s;
    s.id = ServiceId("s" + std::to_string(i + 1));
    s.name = "Service" + std::to_string(i + 1);
    const std::size_t n_out = 1 + draw(rng, std::min(config.max_outputs, config.params));
    const std::size_t n_in = draw(rng, config.max_inputs + 1);
    for (std::size_t k : sample(rng, all_indices(config.params), n_out)) s.outputs.insert(params[k]);
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < config.params; ++k) {
      if (!s.outputs.contains(params[k])) rest.push_back(k);
    }
    for (std::size_t k : sample(rng, rest, n_in)) s.inputs.insert(params[k]);
    services.push_back(std::move(s));
  }
  ParamSet used;
  for (const auto& s : services) {
    used.insert(s.inputs.begin(), s.inputs.end());
    used.insert(s.outputs.begin(), s.outputs.end());
  }
  return Registry(std::move(used), std::move(services));
}

Query generate_query(const Registry& registry, std::mt19937_64& rng, std::size_t max_in, std::size_t max_out) {
  std::vector<Parameter> params(registry.parameters().begin(), registry.parameters().end());
  if (params.size() < 2) throw std::invalid_argument("generate_query needs at least two parameters");
  const std::size_t n_in = 1 + draw(rng, std::min(max_in, params.size() - 1));
  const auto picked = sample(rng, all_indices(params.size()), params.size());
  Query q;
  std::size_t i = 0;
  for (; i < n_in; ++i) q.initial_inputs.insert(params[picked[i]]);
  const std::size_t n_out = 1 + draw(rng, std::min(max_out, params.size() - n_in));
  for (std::size_t j = 0; j < n_out; ++j) q.desired_outputs.insert(params[picked[i + j]]);
  return q;
}

}  // namespace svccomp
