#include "cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "svccomp/cst.hpp"
#include "svccomp/generator.hpp"
#include "svccomp/plan.hpp"
#include "svccomp/search.hpp"

namespace svccomp::cli {

namespace {

struct QueryOptions {
  std::string registry_path;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::size_t max_depth = BuildLimits{}.max_depth;
  std::size_t max_nodes = BuildLimits{}.max_nodes;
  std::string format;
};

void add_query_options(CLI::App* cmd, QueryOptions& opts, const std::string& default_format) {
  opts.format = default_format;
  cmd->add_option("--registry", opts.registry_path, "Registry document")->required();
  cmd->add_option("--in", opts.inputs, "Initial input parameters")->delimiter(',');
  cmd->add_option("--out", opts.outputs, "Desired output parameters")->delimiter(',')->required();
  cmd->add_option("--max-depth", opts.max_depth, "Deepest tree level to build")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-nodes", opts.max_nodes, "Largest tree to build")->check(CLI::PositiveNumber);
  cmd->add_option("--format", opts.format, "text, structured or dot")
      ->check(CLI::IsMember({"text", "structured", "dot"}));
}

std::string chain(const Cst& cst, NodeId id) {
  std::string out;
  for (NodeId n : cst.path_to(id)) {
    const auto& node = cst.node(n);
    if (!node.parent) continue;
    if (!out.empty()) out += " -> ";
    std::string group;
    for (const auto& s : node.ws) group += (group.empty() ? "" : ",") + s.str();
    out += node.ws.size() > 1 ? "{" + group + "}" : group;
  }
  return out;
}

void print_summary(const Cst& cst, std::ostream& out) {
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& n : cst.nodes()) ++counts[static_cast<int>(n.kind)];
  out << "nodes: " << cst.nodes().size() << " (root " << counts[0] << ", internal " << counts[1]
      << ", unsolvable " << counts[2] << ", solution " << counts[3] << ")\n";
  out << "root: " << to_string(cst.root().kind) << "\n";
  out << "solutions: " << cst.solutions().size() << "\n";
  out << "truncated: " << (cst.truncated() ? "true" : "false") << "\n";
  std::size_t i = 0;
  for (const auto& rec : enumerate_solutions(cst)) {
    out << "solution " << ++i << ": depth " << rec.depth << ", nws " << rec.nws << ": " << chain(cst, rec.node)
        << "\n";
  }
}

void print_answer_text(const CompositionAnswer& a, std::ostream& out) {
  out << "services:";
  for (const auto& s : a.services) out << " " << s.str();
  out << "\nnws: " << a.nws << "\ndepth: " << a.depth << "\nsteps:\n";
  for (const auto& step : a.steps) {
    out << "  " << to_string(step.ctype) << " {";
    for (std::size_t i = 0; i < step.ws.size(); ++i) out << (i ? ", " : "") << step.ws[i].str();
    out << "} needs {" << join_display(step.d_out) << "}\n";
  }
  out << "execution order:";
  for (const auto& s : a.execution_order) out << " " << s.str();
  out << "\n";
}

enum class Search { None, Leanest, Shortest };

int run_query(const QueryOptions& opts, Search search, std::ostream& out, std::ostream& err) {
  Registry registry;
  try {
    registry = load_registry_file(opts.registry_path);
  } catch (const RegistryError& e) {
    for (const auto& issue : e.issues()) err << "error: " << issue << "\n";
    return kInvalidRegistry;
  }
  Query query;
  try {
    query = make_query(registry, opts.inputs, opts.outputs);
  } catch (const QueryError& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  }

  const Cst cst = build_cst(registry, query, {opts.max_depth, opts.max_nodes});
  if (cst.truncated()) err << "warning: tree construction hit a build limit\n";
  if (opts.format == "dot") out << render_dot(cst);

  if (search == Search::None) {
    if (opts.format == "text") print_summary(cst, out);
    if (opts.format == "structured") {
      std::vector<CompositionAnswer> answers;
      out << "[";
      bool first = true;
      for (const auto& rec : enumerate_solutions(cst)) {
        const auto a = order_services(extract_path(cst, rec.node), query.initial_inputs, registry);
        out << (first ? "\n" : ",\n") << render_answer(&a);
        first = false;
      }
      out << "]\n";
    }
    return kOk;
  }

  const SearchOutcome outcome = search == Search::Leanest ? find_leanest(cst) : find_shortest_depth(cst);
  const auto answer = answer_for(cst, outcome, registry);
  if (opts.format == "structured") out << render_answer(answer ? &*answer : nullptr);
  if (opts.format == "text") {
    if (answer) print_answer_text(*answer, out);
    else out << "no composition found\n";
  }
  return answer ? kOk : kNotFound;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"I/O-match based web service composition"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Load and check a registry document");
  validate->add_option("--registry", validate_path, "Registry document")->required();

  QueryOptions compose_opts, leanest_opts, shortest_opts;
  auto* compose = app.add_subcommand("compose", "Build the composition search tree and summarize it");
  add_query_options(compose, compose_opts, "text");
  auto* leanest = app.add_subcommand("leanest", "Composition using the fewest services");
  add_query_options(leanest, leanest_opts, "structured");
  auto* shortest = app.add_subcommand("shortest", "Composition at the smallest tree depth");
  add_query_options(shortest, shortest_opts, "structured");

  GeneratorConfig gen_cfg;
  auto* gen = app.add_subcommand("gen", "Emit a pseudo-random registry document");
  gen->add_option("--seed", gen_cfg.seed, "Generator seed");
  gen->add_option("--services", gen_cfg.services, "Number of services");
  gen->add_option("--params", gen_cfg.params, "Number of parameters");
  gen->add_option("--max-inputs", gen_cfg.max_inputs, "Upper bound on inputs per service");
  gen->add_option("--max-outputs", gen_cfg.max_outputs, "Upper bound on outputs per service");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  if (validate->parsed()) {
    try {
      const Registry r = load_registry_file(validate_path);
      out << r.services().size() << " services, " << r.parameters().size() << " parameters\n";
      return kOk;
    } catch (const RegistryError& e) {
      for (const auto& issue : e.issues()) err << "error: " << issue << "\n";
      return kInvalidRegistry;
    }
  }
  if (compose->parsed()) return run_query(compose_opts, Search::None, out, err);
  if (leanest->parsed()) return run_query(leanest_opts, Search::Leanest, out, err);
  if (shortest->parsed()) return run_query(shortest_opts, Search::Shortest, out, err);
  if (gen->parsed()) {
    try {
      out << dump_registry(generate_registry(gen_cfg));
      return kOk;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return kBadArguments;
    }
  }
  return kBadArguments;
}

}  // namespace svccomp::cli
