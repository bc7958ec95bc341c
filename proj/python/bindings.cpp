#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "svccomp/cst.hpp"
#include "svccomp/generator.hpp"
#include "svccomp/plan.hpp"
#include "svccomp/search.hpp"

namespace py = pybind11;
using namespace svccomp;

namespace {

std::vector<std::string> names(const ParamSet& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.display);
  return out;
}

std::vector<std::string> id_strings(const auto& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Web service composition over a composition search tree";
#ifdef SVCCOMP_VERSION
  m.attr("__version__") = SVCCOMP_VERSION;
#endif

  py::register_exception<RegistryError>(m, "RegistryError", PyExc_ValueError);
  py::register_exception<QueryError>(m, "QueryError", PyExc_ValueError);
  py::register_exception<UnorderableComposition>(m, "UnorderableComposition", PyExc_RuntimeError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);

  py::class_<ServiceDescriptor>(m, "Service")
      .def_property_readonly("id", [](const ServiceDescriptor& s) { return s.id.str(); })
      .def_readonly("name", &ServiceDescriptor::name)
      .def_property_readonly("inputs", [](const ServiceDescriptor& s) { return names(s.inputs); })
      .def_property_readonly("outputs", [](const ServiceDescriptor& s) { return names(s.outputs); })
      .def("__repr__", [](const ServiceDescriptor& s) { return "<Service " + s.id.str() + " " + s.name + ">"; });

  py::class_<Registry>(m, "Registry")
      .def_property_readonly("services", &Registry::services, py::return_value_policy::reference_internal)
      .def_property_readonly("parameters", [](const Registry& r) { return names(r.parameters()); })
      .def("service", [](const Registry& r, const std::string& id) -> const ServiceDescriptor& {
             return r.service(ServiceId(id));
           }, py::return_value_policy::reference_internal)
      .def("producers",
           [](const Registry& r, const std::string& param) {
             const auto p = r.resolve(param);
             if (!p || !r.index().by_output.contains(*p)) return std::vector<std::string>{};
             return id_strings(r.index().by_output.at(*p));
           })
      .def("to_json", &dump_registry)
      .def("__len__", [](const Registry& r) { return r.services().size(); });

  m.def("load_registry", &load_registry, py::arg("document"));
  m.def("load_registry_file", &load_registry_file, py::arg("path"));
  m.def("generate_registry",
        [](std::uint64_t seed, std::size_t services, std::size_t params, std::size_t max_inputs,
           std::size_t max_outputs) {
          return generate_registry({seed, services, params, max_inputs, max_outputs});
        },
        py::arg("seed") = 1, py::arg("services") = 10, py::arg("params") = 8, py::arg("max_inputs") = 3,
        py::arg("max_outputs") = 3);

  py::class_<Query>(m, "Query")
      .def_property_readonly("inputs", [](const Query& q) { return names(q.initial_inputs); })
      .def_property_readonly("outputs", [](const Query& q) { return names(q.desired_outputs); });
  m.def("make_query", &make_query, py::arg("registry"), py::arg("inputs"), py::arg("outputs"));

  m.def("classify_match",
        [](const Registry& r, const std::string& service_id, const std::vector<std::string>& desired) {
          const Query q = make_query(r, {}, desired);
          return std::string(to_string(classify_match(r.service(ServiceId(service_id)).outputs, q.desired_outputs)));
        },
        py::arg("registry"), py::arg("service_id"), py::arg("desired"));
  m.def("find_matching_services",
        [](const Registry& r, const std::vector<std::string>& desired) {
          const auto lists = find_matching_services(r, make_query(r, {}, desired).desired_outputs);
          py::dict d;
          d["exact"] = id_strings(lists.exact);
          d["super"] = id_strings(lists.super);
          d["partial"] = id_strings(lists.partial);
          return d;
        },
        py::arg("registry"), py::arg("desired"));

  py::class_<CstNode>(m, "Node")
      .def_readonly("id", &CstNode::id)
      .def_property_readonly("kind", [](const CstNode& n) { return std::string(to_string(n.kind)); })
      .def_property_readonly("ctype", [](const CstNode& n) { return std::string(to_string(n.ctype)); })
      .def_property_readonly("ws", [](const CstNode& n) { return id_strings(n.ws); })
      .def_readonly("nws", &CstNode::nws)
      .def_property_readonly("d_out", [](const CstNode& n) { return names(n.d_out); })
      .def_readonly("parent", &CstNode::parent)
      .def_property_readonly("children",
                             [](const CstNode& n) {
                               return std::vector<std::optional<NodeId>>(n.children.begin(), n.children.end());
                             })
      .def_readonly("depth", &CstNode::depth);

  py::class_<Cst>(m, "Tree")
      .def_property_readonly("root", &Cst::root, py::return_value_policy::reference_internal)
      .def_property_readonly("nodes", &Cst::nodes, py::return_value_policy::reference_internal)
      .def_property_readonly("solutions", &Cst::solutions)
      .def_property_readonly("unsolvable_count", &Cst::unsolvable_count)
      .def_property_readonly("truncated", &Cst::truncated)
      .def("node", &Cst::node, py::return_value_policy::reference_internal)
      .def("services_on_path", [](const Cst& t, NodeId id) { return id_strings(t.services_on_path(id)); })
      .def("to_dot", &render_dot);

  m.def("build_cst",
        [](const Registry& r, const Query& q, std::size_t max_depth, std::size_t max_nodes) {
          return build_cst(r, q, {max_depth, max_nodes});
        },
        py::arg("registry"), py::arg("query"), py::arg("max_depth") = BuildLimits{}.max_depth,
        py::arg("max_nodes") = BuildLimits{}.max_nodes);

  py::class_<SearchOutcome>(m, "SearchOutcome")
      .def_readonly("found", &SearchOutcome::found)
      .def_readonly("node", &SearchOutcome::node)
      .def_readonly("nws", &SearchOutcome::nws)
      .def_readonly("depth", &SearchOutcome::depth)
      .def_readonly("truncated", &SearchOutcome::truncated);

  m.def("find_leanest", &find_leanest, py::arg("tree"));
  m.def("find_shortest_depth", &find_shortest_depth, py::arg("tree"));
  m.def("enumerate_solutions", [](const Cst& t) {
    std::vector<std::tuple<NodeId, std::size_t, std::size_t>> out;
    for (const auto& s : enumerate_solutions(t)) out.emplace_back(s.node, s.nws, s.depth);
    return out;
  }, py::arg("tree"));

  m.def("forward_closure",
        [](const Registry& r, const std::vector<std::string>& start, std::optional<std::vector<std::string>> allowed) {
          ParamSet from;
          for (const auto& s : start) {
            if (auto p = r.resolve(s)) from.insert(*p);
            else from.insert(normalize_param(s));
          }
          if (!allowed) return names(forward_closure(r, from));
          IdSet ids;
          for (const auto& a : *allowed) ids.emplace(a);
          return names(forward_closure(r, from, &ids));
        },
        py::arg("registry"), py::arg("start"), py::arg("allowed") = py::none());

  m.def("oracle_leanest",
        [](const Registry& r, const Query& q, std::size_t max_k) {
          const auto rep = oracle_leanest(r, q, max_k);
          py::dict d;
          d["satisfiable"] = rep.satisfiable;
          d["minimal_count"] = rep.minimal_count;
          d["witness"] = rep.witness ? py::cast(id_strings(*rep.witness)) : py::none();
          return d;
        },
        py::arg("registry"), py::arg("query"), py::arg("max_k"));

  m.def("render_answer",
        [](const Cst& t, const SearchOutcome& outcome, const Registry& r) {
          const auto a = answer_for(t, outcome, r);
          return render_answer(a ? &*a : nullptr);
        },
        py::arg("tree"), py::arg("outcome"), py::arg("registry"),
        "JSON answer document for a search outcome, with an execution order.");
}
