#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <functional>

#include "bfoml/error.hpp"
#include "bfoml/fo.hpp"
#include "bfoml/kripke.hpp"
#include "bfoml/model_io.hpp"
#include "bfoml/oracle.hpp"
#include "bfoml/parser.hpp"
#include "bfoml/syntax.hpp"
#include "bfoml/tableau.hpp"

namespace py = pybind11;
using namespace bfoml;

namespace {

DomainSemantics semantics_from(const std::string& s) {
  if (s == "increasing") return DomainSemantics::Increasing;
  if (s == "constant") return DomainSemantics::Constant;
  throw py::value_error("semantics must be 'increasing' or 'constant', got '" + s + "'");
}

std::vector<std::string> names(const VarSet& vs) {
  std::vector<std::string> out;
  for (const Var& v : vs) out.push_back(v.str());
  return out;
}

Assignment assignment_from(const std::map<std::string, std::string>& a) {
  Assignment sigma;
  for (const auto& [x, d] : a) sigma[Var(x)] = d;
  return sigma;
}

py::dict decide(const Formula& f, const std::string& semantics, std::size_t budget) {
  TableauOptions opts;
  opts.node_budget = budget;
  TableauResult r;
  {
    py::gil_scoped_release release;
    r = semantics_from(semantics) == DomainSemantics::Increasing ? decide_increasing(f, opts)
                                                                  : decide_constant_eb(f, opts);
  }
  py::dict out;
  out["sat"] = r.sat;
  out["nodes"] = r.nodes;
  out["max_depth"] = r.max_depth;
  out["theta"] = r.theta;
  out["root"] = r.root;
  out["model"] = r.model ? py::object(py::str(model_to_json(*r.model))) : py::none();
  return out;
}

py::object oracle(const Formula& f, std::size_t max_worlds, std::size_t max_domain,
                  const std::string& semantics, std::size_t budget) {
  std::optional<OracleResult> r;
  {
    py::gil_scoped_release release;
    r = enumerate_sat(f, max_worlds, max_domain, semantics_from(semantics), budget);
  }
  if (!r) return py::none();
  py::dict out;
  out["root"] = r->root;
  std::map<std::string, std::string> sigma;
  for (const auto& [x, d] : r->assignment) sigma[x.str()] = d;
  out["assignment"] = sigma;
  out["model"] = model_to_json(r->model);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bundled first-order modal logic: syntax, tableaux, models";

  auto base = py::register_exception<Error>(m, "BfomlError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ArityError>(m, "ArityError", base.ptr());
  py::register_exception<FragmentError>(m, "FragmentError", base.ptr());
  py::register_exception<ModelError>(m, "ModelError", base.ptr());
  py::register_exception<AssignmentError>(m, "AssignmentError", base.ptr());
  py::register_exception<FOFormulaError>(m, "FOFormulaError", base.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());

  py::class_<Formula>(m, "Formula")
      .def(py::init([](const std::string& text) { return parse_formula(text); }), py::arg("text"))
      .def("__str__", [](const Formula& f) { return to_string(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + to_string(f) + "')"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", [](const Formula& f) { return std::hash<std::string>{}(to_string(f)); })
      .def_property_readonly("size", &Formula::size)
      .def_property_readonly("modal_depth", &Formula::modal_depth)
      .def_property_readonly("connective_count", &Formula::connective_count);

  m.def("parse", &parse_formula, py::arg("text"));
  m.def("nnf", &to_nnf, py::arg("formula"));
  m.def("cleanse", &cleanse, py::arg("formula"));
  m.def("is_clean", &is_clean, py::arg("formula"));
  m.def("free_vars", [](const Formula& f) { return names(free_vars(f)); }, py::arg("formula"));
  m.def("classify", [](const Formula& f) { return to_string(classify(f)); }, py::arg("formula"));
  m.def("signature", &signature, py::arg("formula"));

  m.def("decide", &decide, py::arg("formula"), py::arg("semantics") = "increasing",
        py::arg("budget") = kDefaultNodeBudget,
        "Tableau decision; returns sat, nodes, max_depth, theta, root and the model as JSON.");
  m.def(
      "check",
      [](const std::string& model_json, const std::string& world, const Formula& f,
         const std::map<std::string, std::string>& assignment) {
        return check(model_from_json(model_json), world, assignment_from(assignment), f);
      },
      py::arg("model_json"), py::arg("world"), py::arg("formula"),
      py::arg("assignment") = std::map<std::string, std::string>{});
  m.def("validate",
        [](const std::string& model_json) -> std::optional<std::string> {
          auto v = validate(model_from_json(model_json));
          return v ? std::optional<std::string>(v->message) : std::nullopt;
        },
        py::arg("model_json"));
  m.def("enumerate_sat", &oracle, py::arg("formula"), py::arg("max_worlds") = 4,
        py::arg("max_domain") = 3, py::arg("semantics") = "increasing",
        py::arg("budget") = kDefaultOracleBudget);

  m.def("translate", [](const std::string& s) { return translate_sentence(parse_fo(s)); },
        py::arg("sentence"));
  m.def("fo_check",
        [](const std::string& model_json, const std::string& s) {
          return fo_check(fo_model_from_json(model_json), parse_fo(s));
        },
        py::arg("model_json"), py::arg("sentence"));
  m.def(
      "witness_model",
      [](const std::string& model_json, const std::string& s, bool repaired) {
        const FOModel fm = fo_model_from_json(model_json);
        const FOFormula f = parse_fo(s);
        return model_to_json(repaired ? build_witness_model_repaired(fm, f)
                                      : build_witness_model(fm, f));
      },
      py::arg("model_json"), py::arg("sentence"), py::arg("repaired") = false);
}
