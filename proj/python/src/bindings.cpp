#include "hqc/calculus.hpp"
#include "hqc/checks.hpp"
#include "hqc/dsl.hpp"
#include "hqc/errors.hpp"
#include "hqc/oracle.hpp"
#include "hqc/report.hpp"
#include "hqc/scenario.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hqc;

namespace {

BracketKind kind_from(const std::string& name) {
  const auto k = parse_bracket_kind(name);
  if (!k) throw ValidationError("unknown bracket kind '" + name + "'");
  return *k;
}

Environment env_from(const std::map<std::string, HybridExpr>& bindings) {
  return Environment(bindings.begin(), bindings.end());
}

py::dict report_dict(const CheckReport& r) {
  py::dict d;
  d["kind"] = to_string(r.kind);
  d["bracket"] = to_string(r.bracket);
  py::dict inputs;
  for (const auto& [k, v] : r.inputs) inputs[py::str(k)] = v;
  d["inputs"] = inputs;
  d["passed"] = r.passed;
  d["defect"] = r.defect;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hqc, m) {
  m.doc() = "Exact symbolic algebra of hybrid quantum-classical brackets";

  // Translators run newest first, so the base class is registered first.
  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());

  py::class_<SymbolTable, std::shared_ptr<SymbolTable>>(m, "SymbolTable")
      .def_property_readonly("quantum_modes", &SymbolTable::quantum_modes)
      .def_property_readonly("classical_dofs", &SymbolTable::classical_dofs)
      .def_property_readonly("functions", [](const SymbolTable& t) {
        std::vector<std::string> names;
        for (const auto& f : t.functions()) names.push_back(f.name);
        return names;
      });

  m.def(
      "make_table",
      [](unsigned modes, unsigned dofs, const std::vector<std::string>& functions) {
        std::vector<FunctionSymbol> symbols;
        for (const auto& name : functions) symbols.push_back({name, true});
        return std::const_pointer_cast<SymbolTable>(make_table(modes, dofs, std::move(symbols)));
      },
      py::arg("quantum_modes") = 1, py::arg("classical_dofs") = 1,
      py::arg("functions") = std::vector<std::string>{});

  py::class_<HybridExpr>(m, "Expr")
      .def_property_readonly("table", [](const HybridExpr& e) { return std::const_pointer_cast<SymbolTable>(e.table()); })
      .def("is_zero", &HybridExpr::is_zero)
      .def("is_hermitian", [](const HybridExpr& e) { return is_hermitian(e); })
      .def("dagger", [](const HybridExpr& e) { return dagger(e); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def("__pow__", [](const HybridExpr& e, unsigned n) { return power(e, n); })
      .def("__eq__", [](const HybridExpr& a, const HybridExpr& b) { return equals(a, b); })
      .def("__str__", [](const HybridExpr& e) { return pretty(e); })
      .def("__repr__", [](const HybridExpr& e) { return "Expr('" + pretty(e) + "')"; })
      .def("__hash__", [](const HybridExpr& e) { return py::hash(py::str(pretty(e))); })
      .def("to_json", [](const HybridExpr& e) { return terms_to_json(e).dump(); });

  auto as_table = [](const std::shared_ptr<SymbolTable>& t) { return TablePtr(t); };

  m.def(
      "parse",
      [as_table](const std::string& text, const std::shared_ptr<SymbolTable>& table,
                 const std::map<std::string, HybridExpr>& env) { return parse(text, as_table(table), env_from(env)); },
      py::arg("text"), py::arg("table"), py::arg("env") = std::map<std::string, HybridExpr>{});
  m.def("pretty", [](const HybridExpr& e) { return pretty(e); });
  m.def("canonicalize", [](const HybridExpr& e) { return canonicalize(e); });
  m.def("dagger", [](const HybridExpr& e) { return dagger(e); });
  m.def("is_hermitian", [](const HybridExpr& e) { return is_hermitian(e); });
  m.def("pd_x", &pd_x, py::arg("e"), py::arg("dof") = 1);
  m.def("pd_k", &pd_k, py::arg("e"), py::arg("dof") = 1);
  m.def("commutator", &commutator);
  m.def("poisson", &poisson);
  m.def("bracket", [](const std::string& kind, const HybridExpr& a, const HybridExpr& b) {
    return bracket(kind_from(kind), a, b);
  });
  m.def("eom", [](const std::string& kind, const HybridExpr& a, const HybridExpr& h) {
    return eom(kind_from(kind), a, h);
  });
  m.def("antisymmetry_defect", [](const std::string& kind, const HybridExpr& a, const HybridExpr& b) {
    return antisymmetry_defect(kind_from(kind), a, b);
  });
  m.def("leibniz_defect",
        [](const std::string& kind, const HybridExpr& a, const HybridExpr& b, const HybridExpr& h) {
          return leibniz_defect(kind_from(kind), a, b, h);
        });
  m.def("hermiticity_defect", &hermiticity_defect);
  m.def(
      "conservation_check",
      [](const std::string& kind, const HybridExpr& a, const HybridExpr& h, std::optional<HybridExpr> rate) {
        return report_dict(rate ? conservation_check(kind_from(kind), a, h, *rate)
                                : conservation_check(kind_from(kind), a, h));
      },
      py::arg("kind"), py::arg("a"), py::arg("h"), py::arg("rate") = std::nullopt);
  m.def("oracle_equal", [](const HybridExpr& a, const HybridExpr& b) { return oracle::oracle_equal(a, b); });
  m.def(
      "run_scenario",
      [](const std::string& document, const std::string& name) {
        const Scenario s = parse_scenario(document);
        return report_to_json(name.empty() ? s.name : name, s, run_checks(s)).dump(2);
      },
      py::arg("document"), py::arg("name") = "");
}
