// Python bindings. Rationals cross the boundary as strings ("3/5", "0.95"),
// which fractions.Fraction accepts directly.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "subprob/category.hpp"
#include "subprob/choice.hpp"
#include "subprob/experiment.hpp"
#include "subprob/interval_set.hpp"
#include "subprob/property_system.hpp"
#include "subprob/sep.hpp"

namespace py = pybind11;
using namespace subprob;

namespace {

Rational rational_arg(const py::object& value) {
  return parse_rational(py::str(value).cast<std::string>());
}

std::vector<ExperimentTerm> term_list(const py::iterable& items) {
  std::vector<ExperimentTerm> out;
  for (const auto& item : items) {
    if (py::isinstance<py::str>(item)) {
      out.push_back(parse_term(item.cast<std::string>()));
    } else {
      out.push_back(item.cast<ExperimentTerm>());
    }
  }
  return out;
}

std::vector<std::string> state_names(const StateSet& set, const std::vector<std::string>& states) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (set.test(i)) out.push_back(states[i]);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact subset probabilities, property lattices and morphisms";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<LookupError>(m, "UnknownSymbolError", PyExc_KeyError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);
  py::register_exception<MorphismError>(m, "MorphismError", PyExc_RuntimeError);

  py::class_<UnitIntervalSet>(m, "IntervalSet")
      .def(py::init<>())
      .def(py::init([](const std::string& text) { return parse_interval_set(text); }), py::arg("text"))
      .def_static("point", [](const py::object& c) { return UnitIntervalSet::point(rational_arg(c)); })
      .def_static("closed", [](const py::object& lo, const py::object& hi) {
        return UnitIntervalSet::closed(rational_arg(lo), rational_arg(hi));
      })
      .def_static("unit", &UnitIntervalSet::unit)
      .def("components",
           [](const UnitIntervalSet& v) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& part : v.components()) out.emplace_back(format_rational(part.lo), format_rational(part.hi));
             return out;
           })
      .def("is_empty", &UnitIntervalSet::is_empty)
      .def("contains", [](const UnitIntervalSet& v, const py::object& x) { return v.contains(rational_arg(x)); })
      .def("one_minus", [](const UnitIntervalSet& v) { return one_minus(v); })
      .def("union", [](const UnitIntervalSet& v, const UnitIntervalSet& w) { return unite(v, w); })
      .def("intersection", [](const UnitIntervalSet& v, const UnitIntervalSet& w) { return intersect(v, w); })
      .def("issubset", [](const UnitIntervalSet& v, const UnitIntervalSet& w) { return is_subset(v, w); })
      .def("hull", [](const UnitIntervalSet& v) { return convex_hull(v); })
      .def("__eq__", [](const UnitIntervalSet& v, const UnitIntervalSet& w) { return v == w; })
      .def("__hash__", [](const UnitIntervalSet& v) { return py::hash(py::str(to_string(v))); })
      .def("__str__", [](const UnitIntervalSet& v) { return to_string(v); })
      .def("__repr__", [](const UnitIntervalSet& v) { return "IntervalSet('" + to_string(v) + "')"; });

  py::class_<ExperimentTerm>(m, "Term")
      .def(py::init([](const std::string& text) { return parse_term(text); }), py::arg("text"))
      .def_property_readonly("kind",
                             [](const ExperimentTerm& t) {
                               switch (t.kind()) {
                                 case ExperimentTerm::Kind::base: return "base";
                                 case ExperimentTerm::Kind::tilde: return "tilde";
                                 default: return "product";
                               }
                             })
      .def_property_readonly("literals",
                             [](const ExperimentTerm& t) {
                               std::vector<std::pair<std::string, bool>> out;
                               for (const auto& lit : t.literals()) out.emplace_back(lit.symbol, lit.inverted);
                               return out;
                             })
      .def("tilde", [](const ExperimentTerm& t) { return tilde(t); })
      .def("__invert__", [](const ExperimentTerm& t) { return tilde(t); })
      .def("__eq__", [](const ExperimentTerm& a, const ExperimentTerm& b) { return a == b; })
      .def("__lt__", [](const ExperimentTerm& a, const ExperimentTerm& b) { return a < b; })
      .def("__hash__", [](const ExperimentTerm& t) { return py::hash(py::str(to_string(t))); })
      .def("__str__", [](const ExperimentTerm& t) { return to_string(t); })
      .def("__repr__", [](const ExperimentTerm& t) { return "Term('" + to_string(t) + "')"; });

  py::implicitly_convertible<std::string, UnitIntervalSet>();
  py::implicitly_convertible<std::string, ExperimentTerm>();

  m.def("product", [](const py::iterable& factors) { return product(term_list(factors)); }, py::arg("factors"));
  m.def("enumerate_terms", [](const std::vector<std::string>& base) { return enumerate_terms(base); });

  py::class_<SepSystem>(m, "SepSystem")
      .def_property_readonly("states", &SepSystem::states)
      .def_property_readonly("experiments", &SepSystem::experiments)
      .def("entry", &SepSystem::entry, py::arg("experiment"), py::arg("state"))
      .def("validate",
           [](const SepSystem& sys) {
             std::vector<std::string> out;
             for (const auto& v : validate_sep(sys)) out.push_back(v.describe());
             return out;
           })
      .def("format", [](const SepSystem& sys) { return format_sep(sys); })
      .def("__eq__", [](const SepSystem& a, const SepSystem& b) { return a == b; });

  m.def("parse_sep", [](const std::string& text) { return parse_sep(text); }, py::arg("text"));
  m.def("load_sep", [](const std::string& path) { return load_sep(path); }, py::arg("path"));

  m.def("mu_eval",
        [](const SepSystem& sys, const ExperimentTerm& t, const std::string& state) { return mu_eval(sys, t, state); });
  m.def("is_certain", &is_certain, py::arg("sys"), py::arg("term"), py::arg("state"));
  m.def("is_performable", &is_performable, py::arg("sys"), py::arg("term"), py::arg("state"));
  m.def(
      "is_close_to_certain",
      [](const SepSystem& sys, const ExperimentTerm& t, const std::string& state, const py::object& eps) {
        return is_close_to_certain(sys, t, state, rational_arg(eps));
      },
      py::arg("sys"), py::arg("term"), py::arg("state"), py::arg("epsilon"));
  m.def("holds_within", &holds_within, py::arg("sys"), py::arg("term"), py::arg("state"), py::arg("target"));

  py::class_<StatePropertySystem>(m, "PropertySystem")
      .def_readonly("states", &StatePropertySystem::states)
      .def_readonly("warnings", &StatePropertySystem::warnings)
      .def_property_readonly("size", [](const StatePropertySystem& sp) { return sp.lattice.size; })
      .def_property_readonly("top", [](const StatePropertySystem& sp) { return sp.lattice.top; })
      .def_property_readonly("bottom", [](const StatePropertySystem& sp) { return sp.lattice.bottom; })
      .def("label", [](const StatePropertySystem& sp, std::size_t e) { return sp.lattice.label(e); })
      .def("class_of", [](const StatePropertySystem& sp, const ExperimentTerm& t) { return sp.lattice.class_of(t); })
      .def("members",
           [](const StatePropertySystem& sp, std::size_t e) { return sp.lattice.classes.at(e).members; })
      .def("certainty_set",
           [](const StatePropertySystem& sp, std::size_t e) {
             return state_names(sp.lattice.classes.at(e).certainty, sp.states);
           })
      .def("leq", [](const StatePropertySystem& sp, std::size_t a, std::size_t b) { return bool(sp.lattice.leq.at(a).at(b)); })
      .def("meet", [](const StatePropertySystem& sp, std::size_t a, std::size_t b) { return sp.lattice.meet.at(a).at(b); })
      .def("join", [](const StatePropertySystem& sp, std::size_t a, std::size_t b) { return sp.lattice.join.at(a).at(b); })
      .def("actual",
           [](const StatePropertySystem& sp, const std::string& state) {
             std::vector<std::size_t> out;
             for (std::size_t p = 0; p < sp.states.size(); ++p) {
               if (sp.states[p] != state) continue;
               for (std::size_t e = 0; e < sp.lattice.size; ++e) {
                 if (sp.xi[p][e]) out.push_back(e);
               }
               return out;
             }
             throw LookupError("unknown state '" + state + "'");
           })
      .def("state_leq",
           [](const StatePropertySystem& sp, const std::string& p, const std::string& q) {
             auto index = [&](const std::string& s) {
               for (std::size_t i = 0; i < sp.states.size(); ++i) {
                 if (sp.states[i] == s) return i;
               }
               throw LookupError("unknown state '" + s + "'");
             };
             return bool(sp.state_leq[index(p)][index(q)]);
           })
      .def("validate",
           [](const StatePropertySystem& sp) {
             std::vector<std::string> out;
             for (const auto& v : validate_sp(sp)) out.push_back(std::string(kind_name(v.kind)) + ": " + v.message);
             return out;
           })
      .def("dot", [](const StatePropertySystem& sp) { return lattice_dot(sp); })
      .def("__str__", [](const StatePropertySystem& sp) { return sp_text(sp); });

  m.def(
      "derive_sp",
      [](const SepSystem& sys, std::optional<UnitIntervalSet> target) {
        return target ? derive_sp_general(sys, *target) : derive_sp(sys);
      },
      py::arg("sys"), py::arg("target") = py::none());

  py::class_<RecoveryReport>(m, "RecoveryReport")
      .def_readonly("target", &RecoveryReport::target)
      .def_readonly("delta", &RecoveryReport::delta)
      .def_readonly("unsound_sessions", &RecoveryReport::unsound_sessions)
      .def_property_readonly("soundness", &RecoveryReport::soundness)
      .def_property_readonly("coverage", &RecoveryReport::coverage)
      .def_property_readonly("span_coverage", &RecoveryReport::span_coverage)
      .def_property_readonly("final_frequencies",
                             [](const RecoveryReport& r) {
                               std::vector<double> out;
                               for (const auto& s : r.sessions) out.push_back(s.final_frequency);
                               return out;
                             })
      .def_property_readonly("contexts",
                             [](const RecoveryReport& r) {
                               std::vector<double> out;
                               for (const auto& s : r.sessions) out.push_back(s.context);
                               return out;
                             })
      .def("csv", [](const RecoveryReport& r) { return recovery_csv(r); })
      .def("__str__", [](const RecoveryReport& r) { return recovery_text(r); });

  m.def(
      "recover_subset",
      [](const SepSystem& sys, const py::iterable& factors, const std::string& state, std::uint64_t seed,
         std::uint64_t sessions, std::uint64_t trials, double delta, unsigned threads,
         std::optional<std::vector<py::object>> weights) {
        SimulationPolicy policy;
        policy.seed = seed;
        policy.threads = threads;
        if (weights) {
          std::vector<Rational> w;
          for (const auto& x : *weights) w.push_back(rational_arg(x));
          policy.factor_weights = ChoiceWeights(std::move(w));
        }
        auto terms = term_list(factors);
        py::gil_scoped_release release;
        return recover_subset(sys, terms, state, policy, sessions, trials, delta);
      },
      py::arg("sys"), py::arg("factors"), py::arg("state"), py::arg("seed") = 0, py::arg("sessions") = 200,
      py::arg("trials") = 100000, py::arg("delta") = 0.01, py::arg("threads") = 1, py::arg("weights") = py::none());

  m.def(
      "prop1_diagnostic",
      [](const std::vector<py::object>& weights, const py::object& grid_step) {
        std::vector<Rational> w;
        for (const auto& x : weights) w.push_back(rational_arg(x));
        auto report = prop1_diagnostic(ChoiceWeights(std::move(w)), rational_arg(grid_step));
        py::list witnesses;
        for (const auto& mu : report.counterexamples) {
          py::list row;
          for (const auto& x : mu) row.append(format_rational(x));
          witnesses.append(py::tuple(row));
        }
        py::dict out;
        out["all_weights_positive"] = report.all_weights_positive;
        out["implication_holds"] = report.implication_holds();
        out["confirmed"] = report.confirmed();
        out["vectors_checked"] = report.vectors_checked;
        out["counterexamples"] = witnesses;
        return out;
      },
      py::arg("weights"), py::arg("grid_step") = "1/10");

  py::class_<SepMorphism>(m, "Morphism")
      .def_readonly("state_map", &SepMorphism::state_map)
      .def_readonly("experiment_map", &SepMorphism::experiment_map)
      .def("format", [](const SepMorphism& phi) { return format_morphism(phi); })
      .def("__eq__", [](const SepMorphism& a, const SepMorphism& b) { return a == b; });

  m.def("parse_morphism", [](const std::string& text) { return parse_morphism(text); }, py::arg("text"));
  m.def("load_morphism", [](const std::string& path) { return load_morphism(path); }, py::arg("path"));
  m.def("identity_morphism", [](const SepSystem& sys) { return identity_morphism(sys); });
  m.def("compose", [](const SepMorphism& phi2, const SepMorphism& phi1) { return compose(phi2, phi1); });
  m.def(
      "check_morphism",
      [](const SepSystem& src, const SepSystem& dst, const SepMorphism& phi) {
        std::vector<std::string> out;
        for (const auto& v : validate_sep_morphism(src, dst, phi)) out.push_back(v.describe());
        if (!out.empty()) return out;
        auto sp_src = derive_sp(src);
        auto sp_dst = derive_sp(dst);
        auto psi = derive_sp_morphism(phi, sp_src, sp_dst);
        for (const auto& v : validate_sp_morphism(sp_src, sp_dst, psi)) out.push_back(v.message);
        return out;
      },
      py::arg("source"), py::arg("target"), py::arg("morphism"));
}
