#include <algorithm>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "topocheck/principles.hpp"
#include "topocheck/search.hpp"
#include "topocheck/semantics.hpp"
#include "topocheck/space_io.hpp"

namespace py = pybind11;
using namespace topocheck;

namespace {

Mask mask_arg(const FiniteSpace& s, const std::vector<std::string>& labels) {
  return s.mask_of_labels(labels);
}

Mask mask_from_points(const std::vector<std::string>& points,
                      const std::vector<std::string>& member) {
  Mask m = 0;
  for (const std::string& label : member) {
    auto it = std::find(points.begin(), points.end(), label);
    if (it == points.end())
      throw std::invalid_argument("set member '" + label + "' is not a point");
    m |= Mask(1) << (it - points.begin());
  }
  return m;
}

std::vector<Mask> masks_from_points(const std::vector<std::string>& points,
                                    const std::vector<std::vector<std::string>>& family) {
  std::vector<Mask> masks;
  masks.reserve(family.size());
  for (const auto& member : family) masks.push_back(mask_from_points(points, member));
  return masks;
}

Valuation valuation_arg(const FiniteSpace& s,
                        const std::map<std::string, std::vector<std::string>>& assignment) {
  Valuation v;
  for (const auto& [atom, labels] : assignment) v.assignment[atom] = mask_arg(s, labels);
  return v;
}

FormulaRef formula_arg(const py::object& f) {
  if (py::isinstance<py::str>(f)) return parse(f.cast<std::string>());
  return f.cast<FormulaRef>();
}

py::object report_to_py(const FiniteSpace& s, const CounterexampleReport& rep) {
  py::dict out;
  out["kind"] = to_string(rep.kind);
  if (rep.witness.has_value()) {
    py::dict witness;
    for (const auto& [atom, mask] : *rep.witness) witness[py::str(atom)] = s.labels_of_mask(mask);
    out["witness"] = witness;
    out["truth"] = s.labels_of_mask(rep.truth_set);
  } else {
    out["witness"] = py::none();
    out["truth"] = py::none();
  }
  return out;
}

py::object separation_to_py(const SeparationSearch& search) {
  if (!search.result.has_value()) return py::none();
  const SeparationResult& r = *search.result;
  py::dict out;
  out["space"] = r.space;
  out["n"] = r.space.point_count();
  out["validated"] = r.validated;
  py::list refuted;
  for (const RefutedPrinciple& ref : r.refuted) {
    py::dict entry;
    entry["id"] = ref.id;
    py::dict witness;
    for (const auto& [atom, mask] : ref.witness) witness[py::str(atom)] = r.space.labels_of_mask(mask);
    entry["witness"] = witness;
    entry["truth"] = r.space.labels_of_mask(ref.truth_set);
    refuted.append(entry);
  }
  out["refuted"] = refuted;
  out["spaces_examined"] = r.spaces_examined;
  out["points_reached"] = r.points_reached;
  return out;
}

const Catalog& catalog_or_builtin(const py::object& catalog) {
  if (catalog.is_none()) return Catalog::builtin();
  return catalog.cast<const Catalog&>();
}

}  // namespace

PYBIND11_MODULE(_topocheck, m) {
  m.doc() = "finite topological models for intuitionistic propositional logic";
  m.attr("__version__") = "0.1.0";
  m.attr("HARD_POINT_LIMIT") = kHardPointLimit;
  m.attr("DEFAULT_POINT_CAP") = kDefaultPointCap;

  py::register_exception<ParseError>(m, "FormulaParseError", PyExc_ValueError);

  py::class_<Formula, FormulaRef>(m, "Formula")
      .def("__str__", [](const Formula& f) { return render(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + render(f) + "')"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return equal(a, b); },
           py::is_operator())
      .def("atoms", [](const Formula& f) { return atoms(f); })
      .def("substitute", [](const FormulaRef& f, const std::map<std::string, py::object>& binding) {
        std::map<std::string, FormulaRef> b;
        for (const auto& [atom, g] : binding) b[atom] = formula_arg(g);
        return substitute(f, b);
      });

  m.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));
  m.def("render", [](const FormulaRef& f) { return render(f); }, py::arg("formula"));

  py::class_<FiniteSpace>(m, "FiniteSpace")
      .def_static(
          "from_subbase",
          [](const std::vector<std::string>& points,
             const std::vector<std::vector<std::string>>& subbase, int cap) {
            return FiniteSpace::from_subbase(points, masks_from_points(points, subbase), cap);
          },
          py::arg("points"), py::arg("subbase"), py::arg("cap") = kDefaultPointCap)
      .def_static(
          "from_opens",
          [](const std::vector<std::string>& points,
             const std::vector<std::vector<std::string>>& opens, int cap) {
            return FiniteSpace::from_opens(points, masks_from_points(points, opens), cap);
          },
          py::arg("points"), py::arg("opens"), py::arg("cap") = kDefaultPointCap)
      .def_property_readonly("points", &FiniteSpace::labels)
      .def_property_readonly("opens",
                             [](const FiniteSpace& s) {
                               std::vector<std::vector<std::string>> out;
                               for (Mask u : s.opens()) out.push_back(s.labels_of_mask(u));
                               return out;
                             })
      .def("__len__", &FiniteSpace::point_count)
      .def("__repr__",
           [](const FiniteSpace& s) {
             return "FiniteSpace(n=" + std::to_string(s.point_count()) + ", opens=" +
                    std::to_string(s.opens().size()) + ")";
           })
      .def("is_open",
           [](const FiniteSpace& s, const std::vector<std::string>& labels) {
             return s.is_open(mask_arg(s, labels));
           })
      .def("interior",
           [](const FiniteSpace& s, const std::vector<std::string>& labels) {
             return s.labels_of_mask(s.interior(mask_arg(s, labels)));
           })
      .def("heyting_imp",
           [](const FiniteSpace& s, const std::vector<std::string>& u,
              const std::vector<std::string>& v) {
             return s.labels_of_mask(s.heyting_imp(mask_arg(s, u), mask_arg(s, v)));
           })
      .def("pseudo_complement",
           [](const FiniteSpace& s, const std::vector<std::string>& u) {
             return s.labels_of_mask(s.pseudo_complement(mask_arg(s, u)));
           })
      .def("specialization_preorder",
           [](const FiniteSpace& s) {
             std::vector<std::pair<std::string, std::string>> pairs;
             auto up = s.specialization_upsets();
             for (int x = 0; x < s.point_count(); ++x)
               for (int y = 0; y < s.point_count(); ++y)
                 if ((up[x] >> y) & 1u) pairs.emplace_back(s.labels()[x], s.labels()[y]);
             return pairs;
           })
      .def("canonical_code", [](const FiniteSpace& s) { return s.canonical_form().hex(); })
      .def("automorphisms", &FiniteSpace::automorphisms)
      .def("to_json", &space_to_json);

  m.def("is_topology",
        [](const std::vector<std::string>& points,
           const std::vector<std::vector<std::string>>& family) {
          return is_topology(int(points.size()), masks_from_points(points, family));
        },
        py::arg("points"), py::arg("family"));

  m.def("builtin_space", [](const std::string& name, int cap) { return builtin_space(name, cap); },
        py::arg("name"), py::arg("cap") = kDefaultPointCap);

  m.def("space_from_json", [](const std::string& text, int cap) { return space_from_json(text, cap); },
        py::arg("text"), py::arg("cap") = kDefaultPointCap);

  m.def("enumerate_spaces",
        [](int n, bool up_to_homeomorphism, int cap, int jobs) {
          return enumerate_spaces_vec(n, up_to_homeomorphism, cap, jobs);
        },
        py::arg("n"), py::arg("up_to_homeomorphism") = false, py::arg("cap") = kDefaultPointCap,
        py::arg("jobs") = 1);

  m.def("eval",
        [](const FiniteSpace& s, const std::map<std::string, std::vector<std::string>>& valuation,
           const py::object& formula) {
          return s.labels_of_mask(eval(s, valuation_arg(s, valuation), *formula_arg(formula)));
        },
        py::arg("space"), py::arg("valuation"), py::arg("formula"));
  m.def("forces",
        [](const FiniteSpace& s, const std::map<std::string, std::vector<std::string>>& valuation,
           const py::object& formula) {
          return forces(s, valuation_arg(s, valuation), *formula_arg(formula));
        },
        py::arg("space"), py::arg("valuation"), py::arg("formula"));
  m.def("entails",
        [](const FiniteSpace& s, const std::map<std::string, std::vector<std::string>>& valuation,
           const py::object& phi, const py::object& psi) {
          return entails(s, valuation_arg(s, valuation), *formula_arg(phi), *formula_arg(psi));
        },
        py::arg("space"), py::arg("valuation"), py::arg("phi"), py::arg("psi"));

  py::class_<Principle>(m, "Principle")
      .def_readonly("id", &Principle::id)
      .def_property_readonly("schema", [](const Principle& p) { return render(p.schema); })
      .def_readonly("metavars", &Principle::metavars)
      .def_readonly("arity", &Principle::arity)
      .def_property_readonly("eq_class", [](const Principle& p) { return to_string(p.eq_class); })
      .def_readonly("cite", &Principle::citation)
      .def("__repr__", [](const Principle& p) { return "Principle('" + p.id + "')"; });

  py::class_<Catalog>(m, "Catalog")
      .def_static("builtin", [] { return Catalog::builtin(); },
                  py::return_value_policy::reference)
      .def_static("from_json", [](const std::string& text) { return Catalog::from_json(text); })
      .def("to_json", &Catalog::to_json)
      .def("entries", &Catalog::entries, py::return_value_policy::reference_internal)
      .def("find", [](const Catalog& c, const std::string& id) -> py::object {
        const Principle* p = c.find(id);
        if (p == nullptr) return py::none();
        return py::cast(*p);
      })
      .def("equivalence_classes", [](const Catalog& c) {
        py::dict out;
        for (const auto& [cls, ids] : c.equivalence_classes()) out[py::str(to_string(cls))] = ids;
        return out;
      })
      .def("__len__", [](const Catalog& c) { return c.entries().size(); });

  m.def("instantiate",
        [](const Principle& p, const std::vector<py::object>& args) {
          std::vector<FormulaRef> fs;
          for (const py::object& a : args) fs.push_back(formula_arg(a));
          return instantiate(p, fs);
        },
        py::arg("principle"), py::arg("args"));

  m.def("valid_schema",
        [](const FiniteSpace& s, const py::object& schema, const py::object& arity_limit,
           bool prune_automorphisms) {
          if (py::isinstance<Principle>(schema)) {
            const Principle& p = schema.cast<const Principle&>();
            return valid_schema(s, *p.schema, std::max(kDefaultArityLimit, p.arity),
                                prune_automorphisms);
          }
          int limit = arity_limit.is_none() ? kDefaultArityLimit : arity_limit.cast<int>();
          return valid_schema(s, *formula_arg(schema), limit, prune_automorphisms);
        },
        py::arg("space"), py::arg("schema"), py::arg("arity_limit") = py::none(),
        py::arg("prune_automorphisms") = false);

  m.def("counterexample",
        [](const FiniteSpace& s, const py::object& schema, const py::object& arity_limit) {
          if (py::isinstance<Principle>(schema))
            return report_to_py(s, counterexample_kind(s, schema.cast<const Principle&>()));
          int limit = arity_limit.is_none() ? kDefaultArityLimit : arity_limit.cast<int>();
          return report_to_py(s, counterexample_kind(s, *formula_arg(schema), limit));
        },
        py::arg("space"), py::arg("schema"), py::arg("arity_limit") = py::none());

  m.def("find_separating_model",
        [](const std::vector<std::string>& validate, const std::vector<std::string>& refute,
           int max_points, bool strong, int jobs, int cap, const py::object& catalog) {
          return separation_to_py(find_separating_model(catalog_or_builtin(catalog), validate,
                                                        refute, max_points, strong, jobs, cap));
        },
        py::arg("validate"), py::arg("refute"), py::arg("max_points"), py::arg("strong") = false,
        py::arg("jobs") = 1, py::arg("cap") = kDefaultPointCap, py::arg("catalog") = py::none());

  m.def("profile",
        [](const FiniteSpace& s, const py::object& catalog) {
          SpaceProfile prof = profile(catalog_or_builtin(catalog), s);
          py::dict out;
          for (std::size_t i = 0; i < prof.ids.size(); ++i)
            out[py::str(prof.ids[i])] = bool(prof.valid[i]);
          return out;
        },
        py::arg("space"), py::arg("catalog") = py::none());

  m.def("survey",
        [](int max_points, int jobs, int cap, const py::object& catalog) {
          SurveyReport report = survey(catalog_or_builtin(catalog), max_points, jobs, cap);
          py::dict out;
          out["max_points"] = report.max_points;
          out["representatives"] = report.representatives;
          py::list pairs;
          for (const SurveyPair& pair : report.pairs) {
            py::dict entry;
            entry["validates"] = pair.validates;
            entry["refutes"] = pair.refutes;
            entry["found"] = pair.witness.has_value();
            entry["spaces_examined"] = pair.spaces_examined;
            if (pair.witness.has_value()) {
              entry["n"] = pair.witness->space.point_count();
              entry["space"] = pair.witness->space;
            }
            pairs.append(entry);
          }
          out["pairs"] = pairs;
          out["dot"] = to_dot(report);
          return out;
        },
        py::arg("max_points"), py::arg("jobs") = 1, py::arg("cap") = kDefaultPointCap,
        py::arg("catalog") = py::none());

  m.def("verify_equivalence_classes",
        [](int max_points, int jobs, int cap, const py::object& catalog) {
          ClassReport report =
              verify_equivalence_classes(catalog_or_builtin(catalog), max_points, jobs, cap);
          py::dict out;
          out["max_points"] = report.max_points;
          out["spaces_checked"] = report.spaces_checked;
          py::list violations;
          for (const ClassViolation& v : report.violations) {
            py::dict entry;
            entry["n"] = v.n;
            entry["code"] = v.code.hex();
            entry["class"] = to_string(v.eq_class);
            py::dict members;
            for (const auto& [id, valid] : v.member_validity) members[py::str(id)] = valid;
            entry["members"] = members;
            violations.append(entry);
          }
          out["violations"] = violations;
          return out;
        },
        py::arg("max_points"), py::arg("jobs") = 1, py::arg("cap") = kDefaultPointCap,
        py::arg("catalog") = py::none());
}
