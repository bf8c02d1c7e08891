#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ifsot/ifs.hpp"
#include "ifsot/registry.hpp"
#include "ifsot/sampler.hpp"
#include "ifsot/specfile.hpp"
#include "ifsot/staircase.hpp"
#include "ifsot/symbolic.hpp"
#include "ifsot/transport.hpp"

namespace py = pybind11;
using namespace ifsot;

namespace {

Rational as_rational(const py::handle& v) {
  if (py::isinstance<py::str>(v)) return Rational::parse(v.cast<std::string>());
  if (py::isinstance<py::int_>(v)) return Rational(v.cast<std::int64_t>());
  return Rational::from_double(v.cast<double>());
}

WeightVector as_weights(const py::sequence& seq) {
  std::vector<Rational> w;
  for (const auto& v : seq) w.push_back(as_rational(v));
  return WeightVector(std::move(w));
}

py::tuple interval(const Interval& i) { return py::make_tuple(i.lo, i.hi); }

}  // namespace

PYBIND11_MODULE(_ifsot, m) {
  m.doc() = "Stationary measures of interval IFS and their Wasserstein-1 distances";

  py::register_exception<HypothesisViolation>(m, "HypothesisViolation", PyExc_ValueError);
  py::register_exception<SpecParseError>(m, "SpecParseError", PyExc_ValueError);

  py::class_<ContractionMap>(m, "ContractionMap")
      .def_static("affine", [](const py::object& a, const py::object& b) {
        return ContractionMap::affine(as_rational(a), as_rational(b));
      })
      .def_static("quarter_sine", [](const py::object& a, const py::object& b) {
        return ContractionMap::quarter_sine(as_rational(a), as_rational(b));
      })
      .def("__call__", &evaluate_map)
      .def_property_readonly("sign", &ContractionMap::sign)
      .def_property_readonly("lipschitz", &ContractionMap::lipschitz)
      .def("__repr__", &ContractionMap::str);

  py::class_<IFSystem>(m, "IFSystem")
      .def(py::init<std::vector<ContractionMap>>())
      .def("__len__", &IFSystem::size)
      .def("validation", [](const IFSystem& s) {
        const auto& v = s.validation();
        py::dict d;
        d["ordering_ok"] = v.ordering_ok;
        d["disjoint_open_images"] = v.disjoint_open_images;
        d["disjoint_closed_images"] = v.disjoint_closed_images;
        d["all_positive"] = v.all_positive;
        return d;
      });

  m.def("flip_system", [](const py::object& r) { return make_flip_system(as_rational(r)); });
  m.def("cantor_system", [](const py::object& r) { return make_cantor_system(as_rational(r)); });
  m.def("parse_spec", [](const std::string& text) {
    SystemSpec s = parse_system_spec(text);
    py::list weights;
    for (const auto& w : s.weights) weights.append(py::cast(std::vector<double>(w.values().begin(), w.values().end())));
    return py::make_tuple(s.system, weights);
  });

  py::class_<StaircaseApprox>(m, "Staircase")
      .def("__len__", [](const StaircaseApprox& s) { return s.cells().size(); })
      .def_property_readonly("error_budget", &StaircaseApprox::error_budget)
      .def_property_readonly("max_cell_mass", &StaircaseApprox::max_cell_mass)
      .def("cdf", [](const StaircaseApprox& s, double x) { return interval(eval_cdf(s, x)); })
      .def("mean", [](const StaircaseApprox& s) { return interval(integrate_against(s, CostDescriptor::identity())); })
      .def("to_csv", [](const StaircaseApprox& s) {
        std::ostringstream out;
        write_staircase_csv(out, s);
        return out.str();
      });

  m.def(
      "staircase",
      [](const IFSystem& s, const py::sequence& p, double resolution) {
        return build_staircase(s, as_weights(p), resolution);
      },
      py::arg("system"), py::arg("weights"), py::arg("resolution") = kDefaultResolution);

  m.def("w1_numeric", [](const StaircaseApprox& a, const StaircaseApprox& b) { return interval(w1_numeric(a, b)); });

  m.def(
      "w1_report",
      [](const IFSystem& f, const py::sequence& p, const IFSystem& g, const py::sequence& q, double resolution,
         std::uint64_t mc, std::uint64_t seed) {
        W1Options o;
        o.resolution = resolution;
        o.mc_count = mc;
        o.seed = seed;
        return to_json(w1_report(f, as_weights(p), g, as_weights(q), o));
      },
      py::arg("f"), py::arg("p"), py::arg("g"), py::arg("q"), py::arg("resolution") = kDefaultResolution,
      py::arg("mc") = 0, py::arg("seed") = 1, "W1 report as a JSON string");

  m.def(
      "sample",
      [](const IFSystem& s, const py::sequence& p, std::uint64_t count, std::uint64_t burn_in, std::uint64_t seed) {
        return chaos_game(s, as_weights(p), count, burn_in, seed).points;
      },
      py::arg("system"), py::arg("weights"), py::arg("count"), py::arg("burn_in") = 64, py::arg("seed") = 1);

  m.def("level", [](unsigned n) {
    const OrderedLevel level = build_level(n);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < level.size(); ++i) out.push_back(level.word(i).str());
    return out;
  });

  m.def("crossing_search", [](unsigned k, unsigned n_max) {
    std::vector<std::tuple<unsigned, std::uint64_t, std::string>> out;
    for (const auto& c : crossing_equation_search(k, n_max)) out.emplace_back(c.n, c.i, c.value.str());
    return out;
  });

  m.def(
      "plateaus",
      [](const py::object& r, const py::object& p, unsigned k_max) {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& row : plateau_intervals(as_rational(r), as_rational(p), k_max).rows) {
          out.emplace_back(row.a.str(), row.b.str(), row.value.str());
        }
        return out;
      },
      py::arg("r"), py::arg("p"), py::arg("k_max"));

  m.def("examples", [] {
    std::vector<std::string> ids;
    for (const auto& e : example_registry()) ids.push_back(e.id);
    return ids;
  });
  m.def(
      "run_example",
      [](const std::string& id, double resolution) {
        const ExampleSpec* e = find_example(id);
        if (!e) throw py::key_error(id);
        const ExampleResult r = run_example(*e, resolution);
        py::dict d;
        d["id"] = r.id;
        d["passed"] = r.passed;
        d["detail"] = r.detail;
        d["numeric"] = r.numeric ? py::object(interval(*r.numeric)) : py::none();
        return d;
      },
      py::arg("id"), py::arg("resolution") = 1e-5);

#ifdef IFSOT_VERSION
  m.attr("__version__") = IFSOT_VERSION;
#endif
}
