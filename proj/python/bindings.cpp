#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "missmass/bounds.hpp"
#include "missmass/chernoff.hpp"
#include "missmass/errors.hpp"
#include "missmass/experiments.hpp"
#include "missmass/oracle.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace missmass;

namespace {

Family family_arg(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) throw InputError("unknown family: " + name);
  return *f;
}

Side side_arg(const std::string& name) {
  const auto s = parse_side(name);
  if (!s) throw InputError("side must be 'upper' or 'lower', got: " + name);
  return *s;
}

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

py::dict result_dict(const ChernoffResult& r) {
  py::dict d;
  d["family"] = r.family;
  d["t_star"] = r.t_star;
  d["exponent"] = r.exponent;
  d["log_tail_bound"] = r.log_tail_bound;
  d["tail_bound"] = r.tail_bound();
  return d;
}

py::list rows_list(const std::vector<ComparisonRow>& rows) {
  py::list out;
  for (const auto& row : rows) {
    for (const auto& f : row.families) {
      py::dict d;
      d["scenario"] = row.scenario;
      d["m"] = row.m;
      d["n"] = row.n;
      d["eps"] = row.eps;
      d["side"] = std::string(side_name(f.side));
      d["family"] = std::string(family_name(f.family));
      d["status"] = f.status;
      if (f.result) {
        d["t_star"] = f.result->t_star;
        d["exponent"] = f.result->exponent;
        d["log_tail_bound"] = f.result->log_tail_bound;
        d["tail_bound"] = f.result->tail_bound();
      } else {
        for (const char* key : {"t_star", "exponent", "log_tail_bound", "tail_bound"}) d[key] = py::none();
      }
      d["oracle_method"] = std::string(oracle_method_name(row.oracle.method));
      d["oracle_value"] = row.oracle.value;
      d["oracle_ci"] = py::make_tuple(row.oracle.ci_low, row.oracle.ci_high);
      d["rosenthal_tail"] = row.rosenthal_tail;
      d["logp_improvement"] = row.logp_improvement;
      out.append(d);
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Missing-mass concentration bounds, oracles and experiments";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);

  py::class_<SampleModel>(m, "SampleModel")
      .def(py::init([](std::vector<double> p, std::uint64_t n, bool normalize) {
             auto dist = normalize ? DiscreteDistribution::from_weights(std::move(p))
                                   : DiscreteDistribution(std::move(p));
             return SampleModel(std::move(dist), n);
           }),
           py::arg("p"), py::arg("n"), py::arg("normalize") = false,
           "Distribution p observed through n draws. With normalize=True, p may be\n"
           "any nonnegative weights.")
      .def_property_readonly("p", [](const SampleModel& s) { return to_vec(s.p()); })
      .def_property_readonly("q", [](const SampleModel& s) { return to_vec(s.q()); })
      .def_property_readonly("var", [](const SampleModel& s) { return to_vec(s.var()); })
      .def_property_readonly("n", &SampleModel::n)
      .def_property_readonly("size", &SampleModel::size)
      .def_property_readonly("mean_mass", &SampleModel::mean_mass)
      .def_property_readonly("v_minus_sq", &SampleModel::v_minus_sq)
      .def_property_readonly("v_plus_sq",
                             [](const SampleModel& s) { return occupancy_stats(s, 2).v_plus_sq; })
      .def("__repr__", [](const SampleModel& s) {
        return "SampleModel(m=" + std::to_string(s.size()) + ", n=" + std::to_string(s.n()) + ")";
      });

  py::class_<Interval>(m, "Interval")
      .def_readonly("lo", &Interval::lo)
      .def_readonly("hi", &Interval::hi)
      .def_readonly("lo_closed", &Interval::lo_closed)
      .def_readonly("hi_closed", &Interval::hi_closed)
      .def("__contains__", &Interval::contains);

  m.def("families", [] {
    std::vector<std::string> out;
    for (Family f : kAllFamilies) out.emplace_back(family_name(f));
    return out;
  });

  m.def("domain", [](const SampleModel& model, const std::string& family) {
    return make_bound(family_arg(family), model).domain();
  }, py::arg("model"), py::arg("family"), "Interval of t on which the family is defined.");

  m.def("log_mgf", [](const SampleModel& model, const std::string& family, double t) {
    return make_bound(family_arg(family), model)(t);
  }, py::arg("model"), py::arg("family"), py::arg("t"),
     "Upper bound on log E exp(t (M - EM)) from the named family.");

  m.def("chernoff_tail", [](const SampleModel& model, const std::string& family, double eps,
                            const std::string& side) {
    return result_dict(chernoff_tail(make_bound(family_arg(family), model), eps, side_arg(side)));
  }, py::arg("model"), py::arg("family"), py::arg("eps"), py::arg("side") = "upper");

  m.def("exact_surrogate_tail", [](const SampleModel& model, double eps, const std::string& side) {
    return exact_surrogate_tail(model, eps, side_arg(side)).value;
  }, py::arg("model"), py::arg("eps"), py::arg("side") = "upper");

  m.def("simulate_missing_mass",
        [](const SampleModel& model, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
          py::gil_scoped_release release;
          return simulate_missing_mass(model.dist(), model.n(), trials, seed, threads);
        },
        py::arg("model"), py::arg("trials"), py::arg("seed") = 42, py::arg("threads") = 0);

  m.def("compare",
        [](const SampleModel& model, std::vector<double> eps, std::uint64_t trials,
           std::uint64_t seed) {
          std::vector<Family> fams(std::begin(kAllFamilies), std::end(kAllFamilies));
          return rows_list(compare_families(model, "custom", eps, fams,
                                            {Side::Upper, Side::Lower}, trials, seed, 0));
        },
        py::arg("model"), py::arg("eps") = std::vector<double>{0.01, 0.05, 0.1, 0.25},
        py::arg("trials") = 100000, py::arg("seed") = 42);

  m.def("run_fourpoint", [] {
    const auto report = run_fourpoint(ExperimentConfig{});
    py::dict d;
    d["rows"] = rows_list(report.rows);
    py::list curve;
    for (const auto& p : report.curve) {
      curve.append(py::make_tuple(p.t, std::string(family_name(p.family)), p.exponent));
    }
    d["curve"] = curve;
    return d;
  });

  m.def("run_table1",
        [](std::uint64_t trials, std::uint64_t seed, std::vector<double> eps, unsigned threads) {
          ExperimentConfig cfg;
          cfg.scenario = Scenario::Table1;
          cfg.trials = trials;
          cfg.seed = seed;
          cfg.eps_list = std::move(eps);
          cfg.threads = threads;
          Table1Summary s;
          {
            py::gil_scoped_release release;
            s = run_table1(cfg);
          }
          py::dict d;
          d["mean_missing_mass"] = s.mean_missing_mass;
          d["trials"] = s.trials;
          py::list rows;
          for (const auto& r : s.rows) {
            py::dict row;
            row["eps"] = r.eps;
            row["mean"] = r.mean_improvement;
            row["stderr"] = r.stderr_improvement;
            row["sd"] = r.sd_improvement;
            rows.append(row);
          }
          d["rows"] = rows;
          return d;
        },
        py::arg("trials") = 200, py::arg("seed") = 42, py::arg("eps") = std::vector<double>{},
        py::arg("threads") = 0);

  m.def("run_birthday", [](std::vector<std::uint64_t> ns) {
    py::list out;
    for (const auto& r : run_birthday(ExperimentConfig{}, ns)) {
      py::dict d;
      d["n"] = r.n;
      d["m"] = r.m;
      d["eps"] = r.eps;
      d["v_minus_sq_n3"] = r.v_minus_sq_n3;
      d["n_one_minus_mass"] = r.n_one_minus_mass;
      d["theta_range"] = py::make_tuple(r.theta_min, r.theta_max);
      d["upper_exponent"] = r.upper_exponent;
      d["lower_exponent"] = r.lower_exponent;
      d["upper_lower_ratio"] = r.upper_lower_ratio;
      out.append(d);
    }
    return out;
  }, py::arg("ns") = std::vector<std::uint64_t>{10, 20, 40, 80});

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
