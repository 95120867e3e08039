// Copyright 2026 The agebias Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "agebias/analytics.hpp"
#include "agebias/coupling.hpp"
#include "agebias/exact.hpp"
#include "agebias/harness.hpp"
#include "agebias/process.hpp"

namespace py = pybind11;
using namespace agebias;

namespace {

ProcessConfig make_config(const std::string& model, std::uint32_t m, const std::string& delta,
                          std::uint64_t t_max) {
  ProcessConfig config;
  config.model = parse_model(model);
  config.m = m;
  config.delta = Delta::parse(delta);
  config.t_max = t_max;
  validate(config);
  return config;
}

std::vector<std::string> rational_strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

py::dict suite_dict(const SuiteResult& suite) {
  py::dict d;
  d["name"] = suite.name;
  d["cases"] = suite.cases;
  d["failures"] = suite.failures;
  d["details"] = suite.failure_details;
  d["passed"] = suite.passed();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Age-biased preferential and uniform attachment processes";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("splitmix64", &splitmix64, py::arg("state"));
  m.def("trial_seed", &trial_seed, py::arg("master_seed"), py::arg("trial_index"));

  py::class_<ProcessState>(m, "Process")
      .def(py::init([](const std::string& model, std::uint32_t m, const std::string& delta,
                       std::uint64_t seed) {
             return ProcessState::init(make_config(model, m, delta, 1), seed);
           }),
           py::arg("model") = "PAM", py::arg("m") = 1, py::arg("delta") = "0",
           py::arg("seed") = 0)
      .def("step",
           [](ProcessState& s) {
             std::vector<std::pair<std::uint64_t, bool>> out;
             for (const auto& sel : s.advance_step().selections) out.emplace_back(sel.target, sel.is_loop);
             return out;
           },
           "Adds one vertex; returns its (target, is_loop) selections.")
      .def("run_to",
           [](ProcessState& s, std::uint64_t t_max) {
             py::gil_scoped_release release;
             run(s, t_max, {});
           },
           py::arg("t_max"))
      .def_property_readonly("t", &ProcessState::t)
      .def("degrees", [](const ProcessState& s) {
        return std::vector<std::uint64_t>(s.degrees().begin(), s.degrees().end());
      });

  m.def("rho_pam_matching",
        [](std::uint32_t mm, const std::string& delta) {
          return rho_pam_matching(mm, Delta::parse(delta).to_double()).value;
        },
        py::arg("m"), py::arg("delta") = "0");
  m.def("r_uam_matching", [](std::uint32_t mm) { return r_uam_matching(mm).value; }, py::arg("m"));
  m.def("w_independent", [](std::uint32_t mm) { return w_independent(mm).value; }, py::arg("m"));

  m.def("limit_moment",
        [](const std::string& model, std::uint32_t mm, std::uint64_t r, const std::string& delta,
           unsigned ell) {
          return mixture_moment(
              descendant_limit_law(parse_model(model), mm, r, Delta::parse(delta).to_double()), ell);
        },
        py::arg("model"), py::arg("m"), py::arg("r"), py::arg("delta"), py::arg("ell"));
  m.def("limit_cdf",
        [](const std::string& model, std::uint32_t mm, std::uint64_t r, const std::string& delta,
           double x) {
          return mixture_cdf(
              descendant_limit_law(parse_model(model), mm, r, Delta::parse(delta).to_double()), x);
        },
        py::arg("model"), py::arg("m"), py::arg("r"), py::arg("delta"), py::arg("x"));

  m.def("step_law",
        [](std::uint64_t t, std::uint32_t mm, const std::string& delta, std::uint64_t x,
           std::uint64_t y) {
          return rational_strings(step_law_exact(t, mm, to_rational(Delta::parse(delta)), x, y));
        },
        py::arg("t"), py::arg("m"), py::arg("delta"), py::arg("x"), py::arg("y"),
        "Exact one-step law as 'p/q' strings.");
  m.def("verify_martingale", [](std::uint64_t t, unsigned ell) {
    return suite_dict(run_martingale_suite(t, ell));
  }, py::arg("t_max") = 30, py::arg("ell_max") = 6);
  m.def("verify_stirling", [](unsigned ell) { return suite_dict(run_stirling_suite(ell)); },
        py::arg("ell_max") = 10);
  m.def("verify_steplaw", [](std::uint64_t t, std::uint32_t mm) {
    return suite_dict(run_steplaw_suite(t, mm));
  }, py::arg("t_max") = 6, py::arg("m_max") = 3);
  m.def("coupling_check",
        [](std::uint32_t mm, const std::string& delta, std::uint64_t t, std::uint64_t r,
           std::uint64_t seed) {
          const auto run = make_coupled_run(mm, Delta::parse(delta), t, seed);
          const auto check = descendant_coupling_check(run, r, t);
          return py::make_tuple(check.coarse_x, check.fine_x);
        },
        py::arg("m"), py::arg("delta"), py::arg("t"), py::arg("r"), py::arg("seed"),
        "Returns (coarse X, fine X) for one coupled run.");

  m.def("simulate_csv",
        [](const std::string& config_json) {
          const ExperimentSpec spec = parse_config(config_json);
          SnapshotSeries series;
          {
            py::gil_scoped_release release;
            series = simulate(spec);
          }
          std::ostringstream out;
          write_csv(series, out);
          return out.str();
        },
        py::arg("config_json"));
  m.def("run_trials",
        [](const std::string& config_json) {
          const ExperimentSpec spec = parse_config(config_json);
          py::gil_scoped_release release;
          return run_trials(spec, spec.threads);
        },
        py::arg("config_json"));
  m.def("experiment_json",
        [](const std::string& config_json) {
          const ExperimentSpec spec = parse_config(config_json);
          ExperimentReport report;
          {
            py::gil_scoped_release release;
            report = run_experiment(spec);
          }
          report.wall_clock_seconds.reset();
          return report_to_json(report);
        },
        py::arg("config_json"));

  m.attr("__version__") = AGEBIAS_VERSION;
}
