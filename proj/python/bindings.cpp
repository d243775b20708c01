#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "mocover/commands.hpp"
#include "mocover/config.hpp"
#include "mocover/descent.hpp"
#include "mocover/geometry.hpp"
#include "mocover/io.hpp"
#include "mocover/linesearch.hpp"
#include "mocover/metrics.hpp"
#include "mocover/noise.hpp"
#include "mocover/problem.hpp"
#include "mocover/simplex_qp.hpp"
#include "mocover/solver.hpp"

namespace py = pybind11;
using namespace mocover;

namespace {

CommandOptions options(std::optional<std::uint64_t> seed, std::optional<std::string> out) {
  CommandOptions o;
  o.seed = seed;
  if (out) o.out = *out;
  return o;
}

// (exit code, stdout text, stderr text)
template <class F>
py::tuple capture(F&& f) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = f(out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pareto set box coverings under inexact data";

  py::register_exception<EmptyCovering>(m, "EmptyCovering", PyExc_RuntimeError);
  py::register_exception<InfeasibleBounds>(m, "InfeasibleBounds", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<HyperBox>(m, "HyperBox")
      .def(py::init<Vector, Vector>(), py::arg("center"), py::arg("radius"))
      .def_static("from_bounds", &HyperBox::from_bounds, py::arg("lower"), py::arg("upper"))
      .def_property_readonly("center", &HyperBox::center)
      .def_property_readonly("radius", &HyperBox::radius)
      .def_property_readonly("lower", &HyperBox::lower)
      .def_property_readonly("upper", &HyperBox::upper)
      .def_property_readonly("diameter", &HyperBox::diameter)
      .def_property_readonly("volume", &HyperBox::volume)
      .def("contains", &HyperBox::contains)
      .def("__repr__", [](const HyperBox& b) {
        std::ostringstream s;
        s << "HyperBox(lower=" << b.lower().transpose() << ", upper=" << b.upper().transpose() << ")";
        return s.str();
      });

  m.def("sample_points", &sample_points, py::arg("box"), py::arg("points_per_axis"));

  py::class_<BoxCollection>(m, "BoxCollection")
      .def(py::init<HyperBox>(), py::arg("root"))
      .def(py::init<HyperBox, int, const std::vector<CellIndex>&>(), py::arg("root"),
           py::arg("depth"), py::arg("cells"))
      .def_property_readonly("root", &BoxCollection::root)
      .def_property_readonly("depth", &BoxCollection::depth)
      .def_property_readonly("dim", &BoxCollection::dim)
      .def_property_readonly("diameter", &BoxCollection::diameter)
      .def_property_readonly("measure", &BoxCollection::measure)
      .def_property_readonly("cell_width", &BoxCollection::cell_width)
      .def_property_readonly("keys", &BoxCollection::keys)
      .def("__len__", &BoxCollection::size)
      .def("cell_index", &BoxCollection::cell_index)
      .def("cell_lower", &BoxCollection::cell_lower)
      .def("cell_upper", &BoxCollection::cell_upper)
      .def("cell_center", &BoxCollection::cell_center)
      .def("cell_box", &BoxCollection::cell_box)
      .def("centers", &covering_centers)
      .def("locate", &BoxCollection::locate)
      .def("subdivide", &BoxCollection::subdivide)
      .def("with_keys", &BoxCollection::with_keys);
  m.def("is_subcovering", &is_subcovering, py::arg("inner"), py::arg("outer"));

  py::enum_<ProductionForm>(m, "ProductionForm")
      .value("product", ProductionForm::Product)
      .value("verbatim_sum", ProductionForm::VerbatimSum);

  py::class_<UncertainProblem>(m, "Problem")
      .def(py::init<std::string, int, int, ValueFunction, GradientFunction>(), py::arg("name"),
           py::arg("n"), py::arg("k"), py::arg("value"), py::arg("gradient") = GradientFunction{})
      .def_property_readonly("name", &UncertainProblem::name)
      .def_property_readonly("n", &UncertainProblem::n)
      .def_property_readonly("k", &UncertainProblem::k)
      .def_property_readonly("xi", &UncertainProblem::xi)
      .def_property_readonly("eps", &UncertainProblem::eps)
      .def_property_readonly("noise_seed", &UncertainProblem::noise_seed)
      .def_property_readonly("default_region", &UncertainProblem::default_region)
      .def("with_errors", &UncertainProblem::with_errors, py::arg("xi"), py::arg("eps"))
      .def("with_seed", &UncertainProblem::with_seed, py::arg("seed"))
      .def("with_region", &UncertainProblem::with_region, py::arg("region"))
      .def("exact_value", &UncertainProblem::exact_value)
      .def("exact_gradient", &UncertainProblem::exact_gradient)
      .def("value", &UncertainProblem::value)
      .def("gradient", &UncertainProblem::gradient);

  m.def(
      "builtin",
      [](const std::string& name, std::optional<int> n, ProductionForm form) {
        BuiltinOptions opts;
        opts.production_form = form;
        return builtin(name, n ? *n : builtin_default_dim(name), opts);
      },
      py::arg("name"), py::arg("n") = py::none(), py::arg("production_form") = ProductionForm::Product);
  m.def("builtin_names", &builtin_names);
  m.def(
      "perturbation",
      [](std::uint64_t seed, const Vector& x, int objective, double bound, int dim) {
        return perturbation(seed, x, objective, bound, dim);
      },
      py::arg("seed"), py::arg("x"), py::arg("objective"), py::arg("bound"), py::arg("dim"));

  py::class_<SimplexWeights>(m, "SimplexWeights")
      .def_readonly("alpha", &SimplexWeights::alpha)
      .def_readonly("alpha_min", &SimplexWeights::alpha_min);
  m.def("solve_qop", py::overload_cast<const Matrix&, const Vector&>(&solve_qop),
        py::arg("gradients"), py::arg("alpha_min"));
  m.def("solve_qop", py::overload_cast<const Matrix&>(&solve_qop), py::arg("gradients"));
  m.def("combination", &combination, py::arg("gradients"), py::arg("alpha"));

  py::enum_<DescentStatus>(m, "DescentStatus")
      .value("descent", DescentStatus::Descent)
      .value("stationary", DescentStatus::StationaryDetected);
  py::class_<DescentOutcome>(m, "DescentOutcome")
      .def_readonly("direction", &DescentOutcome::direction)
      .def_readonly("weights", &DescentOutcome::weights)
      .def_readonly("status", &DescentOutcome::status)
      .def_readonly("iterations", &DescentOutcome::iterations);
  m.def("inexact_descent", &inexact_descent, py::arg("gradients"), py::arg("eps"),
        py::arg("max_rounds") = 50);
  m.def("validity_check", &validity_check, py::arg("direction"), py::arg("gradients"),
        py::arg("eps"), py::arg("tolerance") = 1e-9);

  py::class_<LineSearchConfig>(m, "LineSearchConfig")
      .def(py::init<>())
      .def_readwrite("c1", &LineSearchConfig::c1)
      .def_readwrite("h0", &LineSearchConfig::h0)
      .def_readwrite("backtrack_factor", &LineSearchConfig::backtrack_factor)
      .def_readwrite("h_min", &LineSearchConfig::h_min);
  m.def(
      "armijo_step",
      [](const UncertainProblem& p, const Vector& x, const Vector& d, const LineSearchConfig& cfg) {
        return armijo_step(p, x, d, cfg);
      },
      py::arg("problem"), py::arg("x"), py::arg("direction"), py::arg("config") = LineSearchConfig{});
  m.def(
      "descent_map",
      [](const UncertainProblem& p, const Vector& x, const LineSearchConfig& cfg, int iterations) {
        return iterate_descent_map(p, x, cfg, iterations);
      },
      py::arg("problem"), py::arg("x"), py::arg("config") = LineSearchConfig{},
      py::arg("iterations") = 1);

  py::enum_<SolverMode>(m, "SolverMode")
      .value("gradient", SolverMode::Gradient)
      .value("sampling", SolverMode::Sampling)
      .value("combined", SolverMode::Combined);
  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("steps", &SolverConfig::steps)
      .def_readwrite("points_per_axis", &SolverConfig::points_per_axis)
      .def_readwrite("mode", &SolverConfig::mode)
      .def_readwrite("inner_iterations", &SolverConfig::inner_iterations)
      .def_readwrite("seed", &SolverConfig::seed)
      .def_readwrite("linesearch", &SolverConfig::linesearch)
      .def_readwrite("max_descent_rounds", &SolverConfig::max_descent_rounds)
      .def_readwrite("feasibility", &SolverConfig::feasibility)
      .def_readwrite("threads", &SolverConfig::threads)
      .def_readwrite("keep_history", &SolverConfig::keep_history);

  py::class_<StepRecord>(m, "StepRecord")
      .def_readonly("depth", &StepRecord::depth)
      .def_readonly("box_count", &StepRecord::box_count)
      .def_readonly("max_diameter", &StepRecord::max_diameter)
      .def_readonly("eval_count", &StepRecord::eval_count)
      .def_readonly("hausdorff", &StepRecord::hausdorff);
  py::class_<RunReport>(m, "RunReport")
      .def_readonly("steps", &RunReport::steps)
      .def_readonly("total_evals", &RunReport::total_evals)
      .def_readonly("ratio_to_reference", &RunReport::ratio_to_reference)
      .def("to_csv", &report_to_csv);
  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("covering", &SolveResult::covering)
      .def_readonly("report", &SolveResult::report)
      .def_readonly("history", &SolveResult::history);

  m.def(
      "solve",
      [](const UncertainProblem& p, const HyperBox& region, const SolverConfig& cfg) {
        // a Python feasibility callback needs the GIL on every call, which
        // would serialize worker threads anyway
        if (cfg.feasibility) {
          SolverConfig single = cfg;
          single.threads = 1;
          return solve(p, region, single);
        }
        py::gil_scoped_release release;
        return solve(p, region, cfg);
      },
      py::arg("problem"), py::arg("region"), py::arg("config"));
  m.def("confidently_dominates", &confidently_dominates, py::arg("y_star"), py::arg("y"),
        py::arg("xi"));
  m.def("confidently_dominated", &confidently_dominated, py::arg("values"), py::arg("xi"));

  m.def(
      "hausdorff",
      [](const std::vector<Vector>& a, const std::vector<Vector>& b) { return hausdorff(a, b); },
      py::arg("a"), py::arg("b"));
  m.def("covering_hausdorff", &covering_hausdorff, py::arg("a"), py::arg("b"));
  m.def("kkt_residual", &kkt_residual, py::arg("problem"), py::arg("x"));
  py::class_<ResidualField>(m, "ResidualField")
      .def_readonly("resolution", &ResidualField::resolution)
      .def_readonly("points", &ResidualField::points)
      .def_readonly("values", &ResidualField::values);
  m.def("residual_field", &residual_field, py::arg("problem"), py::arg("region"),
        py::arg("resolution"));
  m.def("covering_to_json", &covering_to_json, py::arg("covering"));
  m.def(
      "covering_from_json",
      [](const std::string& text, std::optional<HyperBox> root) {
        return covering_from_json(text, root);
      },
      py::arg("text"), py::arg("root") = py::none());

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("name", &RunConfig::name)
      .def_readwrite("problem", &RunConfig::problem)
      .def_readwrite("dim", &RunConfig::dim)
      .def_readwrite("lower", &RunConfig::lower)
      .def_readwrite("upper", &RunConfig::upper)
      .def_readwrite("mode", &RunConfig::mode)
      .def_readwrite("steps", &RunConfig::steps)
      .def_readwrite("xi", &RunConfig::xi)
      .def_readwrite("eps", &RunConfig::eps)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("points_per_axis", &RunConfig::points_per_axis)
      .def_readwrite("inner_iterations", &RunConfig::inner_iterations)
      .def_readwrite("max_descent_rounds", &RunConfig::max_descent_rounds)
      .def_readwrite("linesearch", &RunConfig::linesearch)
      .def_readwrite("production_form", &RunConfig::production_form)
      .def_readwrite("output", &RunConfig::output)
      .def_readwrite("reference", &RunConfig::reference)
      .def_readwrite("save_steps", &RunConfig::save_steps)
      .def_readwrite("threads", &RunConfig::threads)
      .def("problem_instance", &make_problem)
      .def("region", &make_region)
      .def("solver_config", &make_solver_config)
      .def("serialize", &serialize_config)
      .def("hash", &config_hash)
      .def("__eq__", &RunConfig::operator==);
  m.def("parse_config", &parse_config, py::arg("text"), py::arg("source") = "<config>");
  m.def("load_config", &load_config, py::arg("path"));

  m.def(
      "cmd_run",
      [](const std::string& config, std::optional<std::uint64_t> seed, std::optional<std::string> out) {
        return capture([&](std::ostream& o, std::ostream& e) {
          return cmd_run(config, options(seed, out), o, e);
        });
      },
      py::arg("config"), py::arg("seed") = py::none(), py::arg("out") = py::none(),
      "Returns (exit code, stdout, stderr).");
  m.def(
      "cmd_compare",
      [](const std::string& a, const std::string& b, std::optional<std::string> out) {
        return capture([&](std::ostream& o, std::ostream& e) {
          return cmd_compare(a, b, options(std::nullopt, out), o, e);
        });
      },
      py::arg("run_a"), py::arg("run_b"), py::arg("out") = py::none());
  m.def(
      "cmd_residual_field",
      [](const std::string& config, int resolution, std::optional<std::string> out) {
        return capture([&](std::ostream& o, std::ostream& e) {
          return cmd_residual_field(config, resolution, options(std::nullopt, out), o, e);
        });
      },
      py::arg("config"), py::arg("resolution"), py::arg("out") = py::none());
}
