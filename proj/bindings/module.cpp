// Python bindings for the solver core: tableaux, flux models, the exact
// solutions, and the run/convergence drivers.
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <variant>

#include "mdrk/driver.hpp"
#include "mdrk/errors.hpp"

namespace py = pybind11;
using namespace mdrk;

namespace {

Space parse_space(const std::string& s) {
  if (s == "weno") return Space::weno;
  if (s == "dg") return Space::dg;
  throw ConfigError("space must be 'weno' or 'dg', got '" + s + "'");
}

WenoMode parse_mode(const std::string& s) {
  if (s == "z") return WenoMode::z;
  if (s == "js") return WenoMode::js;
  if (s == "linear") return WenoMode::linear;
  throw ConfigError("weno_mode must be 'z', 'js' or 'linear', got '" + s + "'");
}

RunConfig build_config(const std::string& problem, const std::string& space,
                       const std::string& integrator, int mx, std::optional<double> cfl,
                       std::optional<std::string> riemann, const std::string& weno_mode,
                       bool limiter) {
  RunConfig cfg;
  cfg.problem = problem;
  cfg.space = parse_space(space);
  cfg.integrator = integrator;
  cfg.mx = mx;
  if (cfl) cfg.cfl = *cfl;
  if (riemann) {
    if (*riemann == "llf") cfg.riemann = RiemannSolver::llf;
    else if (*riemann == "hlle") cfg.riemann = RiemannSolver::hlle;
    else throw ConfigError("riemann must be 'llf' or 'hlle'");
  }
  cfg.weno.mode = parse_mode(weno_mode);
  cfg.limiter = limiter;
  return cfg;
}

py::dict run_py(const std::string& problem, const std::string& space,
                const std::string& integrator, int mx, std::optional<double> cfl,
                std::optional<std::string> riemann, const std::string& weno_mode,
                bool limiter) {
  RunConfig cfg = build_config(problem, space, integrator, mx, cfl, riemann, weno_mode, limiter);
  const ProblemSpec spec = make_problem(cfg.problem);
  resolve_config(cfg, spec);
  const RunResult result = run(cfg, spec);

  py::dict out;
  const int m = spec.model->components();
  if (std::holds_alternative<FdState>(result.state)) {
    const FdState& s = std::get<FdState>(result.state);
    py::array_t<double> x(s.grid.mx), q({s.grid.mx, m});
    auto xr = x.mutable_unchecked<1>();
    auto qr = q.mutable_unchecked<2>();
    for (int i = 0; i < s.grid.mx; ++i) {
      xr(i) = s.grid.x(i);
      for (int c = 0; c < m; ++c) qr(i, c) = s.q(i, c);
    }
    out["x"] = x;
    out["q"] = q;
    out["t"] = s.t;
  } else {
    const DgState& s = std::get<DgState>(result.state);
    constexpr double xis[4] = {-0.75, -0.25, 0.25, 0.75};
    py::array_t<double> x(4 * s.mx), q({4 * s.mx, m});
    auto xr = x.mutable_unchecked<1>();
    auto qr = q.mutable_unchecked<2>();
    int row = 0;
    for (int i = 0; i < s.mx; ++i)
      for (double xi : xis) {
        xr(row) = s.cell_center(i) + 0.5 * s.dx() * xi;
        for (int c = 0; c < m; ++c) qr(row, c) = dg_eval(s.Q, i, c, xi);
        ++row;
      }
    out["x"] = x;
    out["q"] = q;
    out["t"] = s.t;
  }
  out["steps"] = result.steps;
  py::list mass0, mass1;
  for (int c = 0; c < m; ++c) {
    mass0.append(result.initial_total[c]);
    mass1.append(result.totals.empty() ? result.initial_total[c] : result.totals.back()[c]);
  }
  out["mass_initial"] = mass0;
  out["mass_final"] = mass1;
  return out;
}

py::list convergence_py(const std::string& problem, const std::string& space,
                        const std::string& integrator, const std::vector<int>& meshes,
                        std::optional<double> cfl, const std::string& weno_mode,
                        bool limiter) {
  RunConfig cfg =
      build_config(problem, space, integrator, 100, cfl, std::nullopt, weno_mode, limiter);
  py::list rows;
  for (const auto& row : convergence_study(cfg, meshes)) {
    py::dict d;
    d["mx"] = row.mx;
    d["error"] = row.error;
    d["order"] = row.order ? py::object(py::float_(*row.order)) : py::none();
    rows.append(d);
  }
  return rows;
}

py::array_t<double> span_to_array(const std::vector<double>& v) {
  py::array_t<double> out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multiderivative Runge-Kutta solvers for 1D hyperbolic conservation laws";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<StateError>(m, "StateError", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

  py::class_<Tableau>(m, "Tableau")
      .def_property_readonly("name", &Tableau::name)
      .def_property_readonly("stages", &Tableau::stages)
      .def_property_readonly("derivatives", &Tableau::derivatives)
      .def_property_readonly("design_order", &Tableau::design_order)
      .def("c", [](const Tableau& t, int i) { return t.cd(i); })
      .def("a", [](const Tableau& t, int m_, int i, int j) { return t.ad(m_, i, j); },
           py::arg("m"), py::arg("i"), py::arg("j"))
      .def("b", [](const Tableau& t, int m_, int i) { return t.bd(m_, i); }, py::arg("m"),
           py::arg("i"))
      .def("is_explicit", &Tableau::is_explicit)
      .def("__repr__", [](const Tableau& t) {
        return "<Tableau " + t.name() + " s=" + std::to_string(t.stages()) +
               " r=" + std::to_string(t.derivatives()) + ">";
      });

  m.def("make_tableau", &make_tableau, py::arg("name"),
        "Construct a named scheme: tdrk3, tdrk4, tdrk5, rk4, ssprk3, taylor2");
  m.def("tableau_names", [] { return tableau_names(); });
  m.def(
      "amplification_polynomial",
      [](const Tableau& t) {
        py::list out;
        for (const auto& c : amplification_polynomial(t))
          out.append(py::make_tuple(static_cast<long long>(c.numerator()),
                                    static_cast<long long>(c.denominator())));
        return out;
      },
      py::arg("tableau"),
      "Exact rational coefficients of R(z) as (numerator, denominator) pairs");
  m.def("max_imaginary_extent", &max_imaginary_extent, py::arg("tableau"),
        py::arg("tol") = 1e-12);

  py::class_<FluxModel>(m, "FluxModel")
      .def_property_readonly("name", [](const FluxModel& f) { return std::string(f.name()); })
      .def_property_readonly("components", &FluxModel::components)
      .def("flux",
           [](const FluxModel& f, const std::vector<double>& q) {
             std::vector<double> out(f.components());
             f.flux(q, out);
             return span_to_array(out);
           })
      .def("jacobian",
           [](const FluxModel& f, const std::vector<double>& q) {
             const int n = f.components();
             std::vector<double> out(n * n);
             f.jacobian(q, out);
             py::array_t<double> arr({n, n});
             std::copy(out.begin(), out.end(), arr.mutable_data());
             return arr;
           })
      .def("eigenvalues",
           [](const FluxModel& f, const std::vector<double>& q) {
             std::vector<double> out(f.components());
             f.eigenvalues(q, out);
             return span_to_array(out);
           })
      .def("eigensystem",
           [](const FluxModel& f, const std::vector<double>& q) {
             const EigenSystem e = f.eigensystem(q);
             const int n = e.m;
             py::array_t<double> R({n, n}), Rinv({n, n}), lam(n);
             for (int r = 0; r < n; ++r) {
               lam.mutable_at(r) = e.lambda[r];
               for (int c = 0; c < n; ++c) {
                 R.mutable_at(r, c) = e.R[r * n + c];
                 Rinv.mutable_at(r, c) = e.Rinv[r * n + c];
               }
             }
             return py::make_tuple(R, lam, Rinv);
           })
      .def("max_abs_speed", [](const FluxModel& f, const std::vector<double>& q) {
        return f.max_abs_speed(q);
      });

  m.def("make_model", &make_model, py::arg("name"),
        "advection, buckley-leverett, shallow-water or euler");

  m.def(
      "smoothness_indicators",
      [](const std::array<double, 5>& h) {
        double beta[3];
        smoothness_indicators(h.data(), beta);
        return py::make_tuple(beta[0], beta[1], beta[2]);
      },
      py::arg("hbar"));
  m.def(
      "weno5_plus",
      [](const std::array<double, 5>& h, const std::string& mode, double power, double eps) {
        WenoParams p;
        p.mode = parse_mode(mode);
        p.power = power;
        p.eps = eps;
        return weno5_plus(h.data(), p);
      },
      py::arg("hbar"), py::arg("mode") = "z", py::arg("power") = 2.0, py::arg("eps") = 1e-12);
  m.def(
      "weno5_minus",
      [](const std::array<double, 5>& h, const std::string& mode, double power, double eps) {
        WenoParams p;
        p.mode = parse_mode(mode);
        p.power = power;
        p.eps = eps;
        return weno5_minus(h.data(), p);
      },
      py::arg("hbar"), py::arg("mode") = "z", py::arg("power") = 2.0, py::arg("eps") = 1e-12);

  m.def("legendre", &legendre, py::arg("k"), py::arg("xi"));
  m.def("legendre_dxi", &legendre_dxi, py::arg("k"), py::arg("xi"));

  m.def("problem_names", [] { return problem_names(); });
  m.def("exact_buckley_leverett", &exact_buckley_leverett, py::arg("t"), py::arg("x"),
        py::arg("mobility_ratio") = 1.0 / 3.0);
  m.def(
      "exact_dam_break",
      [](double t, double x, double hl, double hr, double g) {
        std::vector<double> out(2);
        exact_dam_break(t, x, hl, hr, g, out);
        return py::make_tuple(out[0], out[1]);
      },
      py::arg("t"), py::arg("x"), py::arg("hl") = 3.0, py::arg("hr") = 1.0, py::arg("g") = 1.0,
      "Exact (h, hu) of the dam-break Riemann problem, jump at x = 0");
  m.def(
      "exact_solution",
      [](const std::string& problem, double t, double x) {
        const ProblemSpec p = make_problem(problem);
        if (!p.exact) throw ConfigError("problem '" + problem + "' has no exact solution");
        std::vector<double> out(p.model->components());
        p.exact(t, x, out);
        return span_to_array(out);
      },
      py::arg("problem"), py::arg("t"), py::arg("x"));

  m.def("run", &run_py, py::arg("problem"), py::arg("space") = "weno",
        py::arg("integrator") = "tdrk4", py::arg("mx") = 100, py::arg("cfl") = py::none(),
        py::arg("riemann") = py::none(), py::arg("weno_mode") = "z", py::arg("limiter") = true,
        "Evolve a benchmark problem to its final time; returns x, q, t, steps and masses");
  m.def("convergence_study", &convergence_py, py::arg("problem"), py::arg("space"),
        py::arg("integrator"), py::arg("meshes"), py::arg("cfl") = py::none(),
        py::arg("weno_mode") = "z", py::arg("limiter") = true);

  m.attr("__version__") = "0.1.0";
}
