#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdrk/dg.hpp"
#include "mdrk/models.hpp"
#include "mdrk/weno.hpp"

namespace mdrk {

// exact/reference solution handle: fills the state vector at (t, x)
using SolutionFn = std::function<void(double t, double x, std::span<double>)>;

// A benchmark setup: model, domain, initial/boundary data, final time,
// per-scheme CFL defaults, and an exact solution where one is known.
struct ProblemSpec {
  std::string name;
  std::shared_ptr<const FluxModel> model;
  double a = 0.0, b = 1.0;
  Bc bc = Bc::periodic;
  double t_final = 1.0;
  std::function<void(double x, std::span<double>)> ic;
  SolutionFn exact;  // empty when no closed form is in scope

  double cfl_weno = 0.4;
  // DG runs take their CFL from the integrator table in the driver unless
  // overridden on the command line.
  RiemannSolver riemann = RiemannSolver::llf;
  // Buckley-Leverett pins both the splitting speed and the step-size speed
  // to the analytic bound (the pointwise wave speed vanishes at the
  // initial data, where f' is zero at both plateau values)
  std::optional<double> speed_bound;
};

// Names: advection-smooth, advection-bells, buckley-leverett, dam-break,
// lax-shock-tube, shock-entropy.
ProblemSpec make_problem(std::string_view name);

const std::vector<std::string>& problem_names();

// Unit-speed periodic advection on [-1,1]: q0 evaluated at x - t wrapped
// back into the domain.
double exact_advection(const std::function<double(double)>& q0, double t, double x);

// Compound-wave solution of the double Riemann problem (values 0|1|0 with
// jumps at -1/2 and 0) for t small enough that the waves do not interact.
double exact_buckley_leverett(double t, double x, double mobility_ratio);

// post-shock states of the two compound waves, from the Rankine-Hugoniot
// tangency condition solved by bisection
double buckley_leverett_qstar_left(double mobility_ratio);
double buckley_leverett_qstar_right(double mobility_ratio);

// Exact dam-break solution (left rarefaction, right shock) sampled at
// zeta = (x - x0)/t relative to the initial jump location.
struct DamBreakSolution {
  double h_middle, u_middle, shock_speed;
};
DamBreakSolution solve_dam_break(double hl, double hr, double g);
void exact_dam_break(double t, double x, double hl, double hr, double g, std::span<double> out);

// Relative discrete L2 error of FD point values against the exact solution.
double error_norm(const FdState& state, const SolutionFn& exact);
// Relative L2 error of the DG expansion by per-cell Gauss quadrature.
double error_norm(const DgState& state, const SolutionFn& exact, int quad_points = 8);

// L1 norms used by the shock benchmarks.
double l1_error(const FdState& state, const SolutionFn& exact);
double l1_error(const DgState& state, const SolutionFn& exact, int quad_points = 8);

// A stored solver run: metadata plus the solution sampled on its grid.
struct ReferenceRun {
  std::string problem, scheme, space;
  int mx = 0;
  double cfl = 0.0, t_final = 0.0;
  std::vector<double> x;
  std::vector<double> q;  // row-major, components fastest
  int m = 1;

  // piecewise-linear sampling of component c
  double sample(double xq, int c) const;
};

// Runs FD-WENO with the given scheme and wraps the final state for
// comparison; shock-entropy's published reference is ssprk3 at mx = 6000,
// cfl = 0.1.
ReferenceRun make_reference(const ProblemSpec& problem, int mx, double cfl,
                            std::string_view scheme);

ReferenceRun reference_from_state(const ProblemSpec& problem, const FdState& state,
                                  std::string_view scheme, double cfl);

void write_reference(std::ostream& os, const ReferenceRun& ref);
ReferenceRun read_reference(std::istream& is);

}  // namespace mdrk
