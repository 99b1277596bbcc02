#include "mdrk/problems.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "mdrk/errors.hpp"
#include "mdrk/quadrature.hpp"
#include "mdrk/stepper.hpp"

namespace mdrk {

namespace {

double wrap_periodic(double x, double a, double b) {
  const double w = b - a;
  double y = std::fmod(x - a, w);
  if (y < 0.0) y += w;
  return a + y;
}

// bisection for a sign change of f on [lo, hi]
template <typename F>
double bisect(F f, double lo, double hi, double tol) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if (flo * f(hi) > 0.0) throw std::runtime_error("bisect: no sign change in bracket");
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

double bl_flux(double q, double M) { return q * q / (q * q + M * (1.0 - q) * (1.0 - q)); }

double bl_speed(double q, double M) {
  const double den = q * q + M * (1.0 - q) * (1.0 - q);
  return 2.0 * M * q * (1.0 - q) / (den * den);
}

// the four-bell initial profile of the hard advection test
double bells_ic(double x) {
  const double a = 0.5, z = -0.7, delta = 0.005, alpha = 10.0;
  const double beta = std::log10(2.0) / (36.0 * delta * delta);
  auto G = [&](double y, double center) { return std::exp(-beta * (y - center) * (y - center)); };
  auto F = [&](double y, double center) {
    return std::sqrt(std::max(1.0 - alpha * alpha * (y - center) * (y - center), 0.0));
  };
  if (x >= -0.8 && x <= -0.6) return (G(x, z - delta) + G(x, z + delta) + 4.0 * G(x, z)) / 6.0;
  if (x >= -0.4 && x <= -0.2) return 1.0;
  if (x >= 0.0 && x <= 0.2) return 1.0 - std::abs(10.0 * (x - 0.1));
  if (x >= 0.4 && x <= 0.6) return (F(x, a - delta) + F(x, a + delta) + 4.0 * F(x, a)) / 6.0;
  return 0.0;
}

SolutionFn advection_exact(std::function<double(double)> q0, double a, double b) {
  return [q0 = std::move(q0), a, b](double t, double x, std::span<double> out) {
    out[0] = q0(wrap_periodic(x - t, a, b));
  };
}

}  // namespace

double exact_advection(const std::function<double(double)>& q0, double t, double x) {
  return q0(wrap_periodic(x - t, -1.0, 1.0));
}

double buckley_leverett_qstar_left(double M) {
  // tangency with the undisturbed state q_c = 1
  auto g = [&](double q) { return bl_speed(q, M) * (q - 1.0) - (bl_flux(q, M) - 1.0); };
  return bisect(g, 1e-8, 0.5, 1e-14);
}

double buckley_leverett_qstar_right(double M) {
  // tangency with q_c = 0
  auto g = [&](double q) { return bl_speed(q, M) * q - bl_flux(q, M); };
  return bisect(g, 0.05, 0.95, 1e-14);
}

double exact_buckley_leverett(double t, double x, double M) {
  if (t <= 0.0) return (x >= -0.5 && x <= 0.0) ? 1.0 : 0.0;
  const double ql = buckley_leverett_qstar_left(M);
  const double qr = buckley_leverett_qstar_right(M);
  const double sl = bl_speed(ql, M);  // left compound wave's shock speed
  const double sr = bl_speed(qr, M);  // right compound wave's shock speed

  const double zl = (x + 0.5) / t;
  const double zr = x / t;
  if (zl <= 0.0) return 0.0;
  if (zl < sl) {
    // left fan: f' increasing from 0 at q=0 to sl at q=ql
    return bisect([&](double q) { return bl_speed(q, M) - zl; }, 0.0, ql, 1e-14);
  }
  if (zr <= 0.0) return 1.0;  // plateau between the waves
  if (zr < sr) {
    // right fan: f' decreasing from sr at q=qr to 0 at q=1
    return bisect([&](double q) { return bl_speed(q, M) - zr; }, qr, 1.0, 1e-14);
  }
  return 0.0;
}

DamBreakSolution solve_dam_break(double hl, double hr, double g) {
  if (!(hl > hr && hr > 0.0))
    throw std::invalid_argument("solve_dam_break: need hl > hr > 0");
  auto phi = [&](double h) {
    return 2.0 * (std::sqrt(g * hl) - std::sqrt(g * h)) -
           (h - hr) * std::sqrt(g * (h + hr) / (2.0 * h * hr));
  };
  const double hm = bisect(phi, hr, hl, 1e-15);
  const double um = 2.0 * (std::sqrt(g * hl) - std::sqrt(g * hm));
  return {hm, um, hm * um / (hm - hr)};
}

void exact_dam_break(double t, double x, double hl, double hr, double g, std::span<double> out) {
  if (hl == hr) {
    out[0] = hl;
    out[1] = 0.0;
    return;
  }
  if (t <= 0.0) {
    const double h = x <= 0.0 ? hl : hr;
    out[0] = h;
    out[1] = 0.0;
    return;
  }
  const DamBreakSolution sol = solve_dam_break(hl, hr, g);
  const double z = x / t;
  const double head = -std::sqrt(g * hl);
  const double tail = sol.u_middle - std::sqrt(g * sol.h_middle);
  double h, u;
  if (z <= head) {
    h = hl;
    u = 0.0;
  } else if (z < tail) {
    // inside the fan: u - sqrt(gh) = z and u + 2 sqrt(gh) = 2 sqrt(g hl)
    const double c = (2.0 * std::sqrt(g * hl) - z) / 3.0;
    h = c * c / g;
    u = z + c;
  } else if (z < sol.shock_speed) {
    h = sol.h_middle;
    u = sol.u_middle;
  } else {
    h = hr;
    u = 0.0;
  }
  out[0] = h;
  out[1] = h * u;
}

ProblemSpec make_problem(std::string_view name) {
  ProblemSpec p;
  p.name = std::string(name);
  if (name == "advection-smooth") {
    p.model = make_model("advection");
    p.a = -1.0;
    p.b = 1.0;
    p.bc = Bc::periodic;
    p.t_final = 2.0;
    auto q0 = [](double x) { return std::sin(M_PI * x); };
    p.ic = [q0](double x, std::span<double> out) { out[0] = q0(x); };
    p.exact = advection_exact(q0, -1.0, 1.0);
    p.cfl_weno = 0.9;  // makes the temporal error dominate the convergence study
    return p;
  }
  if (name == "advection-bells") {
    p.model = make_model("advection");
    p.a = -1.0;
    p.b = 1.0;
    p.bc = Bc::periodic;
    p.t_final = 8.0;
    p.ic = [](double x, std::span<double> out) { out[0] = bells_ic(x); };
    p.exact = advection_exact(bells_ic, -1.0, 1.0);
    return p;
  }
  if (name == "buckley-leverett") {
    auto model = std::make_shared<BuckleyLeverett>(1.0 / 3.0);
    p.speed_bound = model->global_speed_bound();
    p.model = model;
    p.a = -1.0;
    p.b = 1.0;
    p.bc = Bc::outflow;  // compact support; nothing reaches the boundary by t = 0.4
    p.t_final = 0.4;
    p.ic = [](double x, std::span<double> out) {
      out[0] = (x >= -0.5 && x <= 0.0) ? 1.0 : 0.0;
    };
    const double M = model->mobility_ratio();
    p.exact = [M](double t, double x, std::span<double> out) {
      out[0] = exact_buckley_leverett(t, x, M);
    };
    p.riemann = RiemannSolver::hlle;  // all waves move one way; LLF over-dissipates
    return p;
  }
  if (name == "dam-break") {
    p.model = std::make_shared<ShallowWater>(1.0);
    p.a = 0.0;
    p.b = 1.0;
    p.bc = Bc::outflow;
    p.t_final = 0.2;
    p.ic = [](double x, std::span<double> out) {
      out[0] = x <= 0.5 ? 3.0 : 1.0;
      out[1] = 0.0;
    };
    p.exact = [](double t, double x, std::span<double> out) {
      exact_dam_break(t, x - 0.5, 3.0, 1.0, 1.0, out);
    };
    return p;
  }
  if (name == "lax-shock-tube") {
    p.model = std::make_shared<Euler>(1.4);
    p.a = 0.0;
    p.b = 1.0;
    p.bc = Bc::outflow;
    p.t_final = 0.16;
    p.ic = [](double x, std::span<double> out) {
      if (x <= 0.5) {
        out[0] = 0.445;
        out[1] = 0.3111;
        out[2] = 8.928;
      } else {
        out[0] = 0.5;
        out[1] = 0.0;
        out[2] = 1.4275;
      }
    };
    return p;
  }
  if (name == "shock-entropy") {
    auto model = std::make_shared<Euler>(1.4);
    const double gamma = model->gamma();
    p.model = model;
    p.a = -5.0;
    p.b = 5.0;
    p.bc = Bc::outflow;
    p.t_final = 1.8;
    p.ic = [gamma](double x, std::span<double> out) {
      double rho, u, pr;
      if (x < -4.0) {
        rho = 3.857143;
        u = 2.629369;
        pr = 10.3333;
      } else {
        rho = 1.0 + 0.2 * std::sin(5.0 * x);
        u = 0.0;
        pr = 1.0;
      }
      out[0] = rho;
      out[1] = rho * u;
      out[2] = pr / (gamma - 1.0) + 0.5 * rho * u * u;
    };
    return p;
  }
  throw ConfigError("unknown problem '" + std::string(name) +
                    "' (expected one of advection-smooth, advection-bells, buckley-leverett, "
                    "dam-break, lax-shock-tube, shock-entropy)");
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {
      "advection-smooth", "advection-bells", "buckley-leverett",
      "dam-break",        "lax-shock-tube",  "shock-entropy"};
  return names;
}

double error_norm(const FdState& state, const SolutionFn& exact) {
  const int m = state.m;
  std::vector<double> qe(m);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < state.grid.mx; ++i) {
    exact(state.t, state.grid.x(i), qe);
    for (int c = 0; c < m; ++c) {
      const double d = state.q(i, c) - qe[c];
      num += d * d;
      den += qe[c] * qe[c];
    }
  }
  return std::sqrt(num) / std::sqrt(den);
}

double error_norm(const DgState& state, const SolutionFn& exact, int quad_points) {
  const auto& rule = gauss_legendre(quad_points);
  const int m = state.m;
  std::vector<double> qe(m);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < state.mx; ++i) {
    for (int q = 0; q < quad_points; ++q) {
      const double xi = rule.nodes[q];
      const double x = state.cell_center(i) + 0.5 * state.dx() * xi;
      exact(state.t, x, qe);
      for (int c = 0; c < m; ++c) {
        const double qh = dg_eval(state.Q, i, c, xi);
        num += rule.weights[q] * (qh - qe[c]) * (qh - qe[c]);
        den += rule.weights[q] * qe[c] * qe[c];
      }
    }
  }
  return std::sqrt(num) / std::sqrt(den);
}

double l1_error(const FdState& state, const SolutionFn& exact) {
  const int m = state.m;
  std::vector<double> qe(m);
  double acc = 0.0;
  for (int i = 0; i < state.grid.mx; ++i) {
    exact(state.t, state.grid.x(i), qe);
    for (int c = 0; c < m; ++c) acc += std::abs(state.q(i, c) - qe[c]);
  }
  return acc * state.grid.dx();
}

double l1_error(const DgState& state, const SolutionFn& exact, int quad_points) {
  const auto& rule = gauss_legendre(quad_points);
  const int m = state.m;
  std::vector<double> qe(m);
  double acc = 0.0;
  for (int i = 0; i < state.mx; ++i) {
    for (int q = 0; q < quad_points; ++q) {
      const double xi = rule.nodes[q];
      const double x = state.cell_center(i) + 0.5 * state.dx() * xi;
      exact(state.t, x, qe);
      for (int c = 0; c < m; ++c)
        acc += 0.5 * rule.weights[q] * std::abs(dg_eval(state.Q, i, c, xi) - qe[c]);
    }
  }
  return acc * state.dx();
}

double ReferenceRun::sample(double xq, int c) const {
  if (x.empty()) return 0.0;
  if (xq <= x.front()) return q[c];
  if (xq >= x.back()) return q[(x.size() - 1) * m + c];
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  const size_t hi = static_cast<size_t>(it - x.begin());
  const size_t lo = hi - 1;
  const double w = (xq - x[lo]) / (x[hi] - x[lo]);
  return (1.0 - w) * q[lo * m + c] + w * q[hi * m + c];
}

ReferenceRun make_reference(const ProblemSpec& problem, int mx, double cfl,
                            std::string_view scheme) {
  const Tableau tableau = make_tableau(scheme);
  const FluxModel& model = *problem.model;
  FdGrid grid{problem.a, problem.b, mx};
  FdState state = make_fd_state(grid, model.components());
  std::vector<double> q0(model.components());
  for (int i = 0; i < mx; ++i) {
    problem.ic(grid.x(i), q0);
    for (int c = 0; c < model.components(); ++c) state.q(i, c) = q0[c];
  }
  WenoParams params;
  params.alpha_override = problem.speed_bound;
  while (state.t < problem.t_final) {
    double dt = step_size(state, model, cfl, problem.speed_bound);
    if (state.t + dt > problem.t_final) dt = problem.t_final - state.t;
    state = advance(state, tableau, model, params, problem.bc, dt);
  }
  return reference_from_state(problem, state, scheme, cfl);
}

ReferenceRun reference_from_state(const ProblemSpec& problem, const FdState& state,
                                  std::string_view scheme, double cfl) {
  ReferenceRun ref;
  ref.problem = problem.name;
  ref.scheme = std::string(scheme);
  ref.space = "weno";
  ref.mx = state.grid.mx;
  ref.cfl = cfl;
  ref.t_final = state.t;
  ref.m = state.m;
  ref.x.resize(state.grid.mx);
  ref.q.resize(static_cast<size_t>(state.grid.mx) * state.m);
  for (int i = 0; i < state.grid.mx; ++i) {
    ref.x[i] = state.grid.x(i);
    for (int c = 0; c < state.m; ++c) ref.q[static_cast<size_t>(i) * state.m + c] = state.q(i, c);
  }
  return ref;
}

void write_reference(std::ostream& os, const ReferenceRun& ref) {
  os << "# problem = " << ref.problem << "\n";
  os << "# space = " << ref.space << "\n";
  os << "# scheme = " << ref.scheme << "\n";
  os << "# mx = " << ref.mx << "\n";
  os << "# cfl = " << ref.cfl << "\n";
  os << "# t_final = " << ref.t_final << "\n";
  os << "x";
  for (int c = 0; c < ref.m; ++c) os << ",q" << c + 1;
  os << "\n";
  char buf[32];
  for (size_t i = 0; i < ref.x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.16e", ref.x[i]);
    os << buf;
    for (int c = 0; c < ref.m; ++c) {
      std::snprintf(buf, sizeof buf, "%.16e", ref.q[i * ref.m + c]);
      os << "," << buf;
    }
    os << "\n";
  }
}

ReferenceRun read_reference(std::istream& is) {
  ReferenceRun ref;
  std::string line;
  int m = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string key, eq, value;
      ls >> key >> eq >> value;
      if (key == "problem") ref.problem = value;
      else if (key == "space") ref.space = value;
      else if (key == "scheme") ref.scheme = value;
      else if (key == "mx") ref.mx = std::stoi(value);
      else if (key == "cfl") ref.cfl = std::stod(value);
      else if (key == "t_final") ref.t_final = std::stod(value);
      continue;
    }
    if (line[0] == 'x') {  // column header
      m = static_cast<int>(std::count(line.begin(), line.end(), ','));
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    ref.x.push_back(std::stod(field));
    while (std::getline(ls, field, ',')) ref.q.push_back(std::stod(field));
  }
  ref.m = m > 0 ? m : 1;
  return ref;
}

}  // namespace mdrk
