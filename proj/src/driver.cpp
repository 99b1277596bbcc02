#include "mdrk/driver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mdrk/errors.hpp"

namespace mdrk {

namespace {

const char* kTrue = "true";
const char* kFalse = "false";

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == kTrue || value == "1" || value == "on") return true;
  if (value == kFalse || value == "0" || value == "off") return false;
  throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a boolean");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

void check_finite(const FdState& s, long step) {
  for (int i = 0; i < s.grid.mx; ++i)
    for (int c = 0; c < s.m; ++c)
      if (!std::isfinite(s.q(i, c)))
        throw NumericalFailure("non-finite value at step " + std::to_string(step) + ", x = " +
                                   std::to_string(s.grid.x(i)) + ", component " +
                                   std::to_string(c + 1),
                               step);
}

void check_finite(const DgState& s, long step) {
  for (int i = 0; i < s.mx; ++i)
    for (int k = 1; k <= s.order; ++k)
      for (int c = 0; c < s.m; ++c)
        if (!std::isfinite(s.Q(i, k, c)))
          throw NumericalFailure("non-finite coefficient at step " + std::to_string(step) +
                                     ", cell " + std::to_string(i) + ", mode " +
                                     std::to_string(k) + ", component " + std::to_string(c + 1),
                                 step);
}

std::array<double, kMaxComponents> conserved_total(const FdState& s) {
  std::array<double, kMaxComponents> total{};
  for (int i = 0; i < s.grid.mx; ++i)
    for (int c = 0; c < s.m; ++c) total[c] += s.q(i, c);
  for (int c = 0; c < s.m; ++c) total[c] *= s.grid.dx();
  return total;
}

std::array<double, kMaxComponents> conserved_total(const DgState& s) {
  std::array<double, kMaxComponents> total{};
  for (int i = 0; i < s.mx; ++i)
    for (int c = 0; c < s.m; ++c) total[c] += s.Q(i, 1, c);
  for (int c = 0; c < s.m; ++c) total[c] *= s.dx();
  return total;
}

void write_snapshot(const RunConfig& cfg, const RunResult& result, long step) {
  if (cfg.out.empty()) return;
  std::string path = cfg.out;
  const auto dot = path.rfind('.');
  char tag[32];
  std::snprintf(tag, sizeof tag, "_%06ld", step);
  if (dot == std::string::npos)
    path += tag;
  else
    path.insert(dot, tag);
  std::ofstream os(path);
  write_solution_csv(os, result);
}

}  // namespace

std::string space_name(Space s) { return s == Space::weno ? "weno" : "dg"; }
std::string riemann_name(RiemannSolver s) { return s == RiemannSolver::llf ? "llf" : "hlle"; }
std::string weno_mode_name(WenoMode m) {
  switch (m) {
    case WenoMode::z: return "z";
    case WenoMode::js: return "js";
    default: return "linear";
  }
}

void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "problem") {
    cfg.problem = value;
  } else if (key == "space") {
    if (value == "weno") cfg.space = Space::weno;
    else if (value == "dg") cfg.space = Space::dg;
    else throw ConfigError("config key 'space': expected weno or dg, got '" + value + "'");
  } else if (key == "integrator") {
    cfg.integrator = value;
  } else if (key == "mx") {
    cfg.mx = parse_int(key, value);
  } else if (key == "cfl") {
    cfg.cfl = parse_double(key, value);
  } else if (key == "cfl_max") {
    cfg.cfl_max = parse_double(key, value);
  } else if (key == "riemann") {
    if (value == "llf") cfg.riemann = RiemannSolver::llf;
    else if (value == "hlle") cfg.riemann = RiemannSolver::hlle;
    else throw ConfigError("config key 'riemann': expected llf or hlle, got '" + value + "'");
  } else if (key == "weno_mode") {
    if (value == "z") cfg.weno.mode = WenoMode::z;
    else if (value == "js") cfg.weno.mode = WenoMode::js;
    else if (value == "linear") cfg.weno.mode = WenoMode::linear;
    else throw ConfigError("config key 'weno_mode': expected z, js or linear, got '" + value + "'");
  } else if (key == "weno_power") {
    cfg.weno.power = parse_double(key, value);
  } else if (key == "weno_eps") {
    cfg.weno.eps = parse_double(key, value);
  } else if (key == "weno_inflation") {
    cfg.weno.inflation = parse_double(key, value);
  } else if (key == "limiter") {
    cfg.limiter = parse_bool(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "snapshot_every") {
    cfg.snapshot_every = parse_int(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& file) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void write_config(std::ostream& os, const RunConfig& cfg) {
  os << "problem = " << cfg.problem << "\n";
  os << "space = " << space_name(cfg.space) << "\n";
  os << "integrator = " << cfg.integrator << "\n";
  os << "mx = " << cfg.mx << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", cfg.cfl);
  os << "cfl = " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", cfg.cfl_max);
  os << "cfl_max = " << buf << "\n";
  if (cfg.riemann) os << "riemann = " << riemann_name(*cfg.riemann) << "\n";
  os << "weno_mode = " << weno_mode_name(cfg.weno.mode) << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", cfg.weno.power);
  os << "weno_power = " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", cfg.weno.eps);
  os << "weno_eps = " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", cfg.weno.inflation);
  os << "weno_inflation = " << buf << "\n";
  os << "limiter = " << (cfg.limiter ? kTrue : kFalse) << "\n";
  if (!cfg.out.empty()) os << "out = " << cfg.out << "\n";
  os << "snapshot_every = " << cfg.snapshot_every << "\n";
}

std::pair<double, double> dg_cfl_defaults(const std::string& integrator) {
  if (integrator == "ssprk3") return {0.125, 0.130};
  return {0.08, 0.085};
}

void resolve_config(RunConfig& cfg, const ProblemSpec& problem) {
  make_tableau(cfg.integrator);  // validates the name
  if (cfg.space == Space::dg) {
    const auto [nu, nu_max] = dg_cfl_defaults(cfg.integrator);
    if (cfg.cfl <= 0.0) cfg.cfl = nu;
    if (cfg.cfl_max <= 0.0) cfg.cfl_max = std::max(nu_max, cfg.cfl);
  } else {
    if (cfg.cfl <= 0.0) cfg.cfl = problem.cfl_weno;
    if (cfg.cfl_max <= 0.0) cfg.cfl_max = cfg.cfl;
  }
  if (!cfg.riemann) cfg.riemann = problem.riemann;
  if (cfg.space == Space::weno && problem.speed_bound && !cfg.weno.alpha_override)
    cfg.weno.alpha_override = problem.speed_bound;

  if (!(cfg.cfl > 0.0 && cfg.cfl <= cfg.cfl_max))
    throw ConfigError("config key 'cfl': need 0 < cfl <= cfl_max");
  if (cfg.space == Space::weno && cfg.mx < 10)
    throw ConfigError("config key 'mx': weno needs mx >= 10 for its stencil");
  if (cfg.space == Space::dg && cfg.mx < 3)
    throw ConfigError("config key 'mx': dg needs mx >= 3");
  if (!(cfg.weno.eps > 0.0)) throw ConfigError("config key 'weno_eps': must be positive");
  if (!(cfg.weno.power >= 1.0)) throw ConfigError("config key 'weno_power': must be >= 1");
  if (!(cfg.weno.inflation >= 1.0))
    throw ConfigError("config key 'weno_inflation': must be >= 1");
  if (cfg.snapshot_every < 0)
    throw ConfigError("config key 'snapshot_every': must be nonnegative");
}

RunResult run(const RunConfig& cfg) {
  const ProblemSpec problem = make_problem(cfg.problem);
  RunConfig resolved = cfg;
  resolve_config(resolved, problem);
  return run(resolved, problem);
}

RunResult run(const RunConfig& cfg, const ProblemSpec& problem) {
  const Tableau tableau = make_tableau(cfg.integrator);
  const FluxModel& model = *problem.model;
  const int m = model.components();
  RunResult result;

  if (cfg.space == Space::weno) {
    FdGrid grid{problem.a, problem.b, cfg.mx};
    FdState state = make_fd_state(grid, m);
    std::vector<double> q0(m);
    for (int i = 0; i < cfg.mx; ++i) {
      problem.ic(grid.x(i), q0);
      for (int c = 0; c < m; ++c) state.q(i, c) = q0[c];
    }
    result.initial_total = conserved_total(state);
    result.state = state;
    if (cfg.snapshot_every > 0) write_snapshot(cfg, result, 0);

    while (state.t < problem.t_final) {
      double dt = step_size(state, model, cfg.cfl, problem.speed_bound);
      if (state.t + dt > problem.t_final) dt = problem.t_final - state.t;
      state = advance(state, tableau, model, cfg.weno, problem.bc, dt, &result.budget);
      ++result.steps;
      check_finite(state, result.steps);
      result.totals.push_back(conserved_total(state));
      if (cfg.snapshot_every > 0 && result.steps % cfg.snapshot_every == 0 &&
          state.t < problem.t_final) {
        result.state = state;
        write_snapshot(cfg, result, result.steps);
      }
    }
    result.state = std::move(state);
  } else {
    DgState state = make_dg_state(problem.a, problem.b, cfg.mx, 4, m);
    std::vector<double> q0(m);
    for (int i = 0; i < cfg.mx; ++i) {
      const double xc = state.cell_center(i);
      const double half = 0.5 * state.dx();
      for (int c = 0; c < m; ++c) {
        auto coeffs = l2_project(
            [&](double xi) {
              std::vector<double> val(m);
              problem.ic(xc + half * xi, val);
              return val[c];
            },
            state.order);
        for (int k = 1; k <= state.order; ++k) state.Q(i, k, c) = coeffs[k - 1];
      }
    }
    result.initial_total = conserved_total(state);
    result.state = state;
    if (cfg.snapshot_every > 0) write_snapshot(cfg, result, 0);

    while (state.t < problem.t_final) {
      double dt = step_size(state, model, cfg.cfl, problem.speed_bound);
      if (state.t + dt > problem.t_final) dt = problem.t_final - state.t;
      // reject the step if the post-step wave speeds say the realized CFL
      // exceeded the cap, and retry with the implied smaller dt
      for (;;) {
        DgState next = advance(state, tableau, model, *cfg.riemann, cfg.limiter, problem.bc, dt);
        const double realized = dt / step_size(next, model, 1.0);
        if (realized <= cfg.cfl_max) {
          state = std::move(next);
          break;
        }
        ++result.rejected_steps;
        dt *= cfg.cfl / realized;
      }
      ++result.steps;
      check_finite(state, result.steps);
      result.totals.push_back(conserved_total(state));
      if (cfg.snapshot_every > 0 && result.steps % cfg.snapshot_every == 0 &&
          state.t < problem.t_final) {
        result.state = state;
        write_snapshot(cfg, result, result.steps);
      }
    }
    result.state = std::move(state);
  }
  return result;
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg,
                                              const std::vector<int>& meshes) {
  const ProblemSpec problem = make_problem(cfg.problem);
  if (!problem.exact)
    throw ConfigError("problem '" + cfg.problem + "' has no exact solution to converge against");
  std::vector<ConvergenceRow> rows;
  for (int mx : meshes) {
    RunConfig c = cfg;
    c.mx = mx;
    c.out.clear();
    c.snapshot_every = 0;
    resolve_config(c, problem);
    RunResult result = run(c, problem);
    double err;
    if (c.space == Space::weno)
      err = error_norm(std::get<FdState>(result.state), problem.exact);
    else
      err = error_norm(std::get<DgState>(result.state), problem.exact);
    ConvergenceRow row{mx, err, std::nullopt};
    if (!rows.empty()) row.order = std::log2(rows.back().error / err);
    rows.push_back(row);
  }
  return rows;
}

void write_solution_csv(std::ostream& os, const FdState& state) {
  os << "x";
  for (int c = 0; c < state.m; ++c) os << ",q" << c + 1;
  os << "\n";
  char buf[32];
  for (int i = 0; i < state.grid.mx; ++i) {
    std::snprintf(buf, sizeof buf, "%.16e", state.grid.x(i));
    os << buf;
    for (int c = 0; c < state.m; ++c) {
      std::snprintf(buf, sizeof buf, "%.16e", state.q(i, c));
      os << "," << buf;
    }
    os << "\n";
  }
}

void write_solution_csv(std::ostream& os, const DgState& state) {
  os << "x";
  for (int c = 0; c < state.m; ++c) os << ",q" << c + 1;
  os << "\n";
  char buf[32];
  // exactly 4 uniformly spaced points per cell
  constexpr double xis[4] = {-0.75, -0.25, 0.25, 0.75};
  for (int i = 0; i < state.mx; ++i) {
    for (double xi : xis) {
      const double x = state.cell_center(i) + 0.5 * state.dx() * xi;
      std::snprintf(buf, sizeof buf, "%.16e", x);
      os << buf;
      for (int c = 0; c < state.m; ++c) {
        std::snprintf(buf, sizeof buf, "%.16e", dg_eval(state.Q, i, c, xi));
        os << "," << buf;
      }
      os << "\n";
    }
  }
}

void write_solution_csv(std::ostream& os, const RunResult& result) {
  if (std::holds_alternative<FdState>(result.state))
    write_solution_csv(os, std::get<FdState>(result.state));
  else
    write_solution_csv(os, std::get<DgState>(result.state));
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "mx,error,order\n";
  char buf[32];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.16e", row.error);
    os << row.mx << "," << buf << ",";
    if (row.order) {
      std::snprintf(buf, sizeof buf, "%.4f", *row.order);
      os << buf;
    }
    os << "\n";
  }
}

}  // namespace mdrk
