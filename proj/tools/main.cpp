// Command line front end: `run` evolves one configuration and writes the
// solution CSV; `converge` sweeps a mesh list and reports errors/orders.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mdrk/driver.hpp"
#include "mdrk/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CliOptions {
  std::string config_path;
  std::string problem, space, integrator, riemann, weno_mode;
  int mx = -1;
  double cfl = -1.0, cfl_max = -1.0;
  double weno_power = -1.0, weno_eps = -1.0, weno_inflation = -1.0;
  bool no_limiter = false;
  bool meta = false;
  std::string out;
  int snapshot_every = -1;
  std::string meshes;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_path, "key = value configuration file");
  cmd->add_option("--problem", opt.problem,
                  "advection-smooth, advection-bells, buckley-leverett, dam-break, "
                  "lax-shock-tube, shock-entropy");
  cmd->add_option("--space", opt.space, "spatial discretization: weno or dg");
  cmd->add_option("--integrator", opt.integrator,
                  "tdrk3, tdrk4, tdrk5, rk4, ssprk3, taylor2");
  cmd->add_option("--mx", opt.mx, "grid points (weno) or cells (dg)");
  cmd->add_option("--cfl", opt.cfl, "Courant number");
  cmd->add_option("--cfl-max", opt.cfl_max, "maximum allowed Courant number (dg)");
  cmd->add_option("--riemann", opt.riemann, "llf or hlle");
  cmd->add_option("--weno-mode", opt.weno_mode, "weights: z, js or linear");
  cmd->add_option("--weno-power", opt.weno_power, "WENO-Z power parameter");
  cmd->add_option("--weno-eps", opt.weno_eps, "smoothness regularization");
  cmd->add_option("--weno-inflation", opt.weno_inflation, "wave speed safety factor");
  cmd->add_flag("--no-limiter", opt.no_limiter, "disable the dg moment limiter");
  cmd->add_option("--out", opt.out, "output CSV path");
}

// config file first, then flags on top
mdrk::RunConfig build_config(const CliOptions& opt) {
  mdrk::RunConfig cfg;
  if (!opt.config_path.empty()) {
    std::ifstream file(opt.config_path);
    if (!file) throw mdrk::ConfigError("cannot open config file '" + opt.config_path + "'");
    cfg = mdrk::parse_config(file);
  }
  using mdrk::apply_config_line;
  if (!opt.problem.empty()) apply_config_line(cfg, "problem", opt.problem);
  if (!opt.space.empty()) apply_config_line(cfg, "space", opt.space);
  if (!opt.integrator.empty()) apply_config_line(cfg, "integrator", opt.integrator);
  if (opt.mx >= 0) apply_config_line(cfg, "mx", std::to_string(opt.mx));
  if (opt.cfl >= 0.0) apply_config_line(cfg, "cfl", std::to_string(opt.cfl));
  if (opt.cfl_max >= 0.0) apply_config_line(cfg, "cfl_max", std::to_string(opt.cfl_max));
  if (!opt.riemann.empty()) apply_config_line(cfg, "riemann", opt.riemann);
  if (!opt.weno_mode.empty()) apply_config_line(cfg, "weno_mode", opt.weno_mode);
  if (opt.weno_power >= 0.0) apply_config_line(cfg, "weno_power", std::to_string(opt.weno_power));
  if (opt.weno_eps >= 0.0) {
    std::ostringstream ss;
    ss << opt.weno_eps;
    apply_config_line(cfg, "weno_eps", ss.str());
  }
  if (opt.weno_inflation >= 0.0)
    apply_config_line(cfg, "weno_inflation", std::to_string(opt.weno_inflation));
  if (opt.no_limiter) apply_config_line(cfg, "limiter", "false");
  if (!opt.out.empty()) apply_config_line(cfg, "out", opt.out);
  if (opt.snapshot_every >= 0)
    apply_config_line(cfg, "snapshot_every", std::to_string(opt.snapshot_every));
  if (cfg.problem.empty()) throw mdrk::ConfigError("no problem selected (use --problem)");
  return cfg;
}

std::vector<int> parse_meshes(const std::string& list) {
  std::vector<int> meshes;
  std::istringstream ss(list);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      meshes.push_back(std::stoi(field));
    } catch (const std::exception&) {
      throw mdrk::ConfigError("--meshes: cannot parse '" + field + "' as an integer");
    }
  }
  if (meshes.empty()) throw mdrk::ConfigError("--meshes: need a comma-separated list");
  return meshes;
}

int run_command(const CliOptions& opt) {
  mdrk::RunConfig cfg = build_config(opt);
  const mdrk::ProblemSpec problem = mdrk::make_problem(cfg.problem);
  mdrk::resolve_config(cfg, problem);
  const mdrk::RunResult result = mdrk::run(cfg, problem);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw mdrk::ConfigError("cannot open output file '" + cfg.out + "'");
    os = &file;
  }
  if (opt.meta) {
    *os << "# problem = " << cfg.problem << "\n";
    *os << "# space = " << mdrk::space_name(cfg.space) << "\n";
    *os << "# scheme = " << cfg.integrator << "\n";
    *os << "# mx = " << cfg.mx << "\n";
    *os << "# cfl = " << cfg.cfl << "\n";
    *os << "# t_final = " << problem.t_final << "\n";
  }
  mdrk::write_solution_csv(*os, result);
  std::cerr << "steps: " << result.steps;
  if (result.rejected_steps > 0) std::cerr << " (rejected " << result.rejected_steps << ")";
  std::cerr << "\n";
  return 0;
}

int converge_command(const CliOptions& opt) {
  mdrk::RunConfig cfg = build_config(opt);
  const auto meshes = parse_meshes(opt.meshes);
  const auto rows = mdrk::convergence_study(cfg, meshes);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw mdrk::ConfigError("cannot open output file '" + cfg.out + "'");
    os = &file;
  }
  mdrk::write_convergence_csv(*os, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiderivative Runge-Kutta solvers for 1D conservation laws"};
  app.require_subcommand(1);

  CliOptions run_opt, conv_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "evolve one configuration to its final time");
  add_common_flags(run_cmd, run_opt);
  run_cmd->add_option("--snapshot-every", run_opt.snapshot_every,
                      "also write the state every N steps");
  run_cmd->add_flag("--meta", run_opt.meta, "prefix the CSV with a metadata header");

  CLI::App* conv_cmd =
      app.add_subcommand("converge", "run a mesh sweep and report errors and orders");
  add_common_flags(conv_cmd, conv_opt);
  conv_cmd->add_option("--meshes", conv_opt.meshes, "comma-separated mesh sizes")->required();

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed()) return run_command(run_opt);
    return converge_command(conv_opt);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  } catch (const mdrk::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mdrk::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const mdrk::StateError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
