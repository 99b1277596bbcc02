#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mdrk/problems.hpp"
#include "mdrk/stepper.hpp"

namespace mdrk {

enum class Space { weno, dg };

// A fully resolved run request. Fields left unset on the command line or
// in the config file are filled from the problem/integrator defaults by
// resolve_config.
struct RunConfig {
  std::string problem;
  Space space = Space::weno;
  std::string integrator = "tdrk4";
  int mx = 100;
  double cfl = 0.0;      // 0 means "use the default for this problem/space"
  double cfl_max = 0.0;  // DG step-rejection cap
  WenoParams weno;
  // unset: LLF everywhere except Buckley-Leverett, which defaults to HLL(E)
  std::optional<RiemannSolver> riemann;
  bool limiter = true;
  std::string out;
  int snapshot_every = 0;  // 0: only the final state is written

  bool operator==(const RunConfig&) const = default;
};

// Parses "key = value" lines; '#' starts a comment. Later assignments and
// command-line flags override earlier ones. Unknown keys or out-of-range
// values raise ConfigError naming the key.
RunConfig parse_config(std::istream& file);
void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value);
void write_config(std::ostream& os, const RunConfig& cfg);

// Fills CFL/riemann defaults from the problem and integrator, then checks
// the invariants (0 < cfl <= cfl_max, mesh large enough for the stencil).
void resolve_config(RunConfig& cfg, const ProblemSpec& problem);

// Per-scheme DG Courant numbers (desired, maximum) from the time-stepping
// comparison table; every other integrator runs at the tdrk4 values.
std::pair<double, double> dg_cfl_defaults(const std::string& integrator);

struct RunResult {
  std::variant<FdState, DgState> state;
  long steps = 0;
  long rejected_steps = 0;
  // conserved totals (sum q dx / sum of cell averages dx) after each step
  std::vector<std::array<double, kMaxComponents>> totals;
  std::array<double, kMaxComponents> initial_total{};
  // accumulated b-weighted boundary flux integral (FD only); the interior
  // total minus this stays constant up to round-off on outflow domains
  MassBudget budget;
};

RunResult run(const RunConfig& cfg, const ProblemSpec& problem);
RunResult run(const RunConfig& cfg);  // resolves the problem by name

struct ConvergenceRow {
  int mx;
  double error;
  std::optional<double> order;  // log2(e_coarse / e_fine)
};

std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg,
                                              const std::vector<int>& meshes);

// Solution CSV: header "x,q1[,q2,q3]"; FD writes one row per grid point,
// DG writes 4 uniformly spaced in-cell points per cell. An optional
// '#'-prefixed metadata block precedes the header for reference files.
void write_solution_csv(std::ostream& os, const FdState& state);
void write_solution_csv(std::ostream& os, const DgState& state);
void write_solution_csv(std::ostream& os, const RunResult& result);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

std::string space_name(Space s);
std::string riemann_name(RiemannSolver s);
std::string weno_mode_name(WenoMode m);

}  // namespace mdrk
