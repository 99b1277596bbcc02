#pragma once

#include <array>
#include <optional>

#include "mdrk/dg.hpp"
#include "mdrk/models.hpp"
#include "mdrk/tableau.hpp"
#include "mdrk/weno.hpp"

namespace mdrk {

// dt = cfl * dx / S with S the largest wave speed over the current state
// (cell averages for DG), floored by the problem's analytic speed bound
// when one exists; the caller clips the final step onto t_final.
double step_size(const FdState& state, const FluxModel& model, double cfl,
                 std::optional<double> speed_floor = {});
double step_size(const DgState& state, const FluxModel& model, double cfl,
                 std::optional<double> speed_floor = {});

// Per-step mass accounting: the b-weighted boundary flux integrals and
// second-derivative boundary terms that the interior total must follow on
// an outflow domain.
struct MassBudget {
  std::array<double, kMaxComponents> boundary_integral{};

  void add(int m, double weight, const std::array<double, kMaxComponents>& left,
           const std::array<double, kMaxComponents>& right) {
    for (int c = 0; c < m; ++c) boundary_integral[c] += weight * (left[c] - right[c]);
  }
  void add_volume(int m, double weight, const std::array<double, kMaxComponents>& sum) {
    for (int c = 0; c < m; ++c) boundary_integral[c] += weight * sum[c];
  }
};

// One step of an explicit multiderivative scheme (r <= 2) on the FD-WENO
// discretization. Stage assembly applies contributions in stage order; see
// weno_md_stage for the exact arithmetic contract.
FdState advance(const FdState& state, const Tableau& tableau, const FluxModel& model,
                const WenoParams& params, Bc bc, double dt, MassBudget* budget = nullptr);

// One step on the DG discretization; the moment limiter, when enabled, is
// applied after every stage and after the update.
DgState advance(const DgState& state, const Tableau& tableau, const FluxModel& model,
                RiemannSolver solver, bool limiter, Bc bc, double dt);

}  // namespace mdrk
