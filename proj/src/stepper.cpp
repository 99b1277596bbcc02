#include "mdrk/stepper.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mdrk/errors.hpp"

namespace mdrk {

double step_size(const FdState& state, const FluxModel& model, double cfl,
                 std::optional<double> speed_floor) {
  double speed = speed_floor.value_or(0.0);
  for (int i = 0; i < state.grid.mx; ++i)
    speed = std::max(speed, model.max_abs_speed(state.q.row(i)));
  return cfl * state.grid.dx() / speed;
}

double step_size(const DgState& state, const FluxModel& model, double cfl,
                 std::optional<double> speed_floor) {
  double speed = speed_floor.value_or(0.0);
  std::vector<double> avg(state.m);
  for (int i = 0; i < state.mx; ++i) {
    for (int c = 0; c < state.m; ++c) avg[c] = state.Q(i, 1, c);
    speed = std::max(speed, model.max_abs_speed(avg));
  }
  return cfl * state.dx() / speed;
}

FdState advance(const FdState& state, const Tableau& tableau, const FluxModel& model,
                const WenoParams& params, Bc bc, double dt, MassBudget* budget) {
  if (tableau.derivatives() > 2)
    throw ConfigError("integrator '" + tableau.name() +
                      "' uses more than two derivatives; the spatial operators support r <= 2");
  const int s = tableau.stages();
  const int r = tableau.derivatives();
  const int m = state.m;

  // which stages feed an L (qt) or L-dot (dxg) term anywhere downstream
  std::vector<bool> need_qt(s, false), need_dxg(s, false);
  for (int j = 0; j < s; ++j) {
    if (tableau.bd(1, j) != 0.0) need_qt[j] = true;
    if (r > 1 && tableau.bd(2, j) != 0.0) need_dxg[j] = true;
    for (int i = j + 1; i < s; ++i) {
      if (tableau.ad(1, i, j) != 0.0) need_qt[j] = true;
      if (r > 1 && tableau.ad(2, i, j) != 0.0) need_dxg[j] = true;
    }
  }

  std::vector<FdArray> qt(s), dxg(s);
  auto contributions_for = [&](auto coeff1, auto coeff2, int upto) {
    std::vector<StageContribution> list;
    for (int j = 0; j < upto; ++j) {
      StageContribution k;
      k.alpha = coeff1(j);
      k.beta = r > 1 ? coeff2(j) : 0.0;
      if (k.alpha != 0.0) k.qt = &qt[j];
      if (k.beta != 0.0) k.dxg = &dxg[j];
      if (k.alpha != 0.0 || k.beta != 0.0) list.push_back(k);
    }
    return list;
  };

  for (int i = 0; i < s; ++i) {
    FdState yi = state;
    if (i > 0) {
      auto list = contributions_for([&](int j) { return tableau.ad(1, i, j); },
                                    [&](int j) { return tableau.ad(2, i, j); }, i);
      yi = weno_md_stage(state, list, dt);
      yi.t = state.t + tableau.cd(i) * dt;
    }
    if (need_qt[i] || need_dxg[i]) {
      FdRhs rhs = compute_qt(yi, model, params, bc);
      if (budget && tableau.bd(1, i) != 0.0)
        budget->add(m, tableau.bd(1, i) * dt, rhs.flux_left, rhs.flux_right);
      if (need_dxg[i]) {
        FdSecondDerivative sd = second_derivative_term(yi, rhs.qt, model, bc);
        dxg[i] = std::move(sd.dxg);
        if (budget && tableau.bd(2, i) != 0.0)
          budget->add_volume(m, -tableau.bd(2, i) * dt * dt, sd.boundary_sum);
      }
      qt[i] = std::move(rhs.qt);
    }
  }

  auto list = contributions_for([&](int j) { return tableau.bd(1, j); },
                                [&](int j) { return tableau.bd(2, j); }, s);
  FdState out = weno_md_stage(state, list, dt);
  out.t = state.t + dt;
  return out;
}

DgState advance(const DgState& state, const Tableau& tableau, const FluxModel& model,
                RiemannSolver solver, bool limiter, Bc bc, double dt) {
  if (tableau.derivatives() > 2)
    throw ConfigError("integrator '" + tableau.name() +
                      "' uses more than two derivatives; the spatial operators support r <= 2");
  const int s = tableau.stages();
  const int r = tableau.derivatives();

  if (r == 1) {
    // a single-derivative tableau is a plain Runge-Kutta method: evaluate
    // the classical RKDG operator at each stage state and combine
    std::vector<DgCoeffs> rhs(s);
    auto combine = [&](auto coeff_of) {
      DgState y = state;
      for (int j = 0; j < s; ++j) {
        const double w = coeff_of(j);
        if (w == 0.0) continue;
        const double scale = w * dt;
        for (int i = 0; i < state.mx; ++i)
          for (int k = 1; k <= state.order; ++k)
            for (int c = 0; c < state.m; ++c) y.Q(i, k, c) += scale * rhs[j](i, k, c);
      }
      return y;
    };
    DgState yi = state;
    for (int i = 0; i < s; ++i) {
      if (i > 0) {
        yi = combine([&](int j) { return j < i ? tableau.ad(1, i, j) : 0.0; });
        yi.t = state.t + tableau.cd(i) * dt;
        if (limiter) yi = moment_limiter(yi, bc);
      }
      const DgFluxCoeffs fc = procedure_1_1(yi, model, false);
      rhs[i] = dg_rhs(yi, fc.F, yi.Q, yi, solver, model, bc);
    }
    DgState out = combine([&](int j) { return tableau.bd(1, j); });
    out.t = state.t + dt;
    if (limiter) out = moment_limiter(out, bc);
    return out;
  }

  std::vector<bool> need_g(s, false);
  for (int j = 0; j < s; ++j) {
    if (tableau.bd(2, j) != 0.0) need_g[j] = true;
    for (int i = j + 1; i < s; ++i)
      if (tableau.ad(2, i, j) != 0.0) need_g[j] = true;
  }

  std::vector<DgFluxCoeffs> fc(s);
  std::vector<DgState> stages;  // stage 0 is the input state itself
  stages.reserve(s);
  // both the modified flux and the matching alpha-blended jump state for
  // the Riemann dissipation
  auto ftilde_for = [&](auto coeff1, auto coeff2, int upto) {
    std::vector<DgStageContribution> flux_list, jump_list;
    for (int j = 0; j < upto; ++j) {
      DgStageContribution k;
      k.alpha = coeff1(j);
      k.beta = coeff2(j);
      if (k.alpha != 0.0) k.F = &fc[j].F;
      if (k.beta != 0.0) k.G = &fc[j].G;
      if (k.alpha != 0.0 || k.beta != 0.0) flux_list.push_back(k);
      if (k.alpha != 0.0) jump_list.push_back({k.alpha, 0.0, &stages[j].Q, nullptr});
    }
    return std::pair(modified_flux(flux_list, dt, state.mx, state.order, state.m),
                     modified_flux(jump_list, dt, state.mx, state.order, state.m));
  };

  for (int i = 0; i < s; ++i) {
    if (i == 0) {
      stages.push_back(state);
    } else {
      const auto [ft, jump] = ftilde_for([&](int j) { return tableau.ad(1, i, j); },
                                         [&](int j) { return tableau.ad(2, i, j); }, i);
      DgState yi = dg_md_stage(state, ft, jump, stages.back(), dt, solver, model, bc);
      yi.t = state.t + tableau.cd(i) * dt;
      if (limiter) yi = moment_limiter(yi, bc);
      stages.push_back(std::move(yi));
    }
    fc[i] = procedure_1_1(stages[i], model, need_g[i]);
  }

  const auto [ft, jump] = ftilde_for([&](int j) { return tableau.bd(1, j); },
                                     [&](int j) { return tableau.bd(2, j); }, s);
  DgState out = dg_md_stage(state, ft, jump, stages.back(), dt, solver, model, bc);
  out.t = state.t + dt;
  if (limiter) out = moment_limiter(out, bc);
  return out;
}

}  // namespace mdrk
