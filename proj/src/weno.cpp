#include "mdrk/weno.hpp"

#include <cmath>
#include <stdexcept>

namespace mdrk {

namespace {

constexpr double kGamma[3] = {1.0 / 10.0, 3.0 / 5.0, 3.0 / 10.0};

// interior index for a ghost row under the given boundary condition
int wrap_index(int i, int mx, Bc bc) {
  if (bc == Bc::periodic) {
    int j = i % mx;
    return j < 0 ? j + mx : j;
  }
  return std::clamp(i, 0, mx - 1);
}

// copy interior values into a halo'd array and fill ghosts per bc
FdArray padded_copy(const FdState& state, int halo, Bc bc) {
  const int mx = state.grid.mx, m = state.m;
  FdArray out(mx, m, halo);
  for (int i = -halo; i < mx + halo; ++i) {
    const int j = wrap_index(i, mx, bc);
    for (int c = 0; c < m; ++c) out(i, c) = state.q(j, c);
  }
  return out;
}

void matvec(const double* A, std::span<const double> x, double* y, int m) {
  for (int r = 0; r < m; ++r) {
    double acc = 0.0;
    for (int c = 0; c < m; ++c) acc += A[r * m + c] * x[c];
    y[r] = acc;
  }
}

// the per-interface reconstruction with the component count fixed at
// compile time, so the projection loops fully unroll
template <int M>
void reconstruct_interfaces(const FdArray& q, const FdArray& f, const FluxModel& model,
                            const WenoParams& params, double alpha, int jlo, int jhi,
                            FdArray& fhat) {
  std::array<double, M> qmid;
  double w[6][M], g[6][M];
  double gp[6], gm[6], ghat[M];
  for (int j = jlo; j <= jhi; ++j) {
    for (int c = 0; c < M; ++c) qmid[c] = 0.5 * (q(j - 1, c) + q(j, c));
    const EigenSystem eig = model.eigensystem(std::span<const double>(qmid.data(), M));
    for (int r = -3; r <= 2; ++r) {
      const double* qq = q.row(j + r).data();
      const double* ff = f.row(j + r).data();
      for (int rr = 0; rr < M; ++rr) {
        double aq = 0.0, af = 0.0;
        for (int cc = 0; cc < M; ++cc) {
          aq += eig.Rinv[rr * M + cc] * qq[cc];
          af += eig.Rinv[rr * M + cc] * ff[cc];
        }
        w[r + 3][rr] = aq;
        g[r + 3][rr] = af;
      }
    }
    for (int c = 0; c < M; ++c) {
      for (int r = 0; r < 6; ++r) {
        gp[r] = 0.5 * (g[r][c] + alpha * w[r][c]);
        gm[r] = 0.5 * (g[r][c] - alpha * w[r][c]);
      }
      // one extra point on the upwind side of each split flux
      ghat[c] = weno5_plus(gp, params) + weno5_minus(gm + 1, params);
    }
    double* out = fhat.row(j).data();
    for (int rr = 0; rr < M; ++rr) {
      double acc = 0.0;
      for (int cc = 0; cc < M; ++cc) acc += eig.R[rr * M + cc] * ghat[cc];
      out[rr] = acc;
    }
  }
}

}  // namespace

FdState make_fd_state(const FdGrid& grid, int m) {
  FdState s;
  s.grid = grid;
  s.m = m;
  s.q = FdArray(grid.mx, m, 0);
  return s;
}

void smoothness_indicators(const double h[5], double beta[3]) {
  beta[0] = (13.0 / 12.0) * (h[0] - 2.0 * h[1] + h[2]) * (h[0] - 2.0 * h[1] + h[2]) +
            0.25 * (h[0] - 4.0 * h[1] + 3.0 * h[2]) * (h[0] - 4.0 * h[1] + 3.0 * h[2]);
  beta[1] = (13.0 / 12.0) * (h[1] - 2.0 * h[2] + h[3]) * (h[1] - 2.0 * h[2] + h[3]) +
            0.25 * (h[1] - h[3]) * (h[1] - h[3]);
  beta[2] = (13.0 / 12.0) * (h[2] - 2.0 * h[3] + h[4]) * (h[2] - 2.0 * h[3] + h[4]) +
            0.25 * (3.0 * h[2] - 4.0 * h[3] + h[4]) * (3.0 * h[2] - 4.0 * h[3] + h[4]);
}

void weno_weights(const double beta[3], const WenoParams& params, double omega[3]) {
  if (params.mode == WenoMode::linear) {
    omega[0] = kGamma[0];
    omega[1] = kGamma[1];
    omega[2] = kGamma[2];
    return;
  }
  double w[3];
  if (params.mode == WenoMode::z) {
    const double tau5 = std::abs(beta[2] - beta[0]);
    const bool square = params.power == 2.0;
    for (int k = 0; k < 3; ++k) {
      const double r = tau5 / (beta[k] + params.eps);
      const double boost = 1.0 + (square ? r * r : std::pow(r, params.power));
      w[k] = kGamma[k] * boost;
    }
  } else {  // classical Jiang-Shu
    for (int k = 0; k < 3; ++k) {
      const double d = beta[k] + params.eps;
      w[k] = kGamma[k] / (d * d);
    }
  }
  const double inv = 1.0 / (w[0] + w[1] + w[2]);
  omega[0] = w[0] * inv;
  omega[1] = w[1] * inv;
  omega[2] = w[2] * inv;
}

double weno5_plus(const double h[5], const WenoParams& params) {
  // candidate interface values of the three substencils
  const double q0 = (2.0 * h[0] - 7.0 * h[1] + 11.0 * h[2]) / 6.0;
  const double q1 = (-h[1] + 5.0 * h[2] + 2.0 * h[3]) / 6.0;
  const double q2 = (2.0 * h[2] + 5.0 * h[3] - h[4]) / 6.0;
  double beta[3], omega[3];
  smoothness_indicators(h, beta);
  weno_weights(beta, params, omega);
  return omega[0] * q0 + omega[1] * q1 + omega[2] * q2;
}

double weno5_minus(const double h[5], const WenoParams& params) {
  const double flipped[5] = {h[4], h[3], h[2], h[1], h[0]};
  return weno5_plus(flipped, params);
}

FdRhs compute_qt(const FdState& state, const FluxModel& model, const WenoParams& params, Bc bc) {
  const int mx = state.grid.mx, m = state.m;
  const double dx = state.grid.dx();
  constexpr int halo = FdGrid::ghost;

  const FdArray q = padded_copy(state, halo, bc);

  // pointwise fluxes over the full padded range
  FdArray f(mx, m, halo);
  for (int i = -halo; i < mx + halo; ++i) model.flux(q.row(i), f.row(i));

  // interface j sits at x_{j-1/2}, between rows j-1 and j; fluxes are
  // needed for qt rows [-2, mx+2), i.e. interfaces j in [-2, mx+3)
  const int jlo = -2, jhi = mx + 2;

  double alpha;
  if (params.alpha_override) {
    alpha = *params.alpha_override;
  } else {
    double speed = 0.0;
    std::array<double, kMaxComponents> qmid;
    for (int j = jlo; j <= jhi; ++j) {
      for (int c = 0; c < m; ++c) qmid[c] = 0.5 * (q(j - 1, c) + q(j, c));
      speed = std::max(speed, model.max_abs_speed(std::span<const double>(qmid.data(), m)));
    }
    alpha = params.inflation * speed;
  }

  FdArray fhat(mx + 1, m, 2);  // interface values, rows jlo..jhi
  switch (m) {
    case 1: reconstruct_interfaces<1>(q, f, model, params, alpha, jlo, jhi, fhat); break;
    case 2: reconstruct_interfaces<2>(q, f, model, params, alpha, jlo, jhi, fhat); break;
    default: reconstruct_interfaces<3>(q, f, model, params, alpha, jlo, jhi, fhat); break;
  }

  FdRhs rhs;
  rhs.alpha = alpha;
  rhs.qt = FdArray(mx, m, 2);
  const double inv_dx = 1.0 / dx;
  for (int i = -2; i < mx + 2; ++i)
    for (int c = 0; c < m; ++c) rhs.qt(i, c) = -(fhat(i + 1, c) - fhat(i, c)) * inv_dx;
  for (int c = 0; c < m; ++c) {
    rhs.flux_left[c] = fhat(0, c);
    rhs.flux_right[c] = fhat(mx, c);
  }
  return rhs;
}

FdSecondDerivative second_derivative_term(const FdState& state, const FdArray& qt,
                                          const FluxModel& model, Bc bc) {
  const int mx = state.grid.mx, m = state.m;
  const double dx = state.grid.dx();
  if (qt.halo() < 2) throw std::invalid_argument("second_derivative_term: qt needs a margin of 2");

  const FdArray q = padded_copy(state, 2, bc);

  // G_i = f'(q_i) qt_i on the interior plus margin
  FdArray G(mx, m, 2);
  std::array<double, kMaxComponents * kMaxComponents> J;
  for (int i = -2; i < mx + 2; ++i) {
    model.jacobian(q.row(i), std::span<double>(J.data(), m * m));
    matvec(J.data(), qt.row(i), G.row(i).data(), m);
  }

  FdSecondDerivative out;
  out.dxg = FdArray(mx, m, 0);
  const double scale = 1.0 / (12.0 * dx);
  for (int i = 0; i < mx; ++i)
    for (int c = 0; c < m; ++c)
      out.dxg(i, c) = scale * (G(i - 2, c) - 8.0 * G(i - 1, c) + 8.0 * G(i + 1, c) - G(i + 2, c));

  // telescoped sum_i dxg_i * dx; every interior G cancels
  for (int c = 0; c < m; ++c) {
    const double t = G(-2, c) - 7.0 * G(-1, c) - 7.0 * G(0, c) + G(1, c) -
                     G(mx - 2, c) + 7.0 * G(mx - 1, c) + 7.0 * G(mx, c) - G(mx + 1, c);
    out.boundary_sum[c] = t * (1.0 / 12.0);
  }
  return out;
}

FdState weno_md_stage(const FdState& qn, std::span<const StageContribution> contributions,
                      double dt) {
  const int mx = qn.grid.mx, m = qn.m;
  FdState out = qn;
  for (const auto& k : contributions) {
    if (k.alpha != 0.0) {
      if (!k.qt || k.qt->mx() != mx || k.qt->m() != m)
        throw std::invalid_argument("weno_md_stage: qt contribution shape mismatch");
      const double coeff = k.alpha * dt;
      for (int i = 0; i < mx; ++i)
        for (int c = 0; c < m; ++c) out.q(i, c) += coeff * (*k.qt)(i, c);
    }
    if (k.beta != 0.0) {
      if (!k.dxg || k.dxg->mx() != mx || k.dxg->m() != m)
        throw std::invalid_argument("weno_md_stage: dxg contribution shape mismatch");
      const double coeff = (k.beta * dt) * dt;
      for (int i = 0; i < mx; ++i)
        for (int c = 0; c < m; ++c) out.q(i, c) -= coeff * (*k.dxg)(i, c);
    }
  }
  return out;
}

}  // namespace mdrk
