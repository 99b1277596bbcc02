#include "mdrk/dg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mdrk/errors.hpp"
#include "mdrk/quadrature.hpp"

namespace mdrk {

namespace {

int wrap_cell(int i, int mx, Bc bc) {
  if (bc == Bc::periodic) {
    int j = i % mx;
    return j < 0 ? j + mx : j;
  }
  return std::clamp(i, 0, mx - 1);
}

double minmod3(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

}  // namespace

DgState make_dg_state(double a, double b, int mx, int order, int m) {
  DgState s;
  s.a = a;
  s.b = b;
  s.mx = mx;
  s.order = order;
  s.m = m;
  s.Q = DgCoeffs(mx, order, m);
  return s;
}

double legendre(int k, double xi) {
  switch (k) {
    case 1: return 1.0;
    case 2: return std::sqrt(3.0) * xi;
    case 3: return 0.5 * std::sqrt(5.0) * (3.0 * xi * xi - 1.0);
    case 4: return 0.5 * std::sqrt(7.0) * (5.0 * xi * xi * xi - 3.0 * xi);
    default: throw std::invalid_argument("legendre: mode index out of range (1..4)");
  }
}

double legendre_dxi(int k, double xi) {
  switch (k) {
    case 1: return 0.0;
    case 2: return std::sqrt(3.0);
    case 3: return 3.0 * std::sqrt(5.0) * xi;
    case 4: return 0.5 * std::sqrt(7.0) * (15.0 * xi * xi - 3.0);
    default: throw std::invalid_argument("legendre_dxi: mode index out of range (1..4)");
  }
}

double legendre_edge(int k, int side) {
  const double mag = std::sqrt(2.0 * k - 1.0);
  return side > 0 ? mag : (k % 2 == 1 ? mag : -mag);
}

std::vector<double> l2_project(const std::function<double(double)>& f, int order) {
  const auto& rule = gauss_legendre(order);
  std::vector<double> coeff(order, 0.0);
  for (int q = 0; q < order; ++q) {
    const double fx = f(rule.nodes[q]);
    for (int k = 1; k <= order; ++k)
      coeff[k - 1] += 0.5 * rule.weights[q] * fx * legendre(k, rule.nodes[q]);
  }
  return coeff;
}

double dg_eval(const DgCoeffs& Q, int i, int c, double xi) {
  double acc = 0.0;
  for (int k = 1; k <= Q.order(); ++k) acc += Q(i, k, c) * legendre(k, xi);
  return acc;
}

void edge_values(const DgCoeffs& Q, int cell, int side, std::span<double> out) {
  for (int c = 0; c < Q.m(); ++c) {
    double acc = 0.0;
    for (int k = 1; k <= Q.order(); ++k) acc += Q(cell, k, c) * legendre_edge(k, side);
    out[c] = acc;
  }
}

DgFluxCoeffs procedure_1_1(const DgState& state, const FluxModel& model, bool need_g) {
  const int mx = state.mx, M = state.order, m = state.m;
  const auto& rule = gauss_legendre(M);
  const double two_over_dx = 2.0 / state.dx();
  DgFluxCoeffs out;
  out.F = DgCoeffs(mx, M, m);
  if (need_g) out.G = DgCoeffs(mx, M, m);

  std::vector<double> qnode(m), dxf(m), gnode(m);
  std::vector<double> fvals(M * m), jvals(M * m * m);
  for (int i = 0; i < mx; ++i) {
    for (int q = 0; q < M; ++q) {
      const double xi = rule.nodes[q];
      for (int c = 0; c < m; ++c) qnode[c] = dg_eval(state.Q, i, c, xi);
      model.flux(qnode, std::span<double>(fvals.data() + q * m, m));
      if (need_g) model.jacobian(qnode, std::span<double>(jvals.data() + q * m * m, m * m));
    }
    for (int q = 0; q < M; ++q) {
      const double w = 0.5 * rule.weights[q];
      for (int k = 1; k <= M; ++k) {
        const double phi = legendre(k, rule.nodes[q]);
        for (int c = 0; c < m; ++c) out.F(i, k, c) += w * fvals[q * m + c] * phi;
      }
    }
    if (!need_g) continue;
    for (int q = 0; q < M; ++q) {
      const double xi = rule.nodes[q];
      for (int c = 0; c < m; ++c) {
        double acc = 0.0;
        for (int k = 1; k <= M; ++k) acc += out.F(i, k, c) * legendre_dxi(k, xi);
        dxf[c] = acc * two_over_dx;
      }
      const double* J = jvals.data() + q * m * m;
      for (int r = 0; r < m; ++r) {
        double acc = 0.0;
        for (int c = 0; c < m; ++c) acc += J[r * m + c] * dxf[c];
        gnode[r] = acc;
      }
      const double w = 0.5 * rule.weights[q];
      for (int k = 1; k <= M; ++k) {
        const double phi = legendre(k, xi);
        for (int c = 0; c < m; ++c) out.G(i, k, c) += w * gnode[c] * phi;
      }
    }
  }
  return out;
}

DgCoeffs modified_flux(std::span<const DgStageContribution> contributions, double dt, int mx,
                       int order, int m) {
  DgCoeffs ft(mx, order, m);
  for (const auto& s : contributions) {
    if (s.alpha != 0.0) {
      if (!s.F || !s.F->same_shape(ft))
        throw std::invalid_argument("modified_flux: F contribution shape mismatch");
      for (int i = 0; i < mx; ++i)
        for (int k = 1; k <= order; ++k)
          for (int c = 0; c < m; ++c) ft(i, k, c) += s.alpha * (*s.F)(i, k, c);
    }
    if (s.beta != 0.0) {
      if (!s.G || !s.G->same_shape(ft))
        throw std::invalid_argument("modified_flux: G contribution shape mismatch");
      const double coeff = dt * s.beta;
      for (int i = 0; i < mx; ++i)
        for (int k = 1; k <= order; ++k)
          for (int c = 0; c < m; ++c) ft(i, k, c) -= coeff * (*s.G)(i, k, c);
    }
  }
  return ft;
}

std::array<double, 2> hlle_speeds(std::span<const double> ql, std::span<const double> qr,
                                  const FluxModel& model) {
  const int m = model.components();
  std::array<double, kMaxComponents> mid, lam;
  for (int c = 0; c < m; ++c) mid[c] = 0.5 * (ql[c] + qr[c]);
  std::span<double> lspan(lam.data(), m);

  model.eigenvalues(std::span<const double>(mid.data(), m), lspan);
  double s1 = *std::min_element(lam.begin(), lam.begin() + m);
  double s2 = *std::max_element(lam.begin(), lam.begin() + m);
  model.eigenvalues(ql, lspan);
  s1 = std::min(s1, *std::min_element(lam.begin(), lam.begin() + m));
  model.eigenvalues(qr, lspan);
  s2 = std::max(s2, *std::max_element(lam.begin(), lam.begin() + m));
  return {s1, s2};
}

namespace {

// the solver cores take flux values separately so the modified flux traces
// can stand in for f(ql), f(qr)
void llf_core(std::span<const double> fl, std::span<const double> fr,
              std::span<const double> ql, std::span<const double> qr, double s1, double s2,
              int m, std::span<double> out) {
  const double alpha = std::max(std::abs(s1), std::abs(s2));
  for (int c = 0; c < m; ++c) out[c] = 0.5 * ((fl[c] + fr[c]) - alpha * (qr[c] - ql[c]));
}

void hlle_core(std::span<const double> fl, std::span<const double> fr,
               std::span<const double> ql, std::span<const double> qr, double s1, double s2,
               int m, std::span<double> out) {
  if (s1 >= 0.0) {
    // also the consistent choice for the degenerate s1 = s2 = 0 case
    for (int c = 0; c < m; ++c) out[c] = fl[c];
  } else if (s2 <= 0.0) {
    for (int c = 0; c < m; ++c) out[c] = fr[c];
  } else {
    const double inv = 1.0 / (s2 - s1);
    for (int c = 0; c < m; ++c)
      out[c] = (s2 * fl[c] - s1 * fr[c] + s1 * s2 * (qr[c] - ql[c])) * inv;
  }
}

}  // namespace

void llf_flux(std::span<const double> ql, std::span<const double> qr, const FluxModel& model,
              std::span<double> out) {
  const int m = model.components();
  std::array<double, kMaxComponents> fl, fr;
  model.flux(ql, std::span<double>(fl.data(), m));
  model.flux(qr, std::span<double>(fr.data(), m));
  const auto [s1, s2] = hlle_speeds(ql, qr, model);
  llf_core(std::span<const double>(fl.data(), m), std::span<const double>(fr.data(), m), ql, qr,
           s1, s2, m, out);
}

void hlle_flux(std::span<const double> ql, std::span<const double> qr, const FluxModel& model,
               std::span<double> out) {
  const int m = model.components();
  std::array<double, kMaxComponents> fl, fr;
  model.flux(ql, std::span<double>(fl.data(), m));
  model.flux(qr, std::span<double>(fr.data(), m));
  const auto [s1, s2] = hlle_speeds(ql, qr, model);
  hlle_core(std::span<const double>(fl.data(), m), std::span<const double>(fr.data(), m), ql, qr,
            s1, s2, m, out);
}

DgCoeffs dg_rhs(const DgState& geometry, const DgCoeffs& ftilde, const DgCoeffs& jump_state,
                const DgState& speed_state, RiemannSolver solver, const FluxModel& model,
                Bc bc) {
  const int mx = geometry.mx, M = geometry.order, m = geometry.m;
  if (!ftilde.same_shape(geometry.Q) || !jump_state.same_shape(geometry.Q))
    throw std::invalid_argument("dg_rhs: modified flux shape mismatch");
  const double dx = geometry.dx();
  const auto& rule = gauss_legendre(M);

  // numerical fluxes at the mx+1 interfaces; interface j sits between
  // cells j-1 and j
  std::vector<double> fdown(static_cast<size_t>(mx + 1) * m);
  std::vector<double> fl(m), fr(m), ql(m), qr(m), sl(m), sr(m), fx(m);
  for (int j = 0; j <= mx; ++j) {
    const int left = wrap_cell(j - 1, mx, bc);
    const int right = wrap_cell(j, mx, bc);
    edge_values(ftilde, left, +1, fl);
    edge_values(ftilde, right, -1, fr);
    edge_values(jump_state, left, +1, ql);
    edge_values(jump_state, right, -1, qr);
    edge_values(speed_state.Q, left, +1, sl);
    edge_values(speed_state.Q, right, -1, sr);
    model.check_admissible(sl);
    model.check_admissible(sr);
    const auto [s1, s2] = hlle_speeds(sl, sr, model);
    std::span<double> out(fdown.data() + static_cast<size_t>(j) * m, m);
    if (solver == RiemannSolver::llf)
      llf_core(fl, fr, ql, qr, s1, s2, m, out);
    else
      hlle_core(fl, fr, ql, qr, s1, s2, m, out);
  }

  DgCoeffs rhs(mx, M, m);
  std::vector<double> ftnode(static_cast<size_t>(M) * m);
  for (int i = 0; i < mx; ++i) {
    for (int q = 0; q < M; ++q)
      for (int c = 0; c < m; ++c) ftnode[q * m + c] = dg_eval(ftilde, i, c, rule.nodes[q]);
    const double* fm = fdown.data() + static_cast<size_t>(i) * m;
    const double* fp = fdown.data() + static_cast<size_t>(i + 1) * m;
    for (int k = 1; k <= M; ++k) {
      // interior integral of the f-tilde expansion against phi^(k)_xi;
      // exact for these degrees at M Gauss points
      for (int c = 0; c < m; ++c) fx[c] = 0.0;
      for (int q = 0; q < M; ++q) {
        const double w = rule.weights[q] * legendre_dxi(k, rule.nodes[q]);
        for (int c = 0; c < m; ++c) fx[c] += w * ftnode[q * m + c];
      }
      const double ep = legendre_edge(k, +1), em = legendre_edge(k, -1);
      for (int c = 0; c < m; ++c)
        rhs(i, k, c) = fx[c] / dx - (ep * fp[c] - em * fm[c]) / dx;
    }
  }
  return rhs;
}

DgState dg_md_stage(const DgState& qn, const DgCoeffs& ftilde, const DgCoeffs& jump_state,
                    const DgState& speed_state, double dt, RiemannSolver solver,
                    const FluxModel& model, Bc bc) {
  const DgCoeffs rhs = dg_rhs(qn, ftilde, jump_state, speed_state, solver, model, bc);
  DgState next = qn;
  for (int i = 0; i < qn.mx; ++i)
    for (int k = 1; k <= qn.order; ++k)
      for (int c = 0; c < qn.m; ++c) next.Q(i, k, c) = qn.Q(i, k, c) + dt * rhs(i, k, c);
  return next;
}

DgState moment_limiter(const DgState& state, Bc bc) {
  const int mx = state.mx, M = state.order, m = state.m;
  DgState out = state;
  if (M < 2) return out;

  // outflow boundaries carry no two-sided neighbor information; the first
  // and last cell stay unlimited there
  const int lo = bc == Bc::outflow ? 1 : 0;
  const int hi = bc == Bc::outflow ? mx - 1 : mx;
  bool changed = true;
  while (changed) {
    changed = false;
    const DgCoeffs prev = out.Q;
    for (int i = lo; i < hi; ++i) {
      const int ip = wrap_cell(i + 1, mx, bc);
      const int im = wrap_cell(i - 1, mx, bc);
      for (int c = 0; c < m; ++c) {
        for (int k = M; k >= 2; --k) {
          const double theta = 1.0 / std::sqrt(4.0 * k - 2.0);
          const double fwd = theta * (prev(ip, k - 1, c) - prev(i, k - 1, c));
          const double bwd = theta * (prev(i, k - 1, c) - prev(im, k - 1, c));
          const double limited = minmod3(prev(i, k, c), fwd, bwd);
          if (limited == prev(i, k, c)) break;
          out.Q(i, k, c) = limited;
          changed = true;
        }
      }
    }
  }
  return out;
}

}  // namespace mdrk
