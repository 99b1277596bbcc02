#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "mdrk/models.hpp"
#include "mdrk/weno.hpp"  // Bc

namespace mdrk {

enum class RiemannSolver { llf, hlle };

// mx cells x M modes x m components, row-major in that order.
class DgCoeffs {
public:
  DgCoeffs() = default;
  DgCoeffs(int mx, int order, int m)
      : mx_(mx), order_(order), m_(m), data_(static_cast<size_t>(mx) * order * m, 0.0) {}

  int mx() const { return mx_; }
  int order() const { return order_; }
  int m() const { return m_; }

  // k is the 1-based mode index
  double& operator()(int i, int k, int c) { return data_[(static_cast<size_t>(i) * order_ + (k - 1)) * m_ + c]; }
  double operator()(int i, int k, int c) const {
    return data_[(static_cast<size_t>(i) * order_ + (k - 1)) * m_ + c];
  }

  bool same_shape(const DgCoeffs& o) const {
    return mx_ == o.mx_ && order_ == o.order_ && m_ == o.m_;
  }

private:
  int mx_ = 0, order_ = 0, m_ = 0;
  std::vector<double> data_;
};

// Modal solution: per-cell coefficients of the orthonormal Legendre basis.
// The first coefficient of each cell is its cell average.
struct DgState {
  double a = 0.0, b = 1.0;
  int mx = 0;
  int order = 4;  // modes per cell (M)
  int m = 1;
  DgCoeffs Q;
  double t = 0.0;

  double dx() const { return (b - a) / mx; }
  double cell_center(int i) const { return a + (i + 0.5) * dx(); }
};

DgState make_dg_state(double a, double b, int mx, int order, int m);

// Orthonormal Legendre basis on [-1,1] under the (1/2) integral inner
// product: 1, sqrt(3) xi, ...; k is 1-based, valid through k = 4.
double legendre(int k, double xi);
double legendre_dxi(int k, double xi);
// phi^(k)(+-1) = (+-1)^(k-1) sqrt(2k-1)
double legendre_edge(int k, int side);

// L2 projection onto the first `order` basis functions with `order`-point
// Gauss quadrature.
std::vector<double> l2_project(const std::function<double(double)>& f, int order);

// Evaluate the expansion of cell i, component c at canonical xi.
double dg_eval(const DgCoeffs& Q, int i, int c, double xi);

// Interface trace of a coefficient expansion: side = +1 evaluates the cell
// at its right edge (the left state of interface i+1/2), side = -1 at its
// left edge.
void edge_values(const DgCoeffs& Q, int cell, int side, std::span<double> out);

// Galerkin coefficients of the flux f(q^h) and of g = f'(q^h) d_x f^h,
// both per cell, evaluated with `order`-point Gauss quadrature.
struct DgFluxCoeffs {
  DgCoeffs F, G;
};
DgFluxCoeffs procedure_1_1(const DgState& state, const FluxModel& model, bool need_g = true);

// F-tilde = sum_k (alpha_k F_k - dt beta_k G_k): the update
// q = qn - dt (F-tilde)_x then carries the second-derivative terms with
// the sign demanded by the Taylor expansion, so the tableau's coefficients
// plug in unchanged (as in the classical Lax-Wendroff flux).
struct DgStageContribution {
  double alpha = 0.0, beta = 0.0;
  const DgCoeffs* F = nullptr;
  const DgCoeffs* G = nullptr;
};
DgCoeffs modified_flux(std::span<const DgStageContribution> contributions, double dt, int mx,
                       int order, int m);

// HLL(E) bounding speeds from the eigenvalues at the left/right states and
// their arithmetic mean.
std::array<double, 2> hlle_speeds(std::span<const double> ql, std::span<const double> qr,
                                  const FluxModel& model);

void llf_flux(std::span<const double> ql, std::span<const double> qr, const FluxModel& model,
              std::span<double> out);
void hlle_flux(std::span<const double> ql, std::span<const double> qr, const FluxModel& model,
               std::span<double> out);

// Weak-form right-hand side of q_t = -(f-tilde)_x: interior integrals of
// the f-tilde expansion plus interface fluxes from the Riemann solver
// applied to its traces. The dissipation term pairs the modified flux with
// the matching combination of stage states: `jump_state` holds the
// alpha-blended coefficients whose traces feed the interface jump (so an
// all-zero combination has a zero right-hand side), while the wave speeds
// are measured on the physical `speed_state` (the most recent stage).
DgCoeffs dg_rhs(const DgState& geometry, const DgCoeffs& ftilde, const DgCoeffs& jump_state,
                const DgState& speed_state, RiemannSolver solver, const FluxModel& model,
                Bc bc);

// One stage/update q = qn + dt * dg_rhs(f-tilde).
DgState dg_md_stage(const DgState& qn, const DgCoeffs& ftilde, const DgCoeffs& jump_state,
                    const DgState& speed_state, double dt, RiemannSolver solver,
                    const FluxModel& model, Bc bc);

// Hierarchical moment limiter: minmod of each coefficient against scaled
// forward/backward differences of the next-lower moment, highest moment
// first, stopping at the first unchanged one. The sweep repeats until it
// stops changing the state, so the operation is idempotent. Cell averages
// are never modified.
DgState moment_limiter(const DgState& state, Bc bc);

}  // namespace mdrk
