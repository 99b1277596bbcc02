#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mdrk/models.hpp"

namespace mdrk {

enum class Bc { periodic, outflow };

enum class WenoMode { z, js, linear };

struct WenoParams {
  WenoMode mode = WenoMode::z;
  double power = 2.0;     // p in the WENO-Z boost factor
  double eps = 1e-12;     // regularizer
  double inflation = 1.1; // global wave speed safety factor
  // fixed global alpha (Buckley-Leverett runs use the analytic bound in
  // place of the per-stage interface maximum)
  std::optional<double> alpha_override;

  bool operator==(const WenoParams&) const = default;
};

// Uniform grid of mx cells on [a,b] with x_i = a + (i+1/2)dx, i = 0..mx-1.
// Reconstruction at the outermost needed interface reaches 5 points past
// the interior, hence the ghost width.
struct FdGrid {
  double a = 0.0, b = 1.0;
  int mx = 0;
  static constexpr int ghost = 5;
  double dx() const { return (b - a) / mx; }
  double x(int i) const { return a + (i + 0.5) * dx(); }
};

// mx x m array with `halo` extra rows per side; row index runs over
// [-halo, mx+halo).
class FdArray {
public:
  FdArray() = default;
  FdArray(int mx, int m, int halo)
      : mx_(mx), m_(m), halo_(halo), data_((mx + 2 * halo) * m, 0.0) {}

  int mx() const { return mx_; }
  int m() const { return m_; }
  int halo() const { return halo_; }

  double& operator()(int i, int c) { return data_[(i + halo_) * m_ + c]; }
  double operator()(int i, int c) const { return data_[(i + halo_) * m_ + c]; }

  std::span<double> row(int i) { return {data_.data() + (i + halo_) * m_, static_cast<size_t>(m_)}; }
  std::span<const double> row(int i) const {
    return {data_.data() + (i + halo_) * m_, static_cast<size_t>(m_)};
  }

private:
  int mx_ = 0, m_ = 0, halo_ = 0;
  std::vector<double> data_;
};

// Point values on the interior of the grid.
struct FdState {
  FdGrid grid;
  int m = 1;
  FdArray q;  // halo 0; interior rows only
  double t = 0.0;
};

FdState make_fd_state(const FdGrid& grid, int m);

// Jiang-Shu smoothness indicators of the three candidate substencils.
void smoothness_indicators(const double hbar[5], double beta[3]);

// Nonlinear weights from the indicators; always nonnegative and summing
// to one. Linear weights are (1/10, 3/5, 3/10).
void weno_weights(const double beta[3], const WenoParams& params, double omega[3]);

// Fifth-order interface value biased left (plus) or right (minus) of
// x_{i+1/2}; minus is the plus rule on the reflected stencil.
double weno5_plus(const double hbar[5], const WenoParams& params);
double weno5_minus(const double hbar[5], const WenoParams& params);

// Right-hand side -f(q)_x of the MOL form, evaluated on the interior plus
// a margin of two rows (the centered second-derivative stencil needs it).
// Also carries the reconstructed flux at the two domain-boundary
// interfaces and the global wave speed used for the splitting.
struct FdRhs {
  FdArray qt;  // halo 2
  std::array<double, kMaxComponents> flux_left{}, flux_right{};
  double alpha = 0.0;
};

FdRhs compute_qt(const FdState& state, const FluxModel& model, const WenoParams& params, Bc bc);

// D_x G with G_i = f'(q_i) qt_i, via the fourth-order centered difference.
// boundary_sum is the telescoped value of sum_i dxg_i * dx, used for mass
// budgets on outflow domains.
struct FdSecondDerivative {
  FdArray dxg;  // halo 0
  std::array<double, kMaxComponents> boundary_sum{};
};

FdSecondDerivative second_derivative_term(const FdState& state, const FdArray& qt,
                                          const FluxModel& model, Bc bc);

// One stage/update of a two-derivative scheme:
//   q_i = qn_i + sum_k (alpha_k dt qt_k,i - beta_k dt^2 dxg_k,i).
// Contributions are applied in order with scalar coefficients formed as
// (alpha*dt) and ((beta*dt)*dt); the transcription oracles in the test
// suite rely on this exact operation order.
struct StageContribution {
  double alpha = 0.0, beta = 0.0;
  const FdArray* qt = nullptr;   // may be null when alpha == 0
  const FdArray* dxg = nullptr;  // may be null when beta == 0
};

FdState weno_md_stage(const FdState& qn, std::span<const StageContribution> contributions,
                      double dt);

}  // namespace mdrk
