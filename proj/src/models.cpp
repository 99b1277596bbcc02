#include "mdrk/models.hpp"

#include <algorithm>
#include <cmath>

#include "mdrk/errors.hpp"

namespace mdrk {

namespace {
constexpr double kAdmissibleFloor = 1e-12;  // h, rho, p must stay above this
}

double FluxModel::max_abs_speed(std::span<const double> q) const {
  std::array<double, kMaxComponents> lam;
  eigenvalues(q, std::span<double>(lam.data(), components()));
  double s = 0.0;
  for (int p = 0; p < components(); ++p) s = std::max(s, std::abs(lam[p]));
  return s;
}

// ---------------------------------------------------------------- advection

void Advection::flux(std::span<const double> q, std::span<double> out) const { out[0] = q[0]; }

void Advection::jacobian(std::span<const double>, std::span<double> out) const { out[0] = 1.0; }

void Advection::eigenvalues(std::span<const double>, std::span<double> out) const { out[0] = 1.0; }

EigenSystem Advection::eigensystem(std::span<const double>) const {
  EigenSystem e;
  e.m = 1;
  e.R[0] = e.Rinv[0] = 1.0;
  e.lambda[0] = 1.0;
  return e;
}

// --------------------------------------------------------- Buckley-Leverett

void BuckleyLeverett::flux(std::span<const double> q, std::span<double> out) const {
  const double u = q[0], v = 1.0 - q[0];
  out[0] = u * u / (u * u + M_ * v * v);
}

void BuckleyLeverett::jacobian(std::span<const double> q, std::span<double> out) const {
  const double u = q[0], v = 1.0 - q[0];
  const double den = u * u + M_ * v * v;
  out[0] = 2.0 * M_ * u * v / (den * den);
}

void BuckleyLeverett::eigenvalues(std::span<const double> q, std::span<double> out) const {
  jacobian(q, out);
}

EigenSystem BuckleyLeverett::eigensystem(std::span<const double> q) const {
  EigenSystem e;
  e.m = 1;
  e.R[0] = e.Rinv[0] = 1.0;
  jacobian(q, std::span<double>(e.lambda.data(), 1));
  return e;
}

std::optional<double> BuckleyLeverett::global_speed_bound() const {
  // analytic max of f' over [0,1] for M = 1/3
  if (std::abs(M_ - 1.0 / 3.0) < 1e-14) return 2.205737062;
  return std::nullopt;
}

// ------------------------------------------------------------ shallow water

void ShallowWater::check_admissible(std::span<const double> q) const {
  if (!(q[0] >= kAdmissibleFloor))
    throw StateError("shallow-water: nonpositive depth h", "h", q[0]);
}

void ShallowWater::flux(std::span<const double> q, std::span<double> out) const {
  check_admissible(q);
  const double h = q[0], u = q[1] / q[0];
  out[0] = q[1];
  out[1] = q[1] * u + 0.5 * g_ * h * h;
}

void ShallowWater::jacobian(std::span<const double> q, std::span<double> out) const {
  check_admissible(q);
  const double h = q[0], u = q[1] / q[0];
  out[0] = 0.0;
  out[1] = 1.0;
  out[2] = g_ * h - u * u;
  out[3] = 2.0 * u;
}

void ShallowWater::eigenvalues(std::span<const double> q, std::span<double> out) const {
  check_admissible(q);
  const double u = q[1] / q[0], c = std::sqrt(g_ * q[0]);
  out[0] = u - c;
  out[1] = u + c;
}

EigenSystem ShallowWater::eigensystem(std::span<const double> q) const {
  check_admissible(q);
  const double u = q[1] / q[0], c = std::sqrt(g_ * q[0]);
  EigenSystem e;
  e.m = 2;
  e.lambda[0] = u - c;
  e.lambda[1] = u + c;
  // columns of R are the right eigenvectors (1, u -+ c)
  e.R[0] = 1.0;
  e.R[1] = 1.0;
  e.R[2] = u - c;
  e.R[3] = u + c;
  const double inv2c = 1.0 / (2.0 * c);
  e.Rinv[0] = (u + c) * inv2c;
  e.Rinv[1] = -inv2c;
  e.Rinv[2] = -(u - c) * inv2c;
  e.Rinv[3] = inv2c;
  return e;
}

// -------------------------------------------------------------------- Euler

double Euler::pressure(std::span<const double> q) const {
  return (gamma_ - 1.0) * (q[2] - 0.5 * q[1] * q[1] / q[0]);
}

void Euler::check_admissible(std::span<const double> q) const {
  if (!(q[0] >= kAdmissibleFloor))
    throw StateError("euler: nonpositive density rho", "rho", q[0]);
  const double p = pressure(q);
  if (!(p >= kAdmissibleFloor)) throw StateError("euler: nonpositive pressure p", "p", p);
}

void Euler::flux(std::span<const double> q, std::span<double> out) const {
  check_admissible(q);
  const double u = q[1] / q[0], p = pressure(q);
  out[0] = q[1];
  out[1] = q[1] * u + p;
  out[2] = (q[2] + p) * u;
}

void Euler::jacobian(std::span<const double> q, std::span<double> out) const {
  check_admissible(q);
  const double u = q[1] / q[0];
  const double p = pressure(q);
  const double H = (q[2] + p) / q[0];
  const double gm1 = gamma_ - 1.0;
  out[0] = 0.0;
  out[1] = 1.0;
  out[2] = 0.0;
  out[3] = 0.5 * (gamma_ - 3.0) * u * u;
  out[4] = (3.0 - gamma_) * u;
  out[5] = gm1;
  out[6] = 0.5 * gm1 * u * u * u - u * H;
  out[7] = H - gm1 * u * u;
  out[8] = gamma_ * u;
}

void Euler::eigenvalues(std::span<const double> q, std::span<double> out) const {
  check_admissible(q);
  const double u = q[1] / q[0];
  const double c = std::sqrt(gamma_ * pressure(q) / q[0]);
  out[0] = u - c;
  out[1] = u;
  out[2] = u + c;
}

EigenSystem Euler::eigensystem(std::span<const double> q) const {
  check_admissible(q);
  const double u = q[1] / q[0];
  const double p = pressure(q);
  const double c = std::sqrt(gamma_ * p / q[0]);
  const double H = (q[2] + p) / q[0];
  EigenSystem e;
  e.m = 3;
  e.lambda[0] = u - c;
  e.lambda[1] = u;
  e.lambda[2] = u + c;
  // right eigenvectors in the standard conservative-variable form
  e.R[0] = 1.0;
  e.R[1] = 1.0;
  e.R[2] = 1.0;
  e.R[3] = u - c;
  e.R[4] = u;
  e.R[5] = u + c;
  e.R[6] = H - u * c;
  e.R[7] = 0.5 * u * u;
  e.R[8] = H + u * c;
  const double b1 = (gamma_ - 1.0) / (c * c);
  const double b2 = 0.5 * b1 * u * u;
  e.Rinv[0] = 0.5 * (b2 + u / c);
  e.Rinv[1] = -0.5 * (b1 * u + 1.0 / c);
  e.Rinv[2] = 0.5 * b1;
  e.Rinv[3] = 1.0 - b2;
  e.Rinv[4] = b1 * u;
  e.Rinv[5] = -b1;
  e.Rinv[6] = 0.5 * (b2 - u / c);
  e.Rinv[7] = -0.5 * (b1 * u - 1.0 / c);
  e.Rinv[8] = 0.5 * b1;
  return e;
}

std::unique_ptr<FluxModel> make_model(std::string_view name) {
  if (name == "advection") return std::make_unique<Advection>();
  if (name == "buckley-leverett") return std::make_unique<BuckleyLeverett>();
  if (name == "shallow-water") return std::make_unique<ShallowWater>();
  if (name == "euler") return std::make_unique<Euler>();
  throw ConfigError("unknown model '" + std::string(name) +
                    "' (expected advection, buckley-leverett, shallow-water, euler)");
}

}  // namespace mdrk
