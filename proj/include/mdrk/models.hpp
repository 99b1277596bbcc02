#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace mdrk {

inline constexpr int kMaxComponents = 3;

// Eigendecomposition f'(q) = R diag(lambda) Rinv at a single state.
// Matrices are row-major with leading dimension m.
struct EigenSystem {
  int m = 1;
  std::array<double, kMaxComponents * kMaxComponents> R{};
  std::array<double, kMaxComponents * kMaxComponents> Rinv{};
  std::array<double, kMaxComponents> lambda{};
};

// A 1D hyperbolic system q_t + f(q)_x = 0: flux, Jacobian, and wave
// structure. Instances are immutable; evaluation is thread-safe.
class FluxModel {
public:
  virtual ~FluxModel() = default;

  virtual std::string_view name() const = 0;
  virtual int components() const = 0;

  virtual void flux(std::span<const double> q, std::span<double> out) const = 0;
  // row-major m x m
  virtual void jacobian(std::span<const double> q, std::span<double> out) const = 0;
  virtual void eigenvalues(std::span<const double> q, std::span<double> out) const = 0;
  virtual EigenSystem eigensystem(std::span<const double> q) const = 0;

  // throws StateError on vacuum/negative-pressure states
  virtual void check_admissible(std::span<const double> q) const {}

  double max_abs_speed(std::span<const double> q) const;

  // analytic bound on max |f'| over the whole admissible range, where one
  // exists (Buckley-Leverett exposes the constant used in place of the
  // per-step wave speed)
  virtual std::optional<double> global_speed_bound() const { return std::nullopt; }
};

class Advection final : public FluxModel {
public:
  std::string_view name() const override { return "advection"; }
  int components() const override { return 1; }
  void flux(std::span<const double> q, std::span<double> out) const override;
  void jacobian(std::span<const double> q, std::span<double> out) const override;
  void eigenvalues(std::span<const double> q, std::span<double> out) const override;
  EigenSystem eigensystem(std::span<const double> q) const override;
};

class BuckleyLeverett final : public FluxModel {
public:
  explicit BuckleyLeverett(double mobility_ratio = 1.0 / 3.0) : M_(mobility_ratio) {}
  std::string_view name() const override { return "buckley-leverett"; }
  int components() const override { return 1; }
  double mobility_ratio() const { return M_; }
  void flux(std::span<const double> q, std::span<double> out) const override;
  void jacobian(std::span<const double> q, std::span<double> out) const override;
  void eigenvalues(std::span<const double> q, std::span<double> out) const override;
  EigenSystem eigensystem(std::span<const double> q) const override;
  std::optional<double> global_speed_bound() const override;

private:
  double M_;
};

class ShallowWater final : public FluxModel {
public:
  explicit ShallowWater(double gravity = 1.0) : g_(gravity) {}
  std::string_view name() const override { return "shallow-water"; }
  int components() const override { return 2; }
  double gravity() const { return g_; }
  void flux(std::span<const double> q, std::span<double> out) const override;
  void jacobian(std::span<const double> q, std::span<double> out) const override;
  void eigenvalues(std::span<const double> q, std::span<double> out) const override;
  EigenSystem eigensystem(std::span<const double> q) const override;
  void check_admissible(std::span<const double> q) const override;

private:
  double g_;
};

class Euler final : public FluxModel {
public:
  explicit Euler(double gamma = 1.4) : gamma_(gamma) {}
  std::string_view name() const override { return "euler"; }
  int components() const override { return 3; }
  double gamma() const { return gamma_; }
  double pressure(std::span<const double> q) const;
  void flux(std::span<const double> q, std::span<double> out) const override;
  void jacobian(std::span<const double> q, std::span<double> out) const override;
  void eigenvalues(std::span<const double> q, std::span<double> out) const override;
  EigenSystem eigensystem(std::span<const double> q) const override;
  void check_admissible(std::span<const double> q) const override;

private:
  double gamma_;
};

// Model names double as CLI identifiers: advection, buckley-leverett,
// shallow-water, euler.
std::unique_ptr<FluxModel> make_model(std::string_view name);

}  // namespace mdrk
