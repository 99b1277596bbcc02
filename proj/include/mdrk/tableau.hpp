#pragma once

#include <boost/rational.hpp>

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace mdrk {

using Rational = boost::rational<long long>;

// Butcher tableau of an explicit multiderivative Runge-Kutta scheme:
// s stages, r derivatives, coefficient matrices a^(m) and weights b^(m)
// for m = 1..r. Coefficients are exact rationals, lowered to doubles once
// at construction for the solver hot paths.
class Tableau {
public:
  Tableau(std::string name, int stages, int derivatives, int design_order,
          std::vector<Rational> c,
          std::vector<std::vector<Rational>> a,   // r matrices, row-major s*s
          std::vector<std::vector<Rational>> b);  // r vectors of length s

  const std::string& name() const { return name_; }
  int stages() const { return s_; }
  int derivatives() const { return r_; }
  int design_order() const { return design_order_; }

  Rational c(int i) const { return c_[i]; }
  Rational a(int m, int i, int j) const { return a_[m - 1][i * s_ + j]; }
  Rational b(int m, int i) const { return b_[m - 1][i]; }

  // lowered coefficients (index conventions as above, m in 1..r)
  double cd(int i) const { return cd_[i]; }
  double ad(int m, int i, int j) const { return ad_[m - 1][i * s_ + j]; }
  double bd(int m, int i) const { return bd_[m - 1][i]; }

  // a^(m)_ij = 0 for j >= i, every m
  bool is_explicit() const;

private:
  std::string name_;
  int s_, r_, design_order_;
  std::vector<Rational> c_;
  std::vector<std::vector<Rational>> a_, b_;
  std::vector<double> cd_;
  std::vector<std::vector<double>> ad_, bd_;
};

// Known schemes: tdrk3, tdrk4, tdrk5, rk4, ssprk3, taylor2.
// Throws ConfigError for anything else.
Tableau make_tableau(std::string_view name);

const std::vector<std::string>& tableau_names();

// Coefficients p_0..p_K of the amplification polynomial R(z), i.e. the
// growth factor the scheme applies to y' = lambda*y with z = lambda*dt.
// The m-th derivative of the right-hand side contributes z^m per unit
// coefficient, so the result is exact in rational arithmetic.
std::vector<Rational> amplification_polynomial(const Tableau& t);

// Largest y >= 0 with |R(iy')| <= 1 + tol for all y' in [0, y], located by
// marching with step 1e-3 and bisecting the first violating interval.
double max_imaginary_extent(const Tableau& t, double tol);

// Generic multiderivative step for small ODE systems: given callables for
// the m-th total derivative of the right-hand side (derivs[m-1], m = 1..r),
// advances y by dt per Definition of the scheme. Mainly used to validate
// tableaux against dedicated classical-RK updates.
std::vector<double> ode_step(
    const Tableau& t, const std::vector<double>& y, double dt,
    const std::vector<std::function<std::vector<double>(const std::vector<double>&)>>& derivs);

}  // namespace mdrk
