#include "mdrk/tableau.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "mdrk/errors.hpp"

namespace mdrk {

namespace {

double lower(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

Rational rat(long long num, long long den = 1) { return Rational(num, den); }

}  // namespace

Tableau::Tableau(std::string name, int stages, int derivatives, int design_order,
                 std::vector<Rational> c, std::vector<std::vector<Rational>> a,
                 std::vector<std::vector<Rational>> b)
    : name_(std::move(name)),
      s_(stages),
      r_(derivatives),
      design_order_(design_order),
      c_(std::move(c)),
      a_(std::move(a)),
      b_(std::move(b)) {
  if (s_ < 1 || r_ < 1) throw std::invalid_argument("Tableau: s and r must be positive");
  if (static_cast<int>(c_.size()) != s_) throw std::invalid_argument("Tableau: bad c size");
  if (static_cast<int>(a_.size()) != r_ || static_cast<int>(b_.size()) != r_)
    throw std::invalid_argument("Tableau: need one a-matrix and b-vector per derivative");
  for (int m = 0; m < r_; ++m) {
    if (static_cast<int>(a_[m].size()) != s_ * s_ || static_cast<int>(b_[m].size()) != s_)
      throw std::invalid_argument("Tableau: bad coefficient block size");
  }
  Rational bsum(0);
  for (int i = 0; i < s_; ++i) bsum += b_[0][i];
  if (bsum != Rational(1)) throw std::invalid_argument("Tableau: sum of b^(1) must be 1");

  cd_.resize(s_);
  for (int i = 0; i < s_; ++i) cd_[i] = lower(c_[i]);
  ad_.resize(r_);
  bd_.resize(r_);
  for (int m = 0; m < r_; ++m) {
    ad_[m].resize(s_ * s_);
    bd_[m].resize(s_);
    for (int k = 0; k < s_ * s_; ++k) ad_[m][k] = lower(a_[m][k]);
    for (int i = 0; i < s_; ++i) bd_[m][i] = lower(b_[m][i]);
  }
}

bool Tableau::is_explicit() const {
  for (int m = 1; m <= r_; ++m)
    for (int i = 0; i < s_; ++i)
      for (int j = i; j < s_; ++j)
        if (a(m, i, j) != Rational(0)) return false;
  return true;
}

Tableau make_tableau(std::string_view name) {
  const Rational zero(0);
  if (name == "tdrk4") {
    // unique two-stage fourth-order two-derivative scheme
    std::vector<Rational> a1 = {zero, zero, rat(1, 2), zero};
    std::vector<Rational> a2 = {zero, zero, rat(1, 8), zero};
    return Tableau("tdrk4", 2, 2, 4, {zero, rat(1, 2)}, {a1, a2},
                   {{rat(1), zero}, {rat(1, 6), rat(1, 3)}});
  }
  if (name == "tdrk3") {
    std::vector<Rational> a1 = {zero, zero, rat(1), zero};
    std::vector<Rational> a2 = {zero, zero, rat(1, 2), zero};
    return Tableau("tdrk3", 2, 2, 3, {zero, rat(1)}, {a1, a2},
                   {{rat(2, 3), rat(1, 3)}, {rat(1, 6), zero}});
  }
  if (name == "tdrk5") {
    std::vector<Rational> a1 = {zero, zero, zero,       //
                                rat(2, 5), zero, zero,  //
                                rat(1), zero, zero};
    std::vector<Rational> a2 = {zero, zero, zero,        //
                                rat(2, 25), zero, zero,  //
                                rat(-1, 4), rat(3, 4), zero};
    return Tableau("tdrk5", 3, 2, 5, {zero, rat(2, 5), rat(1)}, {a1, a2},
                   {{rat(1), zero, zero}, {rat(1, 8), rat(25, 72), rat(1, 36)}});
  }
  if (name == "rk4") {
    std::vector<Rational> a1 = {zero, zero, zero, zero,       //
                                rat(1, 2), zero, zero, zero,  //
                                zero, rat(1, 2), zero, zero,  //
                                zero, zero, rat(1), zero};
    return Tableau("rk4", 4, 1, 4, {zero, rat(1, 2), rat(1, 2), rat(1)}, {a1},
                   {{rat(1, 6), rat(1, 3), rat(1, 3), rat(1, 6)}});
  }
  if (name == "ssprk3") {
    std::vector<Rational> a1 = {zero, zero, zero,    //
                                rat(1), zero, zero,  //
                                rat(1, 4), rat(1, 4), zero};
    return Tableau("ssprk3", 3, 1, 3, {zero, rat(1), rat(1, 2)}, {a1},
                   {{rat(1, 6), rat(1, 6), rat(2, 3)}});
  }
  if (name == "taylor2") {
    return Tableau("taylor2", 1, 2, 2, {zero}, {{zero}, {zero}},
                   {{rat(1)}, {rat(1, 2)}});
  }
  throw ConfigError("unknown integrator '" + std::string(name) +
                    "' (expected one of tdrk3, tdrk4, tdrk5, rk4, ssprk3, taylor2)");
}

const std::vector<std::string>& tableau_names() {
  static const std::vector<std::string> names = {"tdrk3", "tdrk4", "tdrk5",
                                                 "rk4",   "ssprk3", "taylor2"};
  return names;
}

namespace {

// polynomials in z over the rationals, index = power
using Poly = std::vector<Rational>;

Poly shift(const Poly& p, int m) {
  Poly out(p.size() + m, Rational(0));
  for (size_t k = 0; k < p.size(); ++k) out[k + m] = p[k];
  return out;
}

void axpy(Poly& acc, const Rational& coeff, const Poly& p) {
  if (acc.size() < p.size()) acc.resize(p.size(), Rational(0));
  for (size_t k = 0; k < p.size(); ++k) acc[k] += coeff * p[k];
}

}  // namespace

std::vector<Rational> amplification_polynomial(const Tableau& t) {
  const int s = t.stages(), r = t.derivatives();
  // stage polynomials P_i with y^(i) = P_i(z) y_n; L^(m-1) applied to a
  // stage multiplies its polynomial by z^m
  std::vector<Poly> stage(s);
  for (int i = 0; i < s; ++i) {
    Poly p = {Rational(1)};
    for (int m = 1; m <= r; ++m)
      for (int j = 0; j < i; ++j)
        if (t.a(m, i, j) != Rational(0)) axpy(p, t.a(m, i, j), shift(stage[j], m));
    stage[i] = std::move(p);
  }
  Poly result = {Rational(1)};
  for (int m = 1; m <= r; ++m)
    for (int i = 0; i < s; ++i)
      if (t.b(m, i) != Rational(0)) axpy(result, t.b(m, i), shift(stage[i], m));
  return result;
}

double max_imaginary_extent(const Tableau& t, double tol) {
  const auto poly = amplification_polynomial(t);
  std::vector<double> p(poly.size());
  for (size_t k = 0; k < poly.size(); ++k)
    p[k] = static_cast<double>(poly[k].numerator()) / static_cast<double>(poly[k].denominator());

  auto grows = [&](double y) {
    std::complex<double> z(0.0, y), acc(0.0, 0.0);
    for (size_t k = p.size(); k-- > 0;) acc = acc * z + p[k];
    return std::abs(acc) > 1.0 + tol;
  };

  const double step = 1e-3, cap = 10.0;
  double lo = 0.0;
  double hi = step;
  while (hi <= cap && !grows(hi)) {
    lo = hi;
    hi += step;
  }
  if (hi > cap) return cap;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (grows(mid) ? hi : lo) = mid;
  }
  return lo;
}

std::vector<double> ode_step(
    const Tableau& t, const std::vector<double>& y, double dt,
    const std::vector<std::function<std::vector<double>(const std::vector<double>&)>>& derivs) {
  const int s = t.stages(), r = t.derivatives();
  const size_t n = y.size();
  if (static_cast<int>(derivs.size()) < r)
    throw std::invalid_argument("ode_step: need one callable per derivative");

  // L^(m-1) evaluated at each stage; computed on demand
  std::vector<std::vector<std::vector<double>>> d(s, std::vector<std::vector<double>>(r));
  auto assemble = [&](auto coeff_of) {
    std::vector<double> out = y;
    double dtm = 1.0;
    for (int m = 1; m <= r; ++m) {
      dtm *= dt;
      for (int j = 0; j < s; ++j) {
        double w = coeff_of(m, j);
        if (w == 0.0) continue;
        double scale = w * dtm;
        for (size_t k = 0; k < n; ++k) out[k] += scale * d[j][m - 1][k];
      }
    }
    return out;
  };

  for (int i = 0; i < s; ++i) {
    std::vector<double> yi =
        assemble([&](int m, int j) { return j < i ? t.ad(m, i, j) : 0.0; });
    for (int m = 0; m < r; ++m) d[i][m] = derivs[m](yi);
  }
  return assemble([&](int m, int j) { return t.bd(m, j); });
}

}  // namespace mdrk
