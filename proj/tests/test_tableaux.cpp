#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mdrk/errors.hpp"
#include "mdrk/tableau.hpp"

using namespace mdrk;

namespace {
Rational rat(long long n, long long d = 1) { return Rational(n, d); }

std::vector<Rational> taylor_coeffs(int order) {
  std::vector<Rational> c = {rat(1)};
  Rational fact(1);
  for (int k = 1; k <= order; ++k) {
    fact *= rat(k);
    c.push_back(rat(1) / fact);
  }
  return c;
}
}  // namespace

TEST_CASE("named tableaux carry the published coefficients") {
  const Tableau t4 = make_tableau("tdrk4");
  CHECK(t4.stages() == 2);
  CHECK(t4.derivatives() == 2);
  CHECK(t4.a(1, 1, 0) == rat(1, 2));
  CHECK(t4.a(2, 1, 0) == rat(1, 8));
  CHECK(t4.b(1, 0) == rat(1));
  CHECK(t4.b(1, 1) == rat(0));
  CHECK(t4.b(2, 0) == rat(1, 6));
  CHECK(t4.b(2, 1) == rat(1, 3));

  const Tableau t3 = make_tableau("tdrk3");
  CHECK(t3.stages() == 2);
  CHECK(t3.a(1, 1, 0) == rat(1));
  CHECK(t3.a(2, 1, 0) == rat(1, 2));
  CHECK(t3.b(1, 0) == rat(2, 3));
  CHECK(t3.b(1, 1) == rat(1, 3));
  CHECK(t3.b(2, 0) == rat(1, 6));
  CHECK(t3.b(2, 1) == rat(0));

  const Tableau t5 = make_tableau("tdrk5");
  CHECK(t5.stages() == 3);
  CHECK(t5.a(1, 1, 0) == rat(2, 5));
  CHECK(t5.a(2, 1, 0) == rat(2, 25));
  CHECK(t5.a(1, 2, 0) == rat(1));
  CHECK(t5.a(2, 2, 0) == rat(-1, 4));
  CHECK(t5.a(2, 2, 1) == rat(3, 4));
  CHECK(t5.b(1, 0) == rat(1));
  CHECK(t5.b(2, 0) == rat(1, 8));
  CHECK(t5.b(2, 1) == rat(25, 72));
  CHECK(t5.b(2, 2) == rat(1, 36));

  const Tableau taylor = make_tableau("taylor2");
  CHECK(taylor.stages() == 1);
  CHECK(taylor.b(1, 0) == rat(1));
  CHECK(taylor.b(2, 0) == rat(1, 2));
}

TEST_CASE("unknown scheme names are rejected with a message") {
  CHECK_THROWS_AS(make_tableau("rk5"), ConfigError);
  CHECK_THROWS_WITH_AS(make_tableau("nope"), doctest::Contains("unknown integrator"),
                       ConfigError);
}

TEST_CASE("every registered tableau is explicit and consistent") {
  for (const auto& name : tableau_names()) {
    const Tableau t = make_tableau(name);
    CAPTURE(name);
    CHECK(t.is_explicit());
    Rational bsum(0);
    for (int i = 0; i < t.stages(); ++i) bsum += t.b(1, i);
    CHECK(bsum == rat(1));
  }
}

TEST_CASE("amplification polynomials") {
  SUBCASE("tdrk4 matches the four-stage RK polynomial") {
    CHECK(amplification_polynomial(make_tableau("tdrk4")) == taylor_coeffs(4));
  }
  SUBCASE("rk4 matches the same polynomial") {
    CHECK(amplification_polynomial(make_tableau("rk4")) == taylor_coeffs(4));
  }
  SUBCASE("tdrk3 and ssprk3 match the three-stage RK polynomial") {
    CHECK(amplification_polynomial(make_tableau("tdrk3")) == taylor_coeffs(3));
    CHECK(amplification_polynomial(make_tableau("ssprk3")) == taylor_coeffs(3));
  }
  SUBCASE("taylor2 truncates the exponential") {
    CHECK(amplification_polynomial(make_tableau("taylor2")) == taylor_coeffs(2));
  }
  SUBCASE("tdrk5 has the published tail beyond 1/k!") {
    const auto p = amplification_polynomial(make_tableau("tdrk5"));
    REQUIRE(p.size() == 7);
    for (int k = 0; k <= 5; ++k) CHECK(p[k] == taylor_coeffs(5)[k]);
    CHECK(p[5] == rat(1, 120));
    CHECK(p[6] == rat(1, 600));
  }
}

TEST_CASE("amplification coefficients match 1/k! through the design order") {
  for (const auto& name : tableau_names()) {
    const Tableau t = make_tableau(name);
    const auto p = amplification_polynomial(t);
    CAPTURE(name);
    REQUIRE(static_cast<int>(p.size()) > t.design_order());
    const auto exact = taylor_coeffs(t.design_order());
    for (int k = 0; k <= t.design_order(); ++k) CHECK(p[k] == exact[k]);
  }
}

TEST_CASE("imaginary axis extents") {
  CHECK(max_imaginary_extent(make_tableau("tdrk4"), 1e-12) ==
        doctest::Approx(std::sqrt(8.0)).epsilon(1e-2));
  CHECK(max_imaginary_extent(make_tableau("rk4"), 1e-12) ==
        doctest::Approx(std::sqrt(8.0)).epsilon(1e-2));
  CHECK(max_imaginary_extent(make_tableau("tdrk3"), 1e-12) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-2));
  // |R(iy)|^2 = 1 + y^4/4 for the second-order Taylor method
  CHECK(max_imaginary_extent(make_tableau("taylor2"), 1e-12) < 1e-2);
}

TEST_CASE("generic stepper reproduces a dedicated classical RK4 update on scalar ODEs") {
  const Tableau t = make_tableau("rk4");
  auto L = [](const std::vector<double>& y) {
    return std::vector<double>{std::sin(y[0]) - 0.3 * y[0]};
  };
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double y0 = dist(rng), dt = 0.05 + 0.1 * std::abs(dist(rng));
    const auto got = ode_step(t, {y0}, dt, {L});

    const double k1 = L({y0})[0];
    const double k2 = L({y0 + (0.5 * dt) * k1})[0];
    const double k3 = L({y0 + (0.5 * dt) * k2})[0];
    const double k4 = L({y0 + (1.0 * dt) * k3})[0];
    const double expected =
        y0 + ((1.0 / 6.0) * dt) * k1 + ((1.0 / 3.0) * dt) * k2 + ((1.0 / 3.0) * dt) * k3 +
        ((1.0 / 6.0) * dt) * k4;
    CHECK(got[0] == expected);  // bit-for-bit
  }
}

TEST_CASE("two-derivative stepper hits design order on a scalar ODE") {
  // y' = y, y(0) = 1; second derivative of the solution is also y
  auto L = [](const std::vector<double>& y) { return y; };
  for (const char* name : {"tdrk3", "tdrk4", "tdrk5", "taylor2"}) {
    const Tableau t = make_tableau(name);
    CAPTURE(name);
    double err_coarse = 0.0;
    for (int level = 0; level < 2; ++level) {
      const int steps = level == 0 ? 20 : 40;
      const double dt = 1.0 / steps;
      std::vector<double> y = {1.0};
      for (int s = 0; s < steps; ++s) y = ode_step(t, y, dt, {L, L});
      const double err = std::abs(y[0] - std::exp(1.0));
      if (level == 0)
        err_coarse = err;
      else
        CHECK(std::log2(err_coarse / err) == doctest::Approx(t.design_order()).epsilon(0.08));
    }
  }
}
