#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "mdrk/errors.hpp"
#include "mdrk/models.hpp"

using namespace mdrk;

namespace {

// draw a random admissible state for the given model
std::vector<double> random_state(const FluxModel& model, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::string_view name = model.name();
  if (name == "advection") return {10.0 * unit(rng) - 5.0};
  if (name == "buckley-leverett") return {unit(rng)};
  if (name == "shallow-water") {
    const double h = 0.1 + 4.9 * unit(rng);
    const double u = 6.0 * unit(rng) - 3.0;
    return {h, h * u};
  }
  const double rho = 0.1 + 4.9 * unit(rng);
  const double u = 6.0 * unit(rng) - 3.0;
  const double p = 0.1 + 9.9 * unit(rng);
  return {rho, rho * u, p / 0.4 + 0.5 * rho * u * u};
}

std::vector<double> numerical_jacobian(const FluxModel& model, const std::vector<double>& q,
                                       double step = 1e-6) {
  const int m = model.components();
  std::vector<double> J(m * m), fp(m), fm(m), qp(q), qm(q);
  for (int c = 0; c < m; ++c) {
    qp[c] = q[c] + step;
    qm[c] = q[c] - step;
    model.flux(qp, fp);
    model.flux(qm, fm);
    for (int r = 0; r < m; ++r) J[r * m + c] = (fp[r] - fm[r]) / (2.0 * step);
    qp[c] = q[c];
    qm[c] = q[c];
  }
  return J;
}

double max_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

TEST_CASE("flux closed forms") {
  std::vector<double> out(3);
  make_model("advection")->flux(std::vector<double>{2.0}, out);
  CHECK(out[0] == 2.0);

  make_model("buckley-leverett")->flux(std::vector<double>{0.5}, out);
  CHECK(out[0] == doctest::Approx(0.75).epsilon(1e-14));

  make_model("shallow-water")->flux(std::vector<double>{3.0, 0.0}, out);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == doctest::Approx(4.5).epsilon(1e-14));

  const Euler euler;
  const std::vector<double> q = {1.0, 0.0, 2.5};
  CHECK(euler.pressure(q) == doctest::Approx(1.0).epsilon(1e-14));
  euler.flux(q, out);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(out[2] == 0.0);
}

TEST_CASE("jacobian closed forms and endpoints") {
  std::vector<double> J(1);
  make_model("advection")->jacobian(std::vector<double>{-3.7}, J);
  CHECK(J[0] == 1.0);
  const auto bl = make_model("buckley-leverett");
  bl->jacobian(std::vector<double>{0.0}, J);
  CHECK(J[0] == 0.0);
  bl->jacobian(std::vector<double>{1.0}, J);
  CHECK(J[0] == 0.0);
}

TEST_CASE("jacobians match central finite differences of the flux") {
  std::mt19937 rng(11);
  for (const char* name : {"advection", "buckley-leverett", "shallow-water", "euler"}) {
    const auto model = make_model(name);
    const int m = model->components();
    CAPTURE(name);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto q = random_state(*model, rng);
      std::vector<double> J(m * m);
      model->jacobian(q, J);
      const auto Jfd = numerical_jacobian(*model, q);
      const double scale = std::max(1.0, max_abs(J));
      for (int k = 0; k < m * m; ++k)
        CHECK(std::abs(J[k] - Jfd[k]) / scale < 1e-6);
    }
  }
}

TEST_CASE("eigensystem reconstruction invariants") {
  std::mt19937 rng(13);
  for (const char* name : {"advection", "buckley-leverett", "shallow-water", "euler"}) {
    const auto model = make_model(name);
    const int m = model->components();
    CAPTURE(name);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto q = random_state(*model, rng);
      const EigenSystem e = model->eigensystem(q);
      std::vector<double> J(m * m);
      model->jacobian(q, J);
      const double scale = std::max(1.0, max_abs(J));
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
          double id = 0.0, rec = 0.0;
          for (int k = 0; k < m; ++k) {
            id += e.R[r * m + k] * e.Rinv[k * m + c];
            rec += e.R[r * m + k] * e.lambda[k] * e.Rinv[k * m + c];
          }
          CHECK(std::abs(id - (r == c ? 1.0 : 0.0)) < 1e-12);
          CHECK(std::abs(rec - J[r * m + c]) / scale < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("closed-form eigenvalues") {
  const auto sw = make_model("shallow-water");
  EigenSystem e = sw->eigensystem(std::vector<double>{1.0, 0.0});
  CHECK(e.lambda[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.lambda[1] == doctest::Approx(1.0).epsilon(1e-14));

  const auto euler = make_model("euler");
  e = euler->eigensystem(std::vector<double>{1.0, 0.0, 2.5});
  const double c = std::sqrt(1.4);
  CHECK(e.lambda[0] == doctest::Approx(-c).epsilon(1e-14));
  CHECK(e.lambda[1] == doctest::Approx(0.0));
  CHECK(e.lambda[2] == doctest::Approx(c).epsilon(1e-14));

  e = make_model("advection")->eigensystem(std::vector<double>{7.0});
  CHECK(e.R[0] == 1.0);
  CHECK(e.lambda[0] == 1.0);
}

TEST_CASE("max wave speeds") {
  CHECK(make_model("advection")->max_abs_speed(std::vector<double>{0.3}) == 1.0);
  CHECK(make_model("shallow-water")->max_abs_speed(std::vector<double>{3.0, 0.0}) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  const BuckleyLeverett bl;
  REQUIRE(bl.global_speed_bound().has_value());
  CHECK(*bl.global_speed_bound() == doctest::Approx(2.205737062).epsilon(1e-9));
  // sampled speeds never exceed the analytic bound (the published constant
  // is truncated after nine digits, hence the slack)
  double sampled = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double q = i / 100000.0;
    sampled = std::max(sampled, bl.max_abs_speed(std::vector<double>{q}));
  }
  CHECK(sampled <= *bl.global_speed_bound() + 1e-8);
  CHECK(sampled == doctest::Approx(*bl.global_speed_bound()).epsilon(1e-8));
}

TEST_CASE("buckley-leverett flux is monotone nondecreasing on [0,1]") {
  const auto bl = make_model("buckley-leverett");
  std::vector<double> J(1);
  for (int i = 0; i <= 10000; ++i) {
    bl->jacobian(std::vector<double>{i / 10000.0}, J);
    CHECK(J[0] >= 0.0);
  }
}

TEST_CASE("inadmissible states fail loudly with the offending component") {
  std::vector<double> out(3);
  const auto sw = make_model("shallow-water");
  CHECK_THROWS_AS(sw->flux(std::vector<double>{-1.0, 0.0}, out), StateError);
  try {
    sw->flux(std::vector<double>{0.0, 1.0}, out);
    FAIL("expected StateError");
  } catch (const StateError& e) {
    CHECK(e.component() == "h");
    CHECK(e.value() == 0.0);
  }

  const auto euler = make_model("euler");
  CHECK_THROWS_AS(euler->eigensystem(std::vector<double>{1.0, 0.0, -1.0}), StateError);
  try {
    euler->flux(std::vector<double>{1.0, 10.0, 1.0}, out);  // p < 0
    FAIL("expected StateError");
  } catch (const StateError& e) {
    CHECK(e.component() == "p");
  }
}
