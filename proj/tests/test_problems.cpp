#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "mdrk/dg.hpp"
#include "mdrk/errors.hpp"
#include "mdrk/problems.hpp"

using namespace mdrk;

namespace {
double bl_flux(double q, double M) { return q * q / (q * q + M * (1.0 - q) * (1.0 - q)); }
double bl_speed(double q, double M) {
  const double den = q * q + M * (1.0 - q) * (1.0 - q);
  return 2.0 * M * q * (1.0 - q) / (den * den);
}
}  // namespace

TEST_CASE("problem setups carry the published data") {
  CHECK_THROWS_AS(make_problem("sod"), ConfigError);

  const ProblemSpec lax = make_problem("lax-shock-tube");
  std::vector<double> q(3);
  lax.ic(0.25, q);
  CHECK(q[0] == 0.445);
  CHECK(q[1] == 0.3111);
  CHECK(q[2] == 8.928);
  lax.ic(0.75, q);
  CHECK(q[0] == 0.5);
  CHECK(q[1] == 0.0);
  CHECK(q[2] == 1.4275);
  CHECK(lax.t_final == 0.16);
  CHECK(lax.bc == Bc::outflow);

  const ProblemSpec se = make_problem("shock-entropy");
  se.ic(1.3, q);
  // density perturbation amplitude 0.2 about 1, at rest and unit pressure
  CHECK(q[0] == doctest::Approx(1.0 + 0.2 * std::sin(6.5)).epsilon(1e-14));
  CHECK(q[1] == 0.0);
  CHECK(q[2] == doctest::Approx(2.5).epsilon(1e-14));
  se.ic(-4.5, q);
  CHECK(q[0] == doctest::Approx(3.857143).epsilon(1e-14));
  CHECK(q[1] == doctest::Approx(3.857143 * 2.629369).epsilon(1e-14));
  CHECK(se.t_final == 1.8);

  const ProblemSpec adv = make_problem("advection-smooth");
  CHECK(adv.t_final == 2.0);
  CHECK(adv.bc == Bc::periodic);
  CHECK(adv.cfl_weno == 0.9);
  REQUIRE(adv.exact);
  // a full period returns the initial data
  std::vector<double> q0(1), qt(1);
  for (double x : {-0.9, -0.3, 0.0, 0.55}) {
    adv.ic(x, q0);
    adv.exact(2.0, x, qt);
    CHECK(qt[0] == doctest::Approx(q0[0]).epsilon(1e-14));
  }

  const ProblemSpec bl = make_problem("buckley-leverett");
  CHECK(bl.t_final == 0.4);
  CHECK(bl.riemann == RiemannSolver::hlle);
  REQUIRE(bl.speed_bound.has_value());
  CHECK(*bl.speed_bound == doctest::Approx(2.205737062));

  const ProblemSpec dam = make_problem("dam-break");
  CHECK(dam.t_final == 0.2);
  dam.ic(0.25, q);
  CHECK(q[0] == 3.0);
  dam.ic(0.75, q);
  CHECK(q[0] == 1.0);
}

TEST_CASE("exact advection translates and wraps") {
  auto q0 = [](double x) { return std::sin(M_PI * x); };
  CHECK(exact_advection(q0, 0.0, 0.3) == q0(0.3));
  CHECK(exact_advection(q0, 2.0, 0.3) == doctest::Approx(q0(0.3)).epsilon(1e-14));
  CHECK(exact_advection(q0, 0.5, 0.0) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("buckley-leverett compound waves") {
  const double M = 1.0 / 3.0;

  SUBCASE("post-shock states from the tangency condition") {
    CHECK(std::abs(buckley_leverett_qstar_left(M) - 0.1339745962155613) < 1e-10);
    CHECK(std::abs(buckley_leverett_qstar_right(M) - 0.5) < 1e-10);
  }

  SUBCASE("rankine-hugoniot residual vanishes at both shocks") {
    const double ql = buckley_leverett_qstar_left(M);
    CHECK(std::abs(bl_speed(ql, M) * (ql - 1.0) - (bl_flux(ql, M) - 1.0)) < 1e-10);
    const double qr = buckley_leverett_qstar_right(M);
    CHECK(std::abs(bl_speed(qr, M) * qr - bl_flux(qr, M)) < 1e-10);
  }

  SUBCASE("far field is undisturbed at t = 0.4") {
    CHECK(exact_buckley_leverett(0.4, -0.99, M) == 0.0);
    CHECK(exact_buckley_leverett(0.4, 0.99, M) == 0.0);
  }

  SUBCASE("solution is continuous across the fan edges") {
    const double t = 0.4;
    const double ql = buckley_leverett_qstar_left(M);
    const double sl = bl_speed(ql, M);
    // left fan tail at x = -0.5, head just before the attached shock
    CHECK(std::abs(exact_buckley_leverett(t, -0.5 + 1e-13, M)) < 1e-10);
    CHECK(std::abs(exact_buckley_leverett(t, -0.5 + t * sl * (1.0 - 1e-13), M) - ql) < 1e-6);
    // right fan tail at x = 0 continues the plateau value 1
    CHECK(std::abs(exact_buckley_leverett(t, t * 1e-13, M) - 1.0) < 1e-6);
    // and jumps from q* = 0.5 to 0 across the right shock at x = 1.5 t
    const double qr = buckley_leverett_qstar_right(M);
    CHECK(std::abs(exact_buckley_leverett(t, 1.5 * t * (1.0 - 1e-13), M) - qr) < 1e-6);
    CHECK(exact_buckley_leverett(t, 1.5 * t + 1e-12, M) == 0.0);
  }

  SUBCASE("the two waves have not interacted by t = 0.4") {
    const double sl = bl_speed(buckley_leverett_qstar_left(M), M);
    CHECK(-0.5 + 0.4 * sl < 0.0);
  }
}

TEST_CASE("dam break exact solution") {
  SUBCASE("middle state for (3, 1) at g = 1") {
    const DamBreakSolution sol = solve_dam_break(3.0, 1.0, 1.0);
    CHECK(std::abs(sol.h_middle - 1.8485766030967572) < 1e-10);
    CHECK(std::abs(sol.u_middle - 0.7448542169801267) < 1e-10);
    CHECK(std::abs(sol.shock_speed - 1.6226231941848827) < 1e-10);
  }

  SUBCASE("shock jump conditions and rarefaction invariant hold") {
    const double g = 1.0, hl = 3.0, hr = 1.0;
    const DamBreakSolution sol = solve_dam_break(hl, hr, g);
    const double hm = sol.h_middle, um = sol.u_middle, s = sol.shock_speed;
    CHECK(std::abs(s * (hm - hr) - hm * um) < 1e-10);
    CHECK(std::abs(s * hm * um - (hm * um * um + 0.5 * g * hm * hm - 0.5 * g * hr * hr)) <
          1e-10);
    // invariant u + 2 sqrt(gh) is constant through the fan
    std::vector<double> q(2);
    const double head = -std::sqrt(g * hl), tail = um - std::sqrt(g * hm);
    for (int k = 0; k <= 20; ++k) {
      const double z = head + (tail - head) * k / 20.0;
      exact_dam_break(1.0, z, hl, hr, g, q);
      const double u = q[1] / q[0];
      CHECK(std::abs(u + 2.0 * std::sqrt(g * q[0]) - 2.0 * std::sqrt(g * hl)) < 1e-10);
    }
  }

  SUBCASE("far field and degenerate data") {
    std::vector<double> q(2);
    exact_dam_break(0.2, -10.0, 3.0, 1.0, 1.0, q);
    CHECK(q[0] == 3.0);
    CHECK(q[1] == 0.0);
    exact_dam_break(0.2, 10.0, 3.0, 1.0, 1.0, q);
    CHECK(q[0] == 1.0);
    exact_dam_break(0.2, 0.1, 2.0, 2.0, 1.0, q);
    CHECK(q[0] == 2.0);
    CHECK(q[1] == 0.0);
  }
}

TEST_CASE("error norms") {
  const ProblemSpec adv = make_problem("advection-smooth");
  FdGrid grid{-1.0, 1.0, 64};
  FdState s = make_fd_state(grid, 1);
  std::vector<double> q(1);
  for (int i = 0; i < grid.mx; ++i) {
    adv.exact(0.0, grid.x(i), q);
    s.q(i, 0) = q[0];
  }
  s.t = 0.0;

  SUBCASE("exact input gives zero") {
    CHECK(error_norm(s, adv.exact) == 0.0);
    CHECK(l1_error(s, adv.exact) == 0.0);
  }

  SUBCASE("doubling the exact solution gives a relative error of one") {
    FdState d = s;
    for (int i = 0; i < grid.mx; ++i) d.q(i, 0) *= 2.0;
    CHECK(error_norm(d, adv.exact) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("a uniform dx^4 perturbation on a constant reference shows up as dx^4") {
    SolutionFn one = [](double, double, std::span<double> out) { out[0] = 1.0; };
    FdState p = s;
    const double eps = std::pow(grid.dx(), 4);
    for (int i = 0; i < grid.mx; ++i) p.q(i, 0) = 1.0 + eps;
    CHECK(error_norm(p, one) == doctest::Approx(eps).epsilon(1e-12));
  }

  SUBCASE("dg norm vanishes on an exactly represented reference") {
    SolutionFn lin = [](double, double x, std::span<double> out) { out[0] = 0.5 + 2.0 * x; };
    DgState d = make_dg_state(-1.0, 1.0, 8, 4, 1);
    for (int i = 0; i < d.mx; ++i) {
      const double xc = d.cell_center(i), half = 0.5 * d.dx();
      auto c = l2_project([&](double xi) { return 0.5 + 2.0 * (xc + half * xi); }, 4);
      for (int k = 1; k <= 4; ++k) d.Q(i, k, 0) = c[k - 1];
    }
    CHECK(error_norm(d, lin) < 1e-14);
    DgState twice = d;
    for (int i = 0; i < d.mx; ++i)
      for (int k = 1; k <= 4; ++k) twice.Q(i, k, 0) *= 2.0;
    CHECK(error_norm(twice, lin) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("initial data agrees with its closed form after discretization") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SUBCASE("fd sampling is pointwise exact") {
    const ProblemSpec p = make_problem("shock-entropy");
    FdGrid grid{p.a, p.b, 128};
    std::vector<double> q(3), qi(3);
    for (int trial = 0; trial < 10000; ++trial) {
      const int i = static_cast<int>(unit(rng) * 128);
      p.ic(grid.x(i), q);
      p.ic(grid.x(i), qi);
      for (int c = 0; c < 3; ++c) CHECK(q[c] == qi[c]);
    }
  }

  SUBCASE("dg projection reproduces a smooth ic to projection accuracy") {
    const ProblemSpec p = make_problem("advection-smooth");
    DgState s = make_dg_state(p.a, p.b, 64, 4, 1);
    std::vector<double> val(1);
    for (int i = 0; i < s.mx; ++i) {
      const double xc = s.cell_center(i), half = 0.5 * s.dx();
      auto c = l2_project(
          [&](double xi) {
            p.ic(xc + half * xi, val);
            return val[0];
          },
          4);
      for (int k = 1; k <= 4; ++k) s.Q(i, k, 0) = c[k - 1];
    }
    for (int trial = 0; trial < 10000; ++trial) {
      const int i = static_cast<int>(unit(rng) * s.mx);
      const double xi = 2.0 * unit(rng) - 1.0;
      p.ic(s.cell_center(i) + 0.5 * s.dx() * xi, val);
      CHECK(std::abs(dg_eval(s.Q, i, 0, xi) - val[0]) < 1e-5);
    }
  }
}

TEST_CASE("reference runs") {
  SUBCASE("an advection reference converges to the exact solution") {
    const ProblemSpec p = make_problem("advection-smooth");
    const ReferenceRun ref = make_reference(p, 1000, 0.1, "ssprk3");
    std::vector<double> q(1);
    double err = 0.0;
    for (size_t i = 0; i < ref.x.size(); ++i) {
      p.exact(p.t_final, ref.x[i], q);
      err = std::max(err, std::abs(ref.q[i] - q[0]));
    }
    CHECK(err < 1e-8);
  }

  SUBCASE("references serialize deterministically and round-trip") {
    const ProblemSpec p = make_problem("advection-smooth");
    const ReferenceRun ref = make_reference(p, 50, 0.4, "ssprk3");
    std::ostringstream a, b;
    write_reference(a, ref);
    const ReferenceRun again = make_reference(p, 50, 0.4, "ssprk3");
    write_reference(b, again);
    CHECK(a.str() == b.str());

    std::istringstream is(a.str());
    const ReferenceRun parsed = read_reference(is);
    CHECK(parsed.problem == ref.problem);
    CHECK(parsed.scheme == "ssprk3");
    CHECK(parsed.mx == 50);
    CHECK(parsed.m == 1);
    REQUIRE(parsed.x.size() == ref.x.size());
    for (size_t i = 0; i < ref.x.size(); ++i) {
      CHECK(parsed.x[i] == ref.x[i]);
      CHECK(parsed.q[i] == ref.q[i]);
    }
  }

  SUBCASE("piecewise linear sampling interpolates") {
    ReferenceRun ref;
    ref.m = 1;
    ref.x = {0.0, 1.0, 2.0};
    ref.q = {0.0, 2.0, 0.0};
    CHECK(ref.sample(0.5, 0) == doctest::Approx(1.0));
    CHECK(ref.sample(-3.0, 0) == 0.0);
    CHECK(ref.sample(1.75, 0) == doctest::Approx(0.5));
  }
}
