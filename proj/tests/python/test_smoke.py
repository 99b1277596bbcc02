"""Smoke tests for the python bindings."""

from fractions import Fraction

import numpy as np
import pytest

import mdrk


def test_tableaux_round_trip():
    t = mdrk.make_tableau("tdrk4")
    assert t.stages == 2
    assert t.derivatives == 2
    assert t.design_order == 4
    assert t.a(1, 1, 0) == 0.5
    assert t.a(2, 1, 0) == 0.125
    assert t.is_explicit()
    with pytest.raises(ValueError):
        mdrk.make_tableau("rk99")


def test_amplification_polynomials_are_exact():
    poly = [Fraction(n, d) for n, d in mdrk.amplification_polynomial(mdrk.make_tableau("tdrk4"))]
    assert poly == [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 6), Fraction(1, 24)]
    tail = [Fraction(n, d) for n, d in mdrk.amplification_polynomial(mdrk.make_tableau("tdrk5"))]
    assert tail[-2:] == [Fraction(1, 120), Fraction(1, 600)]
    assert abs(mdrk.max_imaginary_extent(mdrk.make_tableau("tdrk4")) - np.sqrt(8)) < 1e-2


def test_models():
    euler = mdrk.make_model("euler")
    f = euler.flux([1.0, 0.0, 2.5])
    np.testing.assert_allclose(f, [0.0, 1.0, 0.0], atol=1e-14)
    R, lam, Rinv = euler.eigensystem([1.0, 0.0, 2.5])
    np.testing.assert_allclose(lam, [-np.sqrt(1.4), 0.0, np.sqrt(1.4)], atol=1e-14)
    np.testing.assert_allclose(R @ Rinv, np.eye(3), atol=1e-12)
    with pytest.raises(ValueError):
        euler.flux([1.0, 10.0, 1.0])  # negative pressure

    bl = mdrk.make_model("buckley-leverett")
    assert bl.flux([0.5])[0] == pytest.approx(0.75)


def test_weno_kernels():
    assert mdrk.smoothness_indicators([1.0, 2.0, 3.0, 4.0, 5.0]) == pytest.approx((1, 1, 1))
    assert mdrk.weno5_plus([1.0, 2.0, 3.0, 4.0, 5.0]) == pytest.approx(3.5)
    assert mdrk.legendre(2, 1.0) == pytest.approx(np.sqrt(3))


def test_run_weno_advection_full_period():
    out = mdrk.run("advection-smooth", space="weno", integrator="tdrk4", mx=100, cfl=0.4)
    exact = np.sin(np.pi * out["x"])
    assert np.max(np.abs(out["q"][:, 0] - exact)) < 1e-5
    assert out["mass_final"][0] == pytest.approx(out["mass_initial"][0], abs=1e-12)


def test_run_dg_dam_break():
    out = mdrk.run("dam-break", space="dg", integrator="tdrk4", mx=30)
    h = out["q"][:, 0]
    assert np.all(h > 0)
    assert h[0] == pytest.approx(3.0, abs=1e-2)
    assert h[-1] == pytest.approx(1.0, abs=1e-2)
    # exact middle state appears between the waves
    hm, _ = mdrk.exact_dam_break(0.2, 0.55 - 0.5)
    assert np.min(np.abs(h - hm)) < 5e-3


def test_convergence_orders():
    rows = mdrk.convergence_study("advection-smooth", "weno", "ssprk3", [25, 50], cfl=0.9)
    assert rows[0]["order"] is None
    assert rows[1]["order"] == pytest.approx(3.0, abs=0.1)


def test_exact_solutions():
    assert mdrk.exact_buckley_leverett(0.4, 0.99) == 0.0
    # the plateau between the compound waves
    assert mdrk.exact_buckley_leverett(0.4, -0.03) == pytest.approx(1.0)
    q = mdrk.exact_solution("advection-smooth", 2.0, 0.25)
    assert q[0] == pytest.approx(np.sin(np.pi * 0.25))
