import math
import warnings

import numpy as np
import pytest
import sympy as sp
from scipy import integrate

from coboson.hydrogen import (
    HydrogenTrapModel,
    RegimeError,
    RegimeWarning,
    hydrogen_purity_closed,
    hydrogen_purity_quadrature,
    max_atoms,
    overlap_sq_integral,
    sigma_overlap,
    trap_quartic_integral,
)

MODEL10 = HydrogenTrapModel(10.0)


def sigma_by_3d_quadrature(u):
    """int phi(r) phi(r - q) d^3r for the 1s orbital, cylindrical coordinates, q on the z axis."""

    def integrand(rho, z):
        return 2.0 * rho * math.exp(-math.hypot(rho, z) - math.hypot(rho, z - u))

    pieces = [(-np.inf, 0.0), (0.0, u), (u, np.inf)] if u > 0 else [(-np.inf, 0.0), (0.0, np.inf)]
    total = 0.0
    for lo, hi in pieces:
        value, _ = integrate.nquad(
            integrand, [[0.0, np.inf], [lo, hi]], opts={"epsabs": 1e-12, "epsrel": 1e-11, "limit": 200}
        )
        total += value
    return total


@pytest.mark.parametrize("u", [0.0, 1.0, 2.0])
def test_sigma_closed_form_gate(u):
    # the closed form is only trusted because this passes
    assert sigma_overlap(HydrogenTrapModel(10.0), u) == pytest.approx(sigma_by_3d_quadrature(u), abs=1e-6)


def test_sigma_examples():
    m = HydrogenTrapModel(10.0)
    assert sigma_overlap(m, 0.0) == 1.0
    assert sigma_overlap(m, 1.0) == pytest.approx(0.8583853627, rel=1e-9)
    assert sigma_overlap(m, 200.0) < 1e-80
    with pytest.raises(ValueError):
        sigma_overlap(m, -1.0)
    # a0 other than 1 only rescales the argument
    assert sigma_overlap(HydrogenTrapModel(20.0, a0=2.0), 2.0) == sigma_overlap(m, 1.0)


def test_sigma_monotone():
    qs = np.linspace(0, 40, 4001)
    vals = [sigma_overlap(MODEL10, q) for q in qs]
    assert np.all(np.diff(vals) < 0)


def test_overlap_integral_exact():
    u = sp.symbols("u", nonnegative=True)
    exact = 4 * sp.pi * sp.integrate(sp.exp(-2 * u) * (1 + u + u**2 / 3) ** 2 * u**2, (u, 0, sp.oo))
    assert sp.simplify(exact - sp.Rational(33, 2) * sp.pi) == 0
    value, err = overlap_sq_integral(MODEL10)
    assert value == pytest.approx(33 * math.pi / 2, rel=1e-8)
    assert err < 1e-9 * value


def test_trap_quartic_integral_against_radial_quadrature():
    for b in (0.5, 2.0, 10.0):
        m = HydrogenTrapModel(b) if b >= 10 else _quiet_model(b)
        psi4 = lambda R: (math.pi ** -0.75 * b ** -1.5 * math.exp(-R * R / (2 * b * b))) ** 4
        value, _ = integrate.quad(lambda R: 4 * math.pi * R * R * psi4(R), 0, np.inf, epsabs=0, epsrel=1e-13)
        assert trap_quartic_integral(m) == pytest.approx(value, rel=1e-10)
    assert trap_quartic_integral(_quiet_model(2.0)) == pytest.approx(7.936704491780121e-3, rel=1e-12)


def _quiet_model(b):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        return HydrogenTrapModel(b)


def test_closed_form_values():
    assert hydrogen_purity_closed(MODEL10) == pytest.approx(3.2913e-3, rel=1e-4)
    assert hydrogen_purity_closed(HydrogenTrapModel(20.0)) == pytest.approx(hydrogen_purity_closed(MODEL10) / 8, rel=1e-15)
    with pytest.warns(RegimeWarning):
        small = HydrogenTrapModel(1.0)
    with pytest.warns(RegimeWarning):
        P = hydrogen_purity_closed(small)
    assert P == pytest.approx(33 / (4 * math.sqrt(2 * math.pi)), rel=1e-15)


@pytest.mark.parametrize("b", [5.0, 10.0, 20.0, 50.0])
def test_quadrature_matches_closed(b):
    m = _quiet_model(b)
    assert hydrogen_purity_quadrature(m) == pytest.approx(hydrogen_purity_closed(m), rel=1e-8)


def test_max_atoms():
    assert max_atoms(MODEL10, 0.1) == 30
    assert max_atoms(HydrogenTrapModel(100.0), 0.1) == 30383
    assert max_atoms(HydrogenTrapModel(20.0), 0.1) == 243
    assert max_atoms(MODEL10, 1e-6) == 0
    with pytest.raises(RegimeError):
        max_atoms(_quiet_model(1.0), 0.1)
    with pytest.raises(ValueError):
        max_atoms(MODEL10, 0.0)


def test_model_validation():
    with pytest.raises(ValueError):
        HydrogenTrapModel(-1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        HydrogenTrapModel(10.0)
