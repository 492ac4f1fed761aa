"""Purity of a hydrogen atom in an isotropic harmonic trap.

Lengths are measured in Bohr radii unless a model says otherwise. The
proton sits in the trap ground state of width b and the electron in the 1s
orbital around it; with the 1s overlap short-ranged compared to b, the
proton purity factorizes into a trap integral times an overlap integral.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

PURITY_PREFACTOR = 33.0 / (4.0 * math.sqrt(2.0 * math.pi))
QUAD_RTOL = 1e-12


class RegimeWarning(UserWarning):
    """Model parameters are outside the regime where the approximation is meaningful."""


class RegimeError(ValueError):
    """Purity is not below 1, so no atom count can be derived."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested accuracy."""


@dataclass(frozen=True)
class HydrogenTrapModel:
    b: float
    a0: float = 1.0

    def __post_init__(self):
        if not (self.a0 > 0 and self.b > 0):
            raise ValueError("a0 and b must be positive")
        if self.b / self.a0 < 10:
            warnings.warn(
                f"b/a0 = {self.b / self.a0:g} < 10: the short-range approximation is poor",
                RegimeWarning,
                stacklevel=2,
            )

    @property
    def ratio(self) -> float:
        return self.b / self.a0


def sigma_overlap(model: HydrogenTrapModel, q: float) -> float:
    """Overlap of the 1s orbital with itself displaced by ``q``.

    Closed form exp(-u)(1 + u + u^2/3), u = q/a0; the test suite checks it
    against direct 3-D quadrature.
    """
    if q < 0:
        raise ValueError("displacement q must be non-negative")
    u = q / model.a0
    return math.exp(-u) * (1.0 + u + u * u / 3.0)


def _sigma_sq(u):
    return np.exp(-2.0 * u) * (1.0 + u + u * u / 3.0) ** 2


def trap_quartic_integral(model: HydrogenTrapModel) -> float:
    """Integral of |psi(R)|^4 over 3-D space for the trap ground state."""
    return 1.0 / ((2.0 * math.pi) ** 1.5 * model.b**3)


def overlap_sq_integral(model: HydrogenTrapModel, rtol: float = QUAD_RTOL) -> tuple[float, float]:
    """4 pi int_0^inf sigma(q)^2 q^2 dq, with its error estimate."""
    value, err = integrate.quad(lambda u: _sigma_sq(u) * u * u, 0.0, np.inf, epsabs=0.0, epsrel=rtol, limit=200)
    if not err <= 10 * rtol * abs(value):
        raise QuadratureError(f"overlap integral did not converge: {value!r} +/- {err!r}")
    scale = 4.0 * math.pi * model.a0**3
    return scale * value, scale * err


def hydrogen_purity_closed(model: HydrogenTrapModel) -> float:
    """33 / (4 sqrt(2 pi)) (a0/b)^3; warns when the result is not a valid purity."""
    P = PURITY_PREFACTOR * (model.a0 / model.b) ** 3
    if P >= 1.0:
        warnings.warn(f"purity {P:.6g} >= 1: trap too small for the short-range approximation", RegimeWarning, stacklevel=2)
    return P


def hydrogen_purity_quadrature(model: HydrogenTrapModel) -> float:
    """Trap quartic integral times the numerically integrated overlap factor."""
    if model.ratio < 1:
        raise ValueError("quadrature route requires b/a0 >= 1")
    overlap, _ = overlap_sq_integral(model)
    return trap_quartic_integral(model) * overlap


def max_atoms(model: HydrogenTrapModel, delta: float) -> int:
    """floor(delta / P): atoms before the chi-ratio lower bound drops below 1 - delta."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        P = hydrogen_purity_closed(model)
    if P >= 1.0:
        raise RegimeError(f"purity {P:.6g} >= 1 at b/a0 = {model.ratio:g}")
    return math.floor(delta / P * (1.0 + 1e-12))
