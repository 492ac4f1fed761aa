"""Brute-force references for chi_N and the ladder relations.

Two routes that share nothing with the recurrence in :mod:`coboson.chi`:
direct enumeration over index subsets, and explicit operator matrices on
the paired Fock space. The pair operator a_p^dagger b_p^dagger carries two
fermions, so moving it past other pairs never produces a sign and the
paired subspace (one bit per Schmidt mode, dimension 2**M) is closed
under c and c^dagger. ``tests/test_fock.py`` checks this against a full
Jordan-Wigner construction for small M.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .chi import UndefinedStateError
from .spectrum import SchmidtSpectrum

MAX_ENUM_MODES = 12
MAX_FOCK_MODES = 6


def chi_by_enumeration(spec: SchmidtSpectrum, N: int) -> float:
    """N! times the sum of lambda products over N-element index subsets."""
    lam = spec.nonzero
    if len(lam) > MAX_ENUM_MODES:
        raise ValueError(f"enumeration limited to {MAX_ENUM_MODES} modes, got {len(lam)}")
    if N < 0:
        raise ValueError("N must be >= 0")
    terms = [math.prod(combo) for combo in itertools.combinations(lam.tolist(), N)]
    return math.factorial(N) * math.fsum(terms)


def chi_exact(lambdas: Sequence[Fraction | int | str], N: int) -> Fraction:
    """chi_N in exact rational arithmetic; ``lambdas`` need not be normalized."""
    lam = [Fraction(x) for x in lambdas]
    total = sum(lam)
    lam = [x / total for x in lam]
    acc = sum((math.prod(c) for c in itertools.combinations(lam, N)), Fraction(0))
    return math.factorial(N) * acc


@dataclass(frozen=True)
class PairFockSpace:
    """Occupation-bitmask basis for M paired modes; basis index = bitmask."""

    mode_count: int

    def __post_init__(self):
        if not 1 <= self.mode_count <= MAX_FOCK_MODES:
            raise ValueError(f"paired Fock space supports 1..{MAX_FOCK_MODES} modes")

    @property
    def dimension(self) -> int:
        return 1 << self.mode_count

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dimension)
        v[0] = 1.0
        return v

    def pair_creator(self, p: int) -> np.ndarray:
        """Matrix of a_p^dagger b_p^dagger."""
        dim = self.dimension
        out = np.zeros((dim, dim))
        bit = 1 << p
        for s in range(dim):
            if not s & bit:
                out[s | bit, s] = 1.0
        return out

    def occupation(self, s: int) -> tuple[int, ...]:
        return tuple((s >> p) & 1 for p in range(self.mode_count))


class CompositeOperators:
    """c^dagger and c for one spectrum on its paired Fock space."""

    def __init__(self, spec: SchmidtSpectrum):
        lam = spec.nonzero
        self.space = PairFockSpace(len(lam))
        self.lambdas = lam
        self.create = sum(math.sqrt(x) * self.space.pair_creator(p) for p, x in enumerate(lam))
        self.annihilate = self.create.T.copy()

    @cached_property
    def _ladder(self) -> list[np.ndarray]:
        # (c^dagger)^N |0> for N = 0..M
        vecs = [self.space.vacuum()]
        for _ in range(self.space.mode_count):
            vecs.append(self.create @ vecs[-1])
        return vecs

    def raw_state(self, N: int) -> np.ndarray:
        if N > self.space.mode_count:
            return np.zeros(self.space.dimension)
        return self._ladder[N]

    def chi(self, N: int) -> float:
        v = self.raw_state(N)
        return float(v @ v) / math.factorial(N)

    def state(self, N: int) -> np.ndarray:
        """Normalized |N>; raises when chi_N = 0."""
        v = self.raw_state(N)
        norm = math.sqrt(float(v @ v))
        if norm == 0.0:
            raise UndefinedStateError(f"(c^dagger)^{N}|0> vanishes; |{N}> is undefined")
        return v / norm

    def epsilon_norm(self, N: int) -> float:
        ket = self.state(N)
        below = self.state(N - 1)
        lowered = self.annihilate @ ket
        residual = lowered - (below @ lowered) * below
        return float(residual @ residual)

    def commutator_expectation(self, N: int) -> float:
        ket = self.state(N)
        comm = self.annihilate @ self.create - self.create @ self.annihilate
        return float(ket @ comm @ ket)

    def raising_coefficient(self, N: int) -> float:
        """<N+1| c^dagger |N>, which should equal alpha_{N+1} sqrt(N+1)."""
        return float(self.state(N + 1) @ self.create @ self.state(N))


def chi_by_fock(spec: SchmidtSpectrum, N: int) -> float:
    """chi_N = <0| c^N (c^dagger)^N |0> / N! from explicit matrices."""
    return CompositeOperators(spec).chi(N)


def epsilon_by_fock(spec: SchmidtSpectrum, N: int) -> float:
    """Squared norm of c|N> with its |N-1> component removed."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return CompositeOperators(spec).epsilon_norm(N)
