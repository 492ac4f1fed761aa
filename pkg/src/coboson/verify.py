"""Randomized cross-checks of the chi engine against the brute-force oracles."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import chi as ce
from .fock import MAX_ENUM_MODES, MAX_FOCK_MODES, CompositeOperators, chi_by_enumeration
from .spectrum import SchmidtSpectrum, random_dirichlet

CHI_RTOL = 1e-12
EPS_ATOL = 1e-10
COMM_ATOL = 1e-12
BOUND_RTOL = 1e-10
CONCENTRATIONS = (0.3, 1.0, 5.0)


def rel_close(a: float, b: float, rtol: float) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b))


@dataclass
class Failure:
    check: str
    N: int
    detail: str
    spectrum: SchmidtSpectrum

    def to_dict(self) -> dict:
        return {"check": self.check, "N": self.N, "detail": self.detail, "lambdas": list(self.spectrum.lambdas)}


@dataclass
class VerifyResult:
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    first_failure: Failure | None = None
    spectra: int = 0

    @property
    def ok(self) -> bool:
        return not self.failed

    def record(self, check: str, ok: bool, spec: SchmidtSpectrum, N: int, detail: str = "") -> None:
        if ok:
            self.passed[check] += 1
            return
        self.failed[check] += 1
        if self.first_failure is None:
            self.first_failure = Failure(check, N, detail, spec)

    def summary_lines(self) -> list[str]:
        lines = [f"spectra checked: {self.spectra}"]
        for check in sorted(set(self.passed) | set(self.failed)):
            lines.append(f"{check:<18} pass={self.passed[check]:<6d} fail={self.failed[check]}")
        if self.first_failure is not None:
            lines.append("first failure: " + json.dumps(self.first_failure.to_dict()))
        return lines


def check_spectrum(
    spec: SchmidtSpectrum,
    result: VerifyResult,
    chi_fn: Callable[[SchmidtSpectrum, int], ce.ChiTable] = ce.chi_table,
) -> None:
    """Run every applicable check on one spectrum, recording into ``result``."""
    M = spec.effective_mode_count
    table = chi_fn(spec, M + 1)
    result.spectra += 1

    if M <= MAX_ENUM_MODES:
        for N in range(M + 1):
            dp, en = table.chi(N), chi_by_enumeration(spec, N)
            result.record("dp_vs_enum", rel_close(dp, en, CHI_RTOL), spec, N, f"dp={dp!r} enum={en!r}")

    if M <= MAX_FOCK_MODES:
        ops = CompositeOperators(spec)
        for N in range(M + 1):
            dp, fk = table.chi(N), ops.chi(N)
            result.record("dp_vs_fock", rel_close(dp, fk, CHI_RTOL), spec, N, f"dp={dp!r} fock={fk!r}")
            en = chi_by_enumeration(spec, N)
            result.record("enum_vs_fock", rel_close(en, fk, CHI_RTOL), spec, N, f"enum={en!r} fock={fk!r}")
        for N in range(1, M + 1):
            eps_dp = max(ce.epsilon_norm_unclamped(table, N), 0.0)
            eps_fk = ops.epsilon_norm(N)
            result.record("epsilon_fock", abs(eps_dp - eps_fk) <= EPS_ATOL, spec, N, f"eq={eps_dp!r} fock={eps_fk!r}")
            comm_dp = ce.commutator_expectation(table, N)
            comm_fk = ops.commutator_expectation(N)
            result.record("commutator_fock", abs(comm_dp - comm_fk) <= COMM_ATOL, spec, N, f"eq={comm_dp!r} fock={comm_fk!r}")
        for N in range(0, M):
            coef = ops.raising_coefficient(N)
            expect = ce.alpha(table, N + 1) * np.sqrt(N + 1)
            result.record("raising_fock", abs(coef - expect) <= COMM_ATOL * max(1.0, expect), spec, N, f"{coef!r} vs {expect!r}")

    check_bounds(spec, table, result)


def check_bounds(spec: SchmidtSpectrum, table: ce.ChiTable, result: VerifyResult) -> None:
    """Sandwich, N=1 equality, monotone ratio and non-negative epsilon."""
    M = spec.effective_mode_count
    prev = None
    for N in range(1, min(M, table.n_max - 1) + 1):
        r = ce.chi_ratio(table, N)
        lo, hi = ce.bounds(spec, N)
        slack = BOUND_RTOL * max(abs(lo), abs(hi), r) + 1e-15
        result.record("sandwich", lo - slack <= r <= hi + slack, spec, N, f"{lo!r} <= {r!r} <= {hi!r}")
        if N == 1:
            result.record("n1_equality", rel_close(r, hi, CHI_RTOL) or r == hi, spec, N, f"ratio={r!r} 1-P={hi!r}")
        if prev is not None:
            result.record("monotone", r <= prev * (1 + 1e-12), spec, N, f"ratio {r!r} > previous {prev!r}")
        prev = r
        eps = ce.epsilon_norm_unclamped(table, N)
        result.record("epsilon_nonneg", eps >= -ce.CLAMP_TOL, spec, N, f"epsilon={eps!r}")


def random_spectra(count: int, m_max: int, seed: int, m_min: int = 1):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        M = int(rng.integers(m_min, m_max + 1))
        conc = CONCENTRATIONS[int(rng.integers(len(CONCENTRATIONS)))]
        yield random_dirichlet(M, conc, int(rng.integers(2**32)))


def run_verification(
    m_max: int = MAX_FOCK_MODES,
    trials: int = 200,
    seed: int = 42,
    chi_fn: Callable[[SchmidtSpectrum, int], ce.ChiTable] = ce.chi_table,
) -> VerifyResult:
    if not 1 <= m_max <= MAX_ENUM_MODES:
        raise ValueError(f"m_max must lie in 1..{MAX_ENUM_MODES}")
    result = VerifyResult()
    for spec in random_spectra(trials, m_max, seed):
        check_spectrum(spec, result, chi_fn)
    return result


def corrupted_chi_table(spec: SchmidtSpectrum, n_max: int) -> ce.ChiTable:
    """A deliberately wrong table (chi_2 inflated by 1%), for exercising failure paths."""
    table = ce.chi_table(spec, n_max)
    mant = table.esp_mantissa.copy()
    if len(mant) > 2:
        mant[2] *= 1.01
    return ce.ChiTable(mant, table.esp_exponent, table.mode_count, table.purity, table.purity_complement)
