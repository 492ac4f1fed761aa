"""Normalization constants chi_N of the N-pair state and derived metrics.

chi_N = N! * e_N(lambda), with e_N the elementary symmetric polynomial of the
Schmidt coefficients. The table is built with the usual one-mode-at-a-time
recurrence e_k <- e_k + lambda * e_{k-1}, but every entry carries its own
binary exponent, so chi_500 of a 1000-mode spectrum (~1e-217) and
chi_5000 of a 10^4-mode spectrum (~1e-2000) stay representable.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .spectrum import SchmidtSpectrum, purity, purity_complement

LN2 = math.log(2.0)
CLAMP_TOL = 1e-12
TIE_RTOL = 1e-12


class UndefinedStateError(ValueError):
    """The N-pair state does not exist because chi_N = 0 (N exceeds the mode count)."""


def _esp_mant_exp(lams: np.ndarray, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """e_0..e_{n_max} of ``lams`` as (mantissa, base-2 exponent) pairs."""
    mant = np.zeros(n_max + 1)
    expo = np.zeros(n_max + 1, dtype=np.int64)
    mant[0] = 0.5
    expo[0] = 1
    for j, lam in enumerate(lams):
        hi = min(j + 1, n_max)
        if hi == 0:
            break
        a, ea = mant[1 : hi + 1], expo[1 : hi + 1]
        b, eb = lam * mant[:hi], expo[:hi]
        top = np.where(a == 0.0, eb, np.maximum(ea, eb))
        s = np.ldexp(a, ea - top) + np.ldexp(b, eb - top)
        m, e2 = np.frexp(s)
        mant[1 : hi + 1] = m
        expo[1 : hi + 1] = top + e2
    expo[mant == 0.0] = 0
    return mant, expo


def _factorial_ratio(N: int, K: int) -> float:
    if abs(N - K) <= 20:
        if N >= K:
            return float(math.prod(range(K + 1, N + 1)))
        return 1.0 / math.prod(range(N + 1, K + 1))
    return math.exp(math.lgamma(N + 1.0) - math.lgamma(K + 1.0))


@dataclass(frozen=True)
class ChiTable:
    """chi_0..chi_{n_max} for one spectrum.

    ``esp_mantissa`` / ``esp_exponent`` hold e_N = mantissa * 2**exponent;
    ``log_chi`` is derived from them, with -inf marking chi_N = 0.
    """

    esp_mantissa: np.ndarray = field(repr=False)
    esp_exponent: np.ndarray = field(repr=False)
    mode_count: int
    purity: float
    purity_complement: float = field(default=float("nan"), repr=False)

    @property
    def n_max(self) -> int:
        return len(self.esp_mantissa) - 1

    @property
    def log_chi(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            log_esp = np.log(self.esp_mantissa) + self.esp_exponent * LN2
        n = np.arange(self.n_max + 1)
        log_fact = np.array([math.lgamma(k + 1.0) for k in n])
        out = log_esp + log_fact
        out[self.esp_mantissa == 0.0] = -np.inf
        return out

    def chi(self, N: int) -> float:
        """chi_N as a plain float (may underflow to 0 for huge tables)."""
        self._check_index(N)
        m, e = self.esp_mantissa[N], int(self.esp_exponent[N])
        if m == 0.0:
            return 0.0
        if N <= 170:
            return math.ldexp(m * math.factorial(N), e)
        return math.exp(math.log(m) + e * LN2 + math.lgamma(N + 1.0))

    def is_defined(self, N: int) -> bool:
        """True when chi_N > 0, i.e. the normalized N-pair state exists."""
        return 0 <= N <= self.n_max and self.esp_mantissa[N] > 0.0

    def ratio(self, N: int, K: int) -> float:
        """chi_N / chi_K, exact up to rounding; requires chi_K > 0."""
        self._check_index(K)
        if not self.is_defined(K):
            raise UndefinedStateError(f"chi_{K} = 0: the {K}-pair state is undefined")
        if N > self.mode_count:
            return 0.0
        self._check_index(N)
        if self.esp_mantissa[N] == 0.0:
            return 0.0
        q = self.esp_mantissa[N] / self.esp_mantissa[K]
        e = int(self.esp_exponent[N] - self.esp_exponent[K])
        return math.ldexp(q * _factorial_ratio(N, K), e)

    def _check_index(self, N: int) -> None:
        if not 0 <= N <= self.n_max:
            raise IndexError(f"N={N} outside table range 0..{self.n_max}")


def chi_table(spec: SchmidtSpectrum, n_max: int) -> ChiTable:
    """Table of chi_0..chi_{n_max}; entries beyond the mode count are zero."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    mant, expo = _esp_mant_exp(spec.nonzero, n_max)
    return ChiTable(mant, expo, spec.effective_mode_count, purity(spec), purity_complement(spec))


def chi_ratio(table: ChiTable, N: int) -> float:
    """The chi_N-ratio chi_{N+1}/chi_N; 1 for an ideal boson."""
    if N < 1:
        raise ValueError("chi-ratio is defined for N >= 1")
    return table.ratio(N + 1, N)


def alpha(table: ChiTable, N: int) -> float:
    """Ladder correction alpha_N = sqrt(chi_N / chi_{N-1})."""
    if N < 1:
        raise ValueError("alpha_N is defined for N >= 1")
    return math.sqrt(table.ratio(N, N - 1))


def epsilon_norm_unclamped(table: ChiTable, N: int) -> float:
    """1 - r_N - N (r_{N-1} - r_N) with r_N = chi_{N+1}/chi_N, as computed."""
    if N < 1:
        raise ValueError("epsilon_N is defined for N >= 1")
    if not table.is_defined(N):
        raise UndefinedStateError(f"chi_{N} = 0: the {N}-pair state is undefined")
    up = table.ratio(N + 1, N)
    down = table.ratio(N, N - 1)
    return 1.0 - up - N * (down - up)


def epsilon_norm(table: ChiTable, N: int) -> float:
    """Squared norm of the non-bosonic residual in c|N>; tiny negatives clamp to 0."""
    value = epsilon_norm_unclamped(table, N)
    if value < 0.0:
        if value < -CLAMP_TOL:
            raise ArithmeticError(f"epsilon norm {value!r} is negative beyond rounding")
        value = 0.0
    return value


def commutator_expectation(table: ChiTable, N: int) -> float:
    """<N|[c, c^dagger]|N> = 2 chi_{N+1}/chi_N - 1."""
    return 2.0 * chi_ratio(table, N) - 1.0


def bounds(spec: SchmidtSpectrum, N: int) -> tuple[float, float]:
    """(1 - N P, 1 - P). The lower value may be negative."""
    if N < 1:
        raise ValueError("bounds are stated for N >= 1")
    one_minus_p = purity_complement(spec)
    P = purity(spec)
    return one_minus_p - (N - 1) * P, one_minus_p


def log_concavity_certificate(table: ChiTable) -> np.ndarray:
    """chi_N**2 - chi_{N+1} chi_{N-1} for N = 1..n_max-1.

    Values are in absolute units and can underflow to 0 for very long
    tables; :func:`log_concavity_relative` gives the scale-free version.
    """
    if table.n_max < 2:
        raise ValueError("certificate needs a table with n_max >= 2")
    rel = log_concavity_relative(table)
    chi_sq = np.array([table.chi(N) ** 2 for N in range(1, table.n_max)])
    return chi_sq * rel


def log_concavity_relative(table: ChiTable) -> np.ndarray:
    """1 - chi_{N+1} chi_{N-1} / chi_N**2 for N = 1..n_max-1 (0 where chi_N = 0)."""
    out = np.ones(max(table.n_max - 1, 0))
    for N in range(1, table.n_max):
        if table.is_defined(N):
            out[N - 1] = 1.0 - table.ratio(N + 1, N) / table.ratio(N, N - 1)
        else:
            out[N - 1] = 0.0
    return out


@dataclass(frozen=True)
class BosonicMetrics:
    """Per-N bosonic-quality record.

    ``alpha`` is alpha_{N+1} = sqrt(chi_{N+1}/chi_N), the coefficient in
    c^dagger|N> = alpha_{N+1} sqrt(N+1) |N+1>.
    """

    N: int
    chi_ratio: float
    alpha: float
    epsilon_norm: float
    commutator: float
    lower_bound: float
    upper_bound: float

    FIELDS = ("N", "chi_ratio", "alpha", "epsilon_norm", "commutator", "lower_bound", "upper_bound")

    def to_dict(self) -> dict:
        return asdict(self)


def metrics(table: ChiTable, spec: SchmidtSpectrum, N: int) -> BosonicMetrics:
    r = chi_ratio(table, N)
    lo, hi = bounds(spec, N)
    return BosonicMetrics(
        N=N,
        chi_ratio=r,
        alpha=math.sqrt(r),
        epsilon_norm=epsilon_norm(table, N),
        commutator=2.0 * r - 1.0,
        lower_bound=lo,
        upper_bound=hi,
    )


def metrics_table(spec: SchmidtSpectrum, n_max: int) -> tuple[list[BosonicMetrics], ChiTable]:
    """Metrics for every defined N in 1..n_max, plus the underlying table."""
    table = chi_table(spec, n_max + 1)
    rows = [metrics(table, spec, N) for N in range(1, n_max + 1) if table.is_defined(N)]
    return rows, table


def max_occupancy(spec: SchmidtSpectrum, delta: float) -> tuple[int, int]:
    """Largest N with a chi-ratio of at least 1 - delta.

    Returns ``(from_bound, exact)``: ``floor(delta / P)`` from the lower
    bound 1 - NP, and the largest N whose actual chi_{N+1}/chi_N clears the
    threshold. Ties count as passing, with a 1e-12 relative allowance for
    rounding in both.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    P = purity(spec)
    from_bound = math.floor(delta / P * (1.0 + TIE_RTOL))
    threshold = (1.0 - delta) * (1.0 - TIE_RTOL)

    M = spec.effective_mode_count
    # the ratio is non-increasing in N, so stop at the first failure
    n_hi = min(M, max(8, 2 * from_bound + 2))
    while True:
        table = chi_table(spec, n_hi + 1)
        exact = 0
        for N in range(1, n_hi + 1):
            if chi_ratio(table, N) >= threshold:
                exact = N
            else:
                return from_bound, exact
        if n_hi >= M:
            return from_bound, exact
        n_hi = min(M, 2 * n_hi)
