"""Schmidt spectra: validated, descending, normalized coefficient sequences."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

DEFAULT_ZERO_THRESHOLD = 1e-14
NEGATIVE_CLAMP = 1e-12
STRICT_NORM_TOL = 1e-6


class SpectrumError(ValueError):
    """Raised for inputs that cannot be turned into a Schmidt spectrum."""


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Schmidt coefficients lambda_p of a two-particle pure state.

    Coefficients at or below ``zero_threshold`` are stored as exact zeros, so
    ``effective_mode_count`` is the number of strictly positive entries.
    Build instances through :func:`from_raw` or the generators below.
    """

    lambdas: tuple[float, ...]
    zero_threshold: float = DEFAULT_ZERO_THRESHOLD

    def __post_init__(self):
        lam = self.lambdas
        if not lam:
            raise SpectrumError("spectrum must have at least one coefficient")
        if any(x < 0 or not math.isfinite(x) for x in lam):
            raise SpectrumError("coefficients must be finite and non-negative")
        if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
            raise SpectrumError("coefficients must be sorted non-increasing")
        if abs(math.fsum(lam) - 1.0) > 1e-12:
            raise SpectrumError(f"coefficients sum to {math.fsum(lam)!r}, not 1")

    @property
    def effective_mode_count(self) -> int:
        return sum(1 for x in self.lambdas if x > self.zero_threshold)

    @property
    def M(self) -> int:
        return self.effective_mode_count

    @property
    def nonzero(self) -> np.ndarray:
        """The strictly positive coefficients as an array."""
        return np.array(self.lambdas[: self.effective_mode_count])

    def __len__(self) -> int:
        return len(self.lambdas)

    def __iter__(self):
        return iter(self.lambdas)

    def to_json(self) -> str:
        return json.dumps(list(self.lambdas))


def from_raw(
    values: Iterable[float],
    zero_threshold: float = DEFAULT_ZERO_THRESHOLD,
    *,
    strict: bool = False,
) -> SchmidtSpectrum:
    """Clamp, sort and normalize raw Schmidt weights.

    Values in [-1e-12, 0) are treated as round-off and clamped to zero; values
    at or below ``zero_threshold`` are dropped to exact zeros before the
    rescale. With ``strict=True`` the input must already sum to 1 within 1e-6.
    """
    vals = [float(v) for v in values]
    if not vals:
        raise SpectrumError("empty spectrum")
    if not all(math.isfinite(v) for v in vals):
        raise SpectrumError("spectrum contains non-finite values")
    if min(vals) < -NEGATIVE_CLAMP:
        raise SpectrumError(f"negative Schmidt weight {min(vals)!r}")
    if zero_threshold < 0:
        raise SpectrumError("zero_threshold must be non-negative")

    total = math.fsum(max(v, 0.0) for v in vals)
    if total <= 0:
        raise SpectrumError("spectrum has zero total weight")
    if strict and abs(total - 1.0) >= STRICT_NORM_TOL:
        raise SpectrumError(f"spectrum sums to {total!r}; expected 1 within {STRICT_NORM_TOL}")

    # threshold is applied relative to the normalized scale
    vals = [v if v / total > zero_threshold else 0.0 for v in vals]
    total = math.fsum(vals)
    if total <= 0:
        raise SpectrumError("all weights fall below zero_threshold")
    vals = sorted((v / total for v in vals), reverse=True)
    return SchmidtSpectrum(tuple(vals), zero_threshold)


def purity(spec: SchmidtSpectrum) -> float:
    """Sum of squared Schmidt coefficients."""
    return math.fsum(x * x for x in spec.lambdas)


def purity_complement(spec: SchmidtSpectrum) -> float:
    """1 - P computed as sum_p lambda_p * (sum of the other lambdas).

    Avoids the cancellation in ``1 - purity(spec)`` when one mode dominates.
    """
    lam = spec.lambdas
    total = math.fsum(lam)
    if len(lam) == 1:
        return 0.0
    # sum of the others, accurate even when lam[p] ~ 1
    prefix = np.concatenate(([0.0], np.cumsum(lam[:-1])))
    suffix = np.concatenate((np.cumsum(lam[::-1])[::-1][1:], [0.0]))
    others = prefix + suffix
    value = math.fsum(x * o for x, o in zip(lam, others))
    # rescale for any residual normalization drift
    return value / (total * total)


def uniform(M: int) -> SchmidtSpectrum:
    if M < 1:
        raise SpectrumError("uniform spectrum needs M >= 1")
    return SchmidtSpectrum(tuple([1.0 / M] * M))


def geometric(z: float, tail_cutoff: float = 1e-12) -> SchmidtSpectrum:
    """Truncated geometric spectrum lambda_p proportional to (1 - z) z**p.

    Terms are kept until the cumulative mass reaches ``1 - tail_cutoff``.
    """
    if not 0.0 <= z < 1.0:
        raise SpectrumError(f"geometric ratio z={z!r} must lie in [0, 1)")
    if not 0.0 < tail_cutoff < 1.0:
        raise SpectrumError("tail_cutoff must lie in (0, 1)")
    if z == 0.0:
        return SchmidtSpectrum((1.0,))
    n_terms = max(1, math.ceil(math.log(tail_cutoff) / math.log(z)))
    weights = (1.0 - z) * z ** np.arange(n_terms)
    return from_raw(weights)


def random_dirichlet(M: int, concentration: float = 1.0, seed: int = 0) -> SchmidtSpectrum:
    if M < 1:
        raise SpectrumError("random spectrum needs M >= 1")
    if not concentration > 0:
        raise SpectrumError("concentration must be positive")
    rng = np.random.default_rng(seed)
    return from_raw(rng.dirichlet(np.full(M, float(concentration))))


def parse_spectrum_text(text: str) -> list[float]:
    """Parse a spectrum from JSON or from one-number-per-line text.

    JSON may be a bare array or an object carrying a ``lambdas`` array (the
    shape written by ``coboson analyze``).
    """
    stripped = text.strip()
    if stripped.startswith("[") or stripped.startswith("{"):
        try:
            payload = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise SpectrumError(f"invalid JSON spectrum: {exc}") from None
        if isinstance(payload, dict):
            if "lambdas" not in payload:
                raise SpectrumError("JSON object has no 'lambdas' field")
            payload = payload["lambdas"]
        if not isinstance(payload, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in payload
        ):
            raise SpectrumError("JSON spectrum must be an array of numbers")
        return [float(v) for v in payload]

    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise SpectrumError(f"line {lineno}: cannot parse {line!r} as a number") from None
    return values


def load_spectrum(path: str | Path, zero_threshold: float = DEFAULT_ZERO_THRESHOLD) -> SchmidtSpectrum:
    return from_raw(parse_spectrum_text(Path(path).read_text()), zero_threshold)
