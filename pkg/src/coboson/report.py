"""Analysis reports: assembly, JSON and CSV rendering."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .chi import BosonicMetrics, log_concavity_certificate, log_concavity_relative, metrics_table
from .spectrum import SchmidtSpectrum, purity

CSV_COLUMNS = BosonicMetrics.FIELDS
DEFAULT_N_CAP = 64


def default_n_max(spec: SchmidtSpectrum) -> int:
    return max(1, min(spec.effective_mode_count - 1, DEFAULT_N_CAP))


@dataclass
class AnalysisReport:
    input: dict
    purity: float
    mode_count: int
    lambdas: list[float]
    metrics: list[BosonicMetrics]
    log_concavity: dict
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "version": __version__,
            "input": self.input,
            "purity": self.purity,
            "mode_count": self.mode_count,
            "n_rows": len(self.metrics),
            "metrics": [m.to_dict() for m in self.metrics],
            "log_concavity": self.log_concavity,
            "warnings": self.warnings,
            "lambdas": self.lambdas,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for m in self.metrics:
            d = m.to_dict()
            writer.writerow([repr(d[c]) if isinstance(d[c], float) else d[c] for c in CSV_COLUMNS])
        return buf.getvalue()


def analyze_spectrum(
    spec: SchmidtSpectrum,
    descriptor: dict,
    n_max: int | None = None,
    warnings: list[str] | None = None,
) -> AnalysisReport:
    warnings = list(warnings or [])
    M = spec.effective_mode_count
    if n_max is None:
        n_max = default_n_max(spec)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > M:
        warnings.append(
            f"n_max={n_max} exceeds the nonzero-mode count {M}; |N> is undefined for N > {M}, rows truncated"
        )
    rows, table = metrics_table(spec, n_max)
    cert = log_concavity_certificate(table)
    rel = log_concavity_relative(table)
    i = int(np.argmin(cert))
    summary = {
        "min": float(cert[i]),
        "argmin_N": i + 1,
        "min_relative": float(rel.min()),
        "non_negative": bool(np.all(rel >= -1e-12)),
    }
    return AnalysisReport(
        input=descriptor,
        purity=purity(spec),
        mode_count=M,
        lambdas=list(spec.lambdas),
        metrics=rows,
        log_concavity=summary,
        warnings=warnings,
    )
