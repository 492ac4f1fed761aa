"""Bosonic character of two-fermion composites from their Schmidt spectra."""

__version__ = "0.1.0"

from .chi import (  # noqa: E402
    BosonicMetrics,
    ChiTable,
    UndefinedStateError,
    alpha,
    bounds,
    chi_ratio,
    chi_table,
    commutator_expectation,
    epsilon_norm,
    log_concavity_certificate,
    max_occupancy,
)
from .spectrum import SchmidtSpectrum, from_raw, geometric, purity, random_dirichlet, uniform  # noqa: E402
