"""Exit criteria, one test per criterion, tolerances fixed here."""

import math
import time
import warnings

import numpy as np
import pytest

from coboson.chi import bounds, chi_ratio, chi_table, commutator_expectation, epsilon_norm_unclamped
from coboson.fock import CompositeOperators, chi_by_enumeration
from coboson.hydrogen import (
    HydrogenTrapModel,
    RegimeWarning,
    hydrogen_purity_closed,
    hydrogen_purity_quadrature,
    overlap_sq_integral,
)
from coboson.spectrum import purity, uniform
from coboson.verify import random_spectra
from coboson.wavefunction import Grid, GridWavefunction, double_gaussian, double_gaussian_purity, schmidt_from_grid

CORPUS_SIZE = 1000
CORPUS_SEED = 20240601


@pytest.fixture(scope="module")
def corpus():
    start = time.perf_counter()
    items = []
    for spec in random_spectra(CORPUS_SIZE, 200, CORPUS_SEED, m_min=2):
        items.append((spec, chi_table(spec, spec.M + 1)))
    return items, time.perf_counter() - start


def test_sandwich_bound(corpus, record_property):
    items, build_time = corpus
    start = time.perf_counter()
    checked, worst = 0, 0.0
    for spec, table in items:
        for N in range(1, spec.M + 1):
            r = chi_ratio(table, N)
            lo, hi = bounds(spec, N)
            scale = max(abs(lo), abs(hi), r)
            # exceedance relative to the magnitude of the quantities compared
            excess = max(lo - r, r - hi, 0.0) / scale if scale else 0.0
            worst = max(worst, excess)
            checked += 1
    elapsed = build_time + time.perf_counter() - start
    record_property("criterion", "1 sandwich 1-NP <= ratio <= 1-P")
    record_property("detail", f"{checked} (spectrum, N) pairs, worst relative excess {worst:.2e} (tol 1e-10), {elapsed:.1f}s (budget 60s)")
    assert worst <= 1e-10
    assert elapsed < 60


def test_n1_equality(corpus, record_property):
    items, _ = corpus
    worst = 0.0
    for spec, table in items:
        r, one_minus_p = chi_ratio(table, 1), bounds(spec, 1)[1]
        worst = max(worst, abs(r - one_minus_p) / max(r, one_minus_p))
    record_property("criterion", "2 N=1 equality chi_2/chi_1 = 1-P")
    record_property("detail", f"worst relative deviation {worst:.2e} (tol 1e-12)")
    assert worst <= 1e-12


def test_uniform_achievability(record_property):
    worst_ratio, worst_eps = 0.0, 0.0
    for M in (2, 4, 10, 100):
        table = chi_table(uniform(M), M + 1)
        for N in range(1, M):
            expected = 1 - N / M
            worst_ratio = max(worst_ratio, abs(chi_ratio(table, N) - expected) / expected)
            worst_eps = max(worst_eps, abs(epsilon_norm_unclamped(table, N)))
    record_property("criterion", "3 uniform spectra attain 1-NP, epsilon = 0")
    record_property("detail", f"worst ratio rel. error {worst_ratio:.2e}, worst |epsilon| {worst_eps:.2e} (tol 1e-12)")
    assert worst_ratio <= 1e-12
    assert worst_eps <= 1e-12


def test_log_concavity(corpus, record_property):
    items, _ = corpus
    worst = math.inf
    for spec, table in items:
        for N in range(1, spec.M + 1):
            # (chi_N^2 - chi_{N+1} chi_{N-1}) / chi_N^2
            rel = 1.0 - table.ratio(N + 1, N) / table.ratio(N, N - 1)
            worst = min(worst, rel)
    record_property("criterion", "4 chi_N^2 - chi_{N+1} chi_{N-1} >= 0")
    record_property("detail", f"smallest certificate / chi_N^2 = {worst:.3e} (floor -1e-12)")
    assert worst >= -1e-12


def test_oracle_equivalence(record_property):
    chi_dev = eps_dev = comm_dev = 0.0
    spectra = list(random_spectra(100, 6, 7, m_min=1))
    for spec in spectra:
        table = chi_table(spec, spec.M + 1)
        ops = CompositeOperators(spec)
        for N in range(spec.M + 1):
            vals = [table.chi(N), chi_by_enumeration(spec, N), ops.chi(N)]
            for a, b in ((0, 1), (0, 2), (1, 2)):
                chi_dev = max(chi_dev, abs(vals[a] - vals[b]) / max(vals[a], vals[b]))
        for N in range(1, spec.M + 1):
            eps_dev = max(eps_dev, abs(ops.epsilon_norm(N) - epsilon_norm_unclamped(table, N)))
            comm_dev = max(comm_dev, abs(ops.commutator_expectation(N) - commutator_expectation(table, N)))
    record_property("criterion", "5 DP = enumeration = Fock matrices")
    record_property(
        "detail",
        f"{len(spectra)} spectra; chi rel. dev {chi_dev:.2e} (1e-12), epsilon dev {eps_dev:.2e} (1e-10), "
        f"commutator dev {comm_dev:.2e} (1e-12)",
    )
    assert chi_dev <= 1e-12
    assert eps_dev <= 1e-10
    assert comm_dev <= 1e-12


def test_hydrogen_example(record_property):
    worst = 0.0
    for b in (5.0, 10.0, 20.0, 50.0):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            model = HydrogenTrapModel(b)
        closed = 33 / (4 * math.sqrt(2 * math.pi)) / b**3
        assert hydrogen_purity_closed(model) == pytest.approx(closed, rel=1e-15)
        worst = max(worst, abs(hydrogen_purity_quadrature(model) / closed - 1))
    overlap, _ = overlap_sq_integral(HydrogenTrapModel(10.0))
    overlap_dev = abs(overlap / (33 * math.pi / 2) - 1)
    p10 = hydrogen_purity_quadrature(HydrogenTrapModel(10.0))
    record_property("criterion", "6 hydrogen purity 33/(4 sqrt(2 pi)) (a0/b)^3")
    record_property(
        "detail",
        f"quadrature vs closed worst rel. {worst:.2e} (1e-8); overlap integral rel. {overlap_dev:.2e} (1e-8); P(b=10a0)={p10:.4e}",
    )
    assert worst <= 1e-8
    assert overlap_dev <= 1e-8
    assert round(p10, 5) == 3.29e-3


def test_grid_svd_path(record_property):
    g = Grid.symmetric(6.0, 200)
    product = GridWavefunction.tabulate(lambda x, y: np.exp(-x * x / 2) * (1 + y * y) * np.exp(-y * y), g, g)
    p_product = purity(schmidt_from_grid(product))
    dg = double_gaussian(10.0, 1.0, Grid.symmetric(60.0, 512))
    p_dg = purity(schmidt_from_grid(dg))
    target = double_gaussian_purity(10.0, 1.0)
    record_property("criterion", "7 grid SVD: rank-1 and double Gaussian")
    record_property("detail", f"|P_product - 1| = {abs(p_product - 1):.1e} (1e-10); |P_dg - 20/101| = {abs(p_dg - target):.1e} (1e-4)")
    assert abs(p_product - 1) <= 1e-10
    assert abs(p_dg - target) <= 1e-4


def test_underflow_robustness(record_property):
    M, N = 1000, 500
    log_chi = chi_table(uniform(M), N + 1).log_chi[N]
    exact = math.lgamma(M + 1) - math.lgamma(M - N + 1) - N * math.log(M)
    rel = abs(log_chi - exact) / abs(exact)
    record_property("criterion", "8 uniform M=1000, N=500 in log space")
    record_property("detail", f"log chi_500 = {log_chi:.12f}, closed form {exact:.12f}, rel. {rel:.1e} (1e-9)")
    assert np.isfinite(log_chi)
    assert rel <= 1e-9

