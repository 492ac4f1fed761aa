"""Where does the chi-ratio sit between 1 - NP and 1 - P?

Draws Dirichlet spectra and writes, per (spectrum, N), the ratio's position
inside the purity window: 0 at the lower bound, 1 at the upper bound.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from coboson.chi import bounds, chi_ratio, chi_table
from coboson.spectrum import purity
from coboson.verify import random_spectra


@dataclass
class Config:
    spectra: int = 200
    m_max: int = 100
    n_max: int = 20
    seed: int = 1


def main(cfg: Config, out) -> None:
    writer = csv.writer(out)
    writer.writerow(["M", "purity", "N", "NP", "chi_ratio", "lower", "upper", "position"])
    for spec in random_spectra(cfg.spectra, cfg.m_max, cfg.seed, m_min=2):
        table = chi_table(spec, min(cfg.n_max, spec.M) + 1)
        P = purity(spec)
        for N in range(2, min(cfg.n_max, spec.M - 1) + 1):
            r = chi_ratio(table, N)
            lo, hi = bounds(spec, N)
            writer.writerow([spec.M, P, N, N * P, r, lo, hi, (r - lo) / (hi - lo)])


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, value in vars(Config()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(value), default=value)
    main(Config(**vars(p.parse_args())), sys.stdout)
