"""Trapped-hydrogen purity and supportable atom count over a range of trap sizes."""

import argparse
import warnings
from dataclasses import dataclass, field

from coboson.hydrogen import HydrogenTrapModel, RegimeWarning, hydrogen_purity_closed, hydrogen_purity_quadrature, max_atoms


@dataclass
class Config:
    b_over_a0: list = field(default_factory=lambda: [5, 10, 20, 50, 100, 1000])
    delta: float = 0.1


def main(cfg: Config) -> None:
    print(f"{'b/a0':>8} {'P (closed)':>14} {'P (quadrature)':>16} {'rel diff':>10} {'max atoms':>10}")
    for b in cfg.b_over_a0:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            m = HydrogenTrapModel(float(b))
            closed = hydrogen_purity_closed(m)
        quad = hydrogen_purity_quadrature(m)
        print(f"{b:>8g} {closed:>14.6e} {quad:>16.6e} {abs(quad / closed - 1):>10.1e} {max_atoms(m, cfg.delta):>10d}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--b-over-a0", type=float, nargs="+", default=Config().b_over_a0)
    p.add_argument("--delta", type=float, default=0.1)
    args = p.parse_args()
    main(Config(args.b_over_a0, args.delta))
