"""Write example grid-wavefunction files for `coboson wavefunction`.

    python scripts/make_grid.py double-gaussian dg.json --ratio 10 --n 512
    python scripts/make_grid.py trapped pair.json --width 0.1 --n 801
"""

import argparse

from coboson.wavefunction import Grid, build_trapped_pair, double_gaussian, gaussian_profile, exponential_profile, save_grid_wavefunction


def main() -> None:
    p = argparse.ArgumentParser(description="write a grid wavefunction file")
    p.add_argument("kind", choices=["double-gaussian", "trapped"])
    p.add_argument("path")
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--ratio", type=float, default=10.0, help="sigma_+ / sigma_- (double-gaussian)")
    p.add_argument("--width", type=float, default=0.1, help="relative profile scale in units of b (trapped)")
    p.add_argument("--profile", choices=["gaussian", "exponential"], default="gaussian")
    p.add_argument("--sidecar", action="store_true", help="store amplitudes in a .bin file")
    args = p.parse_args()

    if args.kind == "double-gaussian":
        gw = double_gaussian(args.ratio, 1.0, Grid.symmetric(6 * args.ratio, args.n))
    else:
        profile = gaussian_profile if args.profile == "gaussian" else exponential_profile
        gw = build_trapped_pair(1.0, profile(args.width), Grid.symmetric(4.0, args.n))
    save_grid_wavefunction(gw, args.path, sidecar=args.sidecar)


if __name__ == "__main__":
    main()
