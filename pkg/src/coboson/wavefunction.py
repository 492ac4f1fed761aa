"""Two-particle amplitudes on product grids and their Schmidt spectra."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .spectrum import DEFAULT_ZERO_THRESHOLD, SchmidtSpectrum, from_raw

NORM_TOL = 1e-6
MIN_POINTS_PER_SCALE = 8
GRID_FORMAT = "coboson-grid/1"

Profile = Callable[[np.ndarray], np.ndarray]


class GridError(ValueError):
    """Malformed, unnormalizable, or under-resolved grid input."""


@dataclass(frozen=True)
class Grid:
    """Uniform 1-D grid of ``n`` points from ``start`` to ``stop`` inclusive."""

    start: float
    stop: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise GridError("a grid needs at least 2 points")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or self.stop <= self.start:
            raise GridError(f"bad grid extent [{self.start}, {self.stop}]")

    @classmethod
    def symmetric(cls, half_width: float, n: int) -> "Grid":
        return cls(-half_width, half_width, n)

    @property
    def spacing(self) -> float:
        return (self.stop - self.start) / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.n)

    def to_dict(self) -> dict:
        return {"start": self.start, "stop": self.stop, "n": self.n}


@dataclass(frozen=True)
class GridWavefunction:
    """Psi(x_A, x_B) sampled as ``amplitudes[i_A, i_B]``.

    Normalized so that sum |Psi|^2 h_A h_B = 1 to within 1e-6.
    """

    amplitudes: np.ndarray
    grid_a: Grid
    grid_b: Grid

    def __post_init__(self):
        amps = self.amplitudes
        if amps.shape != (self.grid_a.n, self.grid_b.n):
            raise GridError(
                f"amplitude shape {amps.shape} does not match grids ({self.grid_a.n}, {self.grid_b.n})"
            )
        if not np.all(np.isfinite(amps)):
            raise GridError("amplitudes contain non-finite values")
        if abs(self.norm - 1.0) > NORM_TOL:
            raise GridError(f"wavefunction norm {self.norm!r} differs from 1 by more than {NORM_TOL}")

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid_a.spacing * self.grid_b.spacing)

    @classmethod
    def from_samples(cls, amplitudes, grid_a: Grid, grid_b: Grid) -> "GridWavefunction":
        """Wrap raw samples, rescaling them to unit norm."""
        amps = np.asarray(amplitudes)
        if not np.iscomplexobj(amps):
            amps = amps.astype(float)
        if not np.all(np.isfinite(amps)):
            raise GridError("amplitudes contain non-finite values")
        weight = float(np.sum(np.abs(amps) ** 2)) * grid_a.spacing * grid_b.spacing
        if weight == 0.0:
            raise GridError("wavefunction is identically zero and cannot be normalized")
        return cls(amps / math.sqrt(weight), grid_a, grid_b)

    @classmethod
    def tabulate(cls, func: Callable[[np.ndarray, np.ndarray], np.ndarray], grid_a: Grid, grid_b: Grid):
        xa, xb = np.meshgrid(grid_a.points, grid_b.points, indexing="ij")
        return cls.from_samples(func(xa, xb), grid_a, grid_b)


def schmidt_from_grid(
    gw: GridWavefunction, zero_threshold: float = DEFAULT_ZERO_THRESHOLD
) -> SchmidtSpectrum:
    """Schmidt spectrum from the singular values of the sampled amplitude matrix."""
    scaled = gw.amplitudes * math.sqrt(gw.grid_a.spacing * gw.grid_b.spacing)
    s = np.linalg.svd(scaled, compute_uv=False)
    weights = s**2
    if not np.any(weights > 0):
        raise GridError("amplitude matrix is zero")
    return from_raw(weights / weights.sum(), zero_threshold)


def gaussian_profile(width: float) -> Profile:
    """Normalized 1-D Gaussian amplitude with |phi|^2 standard deviation width/sqrt(2)."""

    def phi(x):
        return np.exp(-(x**2) / (2 * width**2)) / (math.pi ** 0.25 * math.sqrt(width))

    phi.scale = width
    return phi


def exponential_profile(decay: float) -> Profile:
    """1-D analogue of a 1s orbital: exp(-|x|/decay), normalized."""

    def phi(x):
        return np.exp(-np.abs(x) / decay) / math.sqrt(decay)

    phi.scale = decay
    return phi


def build_trapped_pair(
    b: float,
    phi: Profile,
    grid_a: Grid,
    grid_b: Grid | None = None,
    phi_scale: float | None = None,
) -> GridWavefunction:
    """Tabulate Psi(R, r) = psi(R) phi(r - R) with a Gaussian trap ground state psi.

    ``grid_a`` samples the heavy particle coordinate R, ``grid_b`` the light
    one (defaults to ``grid_a``). The grids must resolve ``phi_scale`` with
    at least 8 points; ``gaussian_profile`` and ``exponential_profile`` carry
    their own scale.
    """
    if b <= 0:
        raise GridError("trap width b must be positive")
    grid_b = grid_a if grid_b is None else grid_b
    scale = phi_scale if phi_scale is not None else getattr(phi, "scale", None)
    if scale is None:
        raise GridError("phi_scale is required for a profile without a .scale attribute")
    for name, g in (("grid_a", grid_a), ("grid_b", grid_b)):
        if g.spacing > scale / MIN_POINTS_PER_SCALE:
            raise GridError(
                f"{name} spacing {g.spacing:.4g} under-resolves the relative profile "
                f"(scale {scale:.4g} needs spacing <= {scale / MIN_POINTS_PER_SCALE:.4g})"
            )
    if grid_a.stop - grid_a.start < 6 * b:
        raise GridError(f"grid_a spans {grid_a.stop - grid_a.start:.4g}; needs at least 6b = {6 * b:.4g}")
    trap = gaussian_profile(b)
    return GridWavefunction.tabulate(lambda R, r: trap(R) * phi(r - R), grid_a, grid_b)


def double_gaussian(sigma_plus: float, sigma_minus: float, grid_a: Grid, grid_b: Grid | None = None):
    """exp(-(x+y)^2 / 4 sigma_+^2 - (x-y)^2 / 4 sigma_-^2) on a product grid."""
    grid_b = grid_a if grid_b is None else grid_b
    return GridWavefunction.tabulate(
        lambda x, y: np.exp(-((x + y) ** 2) / (4 * sigma_plus**2) - (x - y) ** 2 / (4 * sigma_minus**2)),
        grid_a,
        grid_b,
    )


def double_gaussian_purity(sigma_plus: float, sigma_minus: float) -> float:
    return 2 * sigma_plus * sigma_minus / (sigma_plus**2 + sigma_minus**2)


# -- file format ----------------------------------------------------------


def _grid_from_header(header: dict, key: str) -> Grid:
    if key not in header:
        raise GridError(f"grid header is missing field '{key}'")
    spec = header[key]
    if not isinstance(spec, dict):
        raise GridError(f"field '{key}' must be an object with start, stop, n")
    for field in ("start", "stop", "n"):
        if field not in spec:
            raise GridError(f"grid header is missing field '{key}.{field}'")
    return Grid(float(spec["start"]), float(spec["stop"]), int(spec["n"]))


def load_grid_wavefunction(path: str | Path) -> GridWavefunction:
    """Read the JSON grid format; amplitudes inline or in a sidecar binary.

    See the README for the field list. The sidecar path is resolved relative
    to the JSON file.
    """
    path = Path(path)
    try:
        header = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise GridError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(header, dict):
        raise GridError("grid file must hold a JSON object")
    fmt = header.get("format")
    if fmt is not None and fmt != GRID_FORMAT:
        raise GridError(f"unsupported grid format {fmt!r}")
    grid_a = _grid_from_header(header, "grid_a")
    grid_b = _grid_from_header(header, "grid_b")
    layout = header.get("layout", "complex-pairs")
    if layout not in ("complex-pairs", "real"):
        raise GridError(f"unknown layout {layout!r}; use 'complex-pairs' or 'real'")
    width = 2 if layout == "complex-pairs" else 1
    count = grid_a.n * grid_b.n

    if "amplitudes" in header:
        flat = np.asarray(header["amplitudes"], dtype=float).ravel()
    elif "data_file" in header:
        data_path = path.parent / header["data_file"]
        if not data_path.exists():
            raise GridError(f"data_file {str(data_path)!r} not found")
        flat = np.fromfile(data_path, dtype="<f8")
    else:
        raise GridError("grid header is missing field 'amplitudes' (or 'data_file')")

    if flat.size != count * width:
        raise GridError(f"expected {count * width} float64 values for a {grid_a.n}x{grid_b.n} grid, got {flat.size}")
    if width == 2:
        pairs = flat.reshape(count, 2)
        amps = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(grid_a.n, grid_b.n)
    else:
        amps = flat.reshape(grid_a.n, grid_b.n)
    return GridWavefunction.from_samples(amps, grid_a, grid_b)


def save_grid_wavefunction(gw: GridWavefunction, path: str | Path, *, sidecar: bool = False) -> Path:
    """Write ``gw`` in the JSON grid format (with a ``.bin`` sidecar if asked)."""
    path = Path(path)
    amps = np.asarray(gw.amplitudes, dtype=complex)
    pairs = np.stack([amps.real.ravel(), amps.imag.ravel()], axis=1)
    header = {
        "format": GRID_FORMAT,
        "grid_a": gw.grid_a.to_dict(),
        "grid_b": gw.grid_b.to_dict(),
        "layout": "complex-pairs",
    }
    if sidecar:
        data_path = path.with_suffix(".bin")
        pairs.astype("<f8").tofile(data_path)
        header["data_file"] = data_path.name
    else:
        header["amplitudes"] = pairs.ravel().tolist()
    path.write_text(json.dumps(header))
    return path
