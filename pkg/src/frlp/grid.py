"""Periodic sampling grids, sampled signals and spectra, angle descriptors.

Everything lives on the torus ``[-L/2, L/2)^dim`` sampled at ``N`` points per
axis.  Spectra are stored in centered (fftshift) order.  A spectrum also
carries a ``scale`` factor: its samples sit at ``m * scale / L`` rather than
``m / L``.  Fractional transforms produce ``scale = |sin alpha|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AngleSingular, GridError, GridMismatch, OddSampleCount

SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid.

    Parameters
    ----------
    dim : int
        Number of axes, 1 or 2.
    L : float
        Physical period per axis.
    N : int
        Samples per axis, even and at least 8.
    """

    dim: int
    L: float
    N: int

    @property
    def dx(self) -> float:
        return self.L / self.N

    @property
    def dxi(self) -> float:
        return 1.0 / self.L

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.dim

    @property
    def size(self) -> int:
        return self.N**self.dim

    @property
    def cell_volume(self) -> float:
        return self.dx**self.dim

    def coords(self) -> np.ndarray:
        """Sample positions ``x_k = -L/2 + k dx`` along one axis."""
        return -self.L / 2 + np.arange(self.N) * self.dx

    def freqs(self) -> np.ndarray:
        """Centered frequencies ``m / L`` along one axis."""
        return np.arange(-self.N // 2, self.N // 2) * self.dxi

    def index_of(self, x: float) -> int:
        return int(round((x + self.L / 2) / self.dx))

    def coord_of(self, k: int) -> float:
        return -self.L / 2 + k * self.dx

    def mesh(self) -> tuple[np.ndarray, ...]:
        """Coordinate arrays broadcast to ``shape`` (ij indexing)."""
        x = self.coords()
        return tuple(np.meshgrid(*([x] * self.dim), indexing="ij"))

    def radius_sq(self) -> np.ndarray:
        """``|x|^2`` on the physical grid."""
        x2 = self.coords() ** 2
        if self.dim == 1:
            return x2
        return x2[:, None] + x2[None, :]

    def freq_mesh(self, scale: float = 1.0) -> tuple[np.ndarray, ...]:
        xi = self.freqs() * scale
        return tuple(np.meshgrid(*([xi] * self.dim), indexing="ij"))

    def freq_radius(self, scale: float = 1.0) -> np.ndarray:
        """``|xi|`` on the centered frequency grid."""
        xi2 = (self.freqs() * scale) ** 2
        if self.dim == 1:
            return np.sqrt(xi2)
        return np.sqrt(xi2[:, None] + xi2[None, :])

    @property
    def nyquist(self) -> float:
        return 1.0 / (2.0 * self.dx)


def make_grid(dim: int, L: float, N: int) -> GridSpec:
    """Validate parameters and build a :class:`GridSpec`."""
    if dim not in (1, 2):
        raise GridError(f"dim must be 1 or 2, got {dim}")
    if not (isinstance(N, (int, np.integer)) and N == int(N)):
        raise GridError(f"N must be an integer, got {N!r}")
    N = int(N)
    if N % 2:
        raise OddSampleCount(f"N must be even, got {N}")
    if N < 8:
        raise GridError(f"N must be at least 8, got {N}")
    if not (L > 0 and math.isfinite(L)):
        raise GridError(f"L must be positive and finite, got {L}")
    return GridSpec(int(dim), float(L), N)


def _check_values(grid: GridSpec, values) -> np.ndarray:
    arr = np.asarray(values, dtype=complex)
    if arr.size != grid.size:
        raise GridMismatch(f"expected {grid.size} samples, got {arr.size}")
    arr = arr.reshape(grid.shape)
    if not np.all(np.isfinite(arr)):
        raise GridError("signal contains non-finite samples")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex samples on the physical grid."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.grid, self.values))

    def like(self, values) -> "Signal":
        return Signal(self.grid, values)

    def __add__(self, other: "Signal") -> "Signal":
        same_grid(self, other)
        return self.like(self.values + other.values)

    def __sub__(self, other: "Signal") -> "Signal":
        same_grid(self, other)
        return self.like(self.values - other.values)

    def __mul__(self, c) -> "Signal":
        return self.like(self.values * c)

    __rmul__ = __mul__

    def inner(self, other: "Signal") -> complex:
        """``<self, other> = sum self * conj(other) * dx^dim``."""
        same_grid(self, other)
        return complex(np.vdot(other.values, self.values) * self.grid.cell_volume)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Complex samples at centered frequencies ``m * scale / L``.

    ``scale`` is 1 for the ordinary Fourier transform and ``|sin alpha|``
    for a fractional one.
    """

    grid: GridSpec
    values: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.grid, self.values))

    @property
    def cell_volume(self) -> float:
        return (self.scale / self.grid.L) ** self.grid.dim

    def freqs(self) -> np.ndarray:
        return self.grid.freqs() * self.scale

    def as_signal(self) -> Signal:
        """View the spectrum as a signal on its own sampling lattice."""
        g = GridSpec(self.grid.dim, self.grid.N * self.scale / self.grid.L, self.grid.N)
        return Signal(g, self.values)


def same_grid(a, b) -> None:
    if a.grid != b.grid:
        raise GridMismatch(f"grid mismatch: {a.grid} vs {b.grid}")


@dataclass(frozen=True)
class FracParam:
    """An angle away from the multiples of pi, with its descriptors."""

    alpha: float
    s: float = field(init=False)
    kappa: float = field(init=False)
    D: float = field(init=False)
    sign: int = field(init=False)

    def __post_init__(self):
        a = float(self.alpha)
        sa = math.sin(a)
        if not math.isfinite(a) or abs(sa) <= SINGULAR_TOL:
            raise AngleSingular(f"|sin(alpha)| <= {SINGULAR_TOL} at alpha={a!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "s", abs(sa))
        object.__setattr__(self, "kappa", math.cos(a) / sa)
        object.__setattr__(self, "D", abs(1.0 - abs(sa)) + abs(math.cos(a) / sa))
        object.__setattr__(self, "sign", 1 if sa > 0 else -1)

    @property
    def sin(self) -> float:
        return self.sign * self.s

    @property
    def rho(self) -> float:
        """Order ``rho`` with ``alpha = pi * rho / 2``."""
        return 2.0 * self.alpha / math.pi

    def descriptors(self) -> dict:
        return {"alpha": self.alpha, "s": self.s, "kappa": self.kappa, "D": self.D}


def frac_param(alpha) -> FracParam:
    if isinstance(alpha, FracParam):
        return alpha
    return FracParam(alpha)


def effective_radius(p: FracParam, R: float) -> float:
    """Classical-frequency radius ``R / s`` matched by an angle-side radius ``R``."""
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    return R / p.s


def _abs_values(f) -> tuple[np.ndarray, float]:
    if isinstance(f, Spectrum):
        return np.abs(f.values), f.cell_volume
    return np.abs(f.values), f.grid.cell_volume


def lp_norm(f, p: float) -> float:
    """Riemann-sum ``L^p`` quasi-norm of a signal or spectrum.

    ``p = inf`` gives the sample maximum.
    """
    a, w = _abs_values(f)
    if p == math.inf:
        return float(a.max())
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    if p == 2:
        return math.sqrt(float(np.sum(a * a)) * w)
    if p == 1:
        return float(np.sum(a)) * w
    return (float(np.sum(a**p)) * w) ** (1.0 / p)


def weak_norm_estimate(f, p: float) -> float:
    """``sup_lambda lambda * |{|f| > lambda}|^{1/p}`` scanned over sample levels.

    The distribution function is a step function that only changes at sample
    moduli, so taking lambda just below each distinct modulus attains the sup.
    """
    if not 1 <= p < math.inf:
        raise ValueError(f"p must lie in [1, inf), got {p}")
    a, w = _abs_values(f)
    a = np.sort(a.ravel())[::-1]
    # with lambda -> a[i]^-, the level set has at least i+1 samples
    counts = np.arange(1, a.size + 1)
    vals = a * (counts * w) ** (1.0 / p)
    return float(vals.max()) if a.size else 0.0
