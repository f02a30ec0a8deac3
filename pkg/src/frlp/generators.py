"""Test-signal factory shared by the check registry, the CLI and the tests."""

from __future__ import annotations

import numpy as np

from .dyadic import haar_function, make_tree
from .frft import chirp_mul
from .grid import GridSpec, Signal, frac_param
from .oscillation import Cube, bmo_corpus, synthesize_atom

KINDS = ("gaussian", "chirp", "bump", "haar-atom", "bmo-corpus", "frft-atom", "random")


def gaussian(grid: GridSpec, sigma: float = 1.0, center: float = 0.0) -> Signal:
    """``exp(-pi |x - c|^2 / sigma^2)``."""
    r2 = sum((m - center) ** 2 for m in grid.mesh())
    return Signal(grid, np.exp(-np.pi * r2 / sigma**2) + 0j)


def chirp(grid: GridSpec, alpha: float, sigma: float = 1.0) -> Signal:
    """A Gaussian multiplied by the inverse chirp of angle ``alpha``."""
    return chirp_mul(gaussian(grid, sigma), frac_param(alpha), "inverse")


def bump(grid: GridSpec, width: float = 1.0) -> Signal:
    """``exp(-1 / (1 - |x/w|^2))`` inside the ball of radius ``w``, zero outside."""
    t = sum(m * m for m in grid.mesh()) / width**2
    v = np.zeros(grid.shape)
    inside = t < 1
    v[inside] = np.exp(-1.0 / (1.0 - t[inside]))
    return Signal(grid, v + 0j)


def haar_atom(grid: GridSpec, scale: int = 0, offset: int = 0, alpha=None) -> Signal:
    """The Haar function of the given interval, optionally twisted."""
    return haar_function(make_tree(grid), scale, offset, alpha)


def random_bandlimited(grid: GridSpec, rng: np.random.Generator, bandwidth: float | None = None,
                       width: float | None = None) -> Signal:
    """Complex Gaussian noise, low-passed to ``bandwidth`` and windowed by a Gaussian of ``width``."""
    bandwidth = grid.nyquist / 4 if bandwidth is None else bandwidth
    width = grid.L / 6 if width is None else width
    noise = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    spec = np.fft.fftn(noise)
    k = np.meshgrid(*[np.fft.fftfreq(grid.N, grid.dx)] * grid.dim, indexing="ij")
    spec[sum(c * c for c in k) > bandwidth**2] = 0
    v = np.fft.ifftn(spec)
    env = np.exp(-sum(m * m for m in grid.mesh()) / (2 * width**2))
    v = v * env
    return Signal(grid, v / np.sqrt(np.sum(np.abs(v) ** 2) * grid.cell_volume))


def random_signals(grid: GridSpec, count: int, seed: int, **kw) -> list[Signal]:
    rng = np.random.default_rng(seed)
    return [random_bandlimited(grid, rng, **kw) for _ in range(count)]


def frft_atom(grid: GridSpec, p: float = 1.0, q: float = 2.0, alpha=None, seed: int = 0,
              side: int | None = None, offset: int | None = None) -> Signal:
    """An atom on a centred dyadic cube, chirped back by ``M^{-1}``."""
    side = side or grid.N // 8
    offset = (grid.N - side) // 2 if offset is None else offset
    return synthesize_atom(grid, Cube((offset,) * grid.dim, side), p, q, alpha, seed)


def generate(kind: str, grid: GridSpec, seed: int = 0, alpha=None, **params):
    """Dispatch by name; ``bmo-corpus`` returns a list, every other kind one signal."""
    if kind == "gaussian":
        return gaussian(grid, **params)
    if kind == "chirp":
        return chirp(grid, 1.0 if alpha is None else alpha, **params)
    if kind == "bump":
        return bump(grid, **params)
    if kind == "haar-atom":
        return haar_atom(grid, alpha=alpha, **params)
    if kind == "bmo-corpus":
        return bmo_corpus(grid, seed=seed, alpha=alpha, **params)
    if kind == "frft-atom":
        return frft_atom(grid, alpha=alpha, seed=seed, **params)
    if kind == "random":
        return random_bandlimited(grid, np.random.default_rng(seed), **params)
    raise ValueError(f"unknown signal kind {kind!r}; choose from {', '.join(KINDS)}")
