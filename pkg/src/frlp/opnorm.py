"""Deterministic power iteration for L2 operator norms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import GridSpec, Signal

SEED = 0x5EED
ITERATIONS = 200


@dataclass(frozen=True)
class NormEstimate:
    """Result of power iteration on ``T* T``.

    ``norm`` is the square root of the final Rayleigh quotient and
    ``increment`` the change of the quotient over the last step.
    """

    norm: float
    rayleigh: float
    increment: float
    iterations: int


def seeded_start(grid: GridSpec, seed: int = SEED) -> Signal:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    return Signal(grid, v / np.linalg.norm(v))


def operator_norm(
    apply: Callable[[Signal], Signal],
    adjoint: Callable[[Signal], Signal],
    grid: GridSpec,
    iterations: int = ITERATIONS,
    seed: int = SEED,
    start_map: Callable[[Signal], Signal] | None = None,
) -> NormEstimate:
    """Estimate ``||T||_{2->2}`` by power iteration on ``T* T``.

    Parameters
    ----------
    apply, adjoint : callable
        ``T`` and its L2 adjoint.
    start_map : callable, optional
        Applied to the seeded start vector.  Passing the inverse of a unitary
        ``U`` makes the iterates of ``U^-1 A U`` track those of ``A`` exactly.
    """
    x = seeded_start(grid, seed)
    if start_map is not None:
        x = start_map(x)
    v = x.values / np.linalg.norm(x.values)
    lam_prev = lam = 0.0
    for _ in range(iterations):
        y = adjoint(apply(Signal(grid, v))).values
        lam_prev, lam = lam, float(np.vdot(v, y).real)
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return NormEstimate(0.0, 0.0, 0.0, iterations)
        v = y / ny
    return NormEstimate(math.sqrt(max(lam, 0.0)), lam, abs(lam - lam_prev), iterations)
