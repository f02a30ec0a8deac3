"""Dyadic martingale operators, the Haar system and their chirp-twisted versions.

Scale ``k`` means cells of physical length ``2^-k``.  The coarsest scale is
the whole period, so ``L`` must be a power of two; cells must also hold a
whole number of samples.  Twisted operators are ``M^{-1} T M``; the twisted
Haar functions are ``M^{-1} h_I``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimUnsupported, ScaleMisaligned
from .frft import chirp_mul
from .grid import GridSpec, Signal, frac_param
from .littlewood_paley import DyadicBank, lp_block
from .opnorm import operator_norm


def _log2_exact(x: float) -> int | None:
    k = math.log2(x)
    r = round(k)
    return r if abs(k - r) < 1e-12 else None


@dataclass(frozen=True)
class DyadicTree:
    """Scales ``k_min..k_max``; ``k_min`` is the whole period."""

    grid: GridSpec
    k_min: int
    k_max: int

    def cell_samples(self, k: int) -> int:
        if not self.k_min <= k <= self.k_max:
            raise ScaleMisaligned(f"scale {k} outside [{self.k_min}, {self.k_max}]")
        return self.grid.N >> (k - self.k_min)

    @property
    def scales(self) -> list[int]:
        return list(range(self.k_min, self.k_max + 1))

    @property
    def covers_samples(self) -> bool:
        return self.cell_samples(self.k_max) == 1


def make_tree(grid: GridSpec, k_max: int | None = None) -> DyadicTree:
    """Tree from the whole period down to ``k_max`` (default: single samples)."""
    k_min = _log2_exact(grid.L)
    if k_min is None:
        raise ScaleMisaligned(f"L = {grid.L} is not a power of two")
    k_min = -k_min
    depth = _log2_exact(grid.N)
    if depth is None:
        raise ScaleMisaligned(f"N = {grid.N} is not a power of two")
    finest = k_min + depth
    if k_max is None:
        k_max = finest
    if not k_min <= k_max <= finest:
        raise ScaleMisaligned(f"k_max = {k_max} outside [{k_min}, {finest}]")
    return DyadicTree(grid, k_min, int(k_max))


def _expand(means: np.ndarray, b: int, dim: int) -> np.ndarray:
    out = np.repeat(means, b, axis=0)
    if dim == 2:
        out = np.repeat(out, b, axis=1)
    return out


def _expect_raw(v: np.ndarray, tree: DyadicTree, k: int) -> np.ndarray:
    b = tree.cell_samples(k)
    if b == 1:
        return v.copy()
    return _expand(kernels.block_means(v, b), b, tree.grid.dim)


def _twist(f: Signal, p):
    return f if p is None else chirp_mul(f, p)


def _untwist(g: Signal, p):
    return g if p is None else chirp_mul(g, p, "inverse")


def expectation(f: Signal, tree: DyadicTree, k: int, p=None) -> Signal:
    """Cell averages at scale ``k``; twisted by the chirp when ``p`` is given."""
    g = _twist(f, p)
    return _untwist(g.like(_expect_raw(g.values, tree, k)), p)


def difference(f: Signal, tree: DyadicTree, k: int, p=None) -> Signal:
    """``E_k f - E_{k-1} f`` for ``k_min < k <= k_max``."""
    if k <= tree.k_min:
        raise ScaleMisaligned(f"difference needs k > k_min = {tree.k_min}")
    g = _twist(f, p)
    d = _expect_raw(g.values, tree, k) - _expect_raw(g.values, tree, k - 1)
    return _untwist(g.like(d), p)


def martingale_pieces(f: Signal, tree: DyadicTree, p=None) -> dict:
    """Coarsest mean, all differences and the fine remainder ``f - E_{k_max} f``.

    Their sum is ``f``.
    """
    g = _twist(f, p)
    means = {k: _expect_raw(g.values, tree, k) for k in tree.scales}
    pieces = {"mean": means[tree.k_min], "rest": g.values - means[tree.k_max]}
    pieces["diff"] = {k: means[k] - means[k - 1] for k in tree.scales[1:]}
    out = {"mean": _untwist(g.like(pieces["mean"]), p),
           "rest": _untwist(g.like(pieces["rest"]), p),
           "diff": {k: _untwist(g.like(v), p) for k, v in pieces["diff"].items()}}
    return out


def dyadic_square_function(f: Signal, tree: DyadicTree, p=None) -> Signal:
    """Pointwise ``(sum_k |D_k f|^2)^{1/2}`` over ``k_min < k <= k_max``."""
    g = _twist(f, p)
    prev = _expect_raw(g.values, tree, tree.k_min)
    acc = np.zeros(f.grid.shape)
    for k in tree.scales[1:]:
        cur = _expect_raw(g.values, tree, k)
        acc = acc + np.abs(cur - prev) ** 2
        prev = cur
    return f.like(np.sqrt(acc))


# -- Haar system ------------------------------------------------------------------


@dataclass
class HaarCoefficients:
    """``<f, h_I>`` for every interval ``I`` at scales ``k_min..k_max-1``.

    ``details[l][i]`` belongs to the ``i``-th interval (from the left) at
    scale ``k_min + l``.  ``scaling`` is ``<f, L^{-1/2}>``.
    """

    tree: DyadicTree
    alpha: float | None
    scaling: complex
    details: list

    def energy(self) -> float:
        return float(abs(self.scaling) ** 2 + sum(np.sum(np.abs(d) ** 2) for d in self.details))

    def coefficient(self, scale: int, offset: int) -> complex:
        return complex(self.details[scale - self.tree.k_min][offset])

    def rows(self) -> list[tuple[int, int, float, float]]:
        """``(scale, offset, re, im)``; the scaling term has offset ``-1``."""
        out = [(self.tree.k_min, -1, self.scaling.real, self.scaling.imag)]
        for l, d in enumerate(self.details):
            out.extend((self.tree.k_min + l, i, float(c.real), float(c.imag))
                       for i, c in enumerate(d))
        return out

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("scale,offset,re,im\n")
            for s, o, re, im in self.rows():
                fh.write(f"{s},{o},{re!r},{im!r}\n")


def _need_1d(tree: DyadicTree):
    if tree.grid.dim != 1:
        raise DimUnsupported("the Haar system is one-dimensional")


def haar_transform(f: Signal, tree: DyadicTree, p=None) -> HaarCoefficients:
    """Coefficients against ``h_I`` (or ``M^{-1} h_I``) down to the tree's finest cells."""
    _need_1d(tree)
    g = _twist(f, p)
    b = tree.cell_samples(tree.k_max)
    mu = g.values if b == 1 else kernels.block_means(g.values, b)
    cell = b * tree.grid.dx
    c = kernels.haar_analysis(mu) * math.sqrt(cell)
    details = [c[2**l:2 ** (l + 1)].copy() for l in range(tree.k_max - tree.k_min)]
    alpha = None if p is None else frac_param(p).alpha
    return HaarCoefficients(tree, alpha, complex(c[0]), details)


def inverse_haar(coef: HaarCoefficients) -> Signal:
    tree = coef.tree
    b = tree.cell_samples(tree.k_max)
    cell = b * tree.grid.dx
    flat = np.concatenate([[coef.scaling], *coef.details]) / math.sqrt(cell)
    mu = kernels.haar_synthesis(flat)
    g = Signal(tree.grid, np.repeat(mu, b))
    return g if coef.alpha is None else chirp_mul(g, coef.alpha, "inverse")


def haar_function(tree: DyadicTree, scale: int, offset: int, p=None) -> Signal:
    """``h_I`` for the ``offset``-th interval at ``scale``; ``offset=-1`` is the constant."""
    _need_1d(tree)
    g = tree.grid
    v = np.zeros(g.N)
    if offset == -1:
        v[:] = g.L**-0.5
    else:
        n = tree.cell_samples(scale)
        if n < 2 or not 0 <= offset < g.N // n:
            raise ScaleMisaligned(f"no Haar function at scale {scale}, offset {offset}")
        length = n * g.dx
        start = offset * n
        v[start:start + n // 2] = length**-0.5
        v[start + n // 2:start + n] = -(length**-0.5)
    return _untwist(Signal(g, v), p)


def haar_system(tree: DyadicTree, p=None) -> list[Signal]:
    """Constant plus every ``h_I`` down to the finest cells, in coefficient order."""
    out = [haar_function(tree, tree.k_min, -1, p)]
    for k in tree.scales[:-1]:
        count = tree.grid.N // tree.cell_samples(k)
        out.extend(haar_function(tree, k, i, p) for i in range(count))
    return out


# -- mixed probe ---------------------------------------------------------------------


@dataclass
class ProbeRow:
    j: int
    k: int
    twisted: float
    classical: float

    @property
    def gap(self) -> float:
        return abs(self.twisted - self.classical) / max(self.classical, 1e-300)


@dataclass
class ProbeTable:
    rows: list
    distances: list
    per_distance: list
    slope: float

    @property
    def max_gap(self) -> float:
        return max(r.gap for r in self.rows)


def default_pairs(j_range=(-2, 4), k_range=(-3, 6), max_distance: int = 6):
    return [(j, k) for j in range(j_range[0], j_range[1] + 1)
            for k in range(k_range[0], k_range[1] + 1) if abs(j - k) <= max_distance]


def mixed_orthogonality_probe(tree: DyadicTree, bank: DyadicBank, pairs, p,
                              iterations: int = 200) -> ProbeTable:
    """Power-iteration norms of ``D_k Delta_j`` and of its chirp conjugate.

    The slope is the least-squares fit of ``log2(max norm at distance d)``
    against ``d = |j - k|``.
    """
    p = frac_param(p)
    grid = tree.grid
    rows = []
    for j, k in pairs:
        def A(f, j=j, k=k, q=None):
            return difference(lp_block(f, bank, j, q), tree, k, q)

        def At(f, j=j, k=k, q=None):
            return lp_block(difference(f, tree, k, q), bank, j, q)

        cl = operator_norm(A, At, grid, iterations)
        tw = operator_norm(lambda f: A(f, q=p), lambda f: At(f, q=p), grid, iterations,
                           start_map=lambda x: chirp_mul(x, p, "inverse"))
        rows.append(ProbeRow(j, k, tw.norm, cl.norm))
    by_d: dict[int, float] = {}
    for r in rows:
        d = abs(r.j - r.k)
        by_d[d] = max(by_d.get(d, 0.0), r.twisted)
    ds = sorted(by_d)
    vals = [by_d[d] for d in ds]
    slope = float(np.polyfit(ds, np.log2(vals), 1)[0]) if len(ds) > 1 else float("nan")
    return ProbeTable(rows, ds, vals, slope)
