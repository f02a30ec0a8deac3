"""Dyadic frequency bank, block decompositions, square functions and the
Besov / Triebel-Lizorkin / Sobolev / Lipschitz norms built on them.

Every fractional quantity here is the classical quantity applied to the
chirped input ``M_a f``, followed by the inverse chirp where a signal is
returned.  Norms therefore agree with the classical norms of ``M_a f`` up to
the rounding of one extra unimodular multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimUnsupported, RangeExceedsNyquist
from .frft import centered_fft, centered_ifft, chirp_mul
from .grid import GridSpec, Signal, frac_param, lp_norm
from .symbols import transition


@dataclass(frozen=True, eq=False)
class DyadicBank:
    """Sampled partition of unity over dyadic annuli.

    Parameters
    ----------
    grid : GridSpec
    j_min, j_max : int
        Level range.  The inhomogeneous bank uses ``j_min = 1`` plus the
        low-pass mask ``chi``.
    homogeneous : bool
        Omit ``chi`` and allow any ``j_min``.
    normalization : {"sum", "square"}
        ``"sum"``: the pieces sum to one.  ``"square"``: square roots of the
        pieces, so their squares sum to one.
    """

    grid: GridSpec
    j_min: int
    j_max: int
    homogeneous: bool
    normalization: str
    masks: dict
    chi: np.ndarray | None

    @property
    def levels(self) -> list[int]:
        return list(range(self.j_min, self.j_max + 1))

    def partition_sum(self) -> np.ndarray:
        tot = np.zeros(self.grid.shape) if self.chi is None else self.chi.copy()
        for j in self.levels:
            tot = tot + self.masks[j]
        return tot

    def coverage(self) -> np.ndarray:
        """Grid points where the partition (or its square sum) equals one by construction."""
        r = self.grid.freq_radius()
        hi = r <= 2.0**self.j_max
        if self.homogeneous:
            return hi & (r >= 2.0 ** (self.j_min))
        return hi

    def frame_bounds(self, include_low: bool = False) -> tuple[float, float]:
        """``min`` and ``max`` of ``(sum_j phi_j^2)^{1/2}`` over the covered points."""
        sq = sum(self.masks[j] ** 2 for j in self.levels)
        if include_low and self.chi is not None:
            sq = sq + self.chi**2
        cov = self.coverage()
        if not include_low:
            cov = cov & (self.grid.freq_radius() >= (2.0 ** self.j_min if self.homogeneous else 2.0))
        vals = np.sqrt(sq[cov])
        return float(vals.min()), float(vals.max())


def _radius_max(grid: GridSpec) -> float:
    return float(grid.freq_radius().max())


def build_bank(grid: GridSpec, j_min: int | None = None, j_max: int | None = None,
               homogeneous: bool = False, normalization: str = "sum") -> DyadicBank:
    """Masks ``phi_j = T(2^-j |xi|) - T(2^{1-j} |xi|)`` and ``chi = T(|xi|)``.

    ``T`` is :func:`frlp.symbols.transition`.  By default ``j_max`` is the
    smallest level whose cutoff covers the whole grid.
    """
    rmax = _radius_max(grid)
    if j_max is None:
        j_max = max(1, math.ceil(math.log2(rmax)))
    if j_min is None:
        j_min = 1 if not homogeneous else j_max - 6
    if not homogeneous and j_min != 1:
        raise ValueError("the inhomogeneous bank starts at level 1")
    if j_min > j_max:
        raise ValueError(f"empty level range [{j_min}, {j_max}]")
    if 2.0 ** (j_max - 1) >= rmax:
        raise RangeExceedsNyquist(
            f"level {j_max} starts at |xi| = {2.0 ** (j_max - 1):g}, beyond the grid's {rmax:g}")
    if normalization not in ("sum", "square"):
        raise ValueError("normalization must be 'sum' or 'square'")
    r = grid.freq_radius()
    masks = {}
    for j in range(j_min, j_max + 1):
        piece = transition(2.0**-j * r) - transition(2.0 ** (1 - j) * r)
        piece = np.clip(piece, 0.0, None)
        masks[j] = np.sqrt(piece) if normalization == "square" else piece
    chi = None
    if not homogeneous:
        chi = transition(r)
        if normalization == "square":
            chi = np.sqrt(chi)
    return DyadicBank(grid, int(j_min), int(j_max), homogeneous, normalization, masks, chi)


def _spectrum(f: Signal, p) -> np.ndarray:
    g = f if p is None else chirp_mul(f, p)
    return centered_fft(g.values, f.grid)


def _back(vals: np.ndarray, f: Signal, p) -> Signal:
    out = f.like(centered_ifft(vals, f.grid))
    return out if p is None else chirp_mul(out, p, "inverse")


def lp_block(f: Signal, bank: DyadicBank, j: int, p=None) -> Signal:
    """Block ``Delta_j f``, or its chirp conjugate when ``p`` is given."""
    if j not in bank.masks:
        raise ValueError(f"level {j} outside bank range [{bank.j_min}, {bank.j_max}]")
    return _back(bank.masks[j] * _spectrum(f, p), f, p)


def low_pass(f: Signal, bank: DyadicBank, p=None) -> Signal:
    if bank.chi is None:
        raise ValueError("homogeneous bank has no low-pass piece")
    return _back(bank.chi * _spectrum(f, p), f, p)


@dataclass
class Decomposition:
    """Blocks of one input: ``low`` (or None) plus ``blocks[j]``."""

    source: Signal
    bank: DyadicBank
    alpha: float | None
    blocks: dict
    low: Signal | None

    @property
    def residual(self) -> float:
        """Relative L2 residual of :func:`reconstruct` against the input."""
        rec = reconstruct(self)
        den = lp_norm(self.source, 2)
        return lp_norm(rec - self.source, 2) / (den if den > 0 else 1.0)

    def ledger(self, q: float = 2.0) -> dict:
        return {
            "alpha": self.alpha,
            "levels": sorted(self.blocks),
            "low_norm": None if self.low is None else lp_norm(self.low, q),
            "block_norms": {str(j): lp_norm(b, q) for j, b in sorted(self.blocks.items())},
            "residual": self.residual,
        }


def decompose(f: Signal, bank: DyadicBank, p=None) -> Decomposition:
    F = _spectrum(f, p)
    blocks = {j: _back(bank.masks[j] * F, f, p) for j in bank.levels}
    low = None if bank.chi is None else _back(bank.chi * F, f, p)
    alpha = None if p is None else frac_param(p).alpha
    return Decomposition(f, bank, alpha, blocks, low)


def reconstruct(dec: Decomposition) -> Signal:
    """Low-pass piece plus all blocks; the zero signal when there are none."""
    tot = np.zeros(dec.source.grid.shape, dtype=complex)
    if dec.low is not None:
        tot = tot + dec.low.values
    for j in sorted(dec.blocks):
        tot = tot + dec.blocks[j].values
    return dec.source.like(tot)


def _block_moduli(f: Signal, bank: DyadicBank, p) -> dict:
    """``|Delta_j f|`` per level (chirps drop out of the modulus)."""
    dec = decompose(f, bank, p)
    return {j: np.abs(b.values) for j, b in dec.blocks.items()}, dec.low


def square_function(f: Signal, bank: DyadicBank, p=None) -> Signal:
    """Pointwise ``(sum_j |Delta_j f|^2)^{1/2}`` over the bank levels."""
    mods, _ = _block_moduli(f, bank, p)
    acc = np.zeros(f.grid.shape)
    for j in bank.levels:
        acc = acc + mods[j] ** 2
    return f.like(np.sqrt(acc))


def sharp_mask(grid: GridSpec, j: int) -> np.ndarray:
    xi = np.abs(grid.freqs())
    return ((xi >= 2.0**j) & (xi < 2.0 ** (j + 1))).astype(float)


def sharp_block(f: Signal, j: int, p=None) -> Signal:
    """Indicator filter on ``2^j <= |xi| < 2^{j+1}`` (1D only)."""
    if f.grid.dim != 1:
        raise DimUnsupported("sharp blocks are defined in one dimension")
    return _back(sharp_mask(f.grid, j) * _spectrum(f, p), f, p)


def sharp_levels(grid: GridSpec) -> list[int]:
    """Levels whose sharp intervals meet the nonzero grid frequencies."""
    lo = math.floor(math.log2(grid.dxi))
    hi = math.floor(math.log2(grid.N / 2 * grid.dxi))
    return list(range(lo, hi + 1))


# -- norms ----------------------------------------------------------------------


@dataclass
class NormReport:
    """Value of a norm with its per-level ledger."""

    space: str
    value: float
    params: dict
    low: float | None = None
    levels: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"space": self.space, "value": self.value, "params": self.params,
                "low": self.low, "levels": self.levels}


def _qsum(vals, q: float) -> float:
    vals = np.asarray(vals, dtype=float)
    if vals.size == 0:
        return 0.0
    if q == math.inf:
        return float(vals.max())
    return float(np.sum(vals**q) ** (1.0 / q))


def besov_norm(f: Signal, bank: DyadicBank, s: float, p: float, q: float,
               frac=None) -> NormReport:
    """``||S_0 f||_p + (sum_j (2^{js} ||Delta_j f||_p)^q)^{1/q}``."""
    dec = decompose(f, bank, frac)
    low = None if dec.low is None else lp_norm(dec.low, p)
    per = [(j, 2.0 ** (j * s) * lp_norm(dec.blocks[j], p)) for j in bank.levels]
    val = _qsum([v for _, v in per], q) + (low or 0.0)
    return NormReport("besov", val, {"s": s, "p": p, "q": q, "alpha": dec.alpha}, low,
                      [{"j": j, "weighted": v} for j, v in per])


def triebel_norm(f: Signal, bank: DyadicBank, s: float, p: float, q: float,
                 frac=None) -> NormReport:
    """``||S_0 f||_p + || (sum_j (2^{js} |Delta_j f|)^q)^{1/q} ||_p``."""
    dec = decompose(f, bank, frac)
    low = None if dec.low is None else lp_norm(dec.low, p)
    mods = np.stack([2.0 ** (j * s) * np.abs(dec.blocks[j].values) for j in bank.levels])
    if q == math.inf:
        inner = mods.max(axis=0)
    else:
        inner = np.sum(mods**q, axis=0) ** (1.0 / q)
    val = lp_norm(f.like(inner), p) + (low or 0.0)
    per = [{"j": j, "weighted": lp_norm(f.like(m), p)} for j, m in zip(bank.levels, mods)]
    return NormReport("triebel", val, {"s": s, "p": p, "q": q, "alpha": dec.alpha}, low, per)


def sobolev_norm(f: Signal, bank: DyadicBank, s: float, p: float = 2.0, frac=None) -> NormReport:
    r = triebel_norm(f, bank, s, p, 2.0, frac)
    r.space = "sobolev"
    return r


def lipschitz_norm(f: Signal, bank: DyadicBank, gamma: float, variant: str = "homogeneous",
                   frac=None) -> NormReport:
    """``sup_j 2^{j gamma} ||Delta_j f||_inf``, plus ``||S_0 f||_inf`` when inhomogeneous."""
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    if variant not in ("homogeneous", "inhomogeneous"):
        raise ValueError("variant must be 'homogeneous' or 'inhomogeneous'")
    dec = decompose(f, bank, frac)
    per = [(j, 2.0 ** (j * gamma) * lp_norm(dec.blocks[j], math.inf)) for j in bank.levels]
    val = max(v for _, v in per)
    low = None
    if variant == "inhomogeneous":
        if dec.low is None:
            raise ValueError("inhomogeneous variant needs a bank with a low-pass piece")
        low = lp_norm(dec.low, math.inf)
        val += low
    return NormReport(f"lipschitz-{variant}", val, {"gamma": gamma, "alpha": dec.alpha}, low,
                      [{"j": j, "weighted": v} for j, v in per])


def _derivative(f: Signal, sigma: float, variant: str) -> Signal:
    r = f.grid.freq_radius()
    sym = r**sigma if variant == "homogeneous" else (1.0 + r * r) ** (sigma / 2)
    return f.like(centered_ifft(sym * centered_fft(f.values, f.grid), f.grid))


def order_shift_ratio(f: Signal, bank: DyadicBank, gamma: float, sigma: float,
                      variant: str = "homogeneous") -> float:
    """``||f||_{gamma} / ||D^sigma f||_{gamma - sigma}`` in the chosen Lipschitz scale.

    ``D^sigma`` is ``|xi|^sigma`` (homogeneous) or ``(1+|xi|^2)^{sigma/2}``.
    """
    if not 0 < sigma < gamma:
        raise ValueError("need 0 < sigma < gamma")
    num = lipschitz_norm(f, bank, gamma, variant).value
    den = lipschitz_norm(_derivative(f, sigma, variant), bank, gamma - sigma, variant).value
    return num / den
