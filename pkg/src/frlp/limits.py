"""Angle regimes and convergence profiles along fixed geometric angle sequences.

Two limits are tracked.  Approaching ``pi/2`` from above recovers the
classical operators.  Approaching ``0`` collapses an angle-side band
selector to multiplication by ``phi(0)`` on a fixed grid, while its
classical passband runs off to frequency ``R / s``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .frft import centered_fft, chirp_mul, validate_sampling
from .grid import FracParam, Signal, frac_param
from .littlewood_paley import DyadicBank, lp_block, square_function
from .multipliers import apply_frft_multiplier, apply_multiplier, band_selector
from .symbols import Symbol, rescale_symbol

CLASSICAL = "classical"
FRACTIONAL = "effective_fractional"
WARNING = "warning"


@dataclass(frozen=True)
class RegimeConfig:
    delta1: float = 0.1
    delta2: float = 3.0
    s_min: float = 0.1

    def __post_init__(self):
        if not 0 < self.delta1 < self.delta2:
            raise ValueError("need 0 < delta1 < delta2")
        if not 0 < self.s_min < 1:
            raise ValueError("s_min must lie in (0, 1)")


def classify_regime(p, cfg: RegimeConfig | None = None) -> str:
    """``classical`` if ``D <= delta1``; ``warning`` if ``D >= delta2`` or ``s < s_min``."""
    p = frac_param(p)
    cfg = cfg or RegimeConfig()
    if p.D <= cfg.delta1:
        return CLASSICAL
    if p.D >= cfg.delta2 or p.s < cfg.s_min:
        return WARNING
    return FRACTIONAL


@dataclass
class ConvergenceProfile:
    """One row per angle; ``metrics`` maps a name to its per-angle values."""

    law: str
    target: str
    levels: list
    alphas: list
    metrics: dict
    aliased: list
    extra: dict = field(default_factory=dict)
    tolerance: float = 1e-6

    def descriptor_rows(self) -> list[dict]:
        return [frac_param(a).descriptors() for a in self.alphas]

    def tail_nonincreasing(self, name: str, transient: int = 2) -> bool:
        """Nonincreasing after ``transient`` entries, up to a rounding allowance."""
        v = self.metrics[name][transient:]
        return all(b <= a * (1 + 1e-9) + 1e-14 for a, b in zip(v, v[1:]))

    def final_ok(self, name: str) -> bool:
        return self.metrics[name][-1] < self.tolerance

    @property
    def gated(self) -> list[str]:
        return self.extra.get("gated", list(self.metrics))

    @property
    def passed(self) -> bool:
        mono = self.extra.get("monotone", self.gated)
        ok = all(self.final_ok(m) for m in self.gated)
        ok = ok and all(self.tail_nonincreasing(m) for m in mono)
        return bool(ok and self.extra.get("passband_ok", True))

    def to_rows(self) -> list[dict]:
        rows = []
        for i, (l, a) in enumerate(zip(self.levels, self.alphas)):
            d = frac_param(a)
            row = {"level": l, "alpha": a, "s": d.s, "kappa": d.kappa, "D": d.D}
            row.update({k: v[i] for k, v in self.metrics.items()})
            row["aliased"] = self.aliased[i]
            rows.append(row)
        return rows

    def to_csv(self) -> str:
        rows = self.to_rows()
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"law": self.law, "target": self.target, "pass": self.passed,
                           "rows": self.to_rows(), "extra": self.extra}, indent=2)


def _rel(a: Signal, b: Signal, ref: float) -> float:
    return float(np.linalg.norm(a.values - b.values) / ref) if ref > 0 else float(
        np.linalg.norm(a.values - b.values))


def classical_limit_profile(f: Signal, bank: DyadicBank, m: Symbol, l_max: int = 24,
                            j: int | None = None) -> ConvergenceProfile:
    """Relative L2 errors along ``alpha_l = pi/2 + 2^-l`` for ``l = 1..l_max``.

    Metrics: the block at level ``j`` (default: the level holding most of
    ``f``'s energy), the
    square function, the multiplier output, and the sup deviation of the
    rescaled symbol on the grid.  Aliased entries are flagged, not fatal.
    """
    if j is None:
        j = max(bank.levels, key=lambda k: float(np.linalg.norm(lp_block(f, bank, k).values)))
    blk0 = lp_block(f, bank, j)
    sq0 = square_function(f, bank)
    mul0 = apply_multiplier(m, f)
    m0 = m.on_grid(f.grid)
    refs = [float(np.linalg.norm(x.values)) for x in (blk0, sq0, mul0)]
    mref = float(np.abs(m0).max()) or 1.0
    levels = list(range(1, l_max + 1))
    alphas = [math.pi / 2 + 2.0**-l for l in levels]
    names = ("block", "square_function", "multiplier", "symbol_sup")
    metrics = {k: [] for k in names}
    aliased = []
    for a in alphas:
        p = frac_param(a)
        aliased.append(not validate_sampling(f.grid, p).ok)
        metrics["block"].append(_rel(lp_block(f, bank, j, p), blk0, refs[0]))
        metrics["square_function"].append(_rel(square_function(f, bank, p), sq0, refs[1]))
        metrics["multiplier"].append(
            _rel(apply_frft_multiplier(m, f, p, check=False), mul0, refs[2]))
        dev = np.abs(rescale_symbol(m, p).on_grid(f.grid) - m0).max()
        metrics["symbol_sup"].append(float(dev / mref))
    gated = ["block", "square_function", "multiplier"] + (["symbol_sup"] if m.smooth else [])
    return ConvergenceProfile("classical-limit", "classical operators at pi/2", levels, alphas,
                              metrics, aliased, {"j": j, "symbol": m.name, "gated": gated})


def passband_center(phi: Symbol, R: float, grid, p) -> float:
    """Classical-frequency centroid of ``|phi(s xi / R)|^2`` measured on a probe.

    The probe ``M^{-1} delta`` has a flat classical spectrum after ``M``, so
    the selector output's spectrum is the rescaled symbol itself.
    """
    p = frac_param(p)
    v = np.zeros(grid.shape, dtype=complex)
    v[(grid.N // 2,) * grid.dim] = 1.0 / grid.cell_volume
    probe = chirp_mul(Signal(grid, v), p, "inverse")
    out = band_selector(phi, R, probe, p, check=False)
    w = np.abs(centered_fft(chirp_mul(out, p).values, grid)) ** 2
    r = grid.freq_radius()
    tot = w.sum()
    return float((w * r).sum() / tot) if tot > 0 else float("nan")


def singular_boundary_profile(f: Signal, phi: Symbol, R: float = 1.0, l_max: int = 12,
                              support: float = 2.0, band_tol: float = 0.05) -> ConvergenceProfile:
    """Selector errors ``||S f - phi(0) f||_2 / ||f||_2`` along ``alpha_l = 2^-l``.

    The passband centroid is measured while the symbol's classical support
    ``support * R / s`` still fits below the grid's Nyquist radius; each
    consecutive ratio there must be ``2`` within ``band_tol``.
    """
    phi0 = complex(phi((0.0,) * f.grid.dim))
    target = f * phi0
    ref = float(np.linalg.norm(f.values)) or 1.0
    levels = list(range(1, l_max + 1))
    alphas = [2.0**-l for l in levels]
    err, centers, aliased = [], [], []
    for a in alphas:
        p = frac_param(a)
        aliased.append(not validate_sampling(f.grid, p).ok)
        err.append(_rel(band_selector(phi, R, f, p, check=False), target, ref))
        inside = support * R / p.s <= f.grid.nyquist
        centers.append(passband_center(phi, R, f.grid, p) if inside else float("nan"))
    ratios = [b / a for a, b in zip(centers, centers[1:]) if np.isfinite(a) and np.isfinite(b)]
    band_ok = bool(ratios) and all(abs(r / 2 - 1) <= band_tol for r in ratios)
    extra = {"phi": phi.name, "phi0": [phi0.real, phi0.imag], "R": R,
             "doubling_ratios": ratios, "passband_ok": band_ok, "gated": ["selector"], "monotone": []}
    return ConvergenceProfile("singular-boundary", "phi(0) f", levels, alphas,
                              {"selector": err, "passband_center": centers}, aliased, extra)


def descriptor_curve(alphas) -> list[dict]:
    """``(alpha, s, kappa, D)`` rows; singular angles are skipped."""
    out = []
    for a in alphas:
        try:
            out.append(FracParam(float(a)).descriptors())
        except ValueError:
            continue
    return out


__all__ = ["RegimeConfig", "classify_regime", "ConvergenceProfile", "classical_limit_profile",
           "singular_boundary_profile", "passband_center", "descriptor_curve",
           "CLASSICAL", "FRACTIONAL", "WARNING"]
