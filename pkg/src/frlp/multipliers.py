"""Classical and fractional multiplier operators and symbol-condition checks.

A fractional multiplier can be computed two ways:

* ``route="definition"``: transform, multiply by ``m`` on the fractional
  lattice, transform back;
* ``route="conjugation"``: chirp, classical multiplier with the rescaled
  symbol ``m(sin(a) xi)``, inverse chirp.

On the discrete lattice the two routes are the same linear map, so their
agreement is a rounding-level check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SupportViolation, SymbolUnbounded
from .frft import centered_fft, centered_ifft, chirp_mul, plan
from .grid import GridSpec, Signal, frac_param, lp_norm
from .opnorm import NormEstimate, operator_norm
from .symbols import Symbol, rescale_symbol

UNBOUNDED = 1e12


def _values(m, grid: GridSpec, scale: float = 1.0) -> np.ndarray:
    v = m.on_grid(grid, scale) if isinstance(m, Symbol) else np.asarray(m, dtype=complex)
    v = np.broadcast_to(v, grid.shape)
    top = np.max(np.abs(v)) if v.size else 0.0
    if not np.isfinite(top) or top > UNBOUNDED:
        name = getattr(m, "name", "symbol")
        raise SymbolUnbounded(f"{name}: max |m| on grid is {top:.3g}")
    return v


def apply_multiplier(m, f: Signal) -> Signal:
    """``(m * FT f)^v`` on the centered frequency grid.

    ``m`` is a :class:`Symbol` or an array of values on that grid.
    """
    v = _values(m, f.grid)
    F = centered_fft(f.values, f.grid)
    return f.like(centered_ifft(v * F, f.grid))


def apply_frft_multiplier(m: Symbol, f: Signal, p, route: str = "conjugation",
                          check: bool = True) -> Signal:
    """Fractional multiplier ``F_a^{-1} m F_a f`` by the chosen route."""
    p = frac_param(p)
    if route == "definition":
        pl = plan(f.grid, p, check)
        F = pl.forward(f)
        v = _values(m, f.grid, p.s)
        return pl.inverse(F.__class__(F.grid, v * F.values, F.scale))
    if route == "conjugation":
        if check:
            plan(f.grid, p, True)  # raises when the sampling guard fails
        g = chirp_mul(f, p)
        return chirp_mul(apply_multiplier(rescale_symbol(m, p), g), p, "inverse")
    raise ValueError(f"route must be 'definition' or 'conjugation', got {route!r}")


def band_selector(phi: Symbol, R: float, f: Signal, p, route: str = "conjugation",
                  check: bool = True) -> Signal:
    """Fractional selector with symbol ``phi(xi / R)``."""
    return apply_frft_multiplier(phi.dilate(R), f, p, route, check)


def bochner_riesz(lam: float, R: float, f: Signal, p, route: str = "conjugation",
                  check: bool = True) -> Signal:
    from .symbols import br

    return apply_frft_multiplier(br(lam, R), f, p, route, check)


# -- operator norms ------------------------------------------------------------


def multiplier_norm(m: Symbol, grid: GridSpec, p=None, **kw) -> NormEstimate:
    """Power-iteration norm of ``T_m`` (``p=None``) or of its fractional version.

    For the fractional version the seeded start vector is pulled back by the
    inverse chirp, so the iterates track those of the classical multiplier
    with the rescaled symbol.
    """
    if p is None:
        v = _values(m, grid)
        return operator_norm(lambda f: apply_multiplier(v, f),
                             lambda f: apply_multiplier(v.conj(), f), grid, **kw)
    p = frac_param(p)
    conj_m = Symbol(lambda xi, fn=m.fn: np.conj(fn(xi)), f"conj({m.name})")
    return operator_norm(lambda f: apply_frft_multiplier(m, f, p, check=False),
                         lambda f: apply_frft_multiplier(conj_m, f, p, check=False),
                         grid, start_map=lambda x: chirp_mul(x, p, "inverse"), **kw)


# -- families ---------------------------------------------------------------------


def _family_outputs(family, f: Signal, p, check: bool):
    if p is None:
        return [apply_multiplier(m, f) for m in family]
    return [apply_frft_multiplier(m, f, p, check=check) for m in family]


def maximal_over_family(family, f: Signal, p=None, check: bool = True) -> Signal:
    """Pointwise ``max_k |T_k f|`` (fractional when ``p`` is given)."""
    outs = _family_outputs(family, f, p, check)
    return f.like(np.max(np.stack([np.abs(o.values) for o in outs]), axis=0))


def _tree_sum(arrs):
    """Pairwise reduction in fixed order, for reproducible rounding."""
    arrs = list(arrs)
    if not arrs:
        return None
    while len(arrs) > 1:
        nxt = [arrs[i] + arrs[i + 1] for i in range(0, len(arrs) - 1, 2)]
        if len(arrs) % 2:
            nxt.append(arrs[-1])
        arrs = nxt
    return arrs[0]


def rough_square_function(family, f: Signal, p=None, check: bool = True) -> Signal:
    """Pointwise ``(sum_k |T_k f|^2)^{1/2}`` over a finite family."""
    outs = _family_outputs(family, f, p, check)
    if not outs:
        return f.like(np.zeros(f.grid.shape))
    return f.like(np.sqrt(_tree_sum(np.abs(o.values) ** 2 for o in outs)))


def vector_square_function(family, fs, p=None, check: bool = True) -> Signal:
    """Pointwise ``(sum_k |T_k f_k|^2)^{1/2}`` for paired operators and inputs."""
    outs = []
    for m, f in zip(family, fs, strict=True):
        outs.append(apply_multiplier(m, f) if p is None
                    else apply_frft_multiplier(m, f, p, check=check))
    return outs[0].like(np.sqrt(_tree_sum(np.abs(o.values) ** 2 for o in outs)))


@dataclass
class AlmostOrthogonalReport:
    """``total`` is the full sum; ``increments[k]`` is the ``L^q`` norm of the
    total minus the partial sum through term ``k`` (the Cauchy tail)."""

    total: Signal
    levels: list
    term_norms: list
    increments: list
    q: float


def almost_orthogonal_sum(family, levels, f: Signal, p=None, q: float = 2.0,
                          check: bool = True, tol: float = 1e-12) -> AlmostOrthogonalReport:
    """Sum ``sum_j T_j f`` of annulus-supported multipliers with a per-term ledger.

    Each symbol ``family[i]`` must vanish (to ``tol``) outside
    ``2^{j-1} <= |xi| <= 2^{j+1}`` with ``j = levels[i]``, checked on the
    lattice where it is evaluated.
    """
    scale = 1.0 if p is None else frac_param(p).s
    r = f.grid.freq_radius(scale)
    for m, j in zip(family, levels, strict=True):
        v = np.abs(m.on_grid(f.grid, scale))
        outside = (r < 2.0 ** (j - 1)) | (r > 2.0 ** (j + 1))
        leak = float(v[outside].max()) if outside.any() else 0.0
        if leak > tol:
            raise SupportViolation(f"{m.name}: |m| = {leak:.3g} outside annulus {j}")
    outs = _family_outputs(family, f, p, check)
    norms = [lp_norm(o, q) for o in outs]
    total = f.like(_tree_sum(o.values for o in outs)) if outs else f * 0
    partial = np.zeros(f.grid.shape, dtype=complex)
    incs = []
    for o in outs:
        partial = partial + o.values
        incs.append(lp_norm(f.like(total.values - partial), q))
    return AlmostOrthogonalReport(total, list(levels), norms, incs, q)


# -- symbol conditions ---------------------------------------------------------------

_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFF = np.arange(-2, 3)


def _deriv1(fn, x, h):
    """Fourth-order central first derivative of a 1D function."""
    return sum(c * fn(x + k * h) for c, k in zip(_D1, _OFF) if c) / h


@dataclass
class SymbolConditionReport:
    """Per-interval or per-annulus quantities and their sup ``A``."""

    condition: str
    entries: list
    A: float
    bound: float | None = None
    covering_count: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool | None:
        if self.bound is None:
            return None
        return bool(np.isfinite(self.A) and self.A <= self.bound)


def _eval1(m: Symbol):
    return lambda x: m((np.asarray(x, dtype=float),))


def _trapezoid(y, x):
    return float(np.trapezoid(y, x)) if hasattr(np, "trapezoid") else float(np.trapz(y, x))


def total_variation(m: Symbol, a: float, b: float, quad_points: int = 4097) -> float:
    """``int_a^b |m'(x)| dx`` with a fourth-order stencil on a 16x refined step."""
    x = np.linspace(a, b, quad_points)
    h = (b - a) / (quad_points - 1) / 16.0
    d = np.abs(_deriv1(_eval1(m), x, h))
    return _trapezoid(d, x)


def covering_count(s: float) -> int:
    """Dyadic intervals met by the image of one dyadic interval under ``x -> s x``."""
    k = math.log2(s)
    return 1 if abs(k - round(k)) < 1e-12 else 2


def marcinkiewicz_check(m: Symbol, jmin: int, jmax: int, quad_points: int = 4097,
                        bound: float | None = None, p=None) -> SymbolConditionReport:
    """Variation of ``m`` over ``+-[2^j, 2^{j+1}]`` for ``jmin <= j <= jmax``.

    With ``p`` given, the report also carries the covering count that links
    the rescaled symbol's constant to the original one.
    """
    entries = []
    for j in range(jmin, jmax + 1):
        a, b = 2.0**j, 2.0 ** (j + 1)
        v = total_variation(m, a, b, quad_points) + total_variation(m, -b, -a, quad_points)
        entries.append({"j": j, "variation": v})
    vals = [e["variation"] for e in entries]
    A = float(max(vals)) if vals else 0.0
    if any(not np.isfinite(v) for v in vals):
        A = float("nan")
    cc = covering_count(frac_param(p).s) if p is not None else None
    return SymbolConditionReport("Marcinkiewicz1D", entries, A, bound, cc)


def _multi_indices(dim: int, order: int):
    if dim == 1:
        return [(k,) for k in range(order + 1)]
    return [(a, k - a) for k in range(order + 1) for a in range(k, -1, -1)]


def _partial(fn, pts, beta, h):
    """Finite-difference ``d^beta m`` at points ``pts`` (tuple of arrays)."""
    def shifted(axis, k):
        return tuple(x + k * h if i == axis else x for i, x in enumerate(pts))

    order = sum(beta)
    if order == 0:
        return fn(pts)
    if order == 1:
        ax = beta.index(1)
        return sum(c * fn(shifted(ax, k)) for c, k in zip(_D1, _OFF) if c) / h
    if order == 2 and 2 in beta:
        ax = beta.index(2)
        return sum(c * fn(shifted(ax, k)) for c, k in zip(_D2, _OFF) if c) / (h * h)
    if order == 2:
        # mixed: first difference along axis 0 of first differences along axis 1
        tot = 0
        for c0, k0 in zip(_D1, _OFF):
            if not c0:
                continue
            base = tuple(x + k0 * h if i == 0 else x for i, x in enumerate(pts))
            tot = tot + c0 * sum(c1 * fn(tuple(x + k1 * h if i == 1 else x
                                                for i, x in enumerate(base)))
                                 for c1, k1 in zip(_D1, _OFF) if c1)
        return tot / (h * h)
    raise ValueError("derivative orders above 2 are not supported")


def annulus_l2(m: Symbol, R: float, beta, dim: int, quad_points: int = 512) -> float:
    """``(int_{R<|xi|<2R} |d^beta m|^2)^{1/2}`` by tensor quadrature.

    1D uses Gauss-Legendre on both half-intervals; 2D uses Gauss-Legendre
    in the radius times the periodic trapezoid rule in the angle.  The
    difference step is the radial node spacing over 16, so the rule is
    covariant under dilation.
    """
    t, w = np.polynomial.legendre.leggauss(quad_points)
    r = R * (1.5 + 0.5 * t)
    wr = 0.5 * R * w
    h = R / quad_points / 16.0
    fn = lambda pts: m(pts)  # noqa: E731
    if dim == 1:
        tot = 0.0
        for sgn in (1.0, -1.0):
            d = _partial(fn, (sgn * r,), beta, sgn * h)
            tot += float(np.sum(wr * np.abs(d) ** 2))
        return math.sqrt(tot)
    nth = 4 * quad_points
    th = 2 * np.pi * np.arange(nth) / nth
    rr, tt = np.meshgrid(r, th, indexing="ij")
    pts = (rr * np.cos(tt), rr * np.sin(tt))
    d = _partial(fn, pts, beta, h)
    wgt = (wr * r)[:, None] * (2 * np.pi / nth)
    return math.sqrt(float(np.sum(wgt * np.abs(d) ** 2)))


def mihlin_check(m: Symbol, radii, dim: int = 1, max_order: int | None = None,
                 quad_points: int = 512, bound: float | None = None) -> SymbolConditionReport:
    """Ratios ``||d^beta m||_{L2(R<|xi|<2R)} / R^{n/2-|beta|}`` and their sup."""
    if max_order is None:
        max_order = dim // 2 + 1
    entries = []
    for R in radii:
        for beta in _multi_indices(dim, max_order):
            val = annulus_l2(m, R, beta, dim, quad_points)
            ratio = val / R ** (dim / 2 - sum(beta))
            entries.append({"R": R, "beta": list(beta), "ratio": ratio})
    A = max((e["ratio"] for e in entries), default=0.0)
    return SymbolConditionReport("MihlinHormander", entries, float(A), bound)


def mihlin_rescaling(m: Symbol, p, R: float, beta, dim: int = 1,
                     quad_points: int = 512) -> dict:
    """Both sides of ``||d^b m_a||_{A(R)} = s^{|b| - n/2} ||d^b m||_{A(sR)}``.

    ``A(R)`` is the annulus ``R < |xi| < 2R`` and ``m_a`` the rescaled symbol.
    """
    p = frac_param(p)
    lhs = annulus_l2(rescale_symbol(m, p), R, beta, dim, quad_points)
    rhs = p.s ** (sum(beta) - dim / 2) * annulus_l2(m, p.s * R, beta, dim, quad_points)
    rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
    return {"lhs": lhs, "rhs": rhs, "rel": rel}


__all__ = [
    "mihlin_rescaling",
    "apply_multiplier", "apply_frft_multiplier", "band_selector", "bochner_riesz",
    "multiplier_norm", "maximal_over_family", "rough_square_function",
    "vector_square_function", "almost_orthogonal_sum", "AlmostOrthogonalReport",
    "marcinkiewicz_check", "mihlin_check", "SymbolConditionReport", "total_variation",
    "covering_count", "annulus_l2",
]
