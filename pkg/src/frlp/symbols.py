"""Multiplier symbols as evaluable fields on frequency space.

A :class:`Symbol` wraps a function of the frequency components.  Radial
symbols are built from a profile of ``|xi|``.  The CLI addresses the library
by strings such as ``"annulus(0.5,2)"``.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .grid import FracParam, GridSpec, frac_param


def _h(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def transition(r):
    """Smooth cutoff: 1 for ``r <= 1``, 0 for ``r >= 2``, ``C^inf`` in between."""
    r = np.asarray(r, dtype=float)
    a, b = _h(2.0 - r), _h(r - 1.0)
    den = a + b
    out = np.where(r <= 1.0, 1.0, 0.0)
    mid = (r > 1.0) & (r < 2.0)
    out[mid] = a[mid] / den[mid]
    return out


@dataclass(frozen=True, eq=False)
class Symbol:
    """Scalar field ``m(xi)``.

    Parameters
    ----------
    fn : callable
        Takes a tuple of frequency component arrays (one per axis) and
        returns the symbol values.
    name : str
        Display name, also the CLI spelling for library symbols.
    smooth : bool
        Declared smoothness, informational.
    support : tuple or None
        Declared radial support ``(r_min, r_max)``; ``None`` means unknown.
    """

    fn: Callable
    name: str = "m"
    smooth: bool = True
    support: tuple | None = None
    meta: dict = field(default_factory=dict)

    def __call__(self, *xi):
        if len(xi) == 1 and isinstance(xi[0], tuple):
            xi = xi[0]
        xi = tuple(np.asarray(x, dtype=float) for x in xi)
        return np.asarray(self.fn(xi), dtype=complex) * np.ones(np.broadcast(*xi).shape)

    def on_grid(self, grid: GridSpec, scale: float = 1.0) -> np.ndarray:
        """Values on the centered frequency grid with spacing ``scale / L``."""
        return self(grid.freq_mesh(scale))

    def rescale(self, p) -> "Symbol":
        return rescale_symbol(self, p)

    def dilate(self, t: float) -> "Symbol":
        """``xi -> m(xi / t)``."""
        fn = self.fn
        sup = None if self.support is None else tuple(x * t for x in self.support)
        return Symbol(lambda xi: fn(tuple(x / t for x in xi)), f"{self.name}(./{t:g})",
                      self.smooth, sup)


def radial(profile: Callable, name: str, smooth: bool = True, support=None) -> Symbol:
    def fn(xi):
        r = np.sqrt(sum(x * x for x in xi))
        return profile(r)

    return Symbol(fn, name, smooth, support)


def rescale_symbol(m: Symbol, p) -> Symbol:
    """``m_a(xi) = m(sin(a) xi)`` with the sign of ``sin a`` kept."""
    p = frac_param(p)
    sa = p.sin
    fn = m.fn
    sup = None if m.support is None else tuple(x / p.s for x in m.support)
    return Symbol(lambda xi: fn(tuple(sa * x for x in xi)),
                  f"{m.name}@{p.alpha:g}", m.smooth, sup)


def constant(c: complex = 1.0) -> Symbol:
    return Symbol(lambda xi: np.full(np.broadcast(*xi).shape, c, dtype=complex),
                  f"const({c})", True, None)


def ball(R: float) -> Symbol:
    return radial(lambda r: (r <= R).astype(float), f"ball({R:g})", False, (0.0, R))


def annulus(a: float, b: float) -> Symbol:
    return radial(lambda r: ((r >= a) & (r <= b)).astype(float),
                  f"annulus({a:g},{b:g})", False, (a, b))


def smoothstep(r0: float, r1: float) -> Symbol:
    """1 below ``r0``, 0 above ``r1``, smooth transition in between."""
    if not 0 < r0 < r1:
        raise ValueError("need 0 < r0 < r1")
    return radial(lambda r: transition(1.0 + (r - r0) / (r1 - r0)),
                  f"smoothstep({r0:g},{r1:g})", True, (0.0, r1))


def bump() -> Symbol:
    """The cutoff profile itself: 1 on ``|xi| <= 1``, 0 beyond 2."""
    return radial(transition, "bump", True, (0.0, 2.0))


def dyadic_piece(j: float = 0) -> Symbol:
    """``transition(2^-j |xi|) - transition(2^{1-j} |xi|)``, supported in ``[2^{j-1}, 2^{j+1}]``."""
    t = 2.0**-j
    return radial(lambda r: transition(t * r) - transition(2 * t * r),
                  f"piece({j:g})", True, (2.0 ** (j - 1), 2.0 ** (j + 1)))


def riesz(s: float) -> Symbol:
    """``(2 pi |xi|)^{-s}``, set to 0 at the origin."""

    def prof(r):
        out = np.zeros_like(r)
        nz = r > 0
        out[nz] = (2 * np.pi * r[nz]) ** (-s)
        return out

    return radial(prof, f"riesz({s:g})", True, None)


def bessel(sigma: float) -> Symbol:
    return radial(lambda r: (1 + 4 * np.pi**2 * r * r) ** (-sigma / 2),
                  f"bessel({sigma:g})", True, None)


def br(lam: float, R: float) -> Symbol:
    """Bochner-Riesz symbol ``(1 - |xi|^2/R^2)_+^lam``; ``lam = 0`` is the closed ball."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")

    def prof(r):
        base = np.clip(1.0 - (r / R) ** 2, 0.0, None)
        if lam == 0:
            return (r <= R).astype(float)
        return base**lam

    return radial(prof, f"br({lam:g},{R:g})", lam > 0, (0.0, R))


def gauss(sigma: float = 1.0) -> Symbol:
    """``exp(-pi sigma^2 |xi|^2)``."""
    return radial(lambda r: np.exp(-np.pi * (sigma * r) ** 2), f"gauss({sigma:g})", True, None)


def modulation(a) -> Symbol:
    """``exp(-2 pi i xi . a)``: translation by ``a``."""
    a = np.atleast_1d(np.asarray(a, dtype=float))

    def fn(xi):
        return np.exp(-2j * np.pi * sum(ai * x for ai, x in zip(a, xi)))

    return Symbol(fn, f"shift({','.join(f'{v:g}' for v in a)})", True, None)


def power(theta: float) -> Symbol:
    """Oscillatory ``|xi|^{i theta}``, 0 at the origin."""

    def prof(r):
        out = np.zeros(r.shape, dtype=complex)
        nz = r > 0
        out[nz] = np.exp(1j * theta * np.log(r[nz]))
        return out

    return radial(prof, f"power({theta:g})", True, None)


LIBRARY = {
    "ball": ball,
    "annulus": annulus,
    "smoothstep": smoothstep,
    "riesz": riesz,
    "bessel": bessel,
    "br": br,
    "gauss": gauss,
    "bump": bump,
    "piece": dyadic_piece,
    "power": power,
}


def parse_symbol(text: str) -> Symbol:
    """Build a library symbol from ``"name(arg, ...)"``."""
    try:
        node = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"cannot parse symbol {text!r}") from exc
    if isinstance(node, ast.Name):
        name, args = node.id, []
    elif isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        name = node.func.id
        args = [ast.literal_eval(a) for a in node.args]
    else:
        raise ValueError(f"cannot parse symbol {text!r}")
    if name not in LIBRARY:
        raise ValueError(f"unknown symbol {name!r}; known: {', '.join(sorted(LIBRARY))}")
    return LIBRARY[name](*[float(a) for a in args])


__all__ = [
    "Symbol", "FracParam", "radial", "rescale_symbol", "constant", "ball", "annulus",
    "smoothstep", "bump", "dyadic_piece", "riesz", "bessel", "br", "gauss",
    "modulation", "power", "parse_symbol", "transition", "LIBRARY",
]
