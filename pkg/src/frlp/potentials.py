"""Fractional derivatives and potentials in three frames, plus twisted products.

Frames
------
``classical``
    Plain Fourier multiplier.
``conjugated(a)``
    ``M^{-1} T M``: the chirp-conjugated operator.
``pullback(a)``
    ``F_a^{-1} T F_a``: ``T`` acts on the fractional spectrum viewed as a
    signal on its own sampling lattice.

The two angle frames are different operators; every call names its frame.

Symbols use the ``2 pi`` convention: Riesz ``(2 pi |xi|)^{-s}``, Bessel
``(1 + 4 pi^2 |xi|^2)^{-sigma/2}``, fractional Laplacian power
``(2 pi |xi|)^{2z}``.  The derivatives ``|xi|^s`` and ``(1+|xi|^2)^{s/2}``
carry no ``2 pi``.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DcSingular, ExponentMismatch
from .frft import centered_fft, centered_ifft, chirp_mul, frft, plan
from .grid import GridSpec, Signal, Spectrum, frac_param, lp_norm, make_grid, same_grid

KINDS = ("riesz", "bessel", "homog_deriv", "inhomog_deriv", "frac_laplacian")


@dataclass(frozen=True)
class PotentialSpec:
    """Which potential, its order, and what to do at the zero frequency.

    ``dc_policy`` matters only for symbols singular at the origin: ``"zero"``
    sets the symbol to 0 there, ``"hold"`` to 1.  Leaving it ``None`` for a
    singular symbol raises :class:`DcSingular`.
    """

    kind: str
    order: float
    dc_policy: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown potential kind {self.kind!r}")
        if self.dc_policy not in (None, "zero", "hold"):
            raise ValueError("dc_policy must be None, 'zero' or 'hold'")

    @property
    def singular_at_zero(self) -> bool:
        if self.kind == "riesz":
            return self.order > 0
        if self.kind == "homog_deriv":
            return self.order < 0
        if self.kind == "frac_laplacian":
            return self.order < 0
        return False

    def symbol(self, r: np.ndarray) -> np.ndarray:
        """Symbol values at radii ``r``."""
        k, a = self.kind, self.order
        if k == "bessel":
            return (1.0 + 4 * np.pi**2 * r * r) ** (-a / 2)
        if k == "inhomog_deriv":
            return (1.0 + r * r) ** (a / 2)
        if k == "riesz":
            base, expo = 2 * np.pi * r, -a
        elif k == "frac_laplacian":
            base, expo = 2 * np.pi * r, 2 * a
        else:
            base, expo = r, a
        out = np.empty_like(r)
        nz = r > 0
        out[nz] = base[nz] ** expo
        if self.singular_at_zero:
            if self.dc_policy is None:
                raise DcSingular(f"{k}({a:g}) is singular at xi = 0; set dc_policy")
            out[~nz] = 0.0 if self.dc_policy == "zero" else 1.0
        else:
            out[~nz] = 1.0 if expo == 0 else 0.0
        return out

    def label(self) -> str:
        return f"{self.kind}({self.order:g})"


def riesz(s: float, dc_policy: str = "zero") -> PotentialSpec:
    return PotentialSpec("riesz", s, dc_policy)


def bessel(sigma: float) -> PotentialSpec:
    return PotentialSpec("bessel", sigma)


def homog_deriv(s: float, dc_policy: str = "zero") -> PotentialSpec:
    return PotentialSpec("homog_deriv", s, dc_policy)


def inhomog_deriv(sigma: float) -> PotentialSpec:
    return PotentialSpec("inhomog_deriv", sigma)


def frac_laplacian(z: float, dc_policy: str = "zero") -> PotentialSpec:
    return PotentialSpec("frac_laplacian", z, dc_policy)


@dataclass(frozen=True)
class Frame:
    kind: str = "classical"
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in ("classical", "conjugated", "pullback"):
            raise ValueError(f"unknown frame {self.kind!r}")
        if (self.kind == "classical") != (self.alpha is None):
            raise ValueError("angle frames need alpha; the classical frame takes none")

    def label(self) -> str:
        return self.kind if self.alpha is None else f"{self.kind}({self.alpha:g})"


CLASSICAL = Frame()


def conjugated(alpha: float) -> Frame:
    return Frame("conjugated", float(frac_param(alpha).alpha))


def pullback(alpha: float) -> Frame:
    return Frame("pullback", float(frac_param(alpha).alpha))


def _classical(spec: PotentialSpec, f: Signal) -> Signal:
    sym = spec.symbol(f.grid.freq_radius())
    return f.like(centered_ifft(sym * centered_fft(f.values, f.grid), f.grid))


def apply_potential(spec: PotentialSpec, f: Signal, frame: Frame = CLASSICAL,
                    check: bool = True) -> Signal:
    """Apply ``spec`` to ``f`` in ``frame``."""
    if frame.kind == "classical":
        return _classical(spec, f)
    p = frac_param(frame.alpha)
    if frame.kind == "conjugated":
        if check:
            plan(f.grid, p, True)
        return chirp_mul(_classical(spec, chirp_mul(f, p)), p, "inverse")
    pl = plan(f.grid, p, check)
    G = pl.forward(f)
    H = _classical(spec, G.as_signal())
    return pl.inverse(Spectrum(f.grid, H.values, G.scale))


def spectral_signal(f: Signal, alpha, check: bool = True) -> Signal:
    """``F_a f`` as a signal on its lattice (the space where pullback norms live)."""
    return frft(f, alpha, check).as_signal()


# -- certificates ---------------------------------------------------------------


def inputs_digest(*objs) -> str:
    h = hashlib.sha256()
    for o in objs:
        if isinstance(o, Signal):
            h.update(repr((o.grid.dim, o.grid.L, o.grid.N)).encode())
            h.update(np.ascontiguousarray(o.values).tobytes())
        else:
            h.update(repr(o).encode())
    return h.hexdigest()[:16]


@dataclass
class CheckCertificate:
    """Outcome of one identity or inequality check."""

    identity: str
    frame: str
    max_rel_err: float
    tolerance: float
    passed: bool
    inputs_digest: str
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=False, default=float)


def _rel(a: Signal, b: Signal) -> float:
    den = lp_norm(b, 2)
    return lp_norm(a - b, 2) / (den if den > 0 else 1.0)


SEMIGROUP_KINDS = ("riesz", "bessel", "frac_laplacian", "homog_deriv", "inhomog_deriv",
                   "commutation")


def semigroup_check(kind: str, orders, f: Signal, frame: Frame = CLASSICAL,
                    tol: float = 1e-9) -> CheckCertificate:
    """Composition laws ``T_a T_b = T_{a+b}``; ``kind="commutation"`` checks
    ``I_s L^z = L^z I_s = I_{s-2z}`` with ``L^z`` the Laplacian power and
    ``orders = (s, z)``."""
    a, b = orders
    if kind == "commutation":
        if not a > 2 * b:
            raise ValueError("commutation needs s > 2 z")
        I, Lz, Ic = riesz(a), frac_laplacian(b), riesz(a - 2 * b)
        target = apply_potential(Ic, f, frame)
        one = apply_potential(I, apply_potential(Lz, f, frame), frame)
        two = apply_potential(Lz, apply_potential(I, f, frame), frame)
        err = max(_rel(one, target), _rel(two, target))
        ident = f"riesz({a:g}) o laplacian^{b:g} = laplacian^{b:g} o riesz({a:g}) = riesz({a - 2 * b:g})"
    elif kind in KINDS:
        mk = {"riesz": riesz, "bessel": bessel, "frac_laplacian": frac_laplacian,
              "homog_deriv": homog_deriv, "inhomog_deriv": inhomog_deriv}[kind]
        target = apply_potential(mk(a + b), f, frame)
        got = apply_potential(mk(a), apply_potential(mk(b), f, frame), frame)
        err = _rel(got, target)
        ident = f"{kind}({a:g}) o {kind}({b:g}) = {kind}({a + b:g})"
    else:
        raise ValueError(f"unknown semigroup kind {kind!r}")
    return CheckCertificate(ident, frame.label(), err, tol, bool(err < tol),
                            inputs_digest(f, kind, orders, frame))


@dataclass(frozen=True)
class PullbackNorm:
    r: float
    value: float
    alpha: float


def pullback_norm(f: Signal, r: float, alpha, check: bool = True) -> PullbackNorm:
    """``||F_a f||_r`` with the spectral lattice weights."""
    p = frac_param(alpha)
    return PullbackNorm(r, lp_norm(frft(f, p, check), r), p.alpha)


def bessel_kernel_l1(grid: GridSpec, sigma: float) -> float:
    """``l1`` mass of the discrete Bessel kernel, a bound for every ``L^r`` norm."""
    sym = bessel(sigma).symbol(grid.freq_radius())
    k = centered_ifft(sym, grid)
    return float(np.sum(np.abs(k)) * grid.cell_volume)


def _exponents_ok(s: float, p: float, q: float, n: int) -> bool:
    return abs(1.0 / p - 1.0 / q - s / n) <= 1e-12


def hls_ratio(s: float, p: float, q: float, f: Signal, alpha) -> float:
    """``||I_s F_a f||_q / ||F_a f||_p``, i.e. the pullback-frame ratio."""
    G = spectral_signal(f, alpha)
    num = lp_norm(_classical(riesz(s), G), q)
    den = lp_norm(G, p)
    return num / den


def hls_desk_check(s: float, p: float, q: float, family, alpha, grid: GridSpec,
                   refine: int = 4, spread: float = 10.0) -> CheckCertificate:
    """Empirical Riesz-potential ratio ``sup_f ||I_{s,a} f||_{q,a} / ||f||_{p,a}``.

    ``family`` holds callables ``x -> values`` (``x`` the coordinate mesh
    tuple).  They are sampled on ``grid`` and on a ``refine``-times finer grid
    over the same period.  The check passes when every ratio is finite and
    the sup moves by less than a factor ``spread`` under refinement.
    """
    n = grid.dim
    if not 0 < s < n:
        raise ValueError("need 0 < s < n")
    if not _exponents_ok(s, p, q, n):
        raise ExponentMismatch(f"1/{p:g} - 1/{q:g} != {s:g}/{n}")
    fine = make_grid(n, grid.L, grid.N * refine)
    sups = []
    for g in (grid, fine):
        ratios = [hls_ratio(s, p, q, Signal(g, fn(g.mesh()) + 0j), alpha) for fn in family]
        sups.append(max(ratios))
    finite = all(math.isfinite(v) and v > 0 for v in sups)
    change = max(sups) / min(sups) if finite else math.inf
    ok = finite and change < spread
    return CheckCertificate(f"hls ratio s={s:g} p={p:g} q={q:g}", pullback(alpha).label(),
                            change, spread, bool(ok), inputs_digest(s, p, q, alpha, grid),
                            {"coarse_sup": sups[0], "fine_sup": sups[1]})


def bessel_contraction(sigma: float, r: float, f: Signal, frame: Frame,
                       slack: float = 1e-10) -> CheckCertificate:
    """``||J_sigma f|| <= ||f||`` in the frame's ``L^r`` (pullback norms for pullback)."""
    out = apply_potential(bessel(sigma), f, frame)
    if frame.kind == "pullback":
        a, b = lp_norm(frft(out, frame.alpha), r), lp_norm(frft(f, frame.alpha), r)
        kgrid = spectral_signal(f, frame.alpha).grid
    else:
        a, b = lp_norm(out, r), lp_norm(f, r)
        kgrid = f.grid
    ratio = a / b if b > 0 else 0.0
    return CheckCertificate(f"bessel({sigma:g}) contraction in L^{r:g}", frame.label(), ratio,
                            1 + slack, bool(ratio <= 1 + slack), inputs_digest(f, sigma, r, frame),
                            {"kernel_l1": bessel_kernel_l1(kgrid, sigma)})


def operator_chain(T, C_T: float, A, C_A: float, s: float, sigma: float, p: float,
                   q: float, f: Signal, alpha, slack: float = 1e-10) -> CheckCertificate:
    """Run ``J_sigma A I_s T f`` in the pullback frame and audit each stage.

    ``T`` and ``A`` are callables on signals with declared bounds ``C_T``
    (on ``L^p_a``) and ``C_A`` (on ``L^q_a``).  The Riesz stage constant is
    the observed ratio on this input.  The check passes when the output norm
    is within ``C_A * C_HLS * C_T * ||f||`` and the Bessel stage contracts.
    """
    n = f.grid.dim
    if not _exponents_ok(s, p, q, n):
        raise ExponentMismatch(f"1/{p:g} - 1/{q:g} != {s:g}/{n}")
    fr = pullback(alpha)

    def pn(g, r):
        return lp_norm(frft(g, fr.alpha), r)

    h0 = f
    h1 = T(h0)
    h2 = apply_potential(riesz(s), h1, fr)
    h3 = A(h2)
    h4 = apply_potential(bessel(sigma), h3, fr)
    norms = {"input_p": pn(h0, p), "after_T_p": pn(h1, p), "after_I_q": pn(h2, q),
             "after_A_q": pn(h3, q), "after_J_q": pn(h4, q)}
    c_hls = norms["after_I_q"] / norms["after_T_p"] if norms["after_T_p"] > 0 else 0.0
    bound = C_A * c_hls * C_T * norms["input_p"]
    contraction = norms["after_J_q"] <= norms["after_A_q"] * (1 + slack)
    final_ok = norms["after_J_q"] <= bound * (1 + slack)
    stage = {"T": norms["after_T_p"] <= C_T * norms["input_p"] * (1 + slack),
             "A": norms["after_A_q"] <= C_A * norms["after_I_q"] * (1 + slack),
             "J": contraction}
    ratio = norms["after_J_q"] / bound if bound > 0 else 0.0
    return CheckCertificate("operator chain J A I T", fr.label(), ratio, 1 + slack,
                            bool(final_ok and contraction), inputs_digest(f, s, sigma, p, q, alpha),
                            {"stage_norms": norms, "c_hls": c_hls, "stage_ok": stage})


# -- twisted products -------------------------------------------------------------


def twisted_product(fs, alpha) -> Signal:
    """``M^{-1} prod_j (M f_j)``."""
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one factor")
    p = frac_param(alpha)
    acc = chirp_mul(fs[0], p).values
    for g in fs[1:]:
        same_grid(fs[0], g)
        acc = acc * chirp_mul(g, p).values
    return chirp_mul(fs[0].like(acc), p, "inverse")


def periodic_convolution(a: Signal, b: Signal) -> Signal:
    """``int a(y) b(x - y) dy`` on the torus."""
    same_grid(a, b)
    g = a.grid
    return a.like(centered_ifft(centered_fft(a.values, g) * centered_fft(b.values, g), g))


def twisted_convolution(w: Signal, u: Signal, alpha) -> Signal:
    """``M^{-1}((M w) * (M u))``."""
    p = frac_param(alpha)
    return chirp_mul(periodic_convolution(chirp_mul(w, p), chirp_mul(u, p)), p, "inverse")


def kato_ponce_path(s: float, w: Signal, u: Signal, alpha) -> CheckCertificate:
    """``D^s_a (w *_a u)`` against ``M^{-1} D^s((M w) * (M u))``."""
    if s < 0:
        raise ValueError("the derivative order must be nonnegative")
    p = frac_param(alpha)
    lhs = apply_potential(homog_deriv(s), twisted_convolution(w, u, p), conjugated(p.alpha),
                          check=False)
    F, G = chirp_mul(w, p), chirp_mul(u, p)
    conv = periodic_convolution(F, G)
    r = conv.grid.freq_radius()
    sym = r**s  # 0**s is 0 for s > 0 and 1 for s = 0
    rhs = chirp_mul(conv.like(centered_ifft(sym * centered_fft(conv.values, conv.grid),
                                            conv.grid)), p, "inverse")
    err = _rel(lhs, rhs)
    return CheckCertificate(f"derivative {s:g} of twisted convolution", conjugated(p.alpha).label(),
                            err, 1e-10, bool(err < 1e-10), inputs_digest(w, u, s, p.alpha))


def _in_even_naturals(s: float) -> bool:
    """``s`` in ``{0, 2, 4, ...}``."""
    return s >= 0 and abs(s / 2 - round(s / 2)) < 1e-12


def kato_ponce_region(s: float, r: float, n: int = 1) -> str:
    """``"allowed"`` when ``s > max(0, n/r - n)`` or ``s`` is an even natural, else ``"forbidden"``."""
    if not r > 0.5:
        raise ValueError("r must exceed 1/2")
    if n < 1:
        raise ValueError("n must be at least 1")
    if s > max(0.0, n / r - n) or _in_even_naturals(s):
        return "allowed"
    return "forbidden"
