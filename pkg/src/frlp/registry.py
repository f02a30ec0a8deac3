"""Registry of identity and property checks run by ``frlp check``.

Each entry has a frozen id, a plain statement of what it verifies, a
generator spec (grid, signal family, parameters), a tolerance and a
severity.  ``exact`` entries test equalities and gate the exit code;
``empirical`` entries probe inequalities or limits and only warn unless
the run is strict.  Every entry draws from its own generator seeded by the
run seed and the entry id, so entries are independent of run order.
"""

from __future__ import annotations

import fnmatch
import math
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import dyadic as dy
from . import limits as lim
from . import littlewood_paley as lp
from . import multipliers as mu
from . import oscillation as osc
from . import potentials as pot
from . import symbols as sy
from .frft import (chirp_mul, frft, frft_at, frft_direct, ifrft, inverse_convention_gap)
from .generators import gaussian, random_signals
from .grid import Signal, frac_param, lp_norm, make_grid

EXACT = "exact"
EMPIRICAL = "empirical"
ANGLES = (0.3, math.pi / 4, 1.1, math.pi / 2, 2.0)
P_VALUES = (1.0, 1.5, 2.0, 4.0, math.inf)


@dataclass(frozen=True)
class Outcome:
    value: float
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CheckEntry:
    id: str
    statement: str
    severity: str
    tolerance: float
    generator: dict
    run: Callable[[np.random.Generator], Outcome]

    def seed_for(self, seed: int) -> int:
        return (int(seed) * 1_000_003 + zlib.crc32(self.id.encode())) & 0xFFFFFFFF

    def spec(self) -> dict:
        return {"id": self.id, "statement": self.statement, "severity": self.severity,
                "tolerance": self.tolerance, "generator": self.generator}


REGISTRY: dict[str, CheckEntry] = {}


def register(id: str, statement: str, severity: str, tolerance: float, **generator):
    def deco(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate check id {id!r}")
        REGISTRY[id] = CheckEntry(id, statement, severity, tolerance, generator, fn)
        return fn

    return deco


def _rel(a, b) -> float:
    a = a.values if isinstance(a, Signal) else np.asarray(a)
    b = b.values if isinstance(b, Signal) else np.asarray(b)
    den = np.linalg.norm(b)
    return float(np.linalg.norm(a - b) / (den if den > 0 else 1.0))


def _le(value: float, tol: float, **details) -> Outcome:
    return Outcome(float(value), bool(value <= tol), details)


def _seed(rng) -> int:
    return int(rng.integers(0, 2**31))


G256 = (1, 8.0, 256)
G_OSC = (1, 16.0, 256)


def _grid(spec):
    return make_grid(*spec)


def _signals(rng, spec=G256, count=5, **kw):
    return random_signals(_grid(spec), count, _seed(rng), **kw)


# -- frft-engine ----------------------------------------------------------------------


@register("frft.chirp.isometry", "chirp multiplication preserves every L^p norm",
          EXACT, 1e-14, grid=G256, family="random", count=20, alphas=ANGLES, p=P_VALUES)
def _chirp_isometry(rng):
    worst = 0.0
    for f in _signals(rng, count=20):
        for a in ANGLES:
            g = chirp_mul(f, a)
            for p in P_VALUES:
                n0 = lp_norm(f, p)
                worst = max(worst, abs(lp_norm(g, p) - n0) / n0)
    return _le(worst, 1e-14)


@register("frft.plancherel", "the discrete fractional transform is unitary",
          EXACT, 1e-12, grid=G256, family="random", count=10, alphas=ANGLES)
def _plancherel(rng):
    worst = 0.0
    for f in _signals(rng, count=10):
        for a in ANGLES:
            worst = max(worst, abs(lp_norm(frft(f, a), 2) / lp_norm(f, 2) - 1))
    return _le(worst, 1e-12)


@register("frft.kernel.direct", "fast transform equals the direct kernel sum",
          EXACT, 1e-8, grid=(1, 4.0, 64), family="random", count=3, alphas=ANGLES)
def _kernel_direct(rng):
    worst = 0.0
    for f in _signals(rng, (1, 4.0, 64), 3):
        for a in ANGLES:
            worst = max(worst, _rel(frft(f, a).values, frft_direct(f, a).values))
    return _le(worst, 1e-8)


@register("frft.roundtrip", "the inverse transform undoes the forward transform",
          EXACT, 1e-12, grid=G256, family="random", count=10, alphas=ANGLES)
def _roundtrip(rng):
    worst = 0.0
    for f in _signals(rng, count=10):
        for a in ANGLES:
            worst = max(worst, _rel(ifrft(frft(f, a), a), f))
    return _le(worst, 1e-12)


@register("frft.classical_angle", "at a right angle the transform is the Fourier transform",
          EXACT, 1e-13, grid=G256, family="random", count=5)
def _classical_angle(rng):
    from .frft import centered_fft

    worst = 0.0
    for f in _signals(rng):
        worst = max(worst, _rel(frft(f, math.pi / 2).values, centered_fft(f.values, f.grid)))
    return _le(worst, 1e-13)


@register("frft.gaussian.eigenfunction", "the standard Gaussian is fixed by every angle",
          EXACT, 1e-12, grid=G256, family="gaussian", alphas=ANGLES)
def _gauss_fixed(rng):
    g = _grid(G256)
    f = gaussian(g)
    worst = 0.0
    for a in ANGLES:
        F = frft(f, a)
        worst = max(worst, _rel(F.values, np.exp(-np.pi * F.freqs() ** 2)))
    return _le(worst, 1e-12)


@register("frft.czt.agreement", "chirp-z evaluation matches the transform on its lattice",
          EXACT, 1e-10, grid=G256, family="random", count=3, alphas=ANGLES)
def _czt(rng):
    worst = 0.0
    for f in _signals(rng, count=3):
        for a in ANGLES:
            F = frft(f, a)
            xi = F.freqs()
            worst = max(worst, _rel(frft_at(f, a, xi[0], xi[1] - xi[0], xi.size), F.values))
    return _le(worst, 1e-10)


@register("frft.inverse_convention", "the transform at -a inverts the transform at a",
          EMPIRICAL, 1e-9, grid=G256, family="random", count=3, alphas=ANGLES)
def _inverse_convention(rng):
    worst = max(inverse_convention_gap(f, a) for f in _signals(rng, count=3) for a in ANGLES)
    return _le(worst, 1e-9)


# -- multiplier-ops -----------------------------------------------------------------


def _random_symbol(rng):
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return sy.gauss(float(rng.uniform(0.2, 1.0)))
    if kind == 1:
        r0 = float(rng.uniform(0.5, 2.0))
        return sy.smoothstep(r0, r0 * float(rng.uniform(1.5, 3.0)))
    if kind == 2:
        return sy.bessel(float(rng.uniform(0.5, 2.0)))
    return sy.power(float(rng.uniform(-2, 2)))


@register("mult.two_route", "definition and conjugation routes give the same output",
          EXACT, 1e-9, grid=G256, family="random", count=50, alphas=ANGLES)
def _two_route(rng):
    worst = 0.0
    for f in _signals(rng, count=50):
        m = _random_symbol(rng)
        a = ANGLES[int(rng.integers(0, len(ANGLES)))]
        d = mu.apply_frft_multiplier(m, f, a, "definition")
        c = mu.apply_frft_multiplier(m, f, a, "conjugation")
        worst = max(worst, _rel(d, c))
    return _le(worst, 1e-9)


@register("mult.norm.transfer", "fractional multiplier norm equals the rescaled classical norm",
          EXACT, 1e-8, grid=G256, family="power-iteration", symbols=["gauss", "smoothstep"],
          alphas=[0.7, 2.0])
def _norm_transfer(rng):
    g = _grid(G256)
    worst = 0.0
    for m in (sy.gauss(0.5), sy.smoothstep(1.0, 3.0)):
        for a in (0.7, 2.0):
            tw = mu.multiplier_norm(m, g, a).norm
            cl = mu.multiplier_norm(sy.rescale_symbol(m, a), g).norm
            worst = max(worst, abs(tw - cl) / cl)
    return _le(worst, 1e-8)


@register("mult.maximal.pointwise", "fractional maximal function is the classical one of the chirped input",
          EXACT, 1e-14, grid=G256, family="random", count=5, alpha=1.1)
def _maximal(rng):
    fam = [sy.ball(r) for r in (1.0, 2.0, 4.0)]
    p = frac_param(1.1)
    worst = 0.0
    for f in _signals(rng):
        a = mu.maximal_over_family(fam, f, p, check=False)
        b = mu.maximal_over_family([sy.rescale_symbol(m, p) for m in fam], chirp_mul(f, p))
        worst = max(worst, float(np.abs(a.values - b.values).max() / np.abs(b.values).max()))
    return _le(worst, 1e-14)


@register("mult.marcinkiewicz.covering", "variation constants of m and its rescaling differ by at most 2",
          EMPIRICAL, 2.0, family="symbols", alphas=ANGLES)
def _marcinkiewicz(rng):
    worst = 0.0
    for m in (sy.smoothstep(1.0, 3.0), sy.power(1.0), sy.gauss(0.5)):
        A = mu.marcinkiewicz_check(m, -6, 6).A
        for a in ANGLES:
            B = mu.marcinkiewicz_check(sy.rescale_symbol(m, a), -6, 6).A
            worst = max(worst, A / B, B / A)
    return _le(worst, 2.0 + 1e-9)


@register("mult.mihlin.rescaling", "annulus derivative norms obey the dilation identity under quadrature",
          EXACT, 5e-3, family="symbols", alphas=[0.4, 1.1, 2.0], quad_points=[256, 512])
def _mihlin(rng):
    worst = 0.0
    for m in (sy.power(1.0), sy.smoothstep(1.0, 3.0)):
        for a in (0.4, 1.1, 2.0):
            for beta in ((0,), (1,)):
                for q in (256, 512):
                    worst = max(worst, mu.mihlin_rescaling(m, a, 2.0, beta, 1, q)["rel"])
    return _le(worst, 5e-3)


@register("mult.selector.effective_band", "an angle-side ball selector keeps classical frequencies up to R/s",
          EXACT, 1e-12, grid=G256, family="random", count=3, alphas=[0.5, 1.1])
def _selector_band(rng):
    from .frft import centered_fft

    worst = 0.0
    for f in _signals(rng, count=3, bandwidth=None):
        for a in (0.5, 1.1):
            p = frac_param(a)
            out = mu.band_selector(sy.ball(1.0), 2.0, f, p)
            spec = np.abs(centered_fft(chirp_mul(out, p).values, f.grid))
            outside = f.grid.freq_radius() > 2.0 / p.s * (1 + 1e-9)
            worst = max(worst, float(spec[outside].max(initial=0.0) / spec.max()))
    return _le(worst, 1e-12)


# -- littlewood-paley -----------------------------------------------------------------


def _bank(grid=None):
    return lp.build_bank(grid or _grid(G256))


@register("lp.conjugation.pointwise", "fractional block moduli equal classical block moduli of the chirped input",
          EXACT, 1e-14, grid=G256, family="random", count=5, alphas=ANGLES)
def _lp_pointwise(rng):
    bank = _bank()
    worst = 0.0
    for f in _signals(rng):
        for a in ANGLES:
            g = chirp_mul(f, a)
            for j in bank.levels:
                x = np.abs(lp.lp_block(f, bank, j, a).values)
                y = np.abs(lp.lp_block(g, bank, j).values)
                worst = max(worst, float(np.abs(x - y).max() / max(y.max(), 1e-300)))
    return _le(worst, 1e-14)


@register("lp.square_function.pointwise", "fractional square function equals the classical one of the chirped input",
          EXACT, 1e-14, grid=G256, family="random", count=5, alphas=ANGLES)
def _lp_square(rng):
    bank = _bank()
    worst = 0.0
    for f in _signals(rng):
        for a in ANGLES:
            x = lp.square_function(f, bank, a).values
            y = lp.square_function(chirp_mul(f, a), bank).values
            worst = max(worst, float(np.abs(x - y).max() / np.abs(y).max()))
    return _le(worst, 1e-14)


@register("lp.reconstruction", "low-pass plus all fractional blocks rebuilds the signal",
          EXACT, 1e-10, grid=G256, family="random", count=20, alphas=ANGLES)
def _lp_recon(rng):
    bank = _bank()
    worst = 0.0
    for f in _signals(rng, count=20):
        for a in ANGLES:
            worst = max(worst, _rel(lp.reconstruct(lp.decompose(f, bank, a)), f))
    return _le(worst, 1e-10)


@register("lp.partition", "the bank masks sum to one on their coverage",
          EXACT, 1e-14, grid=G256, family="bank", normalization=["sum", "square"])
def _lp_partition(rng):
    g = _grid(G256)
    b = lp.build_bank(g)
    cov = b.coverage()
    err1 = float(np.abs(b.partition_sum()[cov] - 1).max())
    sq = lp.build_bank(g, normalization="square")
    tot = sum(sq.masks[j] ** 2 for j in sq.levels) + sq.chi**2
    err2 = float(np.abs(tot[cov] - 1).max())
    return _le(max(err1, err2), 1e-14)


def _norm_pair(rng, fn, **kw):
    bank = _bank()
    worst = 0.0
    for f in _signals(rng, count=20):
        for a in (0.7, 1.1, 2.0):
            x = fn(f, bank, frac=a, **kw).value
            y = fn(chirp_mul(f, a), bank, **kw).value
            worst = max(worst, abs(x - y) / y)
    return worst


@register("lp.norms.besov", "fractional Besov norm equals the classical norm of the chirped input",
          EXACT, 1e-14, grid=G256, family="random", count=20, alphas=[0.7, 1.1, 2.0])
def _besov(rng):
    return _le(_norm_pair(rng, lp.besov_norm, s=0.5, p=2.0, q=2.0), 1e-14)


@register("lp.norms.triebel", "fractional Triebel norm equals the classical norm of the chirped input",
          EXACT, 1e-14, grid=G256, family="random", count=20, alphas=[0.7, 1.1, 2.0])
def _triebel(rng):
    return _le(_norm_pair(rng, lp.triebel_norm, s=0.5, p=1.5, q=2.0), 1e-14)


@register("lp.norms.sobolev", "fractional Sobolev norm equals the classical norm of the chirped input",
          EXACT, 1e-14, grid=G256, family="random", count=20, alphas=[0.7, 1.1, 2.0])
def _sobolev(rng):
    return _le(_norm_pair(rng, lp.sobolev_norm, s=1.0, p=2.0), 1e-14)


@register("lp.norms.lipschitz", "fractional Lipschitz norm equals the classical norm of the chirped input",
          EXACT, 1e-14, grid=G256, family="random", count=20, alphas=[0.7, 1.1, 2.0])
def _lipschitz(rng):
    return _le(_norm_pair(rng, lp.lipschitz_norm, gamma=0.5, variant="inhomogeneous"), 1e-14)


# -- twisted-dyadic -------------------------------------------------------------------


@register("dyadic.square_function.pointwise", "twisted dyadic square function equals the classical one of the chirped input",
          EXACT, 1e-14, grid=G256, family="random", count=5, alphas=ANGLES)
def _dy_square(rng):
    tree = dy.make_tree(_grid(G256))
    worst = 0.0
    for f in _signals(rng):
        for a in ANGLES:
            x = dy.dyadic_square_function(f, tree, a).values
            y = dy.dyadic_square_function(chirp_mul(f, a), tree).values
            worst = max(worst, float(np.abs(x - y).max() / np.abs(y).max()))
    return _le(worst, 1e-14)


@register("dyadic.haar.gram", "the twisted Haar system is orthonormal",
          EXACT, 1e-12, grid=(1, 8.0, 128), alphas=[0.7, 2.0])
def _haar_gram(rng):
    g = _grid((1, 8.0, 128))
    tree = dy.make_tree(g)
    worst = 0.0
    for a in (0.7, 2.0):
        H = np.stack([h.values for h in dy.haar_system(tree, a)])
        gram = H.conj() @ H.T * g.dx
        worst = max(worst, float(np.abs(gram - np.eye(len(H))).max()))
    return _le(worst, 1e-12)


@register("dyadic.haar.parseval", "twisted Haar coefficients carry the full L2 energy",
          EXACT, 1e-10, grid=G256, family="random", count=5, alphas=ANGLES)
def _haar_parseval(rng):
    tree = dy.make_tree(_grid(G256))
    worst = 0.0
    for f in _signals(rng):
        for a in ANGLES:
            e = dy.haar_transform(f, tree, a).energy()
            worst = max(worst, abs(e / lp_norm(f, 2) ** 2 - 1))
    return _le(worst, 1e-10)


@register("dyadic.decomposition.residual", "mean, differences and remainder sum back to the signal",
          EXACT, 1e-10, grid=G256, family="random", count=5, alphas=ANGLES)
def _dy_residual(rng):
    g = _grid(G256)
    worst = 0.0
    for k_max in (None, 0):
        tree = dy.make_tree(g, k_max)
        for f in _signals(rng):
            for a in ANGLES:
                pc = dy.martingale_pieces(f, tree, a)
                tot = pc["mean"] + pc["rest"]
                for d in pc["diff"].values():
                    tot = tot + d
                worst = max(worst, _rel(tot, f))
                worst = max(worst, _rel(dy.inverse_haar(dy.haar_transform(f, tree, a)), f)
                            if tree.covers_samples else 0.0)
    return _le(worst, 1e-10)


@register("dyadic.mixed.norm_transfer", "twisted mixed operator norms equal the classical ones",
          EXACT, 1e-8, grid=G256, pairs="j in 0..3, k in -1..4", alpha=1.1)
def _mixed_transfer(rng):
    g = _grid(G256)
    tree = dy.make_tree(g)
    bank = lp.build_bank(g, -1, 4, homogeneous=True)
    pairs = [(j, k) for j in range(0, 4) for k in (-1, 1, 4)]
    table = dy.mixed_orthogonality_probe(tree, bank, pairs, 1.1, iterations=100)
    return _le(table.max_gap, 1e-8)


@register("dyadic.mixed.decay", "mixed operator norms decay geometrically in the level gap",
          EMPIRICAL, -0.4, grid=(1, 16.0, 1024), pairs="default", alpha=1.1)
def _mixed_decay(rng):
    g = make_grid(1, 16.0, 1024)
    tree = dy.make_tree(g)
    bank = lp.build_bank(g, -2, 4, homogeneous=True)
    table = dy.mixed_orthogonality_probe(tree, bank, dy.default_pairs(), 1.1)
    return Outcome(table.slope, bool(table.slope <= -0.4 and table.max_gap <= 1e-8),
                   {"per_distance": table.per_distance, "max_gap": table.max_gap})


# -- potentials-products ---------------------------------------------------------------


def _dc_free(rng, count=5):
    out = []
    for f in _signals(rng, count=count):
        out.append(f - Signal(f.grid, np.full(f.grid.shape, f.values.mean())))
    return out


FRAMES = (pot.CLASSICAL, pot.conjugated(1.1), pot.pullback(1.1), pot.pullback(2.3))


def _semigroup(rng, kind, orders):
    worst = 0.0
    for f in _dc_free(rng, 3):
        for fr in FRAMES:
            worst = max(worst, pot.semigroup_check(kind, orders, f, fr).max_rel_err)
    return _le(worst, 1e-9)


@register("pot.semigroup.riesz", "Riesz potentials compose additively in their orders",
          EXACT, 1e-9, grid=G256, family="random-dc-free", frames="all")
def _sg_riesz(rng):
    return _semigroup(rng, "riesz", (0.3, 0.4))


@register("pot.semigroup.bessel", "Bessel potentials compose additively in their orders",
          EXACT, 1e-9, grid=G256, family="random-dc-free", frames="all")
def _sg_bessel(rng):
    return _semigroup(rng, "bessel", (0.5, 1.25))


@register("pot.semigroup.frac_laplacian", "Laplacian powers compose additively",
          EXACT, 1e-9, grid=G256, family="random-dc-free", frames="all")
def _sg_lap(rng):
    return _semigroup(rng, "frac_laplacian", (0.25, 0.5))


@register("pot.commutation", "a Riesz potential after a Laplacian power lowers its order by twice the power",
          EXACT, 1e-9, grid=G256, family="random-dc-free", frames="all")
def _sg_comm(rng):
    return _semigroup(rng, "commutation", (0.8, 0.2))


@register("pot.bessel.contraction", "Bessel potentials do not increase L^r norms",
          EMPIRICAL, 1.0, grid=G256, family="random", r=[1.0, 1.5, 2.0, 4.0, "inf"])
def _contraction(rng):
    worst = 0.0
    for f in _signals(rng, count=3):
        for fr in FRAMES:
            for r in (1.0, 1.5, 2.0, 4.0, math.inf):
                c = pot.bessel_contraction(1.0, r, f, fr)
                worst = max(worst, c.max_rel_err)
    return _le(worst, 1.0 + 1e-10)


@register("pot.kato_ponce.transfer", "fractional derivative of a twisted convolution is the chirp-back of the classical one",
          EXACT, 1e-10, grid=G256, family="random", count=3, s=[0.5, 1.0, 2.0])
def _kp(rng):
    fs = _signals(rng, count=6)
    worst = 0.0
    for w, u in zip(fs[::2], fs[1::2]):
        for s in (0.5, 1.0, 2.0):
            worst = max(worst, pot.kato_ponce_path(s, w, u, 1.1).max_rel_err)
    return _le(worst, 1e-10)


@register("pot.kato_ponce.region", "region classifier matches a direct evaluation of its defining condition",
          EXACT, 0.0, lattice="20 x 10 over s in [0, 4], r in (0.5, 4]")
def _kp_region(rng):
    bad = 0
    for s in np.linspace(0.0, 4.0, 20):
        for r in np.linspace(0.6, 4.0, 10):
            even = s >= 0 and abs(s / 2 - round(s / 2)) < 1e-12
            want = "allowed" if (s > max(0.0, 1.0 / r - 1.0) or even) else "forbidden"
            bad += pot.kato_ponce_region(float(s), float(r)) != want
    return _le(float(bad), 0.0, points=200)


@register("pot.pullback.plancherel", "the pullback L2 norm equals the L2 norm",
          EXACT, 1e-12, grid=G256, family="random", count=5, alphas=ANGLES)
def _pullback(rng):
    worst = 0.0
    for f in _signals(rng):
        for a in ANGLES:
            worst = max(worst, abs(pot.pullback_norm(f, 2.0, a).value / lp_norm(f, 2) - 1))
    return _le(worst, 1e-12)


# -- oscillation-spaces ---------------------------------------------------------------


def _corpus(rng, alpha, count=5):
    return osc.bmo_corpus(_grid(G_OSC), count, _seed(rng), alpha)


@register("osc.bmo.two_path", "the fractional oscillation score equals the classical score of the chirped input",
          EXACT, 1e-14, grid=G_OSC, family="bmo-corpus", count=5, r=[1.0, 2.0])
def _bmo_two(rng):
    cubes = osc.dyadic_cubes(_grid(G_OSC))
    worst = 0.0
    for b in _corpus(rng, 1.1):
        for r in (1.0, 2.0):
            x = osc.bmo_alpha_norm(b, cubes, 1.1, r)
            y = osc.bmo_alpha_norm(chirp_mul(b, 1.1), cubes, None, r)
            worst = max(worst, abs(x - y) / y)
    return _le(worst, 1e-14)


@register("osc.sharp_maximal.pointwise", "fractional sharp maximal function equals the classical one of the chirped input",
          EXACT, 1e-14, grid=G_OSC, family="bmo-corpus", count=5)
def _sharp(rng):
    cubes = osc.dyadic_cubes(_grid(G_OSC))
    worst = 0.0
    for b in _corpus(rng, 1.1):
        x = osc.sharp_maximal(b, cubes, 1.1).values
        y = osc.sharp_maximal(chirp_mul(b, 1.1), cubes).values
        worst = max(worst, float(np.abs(x - y).max() / np.abs(y).max()))
    return _le(worst, 1e-14)


@register("osc.carleson.modulus", "fractional wavelet coefficients have the moduli of the classical ones of the chirped input",
          EXACT, 1e-14, grid=G_OSC, family="bmo-corpus", count=3)
def _carleson_mod(rng):
    psi = osc.mexican_hat(1)
    worst = 0.0
    for b in _corpus(rng, 1.1, 3):
        g = chirp_mul(b, 1.1)
        for t in osc.default_scales(b.grid):
            x = np.abs(osc.psi_transform(b, psi, t, 1.1).values)
            y = np.abs(osc.psi_transform(g, psi, t).values)
            worst = max(worst, float(np.abs(x - y).max() / y.max()))
    return _le(worst, 1e-14)


@register("osc.hardy.two_path", "the fractional Hardy quasi-norm equals the classical one of the chirped input",
          EXACT, 1e-14, grid=G256, family="random", count=5, p=[0.5, 1.0])
def _hardy(rng):
    bank = _bank()
    worst = 0.0
    for f in _signals(rng):
        for p in (0.5, 1.0):
            x = osc.hardy_square_quasinorm(f, bank, 1.1, p)
            y = osc.hardy_square_quasinorm(chirp_mul(f, 1.1), bank, None, p)
            worst = max(worst, abs(x - y) / y)
    return _le(worst, 1e-14)


@register("osc.atom.roundtrip", "synthesized fractional atoms pass validation",
          EXACT, 0.0, grid=G_OSC, family="frft-atom", count=10)
def _atoms(rng):
    g = _grid(G_OSC)
    fails = 0
    for _ in range(10):
        side = int(2 ** rng.integers(3, 6))
        off = int(rng.integers(0, g.N // side)) * side
        p = float(rng.choice([1.0, 0.75, 0.5, 0.4]))
        q = float(rng.choice([2.0, 4.0, math.inf]))
        a = float(rng.uniform(0.3, 2.8))
        cube = osc.Cube((off,), side)
        A = osc.synthesize_atom(g, cube, p, q, a, _seed(rng))
        fails += not osc.validate_atom(A, cube, p, q, a).passed
    return _le(float(fails), 0.0)


@register("osc.chirped_constant.zero", "all three scores vanish on chirped constants",
          EXACT, 1e-12, grid=G_OSC, family="chirped-constant", alphas=[0.7, 1.1, 2.0])
def _chirped_const(rng):
    g = _grid(G_OSC)
    worst = 0.0
    for a in (0.7, 1.1, 2.0):
        c = complex(rng.normal(), rng.normal())
        b = chirp_mul(Signal(g, np.full(g.shape, c)), a, "inverse")
        sc, _ = osc.stability_scores(b, a)
        worst = max(worst, (sc.omega_r + sc.carleson + sc.sharpmax) / abs(c))
    return _le(worst, 1e-12)


@register("osc.john_nirenberg.decay", "level-set fractions of the oscillation decay exponentially",
          EMPIRICAL, 0.9, grid=(1, 16.0, 1024), family="bmo-corpus", count=5)
def _jn(rng):
    corpus = osc.bmo_corpus(make_grid(1, 16.0, 1024), 5, _seed(rng), 1.1)
    reps = [osc.john_nirenberg_profile(b, 1.1) for b in corpus]
    r2 = min(r.r2 for r in reps)
    ok = all(r.passed for r in reps)
    return Outcome(r2, ok, {"slopes": [r.slope for r in reps], "r2": [r.r2 for r in reps]})


@register("osc.scores.rank_correlation", "the three oscillation scores rank a corpus alike",
          EMPIRICAL, 0.8, grid=G_OSC, family="bmo-corpus", count=20)
def _rank(rng):
    res = osc.corpus_rank_correlation(_corpus(rng, 1.1, 20), 1.1)
    lo = min(res["spearman"].values())
    return Outcome(lo, bool(lo >= 0.8), res["spearman"])


# -- limit-laws ------------------------------------------------------------------


@register("limit.classical", "fractional operators converge to the classical ones as the angle tends to a right angle",
          EMPIRICAL, 1e-6, grid=(1, 8.0, 1024), family="gaussian", l_max=24)
def _classical_limit(rng):
    g = make_grid(1, 8.0, 1024)
    prof = lim.classical_limit_profile(gaussian(g), lp.build_bank(g), sy.smoothstep(1.0, 3.0), 24)
    final = max(prof.metrics[m][-1] for m in prof.gated)
    return Outcome(final, prof.passed, {"j": prof.extra["j"]})


@register("limit.singular_boundary", "angle-side selectors collapse to phi(0) as the angle tends to zero",
          EMPIRICAL, 1e-6, grid=(1, 8.0, 1024), family="gaussian", phi=["bump", "annulus"])
def _singular(rng):
    g = make_grid(1, 8.0, 1024)
    f = gaussian(g)
    ann = sy.radial(lambda r: sy.transition(r) - sy.transition(2 * r), "annulus")
    profs = [lim.singular_boundary_profile(f, phi, 1.0, 12) for phi in (sy.bump(), ann)]
    final = max(p.metrics["selector"][-1] for p in profs)
    return Outcome(final, all(p.passed for p in profs),
                   {"doubling_ratios": [p.extra["doubling_ratios"] for p in profs]})


@register("limit.regime.examples", "regime classifier on a right angle, a tiny angle and a third of pi",
          EXACT, 0.0, alphas=["pi/2", 0.05, "pi/3"])
def _regimes(rng):
    want = {math.pi / 2: lim.CLASSICAL, 0.05: lim.WARNING, math.pi / 3: lim.FRACTIONAL}
    bad = sum(lim.classify_regime(a) != w for a, w in want.items())
    return _le(float(bad), 0.0)


# -- running --------------------------------------------------------------------------


def select(pattern: str | None = None) -> list[CheckEntry]:
    """Entries whose id matches a shell-style pattern (all when ``None``)."""
    pats = [p.strip() for p in (pattern or "*").split(",") if p.strip()]
    return [e for e in REGISTRY.values() if any(fnmatch.fnmatchcase(e.id, p) for p in pats)]


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    return obj


def run_entry(entry_id: str, seed: int) -> dict:
    """Run one entry; exceptions become failed results."""
    e = REGISTRY[entry_id]
    rng = np.random.default_rng(e.seed_for(seed))
    try:
        out = e.run(rng)
        res = {"pass": bool(out.passed), "max_err": out.value, "details": out.details}
    except Exception as exc:  # a crash is a failure, recorded with its type
        res = {"pass": False, "max_err": None, "details": {"error": f"{type(exc).__name__}: {exc}"}}
    res = {"id": e.id, "severity": e.severity, "tolerance": e.tolerance, **res}
    return _clean(res)


def run_checks(entries, seed: int, jobs: int = 1, progress=None) -> list[dict]:
    """Results in registry order; ``jobs > 1`` uses a process pool.

    ``progress(result, seconds)`` is called per entry.  Timings never enter
    the results, which keeps reports byte-identical across runs.
    """
    ids = [e.id for e in entries]
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_entry, ids, [seed] * len(ids)))
        if progress:
            for r in results:
                progress(r, float("nan"))
    else:
        results = []
        for i in ids:
            t0 = time.perf_counter()
            results.append(run_entry(i, seed))
            if progress:
                progress(results[-1], time.perf_counter() - t0)
    return results
