"""Mean-oscillation scores in the chirp-twisted frame.

Every score of ``b`` at angle ``a`` is the classical score of ``g = M_a b``;
passing ``alpha=None`` gives the classical score itself.  Cubes are dyadic
and aligned to the sample grid, described by a sample offset and a side in
samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy import stats

from . import kernels
from .errors import CubeTooSmall, EmptyCubeFamily, PsiNotMeanZero, ScaleMisaligned
from .frft import centered_fft, centered_ifft, chirp_mul
from .grid import GridSpec, Signal, frac_param, lp_norm, make_grid
from .littlewood_paley import DyadicBank, square_function


@dataclass(frozen=True)
class Cube:
    offset: tuple
    side: int

    def slices(self) -> tuple:
        return tuple(slice(o, o + self.side) for o in self.offset)

    def volume(self, grid: GridSpec) -> float:
        return (self.side * grid.dx) ** grid.dim

    def diameter(self, grid: GridSpec) -> float:
        return self.side * grid.dx * math.sqrt(grid.dim)

    def center(self, grid: GridSpec) -> np.ndarray:
        return np.array([grid.coord_of(o) + (self.side - 1) * grid.dx / 2 for o in self.offset])


@dataclass(frozen=True)
class CubeFamily:
    """All grid-aligned dyadic cubes whose side (in samples) is in ``sides``."""

    grid: GridSpec
    sides: tuple

    @property
    def cubes(self) -> list[Cube]:
        out = []
        for b in self.sides:
            n = self.grid.N // b
            out.extend(Cube(tuple(o * b for o in idx), b)
                       for idx in product(range(n), repeat=self.grid.dim))
        return out

    def __len__(self) -> int:
        return sum((self.grid.N // b) ** self.grid.dim for b in self.sides)


def dyadic_cubes(grid: GridSpec, min_side: int = 4, max_side: int | None = None) -> CubeFamily:
    """Sides ``N, N/2, ...`` down to ``min_side`` samples."""
    sides = []
    b = grid.N if max_side is None else max_side
    while b >= min_side and grid.N % b == 0:
        sides.append(b)
        if b % 2:
            break
        b //= 2
    return CubeFamily(grid, tuple(sides))


def _twisted(b: Signal, alpha) -> np.ndarray:
    return b.values if alpha is None else chirp_mul(b, alpha).values


def _check_family(cubes: CubeFamily) -> None:
    if not cubes.sides:
        raise EmptyCubeFamily("cube family has no cubes")


def bmo_alpha_norm(b: Signal, cubes: CubeFamily, alpha=None, r: float = 1.0) -> float:
    """``sup_Q (avg_Q |g - avg_Q g|^r)^{1/r}`` with ``g = M_a b``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    _check_family(cubes)
    g = _twisted(b, alpha)
    return float(max(kernels.block_oscillation(g, s, r).max() for s in cubes.sides))


def _expand(cell_vals, s, dim):
    out = np.repeat(cell_vals, s, axis=0)
    return np.repeat(out, s, axis=1) if dim == 2 else out


def sharp_maximal(b: Signal, cubes: CubeFamily, alpha=None) -> Signal:
    """Pointwise sup, over family cubes containing ``x``, of the mean oscillation of ``M_a b``."""
    _check_family(cubes)
    g = _twisted(b, alpha)
    out = np.zeros(b.grid.shape)
    for s in cubes.sides:
        out = np.maximum(out, _expand(kernels.block_oscillation(g, s, 1.0), s, b.grid.dim))
    return b.like(out)


# -- Carleson score ------------------------------------------------------------------


def mexican_hat(dim: int = 1):
    """``(1 - (2 pi / n) |x|^2) exp(-pi |x|^2)``, mean zero in dimension ``n``."""

    def psi(x):
        r2 = sum(c * c for c in x)
        return (1.0 - (2 * np.pi / dim) * r2) * np.exp(-np.pi * r2)

    psi.__name__ = "mexican_hat"
    return psi


def check_mean_zero(psi, dim: int, tol: float = 1e-12) -> float:
    """Relative mean of ``psi`` on a fine reference grid; raises if above ``tol``."""
    ref = make_grid(dim, 32.0, 4096 if dim == 1 else 512)
    v = psi(ref.mesh())
    mean = float(abs(np.sum(v)) * ref.cell_volume)
    scale = float(np.sum(np.abs(v)) * ref.cell_volume)
    rel = mean / scale if scale > 0 else 0.0
    if rel > tol:
        raise PsiNotMeanZero(f"mean of psi is {rel:.3g} of its L1 mass")
    return rel


def psi_kernel(psi, grid: GridSpec, t: float) -> np.ndarray:
    """``t^{-n} psi(x/t)`` on the grid, shifted to exact zero sum."""
    v = psi(tuple(x / t for x in grid.mesh())) * t ** (-grid.dim)
    return v - v.mean()


def psi_transform(b: Signal, psi, t: float, alpha=None) -> Signal:
    """``M^{-1}(psi_t * M b)`` (plain ``psi_t * b`` when ``alpha`` is None)."""
    g = b if alpha is None else chirp_mul(b, alpha)
    k = psi_kernel(psi, b.grid, t)
    conv = centered_ifft(centered_fft(k, b.grid) * centered_fft(g.values, b.grid), b.grid)
    out = b.like(conv)
    return out if alpha is None else chirp_mul(out, alpha, "inverse")


def default_scales(grid: GridSpec, count: int | None = None) -> list[float]:
    """Dyadic ``t = 2 dx, 4 dx, ...`` up to a quarter period."""
    out, t = [], 2 * grid.dx
    while t <= grid.L / 4 and (count is None or len(out) < count):
        out.append(t)
        t *= 2
    return out


def carleson_score(b: Signal, alpha=None, psi=None, scales=None, cubes: CubeFamily | None = None) -> float:
    """``sup_Q ( |Q|^{-1} sum_{t <= side(Q)} int_Q |psi_t^a b|^2 dx * ln 2 )^{1/2}``.

    ``dt/t`` on the dyadic scales is the constant weight ``ln 2``.
    """
    grid = b.grid
    psi = psi or mexican_hat(grid.dim)
    check_mean_zero(psi, grid.dim)
    scales = default_scales(grid) if scales is None else list(scales)
    cubes = cubes or dyadic_cubes(grid)
    _check_family(cubes)
    energy = [(t, np.abs(psi_transform(b, psi, t, alpha).values) ** 2) for t in scales]
    best = 0.0
    for s in cubes.sides:
        side = s * grid.dx
        acc = None
        for t, e in energy:
            if t <= side * (1 + 1e-12):
                acc = e if acc is None else acc + e
        if acc is None:
            continue
        # block_means of a real array returns complex; take the real part
        cell = kernels.block_means(acc, s).real * math.log(2.0)
        best = max(best, float(cell.max()))
    return math.sqrt(best)


# -- John-Nirenberg ---------------------------------------------------------------


@dataclass
class DecayReport:
    lambdas: list
    fractions: list
    slope: float
    intercept: float
    r2: float
    bmo: float

    @property
    def passed(self) -> bool:
        return bool(self.slope < 0 and self.r2 > 0.9)

    @property
    def rate(self) -> float:
        """Fitted decay rate in units of ``1 / ||b||_BMO``."""
        return -self.slope * self.bmo


def john_nirenberg_profile(b: Signal, alpha=None, cube: Cube | None = None,
                           lambdas=None, points: int = 20) -> DecayReport:
    """Level-set fractions ``|{x in Q: |g - avg_Q g| > lambda}| / |Q|`` and a log-linear fit.

    Without ``lambdas`` the grid runs from the median oscillation to the
    level exceeded by 16 samples.
    """
    grid = b.grid
    cube = cube or Cube((0,) * grid.dim, grid.N)
    g = _twisted(b, alpha)[cube.slices()]
    osc = np.abs(g - g.mean()).ravel()
    if lambdas is None:
        hi = np.quantile(osc, 1 - 16 / osc.size)
        lo = np.quantile(osc, 0.5)
        lambdas = np.linspace(lo, hi, points)
    lambdas = np.asarray(lambdas, dtype=float)
    if np.any(np.diff(lambdas) <= 0) or np.any(lambdas <= 0):
        raise ValueError("lambda grid must be positive and increasing")
    fr = np.array([(osc > lam).mean() for lam in lambdas])
    pos = fr > 0
    slope = intercept = float("nan")
    r2 = 0.0
    if pos.sum() >= 2:
        res = stats.linregress(lambdas[pos], np.log(fr[pos]))
        slope, intercept, r2 = float(res.slope), float(res.intercept), float(res.rvalue**2)
    bmo = float(osc.mean())
    return DecayReport(lambdas.tolist(), fr.tolist(), slope, intercept, r2, bmo)


# -- Hardy space and atoms -----------------------------------------------------------


def hardy_square_quasinorm(f: Signal, bank: DyadicBank, alpha=None, p: float = 1.0) -> float:
    """``||S_a f||_p`` for ``0 < p <= 1``."""
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    return lp_norm(square_function(f, bank, alpha), p)


def moment_orders(dim: int, p: float) -> list[tuple]:
    K = math.floor(dim * (1.0 / p - 1.0) + 1e-12)
    if dim == 1:
        return [(k,) for k in range(K + 1)]
    return [(a, k - a) for k in range(K + 1) for a in range(k, -1, -1)]


@dataclass
class AtomReport:
    cube: Cube
    p: float
    q: float
    support_ok: bool
    size_ok: bool
    moments: list = field(default_factory=list)
    moments_ok: bool = True

    @property
    def passed(self) -> bool:
        return bool(self.support_ok and self.size_ok and self.moments_ok)


def _monomials(grid: GridSpec, cube: Cube, orders) -> list[np.ndarray]:
    c = cube.center(grid)
    mesh = [m[cube.slices()] - c[i] for i, m in enumerate(grid.mesh())]
    return [np.prod([mesh[i] ** o for i, o in enumerate(gam)], axis=0) for gam in orders]


def validate_atom(A: Signal, cube: Cube, p: float, q: float, alpha=None) -> AtomReport:
    """Support, size and chirped-moment conditions for an atom on ``cube``.

    Moments are taken about the cube center, which is equivalent for the
    vanishing of all moments up to a given order.
    """
    grid = A.grid
    a = A.values if alpha is None else chirp_mul(A, alpha).values
    amax = float(np.abs(A.values).max())
    mask = np.zeros(grid.shape, dtype=bool)
    mask[cube.slices()] = True
    leak = float(np.abs(A.values[~mask]).max()) if (~mask).any() else 0.0
    support_ok = leak <= 1e-12 * amax
    vol = cube.volume(grid)
    size_bound = vol ** ((0.0 if q == math.inf else 1.0 / q) - 1.0 / p)
    size_ok = lp_norm(A, q) <= size_bound * (1 + 1e-10)
    orders = moment_orders(grid.dim, p)
    l1 = lp_norm(A, 1)
    diam = cube.diameter(grid)
    moments, ok = [], True
    for gam, mono in zip(orders, _monomials(grid, cube, orders)):
        mom = abs(np.sum(mono * a[cube.slices()]) * grid.cell_volume)
        tol = 1e-8 * l1 * diam ** sum(gam)
        moments.append({"gamma": list(gam), "modulus": float(mom), "tol": float(tol)})
        ok = ok and mom <= tol
    return AtomReport(cube, p, q, bool(support_ok), bool(size_ok), moments, bool(ok))


def synthesize_atom(grid: GridSpec, cube: Cube, p: float, q: float, alpha=None,
                    seed: int = 0) -> Signal:
    """Random tapered bump on ``cube``, moments removed, scaled to the size bound,
    then chirped back by ``M^{-1}``."""
    if any(o < 0 or o + cube.side > grid.N for o in cube.offset):
        raise ScaleMisaligned("cube leaves the grid")
    orders = moment_orders(grid.dim, p)
    if cube.side**grid.dim <= len(orders) or cube.side < 4:
        raise CubeTooSmall(f"cube of side {cube.side} cannot carry {len(orders)} moments")
    rng = np.random.default_rng(seed)
    shape = (cube.side,) * grid.dim
    taper1 = np.sin(np.pi * (np.arange(cube.side) + 0.5) / cube.side) ** 2
    taper = taper1 if grid.dim == 1 else np.outer(taper1, taper1)
    v = rng.standard_normal(shape) * taper
    basis = np.stack([m.ravel() for m in _monomials(grid, cube, orders)], axis=1)
    Qm, _ = np.linalg.qr(basis)
    flat = v.ravel()
    for _ in range(2):  # second pass cleans rounding
        flat = flat - Qm @ (Qm.T @ flat)
    full = np.zeros(grid.shape)
    full[cube.slices()] = flat.reshape(shape)
    sig = Signal(grid, full)
    vol = cube.volume(grid)
    bound = vol ** ((0.0 if q == math.inf else 1.0 / q) - 1.0 / p)
    sig = sig * (bound / lp_norm(sig, q))
    return sig if alpha is None else chirp_mul(sig, alpha, "inverse")


# -- scoreboard ---------------------------------------------------------------------


@dataclass
class StabilityScores:
    omega_r: float
    carleson: float
    sharpmax: float
    r: float
    psi: str

    @property
    def ratios(self) -> dict:
        def div(a, b):
            return a / b if b > 0 else float("nan")

        return {"carleson/omega": div(self.carleson, self.omega_r),
                "sharpmax/omega": div(self.sharpmax, self.omega_r),
                "carleson/sharpmax": div(self.carleson, self.sharpmax)}

    def as_dict(self) -> dict:
        return {"omega_r": self.omega_r, "carleson": self.carleson,
                "sharpmax": self.sharpmax, "r": self.r, "psi": self.psi,
                "ratios": self.ratios}


def stability_scores(b: Signal, alpha=None, r: float = 2.0, psi=None,
                     config: dict | None = None) -> tuple[StabilityScores, dict]:
    """Oscillation, Carleson and sharp-maximal scores with an equivalence report.

    ``config`` may hold ``cubes``, ``scales`` and ``bands``: a mapping from
    ratio name to ``(low, high)`` calibrated on a reference corpus.  Ratios
    outside their band are flagged.
    """
    config = config or {}
    cubes = config.get("cubes") or dyadic_cubes(b.grid)
    psi = psi or mexican_hat(b.grid.dim)
    sc = StabilityScores(
        bmo_alpha_norm(b, cubes, alpha, r),
        carleson_score(b, alpha, psi, config.get("scales"), cubes),
        lp_norm(sharp_maximal(b, cubes, alpha), math.inf),
        r,
        getattr(psi, "__name__", "psi"),
    )
    flags = {}
    for name, (lo, hi) in (config.get("bands") or {}).items():
        v = sc.ratios.get(name)
        flags[name] = bool(v is not None and np.isfinite(v) and lo <= v <= hi)
    return sc, {"in_band": flags, "all_in_band": all(flags.values()) if flags else None}


def corpus_rank_correlation(signals, alpha=None, r: float = 2.0, psi=None,
                            config: dict | None = None) -> dict:
    """Spearman correlations between the three scores across a corpus."""
    rows = [stability_scores(s, alpha, r, psi, config)[0] for s in signals]
    cols = {"omega_r": [x.omega_r for x in rows], "carleson": [x.carleson for x in rows],
            "sharpmax": [x.sharpmax for x in rows]}
    out = {}
    names = list(cols)
    for i in range(3):
        for j in range(i + 1, 3):
            rho = stats.spearmanr(cols[names[i]], cols[names[j]]).statistic
            out[f"{names[i]}~{names[j]}"] = float(rho)
    pct = {k: [float(np.percentile(v, q)) for q in (10, 50, 90)] for k, v in cols.items()}
    return {"spearman": out, "corpus_percentiles": pct, "scores": cols}


def bmo_corpus(grid: GridSpec, count: int = 20, seed: int = 0, alpha=None) -> list[Signal]:
    """Sums of logarithmic singularities plus smooth parts, chirped back by ``M^{-1}``.

    Singularities sit half a sample off the grid so every sample is finite.
    Their count and weights vary across the corpus so the scores spread.
    """
    rng = np.random.default_rng(seed)
    mesh = grid.mesh()
    out = []
    for _ in range(count):
        v = np.zeros(grid.shape)
        for _ in range(rng.integers(1, 4)):
            k = rng.integers(grid.N // 8, 7 * grid.N // 8, size=grid.dim)
            centre = [grid.coord_of(int(i)) + grid.dx / 2 for i in k]
            r = np.sqrt(sum((m - c) ** 2 for m, c in zip(mesh, centre)))
            v = v + rng.uniform(0.3, 3.0) * np.log(r)
        v = v + rng.uniform(0, 1) * np.cos(2 * np.pi * mesh[0] * rng.integers(1, 4) / grid.L)
        sig = Signal(grid, v + 0j)
        out.append(sig if alpha is None else chirp_mul(sig, alpha, "inverse"))
    return out


def psi_nondegeneracy(psi, grid: GridSpec, scales=None) -> float:
    """``min over nonzero grid frequencies of max_t |psi_t hat(xi)|``; reported, never gated."""
    scales = default_scales(grid) if scales is None else list(scales)
    best = np.zeros(grid.shape)
    for t in scales:
        best = np.maximum(best, np.abs(centered_fft(psi_kernel(psi, grid, t), grid)))
    mask = grid.freq_radius(1.0) > 0
    return float(best[mask].min())
