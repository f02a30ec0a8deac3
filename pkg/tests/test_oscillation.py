import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from frlp import oscillation as osc
from frlp.errors import CubeTooSmall, EmptyCubeFamily, PsiNotMeanZero, ScaleMisaligned
from frlp.frft import chirp_mul
from frlp.generators import random_bandlimited
from frlp.grid import Signal, lp_norm, make_grid
from frlp.littlewood_paley import build_bank
from oracles import level_fractions, sharp_maximal_scan

G = make_grid(1, 16.0, 256)
CUBES = osc.dyadic_cubes(G)
CORPUS = osc.bmo_corpus(G, 5, 11, 1.1)
seeds = st.integers(0, 2**31 - 1)


def test_cube_geometry():
    c = osc.Cube((8,), 4)
    assert c.slices() == (slice(8, 12),)
    assert c.volume(G) == 0.25
    assert c.center(G)[0] == pytest.approx(G.coord_of(8) + 1.5 * G.dx)
    g2 = make_grid(2, 4.0, 16)
    assert osc.Cube((0, 4), 4).diameter(g2) == pytest.approx(math.sqrt(2))


def test_dyadic_family_sizes():
    assert CUBES.sides == (256, 128, 64, 32, 16, 8, 4)
    assert len(CUBES) == len(CUBES.cubes) == sum(256 // s for s in CUBES.sides)
    assert len(osc.dyadic_cubes(make_grid(2, 4.0, 16))) == 1 + 4 + 16


def test_empty_family_rejected():
    empty = osc.dyadic_cubes(G, min_side=512)
    with pytest.raises(EmptyCubeFamily):
        osc.bmo_alpha_norm(CORPUS[0], empty, 1.1)
    with pytest.raises(EmptyCubeFamily):
        osc.sharp_maximal(CORPUS[0], empty)


@pytest.mark.parametrize("i", range(5))
def test_sharp_maximal_matches_scan_oracle(i):
    b = CORPUS[i]
    got = osc.sharp_maximal(b, CUBES, 1.1).values
    want = sharp_maximal_scan(chirp_mul(b, 1.1).values, 4)
    assert np.allclose(got, want, rtol=1e-14, atol=0)
    assert osc.bmo_alpha_norm(b, CUBES, 1.1, 1.0) == pytest.approx(want.max(), rel=1e-14)


@pytest.mark.parametrize("r", [1.0, 2.0, 3.0])
def test_bmo_two_paths(r):
    for b in CORPUS:
        x = osc.bmo_alpha_norm(b, CUBES, 1.1, r)
        y = osc.bmo_alpha_norm(chirp_mul(b, 1.1), CUBES, None, r)
        assert abs(x - y) <= 1e-14 * y


def test_bmo_monotone_in_r_and_rejects_small_r():
    for b in CORPUS:
        vals = [osc.bmo_alpha_norm(b, CUBES, 1.1, r) for r in (1.0, 1.5, 2.0, 4.0)]
        assert all(a <= b_ * (1 + 1e-14) for a, b_ in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        osc.bmo_alpha_norm(CORPUS[0], CUBES, 1.1, 0.5)


@pytest.mark.parametrize("alpha", [0.7, 1.1, 2.0])
def test_scores_vanish_on_chirped_constants(alpha):
    b = chirp_mul(Signal(G, np.full(G.shape, 2.0 - 1.5j)), alpha, "inverse")
    sc, _ = osc.stability_scores(b, alpha)
    assert sc.omega_r <= 1e-12 and sc.sharpmax <= 1e-12 and sc.carleson <= 1e-12


@given(st.floats(0.1, 10.0), st.floats(-math.pi, math.pi))
def test_scores_are_homogeneous(mag, phase):
    b = CORPUS[0]
    c = mag * complex(math.cos(phase), math.sin(phase))
    s0, _ = osc.stability_scores(b, 1.1)
    s1, _ = osc.stability_scores(b * c, 1.1)
    for name in ("omega_r", "carleson", "sharpmax"):
        assert getattr(s1, name) == pytest.approx(mag * getattr(s0, name), rel=1e-12)


def test_carleson_moduli_transfer():
    psi = osc.mexican_hat(1)
    b = CORPUS[1]
    g = chirp_mul(b, 1.1)
    for t in osc.default_scales(G):
        x = np.abs(osc.psi_transform(b, psi, t, 1.1).values)
        y = np.abs(osc.psi_transform(g, psi, t).values)
        assert np.abs(x - y).max() <= 1e-14 * y.max()
    assert osc.carleson_score(b, 1.1) == pytest.approx(osc.carleson_score(g), rel=1e-14)


def test_mexican_hat_mean_zero_and_non_mean_zero_rejected():
    for dim in (1, 2):
        assert osc.check_mean_zero(osc.mexican_hat(dim), dim) <= 1e-12
    with pytest.raises(PsiNotMeanZero):
        osc.carleson_score(CORPUS[0], 1.1, psi=lambda x: np.exp(-np.pi * x[0] ** 2))


def test_psi_kernel_sums_to_zero_and_scales():
    k = osc.psi_kernel(osc.mexican_hat(1), G, 0.5)
    assert abs(k.sum()) < 1e-12
    assert osc.default_scales(G) == [2 * G.dx * 2**i for i in range(6)]
    assert osc.psi_nondegeneracy(osc.mexican_hat(1), G) > 0


@pytest.mark.parametrize("i", range(5))
def test_john_nirenberg_fractions_match_oracle_and_decrease(i):
    b = CORPUS[i]
    rep = osc.john_nirenberg_profile(b, 1.1)
    g = chirp_mul(b, 1.1).values
    assert np.allclose(rep.fractions, level_fractions(g, rep.lambdas), rtol=0, atol=0)
    assert all(x >= y for x, y in zip(rep.fractions, rep.fractions[1:]))
    assert rep.slope < 0


def test_john_nirenberg_scaling_covariance():
    b = CORPUS[2]
    r1 = osc.john_nirenberg_profile(b, 1.1)
    r3 = osc.john_nirenberg_profile(b * 3.0, 1.1)
    assert r3.slope == pytest.approx(r1.slope / 3, rel=1e-9)
    assert r3.r2 == pytest.approx(r1.r2, rel=1e-9)
    assert r3.rate == pytest.approx(r1.rate, rel=1e-9)


def test_john_nirenberg_bounded_signal_has_empty_tail():
    f = random_bandlimited(G, np.random.default_rng(0))
    top = 2 * np.abs(f.values).max()
    rep = osc.john_nirenberg_profile(f, None, lambdas=[top / 4, top / 2, top])
    assert rep.fractions[-1] == 0
    with pytest.raises(ValueError):
        osc.john_nirenberg_profile(f, None, lambdas=[1.0, 0.5])


def test_john_nirenberg_passes_on_fine_grid():
    g = make_grid(1, 16.0, 1024)
    for b in osc.bmo_corpus(g, 3, 5, 1.1):
        rep = osc.john_nirenberg_profile(b, 1.1)
        assert rep.passed and rep.r2 > 0.9


BANK = build_bank(make_grid(1, 8.0, 256))


@given(seeds, seeds, st.sampled_from([0.5, 0.75, 1.0]))
def test_hardy_quasinorm_p_triangle(s1, s2, p):
    g = BANK.grid
    f = random_bandlimited(g, np.random.default_rng(s1))
    h = random_bandlimited(g, np.random.default_rng(s2))
    lhs = osc.hardy_square_quasinorm(f + h, BANK, 1.1, p) ** p
    rhs = osc.hardy_square_quasinorm(f, BANK, 1.1, p) ** p + osc.hardy_square_quasinorm(h, BANK, 1.1, p) ** p
    assert lhs <= rhs * (1 + 1e-12)


def test_hardy_two_paths_and_range():
    f = random_bandlimited(BANK.grid, np.random.default_rng(4))
    for p in (0.5, 1.0):
        x = osc.hardy_square_quasinorm(f, BANK, 1.1, p)
        y = osc.hardy_square_quasinorm(chirp_mul(f, 1.1), BANK, None, p)
        assert abs(x - y) <= 1e-14 * y
    with pytest.raises(ValueError):
        osc.hardy_square_quasinorm(f, BANK, 1.1, 1.5)


def test_moment_orders():
    assert osc.moment_orders(1, 1.0) == [(0,)]
    assert osc.moment_orders(1, 0.5) == [(0,), (1,)]
    assert osc.moment_orders(1, 0.4) == [(0,), (1,)]  # floor(1.5)
    assert osc.moment_orders(2, 0.5) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


@given(seeds)
def test_synthesized_atoms_validate(seed):
    rng = np.random.default_rng(seed)
    side = int(2 ** rng.integers(3, 7))
    cube = osc.Cube((int(rng.integers(0, G.N // side)) * side,), side)
    p = float(rng.choice([1.0, 0.75, 0.5, 0.4]))
    q = float(rng.choice([2.0, 4.0, math.inf]))
    a = float(rng.uniform(0.3, 2.8))
    A = osc.synthesize_atom(G, cube, p, q, a, seed)
    rep = osc.validate_atom(A, cube, p, q, a)
    assert rep.passed, rep
    assert lp_norm(A, q) == pytest.approx(cube.volume(G) ** ((0 if q == math.inf else 1 / q) - 1 / p))


def test_atoms_validate_over_fifty_cases():
    rng = np.random.default_rng(77)
    for _ in range(50):
        side = int(2 ** rng.integers(3, 6))
        cube = osc.Cube((int(rng.integers(0, G.N // side)) * side,), side)
        p, q = float(rng.choice([1.0, 0.5])), float(rng.choice([2.0, math.inf]))
        a = float(rng.uniform(0.3, 2.8))
        A = osc.synthesize_atom(G, cube, p, q, a, int(rng.integers(0, 2**31)))
        assert osc.validate_atom(A, cube, p, q, a).passed


def test_two_dimensional_atom():
    g = make_grid(2, 8.0, 32)
    cube = osc.Cube((8, 16), 8)
    A = osc.synthesize_atom(g, cube, 0.5, 2.0, 1.1, 3)
    assert osc.validate_atom(A, cube, 0.5, 2.0, 1.1).passed


def test_atom_fails_under_wrong_angle():
    cube = osc.Cube((64,), 32)
    A = osc.synthesize_atom(G, cube, 1.0, 2.0, 1.1, 0)
    rep = osc.validate_atom(A, cube, 1.0, 2.0, 0.6)
    assert rep.support_ok and rep.size_ok and not rep.moments_ok


def test_zero_signal_is_an_atom():
    cube = osc.Cube((0,), 16)
    assert osc.validate_atom(Signal(G, np.zeros(G.N)), cube, 0.5, 2.0, 1.1).passed


def test_atom_outside_cube_fails_support():
    A = osc.synthesize_atom(G, osc.Cube((0,), 16), 1.0, 2.0, 1.1, 0)
    assert not osc.validate_atom(A, osc.Cube((16,), 16), 1.0, 2.0, 1.1).support_ok


def test_atom_synthesis_rejections():
    with pytest.raises(CubeTooSmall):
        osc.synthesize_atom(G, osc.Cube((0,), 2), 1.0, 2.0, 1.1)
    with pytest.raises(ScaleMisaligned):
        osc.synthesize_atom(G, osc.Cube((250,), 16), 1.0, 2.0, 1.1)


def test_corpus_is_deterministic_and_finite():
    a = osc.bmo_corpus(G, 4, 9, 0.8)
    b = osc.bmo_corpus(G, 4, 9, 0.8)
    assert all(np.array_equal(x.values, y.values) for x, y in zip(a, b))
    assert all(np.isfinite(x.values).all() for x in a)


def test_stability_bands_and_rank_correlation():
    bands = {"sharpmax/omega": (0.0, 10.0), "carleson/omega": (100.0, 200.0)}
    sc, rep = osc.stability_scores(CORPUS[0], 1.1, config={"bands": bands})
    assert rep["in_band"] == {"sharpmax/omega": True, "carleson/omega": False}
    assert rep["all_in_band"] is False
    assert set(sc.as_dict()) == {"omega_r", "carleson", "sharpmax", "r", "psi", "ratios"}
    res = osc.corpus_rank_correlation(osc.bmo_corpus(G, 12, 3, 1.1), 1.1)
    assert set(res["spearman"]) == {"omega_r~carleson", "omega_r~sharpmax", "carleson~sharpmax"}
    assert all(-1 <= v <= 1 for v in res["spearman"].values())
    assert res["spearman"]["omega_r~sharpmax"] > 0.8
