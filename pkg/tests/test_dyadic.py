import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ANGLES
from frlp import dyadic as dy
from frlp import littlewood_paley as lp
from frlp.errors import DimUnsupported, ScaleMisaligned
from frlp.frft import chirp_mul
from frlp.generators import random_bandlimited
from frlp.grid import Signal, lp_norm, make_grid
from oracles import cell_means, haar_basis

G = make_grid(1, 8.0, 256)
TREE = dy.make_tree(G)
seeds = st.integers(0, 2**31 - 1)


def _sig(seed, grid=G):
    return random_bandlimited(grid, np.random.default_rng(seed))


def test_tree_scales():
    # whole period L = 2^3 is scale -3; single samples are 256 = 2^8 cells deeper
    assert (TREE.k_min, TREE.k_max) == (-3, 5)
    assert TREE.cell_samples(-3) == 256 and TREE.cell_samples(5) == 1
    assert TREE.covers_samples
    assert not dy.make_tree(G, 2).covers_samples


@pytest.mark.parametrize("args", [(make_grid(1, 6.0, 256), None), (G, 6), (G, -4)])
def test_tree_rejects_misaligned(args):
    with pytest.raises(ScaleMisaligned):
        dy.make_tree(*args)


@pytest.mark.parametrize("k", range(-3, 6))
def test_expectation_matches_cell_mean_oracle(k):
    f = _sig(1)
    got = dy.expectation(f, TREE, k).values
    assert np.allclose(got, cell_means(f.values, TREE.cell_samples(k)), rtol=0, atol=1e-15)


def test_twisted_expectation_is_conjugated_cell_mean():
    f = _sig(2)
    g = chirp_mul(f, 1.1)
    want = chirp_mul(Signal(G, cell_means(g.values, 8)), 1.1, "inverse").values
    assert np.allclose(dy.expectation(f, TREE, 2, 1.1).values, want, atol=1e-15)


def test_difference_needs_a_coarser_scale():
    with pytest.raises(ScaleMisaligned):
        dy.difference(_sig(0), TREE, TREE.k_min)


def test_untwisted_haar_system_matches_hand_built_basis():
    g = make_grid(1, 8.0, 64)
    tree = dy.make_tree(g)
    got = np.stack([h.values for h in dy.haar_system(tree)])
    want = np.stack(haar_basis(g.N, g.L))
    assert got.shape == want.shape == (64, 64)
    assert np.array_equal(got, want)


@pytest.mark.parametrize("alpha", [None, 0.7, 2.0])
def test_haar_gram_is_identity(alpha):
    g = make_grid(1, 8.0, 128)
    H = np.stack([h.values for h in dy.haar_system(dy.make_tree(g), alpha)])
    gram = H.conj() @ H.T * g.dx
    assert np.abs(gram - np.eye(len(H))).max() <= 1e-12


@given(seeds, st.sampled_from(ANGLES))
def test_haar_parseval_and_inverse(seed, alpha):
    f = _sig(seed)
    coef = dy.haar_transform(f, TREE, alpha)
    assert coef.energy() == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-10)
    back = dy.inverse_haar(coef)
    assert np.linalg.norm(back.values - f.values) <= 1e-10 * np.linalg.norm(f.values)


def test_haar_coefficient_is_inner_product():
    f = _sig(4)
    coef = dy.haar_transform(f, TREE, 1.1)
    h = dy.haar_function(TREE, 0, 3, 1.1)
    ip = np.sum(f.values * h.values.conj()) * G.dx
    assert coef.coefficient(0, 3) == pytest.approx(ip, abs=1e-14)


def test_haar_function_rejects_bad_interval():
    with pytest.raises(ScaleMisaligned):
        dy.haar_function(TREE, 5, 0)
    with pytest.raises(ScaleMisaligned):
        dy.haar_function(TREE, 0, 99)


def test_haar_is_one_dimensional():
    g = make_grid(2, 4.0, 16)
    with pytest.raises(DimUnsupported):
        dy.haar_transform(Signal(g, np.ones((16, 16))), dy.make_tree(g))


def test_haar_csv(tmp_path):
    coef = dy.haar_transform(_sig(5, make_grid(1, 8.0, 16)), dy.make_tree(make_grid(1, 8.0, 16)))
    coef.to_csv(tmp_path / "c.csv")
    lines = (tmp_path / "c.csv").read_text().splitlines()
    assert lines[0] == "scale,offset,re,im" and len(lines) == 17
    assert lines[1].startswith("-3,-1,")


@pytest.mark.parametrize("k_max", [None, 0, -3])
@given(seed=seeds, alpha=st.sampled_from(ANGLES))
def test_martingale_pieces_sum_back(k_max, seed, alpha):
    tree = dy.make_tree(G, k_max)
    f = _sig(seed)
    pc = dy.martingale_pieces(f, tree, alpha)
    tot = pc["mean"] + pc["rest"]
    for d in pc["diff"].values():
        tot = tot + d
    assert np.linalg.norm(tot.values - f.values) < 1e-10 * np.linalg.norm(f.values)


def test_martingale_differences_are_orthogonal():
    f = _sig(6)
    pc = dy.martingale_pieces(f, TREE, 0.9)
    d = [v.values for v in pc["diff"].values()]
    for a in range(len(d)):
        for b in range(a):
            assert abs(np.vdot(d[a], d[b])) <= 1e-12 * np.vdot(f.values, f.values).real


@given(seeds, st.sampled_from(ANGLES))
def test_square_function_transfers_pointwise(seed, alpha):
    f = _sig(seed)
    x = dy.dyadic_square_function(f, TREE, alpha).values
    y = dy.dyadic_square_function(chirp_mul(f, alpha), TREE).values
    assert np.abs(x - y).max() <= 1e-14 * np.abs(y).max()


def test_square_function_energy_identity():
    # orthogonal differences: ||S f||^2 = ||f||^2 - ||E_kmin f||^2 on the full tree
    f = _sig(7)
    S = dy.dyadic_square_function(f, TREE, 1.3)
    mean = dy.expectation(f, TREE, TREE.k_min, 1.3)
    assert lp_norm(S, 2) ** 2 == pytest.approx(lp_norm(f, 2) ** 2 - lp_norm(mean, 2) ** 2, rel=1e-12)


def test_mixed_probe_transfers_norms():
    bank = lp.build_bank(G, -1, 4, homogeneous=True)
    pairs = [(j, k) for j in (0, 2) for k in (-1, 1, 4)]
    table = dy.mixed_orthogonality_probe(TREE, bank, pairs, 1.1, iterations=100)
    assert table.max_gap <= 1e-8
    assert len(table.rows) == 6
    assert all(0 <= r.classical <= 1 + 1e-12 for r in table.rows)


def test_default_pairs_respect_distance():
    pairs = dy.default_pairs()
    assert max(abs(j - k) for j, k in pairs) == 6
    assert {abs(j - k) for j, k in pairs} == set(range(7))
    assert len(pairs) == len(set(pairs))
