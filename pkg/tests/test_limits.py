import csv
import io
import json
import math

import numpy as np
import pytest

from frlp import limits as lim
from frlp import symbols as sy
from frlp.generators import gaussian
from frlp.grid import make_grid
from frlp.littlewood_paley import build_bank
from oracles import descriptors

G = make_grid(1, 8.0, 1024)
F = gaussian(G)


@pytest.fixture(scope="module")
def classical():
    return lim.classical_limit_profile(F, build_bank(G), sy.smoothstep(1.0, 3.0), 24)


@pytest.fixture(scope="module")
def singular():
    return lim.singular_boundary_profile(F, sy.bump(), 1.0, 12)


@pytest.mark.parametrize("alpha,want", [(math.pi / 2, lim.CLASSICAL), (0.05, lim.WARNING),
                                        (math.pi / 3, lim.FRACTIONAL), (2.0, lim.FRACTIONAL),
                                        (math.pi / 2 + 0.05, lim.CLASSICAL)])
def test_regime_examples(alpha, want):
    s, k, D = descriptors(alpha)
    assert lim.classify_regime(alpha) == want
    # recompute the rule from hand descriptors
    hand = lim.CLASSICAL if D <= 0.1 else lim.WARNING if (D >= 3 or s < 0.1) else lim.FRACTIONAL
    assert hand == want


def test_regime_threshold_is_inclusive():
    a = 1.3
    D = descriptors(a)[2]
    assert lim.classify_regime(a, lim.RegimeConfig(D, 3.0, 0.1)) == lim.CLASSICAL
    assert lim.classify_regime(a, lim.RegimeConfig(D * 0.999, 3.0, 0.1)) == lim.FRACTIONAL
    assert lim.classify_regime(a, lim.RegimeConfig(0.01, D, 0.1)) == lim.WARNING


def test_regime_config_validation():
    with pytest.raises(ValueError):
        lim.RegimeConfig(3.0, 0.1)
    with pytest.raises(ValueError):
        lim.RegimeConfig(0.1, 3.0, 1.5)


def test_classical_limit_converges(classical):
    assert classical.alphas[0] == pytest.approx(math.pi / 2 + 0.5)
    assert len(classical.levels) == 24
    for name in classical.gated:
        assert classical.metrics[name][-1] < 1e-6
        assert classical.tail_nonincreasing(name)
    assert classical.passed
    assert not any(classical.aliased)


def test_classical_limit_default_level_holds_most_energy(classical):
    # a unit Gaussian has almost all its energy below |xi| = 1, i.e. in block 1
    assert classical.extra["j"] == 1


def test_classical_limit_errors_shrink_linearly():
    # first-order in the angle offset: halving 2^-l roughly halves the error
    prof = lim.classical_limit_profile(F, build_bank(G), sy.gauss(0.5), 12)
    v = np.array(prof.metrics["multiplier"][4:])
    assert np.all(np.abs(v[1:] / v[:-1] - 0.5) < 0.05)


def test_rough_symbol_not_gated_on_sup():
    prof = lim.classical_limit_profile(F, build_bank(G), sy.ball(2.0), 4)
    assert "symbol_sup" not in prof.gated


def test_singular_boundary_collapse(singular):
    assert singular.alphas[-1] == 2.0**-12
    assert singular.metrics["selector"][-1] < 1e-6
    assert singular.extra["passband_ok"]
    assert singular.extra["doubling_ratios"]
    assert all(abs(r / 2 - 1) <= 0.05 for r in singular.extra["doubling_ratios"])
    assert singular.passed


def test_passband_center_tracks_effective_radius():
    # the bump's centroid sits at a fixed multiple of R / s
    c1 = lim.passband_center(sy.bump(), 1.0, G, 0.5)
    c2 = lim.passband_center(sy.bump(), 1.0, G, 0.25)
    assert c2 / c1 == pytest.approx(math.sin(0.5) / math.sin(0.25), rel=0.01)


def test_profile_csv_export(classical):
    rows = list(csv.DictReader(io.StringIO(classical.to_csv())))
    assert len(rows) == 24
    assert list(rows[0])[:5] == ["level", "alpha", "s", "kappa", "D"]
    assert float(rows[-1]["alpha"]) == classical.alphas[-1]
    assert rows[0]["aliased"] == "False"


def test_profile_json_export(singular):
    doc = json.loads(singular.to_json())
    assert doc["law"] == "singular-boundary" and doc["pass"] is True
    assert len(doc["rows"]) == 12
    assert doc["rows"][0]["D"] == pytest.approx(descriptors(0.5)[2])


def test_descriptor_curve_skips_singular_angles():
    rows = lim.descriptor_curve([0.0, 0.5, math.pi, 1.0])
    assert len(rows) == 2
