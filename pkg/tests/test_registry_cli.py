import json
import math

import numpy as np
import pytest

from frlp import cli
from frlp import io as sio
from frlp import oscillation as osc
from frlp import registry
from frlp.generators import gaussian, random_bandlimited
from frlp.grid import make_grid

FAST = "frft.plancherel,frft.roundtrip,lp.partition,limit.regime.examples"


def test_registry_size_and_ids():
    ids = list(registry.REGISTRY)
    assert len(ids) >= 30 and len(ids) == len(set(ids))
    prefixes = {i.split(".")[0] for i in ids}
    assert prefixes == {"frft", "mult", "lp", "dyadic", "pot", "osc", "limit"}
    for e in registry.REGISTRY.values():
        assert e.severity in (registry.EXACT, registry.EMPIRICAL)
        assert e.statement and math.isfinite(e.tolerance)


def test_filter_selects_by_pattern():
    dy = registry.select("dyadic.*")
    assert dy and all(e.id.startswith("dyadic.") for e in dy)
    both = registry.select("dyadic.haar.*,frft.plancherel")
    assert {e.id for e in both} == {"dyadic.haar.gram", "dyadic.haar.parseval", "frft.plancherel"}
    assert registry.select("nothing.here") == []


def test_duplicate_registration_rejected():
    with pytest.raises(ValueError):
        registry.register("frft.plancherel", "dup", registry.EXACT, 0.0)(lambda rng: None)


def test_entry_seeds_are_independent_of_order():
    e = registry.REGISTRY["frft.roundtrip"]
    assert e.seed_for(7) == registry.REGISTRY["frft.roundtrip"].seed_for(7)
    assert e.seed_for(7) != registry.REGISTRY["frft.plancherel"].seed_for(7)
    a = registry.run_checks(registry.select(FAST), 7)
    b = registry.run_checks(list(reversed(registry.select(FAST))), 7)
    assert sorted(a, key=lambda r: r["id"]) == sorted(b, key=lambda r: r["id"])


def test_crashing_entry_is_a_failure(monkeypatch):
    def boom(rng):
        raise RuntimeError("kaput")

    e = registry.REGISTRY["frft.plancherel"]
    monkeypatch.setitem(registry.REGISTRY, "frft.plancherel",
                        registry.CheckEntry(e.id, e.statement, e.severity, e.tolerance,
                                            e.generator, boom))
    res = registry.run_entry("frft.plancherel", 0)
    assert res["pass"] is False and "kaput" in res["details"]["error"]


def _run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_check_report_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert _run(["check", "--seed", "7", "--filter", FAST, "--out", str(a)], capsys)[0] == 0
    assert _run(["check", "--seed", "7", "--filter", FAST, "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["summary"]["total"] == 4 and doc["summary"]["failed"] == []
    assert [e["id"] for e in doc["entries"]] == FAST.split(",")
    assert "digest" in doc["environment"]


def test_check_list(capsys):
    code, out, _ = _run(["check", "--filter", "osc.*", "--list"], capsys)
    assert code == 0
    assert all(e["id"].startswith("osc.") for e in json.loads(out))


def test_empirical_failure_warns_unless_strict(monkeypatch, tmp_path, capsys):
    e = registry.REGISTRY["frft.inverse_convention"]
    monkeypatch.setitem(registry.REGISTRY, e.id, registry.CheckEntry(
        e.id, e.statement, e.severity, e.tolerance, e.generator,
        lambda rng: registry.Outcome(1.0, False)))
    out = tmp_path / "r.json"
    assert _run(["check", "--filter", e.id, "--out", str(out)], capsys)[0] == cli.OK
    assert json.loads(out.read_text())["summary"]["warnings"] == [e.id]
    assert _run(["check", "--filter", e.id, "--strict", "--out", str(out)], capsys)[0] == cli.CHECK_FAILED


def test_exact_failure_gates_exit(monkeypatch, capsys, tmp_path):
    e = registry.REGISTRY["lp.partition"]
    monkeypatch.setitem(registry.REGISTRY, e.id, registry.CheckEntry(
        e.id, e.statement, e.severity, e.tolerance, e.generator,
        lambda rng: registry.Outcome(1.0, False)))
    code, _, _ = _run(["check", "--filter", e.id, "--out", str(tmp_path / "r.json")], capsys)
    assert code == cli.CHECK_FAILED


@pytest.fixture
def signal_file(tmp_path):
    g = make_grid(1, 16.0, 256)
    path = tmp_path / "f.csv"
    sio.write_signal(gaussian(g), path)
    return path


@pytest.mark.parametrize("argv,code", [
    ([], cli.USAGE),
    (["bogus"], cli.USAGE),
    (["descriptors"], cli.USAGE),
    (["descriptors", "--alpha", "0"], cli.USAGE),
    (["descriptors", "--alpha", "__import__('os')"], cli.USAGE),
    (["descriptors", "--alpha", "pi/3", "--grid", "16,255"], cli.USAGE),
    (["gen", "nope", "--out", "x"], cli.USAGE),
    (["check", "--filter", "zzz"], cli.USAGE),
    (["frft", "/no/such/file.csv", "--alpha", "1.1"], cli.IO_ERROR),
])
def test_exit_codes(argv, code, capsys):
    assert _run(argv, capsys)[0] == code


def test_frft_aliased_and_ok(signal_file, tmp_path, capsys):
    code, _, err = _run(["frft", str(signal_file), "--alpha", "0.05"], capsys)
    assert code == cli.ALIASED and "sampling" in err
    out = tmp_path / "F.bin"
    code, text, _ = _run(["frft", str(signal_file), "--alpha", "pi/2", "--out", str(out)], capsys)
    assert code == cli.OK
    assert json.loads(text)["regime"] == "classical"
    F = sio.read_signal(out)
    assert np.abs(F.values - np.exp(-np.pi * F.grid.coords() ** 2)).max() < 1e-12


def test_frft_output_directory_missing(signal_file, capsys):
    code, _, _ = _run(["frft", str(signal_file), "--alpha", "1.1", "--out", "/no/dir/F.csv"], capsys)
    assert code == cli.IO_ERROR


def test_bad_signal_file(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text("garbage\n")
    assert _run(["frft", str(p), "--alpha", "1.1"], capsys)[0] == cli.IO_ERROR


def test_decompose_writes_blocks_and_ledger(signal_file, tmp_path, capsys):
    out = tmp_path / "dec"
    code, _, _ = _run(["decompose", str(signal_file), "--alpha", "1.1", "--out", str(out)], capsys)
    assert code == cli.OK
    ledger = json.loads((out / "ledger.json").read_text())
    assert ledger["reconstruction_residual"] < 1e-10
    assert (out / "low.csv").exists() and (out / "block_+1.csv").exists()
    assert _run(["decompose", str(signal_file), "--jmax", "9", "--out", str(out)], capsys)[0] == cli.USAGE


@pytest.mark.parametrize("space,params", [
    ("besov", ["s=0.5", "p=2", "q=2"]), ("triebel", ["s=0.5", "p=1.5", "q=2"]),
    ("sobolev", ["s=1"]), ("lipschitz", ["gamma=0.5"]), ("bmo", ["r=2"]),
    ("hardy", ["p=0.5"]), ("pullback", ["r=4"]),
])
def test_norms_two_paths(space, params, signal_file, capsys):
    argv = ["norms", str(signal_file), "--alpha", "1.1", "--space", space]
    for prm in params:
        argv += ["--param", prm]
    code, out, _ = _run(argv, capsys)
    assert code == cli.OK
    doc = json.loads(out)
    assert doc["value"] > 0


def test_norms_unknown_space(signal_file, capsys):
    assert _run(["norms", str(signal_file), "--space", "holder"], capsys)[0] == cli.USAGE


@pytest.mark.parametrize("fmt", ["csv", "bin", "json"])
def test_gen_round_trip(tmp_path, fmt, capsys):
    out = tmp_path / f"g.{fmt}"
    code, _, _ = _run(["gen", "random", "--grid", "8,128", "--seed", "3", "--out", str(out)], capsys)
    assert code == cli.OK
    sig = sio.read_signal(out)
    want = random_bandlimited(make_grid(1, 8.0, 128), np.random.default_rng(3))
    assert sig.grid == want.grid
    assert np.array_equal(sig.values, want.values)


def test_gen_frft_atom_validates(tmp_path, capsys):
    out = tmp_path / "atom.bin"
    argv = ["gen", "frft-atom", "--alpha", "1.1", "--seed", "5", "--out", str(out),
            "--param", "p=0.5", "--param", "q=2", "--param", "side=32", "--param", "offset=64"]
    assert _run(argv, capsys)[0] == cli.OK
    A = sio.read_signal(out)
    assert osc.validate_atom(A, osc.Cube((64,), 32), 0.5, 2.0, 1.1).passed


def test_gen_bmo_corpus_directory(tmp_path, capsys):
    out = tmp_path / "corpus"
    code, text, _ = _run(["gen", "bmo-corpus", "--alpha", "1.1", "--out", str(out),
                          "--param", "count=3"], capsys)
    assert code == cli.OK and json.loads(text)["count"] == 3
    assert sorted(p.name for p in out.iterdir()) == [f"signal_00{i}.csv" for i in range(3)]


def test_gen_bad_param(tmp_path, capsys):
    argv = ["gen", "gaussian", "--out", str(tmp_path / "x.csv"), "--param", "bogus=1"]
    assert _run(argv, capsys)[0] == cli.USAGE


def test_descriptors_command(capsys):
    code, out, _ = _run(["descriptors", "--alpha", "pi/3"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["regime"] == "effective_fractional"
    assert doc["descriptors"]["D"] == pytest.approx(1 - math.sqrt(3) / 2 + 1 / math.sqrt(3))


def test_config_file_and_environment(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"schema": 1, "alpha": "pi/2", "grid": "8,128"}))
    code, out, _ = _run(["descriptors", "--config", str(cfg)], capsys)
    assert code == 0 and json.loads(out)["regime"] == "classical"
    assert json.loads(out)["grid"]["N"] == 128
    # flags beat the config file
    code, out, _ = _run(["descriptors", "--config", str(cfg), "--alpha", "pi/3"], capsys)
    assert json.loads(out)["regime"] == "effective_fractional"
    monkeypatch.setenv("FRLP_CONFIG", str(cfg))
    code, out, _ = _run(["descriptors"], capsys)
    assert code == 0 and json.loads(out)["grid"]["L"] == 8.0
    # an explicit --config wins over the environment
    other = tmp_path / "d.json"
    other.write_text(json.dumps({"schema": 1, "alpha": 2.0}))
    code, out, _ = _run(["descriptors", "--config", str(other)], capsys)
    assert json.loads(out)["grid"]["L"] == 16.0


@pytest.mark.parametrize("doc", [{"schema": 2}, {"schema": 1, "colour": "red"}, [1, 2]])
def test_bad_config_is_usage_error(tmp_path, capsys, doc):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(doc))
    assert _run(["descriptors", "--alpha", "1", "--config", str(cfg)], capsys)[0] == cli.USAGE


def test_missing_config_is_io_error(capsys):
    assert _run(["descriptors", "--alpha", "1", "--config", "/no/c.json"], capsys)[0] == cli.IO_ERROR


def test_parse_alpha():
    assert cli.parse_alpha("pi/3") == pytest.approx(math.pi / 3)
    assert cli.parse_alpha("-2*pi/5 + 1") == pytest.approx(1 - 2 * math.pi / 5)
    for bad in ("pi/0", "sin(1)", "x"):
        with pytest.raises(cli.UsageError):
            cli.parse_alpha(bad)
