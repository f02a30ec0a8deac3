"""``frlp`` command line: transforms, decompositions, norms, checks and generators.

Exit codes: 0 ok, 1 check failure, 2 I/O, 3 sampling guard, 4 usage.

Settings merge in this order, later wins: built-in defaults, the JSON config
file (``FRLP_CONFIG`` or ``--config``), explicit command-line flags.
"""

from __future__ import annotations

import argparse
import ast
import hashlib
import json
import math
import operator
import os
import platform
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, kernels
from . import io as sio
from . import registry
from .errors import ChirpAliased, FrlpError
from .frft import frft, validate_sampling
from .generators import KINDS, generate
from .grid import frac_param, make_grid
from .limits import classify_regime

OK, CHECK_FAILED, IO_ERROR, ALIASED, USAGE = 0, 1, 2, 3, 4
CONFIG_SCHEMA = 1
DEFAULTS = {"grid": "16,256", "dim": 1, "seed": 0, "strict": False, "format": None,
            "filter": "*", "jobs": 1}
SPACES = ("besov", "triebel", "sobolev", "lipschitz", "bmo", "hardy", "pullback")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


# -- config ---------------------------------------------------------------------------


def load_config(path) -> dict:
    """Read a flat JSON config; ``schema`` must match :data:`CONFIG_SCHEMA`."""
    try:
        doc = json.loads(Path(path).read_text())
    except OSError:
        raise
    except ValueError as exc:
        raise UsageError(f"config {path}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict) or doc.get("schema") != CONFIG_SCHEMA:
        raise UsageError(f"config {path}: expected a JSON object with schema {CONFIG_SCHEMA}")
    unknown = set(doc) - set(DEFAULTS) - {"schema", "alpha", "params"}
    if unknown:
        raise UsageError(f"config {path}: unknown keys {sorted(unknown)}")
    return {k: v for k, v in doc.items() if k != "schema"}


def merged_settings(args) -> dict:
    cfg = dict(DEFAULTS)
    path = args.config or os.environ.get("FRLP_CONFIG")
    if path:
        cfg.update(load_config(path))
    for key in list(DEFAULTS) + ["alpha"]:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            cfg[key] = val
    return cfg


def parse_grid(text: str, dim: int):
    try:
        L, N = (t.strip() for t in str(text).split(","))
        return make_grid(int(dim), float(L), int(N))
    except ValueError as exc:
        raise UsageError(f"bad --grid {text!r}: expected L,N with a valid grid ({exc})") from exc


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.USub: operator.neg, ast.UAdd: operator.pos}


def _arith(node):
    if isinstance(node, ast.Expression):
        return _arith(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_arith(node.left), _arith(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_arith(node.operand))
    raise ValueError("only numbers, pi and + - * / are allowed")


def parse_alpha(text) -> float:
    """A number or arithmetic in ``pi``, e.g. ``pi/3``."""
    if text is None:
        raise UsageError("--alpha is required")
    if isinstance(text, (int, float)):
        return float(text)
    try:
        return _arith(ast.parse(str(text), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --alpha {text!r}") from exc


def parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k] = json.loads(v)
        except ValueError:
            out[k] = v
    return out


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=float)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# -- commands ---------------------------------------------------------------------------


def cmd_frft(args, cfg) -> int:
    f = sio.read_signal(args.input, args.in_format)
    p = frac_param(parse_alpha(cfg.get("alpha")))
    rep = validate_sampling(f.grid, p)
    block = {"descriptors": p.descriptors(), "sampling": rep.as_dict(),
             "regime": classify_regime(p)}
    print(_dump(block))
    F = frft(f, p)
    if args.out:
        sio.write_signal(F.as_signal(), args.out, cfg["format"])
    return OK


def cmd_decompose(args, cfg) -> int:
    from .littlewood_paley import build_bank, decompose, reconstruct

    f = sio.read_signal(args.input, args.in_format)
    alpha = cfg.get("alpha")
    p = None if alpha is None else frac_param(parse_alpha(alpha))
    bank = build_bank(f.grid, args.jmin, args.jmax, args.homogeneous, args.normalization)
    dec = decompose(f, bank, p)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fmt = cfg["format"] or "csv"
    ext = fmt
    files = {}
    for j, blk in dec.blocks.items():
        name = f"block_{j:+d}.{ext}"
        sio.write_signal(blk, out / name, fmt)
        files[str(j)] = name
    if dec.low is not None:
        sio.write_signal(dec.low, out / f"low.{ext}", fmt)
    resid = float(np.linalg.norm((reconstruct(dec) - f).values) / max(np.linalg.norm(f.values), 1e-300))
    ledger = {"alpha": None if p is None else p.alpha, "j_min": bank.j_min, "j_max": bank.j_max,
              "homogeneous": bank.homogeneous, "normalization": bank.normalization,
              "levels": dec.ledger(2.0),
              "blocks": files, "low": None if dec.low is None else f"low.{ext}",
              "reconstruction_residual": resid}
    (out / "ledger.json").write_text(_dump(ledger) + "\n")
    print(_dump({"out": str(out), "reconstruction_residual": resid}))
    return OK


def cmd_norms(args, cfg) -> int:
    from . import littlewood_paley as lp
    from . import oscillation as osc
    from .potentials import pullback_norm

    if args.space not in SPACES:
        raise UsageError(f"unknown space {args.space!r}; choose from {', '.join(SPACES)}")
    f = sio.read_signal(args.input, args.in_format)
    alpha = cfg.get("alpha")
    p = None if alpha is None else frac_param(parse_alpha(alpha))
    prm = parse_params(args.param)
    space = args.space
    if space in ("besov", "triebel", "sobolev", "lipschitz", "hardy"):
        bank = lp.build_bank(f.grid, homogeneous=bool(prm.pop("homogeneous", False)))
    if space == "besov":
        rep = lp.besov_norm(f, bank, prm.get("s", 0.0), prm.get("p", 2.0), prm.get("q", 2.0), p).as_dict()
    elif space == "triebel":
        rep = lp.triebel_norm(f, bank, prm.get("s", 0.0), prm.get("p", 2.0), prm.get("q", 2.0), p).as_dict()
    elif space == "sobolev":
        rep = lp.sobolev_norm(f, bank, prm.get("s", 0.0), prm.get("p", 2.0), p).as_dict()
    elif space == "lipschitz":
        rep = lp.lipschitz_norm(f, bank, prm.get("gamma", 0.5), prm.get("variant", "inhomogeneous"),
                                p).as_dict()
    elif space == "hardy":
        q = prm.get("p", 1.0)
        rep = {"space": "hardy", "value": osc.hardy_square_quasinorm(f, bank, p, q),
               "params": {"p": q, "alpha": None if p is None else p.alpha}}
    elif space == "bmo":
        r = prm.get("r", 1.0)
        cubes = osc.dyadic_cubes(f.grid, int(prm.get("min_side", 4)))
        rep = {"space": "bmo", "value": osc.bmo_alpha_norm(f, cubes, p, r),
               "params": {"r": r, "alpha": None if p is None else p.alpha, "cubes": len(cubes)}}
    else:
        if p is None:
            raise UsageError("the pullback norm needs --alpha")
        r = prm.get("r", 2.0)
        rep = {"space": "pullback", "value": pullback_norm(f, r, p).value,
               "params": {"r": r, "alpha": p.alpha}}
    _emit(_dump(rep), args.out)
    return OK


def environment() -> dict:
    import scipy

    env = {"python": platform.python_version(), "numpy": np.__version__,
           "scipy": scipy.__version__, "frlp": __version__, "backend": kernels.BACKEND,
           "platform": platform.system()}
    env["digest"] = hashlib.sha256(json.dumps(env, sort_keys=True).encode()).hexdigest()[:16]
    return env


def cmd_check(args, cfg) -> int:
    entries = registry.select(cfg["filter"])
    if not entries:
        raise UsageError(f"no checks match {cfg['filter']!r}")
    if args.list:
        _emit(_dump([e.spec() for e in entries]), args.out)
        return OK

    def progress(res, secs):
        mark = "ok  " if res["pass"] else ("FAIL" if res["severity"] == "exact" else "warn")
        print(f"{mark} {res['id']:40s} {res['max_err']!s:>24s} {secs:7.2f}s", file=sys.stderr)

    t0 = time.perf_counter()
    results = registry.run_checks(entries, int(cfg["seed"]), int(cfg["jobs"]), progress)
    strict = bool(cfg["strict"])
    gated = [r for r in results if strict or r["severity"] == registry.EXACT]
    failed = [r["id"] for r in gated if not r["pass"]]
    warned = [r["id"] for r in results if not r["pass"] and r["id"] not in failed]
    report = {
        "tool": "frlp", "report": "run", "schema": 1,
        "config": {k: cfg[k] for k in sorted(cfg)},
        "environment": environment(),
        "summary": {"total": len(results), "passed": sum(r["pass"] for r in results),
                    "failed": failed, "warnings": warned},
        "entries": results,
    }
    _emit(_dump(report), args.out)
    print(f"{len(results)} checks, {len(failed)} gated failures, {len(warned)} warnings "
          f"in {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return CHECK_FAILED if failed else OK


def cmd_gen(args, cfg) -> int:
    if args.kind not in KINDS:
        raise UsageError(f"unknown kind {args.kind!r}; choose from {', '.join(KINDS)}")
    if not args.out:
        raise UsageError("gen needs --out")
    grid = parse_grid(cfg["grid"], cfg["dim"])
    alpha = cfg.get("alpha")
    alpha = None if alpha is None else parse_alpha(alpha)
    prm = parse_params(args.param)
    try:
        sig = generate(args.kind, grid, int(cfg["seed"]), alpha, **prm)
    except TypeError as exc:
        raise UsageError(f"bad parameters for {args.kind}: {exc}") from exc
    fmt = cfg["format"]
    if isinstance(sig, list):
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        ext = fmt or "csv"
        for i, s in enumerate(sig):
            sio.write_signal(s, out / f"signal_{i:03d}.{ext}", ext)
        print(_dump({"out": str(out), "count": len(sig)}))
    else:
        sio.write_signal(sig, args.out, fmt)
        print(_dump({"out": args.out, "kind": args.kind}))
    return OK


def cmd_descriptors(args, cfg) -> int:
    p = frac_param(parse_alpha(cfg.get("alpha")))
    out = {"descriptors": p.descriptors(), "regime": classify_regime(p)}
    grid = parse_grid(cfg["grid"], cfg["dim"])
    out["grid"] = {"dim": grid.dim, "L": grid.L, "N": grid.N}
    out["sampling"] = validate_sampling(grid, p).as_dict()
    _emit(_dump(out), args.out)
    return OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--grid", help="L,N (default 16,256)")
    common.add_argument("--dim", type=int, choices=(1, 2))
    common.add_argument("--alpha", help="angle in radians; 'pi' may be used, e.g. pi/3")
    common.add_argument("--out", help="output file or directory")
    common.add_argument("--seed", type=int)
    common.add_argument("--strict", action="store_true", default=None,
                        help="empirical checks also gate the exit code")
    common.add_argument("--format", choices=("csv", "bin", "json"))
    common.add_argument("--config", help="JSON config file (also FRLP_CONFIG)")

    ap = _Parser(prog="frlp", description="Fractional Littlewood-Paley toolkit.")
    ap.add_argument("--version", action="version", version=f"frlp {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("frft", parents=[common], help="fractional transform of a signal file")
    s.add_argument("input")
    s.add_argument("--in-format", choices=("csv", "bin", "json"))

    s = sub.add_parser("decompose", parents=[common], help="Littlewood-Paley blocks and ledger")
    s.add_argument("input")
    s.add_argument("--in-format", choices=("csv", "bin", "json"))
    s.add_argument("--jmin", type=int)
    s.add_argument("--jmax", type=int)
    s.add_argument("--homogeneous", action="store_true")
    s.add_argument("--normalization", choices=("sum", "square"), default="sum")

    s = sub.add_parser("norms", parents=[common], help="function-space norms")
    s.add_argument("input")
    s.add_argument("--space", required=True)
    s.add_argument("--param", action="append", metavar="KEY=VALUE")
    s.add_argument("--in-format", choices=("csv", "bin", "json"))

    s = sub.add_parser("check", parents=[common], help="run the identity registry")
    s.add_argument("--filter", help="comma-separated shell patterns over check ids")
    s.add_argument("--jobs", type=int)
    s.add_argument("--list", action="store_true", help="list matching entries and exit")

    s = sub.add_parser("gen", parents=[common], help="write a test signal")
    s.add_argument("kind")
    s.add_argument("--param", action="append", metavar="KEY=VALUE")

    sub.add_parser("descriptors", parents=[common], help="angle descriptors and regime")
    return ap


COMMANDS = {"frft": cmd_frft, "decompose": cmd_decompose, "norms": cmd_norms,
            "check": cmd_check, "gen": cmd_gen, "descriptors": cmd_descriptors}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not args.command:
        ap.print_help(sys.stderr)
        return USAGE
    try:
        cfg = merged_settings(args)
        return COMMANDS[args.command](args, cfg)
    except ChirpAliased as exc:
        print(f"frlp: sampling guard: {exc}", file=sys.stderr)
        print(_dump({"sampling": exc.report.as_dict()}) if getattr(exc, "report", None) else "",
              file=sys.stderr)
        return ALIASED
    except (OSError, sio.SignalFormatError) as exc:
        print(f"frlp: I/O error: {exc}", file=sys.stderr)
        return IO_ERROR
    except (UsageError, FrlpError, ValueError) as exc:
        print(f"frlp: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    raise SystemExit(main())
