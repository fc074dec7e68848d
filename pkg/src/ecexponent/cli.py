"""Command-line interface.

Subcommands:
    sweep      full prime sweep with report emission (json or csv)
    census     divisibility counts k | d_p against density expectations
    constants  certified evaluation of c, C, the CM products, c_E, c*_E
    structure  one per-prime LocalData record

Exit codes: 0 success, 2 invalid arguments, 3 internal consistency failure.
An optional config file of `key = value` lines (--config) fills in flags
that were not passed explicitly; flags win.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curves import ConsistencyError, CurveZ, reduce_mod
from .constants import (c_E_closed_form, c_E_series, cm_product,
                        cyclicity_constant, kummer_C, universal_c)
from .degrees import MissingDegreeError, TableOracle, parse_oracle
from .structure import structure_pair
from .harness import DEFAULT_CENSUS, census, emit, sweep

_HARD_DEFAULTS = {
    "oracle": "generic",
    "census": ",".join(str(k) for k in DEFAULT_CENSUS),
    "format": "json",
    "threads": 1,
    "seed": 0,
    "eps": 1e-9,
    "truncation": 10_000,
}

_CASTS = {"a": int, "b": int, "limit": int, "p": int, "threads": int,
          "seed": int, "truncation": int, "eps": float}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecexponent",
        description="Structure pairs (d_p, e_p) of elliptic-curve reductions "
                    "and the density constants of their average exponent.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, curve=True):
        p.add_argument("--config", help="key = value file filling unset flags")
        if curve:
            p.add_argument("--a", type=int, help="curve coefficient a")
            p.add_argument("--b", type=int, help="curve coefficient b")
        p.add_argument("--oracle",
                       help="generic | cm:<D>[:<table>] | table:<path>")

    p_sweep = sub.add_parser("sweep", help="sweep all primes p <= limit")
    add_common(p_sweep)
    p_sweep.add_argument("--limit", type=int, help="sweep bound X")
    p_sweep.add_argument("--census", help="comma-separated census moduli")
    p_sweep.add_argument("--format", choices=("json", "csv"))
    p_sweep.add_argument("--out", help="output path (default stdout)")
    p_sweep.add_argument("--threads", type=int)
    p_sweep.add_argument("--seed", type=int)

    p_census = sub.add_parser("census", help="count primes with k | d_p")
    add_common(p_census)
    p_census.add_argument("--limit", type=int, help="sweep bound X")
    p_census.add_argument("--k", help="comma-separated list of k values")
    p_census.add_argument("--threads", type=int)
    p_census.add_argument("--seed", type=int)

    p_const = sub.add_parser("constants", help="evaluate density constants")
    add_common(p_const, curve=False)
    p_const.add_argument("--which", help="c | C | cm:<D> | cE | cstar")
    p_const.add_argument("--eps", type=float)
    p_const.add_argument("--truncation", type=int)

    p_struct = sub.add_parser("structure", help="one LocalData record")
    add_common(p_struct, curve=True)
    p_struct.add_argument("--p", type=int, help="prime of good reduction")
    return parser


def _load_config(path: str) -> dict[str, str]:
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            if "=" not in body:
                raise ValueError(f"{path}:{lineno}: expected `key = value`")
            key, _, val = body.partition("=")
            values[key.strip()] = val.strip()
    return values


def _fill(args: argparse.Namespace, required: tuple[str, ...]) -> None:
    """Config values fill flags that were not passed; flags win. Remaining
    gaps come from the hard defaults; anything in `required` must be set."""
    config = _load_config(args.config) if args.config else {}
    for key, raw in config.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, _CASTS.get(key, str)(raw))
    for key, val in _HARD_DEFAULTS.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, val)
    missing = [key for key in required if getattr(args, key, None) is None]
    if missing:
        raise ValueError(
            f"missing required arguments: {', '.join('--' + m for m in missing)}")


def _parse_ks(raw: str) -> tuple[int, ...]:
    try:
        ks = tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"bad census list {raw!r}")
    if not ks or any(k < 1 for k in ks):
        raise ValueError(f"census moduli must be positive: {raw!r}")
    return ks


def _write(data: bytes, out: str | None) -> None:
    if out:
        try:
            with open(out, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            raise ValueError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(data.decode())


def _cmd_sweep(args) -> int:
    _fill(args, required=("a", "b", "limit"))
    oracle = parse_oracle(args.oracle)
    report = sweep(CurveZ(args.a, args.b), args.limit, oracle,
                   oracle_spec=args.oracle, ks=_parse_ks(args.census),
                   threads=args.threads, seed=args.seed)
    _write(emit(report, args.format), getattr(args, "out", None))
    return 0


def _cmd_census(args) -> int:
    _fill(args, required=("a", "b", "limit", "k"))
    oracle = parse_oracle(args.oracle)
    result = census(CurveZ(args.a, args.b), args.limit, _parse_ks(args.k),
                    oracle, threads=args.threads, seed=args.seed)
    obj = {str(k): {"count": count, "expected": expected}
           for k, (count, expected) in result.items()}
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    return 0


def _cmd_constants(args) -> int:
    _fill(args, required=("which",))
    which = args.which
    if which == "c":
        bv = universal_c(args.eps)
    elif which == "C":
        bv = kummer_C(args.eps)
    elif which.startswith("cm:"):
        bv = cm_product(int(which[3:]), args.eps)
    elif which == "cE":
        oracle = parse_oracle(args.oracle)
        if isinstance(oracle, TableOracle):
            bv = c_E_closed_form(oracle)
        else:
            bv = c_E_series(oracle, args.truncation)
    elif which == "cstar":
        bv = cyclicity_constant(parse_oracle(args.oracle), args.truncation)
    else:
        raise ValueError(f"unknown constant {which!r}")
    sys.stdout.write(json.dumps(
        {"which": which, "value": bv.value, "error": bv.error,
         "truncation": bv.truncation}) + "\n")
    return 0


def _cmd_structure(args) -> int:
    _fill(args, required=("a", "b", "p"))
    mod_p = reduce_mod(CurveZ(args.a, args.b), args.p)
    if mod_p is None:
        sys.stdout.write(json.dumps(
            {"p": args.p, "bad_reduction": True, "e_p": 0}) + "\n")
        return 0
    rec = structure_pair(mod_p)
    sys.stdout.write(json.dumps(
        {"p": rec.p, "a_p": rec.a_p, "N": rec.n_p,
         "d_p": rec.d_p, "e_p": rec.e_p}) + "\n")
    return 0


_COMMANDS = {
    "sweep": _cmd_sweep,
    "census": _cmd_census,
    "constants": _cmd_constants,
    "structure": _cmd_structure,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, MissingDegreeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
