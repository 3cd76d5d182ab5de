"""Command-line front end.

Every command writes CSV or JSON to stdout (or ``--out``). Tables default
to CSV and reports to JSON; ``--format`` overrides either.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import bilinear, decode, execution, matroid, pluto, scheme, sim
from .fieldlin import RATIONAL, InvalidInput, parse_field


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ output


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in items]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, Fraction):
        return str(x)
    return x


def _render(data, fmt: str) -> str:
    data = _plain(data)
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    rows = data if isinstance(data, list) else [{"key": k, "value": v} for k, v in data.items()]
    if not rows:
        return ""
    buf = io.StringIO()
    fields = list(rows[0])
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
    return buf.getvalue()


def _emit(args, data, default: str = "json", text: str | None = None):
    out = _render(data, args.format or default)
    if text is not None and (args.format or default) == "csv":
        out += text + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _field(args):
    try:
        return parse_field(args.field)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from None


def _modulus(args):
    f = _field(args)
    return None if f == RATIONAL else f


def _ids(ts, text: str) -> list[int]:
    """Task ids from a comma list of ids or names."""
    if not text:
        return []
    index = {nm: g for g, nm in enumerate(ts.names)}
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok.isdigit():
            g = int(tok)
            if g >= ts.n:
                raise UsageError(f"task id {g} out of range")
            out.append(g)
        elif tok in index:
            out.append(index[tok])
        else:
            raise UsageError(f"unknown task {tok!r}")
    return out


# ------------------------------------------------------------------- alg


def _load_alg(args):
    if args.file:
        with open(args.file) as fh:
            alg = bilinear.import_algorithm(fh.read())
    else:
        alg = bilinear.by_name(args.name)
    p = _modulus(args)
    if p is not None:
        alg = dataclasses.replace(alg, modulus=p)
    return alg


def cmd_alg_list(args):
    rows = []
    for name in bilinear.BUILTINS:
        alg = bilinear.by_name(name)
        rows.append({"name": name, "dims": "x".join(map(str, alg.dims)), "rank": alg.r})
    _emit(args, rows, "csv")
    return 0


def cmd_alg_verify(args):
    alg = _load_alg(args)
    res = bilinear.verify_brent(alg)
    if args.format:
        _emit(args, {"name": alg.name, "pass": not res, "residuals": res})
    else:
        msg = "pass\n" if not res else "fail\n" + "".join(f"{r}\n" for r in res)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(msg)
        else:
            sys.stdout.write(msg)
    return 0 if not res else 1


def cmd_alg_export(args):
    doc = json.loads(bilinear.export_algorithm(_load_alg(args)))
    _emit(args, doc)
    return 0


def cmd_alg_import(args):
    with open(args.file) as fh:
        alg = bilinear.import_algorithm(fh.read())
    _emit(args, {"name": alg.name, "dims": list(alg.dims), "rank": alg.r, "flagged": alg.flagged})
    return 1 if alg.flagged else 0


# ----------------------------------------------------------------- pluto


def _load_code(args):
    code = pluto.code_by_name(args.name)
    p = _modulus(args)
    if p is not None:
        code = pluto.PlutoCode(code.base, code.groups, code.name, modulus=p)
    return code


def cmd_pluto_build(args):
    _emit(args, json.loads(pluto.code_document(_load_code(args))))
    return 0


def cmd_pluto_verify(args):
    rep = pluto.verify_claims(_load_code(args), args.max_erasures)
    rep["counts"] = {e: {"correctable": ok, "total": tot} for e, (ok, tot) in rep["counts"].items()}
    _emit(args, rep)
    return 0


# ---------------------------------------------------------------- scheme


def _scheme(label):
    return scheme.named_strategy(label)


def cmd_scheme_build(args):
    ts = _scheme(args.scheme)
    rows = [
        {
            "id": g,
            "name": ts.names[g],
            "core": bool(ts.core[g]),
            "a": ts.a[g].tolist(),
            "b": ts.b[g].tolist(),
        }
        for g in range(ts.n)
    ]
    _emit(args, rows)
    return 0


def cmd_scheme_describe(args):
    ts = _scheme(args.scheme)
    _emit(
        args,
        {
            "label": ts.label,
            "dims": list(ts.dims),
            "levels": [list(x) for x in ts.levels],
            "tasks": ts.n,
            "core": int(ts.core.sum()),
            "structure": type(ts.structure).__name__,
        },
    )
    return 0


def cmd_scheme_list(args):
    _emit(args, [{"label": lab} for lab in scheme.CATALOG], "csv")
    return 0


# ---------------------------------------------------------------- decode


def cmd_decode_test(args):
    ts = _scheme(args.scheme)
    erased = set(_ids(ts, args.erased))
    available = [g for g in range(ts.n) if g not in erased]
    if args.decoder == "oracle":
        ok = decode.oracle_decodable(ts, available)
        _emit(args, {"scheme": ts.label, "decoder": "oracle", "erased": sorted(ts.names[g] for g in erased), "complete": ok})
        return 0
    state = decode.peel(ts, available, use_beta=not args.no_beta, stall_cap=args.stall_cap)
    _emit(
        args,
        {
            "scheme": ts.label,
            "decoder": "peel",
            "erased": [ts.names[g] for g in sorted(erased)],
            "complete": state.complete,
            "inferred": [ts.names[g] for g in sorted(state.inferred)],
            "unknown": [ts.names[g] for g in sorted(state.unknown)],
            "log": [{"rule": rule, "tasks": [ts.names[g] for g in ids]} for rule, _, ids in state.log],
        },
    )
    return 0


def cmd_decode_stopping(args):
    ts = _scheme(args.scheme)
    starts = _ids(ts, args.starts) if args.starts else None
    res = decode.min_stopping_set(ts, args.bound, use_beta=not args.no_beta, starts=starts, max_sets=args.max_sets)
    _emit(
        args,
        {
            "scheme": ts.label,
            "size": res.size,
            "mode": res.mode,
            "count": len(res.sets),
            "sets": [[ts.names[g] for g in sorted(s)] for s in res.sets],
        },
    )
    return 0


def cmd_decode_theorems(args):
    _emit(args, decode.verify_union_theorems())
    return 0


# --------------------------------------------------------------- matroid


def cmd_matroid_poly(args):
    alg = bilinear.by_name(args.alg)
    gm = matroid.decode_matroid_matrix(alg, augment=args.augment)
    char = None
    if args.char != "generic":
        char = int(args.char)
    elif args.field and args.field != RATIONAL:
        char = _modulus(args)
    poly = matroid.corank_nullity(matroid.with_characteristic(gm, char), workers=args.threads)
    rows = [{"i": i, "j": j, "coefficient": c} for i, j, c in poly.triples()]
    if (args.format or "csv") == "json":
        _emit(args, {"alg": alg.name, "char": args.char, "triples": rows, "polynomial": str(poly)})
    else:
        _emit(args, rows, "csv", text=f"# {poly}")
    return 0


# ------------------------------------------------------------------- sim


def cmd_sim_exact(args):
    ts = _scheme(args.scheme)
    dist = sim.exact_distribution(ts, args.decoder)
    rows = dist.rows()
    for row, v in zip(rows, dist.cdf):
        row["exact"] = str(v)
    _emit(args, rows, "csv")
    return 0


def cmd_sim_mc(args):
    ts = _scheme(args.scheme)
    dist = sim.monte_carlo(ts, args.samples, args.seed, args.decoder, threads=args.threads)
    _emit(args, dist.rows(), "csv")
    return 0


def cmd_sim_thresholds(args):
    rows = [dataclasses.asdict(r) for r in sim.thresholds_table(sim.PRIME_ROWS)]
    for r in rows:
        r["dims"] = "x".join(map(str, r["dims"]))
        if r["exponent"] is not None:
            r["exponent"] = round(r["exponent"], 4)
    _emit(args, rows, "csv")
    return 0


# ------------------------------------------------------------------ exec


def _straggler_spec(text: str):
    if text.isdigit():
        return int(text)
    return text


def cmd_exec_demo(args):
    ts = _scheme(args.scheme)
    spec = _straggler_spec(args.stragglers)
    if isinstance(spec, str):
        spec = tuple(_ids(ts, spec))
    rng = np.random.default_rng(args.seed)
    L, M, N = ts.dims
    A = rng.uniform(-1, 1, size=(L * args.block, M * args.block))
    B = rng.uniform(-1, 1, size=(M * args.block, N * args.block))
    cfg = execution.WorkerPoolConfig(seed=args.seed, stragglers=spec, behavior=args.behavior, threads=args.threads)
    _, tr = execution.run_job(ts, A, B, cfg)
    doc = tr.to_dict()
    doc["scheme"] = ts.label
    doc["block"] = args.block
    doc["sim_recovery_count"] = sim.recovery_count(ts, tr.arrivals)
    _emit(args, doc)
    return 0 if not tr.stalled else 2


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file")
    common.add_argument("--format", choices=["csv", "json"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--field", default=argparse.SUPPRESS, help="rational or fp:<p>")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    ap = _Parser(prog="plutocodes", description="Parity-checked fast matrix multiplication codes.", parents=[common])
    groups = ap.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, name, func, **kw):
        p = group.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("alg", help="bilinear algorithms").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sub(g, "list", cmd_alg_list)
    for name, func in (("verify", cmd_alg_verify), ("export", cmd_alg_export)):
        p = sub(g, name, func)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--name")
        src.add_argument("--file")
    p = sub(g, "import", cmd_alg_import)
    p.add_argument("--file", required=True)

    g = groups.add_parser("pluto", help="prime codes").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "build", cmd_pluto_build)
    p.add_argument("--name", required=True)
    p = sub(g, "verify", cmd_pluto_verify)
    p.add_argument("--name", required=True)
    p.add_argument("--max-erasures", type=int, default=None)

    g = groups.add_parser("scheme", help="composite strategies").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, func in (("build", cmd_scheme_build), ("describe", cmd_scheme_describe)):
        p = sub(g, name, func)
        p.add_argument("--scheme", "--label", dest="scheme", required=True)
    sub(g, "list", cmd_scheme_list)

    g = groups.add_parser("decode", help="erasure decoding").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "test", cmd_decode_test)
    p.add_argument("--scheme", required=True)
    p.add_argument("--erased", default="", help="comma list of task ids or names")
    p.add_argument("--decoder", choices=["peel", "oracle"], default="peel")
    p.add_argument("--stall-cap", type=int, default=decode.STALL_CAP)
    p.add_argument("--no-beta", action="store_true")
    p = sub(g, "stopping-sets", cmd_decode_stopping)
    p.add_argument("--scheme", required=True)
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--starts", default="", help="restrict start tasks (sampled search)")
    p.add_argument("--max-sets", type=int, default=1000)
    p.add_argument("--no-beta", action="store_true")
    sub(g, "theorems", cmd_decode_theorems)

    g = groups.add_parser("matroid", help="corank-nullity polynomials").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "poly", cmd_matroid_poly)
    p.add_argument("--alg", required=True)
    p.add_argument("--char", default="generic", help="generic or a prime")
    p.add_argument("--augment", action="store_true")

    g = groups.add_parser("sim", help="recovery-count statistics").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "exact", cmd_sim_exact)
    p.add_argument("--scheme", required=True)
    p.add_argument("--decoder", choices=["peel", "oracle"], default="oracle")
    p = sub(g, "mc", cmd_sim_mc)
    p.add_argument("--scheme", required=True)
    p.add_argument("--samples", type=int, default=sim.SAMPLES)
    p.add_argument("--decoder", choices=["peel", "oracle"], default=None)
    sub(g, "thresholds", cmd_sim_thresholds)

    g = groups.add_parser("exec", help="simulated worker pool").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "demo", cmd_exec_demo)
    p.add_argument("--scheme", default="9x9+53")
    p.add_argument("--block", type=int, default=32)
    p.add_argument("--stragglers", default="4", help="a count or a comma list of tasks")
    p.add_argument("--behavior", choices=["never", "last"], default="never")
    return ap


_DEFAULTS = {"out": None, "format": None, "seed": 0, "field": RATIONAL, "threads": 1}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        for k, v in _DEFAULTS.items():
            if not hasattr(args, k):
                setattr(args, k, v)
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 2
    except (InvalidInput, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


__all__ = ["main", "build_parser"]
