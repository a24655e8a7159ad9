"""Command-line reports: blocks, steinberg, decompose, endo, verify.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .scalars import BadPrime, EvenOrSmallL, make_field

SCHEMA_VERSION = "1.0"
U64 = 2 ** 64


class UsageError(ValueError):
    pass


# -- argument parsing ------------------------------------------------------------------------------

def _ls(text: str) -> list[int]:
    try:
        ls = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--l expects odd integers, got {text!r}")
    if not ls:
        raise UsageError("--l is empty")
    for l in ls:
        make_field(l)  # raises EvenOrSmallL
    return ls


def _rs(text: str) -> list[int]:
    try:
        if "-" in text:
            a, b = text.split("-", 1)
            rs = list(range(int(a), int(b) + 1))
        else:
            rs = [int(text)]
    except ValueError:
        raise UsageError(f"--r expects an integer or a range a-b, got {text!r}")
    if not rs or min(rs) < 1:
        raise UsageError("r must be >= 1")
    return rs


def _field(text: str, l: int):
    if text == "cyclotomic":
        return make_field(l)
    if text == "fp":
        return make_field(l, "prime")
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise UsageError(f"bad prime in --field {text!r}")
        return make_field(l, "prime", p)
    raise UsageError(f"--field must be cyclotomic, fp or fp:<prime>, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--l", required=True, help="odd l >= 3 (comma-separated list allowed)")
    common.add_argument("--field", default="cyclotomic", help="cyclotomic | fp | fp:<prime>")
    common.add_argument("--seed", type=int, default=0, help="seed for the random splitting elements")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = argparse.ArgumentParser(prog="smallq", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (("blocks", "weights of degree r and their blocks"),
                        ("steinberg", "Steinberg weights: filter versus closed form"),
                        ("decompose", "indecomposable summands of the r-th tensor power"),
                        ("endo", "basic algebra of the endomorphism algebra")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--r", required=True, help="degree r or range a-b")
    vp = sub.add_parser("verify", parents=[common], help="run the verification suite")
    vp.add_argument("--rmax", type=int, default=None, help="largest r (default max(8, 2l))")
    vp.add_argument("--acceptance", action="store_true", help="use the fixed acceptance grid")
    return p


def _config(args) -> dict:
    ls = _ls(args.l)
    if not 0 <= args.seed < U64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    fields = {l: _field(args.field, l) for l in ls}
    cfg = {"command": args.command, "l": ls, "field": args.field, "seed": args.seed,
           "format": args.format, "jobs": args.jobs}
    if args.command == "verify":
        if args.rmax is not None and args.rmax < 1:
            raise UsageError("--rmax must be >= 1")
        cfg["rmax"] = args.rmax
        cfg["acceptance"] = args.acceptance
    else:
        cfg["r"] = _rs(args.r)
    cfg["primes"] = {str(l): f.p for l, f in fields.items() if f.p}
    return cfg


# -- commands --------------------------------------------------------------------------------------

def _wt(w):
    return list(w) if w is not None else None


def cmd_blocks(cfg) -> tuple[dict, int]:
    from .weights import bar_blocks, blocks, gamma, sets_I_J, steinberg_set
    cells = []
    for l in cfg["l"]:
        for r in cfg["r"]:
            I, J = sets_I_J(l, r)
            St = steinberg_set(l, r)

            def member(w):
                return "St" if w in St else "I" if w in I else "J" if w in J else None

            bl = []
            for b in blocks(l, r):
                bl.append({"weights": [_wt(w) for w in b.weights], "size": b.size, "class": b.cls,
                           "figure": b.figure_case, "bar_weights": [list(w) for w in b.sorted_bars()],
                           "memberships": {f"{w[0]},{w[1]}": member(w) for w in b.weights if member(w)}})
            bb = [{"bar_weights": [list(w) for w in sorted(b.bar_weights)], "class": b.cls,
                   "figure": b.figure_case} for b in bar_blocks(l, r)]
            cells.append({"l": l, "r": r, "gamma": [_wt(w) for w in gamma(l, r)], "blocks": bl,
                          "bar_blocks": bb, "St": sorted(map(list, St)), "I": sorted(map(list, I)),
                          "J": sorted(map(list, J))})
    return {"cells": cells}, 0


def cmd_steinberg(cfg) -> tuple[dict, int]:
    from .weights import steinberg_report
    cells = []
    for l in cfg["l"]:
        for r in cfg["r"]:
            st = steinberg_report(l, r)
            cells.append({"l": l, "r": r, "case": st.case, "oracle": sorted(map(list, st.oracle)),
                          "closed_form": sorted(map(list, st.closed_form)),
                          "status": "PASS" if st.agrees else "FAIL"})
    code = 1 if any(c["status"] == "FAIL" for c in cells) else 0
    return {"cells": cells}, code


def _decomposer(cfg, l):
    from .endo.decompose import TensorPowerDecomposer
    return TensorPowerDecomposer(_field(cfg["field"], l), cfg["seed"])


def cmd_decompose(cfg) -> tuple[dict, int]:
    from .weights import bar_block_index, predicted_catalog
    cells = []
    code = 0
    for l in cfg["l"]:
        T = _decomposer(cfg, l)
        for r in cfg["r"]:
            index = bar_block_index(l, r)
            rows = []
            for s in T.level(r):
                lab = s.label
                rows.append({"label": str(lab), "kind": lab.kind, "bar_weight": list(lab.bar_weight),
                             "sl2_type": lab.sl2_type, "dim": s.dim, "multiplicity": s.multiplicity,
                             "block": index.get(lab.bar_weight)})
            got = {s.label.key for s in T.level(r)}
            agrees = got == set(predicted_catalog(l, r))
            if not agrees:
                code = 1
            cells.append({"l": l, "r": r, "field": T.field.describe(), "total_dim": 2 ** r,
                          "summands": rows, "catalog": "PASS" if agrees else "FAIL"})
    return {"cells": cells}, code


def cmd_endo(cfg) -> tuple[dict, int]:
    from .endo.report import basic_algebra_report
    from .weights import counts
    cells = []
    code = 0
    for l in cfg["l"]:
        fld = _field(cfg["field"], l)
        for r in cfg["r"]:
            R = basic_algebra_report(l, r, fld, cfg["seed"])
            d = R.to_json()
            c = counts(l, r)
            d["a_enumerated"] = c.a_enum
            if R.a_formula is None or R.a_formula == R.a_observed:
                d["a_status"] = "PASS"
            else:
                d["a_status"] = "WARN"
            if not R.ok:
                code = 1
            cells.append(d)
    return {"cells": cells}, code


def cmd_verify(cfg) -> tuple[dict, int]:
    from .verify import FAIL, acceptance_grid, run_all, verify_grid
    grid = acceptance_grid() if cfg["acceptance"] else verify_grid(tuple(cfg["l"]), cfg["rmax"])
    if cfg["acceptance"]:
        grid = _restrict(grid, cfg["l"])
    p = None
    if cfg["field"].startswith("fp:"):
        p = int(cfg["field"][3:])
    results = run_all(grid, cfg["seed"], p, cfg["jobs"])
    payload = {"results": [r.to_json() for r in results],
               "summary": {r.number: r.status for r in results}}
    payload["summary"] = {str(k): v for k, v in payload["summary"].items()}
    return payload, (1 if any(r.status == FAIL for r in results) else 0)


def _restrict(grid, ls):
    from dataclasses import replace
    keep = set(ls)

    def cells(cs):
        return tuple(c for c in cs if c[0] in keep)

    return replace(grid, ls=tuple(l for l in grid.ls if l in keep),
                   tensor_rmax=cells(grid.tensor_rmax), a_cells=cells(grid.a_cells),
                   catalog_cells=cells(grid.catalog_cells), fig2_cells=cells(grid.fig2_cells),
                   fig3_cells=cells(grid.fig3_cells), loewy=grid.loewy and 3 in keep,
                   semisimple_cells=cells(grid.semisimple_cells), cross_cells=cells(grid.cross_cells))


COMMANDS = {"blocks": cmd_blocks, "steinberg": cmd_steinberg, "decompose": cmd_decompose,
            "endo": cmd_endo, "verify": cmd_verify}


# -- output ------------------------------------------------------------------------------------------

def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                out.append(f"{pad}-")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(pad + _scalar(obj))
    return out


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    if v is None:
        return "-"
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=False)
    lines = [f"schema_version: {report['schema_version']}", "config:"]
    lines += _text(report["config"], 1)
    lines.append("payload:")
    lines += _text(report["payload"], 1)
    if report["config"]["command"] == "verify":
        lines.append("")
        for r in report["payload"]["results"]:
            lines.append(f"criterion {r['criterion']:2d} {r['status']}  {r['title']}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        cfg = _config(args)
    except (UsageError, EvenOrSmallL, BadPrime, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    payload, code = COMMANDS[args.command](cfg)
    report = {"schema_version": SCHEMA_VERSION, "config": cfg, "payload": payload}
    print(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
