"""Command-line front end.

Exit codes: 0 success / verified, 1 negative mathematical verdict (axiom
failure, non-quadratic basis, disconnected fiber, ...), 2 usage or input
error.  Reports go to stdout; progress and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import catalog as cat
from . import toric
from .engine import EngineError
from .matroid import (
    Matroid,
    MatroidError,
    elements_of,
    is_base_sortable,
    parse_matroid,
    validate_basis_axiom,
)
from .orders import OrderError, parse_order_file

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


class CliError(Exception):
    """Input or usage problem; maps to exit code 2."""


def _load_matroid(args, check_axiom: bool = True):
    """(label, matroid, embedded order or None) from --matroid/--table1."""
    if getattr(args, "table1", None):
        entry = cat.table1_entry(args.table1)
        return entry.id, entry.matroid, entry.embedded_order
    if getattr(args, "matroid", None):
        try:
            with open(args.matroid, encoding="utf-8") as fh:
                m = parse_matroid(fh, check_axiom=check_axiom)
        except OSError as exc:
            raise CliError(f"cannot read {args.matroid}: {exc}")
        except (ValueError, MatroidError) as exc:
            raise CliError(str(exc))
        return os.path.basename(args.matroid), m, None
    raise CliError("one of --matroid FILE or --table1 ID is required")


def _resolve_order(args, m: Matroid, embedded):
    """x-variable masks (greatest first) from --order, the embedded order,
    or None for the default order."""
    if getattr(args, "order", None):
        try:
            with open(args.order, encoding="utf-8") as fh:
                order = parse_order_file(fh.read(), m)
        except OSError as exc:
            raise CliError(f"cannot read {args.order}: {exc}")
        except OrderError as exc:
            raise CliError(str(exc))
        uni = order.universe
        masks = [uni.basis_mask(v) for v in order.seq if not uni.is_t(v)]
        return masks, "file:" + args.order
    if embedded is not None:
        return list(embedded), "embedded"
    return None, "default"


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        include = not getattr(args, "no_timings", False)
        if not include:
            payload = _zero_timings(payload)
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _zero_timings(obj):
    if isinstance(obj, dict):
        return {
            k: (0 if k == "elapsed_ms" else _zero_timings(v)) for k, v in obj.items()
        }
    if isinstance(obj, list):
        return [_zero_timings(v) for v in obj]
    return obj


# -- subcommands --------------------------------------------------------------


def cmd_validate(args) -> int:
    label, m, _ = _load_matroid(args, check_axiom=False)
    ok, witness = validate_basis_axiom(m.bases, m.n)
    if ok:
        _emit(args, {"matroid": label, "valid": True}, f"{label}: valid matroid")
        return EXIT_OK
    b1, b2, alpha = witness
    text = f"{label}: exchange axiom fails at B1={set(b1)}, B2={set(b2)}, alpha={alpha}"
    _emit(
        args,
        {"matroid": label, "valid": False, "witness": [list(b1), list(b2), alpha]},
        text,
    )
    return EXIT_NEGATIVE


def cmd_gb(args) -> int:
    label, m, embedded = _load_matroid(args)
    masks, desc = _resolve_order(args, m, embedded)
    gb = toric.toric_gb(m, masks, degree_cap=args.degree_cap)
    report = toric.classify_gb(gb, m, matroid_id=label, order_desc=desc)
    lines = [toric.format_binomial(gb, b) for b in gb.elements]
    payload = report.to_dict()
    payload["elements"] = lines
    _emit(args, payload, "\n".join(lines) if lines else "(zero ideal)")
    return EXIT_OK


def cmd_verify_white(args) -> int:
    label, m, embedded = _load_matroid(args)
    masks, desc = _resolve_order(args, m, embedded)
    report = toric.verify_white(m, masks, matroid_id=label, order_desc=desc)
    _emit(args, report.to_dict(), f"{label}: {report.verdict}")
    return EXIT_OK if report.verdict == toric.WHITE_GB_OK else EXIT_NEGATIVE


def cmd_fibers(args) -> int:
    label, m, _ = _load_matroid(args)
    fibers = toric.enumerate_fibers(m, args.degree, min_size=2)
    payload = {
        "matroid": label,
        "degree": args.degree,
        "colliding_fibers": len(fibers),
        "fibers": [
            {
                "image": list(f.image),
                "members": [
                    ["".join(str(e) for e in elements_of(mk)) for mk in mem]
                    for mem in f.members
                ],
            }
            for f in fibers
        ],
    }
    text = f"{label}: {len(fibers)} colliding degree-{args.degree} fibers"
    if args.connected:
        ok, _ = toric.fiber_graph_connected(m, args.degree)
        payload["connected"] = ok
        text += f"; exchange graphs {'connected' if ok else 'DISCONNECTED'}"
        _emit(args, payload, text)
        return EXIT_OK if ok else EXIT_NEGATIVE
    _emit(args, payload, text)
    return EXIT_OK


def cmd_sortable(args) -> int:
    label, m, _ = _load_matroid(args)
    ok, witness = is_base_sortable(m, any_labeling=args.any_labeling)
    payload = {"matroid": label, "base_sortable": ok}
    if not ok:
        if witness is not None:
            payload["failing_pair"] = [list(witness[0]), list(witness[1])]
        _emit(args, payload, f"{label}: not base-sortable ({witness})")
        return EXIT_NEGATIVE
    if args.gb:
        gb, report = toric.sorting_gb(m, matroid_id=label)
        payload["report"] = report.to_dict()
        _emit(args, payload, f"{label}: base-sortable; {report.verdict}")
        return EXIT_OK if report.verdict == toric.WHITE_GB_OK else EXIT_NEGATIVE
    _emit(args, payload, f"{label}: base-sortable")
    return EXIT_OK


def cmd_eliminate_chain(args) -> int:
    label, m, embedded = _load_matroid(args)
    masks, desc = _resolve_order(args, m, embedded)
    if masks is None:
        raise CliError("eliminate-chain needs an embedded or file-supplied order")
    removed = []
    for value in args.remove:
        try:
            removed.append(tuple(int(s) for s in value.split(",")))
        except ValueError:
            raise CliError(f"bad --remove value {value!r}")
    chain = toric.elimination_chain(m, masks, removed, parent_id=label)
    entries = [r.to_dict() for _, _, r in chain]
    ok = all(r.verdict == toric.WHITE_GB_OK for _, _, r in chain)
    text = "\n".join(f"{e['matroid']}: {e['verdict']}" for e in entries)
    _emit(args, {"parent": label, "children": entries}, text)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_search_order(args) -> int:
    label, m, embedded = _load_matroid(args)
    start = list(embedded) if embedded is not None else None
    report, order = toric.order_search(
        m,
        strategy=args.strategy,
        budget=args.budget,
        seed=args.seed,
        start_order=start,
        matroid_id=label,
        log=lambda msg: print(msg, file=sys.stderr),
    )
    payload = report.to_dict()
    payload["order_found"] = [
        "".join(str(e) for e in elements_of(mk)) for mk in order
    ]
    _emit(args, payload, f"{label}: best verdict {report.verdict}")
    return EXIT_OK if report.verdict == toric.WHITE_GB_OK else EXIT_NEGATIVE


def cmd_reproduce(args) -> int:
    summary = cat.reproduce_paper(
        jobs=args.jobs,
        catalog_path=args.catalog,
        search_budget=args.budget,
        seed=args.seed,
        progress=lambda msg: print(msg, file=sys.stderr),
    )
    text_lines = [
        f"{e['matroid']}: {e['verdict']}" for e in summary["entries"]
    ]
    text_lines.append(
        f"processed={summary['processed']} white_ok={summary['white_ok']} "
        f"open={','.join(summary['open'])} "
        f"skipped={','.join(summary['skipped']) or 'none'}"
    )
    _emit(args, summary, "\n".join(text_lines))
    return EXIT_OK


def cmd_scan(args) -> int:
    try:
        with open(args.catalog, encoding="utf-8") as fh:
            ms = cat.load_catalog(fh)
    except OSError as exc:
        raise CliError(f"cannot read {args.catalog}: {exc}")
    except ValueError as exc:
        raise CliError(str(exc))
    yes, no = cat.scan_3_connected(ms, jobs=args.jobs)
    payload = {"total": len(ms), "three_connected": len(yes), "rest": len(no)}
    _emit(args, payload, f"{len(yes)} of {len(ms)} matroids are 3-connected")
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _add_input_args(p, table1_only: bool = False):
    p.add_argument("--table1", metavar="ID", help="built-in matroid id, e.g. M_6")
    if not table1_only:
        p.add_argument("--matroid", metavar="FILE", help="matroid text file")


def _add_common(p):
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument(
        "--no-timings",
        action="store_true",
        help="zero out elapsed_ms fields for byte-stable output",
    )


def build_parser() -> argparse.ArgumentParser:
    default_jobs = int(os.environ.get("MTORIC_JOBS", "1"))
    top = argparse.ArgumentParser(
        prog="matoric",
        description="Toric ideals of matroids: Groebner bases and exchange verdicts",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the symmetric exchange axiom")
    _add_input_args(p)
    _add_common(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("gb", help="reduced Groebner basis of the kernel ideal")
    _add_input_args(p)
    p.add_argument("--order", metavar="FILE", help="term-order file")
    p.add_argument(
        "--degree-cap",
        type=int,
        default=None,
        metavar="D",
        help="skip S-pairs above this weighted degree (t=1, x=rank); "
        "exploratory only, the result is flagged as capped",
    )
    _add_common(p)
    p.set_defaults(fn=cmd_gb)

    p = sub.add_parser(
        "verify-white", help="quadratic symmetric-exchange verdict for one order"
    )
    _add_input_args(p)
    p.add_argument("--order", metavar="FILE", help="term-order file")
    _add_common(p)
    p.set_defaults(fn=cmd_verify_white)

    p = sub.add_parser("fibers", help="enumerate colliding fibers of the monomial map")
    _add_input_args(p)
    p.add_argument("--degree", type=int, required=True, metavar="D")
    p.add_argument(
        "--connected",
        action="store_true",
        help="also check exchange-move connectivity of every fiber",
    )
    _add_common(p)
    p.set_defaults(fn=cmd_fibers)

    p = sub.add_parser("sortable", help="base-sortability check")
    _add_input_args(p)
    p.add_argument("--gb", action="store_true", help="certify the sorting basis")
    p.add_argument(
        "--any-labeling",
        action="store_true",
        help="search all relabelings instead of the identity",
    )
    _add_common(p)
    p.set_defaults(fn=cmd_sortable)

    p = sub.add_parser("eliminate-chain", help="derive children by variable elimination")
    _add_input_args(p)
    p.add_argument("--order", metavar="FILE", help="term-order file")
    p.add_argument(
        "--remove",
        action="append",
        required=True,
        metavar="B",
        help="basis to remove, e.g. 3,5,7 (repeatable, greatest first)",
    )
    _add_common(p)
    p.set_defaults(fn=cmd_eliminate_chain)

    p = sub.add_parser("search-order", help="search x-orders for a quadratic basis")
    _add_input_args(p)
    p.add_argument("--strategy", choices=("random", "hill-climb"), default="hill-climb")
    p.add_argument("--budget", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(fn=cmd_search_order)

    p = sub.add_parser(
        "reproduce-paper", help="run the full pipeline over the built-in catalog"
    )
    p.add_argument("--catalog", metavar="FILE", help="optional external catalog")
    p.add_argument("--jobs", type=int, default=default_jobs, metavar="K")
    p.add_argument("--budget", type=int, default=8, help="order-search budget")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(fn=cmd_reproduce)

    p = sub.add_parser("scan", help="partition a catalog by 3-connectivity")
    p.add_argument("--catalog", metavar="FILE", required=True)
    p.add_argument("--jobs", type=int, default=default_jobs, metavar="K")
    _add_common(p)
    p.set_defaults(fn=cmd_scan)

    return top


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatroidError, OrderError, EngineError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
