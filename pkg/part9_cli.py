#!/usr/bin/env python3
# part9_cli.py — command-line front end for EtaForms

import argparse
import csv
import io
import json
import os
from typing import Any, Dict, List, Optional, Sequence, Tuple

from rich.markup import escape
from rich.table import Table
from sympy import primerange

from part0_arith import CycNum
from part1_bootstrap import (
    CENSUS_PMAX,
    DEBUG,
    DENSITY_PMAX,
    console,
    default_threads,
    err_console,
    log,
    make_progress,
    parallel_map,
)
from part2_qseries import PrecisionError, QSeries
from part3_eta import EtaQuotient, expand, quotient_level
from part4_galois import IntPoly, frobenius_census
from part5_hecke import HeckeContext, HeckeError, hecke_tp
from part7_classify import classify, empirical_c, order_distribution
from part8_catalog import (
    CatalogError,
    SplitRow,
    Status,
    VerificationReport,
    catalog_names,
    constituent_series,
    find_quotient,
    form_series,
    load_catalog,
    load_entry,
    splitting_rows,
    verify_entry,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2


class UsageError(ValueError):
    pass


# ---------------- output helpers ----------------
def emit(text: str) -> None:
    """Machine-readable output: no markup, no highlighting, no wrapping."""
    console.out(text, end="" if text.endswith("\n") else "\n", highlight=False)


def emit_json(data: Any) -> None:
    emit(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))


def emit_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    emit(buf.getvalue())


def cycnum_cell(x: CycNum) -> str:
    """Q(zeta8) element as its coordinate tuple, e.g. (2/1, 0/1, 0/1, 0/1)."""
    return "(" + ", ".join(x.to_json()) + ")"


def _read_text(value: str) -> str:
    """Inline text, or the contents of the file it names."""
    if os.path.isfile(value):
        with open(value, "r", encoding="utf-8") as f:
            return f.read()
    return value


def parse_exponents(text: str) -> Dict[int, int]:
    """'24:1,8:-2' or a JSON object {"24": 1, ...}."""
    text = text.strip()
    if text.startswith("{"):
        return {int(m): int(a) for m, a in json.loads(text).items()}
    out: Dict[int, int] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        m, _, a = part.partition(":")
        if not a:
            raise UsageError(f"exponent {part!r} is not of the form m:a")
        out[int(m)] = out.get(int(m), 0) + int(a)
    return out


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"{value} is not a positive integer")
    return n


# ---------------- expand / hecke ----------------
def _quotient_from_args(args) -> EtaQuotient:
    if args.quotient:
        entry, c = find_quotient(args.quotient)
        return c.quotient.rescaled(entry.rescale)
    exps = parse_exponents(args.exponents)
    level = args.level or quotient_level(exps)
    return EtaQuotient(level, exps)


def cmd_expand(args) -> int:
    if args.form:
        series = form_series(load_entry(args.form), args.prec)
    else:
        series = expand(_quotient_from_args(args), args.prec)
    emit(series.dump())
    return EXIT_OK


def cmd_hecke(args) -> int:
    ctx = HeckeContext(args.level, args.disc, args.weight)
    if args.series:
        series = QSeries.from_dump(_read_text(args.series)).reinterpret(1)
    else:
        entry, c = find_quotient(args.quotient)
        series = constituent_series(entry, c, args.prec)
    emit(hecke_tp(series, args.prime, ctx).dump())
    return EXIT_OK


# ---------------- frobenius / splitting tables ----------------
def cmd_frobenius(args) -> int:
    polys = [IntPoly.parse(_read_text(p).strip()) for p in args.poly]
    rows = frobenius_census(polys, _primes(args.pmax), args.threads)
    emit_csv(("p", "f_p", "split_type"),
             [(p, r.f_p, "|".join(str(t) for t in r.split_types)) for p, r in rows.items()])
    return EXIT_OK


def _primes(pmax: int) -> List[int]:
    return list(primerange(2, pmax + 1))


def cmd_splitting_table(args) -> int:
    entry = load_entry(args.form)
    out = []
    for row in splitting_rows(entry, args.pmax, args.threads):
        if isinstance(row, SplitRow):
            out.append((row.p, cycnum_cell(row.a_p), row.f_p, row.splits, 0))
        else:
            out.append((row[0], "", "", "", 1))
    emit_csv(("p", "a_p", "f_p", "splits_into", "ramified_flag"), out)
    return EXIT_OK


# ---------------- verify ----------------
def _verify_named(job: Tuple[str, int]) -> VerificationReport:
    name, pmax = job
    return verify_entry(load_entry(name), pmax)


def _status_style(status: Status) -> str:
    return {Status.PASS: "green", Status.FAIL: "red", Status.SKIPPED: "yellow"}[status]


def _summary(details: Dict[str, Any]) -> str:
    keys = ("reason", "failure", "verdict", "violation_count", "primes", "upto", "estimated_group_order")
    parts = [f"{k}={details[k]}" for k in keys if k in details and details[k] not in (None, [], {})]
    return ", ".join(parts)


def render_table(reports: Sequence[VerificationReport]) -> None:
    for report in reports:
        table = Table(title=f"{report.form} (level {report.level}, Sturm bound {report.sturm_bound}, "
                            f"pmax {report.pmax})")
        table.add_column("Check")
        table.add_column("Status")
        table.add_column("Details", overflow="fold")
        for check in report.checks:
            style = _status_style(check.status)
            table.add_row(check.name, f"[{style}]{check.status.value}[/]", _summary(check.details))
        console.print(table)
        for note in report.notes:
            console.print(f"[grey50]note: {note}[/]")
        style = _status_style(report.status)
        console.print(f"[bold {style}]{report.form}: {report.status.value}[/]\n")


def cmd_verify(args) -> int:
    names = catalog_names() if args.form == "all" else [args.form]
    for name in names:
        load_entry(name)    # unknown names fail before any computation
    if len(names) == 1:
        entry = load_entry(names[0])
        if err_console.is_terminal:
            with make_progress() as progress:
                task = progress.add_task(f"verifying {entry.name}", total=None)
                reports = [verify_entry(entry, args.pmax, threads=args.threads,
                                        on_step=lambda s: progress.update(task, description=f"{entry.name}: {s}"))]
        else:
            reports = [verify_entry(entry, args.pmax, threads=args.threads)]
    else:
        reports = parallel_map(_verify_named, [(n, args.pmax) for n in names], args.threads)
    if args.table:
        render_table(reports)
    else:
        data = [r.to_json() for r in reports]
        emit_json(data[0] if len(data) == 1 else data)
    failed = [r.form for r in reports if not r.passed]
    log(f"verify {args.form} pmax={args.pmax}: {'FAIL ' + ','.join(failed) if failed else 'PASS'}")
    return EXIT_FAILED if failed else EXIT_OK


# ---------------- classify ----------------
def cmd_classify(args) -> int:
    entry = load_entry(args.form)
    form = form_series(entry, args.pmax + 1)
    dist = empirical_c(form, entry.character, args.pmax, entry.level_primes())
    result = classify(dist)
    ordered = sorted(dist.proportions.items(), key=lambda kv: kv[0].c)
    orders = order_distribution(dist)
    emit_json({
        "form": entry.name,
        "primes": dist.sample_size,
        "distribution": {str(c): f"{float(share):.6f}" for c, share in ordered},
        "mapped_orders": {("unmapped" if k is None else str(k)): f"{float(v):.6f}"
                          for k, v in sorted(orders.items(), key=lambda kv: (kv[0] is None, kv[0] or 0))},
        "verdict": result.verdict.value,
        "expected": entry.expected_image.value,
        "distance": None if result.distance is None else round(result.distance, 6),
        "notes": result.notes,
    })
    return EXIT_OK if result.verdict is entry.expected_image else EXIT_FAILED


# ---------------- catalog ----------------
def cmd_catalog(args) -> int:
    entries = load_catalog()
    if args.json:
        emit_json([{"name": e.name, "level": e.level, "character": e.character, "stated_disc": e.disc,
                    "group_order": e.group_order, "expected_image": e.expected_image.value,
                    "constituents": len(e.constituents)} for e in entries])
        return EXIT_OK
    table = Table(title="Catalog")
    for col in ("Form", "Level", "Character", "|G|", "Image", "Constituents"):
        table.add_column(col)
    for e in entries:
        table.add_row(e.name, str(e.level), f"({e.character}/.)", str(e.group_order),
                      e.expected_image.value, str(len(e.constituents)))
    console.print(table)
    return EXIT_OK


# ---------------- parser ----------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="etaforms",
                                     description="Weight-one newforms from eta quotients: build, verify, classify.")
    parser.add_argument("--threads", type=_positive, default=None,
                        help="worker processes (default: ETAFORMS_THREADS or all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="q-expansion of an eta quotient or a catalog form")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--quotient", help="catalog quotient, e.g. f1_1152")
    src.add_argument("--exponents", help="'m:a,...' or a JSON object")
    src.add_argument("--form", help="catalog form, expanded at scale 1")
    p.add_argument("--level", type=_positive, help="level for --exponents (default: lcm of the m)")
    p.add_argument("--prec", type=_positive, required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("hecke", help="apply T_p to a series")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--series", help="series dump (file or inline)")
    src.add_argument("--quotient", help="catalog quotient, e.g. f1_1152")
    p.add_argument("--level", type=_positive, required=True)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--prime", type=_positive, required=True)
    p.add_argument("--weight", type=_positive, default=1)
    p.add_argument("--prec", type=_positive, default=1000, help="input precision for --quotient")
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("frobenius", help="residue degrees from defining polynomials")
    p.add_argument("--poly", action="append", required=True, help="polynomial (file or inline); repeatable")
    p.add_argument("--pmax", type=_positive, required=True)
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("verify", help="run the verification pipeline")
    p.add_argument("--form", required=True, help="catalog form or 'all'")
    p.add_argument("--pmax", type=_positive, default=CENSUS_PMAX)
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="JSON report (default)")
    out.add_argument("--table", action="store_true", help="rich table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("splitting-table", help="(a_p, f_p, splits) per prime as CSV")
    p.add_argument("--form", required=True)
    p.add_argument("--pmax", type=_positive, required=True)
    p.set_defaults(func=cmd_splitting_table)

    p = sub.add_parser("classify", help="projective image from the a_p^2/chi(p) statistics")
    p.add_argument("--form", required=True)
    p.add_argument("--pmax", type=_positive, default=DENSITY_PMAX)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("catalog", help="list catalog entries")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_BAD_INPUT
    if args.threads is None:
        args.threads = default_threads()
    log(f"command: {' '.join(argv) if argv is not None else args.command}")
    try:
        return args.func(args)
    except (CatalogError, PrecisionError, HeckeError, UsageError, ValueError,
            ZeroDivisionError, OSError, json.JSONDecodeError) as e:
        log(f"error in {args.command}: {type(e).__name__}: {e}")
        err_console.print(f"[red]error:[/] {escape(str(e))}", highlight=False)
        if DEBUG:
            err_console.print_exception()
        return EXIT_BAD_INPUT
