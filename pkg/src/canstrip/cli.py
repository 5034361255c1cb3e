"""Command-line front end: single-variety queries, batch sweeps, reports.

Exit codes: 0 all applicable hypotheses verified, 1 at least one violated,
2 invalid input.  Rationals are serialized as exact "p/q" strings; floats
appear only in the advisory approx_roots block.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

from .hilbert import HilbertData, degree_of, expand, hilbert_gp
from .ratpoly import RatPoly
from .root_system import all_simple_types, marked
from .varieties import abelian_ci, abelian_spec_from_json, complete_intersection, double_cover
from .verify import StripReport, approx_roots, check_line, strip_report

HARD_RANK_CAP = 10

_DIAGRAMS = """\
Bourbaki node numbering (arrows point from long to short roots):

  A n   1 - 2 - ... - n
  B n   1 - 2 - ... - (n-1) => n            (C2 accepted as alias of B2, nodes swapped)
  C n   1 - 2 - ... - (n-1) <= n
  D n   1 - 2 - ... - (n-2) - {n-1, n}      fork at n-2 (D3 accepted as alias of A3,
                                            nodes 1 and 2 swapped)
  E n   1 - 3 - 4 - 5 - 6 [- 7 [- 8]]       with 2 attached below 4
  F 4   1 - 2 => 3 - 4
  G 2   1 <= 2                              (alpha_1 is the short root)
"""

CSV_COLUMNS = [
    "series",
    "rank",
    "node",
    "degrees",
    "dim",
    "index",
    "class",
    "tcs",
    "cl",
    "boundary_contact",
    "degree_L",
]


def _parse_type(type_str: str, rank: Optional[int]) -> tuple[str, int]:
    m = re.fullmatch(r"([A-Ga-g])(\d*)", type_str.strip())
    if not m:
        raise ValueError(f"cannot parse type {type_str!r}")
    series = m.group(1).upper()
    if m.group(2):
        if rank is not None and rank != int(m.group(2)):
            raise ValueError(f"--rank {rank} contradicts --type {type_str}")
        return series, int(m.group(2))
    if rank is None:
        raise ValueError(f"--type {series} needs --rank")
    return series, rank


def _parse_degrees(text: str) -> list[int]:
    try:
        degrees = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"bad degree list {text!r}") from exc
    if not degrees or any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive integers")
    return degrees


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _approx_block(poly: RatPoly, digits: int) -> dict:
    values = [
        {
            "re": r.value.real,
            "im": r.value.imag,
            "mult": r.multiplicity,
            "residual": r.residual,
        }
        for r in approx_roots(poly, digits)
    ]
    return {"advisory": True, "digits": digits, "values": values}


def variety_report(hd: HilbertData, rep: StripReport, digits: Optional[int]) -> dict:
    report = {
        "description": hd.description,
        "dim": hd.dim,
        "index": hd.index,
        "degree_L": degree_of(hd),
        "class": rep.variety_class,
        "factored": [
            {
                "level": t.level,
                "exponents": [{"k": str(k), "h": h} for k, h in t.sorted_items()],
            }
            for t in hd.levels
        ],
        "residual": [str(c) for c in hd.residual.coeffs],
        "rational_roots": [{"root": str(r), "mult": m} for r, m in rep.rational_roots],
        "verdicts": rep.verdicts,
        "witnesses": rep.witnesses,
        "boundary_contact": rep.boundary_contact,
        "residual_variable": rep.residual_variable,
        "residual_line": None if rep.residual_line is None else str(rep.residual_line),
        "residual_on_line": rep.residual_on_line,
        "certificates": [c.as_dict() for c in rep.certificates],
    }
    if digits is not None:
        poly = expand(hd, "anticanonical" if hd.index > 0 else "ample_generator")
        if poly.degree >= 1:
            report["approx_roots"] = _approx_block(poly, digits)
    return report


def _factor_text(level: int, k: Fraction, h: int) -> str:
    lz = "z" if level == 1 else f"{level}z"
    base = f"({lz}+{k})/{k}"
    return f"({base})^{h}" if h > 1 else base


def render_text(report: dict) -> str:
    lines = [
        f"{report['description']}: dim {report['dim']}, index {report['index']}, "
        f"degree {report['degree_L']}, class {report['class']}"
    ]
    if report["factored"]:
        lines.append("H_L(z) factored:")
        for t in report["factored"]:
            factors = " ".join(
                _factor_text(t["level"], Fraction(e["k"]), e["h"]) for e in t["exponents"]
            )
            lines.append(f"  level {t['level']}: {factors}")
    residual = " + ".join(
        f"{c}*z^{i}" if i else str(c) for i, c in enumerate(report["residual"])
    )
    lines.append(f"residual (L-variable): {residual}")
    if report["rational_roots"]:
        roots = ", ".join(f"{r['root']} (x{r['mult']})" for r in report["rational_roots"])
        lines.append(f"rational anticanonical roots: {roots}")
    lines.append(
        f"residual on line: {report['residual_on_line']}"
        + (
            f" (Re(z) = {report['residual_line']} in {report['residual_variable']} variable)"
            if report["residual_line"] is not None
            else ""
        )
    )
    verdict_bits = []
    for name in ("CS", "NCS", "TCS", "CL"):
        v = report["verdicts"][name]
        bit = f"{name} {v}"
        if name in report["witnesses"]:
            bit += f" (witness {report['witnesses'][name]})"
        if name == "TCS" and v == "holds":
            bit += " with boundary contact" if report["boundary_contact"] else " strictly"
        verdict_bits.append(bit)
    lines.append("verdicts: " + "; ".join(verdict_bits))
    if "approx_roots" in report:
        vals = ", ".join(
            f"{v['re']:+.6f}{v['im']:+.6f}i (x{v['mult']})"
            for v in report["approx_roots"]["values"]
        )
        lines.append(f"approx roots (advisory): {vals}")
    return "\n".join(lines) + "\n"


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({col: row[col] for col in CSV_COLUMNS})
    return buf.getvalue()


def _csv_row(series: str, rank: int, node: int, degrees: tuple[int, ...], report: dict) -> dict:
    return {
        "series": series,
        "rank": rank,
        "node": node,
        "degrees": "+".join(str(d) for d in degrees),
        "dim": report["dim"],
        "index": report["index"],
        "class": report["class"],
        "tcs": report["verdicts"]["TCS"],
        "cl": report["verdicts"]["CL"],
        "boundary_contact": report["boundary_contact"],
        "degree_L": report["degree_L"],
    }


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    if not os.path.isabs(out):
        base = os.environ.get("CANSTRIP_OUT_DIR")
        if base:
            out = os.path.join(base, out)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _exit_code(rep: StripReport) -> int:
    return 0 if rep.all_applicable_hold else 1


def _single_command(args, hd: HilbertData) -> int:
    rep = strip_report(hd)
    report = variety_report(hd, rep, args.digits)
    if args.format == "json":
        _emit(canonical_json(report), args.out)
    elif args.format == "csv":
        row = _csv_row(args._series, args._rank, args._node, args._degrees, report)
        _emit(_csv_text([row]), args.out)
    else:
        _emit(render_text(report), args.out)
    return _exit_code(rep)


def cmd_gp(args) -> int:
    series, rank = _parse_type(args.type, args.rank)
    ms = marked(series, rank, args.node)
    args._series, args._rank, args._node = ms.rs.simple_type.series, ms.rs.simple_type.rank, ms.node
    args._degrees = ()
    return _single_command(args, hilbert_gp(ms))


def cmd_ci(args) -> int:
    series, rank = _parse_type(args.type, args.rank)
    degrees = _parse_degrees(args.degrees)
    ms = marked(series, rank, args.node)
    args._series, args._rank, args._node = ms.rs.simple_type.series, ms.rs.simple_type.rank, ms.node
    args._degrees = tuple(degrees)
    return _single_command(args, complete_intersection(ms, degrees))


def cmd_cover(args) -> int:
    if args.degree < 1:
        raise ValueError("--degree must be a positive integer")
    series, rank = _parse_type(args.type, args.rank)
    ms = marked(series, rank, args.node)
    args._series, args._rank, args._node = ms.rs.simple_type.series, ms.rs.simple_type.rank, ms.node
    args._degrees = (args.degree,)
    hd = double_cover(ms, args.degree)
    code = _single_command(args, hd)
    if args.degree > ms.index and args.format == "text" and args.out is None:
        sys.stdout.write("note: d exceeds the index; verdicts are case-by-case, no general guarantee\n")
    return code


def cmd_abelian(args) -> int:
    try:
        with open(args.spec, encoding="utf-8") as fh:
            spec = abelian_spec_from_json(json.load(fh))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read spec file: {exc}") from exc
    poly = abelian_ci(spec)
    if poly.is_zero:
        raise ValueError("the spec produced the zero polynomial")
    try:
        line = check_line(poly)
        verdict = "fails" if line.status == "violated" else "holds"
        center = line.center
        certs = line.certificates
    except ValueError:
        verdict, center, certs = "fails", None, []
    plural = "s" if spec.c > 1 else ""
    report = {
        "description": f"complete intersection of {spec.c} ample divisor{plural} "
        f"in an abelian {spec.n + spec.c}-fold",
        "dim": spec.n,
        "codim": spec.c,
        "class": "general type",
        "polynomial": [str(c) for c in poly.coeffs],
        "center": None if center is None else str(center),
        "verdicts": {"CL": verdict},
        "certificates": [c.as_dict() for c in certs],
    }
    if args.digits is not None and poly.degree >= 1:
        report["approx_roots"] = _approx_block(poly, args.digits)
    if args.format == "json":
        _emit(canonical_json(report), args.out)
    else:
        lines = [
            f"{report['description']}: H(z) = {poly}",
            f"symmetry center: {report['center']}",
            f"CL {verdict}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if verdict == "holds" else 1


def cmd_check(args) -> int:
    try:
        coeffs = [Fraction(part.strip()) for part in args.coeffs.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad coefficient list: {exc}") from exc
    poly = RatPoly(tuple(coeffs))
    if poly.degree < 1:
        raise ValueError("need a non-constant polynomial")
    try:
        line = check_line(poly)
        verdict = "fails" if line.status == "violated" else "holds"
        center, certs = line.center, line.certificates
        note = None
    except ValueError:
        verdict, center, certs = "fails", None, []
        note = "no symmetry center, so the roots cannot all lie on one vertical line"
    report = {
        "description": "user polynomial",
        "polynomial": [str(c) for c in poly.coeffs],
        "degree": poly.degree,
        "center": None if center is None else str(center),
        "verdicts": {"CL": verdict},
        "certificates": [c.as_dict() for c in certs],
    }
    if note:
        report["note"] = note
    if args.digits is not None:
        report["approx_roots"] = _approx_block(poly, args.digits)
    if args.format == "json":
        _emit(canonical_json(report), args.out)
    else:
        lines = [f"H(z) = {poly}", f"symmetry center: {report['center']}", f"CL {verdict}"]
        if note:
            lines.append(note)
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if verdict == "holds" else 1


def _iter_multidegrees(max_total: int, max_len: int):
    """Non-decreasing positive tuples with bounded length and sum."""

    def rec(prefix: tuple[int, ...], lo: int, budget: int):
        yield prefix
        if len(prefix) == max_len:
            return
        for d in range(lo, budget + 1):
            yield from rec(prefix + (d,), d, budget - d)

    yield from rec((), 1, max_total)


def _sweep_cases(cfg: dict) -> list[tuple[str, int, int, tuple[int, ...]]]:
    cases = []
    series_filter = cfg["series"]
    for t in all_simple_types(cfg["max_rank"]):
        if series_filter and t.series not in series_filter:
            continue
        for node in range(1, t.rank + 1):
            if cfg["node"] is not None and node != cfg["node"]:
                continue
            ms = marked(t.series, t.rank, node)
            max_len = min(cfg["max_codim"], ms.dim)
            for degrees in _iter_multidegrees(cfg["max_total_degree"], max_len):
                cases.append((t.series, t.rank, node, degrees))
    return cases


def _sweep_case(case: tuple[str, int, int, tuple[int, ...]]) -> dict:
    series, rank, node, degrees = case
    ms = marked(series, rank, node)
    hd = complete_intersection(ms, list(degrees))
    rep = strip_report(hd)
    report = variety_report(hd, rep, None)
    row = _csv_row(series, rank, node, degrees, report)
    row["description"] = hd.description
    row["verdicts"] = rep.verdicts
    row["witnesses"] = rep.witnesses
    row["ok"] = rep.all_applicable_hold
    return row


def cmd_sweep(args) -> int:
    if args.max_rank > HARD_RANK_CAP:
        raise ValueError(f"--max-rank exceeds the hard cap {HARD_RANK_CAP}")
    if args.max_rank < 1 or args.max_codim < 0 or args.max_total_degree < 0:
        raise ValueError("sweep bounds must be non-negative (max rank >= 1)")
    if args.jobs < 1:
        raise ValueError("--jobs must be >= 1")
    series = None
    if args.series:
        series = {s.strip().upper() for s in args.series.split(",") if s.strip()}
        unknown = series - set("ABCDEFG")
        if unknown:
            raise ValueError(f"unknown series {sorted(unknown)}")
    cfg = {
        "series": series,
        "max_rank": args.max_rank,
        "node": args.node,
        "max_total_degree": args.max_total_degree,
        "max_codim": args.max_codim,
    }
    cases = _sweep_cases(cfg)

    rows: list[dict]
    if args.jobs == 1:
        rows = [_sweep_case(c) for c in cases]
    else:
        try:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(_sweep_case, cases, chunksize=8))
        except (OSError, PermissionError):
            rows = [_sweep_case(c) for c in cases]

    failures = [r for r in rows if not r["ok"]]
    summary = {
        "cases": len(rows),
        "holds": len(rows) - len(failures),
        "failures": len(failures),
    }
    if args.format == "json":
        config_out = dict(cfg)
        config_out["series"] = sorted(series) if series else None
        payload = {
            "config": config_out,
            "records": [
                {k: v for k, v in row.items() if k not in ("ok",)} for row in rows
            ],
            "summary": summary,
        }
        _emit(canonical_json(payload), args.out)
    elif args.format == "csv":
        _emit(_csv_text(rows), args.out)
    else:
        lines = []
        for row in rows:
            deg = f" degrees {row['degrees']}" if row["degrees"] else ""
            lines.append(
                f"{row['description']}:{deg} dim {row['dim']} index {row['index']} "
                f"{row['class']} TCS {row['verdicts']['TCS']} CL {row['verdicts']['CL']}"
            )
        lines.append(
            f"cases: {summary['cases']}, holds: {summary['holds']}, "
            f"failures: {summary['failures']}"
        )
        _emit("\n".join(lines) + "\n", args.out)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canstrip",
        description="Hilbert polynomials of homogeneous spaces and canonical-strip certification",
        epilog=_DIAGRAMS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formats=("text", "json", "csv")) -> None:
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", default=None, help="output path (CANSTRIP_OUT_DIR for relative paths)")
        p.add_argument("--digits", type=int, default=None, help="include advisory approximate roots")

    def space_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--type", required=True, help="series letter or combined name, e.g. A or E6")
        p.add_argument("--rank", type=int, default=None)
        p.add_argument("--node", type=int, required=True, help="marked node, Bourbaki numbering")

    p = sub.add_parser("gp", help="a rational homogeneous space G/P")
    space_args(p)
    common(p)
    p.set_defaults(func=cmd_gp)

    p = sub.add_parser("ci", help="complete intersection in G/P")
    space_args(p)
    p.add_argument("--degrees", required=True, help="comma-separated positive degrees, e.g. 2,3")
    common(p)
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("cover", help="double cover of G/P branched in |2dL|")
    space_args(p)
    p.add_argument("--degree", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("abelian", help="complete intersection in an abelian variety")
    p.add_argument("--spec", required=True, help="JSON file with n, c and intersection numbers")
    common(p, formats=("text", "json"))
    p.set_defaults(func=cmd_abelian)

    p = sub.add_parser("check", help="certify the line hypothesis for a bare polynomial")
    p.add_argument("--coeffs", required=True, help="comma-separated rationals, lowest degree first")
    common(p, formats=("text", "json"))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="batch verification over types, nodes and multidegrees")
    p.add_argument("--series", default=None, help="comma-separated series filter, e.g. A,B")
    p.add_argument("--max-rank", type=int, default=8, help=f"default 8, hard cap {HARD_RANK_CAP}")
    p.add_argument("--node", type=int, default=None, help="restrict to one node index")
    p.add_argument("--max-total-degree", type=int, default=0)
    p.add_argument("--max-codim", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
