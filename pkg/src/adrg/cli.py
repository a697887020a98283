"""Batch scanner: graph6 lines in, one classification record per line out."""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import logging
import multiprocessing
import operator
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .classify import classify
from .config import Tolerances
from .errors import AdrgError, FilterError
from .graph import parse_graph6
from .report import CSV_FIELDS, SECTIONS, csv_row, error_record, render_text, to_json_dict

log = logging.getLogger("adrg")

ALIASES = {
    "mWalkRegular": "m_wr",
    "mPartialDR": "m_pdr",
    "distanceRegular": "distance_regular",
    "distancePolynomial": "distance_polynomial",
    "punctuallyDP": "punctual_dp",
    "punctuallyDR": "punctual_dr",
    "punctuallyWR": "punctual_wr",
    "lmFrontier": "lm_frontier",
}

_THREAD_VARS = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")


@dataclass
class ScanConfig:
    input_path: str = "-"
    output_path: str = "-"
    format: str = "jsonl"
    tolerances: Tolerances = field(default_factory=Tolerances)
    jobs: int = 1
    filter: str | None = None
    sections: tuple[str, ...] = SECTIONS

    def __post_init__(self):
        if self.format not in ("jsonl", "csv"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        bad = set(self.sections) - set(SECTIONS)
        if bad:
            raise ValueError(f"unknown sections: {', '.join(sorted(bad))}")


@dataclass
class ScanSummary:
    parsed: int = 0
    classified: int = 0
    failed: int = 0
    filtered: int = 0
    internal: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


# -- filter expressions ---------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
    ast.Div: operator.truediv, ast.FloorDiv: operator.floordiv, ast.Mod: operator.mod,
}
_CMPOPS = {
    ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt, ast.LtE: operator.le,
    ast.Gt: operator.gt, ast.GtE: operator.ge,
    ast.In: lambda a, b: a in b, ast.NotIn: lambda a, b: a not in b,
}
_FUNCS = {"len": len, "all": all, "any": any, "sum": sum, "min": min, "max": max}


class Filter:
    """A restricted Python expression over report fields.

    Names resolve to top-level record keys (snake_case) or their camelCase
    aliases. Comparisons against null are false rather than an error.
    """

    def __init__(self, expr: str):
        try:
            self.tree = ast.parse(expr, mode="eval")
        except SyntaxError as exc:
            raise FilterError(f"invalid filter expression: {exc.msg}") from exc
        self.expr = expr
        self._check(self.tree)

    def _check(self, node):
        allowed = (
            ast.Expression, ast.BoolOp, ast.And, ast.Or, ast.UnaryOp, ast.Not, ast.USub,
            ast.BinOp, ast.Compare, ast.Name, ast.Load, ast.Constant, ast.Subscript,
            ast.List, ast.Tuple, ast.Call, ast.Attribute,
        ) + tuple(_BINOPS) + tuple(_CMPOPS)
        for sub in ast.walk(node):
            if not isinstance(sub, allowed):
                raise FilterError(f"unsupported syntax in filter: {type(sub).__name__}")
            if isinstance(sub, ast.Call) and not (isinstance(sub.func, ast.Name) and sub.func.id in _FUNCS):
                raise FilterError("only len, all, any, sum, min and max may be called")
            if isinstance(sub, ast.Attribute):
                raise FilterError("attribute access is not allowed")

    def __call__(self, record: dict) -> bool:
        return bool(self._eval(self.tree.body, record))

    def _eval(self, node, rec):
        ev = self._eval
        if isinstance(node, ast.Constant):
            return node.value
        if isinstance(node, ast.Name):
            if node.id in ("true", "false", "null"):
                return {"true": True, "false": False, "null": None}[node.id]
            key = ALIASES.get(node.id, node.id)
            if key == "spectrallyMaxDiameter":
                return rec.get("D") == rec.get("d")
            if key not in rec:
                raise FilterError(f"unknown field {node.id!r}")
            return rec[key]
        if isinstance(node, ast.BoolOp):
            vals = (ev(v, rec) for v in node.values)
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand, rec)
            return (not v) if isinstance(node.op, ast.Not) else -v
        if isinstance(node, ast.BinOp):
            return _BINOPS[type(node.op)](ev(node.left, rec), ev(node.right, rec))
        if isinstance(node, ast.Compare):
            left = ev(node.left, rec)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp, rec)
                if (left is None or right is None) and not isinstance(op, (ast.Eq, ast.NotEq)):
                    return False
                if not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.Subscript):
            base = ev(node.value, rec)
            idx = ev(node.slice, rec)
            try:
                return base[idx]
            except (IndexError, KeyError, TypeError):
                return None
        if isinstance(node, (ast.List, ast.Tuple)):
            return [ev(e, rec) for e in node.elts]
        if isinstance(node, ast.Call):
            return _FUNCS[node.func.id](*[ev(a, rec) for a in node.args])
        raise FilterError(f"unsupported syntax in filter: {type(node).__name__}")


# -- scanning ---------------------------------------------------------------------


def _split_line(line: str, line_no: int) -> tuple[str, str]:
    parts = line.split(None, 1)
    name = parts[1].strip() if len(parts) > 1 else f"line{line_no}"
    return parts[0], name


def process_line(args) -> tuple[dict, str]:
    """Classify one input line. Returns (record, status) with status one of
    'ok', 'parse', 'rejected', 'internal'."""
    line_no, line, tol = args
    text, name = _split_line(line, line_no)
    try:
        g = parse_graph6(text, name)
    except AdrgError as exc:
        return error_record(name, line_no, exc), "parse"
    try:
        report = classify(g, tol)
    except AdrgError as exc:
        return error_record(name, line_no, exc), "rejected"
    except Exception as exc:  # noqa: BLE001 - recorded, surfaces as a nonzero exit
        return error_record(name, line_no, exc), "internal"
    rec = to_json_dict(report)
    rec["line"] = line_no
    return rec, "ok"


def _read_lines(path: str) -> list[tuple[int, str]]:
    fh = sys.stdin if path == "-" else open(path, encoding="ascii", errors="replace")
    try:
        return [(k, ln.rstrip("\n")) for k, ln in enumerate(fh, 1) if ln.strip() and not ln.startswith("#")]
    finally:
        if fh is not sys.stdin:
            fh.close()


def _records(items, cfg: ScanConfig):
    # Workers always run in fresh single-threaded processes so the floating
    # point results do not depend on the worker count.
    saved = {k: os.environ.get(k) for k in _THREAD_VARS}
    for k in _THREAD_VARS:
        os.environ[k] = "1"
    try:
        ctx = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=cfg.jobs, mp_context=ctx) as pool:
            args = [(k, ln, cfg.tolerances) for k, ln in items]
            yield from pool.map(process_line, args, chunksize=max(1, len(args) // (8 * cfg.jobs)))
    finally:
        for k, v in saved.items():
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v


def _prune(rec: dict, sections) -> dict:
    drop = {
        "spectrum": ("spectrum",),
        "punctual": ("punctual_dp", "punctual_dr", "punctual_wr"),
        "frontier": ("lm_frontier",),
        "intersection": ("c", "a", "b", "well_defined"),
        "bounds": ("bounds",),
        "diagnostics": ("diagnostics",),
        "tolerances": ("tolerances",),
    }
    out = dict(rec)
    for sec, keys in drop.items():
        if sec not in sections:
            for k in keys:
                out.pop(k, None)
    return out


def run_scan(cfg: ScanConfig) -> ScanSummary:
    flt = Filter(cfg.filter) if cfg.filter else None
    items = _read_lines(cfg.input_path)
    summary = ScanSummary()
    out = sys.stdout if cfg.output_path == "-" else open(cfg.output_path, "w", encoding="utf-8", newline="")
    try:
        writer = None
        if cfg.format == "csv":
            writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
            writer.writeheader()
        for rec, status in _records(items, cfg):
            if status != "parse":
                summary.parsed += 1
            if status == "ok":
                summary.classified += 1
                if flt is not None and not flt(rec):
                    summary.filtered += 1
                    continue
                rec = _prune(rec, cfg.sections)
            else:
                summary.failed += 1
                if status == "internal":
                    summary.internal += 1
                    log.error("internal error on line %s: %s", rec["line"], rec["message"])
            if writer is not None:
                writer.writerow(csv_row(rec))
            else:
                out.write(json.dumps(rec, sort_keys=False, separators=(",", ":")) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return summary


def report_single(line: str, tol: Tolerances, stream=None) -> int:
    stream = stream or sys.stdout
    text, name = _split_line(line, 1)
    try:
        report = classify(parse_graph6(text, name if name != "line1" else None), tol)
    except AdrgError as exc:
        stream.write(f"error: {type(exc).__name__}: {exc}\n")
        return 0
    stream.write(render_text(report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adrg", description=__doc__)
    p.add_argument("--in", dest="input", default="-", help="graph6 file, one graph per line (default stdin)")
    p.add_argument("--out", default="-", help="output file (default stdout)")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--tol-eig", type=float, default=Tolerances.eig_group)
    p.add_argument("--tol-match", type=float, default=Tolerances.match)
    p.add_argument("--tol-bound", type=float, default=Tolerances.bound)
    p.add_argument("--max-n", type=int, default=Tolerances.max_n)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--filter", default=None, help="e.g. 'mWalkRegular >= 2 and not distance_regular'")
    p.add_argument("--sections", default=",".join(SECTIONS), help="comma separated: " + ",".join(SECTIONS))
    p.add_argument("--single", metavar="GRAPH6", help="print a text report for one graph and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        tol = Tolerances(args.tol_eig, args.tol_match, args.tol_bound, args.max_n)
        if args.single is not None:
            return report_single(args.single, tol)
        sections = tuple(s.strip() for s in args.sections.split(",") if s.strip())
        cfg = ScanConfig(args.input, args.out, args.format, tol, args.jobs, args.filter, sections)
        summary = run_scan(cfg)
    except (ValueError, OSError) as exc:
        print(f"adrg: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(summary.as_dict()), file=sys.stderr)
    return 1 if summary.internal else 0


if __name__ == "__main__":
    sys.exit(main())
