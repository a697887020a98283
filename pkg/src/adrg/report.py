"""Serialization of classification reports: JSON records, CSV rows, text."""

from __future__ import annotations

from fractions import Fraction

from .classify import ClassificationReport

SECTIONS = ("spectrum", "punctual", "frontier", "intersection", "bounds", "diagnostics", "tolerances")

CSV_FIELDS = (
    "name", "n", "degree", "D", "d", "girth", "bipartite", "m_pdr", "m_wr",
    "distance_polynomial", "distance_regular", "punctual_dr", "punctual_wr", "error",
)


def exact(x: Fraction | int) -> str | int:
    if isinstance(x, int):
        return x
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _num(x: float) -> float:
    return float(x) + 0.0  # folds -0.0


def _provenance(r: ClassificationReport) -> dict:
    t = r.tolerances
    mat = f"float(tol={t.match!r})"
    return {
        "n": "exact", "degree": "exact", "D": "exact", "d": f"exact(eig_group={t.eig_group!r})",
        "girth": "exact", "m_pdr": "exact", "m_wr": "exact", "lm_frontier": "exact",
        "c": "exact", "a": "exact", "b": "exact", "well_defined": "exact",
        "spectrum.value": f"float(tol={t.eig_group!r})", "spectrum.mult": "exact",
        "punctual_dp": mat, "punctual_dr": mat, "punctual_wr": "exact",
        "bounds.avg_deg": "exact", "bounds.boundA": f"float(tol={t.bound!r})",
        "bounds.boundB": f"float(tol={t.bound!r})", "bounds.eqA": f"float(tol={t.bound!r})",
        "bounds.eqB": f"float(tol={t.bound!r})",
    }


def to_json_dict(r: ClassificationReport, sections=SECTIONS) -> dict:
    out: dict = {
        "name": r.name, "n": r.n, "degree": r.degree, "D": r.D, "d": r.d,
        "girth": r.girth, "bipartite": r.bipartite,
    }
    if "spectrum" in sections:
        out["spectrum"] = [{"value": _num(v), "mult": m} for v, m in r.spectrum]
    if "punctual" in sections:
        out["punctual_dp"] = r.punctual_dp
        out["punctual_dr"] = r.punctual_dr
        out["punctual_wr"] = r.punctual_wr
    out["m_pdr"] = r.m_pdr
    out["m_wr"] = r.m_wr
    if "frontier" in sections:
        out["lm_frontier"] = [[ell, m] for ell, m in r.lm_frontier]
    out["distance_polynomial"] = r.distance_polynomial
    out["distance_regular"] = r.distance_regular
    if "intersection" in sections:
        ia = r.intersection
        out["c"], out["a"], out["b"] = list(ia.c), list(ia.a), list(ia.b)
        spreads = {}
        for kind, seq, (di, dj) in (("c", ia.c, (1, -1)), ("a", ia.a, (1, 0)), ("b", ia.b, (1, 1))):
            for k, v in enumerate(seq):
                j = k + dj
                if v is None and 0 <= j <= ia.max_index and (kind != "c" or k >= 1):
                    spreads[f"{kind}{k}"] = sorted(ia.spread(di, j, k))
        out["well_defined"] = {
            "c": [None if k == 0 else v is not None for k, v in enumerate(ia.c)],
            "a": [v is not None for v in ia.a],
            "b": [v is not None if k < r.D else None for k, v in enumerate(ia.b)],
            "spreads": spreads,
        }
    if "bounds" in sections:
        out["bounds"] = [
            {
                "h": b.h, "avg_deg": exact(b.avg_degree), "boundA": _num(b.bound_a),
                "boundB": _num(b.bound_b), "eqA": b.equality_a, "eqB": b.equality_b,
            }
            for b in r.bounds
        ]
    if "diagnostics" in sections:
        dg = r.diagnostics
        se = r.spectral_excess
        out["diagnostics"] = {
            "cross_check_mismatches": dg["cross_check_mismatches"],
            "lattice_violations": dg["lattice_violations"],
            "health": {k: _num(v) for k, v in dg["health"].items()},
            "pdr_residuals": [_num(x) for x in dg["pdr_residuals"]],
            "pdp_residuals": [_num(x) for x in dg["pdp_residuals"]],
            "hadamard_walk_regular_m": dg["hadamard_walk_regular_m"],
            "partial_dr_algebraic": dg["partial_dr_algebraic"],
            "partial_dr_combinatorial": dg["partial_dr_combinatorial"],
            "m_pdp": dg["m_pdp"],
            "spectrally_max_diameter": r.spectrally_max_diameter,
            "spectral_excess": {
                "avg_deg_d": exact(se.avg_degree),
                "pd_lambda0": _num(se.pd_at_lambda0),
                "closed_form": _num(se.closed_form),
                "equal": se.equal,
            },
            "orthogonality": [o.flag for o in r.orthogonality],
            "avg_deg_decimal": [_num(float(x)) for x in r.average_degrees],
            "provenance": _provenance(r),
        }
    if "tolerances" in sections:
        out["tolerances"] = r.tolerances.as_dict()
    return out


def error_record(name: str | None, line_no: int, exc: Exception) -> dict:
    rec = {"name": name, "line": line_no, "error": type(exc).__name__, "message": str(exc)}
    offset = getattr(exc, "offset", None)
    if offset is not None:
        rec["offset"] = offset
    return rec


def csv_row(rec: dict) -> dict:
    row = {k: rec.get(k) for k in CSV_FIELDS}
    for key in ("punctual_dr", "punctual_wr"):
        flags = rec.get(key)
        row[key] = " ".join(str(h) for h, f in enumerate(flags) if f) if flags else None
    return row


def _fmt(x: float) -> str:
    return f"{0.0 if abs(x) < 1e-12 else x:.10g}"


def render_text(r: ClassificationReport) -> str:
    yes = {True: "true", False: "false"}
    lines = [f"graph: {r.name or '-'}  n={r.n}  degree={r.degree}  girth={r.girth}  bipartite={yes[r.bipartite]}"]
    diam = f"D=d={r.D}" if r.D == r.d else f"D={r.D}, d={r.d}"
    lines.append(f"distance-regular: {yes[r.distance_regular]}; {diam}")
    se = r.spectral_excess
    rel = "=" if se.equal else "<"
    lines.append(f"spectral excess: {exact(se.avg_degree)} {rel} {_fmt(se.pd_at_lambda0)}")
    lines.append("spectrum: " + ", ".join(f"{_fmt(v)}^{m}" for v, m in r.spectrum))

    def row(label, flags):
        good = " ".join(str(h) for h, f in enumerate(flags) if f)
        bad = " ".join(str(h) for h, f in enumerate(flags) if not f)
        return f"{label}: {good}" + (f" / failing {bad}" if bad else "")

    lines.append(row("punctual DP", r.punctual_dp))
    lines.append(row("punctual DR", r.punctual_dr))
    lines.append(row("punctual WR", r.punctual_wr))
    lines.append(f"m-partially distance-regular: {r.m_pdr}")
    lines.append(f"m-walk-regular: {'none' if r.m_wr is None else r.m_wr}")

    def seq(name, vals):
        return f"{name}: " + " ".join("-" if v is None else str(v) for v in vals)

    ia = r.intersection
    lines += [seq("c", ia.c), seq("a", ia.a), seq("b", ia.b)]
    lines.append("bounds:")
    lines.append("   h  avg_deg        boundA          boundB          eqA    eqB")
    for b in r.bounds:
        lines.append(
            f"  {b.h:2d}  {str(exact(b.avg_degree)):>9}  {_fmt(b.bound_a):>14}  {_fmt(b.bound_b):>14}"
            f"  {yes[b.equality_a]:>5}  {yes[b.equality_b]:>5}"
        )
    lines.append("(l,m) frontier:")
    for ell, m in sorted(r.lm_frontier, key=lambda p: -p[1]):
        lines.append(f"  m={m:2d}  " + "#" * (ell + 1) + f"  l={ell}")
    dg = r.diagnostics
    for key in ("cross_check_mismatches", "lattice_violations"):
        for msg in dg[key]:
            lines.append(f"warning ({key.replace('_', ' ')}): {msg}")
    return "\n".join(lines) + "\n"
