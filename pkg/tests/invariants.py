"""Every structural invariant of the pipeline, as one function per layer.

Each checker returns a list of failure messages so the property suite can
report all of them at once.
"""

from __future__ import annotations

import numpy as np

from adrg.classify import GraphAnalysis, lattice_violations
from adrg.predistance import hoffman_split, multiplicity_from_pd, recurrence_residuals
from adrg.spectral import (
    crossed_from_walks,
    idempotent_lagrange_check,
    lagrange_condition,
    walks_from_multiplicities,
)

EPS = 1e-7


def graph_invariants(an: GraphAnalysis) -> list[str]:
    out = []
    ds, n, delta = an.ds, an.n, an.delta
    mats = np.stack(ds.distance_matrices)
    if not (mats.sum(axis=0) == 1).all():
        out.append("sum of distance matrices is not J")
    if not (mats[0] == np.eye(n)).all() or not (mats[1] == an.graph.adjacency).all():
        out.append("A_0 != I or A_1 != A")
    avg = [m.sum() / n for m in mats]
    if any(abs(float(a) - b) > 0 for a, b in zip(ds.average_degrees, avg)):
        out.append("average degrees disagree with the distance matrices")
    if ds.average_degrees[0] != 1 or ds.average_degrees[1] != delta:
        out.append("avg degree of distance 0 or 1 wrong")
    regular = [bool((m.sum(axis=1) == m.sum(axis=1)[0]).all()) for m in mats]
    if regular != ds.regular_classes():
        out.append("regular_classes disagrees with row sums")
    return out


def spectral_invariants(an: GraphAnalysis) -> list[str]:
    out = []
    s, g, n = an.spectrum, an.graph, an.n
    e = s.idempotents
    lam, m = s.eigenvalues, s.multiplicities
    a = g.adjacency.astype(float)
    if m[0] != 1 or lam[0] != g.degree or m.sum() != n:
        out.append("m_0, lambda_0 or sum of multiplicities wrong")
    gram = np.einsum("iuv,jvw->ijuw", e, e)
    for i in range(s.d + 1):
        for j in range(s.d + 1):
            target = e[i] if i == j else 0.0
            if np.abs(gram[i, j] - target).max() > EPS:
                out.append(f"E_{i} E_{j} identity fails")
    if np.abs(e.sum(axis=0) - np.eye(n)).max() > EPS:
        out.append("sum of idempotents is not I")
    for i in range(s.d + 1):
        if np.abs(a @ e[i] - lam[i] * e[i]).max() > EPS:
            out.append(f"A E_{i} != lambda_{i} E_{i}")
    if np.abs(np.trace(e, axis1=1, axis2=2) - m).max() > EPS:
        out.append("trace(E_i) != m_i")

    mt = an.mult
    if np.abs(mt.local.sum(axis=1) - 1).max() > EPS or np.abs(mt.local.sum(axis=0) - m).max() > EPS:
        out.append("local multiplicity sums wrong")
    if np.abs(mt.crossed - mt.crossed.transpose(0, 2, 1)).max() > EPS:
        out.append("crossed multiplicities not symmetric")

    wt = an.walks
    if not (wt.powers[0] == np.eye(n)).all() or not (wt.powers[1] == g.adjacency).all():
        out.append("A^0 or A^1 wrong")
    for ell, p in enumerate(wt.powers):
        if (p < 0).any() or (p[an.ds.dist > ell] != 0).any():
            out.append(f"walks of length {ell} reach beyond distance {ell}")
        closed = float((m * lam**ell).sum())
        if abs(int(np.trace(p)) - closed) > EPS * max(1.0, lam[0] ** ell) * n:
            out.append(f"trace(A^{ell}) != sum m_i lambda_i^{ell}")
    # round trip, all pairs
    back = crossed_from_walks(wt, s)
    if np.abs(back - e).max() > EPS:
        out.append(f"walks -> multiplicities round trip off by {np.abs(back - e).max():.2e}")
    for u, v in [(0, 0), (0, n - 1), (0, 1)]:
        for ell in range(wt.max_length + 1):
            if abs(walks_from_multiplicities(mt, s, u, v, ell) - wt.count(u, v, ell)) > EPS * max(1.0, lam[0] ** ell):
                out.append(f"multiplicities -> walks fails at ({u},{v},{ell})")
    if np.abs(e.sum(axis=0) - np.eye(n)).max() > EPS:
        out.append("sum_i m_uv(lambda_i) != delta_uv")
    # Lagrange health check: float evaluation, error amplified by the condition factor
    cond = lagrange_condition(s)
    if (idempotent_lagrange_check(s, g) > np.maximum(EPS, 1e-15 * cond)).any():
        out.append("Lagrange idempotents exceed their conditioning bound")
    if s.is_symmetric(1e-8) != an.ds.bipartite:
        out.append("spectral symmetry differs from bipartiteness")
    walk_regular = all(c is not None for c in wt.constant[0])
    spectrum_regular = bool((np.ptp(mt.local, axis=0) <= EPS).all())
    if walk_regular != spectrum_regular:
        out.append("walk-regularity differs from spectrum-regularity")
    return out


def predistance_invariants(an: GraphAnalysis) -> list[str]:
    out = []
    s, pd, d = an.spectrum, an.pd, an.d
    lam, m, n = s.eigenvalues, s.multiplicities, s.n
    v = pd.values
    gram = (v * m / n) @ v.T
    p0 = pd.at_lambda0
    off = gram - np.diag(np.diag(gram))
    if np.abs(off).max() > EPS * p0.max():
        out.append("predistance polynomials not orthogonal")
    if np.abs(np.diag(gram) / p0 - 1).max() > EPS:
        out.append("<p_i, p_i> != p_i(lambda_0)")
    if (p0 <= 0).any():
        out.append("p_i(lambda_0) not positive")
    if not np.allclose(v[0], 1) or (d >= 1 and not np.allclose(v[1], lam)):
        out.append("p_0 != 1 or p_1 != x")
    if recurrence_residuals(pd).max() > EPS * max(1.0, p0.max()):
        out.append("recurrence residual too large")
    sums = pd.alpha + pd.beta + pd.gamma
    if np.abs(sums - lam[0]).max() > EPS * lam[0]:
        out.append("alpha + beta + gamma != lambda_0")
    if d and (pd.gamma[1:] <= 1e-9).any():
        out.append("gamma not positive")
    omega = np.concatenate([[1.0], 1.0 / np.cumprod(pd.gamma[1:])])
    if np.abs(pd.omega / omega - 1).max() > 1e-6:
        out.append("omega_k != 1/(gamma_1...gamma_k)")
    if abs(omega[d] / (n / s.pi[0]) - 1) > 1e-6:
        out.append("omega_d != n/pi_0")
    hv = pd.hoffman_values
    if abs(hv[0] - n) > EPS * n or np.abs(hv[1:]).max(initial=0) > EPS * n:
        out.append("Hoffman polynomial values wrong")
    if np.abs(an.poly_matrices.sum(axis=0) - 1).max() > EPS * n:
        out.append("H(A) != J")
    xi = pd.preintersection_tensor()
    for i in range(d + 1):
        if abs(xi[1, i, i] - pd.alpha[i]) > EPS * lam[0]:
            out.append(f"xi_1{i}^{i} != alpha_{i}")
        if i < d and abs(xi[1, i + 1, i] - pd.beta[i]) > EPS * lam[0]:
            out.append(f"xi_1,{i + 1}^{i} != beta_{i}")
        if i > 0 and abs(xi[1, i - 1, i] - pd.gamma[i]) > EPS * lam[0]:
            out.append(f"xi_1,{i - 1}^{i} != gamma_{i}")
    mults = multiplicity_from_pd(pd, s)
    if np.abs(mults - m).max() > 1e-4:
        out.append("multiplicities from p_d wrong")
    if an.ds.bipartite:
        if np.abs(pd.alpha).max() > EPS * lam[0]:
            out.append("bipartite but alpha != 0")
        if abs(pd.gamma[d] - lam[0]) > EPS * lam[0]:
            out.append("bipartite but gamma_d != delta")
        idx = np.arange(d + 1)
        odd = (idx[:, None, None] + idx[None, :, None] + idx[None, None, :]) % 2 == 1
        if np.abs(xi[odd]).max(initial=0) > EPS * max(1.0, np.abs(xi).max()):
            out.append("bipartite but xi_ij^k != 0 for odd i+j+k")
        try:
            hoffman_split(pd, an.ds, tol=EPS * n)
        except AssertionError as exc:
            out.append(str(exc))
    return out


def classify_invariants(an: GraphAnalysis) -> list[str]:
    out = list(lattice_violations(an))
    ia = an.intersection
    for k in range(an.D):
        c, a, b = (ia.c[k] if k else 0), ia.a[k], ia.b[k]
        if None not in (c, a, b) and c + a + b != an.delta:
            out.append(f"c_{k} + a_{k} + b_{k} != delta")
    out += [f"cross-check: {msg}" for msg in an.mismatches]
    return out


def all_invariants(an: GraphAnalysis) -> list[str]:
    return graph_invariants(an) + spectral_invariants(an) + predistance_invariants(an) + classify_invariants(an)
