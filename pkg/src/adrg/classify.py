"""Almost distance-regularity predicates, distance-degree bounds and reports.

Every predicate that has both a combinatorial and an algebraic
characterization is computed both ways. The exact integer answer is the
reported verdict; the floating point one is a validator, and any
disagreement lands in ``GraphAnalysis.mismatches`` instead of being resolved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import EmptyDistanceClass, InvalidRange
from .graph import DistanceStructure, Graph, ValidatedGraph, distance_structure, validate
from .predistance import (
    PredistanceSystem,
    build_predistance,
    multiplicity_from_pd,
    spectral_excess_closed_form,
)
from .spectral import (
    MultiplicityTable,
    Spectrum,
    WalkTable,
    eigendecompose,
    idempotent_lagrange_check,
    multiplicity_table,
    walk_table,
)


@dataclass(frozen=True)
class PunctualDP:
    flag: bool
    residual: float
    q_values: np.ndarray  # q_h(lambda_i), i = 0..d
    degree: float  # q_h(lambda_0)
    regular: bool  # whether the distance-h graph is regular


@dataclass(frozen=True)
class PartialDR:
    m: int
    algebraic: int
    combinatorial: int

    @property
    def agree(self) -> bool:
        return self.algebraic == self.combinatorial


@dataclass(frozen=True)
class BoundRow:
    h: int
    avg_degree: Fraction
    bound_a: float
    bound_b: float
    equality_a: bool
    equality_b: bool
    bound_b_alt: float  # p_h(lambda_0) (sum_i mbar_hi p_h(lambda_i))^-2


@dataclass(frozen=True)
class SpectralExcess:
    avg_degree: Fraction  # average degree of the distance-d graph (0 if D < d)
    pd_at_lambda0: float
    closed_form: float
    equal: bool

    @property
    def forms_agree_to(self) -> float:
        return abs(self.pd_at_lambda0 - self.closed_form)


@dataclass(frozen=True)
class Orthogonality:
    h: int
    lower: tuple[float, ...]  # <p_h(A), A_i> for i < h
    upper: tuple[float, ...]  # <p_i(A), A_h> for i = h+1..d
    flag: bool


@dataclass(frozen=True)
class IntersectionAnalysis:
    """Combinatorial intersection numbers p_ij^k = |G_i(u) & G_j(v)|, d(u, v) = k.

    ``values[(i, j, k)]`` is an int when well-defined, otherwise the frozenset
    of observed values. ``c``, ``a``, ``b`` are indexed by k, with None where
    the parameter is undefined or not well-defined.
    """

    max_index: int
    values: dict
    averages: dict
    c: tuple
    a: tuple
    b: tuple

    def well_defined(self, i: int, j: int, k: int) -> bool:
        return isinstance(self.values[(i, j, k)], int)

    def spread(self, i: int, j: int, k: int):
        v = self.values[(i, j, k)]
        return frozenset([v]) if isinstance(v, int) else v


class GraphAnalysis:
    """All intermediate structures for one graph, built once and shared."""

    def __init__(self, g: Graph, tol: Tolerances = DEFAULT_TOLERANCES):
        self.tol = tol
        self.graph: ValidatedGraph = g if isinstance(g, ValidatedGraph) else validate(g, tol.max_n)
        self.ds: DistanceStructure = distance_structure(self.graph)
        self.spectrum: Spectrum = eigendecompose(self.graph, tol.eig_group)
        self.mult: MultiplicityTable = multiplicity_table(self.spectrum, self.ds)
        self.walks: WalkTable = walk_table(self.graph, self.spectrum, self.ds)
        self.pd: PredistanceSystem = build_predistance(self.spectrum)
        self.mismatches: list[str] = []
        self._noted: set[str] = set()

    # -- basics -------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def D(self) -> int:
        return self.ds.diameter

    @property
    def d(self) -> int:
        return self.spectrum.d

    @property
    def delta(self) -> int:
        return self.graph.degree

    def _check_h(self, h: int) -> None:
        if not 0 <= h <= self.D:
            raise EmptyDistanceClass(h, self.D)

    def _mismatch(self, msg: str) -> None:
        if msg not in self._noted:
            self._noted.add(msg)
            self.mismatches.append(msg)

    @cached_property
    def poly_matrices(self) -> np.ndarray:
        return self.pd.matrices()

    @cached_property
    def _poly_class_stats(self):
        """Sum, max and min of p_i(A) over each distance class; each (d+1, D+1)."""
        p = self.poly_matrices
        return (
            self.ds.class_reduce(p),
            self.ds.class_reduce(p, np.maximum),
            self.ds.class_reduce(p, np.minimum),
        )

    @cached_property
    def hadamard_residuals(self) -> np.ndarray:
        """R[i, j] = max over d(u,v)=j of |p_i(A)_uv - delta_ij| / p_i(lambda_0)."""
        _, hi, lo = self._poly_class_stats
        target = np.zeros_like(hi)
        k = min(self.d, self.D) + 1
        target[np.arange(k), np.arange(k)] = 1.0
        r = np.maximum(np.abs(hi - target), np.abs(lo - target))
        return r / self.pd.at_lambda0[:, None]

    @cached_property
    def in_distance_algebra(self) -> np.ndarray:
        """Whether p_i(A) is constant on every distance class (i = 0..d)."""
        _, hi, lo = self._poly_class_stats
        return ((hi - lo) / self.pd.at_lambda0[:, None] <= self.tol.match).all(axis=1)

    # -- punctual distance-polynomiality / regularity -------------------------

    def punctually_distance_polynomial(self, h: int) -> PunctualDP:
        """Project A_h onto the adjacency algebra and compare."""
        self._check_h(h)
        s = self.spectrum
        coef = self.n * float(self.ds.average_degrees[h]) * self.mult.averages[h] / s.multiplicities
        q = np.tensordot(coef, s.idempotents, axes=(0, 0))
        residual = float(np.abs(q - (self.ds.dist == h)).max())
        regular = self.ds.regular_classes()[h]
        flag = residual <= self.tol.match
        if flag and not regular:
            self._mismatch(f"A_{h} is a polynomial in A but the distance-{h} graph is not regular")
        return PunctualDP(flag, residual, coef, float(coef[0]), regular)

    @cached_property
    def _pdp(self) -> list[PunctualDP]:
        return [self.punctually_distance_polynomial(h) for h in range(self.D + 1)]

    def pdr_residual(self, h: int) -> float:
        """max |p_h(A) - A_h| over all entries."""
        self._check_h(h)
        return float(self.hadamard_residuals[h].max() * self.pd.at_lambda0[h])

    def punctually_distance_regular(self, h: int) -> bool:
        return self.pdr_residual(h) <= self.tol.match

    @cached_property
    def punctual_dp(self) -> list[bool]:
        return [r.flag for r in self._pdp]

    @cached_property
    def punctual_dr(self) -> list[bool]:
        return [self.punctually_distance_regular(h) for h in range(self.D + 1)]

    # -- intersection numbers -------------------------------------------------

    def intersection_analysis(self, max_index: int | None = None) -> IntersectionAnalysis:
        m = self.D if max_index is None else max_index
        if not 0 <= m <= self.D:
            raise InvalidRange(f"max_index must lie in 0..{self.D}")
        ds = self.ds
        mats = [ds.distance_matrix(i).astype(np.float64) for i in range(m + 1)]
        values, averages = {}, {}
        for i in range(m + 1):
            for j in range(i, m + 1):
                # entries count common vertices, at most n: exact in float64
                prod = np.rint(mats[i] @ mats[j]).astype(np.int64)
                sums = ds.class_reduce(prod)
                hi = ds.class_reduce(prod, np.maximum)
                lo = ds.class_reduce(prod, np.minimum)
                for k in range(m + 1):
                    if hi[k] == lo[k]:
                        val = int(hi[k])
                    else:
                        val = frozenset(int(x) for x in np.unique(ds.class_values(prod, k)))
                    avg = Fraction(int(sums[k]), ds.class_sizes[k])
                    values[(i, j, k)] = values[(j, i, k)] = val
                    averages[(i, j, k)] = averages[(j, i, k)] = avg

        def param(i, j, k):
            if not (0 <= i <= m and 0 <= j <= m and 0 <= k <= m):
                return None
            v = values[(i, j, k)]
            return v if isinstance(v, int) else None

        c = tuple([None] + [param(1, k - 1, k) for k in range(1, m + 1)]) if m >= 1 else (None,)
        a = tuple(param(1, k, k) for k in range(m + 1))
        b = tuple(param(1, k + 1, k) if k + 1 <= m else None for k in range(m + 1))
        return IntersectionAnalysis(m, values, averages, c, a, b)

    @cached_property
    def intersection(self) -> IntersectionAnalysis:
        ia = self.intersection_analysis()
        self._check_preintersection(ia)
        return ia

    def _check_preintersection(self, ia: IntersectionAnalysis) -> None:
        """Under (l, m)-walk-regularity and i, j, k <= m, xi_ij^k equals p_ij^k
        when i + j <= l and the class average otherwise."""
        xi = self.pd.preintersection_tensor(min(self.d, ia.max_index))
        for m, ell in enumerate(self.lm_frontier):
            if ell is None or m > ia.max_index:
                continue
            for i in range(m + 1):
                for j in range(m + 1):
                    for k in range(m + 1):
                        if i + j <= ell:
                            target = ia.values[(i, j, k)]
                            if not isinstance(target, int):
                                self._mismatch(f"p_{i}{j}^{k} should be well-defined under ({ell},{m})-walk-regularity")
                                continue
                        else:
                            target = ia.averages[(i, j, k)]
                        x = xi[i, j, k]
                        if abs(x - float(target)) > self.tol.match * max(1.0, abs(x)):
                            self._mismatch(f"xi_{i}{j}^{k} = {x:.10g} but the intersection data give {target}")

    def _cab_defined(self, kind: str, k: int) -> bool:
        ia = self.intersection
        if kind == "c":
            return 1 <= k <= self.D and ia.c[k] is not None
        if kind == "a":
            return 0 <= k <= self.D and ia.a[k] is not None
        if kind == "b":
            if k == self.D:
                return True  # no vertices lie beyond the diameter
            return 0 <= k < self.D and ia.b[k] is not None
        raise ValueError(kind)

    # -- partial distance-regularity --------------------------------------------

    @cached_property
    def partial_dr(self) -> PartialDR:
        alg = 0
        while alg + 1 <= self.D and self.punctual_dr[alg + 1]:
            alg += 1
        comb = 0
        while comb + 1 <= self.D and (
            self._cab_defined("c", comb + 1)
            and self._cab_defined("a", comb)
            and self._cab_defined("b", comb)
        ):
            comb += 1
        res = PartialDR(comb, alg, comb)
        if not res.agree:
            self._mismatch(
                f"partial distance-regularity: polynomial matching gives {alg}, "
                f"intersection numbers give {comb}"
            )
        return res

    def partially_distance_regular(self) -> int:
        return self.partial_dr.m

    @cached_property
    def m_pdp(self) -> int:
        m = 0
        while m + 1 <= self.D and self.punctual_dp[m + 1]:
            m += 1
        return m

    @property
    def distance_polynomial(self) -> bool:
        return all(self.punctual_dp)

    @property
    def distance_regular(self) -> bool:
        return self.partial_dr.m == self.D and self.D == self.d

    # -- walk regularity ----------------------------------------------------------

    def _walk_constant_upto(self, h: int, top: int) -> bool:
        row = self.walks.constant[h]
        return all(row[ell] is not None for ell in range(0, min(top, self.walks.max_length) + 1))

    def spectrum_regular_at(self, h: int) -> bool:
        """Crossed local multiplicities constant over the distance-h class."""
        self._check_h(h)
        return bool((self.mult.spreads[h] <= self.tol.match).all())

    def punctually_walk_regular(self, h: int) -> bool:
        self._check_h(h)
        d = self.d
        flag = self._walk_constant_upto(h, d - 1)
        full = self._walk_constant_upto(h, d)
        if flag != full:
            self._mismatch(f"h={h}: walk counts constant for lengths <= d-1 but not for length d")
        if self.ds.bipartite:
            short = self._walk_constant_upto(h, d - 2)
            if short != flag:
                self._mismatch(f"h={h}: bipartite shortcut (lengths <= d-2) disagrees with lengths <= d-1")
        if flag != self.spectrum_regular_at(h):
            self._mismatch(
                f"h={h}: walk counts {'are' if flag else 'are not'} constant but crossed "
                f"multiplicities spread by {self.mult.spreads[h].max():.3e}"
            )
        return flag

    @cached_property
    def punctual_wr(self) -> list[bool]:
        return [self.punctually_walk_regular(h) for h in range(self.D + 1)]

    @cached_property
    def m_wr(self) -> int | None:
        m = -1
        while m + 1 <= self.D and self.punctual_wr[m + 1]:
            m += 1
        had = self.hadamard_walk_regular_m()
        if had != m:
            self._mismatch(f"m-walk-regularity: per-h walk counts give {m}, Hadamard condition gives {had}")
        return None if m < 0 else m

    def walk_regular_m(self) -> int | None:
        return self.m_wr

    def hadamard_walk_regular_m(self) -> int:
        ok = (self.hadamard_residuals <= self.tol.match).all(axis=0)
        m = -1
        while m + 1 <= self.D and ok[m + 1]:
            m += 1
        return m

    # -- (l, m)-walk-regularity -------------------------------------------------

    @cached_property
    def _lm_table(self) -> np.ndarray:
        """good[m, l]: walk counts of length <= l constant on every class m' <= m."""
        const = np.array(
            [[c is not None for c in row] for row in self.walks.constant], dtype=bool
        )  # (D+1, d+1)
        return np.logical_and.accumulate(np.logical_and.accumulate(const, axis=0), axis=1)

    def _check_lm(self, ell: int, m: int) -> None:
        if m < 0 or ell < m or ell > self.d or m > self.D:
            raise InvalidRange(f"(l, m) = ({ell}, {m}) needs 0 <= m <= l <= d = {self.d} and m <= D = {self.D}")

    def lm_walk_regular_hadamard(self, ell: int, m: int) -> bool:
        self._check_lm(ell, m)
        return bool((self.hadamard_residuals[: ell + 1, : m + 1] <= self.tol.match).all())

    def lm_walk_regular(self, ell: int, m: int) -> bool:
        self._check_lm(ell, m)
        flag = bool(self._lm_table[m, ell])
        if flag != self.lm_walk_regular_hadamard(ell, m):
            self._mismatch(f"({ell},{m})-walk-regularity: walk counts say {flag}, Hadamard condition disagrees")
        return flag

    @cached_property
    def lm_frontier(self) -> list[int | None]:
        """For m = 0..D, the largest l with (l, m)-walk-regularity, or None."""
        out: list[int | None] = []
        for m in range(self.D + 1):
            row = self._lm_table[m, m:]  # non-increasing in l
            out.append(m + int(row.sum()) - 1 if m <= self.d and row.size and row[0] else None)
        for m, best in enumerate(out):
            if best is None:
                if m <= self.d and self.lm_walk_regular_hadamard(m, m):
                    self._mismatch(f"({m},{m})-walk-regularity fails on walk counts but holds by Hadamard")
                continue
            if not self.lm_walk_regular_hadamard(best, m):
                self._mismatch(f"frontier point ({best},{m}) fails the Hadamard condition")
            if best < self.d and self.lm_walk_regular_hadamard(best + 1, m):
                self._mismatch(f"({best + 1},{m}) holds by Hadamard beyond the walk-count frontier")
        return out

    def lm_frontier_pairs(self) -> list[tuple[int, int]]:
        return [(ell, m) for m, ell in enumerate(self.lm_frontier) if ell is not None]

    # -- bounds -------------------------------------------------------------------

    def _close(self, x: float, y: float) -> bool:
        return bool(abs(x - y) <= self.tol.bound * max(1.0, abs(x), abs(y)))

    def bounds(self, h: int) -> BoundRow:
        self._check_h(h)
        s, pd = self.spectrum, self.pd
        avg = self.ds.average_degrees[h]
        mbar = self.mult.averages[h]
        bound_a = 1.0 / (self.n * (mbar**2 / s.multiplicities).sum())
        walks = float(self.walks.averages[h][h])
        bound_b = pd.at_lambda0[h] / (pd.omega[h] * walks) ** 2
        bound_b_alt = pd.at_lambda0[h] / float(mbar @ pd.values[h]) ** 2
        eq_a = self._close(float(avg), bound_a)
        eq_b = self._close(float(avg), bound_b)
        if eq_a != self.punctual_dp[h]:
            self._mismatch(f"h={h}: equality in the projection bound is {eq_a} but punctual DP is {self.punctual_dp[h]}")
        if eq_b != self.punctual_dr[h]:
            self._mismatch(f"h={h}: equality in the walk bound is {eq_b} but punctual DR is {self.punctual_dr[h]}")
        return BoundRow(h, avg, bound_a, bound_b, eq_a, eq_b, bound_b_alt)

    @cached_property
    def bound_rows(self) -> list[BoundRow]:
        return [self.bounds(h) for h in range(self.D + 1)]

    @cached_property
    def spectral_excess(self) -> SpectralExcess:
        d = self.d
        avg = self.ds.average_degrees[d] if d <= self.D else Fraction(0)
        poly = float(self.pd.at_lambda0[d])
        closed = spectral_excess_closed_form(self.spectrum)
        if abs(poly - closed) > self.tol.match * max(1.0, poly):
            self._mismatch(f"p_d(lambda_0) = {poly!r} but the closed form gives {closed!r}")
        return SpectralExcess(avg, poly, closed, d == self.D and self._close(float(avg), poly))

    def orthogonality_conditions(self, h: int) -> Orthogonality:
        self._check_h(h)
        sums, _, _ = self._poly_class_stats
        inner = sums / self.n  # <p_i(A), A_j>
        norm_p = np.sqrt(self.pd.at_lambda0)
        norm_a = np.sqrt(np.array([float(x) for x in self.ds.average_degrees]))
        lower = tuple(float(inner[h, i]) for i in range(h))
        upper = tuple(float(inner[i, h]) for i in range(h + 1, self.d + 1))
        cos_lower = [abs(inner[h, i]) / (norm_p[h] * norm_a[i]) for i in range(h)]
        cos_upper = [abs(inner[i, h]) / (norm_p[i] * norm_a[h]) for i in range(h + 1, self.d + 1)]
        flag = all(c <= self.tol.match for c in cos_lower + cos_upper)
        if flag != self.punctual_dr[h]:
            self._mismatch(f"h={h}: orthogonality conditions give {flag}, punctual DR is {self.punctual_dr[h]}")
        return Orthogonality(h, lower, upper, flag)

    # -- health checks -------------------------------------------------------------

    @cached_property
    def health(self) -> dict:
        s = self.spectrum
        e = s.idempotents
        a = self.graph.adjacency.astype(np.float64)
        eye = np.eye(self.n)
        prod_err = 0.0
        for i in range(s.d + 1):
            for j in range(i, s.d + 1):
                target = e[i] if i == j else 0.0
                prod_err = max(prod_err, float(np.abs(e[i] @ e[j] - target).max()))
        eig_err = max(float(np.abs(a @ e[i] - s.eigenvalues[i] * e[i]).max()) for i in range(s.d + 1))
        mults = multiplicity_from_pd(self.pd, s)
        return {
            "idempotent_products": prod_err,
            "idempotent_sum": float(np.abs(e.sum(axis=0) - eye).max()),
            "eigen_equation": eig_err,
            "trace_vs_multiplicity": float(
                np.abs(np.trace(e, axis1=1, axis2=2) - s.multiplicities).max()
            ),
            "lagrange_vs_eigenvectors": float(idempotent_lagrange_check(s, self.graph).max()),
            "multiplicities_from_pd": float(np.abs(mults - s.multiplicities).max()),
            "hoffman": float(np.abs(self.poly_matrices.sum(axis=0) - 1.0).max()),
        }


def weak_walk_partial_dr(constant, diameter: int) -> int:
    """Largest m <= D certified m-partially distance-regular by the weak walk
    condition: constancy at (h, l) for h < m, l in {h, h+1}, and at (m, m).

    ``constant[h][l]`` is truthy exactly when a_uv^(l) is constant over the
    distance-h class. Nothing else about the graph is consulted.
    """
    best = 0
    for m in range(diameter + 1):
        ok = all(constant[h][h] is not None and constant[h][h + 1] is not None for h in range(m))
        if ok and constant[m][m] is not None:
            best = m
    return best


def lattice_violations(an: GraphAnalysis) -> list[str]:
    """Check the implications between regularity notions; return failures."""
    out: list[str] = []
    tol = an.tol
    D, d, n, delta = an.D, an.d, an.n, an.delta
    s, pd, wk, mt = an.spectrum, an.pd, an.walks, an.mult
    dr, dp, wr = an.punctual_dr, an.punctual_dp, an.punctual_wr
    lam, mi = s.eigenvalues, s.multiplicities
    m_pdr, m_wr = an.partial_dr.m, an.m_wr
    m_wr_i = -1 if m_wr is None else m_wr
    bip = an.ds.bipartite

    def check(cond: bool, msg: str):
        if not cond:
            out.append(msg)

    def close(x, y, scale=1.0):
        return abs(x - y) <= tol.match * max(1.0, abs(scale))

    check(D <= d, "diameter exceeds d")
    check(dr[0] and (D < 1 or dr[1]), "0- or 1-punctual distance-regularity fails")
    for h in range(D + 1):
        check(not dr[h] or dp[h], f"punctual DR at {h} without punctual DP")
        if D == d:
            check(dr[h] == dp[h], f"D = d but punctual DR and DP differ at {h}")
    for h in range(d + 1):
        if an.in_distance_algebra[h]:
            check(h <= D and dr[h], f"p_{h}(A) lies in the distance algebra but {h}-punctual DR fails")

    if D >= 1 and an.m_pdp >= D - 1:
        check(an.distance_polynomial, "(D-1)-partially distance-polynomial but not distance-polynomial")
    if m_pdr >= d - 1:
        check(an.distance_regular, "(d-1)-partially distance-regular but not distance-regular")
    if bip:
        if an.m_pdp >= D - 2:
            check(an.distance_polynomial, "bipartite, (D-2)-partially DP but not distance-polynomial")
        if m_pdr >= d - 2:
            check(an.distance_regular, "bipartite, (d-2)-partially DR but not distance-regular")

    for m in range(math.ceil(d / 2), D + 1):
        lhs = m_pdr >= m
        rhs = all(dr[h] for h in range(max(0, 2 * m - d), m + 1))
        check(lhs == rhs, f"m={m}: partial DR and punctual DR on [2m-d, m] disagree")

    if D == d:
        check(an.distance_regular == dr[D], "D = d: distance-regularity differs from D-punctual DR")
        if D >= 2:
            check(an.distance_regular == (dr[D - 1] and dr[D - 2]), "D = d: DR differs from (D-1)- and (D-2)-punctual DR")

    for h in range(D + 1):
        check(wr[h] == an.spectrum_regular_at(h), f"punctual walk- and spectrum-regularity differ at {h}")

    if D >= 1 and wr[1]:
        check(wr[0], "1-punctually walk-regular but not walk-regular")
        for ell in range(1, wk.max_length + 1):
            a0, a1 = wk.constant[0][ell], wk.constant[1][ell - 1]
            check(a0 is not None and a1 is not None and a0 == delta * a1, f"a_0^({ell}) != delta a_1^({ell - 1})")
        check(np.allclose(mt.averages[1], lam / lam[0] * mi / n, atol=tol.match, rtol=0), "m_1i formula fails")

    if m_wr is not None:
        check(m_pdr >= m_wr, "m-walk-regular but not m-partially distance-regular")
        if m_wr <= D:
            ok = an._cab_defined("a", m_wr)
            check(ok, f"{m_wr}-walk-regular but a_{m_wr} not well-defined")
            if ok:
                check(abs(an.intersection.a[m_wr] - pd.alpha[m_wr]) <= tol.match * max(1, delta), "a_m != alpha_m")

    check(weak_walk_partial_dr(wk.constant, D) <= m_pdr, "weak walk condition exceeds partial DR")

    def lm(ell, m):
        return bool(an._lm_table[m, ell])

    for m in range(1, D + 1):
        for ell in range(m, d):
            if lm(ell, m):
                check(lm(ell + 1, m - 1), f"({ell},{m})-WR without ({ell + 1},{m - 1})-WR")
        if m <= d - 1:
            check(lm(m, m) == (lm(m + 1, m - 1) and an._cab_defined("c", m)), f"(m,m) characterization fails at m={m}")
        if m <= d - 2:
            rhs = lm(m + 2, m - 1) and all(an._cab_defined(k, m) for k in "cab")
            check(lm(m + 1, m) == rhs, f"(m+1,m) characterization fails at m={m}")
    for m in range(min(D, d) + 1):
        check(lm(m, m) == (m_pdr >= m), f"(m,m)-WR differs from m-partial DR at m={m}")
    for m in range(1, D + 1):
        lo, hi = an.lm_frontier[m - 1], an.lm_frontier[m]
        if hi is not None:
            check(lo is not None and lo >= min(d, hi + 1), f"frontier not a staircase at m={m}")
    if an.distance_regular:
        check(lm(d, D), "distance-regular but not (d, D)-walk-regular")
    if d >= 2:
        check(lm(2, 0), "every regular graph is (2, 0)-walk-regular")

    for m in range(0, m_pdr + 1):
        for extra, cond in (
            (1, 2 * m >= d - 1),
            (2, 2 * m >= d - 2 and an._cab_defined("a", m)),
            (3, 2 * m >= d - 3 and bip),
        ):
            target = 2 * m + extra - d
            if cond and 0 <= target <= D:
                check(m_wr_i >= target, f"{m}-partially DR should force {target}-walk-regularity")

    if D == d:
        check(wr[d], "D = d but not d-punctually walk-regular")
        add = wk.constant[d][d]
        check(add is not None and close(add, s.pi[0] / n, add), "a_d^(d) != pi_0/n")
        check(close(s.pi[0] / n, np.prod(pd.gamma[1:]), s.pi[0] / n), "pi_0/n != gamma_1...gamma_d")
        expect = (-1.0) ** np.arange(d + 1) * s.pi[0] / (n * s.pi)
        check(np.allclose(mt.averages[d], expect, atol=tol.match, rtol=0), "m_di formula fails")
        if bip and d >= 1:
            check(wr[d - 1], "bipartite D = d but not (d-1)-punctually walk-regular")
            v = wk.constant[d - 1][d - 1]
            check(v is not None and close(v, s.pi[0] / (n * delta), v), "a_{d-1}^(d-1) != pi_0/(n delta)")
            expect = expect * lam / delta
            check(np.allclose(mt.averages[d - 1], expect, atol=tol.match, rtol=0), "m_{d-1,i} formula fails")

    for h in range(D + 1):
        res = an._pdp[h]
        if res.flag:
            q = res.q_values
            check(close(float(an.ds.average_degrees[h]), q[0], q[0]), f"delta_{h} != q_h(lambda_0)")
            check(np.allclose(mt.averages[h], q / q[0] * mi / n, atol=tol.match, rtol=0), f"mbar_{h}i formula fails")
            if an.spectrum_regular_at(h):
                zeros = np.abs(q) <= tol.match * max(1.0, abs(q[0]))
                ell = int(zeros.sum()) - 1
                if ell < 0 or (ell <= d and lm(ell, 0)):
                    check(wr[0], f"h={h}: hypotheses hold but the graph is not walk-regular")
                    check(np.allclose(mt.averages[h], q / q[0] * mi / n, atol=tol.match, rtol=0), f"m_{h}i formula fails")

    for row in an.bound_rows:
        avg = float(row.avg_degree)
        slack = tol.bound * max(1.0, row.bound_b)
        check(avg <= row.bound_a + slack and row.bound_a <= row.bound_b + slack, f"bound sandwich fails at h={row.h}")
        check(abs(row.bound_b - row.bound_b_alt) <= slack, f"two forms of the walk bound differ at h={row.h}")
        check(row.equality_a == dp[row.h], f"projection-bound equality differs from punctual DP at h={row.h}")
        check(row.equality_b == dr[row.h], f"walk-bound equality differs from punctual DR at h={row.h}")
    for h in range(D + 1):
        check(an.orthogonality_conditions(h).flag == dr[h], f"orthogonality conditions differ from punctual DR at h={h}")

    se = an.spectral_excess
    check(float(se.avg_degree) <= se.pd_at_lambda0 * (1 + tol.bound) + tol.bound, "spectral excess inequality fails")
    check(se.equal == an.distance_regular, "spectral excess equality differs from distance-regularity")

    all_a_eq = D == d and all(dr)
    all_in_d = bool(an.in_distance_algebra.all())
    check(an.distance_regular == all_a_eq, "DR differs from A_h = p_h(A) for all h")
    check(an.distance_regular == all_in_d, "DR differs from every p_h(A) lying in the distance algebra")

    if an.ds.girth is not None:
        check(m_pdr >= min(D, (an.ds.girth - 1) // 2), "girth lemma fails")
    check(s.is_symmetric(1e-8) == bip, "spectrum symmetry differs from bipartiteness")
    return out


# -- report -----------------------------------------------------------------------------


@dataclass
class ClassificationReport:
    name: str | None
    n: int
    degree: int
    D: int
    d: int
    girth: int | None
    bipartite: bool
    spectrum: list[tuple[float, int]]
    punctual_dp: list[bool]
    punctual_dr: list[bool]
    punctual_wr: list[bool]
    m_pdr: int
    m_wr: int | None
    lm_frontier: list[tuple[int, int]]
    distance_polynomial: bool
    distance_regular: bool
    spectrally_max_diameter: bool
    bounds: list[BoundRow]
    orthogonality: list[Orthogonality]
    intersection: IntersectionAnalysis
    spectral_excess: SpectralExcess
    average_degrees: list[Fraction]
    tolerances: Tolerances
    diagnostics: dict = field(default_factory=dict)

    # camelCase aliases used by filter expressions
    @property
    def mWalkRegular(self):
        return self.m_wr

    @property
    def mPartialDR(self):
        return self.m_pdr

    @property
    def distanceRegular(self):
        return self.distance_regular

    @property
    def distancePolynomial(self):
        return self.distance_polynomial

    @property
    def spectrallyMaxDiameter(self):
        return self.spectrally_max_diameter

    def punctual_dr_set(self) -> list[int]:
        return [h for h, f in enumerate(self.punctual_dr) if f]

    def punctual_wr_set(self) -> list[int]:
        return [h for h, f in enumerate(self.punctual_wr) if f]


def classify(g: Graph, tol: Tolerances = DEFAULT_TOLERANCES) -> ClassificationReport:
    an = GraphAnalysis(g, tol)
    return report_from_analysis(an)


def report_from_analysis(an: GraphAnalysis) -> ClassificationReport:
    s = an.spectrum
    # evaluate everything that records cross-check mismatches before reading them
    bounds = an.bound_rows
    ortho = [an.orthogonality_conditions(h) for h in range(an.D + 1)]
    se = an.spectral_excess
    frontier = an.lm_frontier_pairs()
    ia = an.intersection
    _ = an.m_wr, an.partial_dr, an.punctual_dp
    violations = lattice_violations(an)
    diagnostics = {
        "cross_check_mismatches": list(an.mismatches),
        "lattice_violations": violations,
        "health": an.health,
        "pdr_residuals": [an.pdr_residual(h) for h in range(an.D + 1)],
        "pdp_residuals": [r.residual for r in an._pdp],
        "hadamard_walk_regular_m": an.hadamard_walk_regular_m(),
        "partial_dr_algebraic": an.partial_dr.algebraic,
        "partial_dr_combinatorial": an.partial_dr.combinatorial,
        "m_pdp": an.m_pdp,
    }
    return ClassificationReport(
        name=an.graph.name,
        n=an.n,
        degree=an.delta,
        D=an.D,
        d=an.d,
        girth=an.ds.girth,
        bipartite=an.ds.bipartite,
        spectrum=[(float(v), int(m)) for v, m in zip(s.eigenvalues, s.multiplicities)],
        punctual_dp=list(an.punctual_dp),
        punctual_dr=list(an.punctual_dr),
        punctual_wr=list(an.punctual_wr),
        m_pdr=an.partial_dr.m,
        m_wr=an.m_wr,
        lm_frontier=frontier,
        distance_polynomial=an.distance_polynomial,
        distance_regular=an.distance_regular,
        spectrally_max_diameter=an.D == an.d,
        bounds=bounds,
        orthogonality=ortho,
        intersection=ia,
        spectral_excess=se,
        average_degrees=list(an.ds.average_degrees),
        tolerances=an.tol,
        diagnostics=diagnostics,
    )
