"""Eigenstructure of the adjacency matrix and exact walk counts.

Idempotents are built from orthonormal eigenvectors; the Lagrange
interpolation form is only used as an independent health check. Walk counts
are exact integers, crossed local multiplicities are floats, and the two are
tied together by the conversion formulas in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import ClusterAmbiguity, IntegerOverflow, SpectralError
from .graph import DistanceStructure, ValidatedGraph, _frozen

__all__ = [
    "Spectrum",
    "MultiplicityTable",
    "WalkTable",
    "eigendecompose",
    "lagrange_coefficients",
    "idempotent_lagrange_check",
    "multiplicity_table",
    "walk_table",
    "walks_from_multiplicities",
    "multiplicities_from_walks",
    "crossed_from_walks",
    "lagrange_condition",
]


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray  # distinct, strictly decreasing
    multiplicities: np.ndarray
    idempotents: np.ndarray  # shape (d+1, n, n)
    raw_eigenvalues: np.ndarray
    refined: np.ndarray | None = None  # extended precision Rayleigh quotients, one per eigenvalue

    @property
    def d(self) -> int:
        return len(self.eigenvalues) - 1

    @property
    def n(self) -> int:
        return self.idempotents.shape[1]

    @cached_property
    def pi(self) -> np.ndarray:
        lam = self.eigenvalues
        diff = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(diff, 1.0)
        return diff.prod(axis=1)

    @property
    def phi_signs(self) -> np.ndarray:
        """phi_i = sign * pi_i; the sign is (-1)^i since eigenvalues decrease."""
        return (-1.0) ** np.arange(self.d + 1)

    @property
    def phi(self) -> np.ndarray:
        return self.phi_signs * self.pi

    def is_symmetric(self, tol: float) -> bool:
        lam, m = self.eigenvalues, self.multiplicities
        return bool(np.allclose(lam, -lam[::-1], atol=tol, rtol=0) and (m == m[::-1]).all())

    def __repr__(self):
        pairs = ", ".join(f"{v:.6g}^{k}" for v, k in zip(self.eigenvalues, self.multiplicities))
        return f"<Spectrum d={self.d} {{{pairs}}}>"


def eigendecompose(g: ValidatedGraph, eig_group: float = 1e-9) -> Spectrum:
    """Full symmetric eigendecomposition, grouped into distinct eigenvalues.

    Sorted raw eigenvalues whose gap is at most ``eig_group * max(1, |lambda_0|)``
    are merged. A gap strictly between that threshold and ten times it raises
    ``ClusterAmbiguity``.
    """
    if not eig_group > 0:
        raise ValueError("eig_group must be positive")
    a = g.adjacency.astype(np.float64)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigensolver failed: {exc}") from exc
    w, v = w[::-1], v[:, ::-1]
    scale = max(1.0, abs(w[0]))
    lo, hi = eig_group * scale, 10 * eig_group * scale
    gaps = w[:-1] - w[1:]
    for k, gap in enumerate(gaps):
        if lo < gap < hi:
            raise ClusterAmbiguity(float(gap), k, lo, hi)
    cuts = np.nonzero(gaps > lo)[0] + 1
    groups = np.split(np.arange(len(w)), cuts)
    values = np.array([w[idx].mean() for idx in groups])
    mults = np.array([len(idx) for idx in groups], dtype=np.int64)
    if mults[0] != 1 or abs(values[0] - g.degree) > 1e3 * lo:
        raise SpectralError(
            f"largest eigenvalue {values[0]!r} with multiplicity {mults[0]} "
            f"does not match a connected {g.degree}-regular graph"
        )
    values[0] = g.degree
    idem = np.empty((len(groups), g.n, g.n))
    for i, idx in enumerate(groups):
        block = v[:, idx]
        idem[i] = block @ block.T
    return Spectrum(
        eigenvalues=_frozen(values),
        multiplicities=_frozen(mults),
        idempotents=_frozen(idem),
        raw_eigenvalues=_frozen(w),
        refined=_frozen(_refine(a, v, groups, g.degree)),
    )


def _refine(a: np.ndarray, v: np.ndarray, groups, degree: int) -> np.ndarray:
    # The Rayleigh quotient error is quadratic in the eigenvector error, so
    # evaluating it in extended precision recovers digits that eigh cannot give.
    ext = np.longdouble
    vx = v.astype(ext)
    rq = np.einsum("ui,ui->i", vx, a.astype(ext) @ vx) / np.einsum("ui,ui->i", vx, vx)
    out = np.array([rq[idx].mean() for idx in groups], dtype=ext)
    out[0] = degree
    return out


FIXED_POINT_BITS = 256


def _lagrange_exact(s: Spectrum) -> list[list[Fraction]]:
    """Exact rational coefficients of every lambda_i^*, taking the (refined)
    eigenvalues at their binary floating point values."""
    lam = s.refined if s.refined is not None else s.eigenvalues
    lam = [Fraction(*x.as_integer_ratio()) for x in lam]
    out = []
    for i, li in enumerate(lam):
        c, phi = [Fraction(1)], Fraction(1)
        for j, lj in enumerate(lam):
            if j == i:
                continue
            nxt = [Fraction(0)] * (len(c) + 1)
            for k, ck in enumerate(c):
                nxt[k + 1] += ck
                nxt[k] -= lj * ck
            c, phi = nxt, phi * (li - lj)
        out.append([ck / phi for ck in c])
    return out


def lagrange_coefficients(s: Spectrum) -> np.ndarray:
    """Monomial coefficients (low to high) of every lambda_i^*; shape (d+1, d+1)."""
    return np.array([[float(c) for c in row] for row in _lagrange_exact(s)])


def lagrange_condition(s: Spectrum) -> np.ndarray:
    """sum_k |coef_ik| lambda_0^k: the factor by which rounding in A^k entries
    is amplified when lambda_i^*(A) is evaluated in floating point."""
    return np.abs(lagrange_coefficients(s)) @ (float(s.eigenvalues[0]) ** np.arange(s.d + 1))


def idempotent_lagrange_check(s: Spectrum, g: ValidatedGraph) -> np.ndarray:
    """max |lambda_i^*(A) - E_i| per i, with lambda_i^*(A) evaluated by Horner."""
    a = g.adjacency.astype(np.float64)
    eye = np.eye(g.n)
    res = np.empty(s.d + 1)
    for i, coef in enumerate(lagrange_coefficients(s)):
        acc = coef[-1] * eye
        for c in coef[-2::-1]:
            acc = acc @ a + c * eye
        res[i] = np.abs(acc - s.idempotents[i]).max()
    return res


@dataclass(frozen=True, eq=False)
class MultiplicityTable:
    local: np.ndarray  # (n, d+1): m_u(lambda_i)
    crossed: np.ndarray  # (d+1, n, n): m_uv(lambda_i), shares memory with the idempotents
    averages: np.ndarray  # (D+1, d+1): average crossed multiplicity per distance class
    spreads: np.ndarray  # (D+1, d+1): max - min of m_uv(lambda_i) over each class

    def crossed_entry(self, u: int, v: int) -> np.ndarray:
        return self.crossed[:, u, v]


def multiplicity_table(s: Spectrum, ds: DistanceStructure) -> MultiplicityTable:
    e = s.idempotents
    sizes = np.asarray(ds.class_sizes, dtype=np.float64)
    sums = ds.class_reduce(e)  # (d+1, D+1)
    hi = ds.class_reduce(e, np.maximum)
    lo = ds.class_reduce(e, np.minimum)
    local = np.stack([np.diagonal(ei) for ei in e], axis=1)
    return MultiplicityTable(
        local=_frozen(local),
        crossed=e,
        averages=_frozen((sums / sizes[None, :]).T),
        spreads=_frozen((hi - lo).T),
    )


@dataclass(frozen=True, eq=False)
class WalkTable:
    """Exact walk counts a_uv^(l) = (A^l)_uv for l = 0..d.

    ``constant[h][l]`` is the common value of a_uv^(l) over pairs at distance h,
    or None when the counts differ; ``distinct[(h, l)]`` then holds the
    observed values. ``averages[h][l]`` is the exact mean over the class.
    """

    powers: tuple[np.ndarray, ...]
    constant: tuple[tuple[int | None, ...], ...]
    distinct: dict
    averages: tuple[tuple[Fraction, ...], ...]

    @property
    def max_length(self) -> int:
        return len(self.powers) - 1

    def count(self, u: int, v: int, length: int) -> int:
        return int(self.powers[length][u, v])

    def profile(self, u: int, v: int) -> tuple[int, ...]:
        return tuple(int(p[u, v]) for p in self.powers)

    def is_constant(self, h: int, length: int) -> bool:
        return self.constant[h][length] is not None

    def by_distance(self, h: int, length: int):
        """Constant value, or the frozenset of distinct values seen."""
        c = self.constant[h][length]
        return c if c is not None else self.distinct[(h, length)]


def _exact_powers(a: np.ndarray, degree: int, top: int) -> list[np.ndarray]:
    n = a.shape[0]
    bound = degree ** top  # every entry of A^l is at most degree^l
    if bound < 2**53:
        # nonnegative integer partial sums below 2^53: float BLAS is exact
        dtype = np.float64
    elif bound * n * n < 2**63:
        dtype = np.int64
    else:
        dtype = object
    base = a.astype(dtype)
    powers = [np.eye(n, dtype=np.int64).astype(dtype)]
    for _ in range(top):
        powers.append(powers[-1] @ base)
    out = []
    for ell, p in enumerate(powers):
        if dtype is np.float64:
            p = np.rint(p).astype(np.int64)
        # walks of length l from any vertex of a regular graph number degree^l
        if (p.sum(axis=1) != degree ** ell).any():
            raise IntegerOverflow(f"walk counts of length {ell} failed the row-sum check")
        out.append(_frozen(p))
    return out


def walk_table(g: ValidatedGraph, s: Spectrum, ds: DistanceStructure, max_length: int | None = None) -> WalkTable:
    top = s.d if max_length is None else max_length
    powers = _exact_powers(g.adjacency, g.degree, top)
    constant, averages, distinct = [], [], {}
    for h in range(ds.diameter + 1):
        size = ds.class_sizes[h]
        row_c, row_a = [], []
        for ell, p in enumerate(powers):
            vals = ds.class_values(p, h)
            lo, hi = vals.min(), vals.max()
            if lo == hi:
                row_c.append(int(lo))
            else:
                row_c.append(None)
                distinct[(h, ell)] = frozenset(int(x) for x in np.unique(vals))
            row_a.append(Fraction(int(vals.sum(dtype=object)), size))
        constant.append(tuple(row_c))
        averages.append(tuple(row_a))
    return WalkTable(tuple(powers), tuple(constant), distinct, tuple(averages))


def walks_from_multiplicities(mt: MultiplicityTable, s: Spectrum, u: int, v: int, length: int) -> float:
    """sum_i m_uv(lambda_i) * lambda_i^length."""
    if length < 0:
        raise ValueError("walk length must be nonnegative")
    return float(mt.crossed_entry(u, v) @ s.eigenvalues**length)


def multiplicities_from_walks(wt: WalkTable, s: Spectrum, u: int, v: int) -> np.ndarray:
    """Apply each lambda_i^* coefficientwise to the walk profile (a_uv^(0..d))."""
    if wt.max_length < s.d:
        raise ValueError("walk table must reach length d")
    prof = np.array([wt.profile(u, v)[: s.d + 1]], dtype=object).T
    return _fixed_point_apply(s, prof)[:, 0]


def crossed_from_walks(wt: WalkTable, s: Spectrum) -> np.ndarray:
    """multiplicities_from_walks for every pair at once; shape (d+1, n, n)."""
    if wt.max_length < s.d:
        raise ValueError("walk table must reach length d")
    n = s.n
    iu, iv = np.triu_indices(n)
    prof = np.stack([p[iu, iv].astype(object) for p in wt.powers[: s.d + 1]])
    vals = _fixed_point_apply(s, prof)
    out = np.empty((s.d + 1, n, n))
    out[:, iu, iv] = vals
    out[:, iv, iu] = vals
    return out


def _fixed_point_apply(s: Spectrum, profiles: np.ndarray) -> np.ndarray:
    # Walk counts reach lambda_0^d and the coefficients alternate in sign, so
    # the sum cancels catastrophically in floating point once d is ~20.
    # Scaled integers keep the arithmetic exact.
    scale = 1 << FIXED_POINT_BITS
    coef = np.array([[round(c * scale) for c in row] for row in _lagrange_exact(s)], dtype=object)
    acc = coef.dot(profiles)
    return np.array([[float(Fraction(int(x), scale)) for x in row] for row in acc])
