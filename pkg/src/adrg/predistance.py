"""Predistance polynomials of a regular graph.

Polynomials live in the value representation: a polynomial of degree <= d is
the vector of its values at lambda_0..lambda_d, and the graph's scalar
product weights those values by m_i / n. Monomial coefficients are derived
afterwards from the three-term recurrence and only serve for reporting and
Horner cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DegreeOverflow, NormalizationDegenerate, NotBipartite, ZeroDenominator
from .graph import DistanceStructure, ValidatedGraph, _frozen
from .spectral import Spectrum

GAMMA_FLOOR = 1e-9
# p_d(lambda_0) is legitimately tiny (1e-18 for some cubic graphs with d = n-1),
# so positivity is judged against the rounding noise of the Stieltjes vectors.
VALUE_FLOOR = 1e-12


def _values(s: Spectrum, p) -> np.ndarray:
    coef = np.trim_zeros(np.atleast_1d(np.asarray(p, dtype=np.float64)), "b")
    if len(coef) > s.d + 1:
        raise DegreeOverflow(f"degree {len(coef) - 1} exceeds d = {s.d}")
    if not len(coef):
        return np.zeros(s.d + 1)
    return P.polyval(s.eigenvalues, coef)


def inner_product(s: Spectrum, p, q) -> float:
    """<p, q> = (1/n) sum_i m_i p(lambda_i) q(lambda_i); p, q are coefficient
    sequences, lowest degree first."""
    return float(_dot(s, _values(s, p), _values(s, q)))


def _dot(s: Spectrum, x: np.ndarray, y: np.ndarray) -> float:
    return float((s.multiplicities * x * y).sum() / s.n)


@dataclass(frozen=True, eq=False)
class PredistanceSystem:
    spectrum: Spectrum
    values: np.ndarray  # values[i, j] = p_i(lambda_j)
    coefficients: np.ndarray  # coefficients[i] = monomial coefficients of p_i, low to high
    alpha: np.ndarray  # alpha[i], i = 0..d
    beta: np.ndarray  # beta[i], i = 0..d; beta[d] = 0 by convention
    gamma: np.ndarray  # gamma[i], i = 0..d; gamma[0] = 0 by convention
    omega: np.ndarray  # leading coefficients

    @property
    def d(self) -> int:
        return self.values.shape[0] - 1

    @property
    def at_lambda0(self) -> np.ndarray:
        return self.values[:, 0]

    @cached_property
    def hoffman(self) -> np.ndarray:
        return self.coefficients.sum(axis=0)

    @cached_property
    def hoffman_values(self) -> np.ndarray:
        return self.values.sum(axis=0)

    @cached_property
    def hoffman_even(self) -> np.ndarray:
        return self.coefficients[0::2].sum(axis=0)

    @cached_property
    def hoffman_odd(self) -> np.ndarray:
        return self.hoffman - self.hoffman_even

    def preintersection(self, i: int, j: int, k: int) -> float:
        """xi_ij^k, the coefficient of p_k when p_i p_j is expanded in the p-basis."""
        s, v = self.spectrum, self.values
        num = (s.multiplicities * v[i] * v[j] * v[k]).sum()
        return float(num / (s.n * v[k, 0]))

    def preintersection_tensor(self, kmax: int | None = None) -> np.ndarray:
        """xi[i, j, k] for all i, j <= d and k <= kmax."""
        kmax = self.d if kmax is None else kmax
        s, v = self.spectrum, self.values
        w = s.multiplicities / s.n
        xi = np.einsum("l,il,jl,kl->ijk", w, v, v, v[: kmax + 1])
        return xi / v[: kmax + 1, 0][None, None, :]

    def matrices(self) -> np.ndarray:
        """p_i(A) for every i, assembled as sum_j p_i(lambda_j) E_j; shape (d+1, n, n)."""
        e = self.spectrum.idempotents
        return np.tensordot(self.values, e, axes=(1, 0))


def build_predistance(s: Spectrum) -> PredistanceSystem:
    lam = s.eigenvalues
    d = s.d
    qs = [np.ones(d + 1)]
    for k in range(1, d + 1):
        v = lam * qs[-1]
        for _ in range(2):  # reorthogonalize once more
            for q in qs:
                v = v - _dot(s, v, q) / _dot(s, q, q) * q
        qs.append(v)
    vals = np.empty((d + 1, d + 1))
    for k, q in enumerate(qs):
        norm = _dot(s, q, q)
        if not q[0] > VALUE_FLOOR * np.abs(q).max():
            raise NormalizationDegenerate(
                f"q_{k}(lambda_0) = {q[0]!r} is not positive; the eigenvalue grouping is suspect"
            )
        vals[k] = q * (q[0] / norm)

    norms = vals[:, 0]  # <p_i, p_i> = p_i(lambda_0)
    alpha = np.array([_dot(s, lam * vals[i], vals[i]) / norms[i] for i in range(d + 1)])
    beta = np.zeros(d + 1)
    gamma = np.zeros(d + 1)
    for i in range(d):
        beta[i] = _dot(s, lam * vals[i + 1], vals[i]) / norms[i]
        gamma[i + 1] = _dot(s, lam * vals[i], vals[i + 1]) / norms[i + 1]
    if d and gamma[1:].min() <= GAMMA_FLOOR:
        raise NormalizationDegenerate(f"recurrence coefficient gamma is not positive: {gamma[1:]!r}")

    coef = np.zeros((d + 1, d + 1))
    coef[0, 0] = 1.0
    if d:
        coef[1, 1] = 1.0
    for i in range(1, d):
        nxt = np.roll(coef[i], 1) - alpha[i] * coef[i] - beta[i - 1] * coef[i - 1]
        coef[i + 1] = nxt / gamma[i + 1]
    omega = np.array([coef[i, i] for i in range(d + 1)])
    return PredistanceSystem(
        spectrum=s,
        values=_frozen(vals),
        coefficients=_frozen(coef),
        alpha=_frozen(alpha),
        beta=_frozen(beta),
        gamma=_frozen(gamma),
        omega=_frozen(omega),
    )


def recurrence_residuals(ps: PredistanceSystem) -> np.ndarray:
    """Norm of x p_i - beta_{i-1} p_{i-1} - alpha_i p_i - gamma_{i+1} p_{i+1}."""
    s, v, d = ps.spectrum, ps.values, ps.d
    lam = s.eigenvalues
    out = np.empty(d + 1)
    for i in range(d + 1):
        r = lam * v[i] - ps.alpha[i] * v[i]
        if i > 0:
            r = r - ps.beta[i - 1] * v[i - 1]
        if i < d:
            r = r - ps.gamma[i + 1] * v[i + 1]
        out[i] = np.sqrt(max(_dot(s, r, r), 0.0))
    return out


def evaluate_horner(ps: PredistanceSystem, g: ValidatedGraph, i: int) -> np.ndarray:
    a = g.adjacency.astype(np.float64)
    eye = np.eye(g.n)
    coef = ps.coefficients[i][: i + 1]
    acc = coef[-1] * eye
    for c in coef[-2::-1]:
        acc = acc @ a + c * eye
    return acc


def evaluate_in_A(ps: PredistanceSystem, g: ValidatedGraph, i: int, method: str = "idempotent") -> np.ndarray:
    """p_i(A). The idempotent form is the default for conditioning."""
    if not 0 <= i <= ps.d:
        raise DegreeOverflow(f"index {i} outside 0..{ps.d}")
    if method == "horner":
        return evaluate_horner(ps, g, i)
    if method != "idempotent":
        raise ValueError(f"unknown method {method!r}")
    return np.tensordot(ps.values[i], ps.spectrum.idempotents, axes=(0, 0))


def hoffman_split(ps: PredistanceSystem, ds: DistanceStructure, tol: float = 1e-7):
    """(H_0(A), H_1(A)) for a bipartite graph, checked against the bipartition."""
    if not ds.bipartite:
        raise NotBipartite("the even/odd Hoffman split needs a bipartite graph")
    e = ps.spectrum.idempotents
    even = ps.values[0::2].sum(axis=0)
    odd = ps.values[1::2].sum(axis=0)
    h0 = np.tensordot(even, e, axes=(0, 0))
    h1 = np.tensordot(odd, e, axes=(0, 0))
    same = (ds.dist % 2 == 0).astype(np.float64)
    err = max(np.abs(h0 - same).max(), np.abs(h1 - (1 - same)).max())
    if err > tol:
        raise AssertionError(f"Hoffman split deviates from the bipartition by {err:.3e}")
    return h0, h1


def multiplicity_from_pd(ps: PredistanceSystem, s: Spectrum) -> np.ndarray:
    """m_i = (-1)^i pi_0 p_d(lambda_0) / (pi_i p_d(lambda_i))."""
    pd = ps.values[-1]
    if (np.abs(pd) < 1e-300).any():
        raise ZeroDenominator("p_d vanishes at an eigenvalue")
    signs = (-1.0) ** np.arange(s.d + 1)
    return signs * s.pi[0] * pd[0] / (s.pi * pd)


def spectral_excess_closed_form(s: Spectrum) -> float:
    """(n / pi_0^2) (sum_i 1 / (m_i pi_i^2))^(-1), which equals p_d(lambda_0)."""
    return float(s.n / s.pi[0] ** 2 / (1.0 / (s.multiplicities * s.pi**2)).sum())
