"""One-parameter Hermitian families  A(w) = sum_j f_j(w) A_j.

Provides evaluation, eigenvalue derivatives, one-sided derivative intervals
at clustered eigenvalues, projection onto orthonormal bases, and the
curvature bound used by the support-based optimizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.sparse as sp

from .kernels import (DENSE_THRESHOLD, Basis, HermitianOperator, as_hermitian,
                      hermitian_eig, largest_eigpairs, spectral_norm_ub)

EPS_CLUSTER_DEFAULT = 1e-6
MAX_CLUSTER_DEFAULT = 10


@dataclass(frozen=True)
class Term:
    """One coefficient function (with two derivatives) and its matrix."""

    fun: Callable[[float], float]
    dfun: Callable[[float], float]
    d2fun: Callable[[float], float]
    matrix: HermitianOperator


class ParamHermitian:
    """Hermitian family A(w) = sum_j f_j(w) A_j over a closed interval."""

    def __init__(self, terms: Sequence[Term], omega_range, is_trig: bool = False):
        if not terms:
            raise ValueError("term list must be non-empty")
        dims = {t.matrix.dim for t in terms}
        if len(dims) != 1:
            raise ValueError(f"terms have mixed dimensions {sorted(dims)}")
        a, b = float(omega_range[0]), float(omega_range[1])
        if a > b:
            raise ValueError("domain interval must satisfy a <= b")
        self.terms = tuple(terms)
        self.omega_range = (a, b)
        self.is_trig = is_trig
        self.dim = dims.pop()

    @classmethod
    def trig(cls, A, B) -> "ParamHermitian":
        """The rotated Hermitian part  A*cos(w) + B*sin(w)  on [0, 2*pi]."""
        A = as_hermitian(A)
        B = as_hermitian(B)
        if A.dim != B.dim:
            raise ValueError("A and B must have the same dimension")
        terms = (
            Term(np.cos, lambda w: -np.sin(w), lambda w: -np.cos(w), A),
            Term(np.sin, np.cos, lambda w: -np.sin(w), B),
        )
        return cls(terms, (0.0, 2.0 * np.pi), is_trig=True)

    def _combine(self, coeffs) -> HermitianOperator:
        mats = [t.matrix for t in self.terms]
        if all(m.is_dense for m in mats):
            out = coeffs[0] * mats[0].dense.astype(complex, copy=True)
            for c, m in zip(coeffs[1:], mats[1:]):
                out += c * m.dense
            return HermitianOperator(out, check=False)
        acc = None
        for c, m in zip(coeffs, mats):
            part = c * (m.raw if not m.is_dense else sp.csr_matrix(m.dense))
            acc = part if acc is None else acc + part
        return HermitianOperator(acc, check=False)

    def evaluate(self, omega: float) -> HermitianOperator:
        """A(w).  Evaluation outside the domain is permitted (line searches)."""
        return self._combine([t.fun(omega) for t in self.terms])

    def derivative_matrix(self, omega: float) -> HermitianOperator:
        """dA/dw at w."""
        return self._combine([t.dfun(omega) for t in self.terms])

    def project(self, V: Basis) -> "ParamHermitian":
        """Compressed family with terms V^* A_j V (coefficients shared)."""
        if V.dim != self.dim:
            raise ValueError("basis dimension does not match family dimension")
        terms = []
        for t in self.terms:
            red = V.cols.conj().T @ (t.matrix.raw @ V.cols)
            red = (red + red.conj().T) / 2.0
            terms.append(Term(t.fun, t.dfun, t.d2fun,
                              HermitianOperator(red, check=False)))
        return ParamHermitian(terms, self.omega_range, is_trig=self.is_trig)

    def __repr__(self):
        return (f"ParamHermitian(dim={self.dim}, terms={len(self.terms)}, "
                f"domain={self.omega_range})")


@dataclass(frozen=True)
class EigEval:
    """Largest eigenvalue of A(w) with derivative data at one point."""

    omega: float
    lambda_max: float
    derivative: float
    eigvec: np.ndarray
    cluster_size: int


@dataclass(frozen=True)
class ClarkeInterval:
    """Interval of one-sided derivative limits of lambda_max at a point."""

    lo: float
    hi: float

    @property
    def contains_zero_strictly(self) -> bool:
        return self.lo < 0.0 < self.hi


def _cluster_pairs(P: ParamHermitian, omega, eps_cluster, max_cluster):
    op = P.evaluate(omega)
    if op.is_dense or op.dim < DENSE_THRESHOLD:
        dec = hermitian_eig(op)
        vals = dec.values
        size = 1
        while size < len(vals) and vals[0] - vals[size] <= eps_cluster:
            size += 1
        size = min(size, max_cluster)
        return vals[:size], dec.vectors[:, :size], op
    vals, vecs = largest_eigpairs(op, eps_cluster, max_cluster)
    return vals, vecs, op


def eig_max_eval(P: ParamHermitian, omega: float,
                 eps_cluster: float = EPS_CLUSTER_DEFAULT) -> EigEval:
    """lambda_max(A(w)) with its derivative v^* A'(w) v.

    ``cluster_size`` counts the eigenvalues within ``eps_cluster`` of the
    largest; at points where the largest eigenvalue is simple the derivative
    is the classical analytic one.
    """
    vals, vecs, _ = _cluster_pairs(P, omega, eps_cluster, MAX_CLUSTER_DEFAULT)
    v = vecs[:, 0]
    Ap = P.derivative_matrix(omega)
    dval = complex(v.conj() @ Ap.apply(v))
    scale = max(1.0, abs(vals[0]))
    assert abs(dval.imag) <= 1e-10 * scale, "derivative has a large imaginary part"
    return EigEval(omega=float(omega), lambda_max=float(vals[0]),
                   derivative=float(dval.real), eigvec=v,
                   cluster_size=int(len(vals)))


def clarke_interval(P: ParamHermitian, omega: float,
                    eps_cluster: float = EPS_CLUSTER_DEFAULT) -> ClarkeInterval:
    """Extreme eigenvalues of U^* A'(w) U over the lambda_max cluster U.

    For a simple largest eigenvalue the interval degenerates to the point
    derivative; a sharp non-smooth minimizer is flagged by
    ``contains_zero_strictly``.
    """
    vals, U, _ = _cluster_pairs(P, omega, eps_cluster, MAX_CLUSTER_DEFAULT)
    Ap = P.derivative_matrix(omega)
    S = U.conj().T @ Ap.apply(U)
    S = (S + S.conj().T) / 2.0
    w = np.linalg.eigvalsh(S)
    return ClarkeInterval(lo=float(w[0]), hi=float(w[-1]))


# Eigenvalues closer than this (relative) are a numerically exact tie; only
# then is the eigenvector attribution arbitrary enough to need the
# derivative-interval slope.  Looser gates would build supports with the
# wrong branch slope near a kink and break the lower-bound certificate.
TIE_TOL = 1e-13


def support_slope(P: ParamHermitian, omega: float,
                  eps_cluster: float = EPS_CLUSTER_DEFAULT):
    """(lambda_max, slope, cluster_size) for support construction.

    At a numerically exact tie of the largest eigenvalue the slope is the
    largest eigenvalue of U^* A'(w) U over the tied invariant subspace (the
    right-hand derivative); otherwise it is the analytic derivative of the
    computed top eigenvector's branch.  ``cluster_size`` still counts the
    ``eps_cluster`` neighborhood for diagnostics.
    """
    vals, vecs, _ = _cluster_pairs(P, omega, eps_cluster, MAX_CLUSTER_DEFAULT)
    cluster_size = int(len(vals))
    Ap = P.derivative_matrix(omega)
    tie = TIE_TOL * max(1.0, abs(vals[0]))
    m = 1
    while m < len(vals) and vals[0] - vals[m] <= tie:
        m += 1
    if m == 1:
        v = vecs[:, 0]
        slope = float(np.real(v.conj() @ Ap.apply(v)))
    else:
        U = vecs[:, :m]
        S = U.conj().T @ Ap.apply(U)
        S = (S + S.conj().T) / 2.0
        slope = float(np.linalg.eigvalsh(S)[-1])
    return float(vals[0]), slope, cluster_size


def default_gamma_trig(A, B) -> float:
    """Lower curvature bound -(||A||_2 + ||B||_2) for the rotated part.

    Returns 0.0 only when both matrices vanish; the optimizer substitutes a
    tiny negative value in that case.
    """
    return -(spectral_norm_ub(A) + spectral_norm_ub(B))


def evaluate(P: ParamHermitian, omega: float) -> HermitianOperator:
    return P.evaluate(omega)


def derivative_matrix(P: ParamHermitian, omega: float) -> HermitianOperator:
    return P.derivative_matrix(omega)


def project(P: ParamHermitian, V: Basis) -> ParamHermitian:
    return P.project(V)
