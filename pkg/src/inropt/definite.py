"""Definiteness applications built on the global eigenvalue minimizers.

Covers the inner numerical radius of a matrix (distance from the origin to
the boundary of its field of values), the Crawford number and definiteness
of a Hermitian pair, the distance to a nearest definite pair with optimal
perturbations, pair rotation, hyperbolicity of quadratic eigenvalue
problems, and positive-definiteness shifts for saddle-point matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
import scipy.sparse as sp

from .errors import NotPositiveDefiniteMass, VerificationFailure
from .kernels import DENSE_THRESHOLD, as_hermitian, hermitian_eig
from .param import EPS_CLUSTER_DEFAULT, ParamHermitian
from .results import MinResult
from . import levelset as _levelset
from . import subspace as _subspace
from . import support as _support

TWO_PI = 2.0 * np.pi


@dataclass
class InnerRadiusResult:
    """Inner numerical radius with the minimizing angle and boundary data.

    ``zeta`` is |f_star|; ``zero_in_fov`` says whether the origin lies in
    the field of values (f_star >= 0); ``phi`` is the angle at which the
    closest boundary point zeta * e^{i*phi} is attained.
    """

    zeta: float
    theta_star: float
    f_star: float
    phi: float
    zero_in_fov: bool
    opt: MinResult


class CrawfordResult(NamedTuple):
    gamma: float
    is_definite: bool
    witness: InnerRadiusResult


@dataclass
class DefiniteRepair:
    """Nearest definite pair data: distance, perturbations, and rotation."""

    distance: float
    deltaA: np.ndarray
    deltaB: np.ndarray
    psi: float
    A_tilde: np.ndarray
    B_tilde: np.ndarray
    crawford_after: float
    theta_star: float


def _split_input(C, pair):
    if (C is None) == (pair is None):
        raise ValueError("pass exactly one of C or pair=(A, B)")
    if pair is not None:
        A, B = pair
        return as_hermitian(A), as_hermitian(B)
    C = np.asarray(C, dtype=complex)
    A = (C + C.conj().T) / 2.0
    B = -1j * (C - C.conj().T) / 2.0
    return as_hermitian(A, check=False), as_hermitian(B, check=False)


def inner_numerical_radius(C=None, pair=None, method: str = "auto",
                           tol: float = 1e-12,
                           eps_cluster: float = EPS_CLUSTER_DEFAULT,
                           gamma: Optional[float] = None,
                           max_iter: Optional[int] = None,
                           omega0: Optional[float] = None,
                           seed: int = _subspace.DEFAULT_SEED) -> InnerRadiusResult:
    """Minimize the largest eigenvalue of the rotated Hermitian part.

    ``method`` is one of ``levelset`` (dense, level-set extraction),
    ``support`` (piecewise-quadratic model), ``subspace`` (projection loop,
    the only choice for large sparse pairs), or ``auto``.
    """
    A, B = _split_input(C, pair)
    P = ParamHermitian.trig(A, B)
    n = A.dim
    if method == "auto":
        method = "support" if n <= DENSE_THRESHOLD else "subspace"
    if method == "levelset":
        if not (A.is_dense and B.is_dense) and n > DENSE_THRESHOLD:
            raise ValueError("levelset method requires dense input")
        Cd = A.dense + 1j * B.dense
        res, _ = _levelset.levelset_minimize(
            Cd, tol=tol,
            max_iter=_levelset.MAX_ITER_DEFAULT if max_iter is None
            else max_iter)
    elif method == "support":
        res = _support.eigopt_minimize(
            P, gamma=gamma, tol=tol,
            max_iter=_support.MAX_ITER_DEFAULT if max_iter is None
            else max_iter,
            omega0=omega0, eps_cluster=eps_cluster)
    elif method == "subspace":
        res, _ = _subspace.subspace_minimize(
            P, eps_cluster=eps_cluster, tol=tol,
            max_iter=_subspace.MAX_ITER_DEFAULT if max_iter is None
            else max_iter,
            omega1=omega0, seed=seed, gamma=gamma)
    else:
        raise ValueError(f"unknown method {method!r}")
    f_star = res.f_star
    theta = res.omega_star % TWO_PI
    zero_in = f_star >= 0.0
    phi = theta if zero_in else (theta + np.pi) % TWO_PI
    return InnerRadiusResult(zeta=abs(f_star), theta_star=theta,
                             f_star=f_star, phi=phi, zero_in_fov=zero_in,
                             opt=res)


def crawford_number(A, B, method: str = "auto", **opts) -> CrawfordResult:
    """Crawford number of a Hermitian pair and its definiteness verdict.

    The pair is definite exactly when the minimal largest eigenvalue of the
    rotated part is negative; the Crawford number is then the inner
    numerical radius of A + iB, and zero otherwise.
    """
    res = inner_numerical_radius(pair=(A, B), method=method, **opts)
    definite = res.f_star < 0.0
    gamma = res.zeta if definite else 0.0
    return CrawfordResult(gamma=gamma, is_definite=definite, witness=res)


def rotate_pair(A, B, theta: float):
    """(A_theta, B_theta) = (A cos t + B sin t, -A sin t + B cos t)."""
    A = as_hermitian(A).dense
    B = as_hermitian(B).dense
    c, s = np.cos(theta), np.sin(theta)
    return A * c + B * s, -A * s + B * c


def eigenpair_backmap(u_theta: float, v_theta: float, theta: float):
    """Map an eigenvalue pair of the rotated pencil back to the original.

    Applies the plane rotation to (v_theta, u_theta): a pair (u_t, v_t)
    with det(v_t A_theta - u_t B_theta) = 0 maps to (u, v) with
    det(v A - u B) = 0.
    """
    c, s = np.cos(theta), np.sin(theta)
    v = c * v_theta + s * u_theta
    u = -s * v_theta + c * u_theta
    return u, v


def nearest_definite_pair(A, B, delta: float, method: str = "auto",
                          variant: str = "clip", **opts) -> DefiniteRepair:
    """Distance to a nearest definite pair with optimal perturbations.

    The minimal perturbation follows from the spectral decomposition of the
    rotated part at the minimizing angle: eigenvalue clipping
    (``variant='clip'``) or the uniform shift ``-d*cos/sin(theta)*I``
    (``variant='uniform'``).  The returned rotation angle psi makes
    B_tilde positive definite with smallest eigenvalue max(delta, gamma).
    All certificate checks run before returning.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if variant not in ("clip", "uniform"):
        raise ValueError("variant must be 'clip' or 'uniform'")
    Ah = as_hermitian(A).dense.copy()
    Bh = as_hermitian(B).dense.copy()
    res = inner_numerical_radius(pair=(Ah, Bh), method=method, **opts)
    theta = res.theta_star
    gamma_before = res.zeta if res.f_star < 0 else 0.0
    H = Ah * np.cos(theta) + Bh * np.sin(theta)
    dec = hermitian_eig((H + H.conj().T) / 2.0)
    lam1 = dec.values[0]
    distance = max(delta + lam1, 0.0)
    if variant == "clip":
        clip = np.minimum(-delta - dec.values, 0.0)
        D = (dec.vectors * clip[np.newaxis, :]) @ dec.vectors.conj().T
        D = (D + D.conj().T) / 2.0
    else:
        D = -distance * np.eye(len(dec.values))
    dA = np.cos(theta) * D
    dB = np.sin(theta) * D
    psi = (theta + np.pi / 2.0) % TWO_PI
    T = np.exp(-1j * psi) * ((Ah + dA) + 1j * (Bh + dB))
    A_t = (T + T.conj().T) / 2.0
    B_t = -1j * (T - T.conj().T) / 2.0
    lam_min_Bt = float(np.linalg.eigvalsh(B_t)[0])

    scale = max(1.0, float(np.linalg.norm(np.hstack([Ah, Bh]), 2)))
    stacked = np.hstack([dA, dB])
    pert_norm = float(np.linalg.norm(stacked, 2)) if distance > 0 else 0.0
    target = max(delta, gamma_before)
    checks = [
        ("perturbation norm equals the distance",
         abs(pert_norm - distance) <= 1e-8 * scale),
        ("B_tilde is positive definite at level max(delta, gamma)",
         abs(lam_min_Bt - target) <= 1e-8 * scale and lam_min_Bt > 0.0),
        ("rotation identity",
         float(np.max(np.abs((A_t + 1j * B_t) - T))) <= 1e-12 * scale),
    ]
    failed = [name for name, ok in checks if not ok]
    if failed:
        raise VerificationFailure(
            "repair certificate failed: " + "; ".join(failed))
    return DefiniteRepair(distance=float(distance), deltaA=dA, deltaB=dB,
                          psi=float(psi), A_tilde=A_t, B_tilde=B_t,
                          crawford_after=lam_min_Bt, theta_star=float(theta))


def is_hyperbolic(Aq, Bq, Cq, method: str = "auto", **opts):
    """Hyperbolicity of the quadratic problem l^2 Aq + l Bq + Cq.

    Requires positive definite Aq; the verdict is the definiteness of the
    structured pair built from the three coefficients.  Returns
    ``(hyperbolic, witness)``.
    """
    Aq_d = Aq.toarray() if sp.issparse(Aq) else np.asarray(Aq)
    try:
        np.linalg.cholesky(Aq_d)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteMass(
            "leading QEP coefficient is not positive definite") from exc
    from .gallery import qep_linearization
    A1, B1 = qep_linearization(Aq, Bq, Cq)
    cr = crawford_number(A1, B1, method=method, **opts)
    return cr.is_definite, cr.witness


def saddle_shift(S, n: int, m: int, method: str = "auto", **opts):
    """Shift making a saddle-point matrix positive definite, if one exists.

    Tests definiteness of (S, J) with J = diag(I_n, -I_m).  When definite,
    the boundary angle of the field of values gives the shift
    mu = cos(phi - pi/2) / sin(phi - pi/2), and S - mu*J is verified
    positive definite.  Returns ``(mu, lambda_min)`` or ``None`` when the
    pair is indefinite.
    """
    Sop = as_hermitian(S)
    if Sop.dim != n + m:
        raise ValueError("S must have dimension n + m")
    signs = np.concatenate([np.ones(n), -np.ones(m)])
    J = sp.diags(signs).tocsr() if not Sop.is_dense else np.diag(signs)
    cr = crawford_number(Sop, J, method=method, **opts)
    if not cr.is_definite:
        return None
    phi_b = cr.witness.phi
    phi_shift = phi_b - np.pi / 2.0
    if abs(np.sin(phi_shift)) < 1e-300:
        raise VerificationFailure("degenerate boundary angle")
    mu = np.cos(phi_shift) / np.sin(phi_shift)
    M = (Sop.dense - mu * (J.toarray() if sp.issparse(J) else J))
    M = (M + M.conj().T) / 2.0
    try:
        np.linalg.cholesky(M)
        pd = True
    except np.linalg.LinAlgError:
        pd = False
    lam_min = float(np.linalg.eigvalsh(M)[0])
    if not pd and lam_min <= 0.0:
        raise VerificationFailure(
            f"definite pair but S - mu*J has lambda_min = {lam_min:.3e}")
    return float(mu), lam_min
