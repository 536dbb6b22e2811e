"""Dense and sparse spectral primitives.

Everything downstream (the parameterized family, the three optimizers, the
definiteness layer) goes through the small set of operations in this module:
Hermitian eigendecomposition, clustered largest-eigenpair extraction,
unit-circle pencil eigenvalues, and orthonormal basis extension.

All types are immutable after construction and safe to share across threads;
every operation is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ConvergenceFailure, NonHermitianInput, SingularPencil

# Below this dimension, iterative paths densify instead.
DENSE_THRESHOLD = 1000
# Residual tolerance for accepted eigenpairs, relative to ||M||_2.
EIG_RESIDUAL_TOL = 1e-10
# Hermitian symmetry tolerance, relative to max(1, ||M||_F).
HERMITIAN_TOL = 1e-12
# Default discard tolerance for orthonormal_extend.
DROP_TOL = 1e-12


class HermitianOperator:
    """A Hermitian matrix held as dense storage or as a sparse matrix.

    Sparse operators expose matrix-vector products; entry access for the
    dense fallback is available through :attr:`dense` (used below the
    ``DENSE_THRESHOLD`` regime).
    """

    def __init__(self, mat, check: bool = True):
        if sp.issparse(mat):
            self._sparse = mat.tocsr()
            self._dense = None
            n, m = mat.shape
        else:
            arr = np.asarray(mat)
            if arr.ndim != 2:
                raise ValueError("expected a 2-d matrix")
            self._sparse = None
            self._dense = arr
            n, m = arr.shape
        if n != m or n < 1:
            raise ValueError(f"expected a square matrix, got shape {(n, m)}")
        self.dim = n
        if check:
            self._check_hermitian()

    def _check_hermitian(self):
        if self._dense is not None:
            M = self._dense
            dev = np.max(np.abs(M - M.conj().T))
            scale = max(1.0, float(np.linalg.norm(M)))
        else:
            D = (self._sparse - self._sparse.conj().T).tocoo()
            dev = np.max(np.abs(D.data)) if D.nnz else 0.0
            scale = max(1.0, float(sp.linalg.norm(self._sparse)))
        if dev > HERMITIAN_TOL * scale:
            raise NonHermitianInput(
                f"symmetry deviation {dev:.3e} exceeds {HERMITIAN_TOL:.0e} * {scale:.3e}"
            )

    @property
    def is_dense(self) -> bool:
        return self._dense is not None

    @property
    def dense(self) -> np.ndarray:
        """Dense view of the matrix (materializes sparse storage)."""
        if self._dense is None:
            return self._sparse.toarray()
        return self._dense

    @property
    def raw(self):
        """Underlying storage, dense array or CSR matrix."""
        return self._sparse if self._sparse is not None else self._dense

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.raw @ x

    def __repr__(self):
        kind = "sparse" if self._sparse is not None else "dense"
        return f"HermitianOperator(dim={self.dim}, {kind})"


def as_hermitian(M, check: bool = True) -> HermitianOperator:
    """Coerce an ndarray / sparse matrix / HermitianOperator."""
    if isinstance(M, HermitianOperator):
        return M
    return HermitianOperator(M, check=check)


@dataclass(frozen=True)
class EigDecomposition:
    """Full Hermitian eigendecomposition, eigenvalues sorted descending."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class Basis:
    """Matrix with orthonormal columns spanning a subspace of C^dim."""

    dim: int
    cols: np.ndarray

    @classmethod
    def empty(cls, dim: int) -> "Basis":
        return cls(dim, np.zeros((dim, 0), dtype=complex))

    @property
    def size(self) -> int:
        return self.cols.shape[1]


def hermitian_eig(M) -> EigDecomposition:
    """Full eigendecomposition of a dense Hermitian matrix.

    Eigenvalues are returned in descending order, with orthonormal
    eigenvector columns paired to them.
    """
    op = as_hermitian(M)
    try:
        w, V = np.linalg.eigh(op.dense)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"dense eigensolver failed: {exc}") from exc
    return EigDecomposition(values=w[::-1].copy(), vectors=V[:, ::-1].copy())


def _residual_check(M, vals, vecs, norm_scale):
    R = M @ vecs - vecs * vals[np.newaxis, :]
    res = np.linalg.norm(R, axis=0)
    return np.all(res <= EIG_RESIDUAL_TOL * max(norm_scale, 1e-300))


def largest_eigpairs(M, eps_cluster: float, max_pairs: int):
    """Largest eigenvalue plus its eps_cluster-cluster, with eigenvectors.

    Returns ``(values, vectors)`` where values[0] is the largest eigenvalue
    and every further value lies within ``eps_cluster`` of it (capped at
    ``max_pairs``).  Dense storage, or any operator below the dense
    threshold, goes through the full decomposition; larger sparse operators
    use restarted Lanczos with verified residuals.
    """
    if max_pairs < 1:
        raise ValueError("max_pairs must be >= 1")
    op = as_hermitian(M)
    n = op.dim
    if op.is_dense or n < DENSE_THRESHOLD:
        dec = hermitian_eig(op.dense)
        vals, vecs = dec.values, dec.vectors
    else:
        k = min(max_pairs + 1, n - 1)
        vals = vecs = None
        norm_ub = spectral_norm_ub(op)
        ncv = min(n, max(4 * k + 1, 40))
        last_exc = None
        for attempt in range(3):
            try:
                w, V = spla.eigsh(op.raw, k=k, which="LA", tol=0,
                                  ncv=min(n, ncv * (attempt + 1)),
                                  maxiter=200 * n)
            except spla.ArpackNoConvergence as exc:
                last_exc = exc
                continue
            order = np.argsort(w)[::-1]
            w, V = w[order], V[:, order]
            if _residual_check(op.raw, w, V, norm_ub):
                vals, vecs = w, V
                break
            last_exc = ConvergenceFailure("eigenpair residuals above tolerance")
        if vals is None:
            raise ConvergenceFailure(
                f"Lanczos did not converge after restarts: {last_exc}")
    keep = 1
    while (keep < min(max_pairs, len(vals))
           and vals[0] - vals[keep] <= eps_cluster):
        keep += 1
    return vals[:keep].copy(), vecs[:, :keep].copy()


def spectral_norm_ub(M) -> float:
    """Cheap upper bound on the spectral norm, within a 1.01 factor.

    Dense storage takes the exact extreme of ``|lambda|``; sparse operators
    run a power iteration on M^2 and inflate by the safeguard factor.
    """
    op = as_hermitian(M, check=False)
    if op.is_dense or op.dim < DENSE_THRESHOLD:
        w = np.linalg.eigvalsh(op.dense)
        return float(max(abs(w[0]), abs(w[-1])))
    # Power iteration on M^2 (robust when the extreme eigenvalues tie in
    # magnitude); the estimate sqrt(||M^2 x||) increases toward ||M||_2.
    A = op.raw
    rng = np.random.default_rng(12345)
    x = rng.standard_normal(op.dim) + 1j * rng.standard_normal(op.dim)
    x /= np.linalg.norm(x)
    est = 0.0
    for _ in range(300):
        y = A @ x
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return 0.0
        z = A @ (y / ny)
        nz = np.linalg.norm(z)
        new = float(np.sqrt(ny * nz))
        if nz == 0.0:
            return 1.01 * new
        x = z / nz
        if est > 0.0 and abs(new - est) <= 1e-6 * est:
            est = new
            break
        est = new
    return 1.01 * est


def pencil_unit_eigs(C: np.ndarray, alpha: float, tol_circle: float = 1e-8):
    """Angles of near-unit-modulus eigenvalues of the level pencil.

    Builds ``R(alpha) = [[2*alpha*I, -C], [I, 0]]`` against
    ``S = diag(C^*, I)`` and returns ``arg(lambda)`` in [0, 2*pi), sorted,
    for every generalized eigenvalue with ``||lambda| - 1|`` below
    ``tol_circle * max(1, ||C||_2)``.  The angles are candidates only; the
    caller must keep those where alpha is really the largest eigenvalue of
    the rotated Hermitian part.
    """
    C = np.asarray(C, dtype=complex)
    n = C.shape[0]
    if C.shape[0] != C.shape[1]:
        raise ValueError("C must be square")
    norm_c = float(np.linalg.norm(C, 2))
    eye = np.eye(n)
    zero = np.zeros((n, n))

    def unit_angles(Cmat):
        R = np.block([[2.0 * alpha * eye, -Cmat], [eye, zero]])
        S = np.block([[Cmat.conj().T, zero], [zero, eye]])
        ev = sla.eig(R, S, right=False)
        ev = ev[np.isfinite(ev)]
        if ev.size == 0:
            return None
        keep = np.abs(np.abs(ev) - 1.0) <= tol_circle * max(1.0, norm_c)
        return np.sort(np.mod(np.angle(ev[keep]), 2.0 * np.pi))

    try:
        angles = unit_angles(C)
    except (sla.LinAlgError, ValueError):
        angles = None
    if angles is None:
        # Singular pencil direction: nudge C off the singularity and retry
        # once with a fixed unit-modulus rotation (keeps runs deterministic).
        sigma = np.exp(0.7j)
        pert = C + sigma * 1e-14 * max(norm_c, 1.0) * eye
        try:
            angles = unit_angles(pert)
        except (sla.LinAlgError, ValueError):
            angles = None
        if angles is None:
            raise SingularPencil("level pencil is singular; perturbation retry failed")
    return angles


def orthonormal_extend(V: Basis, W, drop_tol: float = DROP_TOL) -> Basis:
    """Extend an orthonormal basis by the span of additional vectors.

    Each vector is orthogonalized against the current basis twice
    (re-orthogonalization); vectors whose remainder falls below
    ``drop_tol`` times their original norm are discarded.
    """
    cols = [np.asarray(V.cols, dtype=complex)]
    count = V.size
    n = V.dim
    for w in W:
        w = np.asarray(w, dtype=complex).reshape(-1)
        if w.shape[0] != n:
            raise ValueError("vector length does not match basis dimension")
        norm0 = np.linalg.norm(w)
        if norm0 == 0.0:
            continue
        v = w.copy()
        for _ in range(2):
            for block in cols:
                if block.shape[1]:
                    v -= block @ (block.conj().T @ v)
        nv = np.linalg.norm(v)
        if nv <= drop_tol * norm0:
            continue
        cols.append((v / nv)[:, np.newaxis])
        count += 1
    if count == V.size:
        return V
    return Basis(n, np.hstack(cols))
