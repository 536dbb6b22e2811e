"""Independent oracles shared across the test suite.

Everything here deliberately avoids the code paths it is used to check:
eigenvalues by characteristic-polynomial bisection (LU determinants, not
eigh), global minima by dense grids with golden-section refinement, and
convergence-order estimation by least squares on log-errors.
"""

import math

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def charpoly_eigs(M, iters=120):
    """All eigenvalues of a real symmetric matrix by bisection on the
    characteristic polynomials of the leading principal minors, whose roots
    interlace.  Determinants go through LU, independent of any symmetric
    eigensolver."""
    M = np.asarray(M, dtype=float)
    n = M.shape[0]

    def p(k, lam):
        return float(np.linalg.det(M[:k, :k] - lam * np.eye(k)))

    radii = np.sum(np.abs(M), axis=1) - np.abs(np.diag(M))
    lo = float(np.min(np.diag(M) - radii)) - 1.0
    hi = float(np.max(np.diag(M) + radii)) + 1.0
    roots = [M[0, 0]]
    for k in range(2, n + 1):
        brackets = [lo] + sorted(roots) + [hi]
        new = []
        for a, b in zip(brackets[:-1], brackets[1:]):
            fa, fb = p(k, a), p(k, b)
            assert fa * fb < 0, "interlacing bracket without a sign change"
            for _ in range(iters):
                mid = 0.5 * (a + b)
                fm = p(k, mid)
                if fm == 0.0:
                    a = b = mid
                    break
                if (fm < 0) == (fa < 0):
                    a, fa = mid, fm
                else:
                    b, fb = mid, fm
            new.append(0.5 * (a + b))
        roots = new
    return np.array(sorted(roots, reverse=True))


def golden_refine(f, a, b, iters=100):
    """Golden-section minimization of a unimodal scalar function."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    mid = 0.5 * (a + b)
    return mid, f(mid)


def lam_max_trig(A, B, thetas):
    """lambda_max(A cos t + B sin t) on a vector of angles (batched)."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    H = (A[None, :, :] * np.cos(thetas)[:, None, None]
         + B[None, :, :] * np.sin(thetas)[:, None, None])
    return np.linalg.eigvalsh(H)[:, -1]


def grid_min_trig(A, B, npts=100001, refine=True):
    """Global minimum of lambda_max(A cos t + B sin t) by a dense grid with
    local golden-section polish."""
    ths = np.linspace(0.0, 2.0 * np.pi, npts)
    vals = lam_max_trig(A, B, ths)
    i = int(np.argmin(vals))
    if not refine:
        return float(ths[i]), float(vals[i])
    a = ths[max(i - 1, 0)]
    b = ths[min(i + 1, npts - 1)]
    w, v = golden_refine(lambda t: float(lam_max_trig(A, B, [t])[0]), a, b)
    if v <= vals[i]:
        return float(w), float(v)
    return float(ths[i]), float(vals[i])


def fit_order(errors, stride=1, floor=1e-15, last=None):
    """Convergence-order estimate from an error sequence.

    Each pair (e_k, e_{k+stride}) yields the estimate
    log(e_{k+stride}) / log(e_k), the exponent p in e_{k+stride} ~ e_k^p;
    the median over the usable pairs is returned.  ``stride=2`` measures
    the two-step contraction of alternating-side refinement schemes.
    Entries at or below ``floor`` (round-off) or >= 1 (pre-asymptotic) are
    discarded; ``last`` keeps only that many trailing entries.
    """
    e = [float(x) for x in errors if floor < x < 1.0]
    if last is not None:
        e = e[-last:]
    ratios = [math.log10(e[i + stride]) / math.log10(e[i])
              for i in range(len(e) - stride)]
    if not ratios:
        raise ValueError("no usable (e_k, e_{k+stride}) pairs")
    return float(np.median(ratios))


def random_hermitian(n, rng, real=False):
    X = rng.standard_normal((n, n))
    if not real:
        X = X + 1j * rng.standard_normal((n, n))
    return (X + X.conj().T) / 2.0


def random_trig_pair(n, rng, real=False):
    return random_hermitian(n, rng, real), random_hermitian(n, rng, real)
