"""Level-set global minimization of lambda_max(H(theta)) on the circle.

Starting from an upper estimate of the minimum, each iteration extracts the
full level set of the current estimate through a structured 2n x 2n pencil,
classifies the gaps between consecutive crossings as sub-level or not by a
midpoint evaluation, and re-estimates at the midpoints of the maximal
sub-level intervals.  The estimate sequence decreases monotonically to the
global minimum; the longest sub-level interval at least halves per
iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyLevelSet
from .kernels import pencil_unit_eigs
from .param import ParamHermitian, clarke_interval
from .results import MinResult, Status

TWO_PI = 2.0 * np.pi
FILTER_TOL_DEFAULT = 1e-7
TOL_DEFAULT = 1e-12
MAX_ITER_DEFAULT = 200
# When every sub-level gap is shorter than this fraction of the circle the
# level set has collapsed to the attainable minimum.
COLLAPSE_TOL = 1e-14


@dataclass(frozen=True)
class CircularInterval:
    """Open interval on [0, 2*pi), possibly wrapping through 2*pi."""

    lo: float
    hi: float
    wraps: bool = False

    @property
    def midpoint(self) -> float:
        if not self.wraps:
            return 0.5 * (self.lo + self.hi)
        return (0.5 * (self.lo + self.hi + TWO_PI)) % TWO_PI

    @property
    def length(self) -> float:
        if not self.wraps:
            return self.hi - self.lo
        return (TWO_PI - self.lo) + self.hi


@dataclass
class LevelSetTrace:
    """Estimate sequence with per-iteration interval statistics."""

    estimates: list = field(default_factory=list)
    intervals_per_iter: list = field(default_factory=list)
    max_lengths: list = field(default_factory=list)


def _lam_max(C, theta):
    H = (C * np.exp(-1j * theta) + C.conj().T * np.exp(1j * theta)) / 2.0
    return float(np.linalg.eigvalsh(H)[-1])


def level_intervals(C: np.ndarray, alpha: float,
                    filter_tol: float = FILTER_TOL_DEFAULT):
    """Maximal open intervals where lambda_max(H(theta)) < alpha.

    Candidate crossings come from the level pencil; only angles where alpha
    really is the largest eigenvalue survive.  Gaps between consecutive
    surviving angles are classified by the sign of f(midpoint) - alpha and
    merged into maximal circular intervals.
    """
    C = np.asarray(C, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(C, 2)))
    cand = pencil_unit_eigs(C, alpha)
    kept = [t for t in cand if abs(_lam_max(C, t) - alpha) <= filter_tol * scale]
    if not kept:
        raise EmptyLevelSet(
            f"no level crossings at {alpha!r} survived filtering")
    ang = np.sort(np.asarray(kept))
    m = len(ang)
    # circular gaps: (ang[i], ang[i+1]) and the wrap gap (ang[-1], ang[0]+2pi)
    sub = []
    for i in range(m):
        lo = ang[i]
        hi = ang[(i + 1) % m] + (TWO_PI if i == m - 1 else 0.0)
        mid = (0.5 * (lo + hi)) % TWO_PI
        sub.append(_lam_max(C, mid) < alpha)
    if not any(sub):
        raise EmptyLevelSet(
            f"no sub-level gap at {alpha!r} (level at or below the minimum)")
    if all(sub):
        # whole circle below the level except the touch points
        return [CircularInterval(lo=float(ang[0]), hi=float(ang[0]), wraps=True)]
    intervals = []
    # walk runs of consecutive sub-level gaps, starting after a non-sub gap
    start = next(i for i in range(m) if not sub[i])
    i = (start + 1) % m
    run_lo = None
    for _ in range(m):
        if sub[i] and run_lo is None:
            run_lo = ang[i]
        nxt = (i + 1) % m
        if run_lo is not None and not sub[nxt]:
            hi = ang[nxt]
            intervals.append(CircularInterval(lo=float(run_lo), hi=float(hi),
                                              wraps=bool(hi <= run_lo)))
            run_lo = None
        i = nxt
    if run_lo is not None:
        hi = ang[(start + 1) % m] if sub[start] else ang[start]
        # unreachable by construction (runs close before revisiting start)
        intervals.append(CircularInterval(lo=float(run_lo), hi=float(hi),
                                          wraps=bool(hi <= run_lo)))
    intervals.sort(key=lambda iv: iv.lo)
    return intervals


def levelset_minimize(C: np.ndarray, tol: float = TOL_DEFAULT,
                      max_iter: int = MAX_ITER_DEFAULT,
                      filter_tol: float = FILTER_TOL_DEFAULT):
    """Globally minimize lambda_max(H(theta)) for a dense square C.

    Returns ``(MinResult, LevelSetTrace)``.  Termination is on relative
    decrease of the estimate below ``tol``, or on the level set vanishing or
    collapsing below angle resolution.
    """
    C = np.asarray(C, dtype=complex)
    trace = LevelSetTrace()
    r = _lam_max(C, 0.0)
    omega_star = 0.0
    trace.estimates.append(r)
    status = Status.MAX_ITERATIONS
    note = ""
    for _ in range(max_iter):
        try:
            intervals = level_intervals(C, r, filter_tol)
        except EmptyLevelSet:
            status = Status.CONVERGED
            note = "level set vanished"
            break
        trace.intervals_per_iter.append(len(intervals))
        trace.max_lengths.append(max(iv.length for iv in intervals))
        if all(iv.length < COLLAPSE_TOL * TWO_PI for iv in intervals):
            status = Status.CONVERGED
            note = "level set collapsed below angle resolution"
            break
        mids = [iv.midpoint for iv in intervals]
        vals = [_lam_max(C, t) for t in mids]
        j = int(np.argmin(vals))
        r_new, omega_new = vals[j], mids[j]
        trace.estimates.append(r_new)
        if r_new < r:
            omega_star = float(omega_new)
        if r - r_new <= tol * max(1.0, abs(r_new)):
            r = min(r, r_new)
            status = Status.CONVERGED
            break
        r = min(r, r_new)

    A = (C + C.conj().T) / 2.0
    B = -1j * (C - C.conj().T) / 2.0
    P = ParamHermitian.trig(A, B)
    result = MinResult(omega_star=omega_star, f_star=float(r),
                       lower_bound=-np.inf, iterations=len(trace.estimates),
                       trace=[(k, None, rk, -np.inf)
                              for k, rk in enumerate(trace.estimates, start=1)],
                       clarke=clarke_interval(P, omega_star), status=status,
                       note=note)
    return result, trace
