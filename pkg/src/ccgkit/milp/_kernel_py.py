"""Pure-numpy simplex pivot kernel.

Semantics must stay in lockstep with the compiled kernel in ``_kernel.pyx``:
both pick the *first* index attaining the extremum, and both perform the
same floating-point operations element by element, so a solve is
bit-identical regardless of which kernel is active.
"""

import numpy as np

BASIC = 0
AT_LOWER = 1
AT_UPPER = 2
FREE = 3

COMPILED = False


def choose_entering(d, status, tol, bland):
    """Index of the entering column, or -1 if none is eligible.

    Eligible: nonbasic-at-lower or free with d < -tol, nonbasic-at-upper or
    free with d > tol. Dantzig rule (largest |d|) unless bland is set.
    """
    elig = (((status == AT_LOWER) | (status == FREE)) & (d < -tol)) | \
           (((status == AT_UPPER) | (status == FREE)) & (d > tol))
    if not elig.any():
        return -1
    if bland:
        return int(np.argmax(elig))
    score = np.where(elig, np.abs(d), -1.0)
    return int(np.argmax(score))


def ratio_test(col, xb, lb, ub, direction, tol):
    """Max step for the entering variable before a basic bound is hit.

    Returns (t, r): r is the blocking basic position (first index attaining
    the minimum ratio) or -1 if no basic variable blocks (t = inf).
    """
    delta = -direction * col
    with np.errstate(divide="ignore", invalid="ignore"):
        tl = np.where(delta < -tol, (xb - lb) / (-delta), np.inf)
        tu = np.where(delta > tol, (ub - xb) / delta, np.inf)
    ratios = np.minimum(tl, tu)
    r = int(np.argmin(ratios))
    t = float(ratios[r])
    if not np.isfinite(t):
        return np.inf, -1
    return t, r


def do_pivot(M, r, j):
    """Row-reduce the tableau so column j becomes the r-th unit vector."""
    piv = M[r, j]
    M[r, :] = M[r, :] / piv
    col = M[:, j].copy()
    col[r] = 0.0
    M -= np.outer(col, M[r, :])
    # kill residual round-off in the pivot column
    M[:, j] = 0.0
    M[r, j] = 1.0
