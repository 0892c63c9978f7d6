"""Bounded-variable primal simplex (two-phase, dense tableau).

Termination safeguards: Dantzig pricing with a permanent switch to Bland's
rule after 1000 degenerate pivots, plus a hard pivot cap that triggers a
from-scratch retry under Bland's rule before giving up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NumericalFailure
from . import kernel
from .core import LinearModel, SolveOutcome, Status, relative_gap

FEAS_TOL = 1e-7
PIVOT_TOL = 1e-9
DUAL_TOL = 1e-9
DEGENERATE_STEP = 1e-10
BLAND_AFTER = 1000
REFRESH_EVERY = 200
MAX_RETRIES = 2


@dataclass
class StandardForm:
    """min c'z s.t. A z = b, lb <= z <= ub; z = (structural, slacks)."""

    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    lb: np.ndarray
    ub: np.ndarray
    n_struct: int
    obj_sign: float  # +1 for min models, -1 for max (c already negated)


def standard_form(model: LinearModel, lb_override=None, ub_override=None) -> StandardForm:
    """Dense equality form with one slack per row; senses encoded in slack bounds."""
    model.validate()
    n = model.num_columns
    m = model.num_rows
    A = np.zeros((m, n + m))
    b = np.empty(m)
    lb = np.empty(n + m)
    ub = np.empty(n + m)
    for j, col in enumerate(model.columns):
        lb[j] = col.lower
        ub[j] = col.upper
    if lb_override is not None:
        lb[:n] = lb_override
    if ub_override is not None:
        ub[:n] = ub_override
    for i, row in enumerate(model.rows):
        for j, v in row.coeffs.items():
            A[i, j] = v
        b[i] = row.rhs
        s = n + i
        A[i, s] = 1.0
        if row.sense == "<=":
            lb[s], ub[s] = 0.0, np.inf
        elif row.sense == ">=":
            lb[s], ub[s] = -np.inf, 0.0
        else:
            lb[s], ub[s] = 0.0, 0.0
    c = np.zeros(n + m)
    sign = 1.0 if model.sense == "min" else -1.0
    c[:n] = sign * model.objective_vector()
    return StandardForm(A, b, c, lb, ub, n, sign)


class Simplex:
    """Solves one standard-form LP; instances are single-use."""

    def __init__(self, sf: StandardForm):
        self.sf = sf
        self.m, total = sf.A.shape
        self.n = total
        self.scale = 1.0 + (float(np.max(np.abs(sf.b))) if self.m else 0.0)
        self._force_bland = False
        self._basis = None
        self._art_signs = None

    def solve(self, want_duals=True):
        """Returns (status, x_structural, objective, duals, reduced_costs).

        status is one of "optimal", "infeasible", "unbounded".
        """
        for _attempt in range(MAX_RETRIES + 1):
            result = self._solve_once()
            if result is not None:
                status, x = result
                if status != "optimal":
                    return status, None, np.nan, None, None
                xs = x[: self.n]
                resid = np.max(np.abs(self.sf.A @ xs - self.sf.b)) if self.m else 0.0
                if resid <= FEAS_TOL * self.scale:
                    obj = float(self.sf.c @ xs)
                    y, d = self._duals() if want_duals else (None, None)
                    return "optimal", x[: self.sf.n_struct].copy(), obj, y, d
            self._force_bland = True
        raise NumericalFailure("simplex failed to produce a consistent solution")

    # -- internals ---------------------------------------------------------

    def _setup(self):
        sf = self.sf
        m, n = self.m, self.n
        x = np.zeros(n + m)  # structural+slack, then artificials
        status = np.empty(n + m, dtype=np.int64)
        for j in range(n):
            if np.isfinite(sf.lb[j]):
                status[j] = kernel.AT_LOWER
                x[j] = sf.lb[j]
            elif np.isfinite(sf.ub[j]):
                status[j] = kernel.AT_UPPER
                x[j] = sf.ub[j]
            else:
                status[j] = kernel.FREE
                x[j] = 0.0
        resid = sf.b - sf.A @ x[:n]
        art_sign = np.where(resid >= 0.0, 1.0, -1.0)
        self._art_signs = art_sign
        lb = np.concatenate([sf.lb, np.zeros(m)])
        ub = np.concatenate([sf.ub, np.full(m, np.inf)])
        # tableau holds [B^-1 A_full | B^-1 b]; initial basis = artificials.
        # The last column must be B^-1 b itself (not the basic values,
        # which also depend on nonbasic variables sitting at their bounds)
        # so that _refresh can recombine it with current nonbasic values.
        M = np.empty((m, n + m + 1))
        M[:, :n] = art_sign[:, None] * sf.A
        M[:, n:n + m] = np.eye(m)
        M[:, n + m] = art_sign * sf.b
        basis = np.arange(n, n + m, dtype=np.int64)
        status[n:] = kernel.BASIC
        xb = (art_sign * resid).copy()
        return M, basis, status, x, xb, lb, ub

    def _solve_once(self):
        sf = self.sf
        m, n = self.m, self.n
        M, basis, status, x, xb, lb, ub = self._setup()
        ntot = n + m

        c1 = np.zeros(ntot)
        c1[n:] = 1.0
        res = self._iterate(M, basis, status, x, xb, lb, ub, c1, phase=1)
        if res == "maxiter":
            return None
        x[basis] = xb
        if float(c1 @ np.abs(x)) > FEAS_TOL * self.scale * 10.0:
            return "infeasible", x
        # pin artificials at zero for phase 2
        lb[n:] = 0.0
        ub[n:] = 0.0
        for j in range(n, ntot):
            if status[j] != kernel.BASIC:
                status[j] = kernel.AT_LOWER
                x[j] = 0.0

        c2 = np.zeros(ntot)
        c2[:n] = sf.c
        res = self._iterate(M, basis, status, x, xb, lb, ub, c2, phase=2)
        if res == "maxiter":
            return None
        if res == "unbounded":
            return "unbounded", x
        x[basis] = xb
        np.clip(x[:n], sf.lb - FEAS_TOL, sf.ub + FEAS_TOL, out=x[:n])
        self._basis = basis.copy()
        return "optimal", x

    def _iterate(self, M, basis, status, x, xb, lb, ub, c, phase):
        ntot = self.n + self.m
        bland = self._force_bland
        degenerate = 0
        maxiter = 20000 + 200 * ntot
        for it in range(maxiter):
            d = c - c[basis] @ M[:, :ntot]
            d[basis] = 0.0
            j = kernel.choose_entering(d, status, DUAL_TOL, bland)
            if j < 0:
                return "optimal"
            at_lower = status[j] == kernel.AT_LOWER or \
                (status[j] == kernel.FREE and d[j] < 0.0)
            direction = 1.0 if at_lower else -1.0
            col = np.ascontiguousarray(M[:, j])
            t_basic, r = kernel.ratio_test(col, xb, lb[basis], ub[basis],
                                           direction, PIVOT_TOL)
            gap = ub[j] - lb[j]
            if gap <= t_basic:
                if not np.isfinite(gap):
                    return "unbounded" if phase == 2 else "infeasible"
                # bound flip, basis unchanged
                x[j] = ub[j] if direction > 0 else lb[j]
                status[j] = kernel.AT_UPPER if direction > 0 else kernel.AT_LOWER
                xb -= direction * gap * col
                step = gap
            else:
                if r < 0:
                    return "unbounded" if phase == 2 else "infeasible"
                step = max(t_basic, 0.0)
                xb -= direction * step * col
                leaving = basis[r]
                hits_lower = -direction * col[r] < 0.0
                x[leaving] = lb[leaving] if hits_lower else ub[leaving]
                status[leaving] = kernel.AT_LOWER if hits_lower else kernel.AT_UPPER
                enter_val = (x[j] if status[j] != kernel.FREE else 0.0) + direction * step
                basis[r] = j
                status[j] = kernel.BASIC
                kernel.do_pivot(M, r, j)
                xb[r] = enter_val
            if step <= DEGENERATE_STEP:
                degenerate += 1
                if degenerate > BLAND_AFTER:
                    bland = True
            if (it + 1) % REFRESH_EVERY == 0:
                self._refresh(M, status, x, xb)
        return "maxiter"

    def _refresh(self, M, status, x, xb):
        """Recompute basic values from the tableau to limit drift."""
        ntot = self.n + self.m
        nb = np.where(status != kernel.BASIC)[0]
        nz = nb[x[nb] != 0.0]
        xb[:] = M[:, ntot]
        if nz.size:
            xb -= M[:, nz] @ x[nz]

    def _duals(self):
        sf = self.sf
        if self.m == 0:
            return np.zeros(0), sf.c.copy()
        cols = []
        cb = []
        for j in self._basis:
            if j < self.n:
                cols.append(sf.A[:, j])
                cb.append(sf.c[j])
            else:  # artificial still basic (degenerate at zero)
                e = np.zeros(self.m)
                e[j - self.n] = self._art_signs[j - self.n]
                cols.append(e)
                cb.append(0.0)
        B = np.column_stack(cols)
        try:
            y = np.linalg.solve(B.T, np.array(cb))
        except np.linalg.LinAlgError:
            # near-singular (heavily degenerate) basis; least squares still
            # yields usable multipliers
            y = np.linalg.lstsq(B.T, np.array(cb), rcond=None)[0]
        return y, sf.c - y @ sf.A


def solve_standard_form(sf: StandardForm):
    return Simplex(sf).solve()


def solve_lp(model: LinearModel) -> SolveOutcome:
    """Solve the LP relaxation of ``model`` (integrality marks ignored)."""
    sf = standard_form(model)
    status, x, obj, y, d = solve_standard_form(sf)
    if status == "infeasible":
        return SolveOutcome(Status.INFEASIBLE)
    if status == "unbounded":
        return SolveOutcome(Status.UNBOUNDED)
    value = sf.obj_sign * obj
    return SolveOutcome(
        Status.OPTIMAL,
        incumbent=x,
        incumbent_value=value,
        best_bound=value,
        rel_gap_achieved=relative_gap(value, value),
        duals=None if y is None else sf.obj_sign * y,
        reduced_costs=None if d is None else sf.obj_sign * d[: sf.n_struct],
    )
