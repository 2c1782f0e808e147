"""Dense linear programming: two-phase primal simplex with Bland's rule.

Bland's rule is slower than steepest-edge pivoting but cannot cycle and
pivots in a fixed, reproducible order; the LPs solved here (successive
linearization steps of the concave-minimization selector) are small.
"""

from dataclasses import dataclass

import numpy as np

from ..core import DataError, NumericalError

_EPS = 1e-9
_FEAS_TOL = 1e-8
_MAX_PIVOTS = 200000


@dataclass(frozen=True)
class LPProblem:
    """minimize c.x  subject to  A_ub.x <= b_ub  and per-variable bounds.

    ``bounds`` is a list of (lo, hi) pairs; lo may be -inf and hi +inf.
    """

    c: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    bounds: tuple

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64)
        a = np.asarray(self.a_ub, dtype=np.float64)
        b = np.asarray(self.b_ub, dtype=np.float64)
        if a.ndim != 2 or c.ndim != 1 or b.ndim != 1:
            raise DataError("LPProblem: c and b_ub must be vectors, A_ub a matrix")
        if a.shape != (b.shape[0], c.shape[0]):
            raise DataError("LPProblem: A_ub shape %s inconsistent with c (%d) and b_ub (%d)"
                            % (a.shape, c.shape[0], b.shape[0]))
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if len(bounds) != c.shape[0]:
            raise DataError("LPProblem: one (lo, hi) pair per variable required")
        for lo, hi in bounds:
            if lo > hi:
                raise DataError("LPProblem: lo > hi in bounds")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a_ub", a)
        object.__setattr__(self, "b_ub", b)
        object.__setattr__(self, "bounds", bounds)


@dataclass(frozen=True)
class LPSolution:
    """status is 'optimal', 'infeasible' or 'unbounded'; x and objective are
    meaningful only when optimal."""

    status: str
    x: np.ndarray | None
    objective: float


def _to_standard_form(p):
    """Rewrite as min c.z, A z <= b, z >= 0.

    Finite lower bounds are shifted out, (-inf, hi] variables mirrored, and
    free variables split into positive/negative parts.  Returns the standard
    form pieces plus a recipe to map a standard z back to the original x.
    """
    n = p.c.shape[0]
    cols = []          # per original variable: (kind, column index/es, offset)
    c_parts = []
    a_cols = []
    extra_rows = []    # (col_index, ub) upper-bound rows added after shifting
    for j in range(n):
        lo, hi = p.bounds[j]
        aj = p.a_ub[:, j]
        if np.isfinite(lo):
            idx = len(c_parts)
            c_parts.append(p.c[j])
            a_cols.append(aj)
            cols.append(("shift", idx, lo))
            if np.isfinite(hi):
                extra_rows.append((idx, hi - lo))
        elif np.isfinite(hi):
            idx = len(c_parts)
            c_parts.append(-p.c[j])
            a_cols.append(-aj)
            cols.append(("mirror", idx, hi))
        else:
            idx = len(c_parts)
            c_parts.append(p.c[j])
            c_parts.append(-p.c[j])
            a_cols.append(aj)
            a_cols.append(-aj)
            cols.append(("split", idx, 0.0))
    a_std = np.column_stack(a_cols) if a_cols else np.zeros((p.a_ub.shape[0], 0))
    # b adjusted for the substitutions x = lo + u and x = hi - u.
    b_std = p.b_ub.copy()
    for j, (kind, idx, off) in enumerate(cols):
        if kind == "shift" and off != 0.0:
            b_std -= p.a_ub[:, j] * off
        elif kind == "mirror":
            b_std -= p.a_ub[:, j] * off
    if extra_rows:
        rows = np.zeros((len(extra_rows), a_std.shape[1]))
        rhs = np.zeros(len(extra_rows))
        for i, (idx, ub) in enumerate(extra_rows):
            rows[i, idx] = 1.0
            rhs[i] = ub
        a_std = np.vstack([a_std, rows])
        b_std = np.concatenate([b_std, rhs])
    return np.asarray(c_parts), a_std, b_std, cols


def _recover(z, cols, n):
    x = np.zeros(n)
    for j, (kind, idx, off) in enumerate(cols):
        if kind == "shift":
            x[j] = off + z[idx]
        elif kind == "mirror":
            x[j] = off - z[idx]
        else:
            x[j] = z[idx] - z[idx + 1]
    return x


def _simplex(tableau, basis, cost_row, n_cols):
    """Bland-rule primal simplex on an equality tableau.

    ``tableau`` is (m, n_cols+1) with the rhs in the last column and b >= 0
    maintained throughout; ``cost_row`` has the reduced costs and (negated)
    objective in its last entry.  Mutates in place; returns 'optimal' or
    'unbounded'.
    """
    m = tableau.shape[0]
    for _ in range(_MAX_PIVOTS):
        enter = -1
        for j in range(n_cols):
            if cost_row[j] < -_EPS:
                enter = j
                break
        if enter < 0:
            return "optimal"
        col = tableau[:, enter]
        best_ratio = None
        leave = -1
        for i in range(m):
            if col[i] > _EPS:
                ratio = tableau[i, -1] / col[i]
                if (best_ratio is None or ratio < best_ratio - _EPS
                        or (abs(ratio - best_ratio) <= _EPS and basis[leave] > basis[i])):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        piv = tableau[leave, enter]
        tableau[leave, :] /= piv
        for i in range(m):
            if i != leave and tableau[i, enter] != 0.0:
                tableau[i, :] -= tableau[i, enter] * tableau[leave, :]
        if cost_row[enter] != 0.0:
            cost_row[:] -= cost_row[enter] * tableau[leave, :]
        basis[leave] = enter
    raise NumericalError("simplex exceeded the pivot limit")


def solve_lp(p):
    """Solve an LPProblem; returns statuses instead of raising.

    Optimal solutions satisfy the constraints and bounds to 1e-8.
    """
    n = p.c.shape[0]
    c_std, a_std, b_std, cols = _to_standard_form(p)
    m, ns = a_std.shape

    # Slack per row; rows with negative rhs are negated and get artificials.
    a_eq = np.hstack([a_std, np.eye(m)])
    b = b_std.copy()
    neg = b < 0
    a_eq[neg, :] *= -1.0
    b[neg] *= -1.0
    art_rows = np.nonzero(neg)[0]
    n_art = art_rows.shape[0]
    n_total = ns + m + n_art
    tableau = np.zeros((m, n_total + 1))
    tableau[:, :ns + m] = a_eq
    tableau[:, -1] = b
    basis = np.empty(m, dtype=np.int64)
    for i in range(m):
        basis[i] = ns + i
    for k, i in enumerate(art_rows):
        tableau[i, ns + m + k] = 1.0
        basis[i] = ns + m + k

    if n_art:
        # Phase 1: minimize the artificial sum.
        cost = np.zeros(n_total + 1)
        cost[ns + m:ns + m + n_art] = 1.0
        for i in art_rows:
            cost -= tableau[i, :]
        status = _simplex(tableau, basis, cost, n_total)
        if status != "optimal" or -cost[-1] > 1e-7:
            return LPSolution(status="infeasible", x=None, objective=np.nan)
        # Pivot leftover artificials out of the basis (degenerate rows).
        for i in range(m):
            if basis[i] >= ns + m:
                enter = -1
                for j in range(ns + m):
                    if abs(tableau[i, j]) > _EPS:
                        enter = j
                        break
                if enter < 0:
                    continue  # redundant zero row, harmless
                piv = tableau[i, enter]
                tableau[i, :] /= piv
                for r in range(m):
                    if r != i and tableau[r, enter] != 0.0:
                        tableau[r, :] -= tableau[r, enter] * tableau[i, :]
                basis[i] = enter
        tableau = np.delete(tableau, np.s_[ns + m:ns + m + n_art], axis=1)
        n_total = ns + m

    # Phase 2 on the real objective.
    cost = np.zeros(n_total + 1)
    cost[:ns] = c_std
    for i in range(m):
        if basis[i] < n_total and cost[basis[i]] != 0.0:
            cost -= cost[basis[i]] * tableau[i, :]
    status = _simplex(tableau, basis, cost, n_total)
    if status == "unbounded":
        return LPSolution(status="unbounded", x=None, objective=np.nan)

    z = np.zeros(n_total)
    for i in range(m):
        if basis[i] < n_total:
            z[basis[i]] = tableau[i, -1]
    x = _recover(z, cols, n)
    resid = p.a_ub @ x - p.b_ub
    if resid.size and resid.max() > _FEAS_TOL:
        raise NumericalError("simplex returned an infeasible point (resid %.3g)"
                             % resid.max())
    return LPSolution(status="optimal", x=x, objective=float(p.c @ x))
