"""Small dense two-phase simplex used by the feasibility subproblems.

Minimizes c @ x subject to A_ub @ x <= b_ub, A_eq @ x = b_eq, x >= 0.
Bland's pivot rule is used throughout (lowest eligible entering column,
lowest basic variable index on ratio ties), so the iteration cannot cycle
on degenerate vertices. Sized for problems with tens of rows; this is not
a general-purpose LP library.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_COST_TOL = 1e-9
_PIVOT_TOL = 1e-10
_FEAS_TOL = 1e-9
_RATIO_TIE = 1e-12
# A column whose reduced cost is below _COST_TOL but above this is float
# dust from earlier pivots; only a decisively negative cost with no pivot
# row proves an unbounded ray.
_UNBOUNDED_TOL = 1e-7


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    objective: float | None


def _pivot(tableau: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and tableau[r, col] != 0.0:
            tableau[r] -= tableau[r, col] * tableau[row]
    basis[row] = col


def _ratio_row(tableau: np.ndarray, basis: list[int], col: int) -> int:
    """Leaving row for the entering column, or -1 when no entry is positive.

    Minimum-ratio test with ties broken by the lowest basic variable index
    (the second half of Bland's rule).
    """
    m = tableau.shape[0] - 1
    last = tableau.shape[1] - 1
    leave = -1
    best = np.inf
    for i in range(m):
        aij = tableau[i, col]
        if aij > _PIVOT_TOL:
            ratio = tableau[i, last] / aij
            if ratio < best - _RATIO_TIE or (
                abs(ratio - best) <= _RATIO_TIE
                and leave >= 0
                and basis[i] < basis[leave]
            ):
                best = ratio
                leave = i
    return leave


def _iterate(tableau: np.ndarray, basis: list[int], max_iter: int) -> str:
    """Run simplex pivots until optimal or unbounded, with Bland's rule."""
    m = tableau.shape[0] - 1
    last = tableau.shape[1] - 1
    for _ in range(max_iter):
        pivoted = False
        for j in range(last):  # Bland: lowest improving column first
            if tableau[m, j] >= -_COST_TOL:
                continue
            leave = _ratio_row(tableau, basis, j)
            if leave >= 0:
                _pivot(tableau, basis, leave, j)
                pivoted = True
                break
            if tableau[m, j] < -_UNBOUNDED_TOL:
                return "unbounded"
            # else: cost is float dust; treat the column as non-improving
        if not pivoted:
            return "optimal"
    raise RuntimeError("simplex iteration limit exceeded")


def solve_lp(
    c,
    a_ub=None,
    b_ub=None,
    a_eq=None,
    b_eq=None,
    max_iter: int = 10_000,
) -> LPResult:
    """Two-phase dense simplex.

    Args:
        c: objective coefficients, length n (minimized).
        a_ub, b_ub: inequality rows A_ub @ x <= b_ub.
        a_eq, b_eq: equality rows A_eq @ x = b_eq.

    Returns:
        LPResult with status "optimal" (x and objective set), "infeasible",
        or "unbounded".
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    a_ub = np.zeros((0, n)) if a_ub is None else np.asarray(a_ub, dtype=float)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float)
    a_eq = np.zeros((0, n)) if a_eq is None else np.asarray(a_eq, dtype=float)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float)
    if a_ub.shape != (b_ub.size, n) or a_eq.shape != (b_eq.size, n):
        raise ValueError("constraint shapes do not match the objective length")

    m_ub, m_eq = b_ub.size, b_eq.size
    m = m_ub + m_eq
    ncols = n + m_ub  # structural + slack columns
    rows = np.zeros((m, ncols))
    rhs = np.zeros(m)
    rows[:m_ub, :n] = a_ub
    rows[:m_ub, n:] = np.eye(m_ub)
    rhs[:m_ub] = b_ub
    rows[m_ub:, :n] = a_eq
    rhs[m_ub:] = b_eq
    flip = rhs < 0
    rows[flip] *= -1.0
    rhs[flip] *= -1.0

    # phase 1: one artificial per row, minimize their sum
    tableau = np.zeros((m + 1, ncols + m + 1))
    tableau[:m, :ncols] = rows
    tableau[:m, ncols : ncols + m] = np.eye(m)
    tableau[:m, -1] = rhs
    basis = list(range(ncols, ncols + m))
    tableau[m, ncols : ncols + m] = 1.0
    for r in range(m):
        tableau[m] -= tableau[r]
    status = _iterate(tableau, basis, max_iter)
    if status != "optimal":
        raise RuntimeError(f"phase-1 simplex ended with status {status!r}")
    if -tableau[m, -1] > _FEAS_TOL:
        return LPResult("infeasible", None, None)

    # drive any artificial still basic (at level ~0) out of the basis
    for r in range(m):
        if basis[r] >= ncols:
            piv = next(
                (j for j in range(ncols) if abs(tableau[r, j]) > _PIVOT_TOL), None
            )
            if piv is not None:
                _pivot(tableau, basis, r, piv)

    keep = [r for r in range(m) if basis[r] < ncols]  # drop redundant rows
    basis2 = [basis[r] for r in keep]
    t2 = np.zeros((len(keep) + 1, ncols + 1))
    t2[: len(keep), :ncols] = tableau[keep, :ncols]
    t2[: len(keep), -1] = tableau[keep, -1]
    c_full = np.concatenate([c, np.zeros(m_ub)])
    t2[-1, :ncols] = c_full
    for r, bv in enumerate(basis2):
        t2[-1] -= c_full[bv] * t2[r]
    status = _iterate(t2, basis2, max_iter)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    x_full = np.zeros(ncols)
    for r, bv in enumerate(basis2):
        x_full[bv] = t2[r, -1]
    x = np.clip(x_full[:n], 0.0, None)
    return LPResult("optimal", x, float(c @ x))
