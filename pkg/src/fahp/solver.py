"""Preference-programming solver for fuzzy pairwise comparison blocks.

Finds the crisp weight vector whose ratios satisfy every fuzzy judgment to
the highest common membership degree lambda. Each judgment (l, m, u) on the
pair (row, col) contributes two linear constraints at a given lambda:

    ((m - l) * lambda + l) * w_col - w_row <= 0
    ((u - m) * lambda - u) * w_col + w_row <= 0

Both constraint families tighten monotonically as lambda grows, so the
optimum is found by bisection on lambda with an exact max-slack feasibility
program solved at every probe. lambda >= 0 certifies that some weight vector
lies inside every judgment's support; negative lambda measures how strongly
the judgments contradict each other. lambda is capped at 1: beyond full
membership there is nothing left to optimize.

A brute-force grid oracle over the simplex lattice is included as an
independent check on the optimizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import InfeasibleJudgmentsError, ValidationError
from .fuzzy import membership
from .hierarchy import ComparisonMatrix, validate_matrix
from .simplex import solve_lp

# Slack this close to zero still counts as feasible; absorbs LP float noise.
_SLACK_FEAS_TOL = 1e-11
# Relative tolerance for hard (zero-spread) judgment sides in the oracle.
_HARD_REL_TOL = 1e-9

#: Documented agreement tolerances between solve_fpp and oracle_solve on
#: matrices whose judgment spreads are wide relative to the grid step.
ORACLE_LAMBDA_TOL = 0.03
ORACLE_WEIGHT_TOL = 0.03
ORACLE_MAX_ITEMS = 4
_ORACLE_MAX_POINTS = 20_000_000


@dataclass(frozen=True)
class SolverConfig:
    """Search window and tolerances for the bisection solver."""

    lambda_lo: float = -10.0
    lambda_cap: float = 1.0
    bisection_tol: float = 1e-6
    weight_floor: float = 1e-6

    def __post_init__(self):
        if not self.lambda_lo < self.lambda_cap:
            raise ValueError("lambda_lo must be below lambda_cap")
        if not self.bisection_tol > 0:
            raise ValueError("bisection_tol must be positive")
        if not self.weight_floor > 0:
            raise ValueError("weight_floor must be positive")


@dataclass(frozen=True)
class SolveResult:
    """Weights and diagnostics for one comparison block.

    ``slack`` is the max-slack objective at the returned lambda; a clearly
    positive slack means the weight vector is not pinned down uniquely at
    that lambda. The oracle leaves it as None.
    """

    weights: dict[str, float]
    lambda_: float
    consistent: bool
    iterations: int
    clamped: bool
    slack: float | None = None

    def weight_vector(self) -> np.ndarray:
        return np.array(list(self.weights.values()))


def _index(matrix: ComparisonMatrix) -> dict[str, int]:
    return {item: i for i, item in enumerate(matrix.items)}


def _judgment_rows(
    matrix: ComparisonMatrix, lam: float
) -> list[tuple[np.ndarray, tuple[str, str]]]:
    """Constraint rows a @ w <= 0 for all judgments at a fixed lambda."""
    idx = _index(matrix)
    n = len(matrix.items)
    rows = []
    for j in matrix.judgments:
        r, c = idx[j.row], idx[j.col]
        l, m, u = j.value.as_tuple()
        lower = np.zeros(n)
        lower[c] = (m - l) * lam + l
        lower[r] = -1.0
        rows.append((lower, (j.row, j.col)))
        upper = np.zeros(n)
        upper[c] = (u - m) * lam - u
        upper[r] = 1.0
        rows.append((upper, (j.row, j.col)))
    return rows


def _check_floor(matrix: ComparisonMatrix, config: SolverConfig) -> None:
    if len(matrix.items) * config.weight_floor >= 1.0:
        raise ValueError(
            f"weight_floor {config.weight_floor} is too large for "
            f"{len(matrix.items)} items"
        )


def _max_slack(
    matrix: ComparisonMatrix, lam: float, config: SolverConfig
) -> tuple[float, np.ndarray]:
    """Best uniform slack t and its weight vector at a fixed lambda.

    Solves max t subject to a_k @ w + t <= 0 for every judgment row,
    sum w = 1, w >= weight_floor. t >= 0 exactly when lambda is feasible.
    """
    n = len(matrix.items)
    eps = config.weight_floor
    rows = _judgment_rows(matrix, lam)
    k = len(rows)
    # variables: v = w - eps (n), then t = tp - tn split into nonnegatives
    a_ub = np.zeros((k, n + 2))
    b_ub = np.zeros(k)
    for i, (a, _) in enumerate(rows):
        a_ub[i, :n] = a
        a_ub[i, n] = 1.0
        a_ub[i, n + 1] = -1.0
        b_ub[i] = -eps * a.sum()
    a_eq = np.zeros((1, n + 2))
    a_eq[0, :n] = 1.0
    b_eq = np.array([1.0 - n * eps])
    c = np.zeros(n + 2)
    c[n] = -1.0
    c[n + 1] = 1.0
    res = solve_lp(c, a_ub, b_ub, a_eq, b_eq)
    if res.status != "optimal":
        raise RuntimeError(
            f"max-slack subproblem unexpectedly {res.status} at lambda={lam}"
        )
    t = float(res.x[n] - res.x[n + 1])
    w = res.x[:n] + eps
    w = w / w.sum()
    return t, w


def _as_vector(matrix: ComparisonMatrix, w) -> np.ndarray:
    if isinstance(w, Mapping):
        missing = [it for it in matrix.items if it not in w]
        if missing:
            raise ValueError(f"weights missing for items: {', '.join(missing)}")
        vec = np.array([float(w[it]) for it in matrix.items])
    else:
        vec = np.asarray(w, dtype=float)
        if vec.shape != (len(matrix.items),):
            raise ValueError(
                f"weight vector has shape {vec.shape}, expected ({len(matrix.items)},)"
            )
    if not np.all(vec > 0):
        raise ValueError("weights must be strictly positive")
    if abs(vec.sum() - 1.0) > 1e-6:
        raise ValueError(f"weights must sum to 1, got {vec.sum()!r}")
    return vec


def lambda_at(matrix: ComparisonMatrix, w) -> float:
    """Lowest membership any judgment assigns to the weight vector w.

    Accepts a mapping item -> weight or a sequence aligned with
    matrix.items. This is the objective the solver maximizes, so for any
    solved block lambda_at(matrix, result.weights) >= result.lambda_ up to
    the bisection tolerance.
    """
    validate_matrix(matrix)
    vec = _as_vector(matrix, w)
    idx = _index(matrix)
    worst = float("inf")
    for j in matrix.judgments:
        ratio = vec[idx[j.row]] / vec[idx[j.col]]
        worst = min(worst, membership(j.value, ratio))
    return min(worst, 1.0)


def feasible_at(
    matrix: ComparisonMatrix, lam: float, config: SolverConfig | None = None
) -> dict[str, float] | None:
    """A strictly positive weight vector meeting every judgment at level lam,
    or None when that level is unattainable.

    The vector returned is the max-slack one, i.e. the deepest interior
    point of the feasible region at that lambda.
    """
    cfg = config or SolverConfig()
    validate_matrix(matrix)
    _check_floor(matrix, cfg)
    t, w = _max_slack(matrix, lam, cfg)
    if t < -_SLACK_FEAS_TOL:
        return None
    return dict(zip(matrix.items, (float(x) for x in w)))


def _violated_pairs(
    matrix: ComparisonMatrix, lam: float, w: np.ndarray
) -> list[tuple[str, str]]:
    pairs: list[tuple[str, str]] = []
    for a, pair in _judgment_rows(matrix, lam):
        if float(a @ w) > _SLACK_FEAS_TOL and pair not in pairs:
            pairs.append(pair)
    return pairs


def solve_fpp(
    matrix: ComparisonMatrix, config: SolverConfig | None = None
) -> SolveResult:
    """Maximize the common membership level lambda over the weight simplex.

    Probes lambda_cap first (consistent blocks short-circuit there), then
    bisects between lambda_lo and lambda_cap keeping the lower end feasible.
    Raises InfeasibleJudgmentsError, naming the conflicting pairs, if the
    judgments cannot be met even at lambda_lo.
    """
    cfg = config or SolverConfig()
    validate_matrix(matrix)
    _check_floor(matrix, cfg)
    probes = 0
    t_cap, w_cap = _max_slack(matrix, cfg.lambda_cap, cfg)
    probes += 1
    if t_cap >= -_SLACK_FEAS_TOL:
        lam, w, slack = cfg.lambda_cap, w_cap, t_cap
        clamped = True
    else:
        t_lo, w_lo = _max_slack(matrix, cfg.lambda_lo, cfg)
        probes += 1
        if t_lo < -_SLACK_FEAS_TOL:
            pairs = _violated_pairs(matrix, cfg.lambda_lo, w_lo)
            listing = ", ".join(f"({r}, {c})" for r, c in pairs) or "unknown"
            raise InfeasibleJudgmentsError(
                f"matrix {matrix.parent!r}: no weight vector meets the judgments "
                f"even at lambda = {cfg.lambda_lo}; violated pairs: {listing}",
                pairs=pairs,
            )
        lo, hi = cfg.lambda_lo, cfg.lambda_cap
        w, slack = w_lo, t_lo
        while hi - lo > cfg.bisection_tol:
            mid = 0.5 * (lo + hi)
            t_mid, w_mid = _max_slack(matrix, mid, cfg)
            probes += 1
            if t_mid >= -_SLACK_FEAS_TOL:
                lo, w, slack = mid, w_mid, t_mid
            else:
                hi = mid
        lam = lo
        clamped = (cfg.lambda_cap - lam) <= cfg.bisection_tol
    weights = dict(zip(matrix.items, (float(x) for x in w)))
    return SolveResult(
        weights=weights,
        lambda_=float(lam),
        consistent=lam >= 0.0,
        iterations=probes,
        clamped=clamped,
        slack=float(slack),
    )


def _lattice(n: int, units: int) -> np.ndarray:
    """All integer vectors of length n with positive entries summing to units."""
    if units < n:
        raise ValueError("grid step too coarse: fewer lattice units than items")
    if n == 2:
        k1 = np.arange(1, units, dtype=np.int64)
        return np.stack([k1, units - k1], axis=1)
    blocks = []
    if n == 3:
        for k1 in range(1, units - 1):
            k2 = np.arange(1, units - k1, dtype=np.int64)
            block = np.empty((k2.size, 3), dtype=np.int64)
            block[:, 0] = k1
            block[:, 1] = k2
            block[:, 2] = units - k1 - k2
            blocks.append(block)
    elif n == 4:
        for k1 in range(1, units - 2):
            for k2 in range(1, units - 1 - k1):
                k3 = np.arange(1, units - k1 - k2, dtype=np.int64)
                block = np.empty((k3.size, 4), dtype=np.int64)
                block[:, 0] = k1
                block[:, 1] = k2
                block[:, 2] = k3
                block[:, 3] = units - k1 - k2 - k3
                blocks.append(block)
    else:
        raise ValueError(f"lattice enumeration not supported for n = {n}")
    return np.concatenate(blocks, axis=0)


def _lattice_size(n: int, units: int) -> int:
    from math import comb

    return comb(units - 1, n - 1)


def oracle_solve(matrix: ComparisonMatrix, grid_step: float) -> SolveResult:
    """Exhaustive simplex-lattice search, an independent check on solve_fpp.

    Evaluates lambda_at on every weight vector (k_1, ..., k_n) / N with
    integer k_i >= 1 and N = round(1 / grid_step), and returns the best
    point. Refuses blocks with more than four items; the lattice grows
    combinatorially.

    Hard (zero-spread) judgment sides rarely hit a lattice point exactly;
    among points violating some hard side, the one with the smallest worst
    relative violation is preferred, so exactly-consistent crisp blocks are
    still localized correctly. Its lambda is reported as -inf.
    """
    validate_matrix(matrix)
    n = len(matrix.items)
    if n > ORACLE_MAX_ITEMS:
        raise ValueError(
            f"oracle refuses {n} items; lattice enumeration is limited to "
            f"{ORACLE_MAX_ITEMS}"
        )
    if not (1e-3 <= grid_step <= 0.05):
        raise ValueError(f"grid_step must lie in [0.001, 0.05], got {grid_step}")
    units = round(1.0 / grid_step)
    if _lattice_size(n, units) > _ORACLE_MAX_POINTS:
        raise ValueError(
            f"grid step {grid_step} yields too many lattice points for n = {n}; "
            "use a coarser step"
        )
    lattice = _lattice(n, units)
    weights = lattice.astype(float) / units
    idx = _index(matrix)
    lam = np.full(weights.shape[0], np.inf)
    hard_violation = np.zeros(weights.shape[0])
    for j in matrix.judgments:
        ratio = weights[:, idx[j.row]] / weights[:, idx[j.col]]
        l, m, u = j.value.as_tuple()
        if m > l:
            lam = np.minimum(lam, (ratio - l) / (m - l))
        else:
            hard_violation = np.maximum(hard_violation, (l - ratio) / l)
        if u > m:
            lam = np.minimum(lam, (u - ratio) / (u - m))
        else:
            hard_violation = np.maximum(hard_violation, (ratio - u) / u)
    hard_ok = hard_violation <= _HARD_REL_TOL
    if hard_ok.any():
        scored = np.where(hard_ok, np.minimum(lam, 1.0), -np.inf)
        best = int(np.argmax(scored))
        best_lambda = float(scored[best])
    else:
        best = int(np.argmin(hard_violation))
        best_lambda = float("-inf")
    w = weights[best]
    return SolveResult(
        weights=dict(zip(matrix.items, (float(x) for x in w))),
        lambda_=best_lambda,
        consistent=best_lambda >= 0.0,
        iterations=int(weights.shape[0]),
        clamped=best_lambda >= 1.0 - 1e-12,
        slack=None,
    )
