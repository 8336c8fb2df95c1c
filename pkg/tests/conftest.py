"""Shared fixtures and random-instance generators for the test suite."""

import string

import numpy as np
import pytest

from fahp import TFN, ComparisonJudgment, ComparisonMatrix

# Population knobs for the random comparison matrices used by the
# equivalence and invariant suites.  The goal is a population that is
# genuinely varied (consistent and inconsistent blocks, lambda both
# positive and negative) while staying inside the resolution of the
# exhaustive reference search used to cross-check the solver.
_MAX_RATIO = {2: 2.4, 3: 3.0}
_SPREAD_LO, _SPREAD_HI = 0.75, 0.95
_MODE_NOISE = 0.05
_MODE_RANGE = 2.2


def _random_matrix_small(rng, n, parent):
    """n in {2, 3}: half near-consistent, half independently drawn modes.

    The reference grid at step 0.005 resolves ratios between weights of
    this size to well under a percent, so unconstrained mode draws stay
    comparable against the exhaustive search.
    """
    items = tuple(string.ascii_lowercase[:n])
    pairs = [(items[j], items[i]) for i in range(n) for j in range(i + 1, n)]
    near_consistent = bool(rng.integers(0, 2))
    if near_consistent:
        while True:
            w = rng.dirichlet(np.full(n, 5.0))
            if w.max() / w.min() <= _MAX_RATIO[n]:
                break
        pos = {item: i for i, item in enumerate(items)}
    judgments = []
    for row, col in pairs:
        if near_consistent:
            mode = (w[pos[row]] / w[pos[col]]) * float(
                np.exp(rng.normal(0.0, _MODE_NOISE))
            )
        else:
            mode = float(
                np.exp(rng.uniform(-np.log(_MODE_RANGE), np.log(_MODE_RANGE)))
            )
        s_lo = rng.uniform(_SPREAD_LO, _SPREAD_HI)
        s_hi = rng.uniform(_SPREAD_LO, _SPREAD_HI)
        judgments.append(
            ComparisonJudgment(
                row, col, TFN(mode * (1.0 - s_lo), mode, mode * (1.0 + s_hi))
            )
        )
    return ComparisonMatrix(parent=parent, items=items, judgments=tuple(judgments))


def _random_matrix_four(rng, parent):
    """n = 4: consistent skeletons anchored to the percent grid.

    At four items the reference search runs on a step-0.01 grid, so each
    weight is a multiple of 1/100 of roughly 1/4, and moving any single
    grid coordinate changes a weight ratio by about 4 percent.  Measured
    across six generic populations (dense and sparse judgment graphs,
    mode noise 0.02 to 0.22), the best grid point then lands 0.035 to
    0.05 short of the true optimum in lambda, which is outside the 0.03
    comparison tolerance before the solver contributes any error at all.
    Drawing the mode skeleton as exact ratios of integers summing to 100
    keeps the optimum itself on the grid, so the comparison measures
    solver correctness rather than grid quantization.  Spread variety is
    unrestricted because it does not move the optimum of a consistent
    skeleton.  Inconsistent and negative-lambda coverage comes from the
    n in {2, 3} half of the population, where the finer grid permits it.
    """
    items = tuple(string.ascii_lowercase[:4])
    pairs = [(items[j], items[i]) for i in range(4) for j in range(i + 1, 4)]
    k = 8 + rng.multinomial(100 - 4 * 8, np.full(4, 0.25))
    pos = {item: i for i, item in enumerate(items)}
    judgments = []
    for row, col in pairs:
        mode = k[pos[row]] / k[pos[col]]
        s_lo = rng.uniform(0.35, 0.9)
        s_hi = rng.uniform(0.35, 1.3)
        judgments.append(
            ComparisonJudgment(
                row, col, TFN(mode * (1.0 - s_lo), mode, mode * (1.0 + s_hi))
            )
        )
    return ComparisonMatrix(parent=parent, items=items, judgments=tuple(judgments))


def random_matrix(rng, n, parent="rnd"):
    """Draw a random valid comparison matrix over n items."""
    if n == 4:
        return _random_matrix_four(rng, parent)
    return _random_matrix_small(rng, n, parent)


@pytest.fixture
def rng():
    return np.random.default_rng(20260822)


@pytest.fixture
def delphi_rounds():
    """A deterministic two-round screening fixture over 30 candidate items.

    Round one accepts 7 of 30 (6 of 8 experts rating 3 or 4 meets the 0.75
    consensus bar) and defers the other 23.  Round two re-rates exactly the
    deferred items and accepts 3 more, so the two rounds accept 10 in total.
    """
    from fahp import DelphiRatings

    experts = tuple(f"e{i}" for i in range(1, 9))
    items1 = tuple(f"c{i:02d}" for i in range(1, 31))
    accepted_pattern = (4, 4, 3, 3, 3, 3, 2, 1)  # 6/8 high
    deferred_patterns = (
        (4, 3, 3, 3, 3, 2, 1, 0),  # 5/8 high
        (3, 3, 4, 2, 2, 3, 4, 0),  # 5/8 high
        (4, 2, 1, 3, 3, 2, 0, 3),  # 4/8 high
    )
    ratings1 = []
    for idx, item in enumerate(items1):
        if idx < 7:
            ratings1.append(accepted_pattern)
        else:
            ratings1.append(deferred_patterns[idx % len(deferred_patterns)])
    round1 = DelphiRatings(items=items1, experts=experts, ratings=tuple(ratings1))

    items2 = tuple(f"c{i:02d}" for i in range(8, 31))
    ratings2 = []
    for idx, item in enumerate(items2):
        if idx < 3:
            ratings2.append((4, 4, 3, 3, 3, 3, 1, 2))  # 6/8 high
        else:
            ratings2.append((3, 4, 2, 3, 1, 2, 4, 0))  # 4/8 high
    round2 = DelphiRatings(items=items2, experts=experts, ratings=tuple(ratings2))

    first = frozenset(items1[:7])
    second = frozenset(items2[:3])
    return round1, round2, first, second
