"""Reference solvers used to check the parametric engine.

``solve_bruteforce`` binary-searches every vertex ordinate of the dual-line
arrangement (quadratically many); ``partition_oracle`` enumerates the ways to
cut the sorted points into at most k runs and knows nothing about lines.
"""

from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from stepfit.core.errors import SolverError, ValidationError
from stepfit.core.logging import get_logger, log_duration
from stepfit.core.settings import get_settings
from stepfit.models.domain import CandidateSet, DualLine, Instance, StepFunction, WeightedPoint

from .decision import DecisionOracle, build_step_function
from .geometry import best_constant, build_dual_lines, crossing

logger = get_logger(__name__)


def candidate_values(lines: Sequence[DualLine]) -> CandidateSet:
    """Non-negative ordinates of all pairwise crossings, plus 0."""
    values = {Fraction(0)}
    for i, li in enumerate(lines):
        for lj in lines[i + 1 :]:
            y = crossing(li, lj)
            if y is not None and y >= 0:
                values.add(y)
    return CandidateSet(tuple(sorted(values)))


def smallest_feasible(
    candidates: Sequence[Fraction], oracle: DecisionOracle
) -> Optional[Fraction]:
    """Binary search for the first feasible value of a sorted sequence."""
    left, right = 0, len(candidates)
    while left < right:
        mid = (left + right) // 2
        if oracle(candidates[mid]):
            right = mid
        else:
            left = mid + 1
    return candidates[left] if left < len(candidates) else None


@log_duration()
def solve_bruteforce(
    inst: Instance, oracle: Optional[DecisionOracle] = None
) -> Tuple[Fraction, StepFunction]:
    """Optimal tolerance and a matching step function, in O(n^2 log n).

    Returns:
        Tuple of (eps_star, step function)
    """
    oracle = oracle or DecisionOracle(inst)
    candidates = candidate_values(build_dual_lines(inst.points))
    eps_star = smallest_feasible(candidates.values, oracle)
    if eps_star is None:
        raise SolverError(
            "no candidate tolerance is feasible",
            details={"candidates": len(candidates)},
        )
    logger.debug(
        "Brute-force search finished",
        extra={"candidates": len(candidates), "oracle_calls": oracle.calls},
    )
    return eps_star, build_step_function(inst, eps_star)


def _groups(points: Sequence[WeightedPoint]) -> List[Tuple[WeightedPoint, ...]]:
    groups: List[Tuple[WeightedPoint, ...]] = []
    start = 0
    for i in range(1, len(points) + 1):
        if i == len(points) or points[i].x != points[start].x:
            groups.append(tuple(points[start:i]))
            start = i
    return groups


def partition_oracle(inst: Instance) -> Fraction:
    """Optimum by enumerating every split into at most k contiguous runs.

    Runs never split points with equal x; each run is scored by its best
    constant fit.

    Raises:
        ValidationError: If the instance exceeds the enumeration limit
    """
    limit = get_settings().solver.PARTITION_ORACLE_LIMIT
    if inst.n > limit:
        raise ValidationError(
            "instance too large for partition enumeration",
            details={"n": inst.n, "limit": limit},
        )
    groups = _groups(inst.points)
    g = len(groups)

    cost = {}
    for i in range(g):
        for j in range(i + 1, g + 1):
            run = [p for group in groups[i:j] for p in group]
            cost[i, j] = best_constant(run)[1]

    best: Optional[Fraction] = None
    for cuts in range(min(inst.k, g)):
        for positions in combinations(range(1, g), cuts):
            bounds = (0,) + positions + (g,)
            value = max(cost[a, b] for a, b in zip(bounds, bounds[1:]))
            if best is None or value < best:
                best = value
    assert best is not None
    return best
