"""Weighted k-center on the line, solved as a step-function fit.

Sorted sites ``r_1 <= ... <= r_n`` become the points ``(i, r_i, w_i)``;
the step values of an optimal k-step function are then optimal centers.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from stepfit.core.errors import ValidationError
from stepfit.core.logging import get_logger, log_duration
from stepfit.core.settings import get_settings
from stepfit.models.domain import Instance, KCenterInstance, Site, WeightedPoint
from stepfit.services.fitting.decision import DecisionOracle
from stepfit.services.fitting.geometry import best_constant
from stepfit.services.fitting.parametric import solve_parametric

logger = get_logger(__name__)


@dataclass
class KCenterResult:
    cost: Fraction
    centers: List[Fraction]
    oracle_calls: int


def to_step_instance(inst: KCenterInstance) -> Instance:
    """Points ``(i, r_i, w_i)`` for the sites sorted by position (stable)."""
    points = tuple(
        WeightedPoint(Fraction(i), site.r, site.w)
        for i, site in enumerate(inst.sorted_sites(), start=1)
    )
    return Instance(points, inst.k)


def kcenter_cost(sites: Sequence[Site], centers: Sequence[Fraction]) -> Fraction:
    """``max_i w_i * min_c |r_i - c|`` over the given centers."""
    if not centers:
        raise ValidationError("at least one center is required")
    return max(site.w * min(abs(site.r - c) for c in centers) for site in sites)


@log_duration()
def solve_kcenter(inst: KCenterInstance) -> KCenterResult:
    """Optimal cost and at most k distinct centers."""
    step_instance = to_step_instance(inst)
    oracle = DecisionOracle(step_instance)
    result = solve_parametric(step_instance, oracle=oracle)
    centers = sorted(set(result.step_function.values))
    logger.debug(
        "k-center solved",
        extra={"n": len(inst.sites), "k": inst.k, "centers": len(centers)},
    )
    return KCenterResult(cost=result.eps_star, centers=centers, oracle_calls=oracle.calls)


def kcenter_dp_oracle(inst: KCenterInstance) -> Fraction:
    """Exact optimum by dynamic programming over contiguous groups.

    ``best[g][i]`` is the smallest achievable maximum group cost when the
    first ``i`` sorted sites form ``g`` groups.

    Raises:
        ValidationError: If the instance exceeds the oracle's size limit
    """
    limit = get_settings().solver.KCENTER_ORACLE_LIMIT
    sites = inst.sorted_sites()
    n = len(sites)
    if n > limit:
        raise ValidationError(
            "instance too large for the k-center DP oracle",
            details={"n": n, "limit": limit},
        )

    points = [WeightedPoint(Fraction(0), site.r, site.w) for site in sites]
    group_cost = {
        (i, j): best_constant(points[i:j])[1] for i in range(n) for j in range(i + 1, n + 1)
    }

    groups = min(inst.k, n)
    best: List[List[Optional[Fraction]]] = [[None] * (n + 1) for _ in range(groups + 1)]
    best[0][0] = Fraction(0)
    for g in range(1, groups + 1):
        for j in range(1, n + 1):
            candidates: List[Fraction] = []
            for i in range(g - 1, j):
                previous = best[g - 1][i]
                if previous is not None:
                    candidates.append(max(previous, group_cost[i, j]))
            if candidates:
                best[g][j] = min(candidates)

    answers = [row[n] for row in best[1:] if row[n] is not None]
    return min(answers)  # type: ignore[type-var]
