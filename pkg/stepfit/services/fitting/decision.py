"""Greedy feasibility test: can ``k`` steps fit the points within ``eps``?"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from stepfit.core.errors import InfeasibleToleranceError, ValidationError
from stepfit.core.logging import get_logger
from stepfit.models.domain import DecisionOutcome, Instance, StepFunction, WeightedPoint
from stepfit.utils.parsing import RationalLike, to_rational

logger = get_logger(__name__)


# (starts_group, a*c, d*b, b*c) for y = a/b and w = c/d; at eps = e the point
# accepts [a/b - e*d/c, a/b + e*d/c], i.e. (a*c -+ e*d*b) / (b*c)
PointTerms = List[Tuple[bool, int, int, int]]


def point_terms(points: Sequence[WeightedPoint]) -> PointTerms:
    """Integer coefficients of every point's feasible interval, in x order."""
    terms: PointTerms = []
    previous: Optional[Fraction] = None
    for p in points:
        a, b = p.y.numerator, p.y.denominator
        c, d = p.w.numerator, p.w.denominator
        terms.append((p.x != previous, a * c, d * b, b * c))
        previous = p.x
    return terms


def _midpoint(lo_num: int, lo_den: int, hi_num: int, hi_den: int) -> Fraction:
    return (Fraction(lo_num, lo_den) + Fraction(hi_num, hi_den)) / 2


def _greedy(
    points: Sequence[WeightedPoint],
    k: int,
    eps: Fraction,
    terms: Optional[PointTerms] = None,
) -> DecisionOutcome:
    """Left-to-right sweep opening a new step only when the current one empties.

    Points sharing an x are handled as one group: a step function takes a
    single value there, so a group is never split between two steps. Bounds
    are unreduced integer ratios compared by cross-multiplication.
    """
    if terms is None:
        terms = point_terms(points)
    e_num, e_den = eps.numerator, eps.denominator
    n = len(points)
    breakpoints: List[Fraction] = []
    values: List[Fraction] = []
    # current step interval, lo_den == 0 until the first group
    lo_num = lo_den = hi_num = hi_den = 0

    i = 0
    while i < n:
        start = i
        _, t, s, d0 = terms[i]
        g_den = d0 * e_den
        g_lo, g_lo_den = t * e_den - e_num * s, g_den
        g_hi, g_hi_den = t * e_den + e_num * s, g_den
        i += 1
        while i < n and not terms[i][0]:
            _, t, s, d0 = terms[i]
            den = d0 * e_den
            low, high = t * e_den - e_num * s, t * e_den + e_num * s
            if low * g_lo_den > g_lo * den:
                g_lo, g_lo_den = low, den
            if high * g_hi_den < g_hi * den:
                g_hi, g_hi_den = high, den
            i += 1

        if g_lo * g_hi_den > g_hi * g_lo_den:
            # no value fits this x at all, whatever k is
            return DecisionOutcome(feasible=False, steps_used=k + 1)

        if lo_den == 0:
            lo_num, lo_den, hi_num, hi_den = g_lo, g_lo_den, g_hi, g_hi_den
            continue

        new_lo, new_lo_den = lo_num, lo_den
        if g_lo * lo_den > lo_num * g_lo_den:
            new_lo, new_lo_den = g_lo, g_lo_den
        new_hi, new_hi_den = hi_num, hi_den
        if g_hi * hi_den < hi_num * g_hi_den:
            new_hi, new_hi_den = g_hi, g_hi_den
        if new_lo * new_hi_den <= new_hi * new_lo_den:
            lo_num, lo_den, hi_num, hi_den = new_lo, new_lo_den, new_hi, new_hi_den
            continue

        values.append(_midpoint(lo_num, lo_den, hi_num, hi_den))
        if len(values) + 1 > k:
            return DecisionOutcome(feasible=False, steps_used=k + 1)
        breakpoints.append(points[start].x)
        lo_num, lo_den, hi_num, hi_den = g_lo, g_lo_den, g_hi, g_hi_den

    assert lo_den > 0
    values.append(_midpoint(lo_num, lo_den, hi_num, hi_den))
    witness = StepFunction(tuple(breakpoints), tuple(values))
    return DecisionOutcome(feasible=True, steps_used=len(values), witness=witness)


def decide(
    inst: Instance, eps: RationalLike, terms: Optional[PointTerms] = None
) -> DecisionOutcome:
    """Decide whether ``eps`` is at least the optimal tolerance of ``inst``.

    Runs in one pass over the (x-sorted) points with closed interval
    membership, so the optimum itself is reported feasible. ``terms`` may
    carry the instance's precomputed :func:`point_terms`.

    Raises:
        ValidationError: If ``eps`` is negative
    """
    eps = to_rational(eps)
    if eps < 0:
        raise ValidationError("negative tolerance", details={"eps": str(eps)})
    return _greedy(inst.points, inst.k, eps, terms)


def build_step_function(inst: Instance, eps: RationalLike) -> StepFunction:
    """Greedy step function within ``eps`` of every point, using at most k steps.

    Raises:
        InfeasibleToleranceError: If ``eps`` is below the optimum
    """
    outcome = decide(inst, eps)
    if not outcome.feasible or outcome.witness is None:
        raise InfeasibleToleranceError(
            "tolerance below optimum", details={"eps": str(eps), "k": inst.k}
        )
    return outcome.witness


class DecisionOracle:
    """Counted access to :func:`decide` for one instance.

    The solvers only talk to the instance through this object, which keeps
    the number of feasibility tests they spend.
    """

    def __init__(self, inst: Instance):
        self.instance = inst
        self.terms = point_terms(inst.points)
        self.calls = 0

    def __call__(self, eps: Fraction) -> bool:
        self.calls += 1
        outcome = decide(self.instance, eps, self.terms)
        logger.debug(
            "Decision oracle call",
            extra={"eps": str(eps), "feasible": outcome.feasible, "call": self.calls},
        )
        return outcome.feasible
