"""Parametric search for the optimal tolerance.

The dual lines are sorted by their position at the unknown optimum
``eps*`` by simulating a sorting network. Two lines ``l_i`` before ``l_j``
(in their order at -inf) satisfy ``l_i(eps*) <= l_j(eps*)`` exactly when
``eps* <= critical_value(l_i, l_j)``, so each comparison is a question about
``eps*`` that the greedy decision procedure answers.

Comparisons are batched following Cole: every comparator carries the weight
``4**-level`` while active, one oracle call is spent per round at the
weighted median of the active critical values, and the known interval
``(lo, hi]`` around ``eps*`` then settles at least half of the active weight
for free. Once sorted, ``eps*`` is the crossing of two neighbours in the
final order, found by a last binary search.
"""

import logging
import math
from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

from stepfit.core.errors import SolverError, ValidationError
from stepfit.core.logging import get_logger, log_duration
from stepfit.core.settings import get_settings
from stepfit.models.domain import ComparatorNetwork, DualLine, Instance, StepFunction

from .decision import DecisionOracle, build_step_function
from .geometry import build_dual_lines, crossing
from .network import build_network

logger = get_logger(__name__)
trace_logger = get_logger("stepfit.trace")
trace_logger.setLevel(logging.INFO)

INF = math.inf
Critical = Union[Fraction, float]

INACTIVE = "inactive"
ACTIVE = "active"
RESOLVED = "resolved"

_TRANSITIONS = {INACTIVE: ACTIVE, ACTIVE: RESOLVED}


def precedes(li: DualLine, lj: DualLine) -> bool:
    """True when ``li`` lies strictly left of ``lj`` as eps goes to -inf."""
    return li.a > lj.a or (li.a == lj.a and li.b < lj.b)


def critical_value(li: DualLine, lj: DualLine) -> Critical:
    """Largest eps with ``li`` still left of (or on) ``lj``; INF when parallel.

    Raises:
        ValidationError: If ``li`` does not precede ``lj`` at -inf
    """
    if not precedes(li, lj):
        raise ValidationError(
            "lines are not in their order at -inf",
            details={"first": (str(li.a), str(li.b)), "second": (str(lj.a), str(lj.b))},
        )
    y = crossing(li, lj)
    return INF if y is None else y


def weighted_median(items: Sequence[Tuple[Critical, int]]) -> Critical:
    """Smallest key whose cumulative weight reaches half of the total.

    An item ``(key, level)`` weighs ``4**-level``; weights are compared as
    exact integers scaled by ``4**max_level``.
    """
    if not items:
        raise ValidationError("weighted median of an empty set")
    top = max(level for _, level in items)
    ordered = sorted(items, key=lambda item: item[0])
    weights = [4 ** (top - level) for _, level in ordered]
    total = sum(weights)
    running = 0
    for (key, _), weight in zip(ordered, weights):
        running += weight
        if 2 * running >= total:
            return key
    return ordered[-1][0]


@dataclass
class ComparatorState:
    """One network comparison and its progress through the engine.

    The critical value is kept as the integer ratio ``num / den`` (``den > 0``,
    or ``den == 0`` for parallel lines); the Fraction is only built when the
    comparison takes part in a weighted median.
    """

    cid: int
    level: int
    channels: Tuple[int, int]
    status: str = INACTIVE
    num: int = 1
    den: int = 0
    # -inf ranks of the compared lines, lower first
    pair: Tuple[int, int] = (-1, -1)
    # True when the lower-ranked line comes first at eps*
    in_order: Optional[bool] = None

    @cached_property
    def key(self) -> Critical:
        return INF if self.den == 0 else Fraction(self.num, self.den)

    def advance(self, status: str) -> None:
        if _TRANSITIONS.get(self.status) != status:
            raise SolverError(
                "illegal comparator transition",
                details={"from": self.status, "to": status, "channels": self.channels},
            )
        self.status = status


@dataclass
class TraceRecord:
    """One oracle round of the engine."""

    round: int
    active: int
    median: Critical
    feasible: bool
    lo: Fraction
    hi: Optional[Fraction]


@dataclass
class SearchStats:
    oracle_calls: int = 0
    rounds: int = 0
    max_active: int = 0
    resolved: int = 0
    trace: List[TraceRecord] = field(default_factory=list)


@dataclass
class SearchState:
    """What is known about ``eps*``: ``lo < eps* <= hi``.

    ``lo == -1`` means nothing beyond ``eps* >= 0``; ``hi is None`` means
    no feasible tolerance has been seen yet. ``resolved`` is only filled
    when the engine is asked to keep its comparisons for auditing.
    """

    oracle: DecisionOracle
    lo: Fraction = Fraction(-1)
    hi: Optional[Fraction] = None
    channel_contents: List[int] = field(default_factory=list)
    active: Dict[int, ComparatorState] = field(default_factory=dict)
    resolved: List[ComparatorState] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    def settle(self, key: Critical) -> Optional[bool]:
        """Answer ``eps* <= key`` from the bounds alone, or None."""
        if key == INF:
            return True
        return self.settle_ratio(key.numerator, key.denominator)  # type: ignore[union-attr]

    def settle_ratio(self, num: int, den: int) -> Optional[bool]:
        """:meth:`settle` for the key ``num / den`` (``den == 0`` is +inf).

        Compares by cross-multiplication so no Fraction is built.
        """
        if den == 0:
            return True
        lo = self.lo
        if num < 0 or num * lo.denominator <= lo.numerator * den:
            return False
        hi = self.hi
        if hi is not None and num * hi.denominator >= hi.numerator * den:
            return True
        return None

    def query(self, key: Fraction) -> bool:
        """Spend one oracle call on ``eps* <= key`` and tighten the bounds."""
        feasible = self.oracle(key)
        self.stats.oracle_calls += 1
        if feasible:
            self.hi = key
        else:
            self.lo = key
        return feasible


def compare_at_eps_star(li: DualLine, lj: DualLine, state: SearchState) -> bool:
    """Whether ``li(eps*) <= lj(eps*)`` for ``li`` preceding ``lj`` at -inf.

    Uses the known bounds when they decide the question; otherwise makes a
    single oracle call at the critical value.
    """
    key = critical_value(li, lj)
    answer = state.settle(key)
    if answer is None:
        answer = state.query(key)  # type: ignore[arg-type]
    return answer


class _Engine:
    """Network simulation with resolved / active / inactive comparators.

    The network is flattened into arrays and critical values stay integer
    ratios; a :class:`ComparatorState` only exists for comparisons that have
    to wait for an oracle round.
    """

    def __init__(
        self,
        lines: Sequence[DualLine],
        net: ComparatorNetwork,
        state: SearchState,
        keep_resolved: bool,
        trace: bool,
    ):
        self.lines = lines
        self.state = state
        self.keep_resolved = keep_resolved
        self.trace = trace
        state.channel_contents = list(range(len(lines)))

        # integer parts of a = an/ad and b = bn/bd for every line
        self.an = [line.a.numerator for line in lines]
        self.ad = [line.a.denominator for line in lines]
        self.bn = [line.b.numerator for line in lines]
        self.bd = [line.b.denominator for line in lines]

        self.level = array("H")
        self.u = array("l")
        self.v = array("l")
        self.next_u = array("l")
        self.next_v = array("l")
        # unresolved predecessors of each comparator (0, 1 or 2)
        self.waiting = bytearray()

        last = [-1] * net.size
        for level_index, level in enumerate(net.levels, start=1):
            for a, b in level:
                cid = len(self.u)
                self.level.append(level_index)
                self.u.append(a)
                self.v.append(b)
                self.next_u.append(-1)
                self.next_v.append(-1)
                waiting = 0
                for channel in (a, b):
                    before = last[channel]
                    if before >= 0:
                        waiting += 1
                        if self.u[before] == channel:
                            self.next_u[before] = cid
                        else:
                            self.next_v[before] = cid
                    last[channel] = cid
                self.waiting.append(waiting)
        self.total = len(self.u)
        # comparators whose inputs are final but that were not examined yet
        self.ready = [cid for cid in range(self.total) if self.waiting[cid] == 0]

    def _ratio(self, i: int, j: int) -> Tuple[int, int]:
        """Critical value of ranks ``i < j`` as ``(num, den)``, ``den >= 0``.

        Lines are in -inf order, so ``a_i >= a_j`` and the orientation
        check of :func:`critical_value` is not needed here.
        """
        an, ad, bn, bd = self.an, self.ad, self.bn, self.bd
        den = (an[i] * ad[j] - an[j] * ad[i]) * bd[i] * bd[j]
        if den == 0:
            return 1, 0
        return (bn[j] * bd[i] - bn[i] * bd[j]) * ad[i] * ad[j], den

    def _activate(self, cid: int, i: int, j: int, num: int, den: int) -> ComparatorState:
        comparator = ComparatorState(
            cid=cid,
            level=self.level[cid],
            channels=(self.u[cid], self.v[cid]),
            pair=(i, j),
            num=num,
            den=den,
        )
        comparator.advance(ACTIVE)
        self.state.active[cid] = comparator
        return comparator

    def _apply(self, cid: int, i: int, j: int, in_order: bool) -> None:
        """Write an outcome to the channels and release the successors."""
        contents = self.state.channel_contents
        contents[self.u[cid]], contents[self.v[cid]] = (i, j) if in_order else (j, i)
        self.state.stats.resolved += 1
        waiting = self.waiting
        for nxt in (self.next_u[cid], self.next_v[cid]):
            if nxt >= 0:
                waiting[nxt] -= 1
                if waiting[nxt] == 0:
                    self.ready.append(nxt)

    def _resolve(self, comparator: ComparatorState, in_order: bool) -> None:
        comparator.in_order = in_order
        comparator.advance(RESOLVED)
        del self.state.active[comparator.cid]
        if self.keep_resolved:
            self.state.resolved.append(comparator)
        self._apply(comparator.cid, *comparator.pair, in_order)

    def _resolve_free(self) -> None:
        """Settle every comparison the bounds already decide.

        A comparison settled on arrival never gets a :class:`ComparatorState`
        unless comparisons are kept for auditing; only the ones left open
        become active and wait for the next median.
        """
        state = self.state
        settle = state.settle_ratio
        for comparator in list(state.active.values()):
            answer = settle(comparator.num, comparator.den)
            if answer is not None:
                self._resolve(comparator, answer)

        contents = state.channel_contents
        ready = self.ready
        while ready:
            cid = ready.pop()
            i, j = contents[self.u[cid]], contents[self.v[cid]]
            if j < i:
                i, j = j, i
            num, den = self._ratio(i, j)
            answer = settle(num, den)
            if answer is None:
                self._activate(cid, i, j, num, den)
            elif self.keep_resolved:
                self._resolve(self._activate(cid, i, j, num, den), answer)
            else:
                self._apply(cid, i, j, answer)

    def run(self) -> None:
        state = self.state
        stats = state.stats
        while True:
            self._resolve_free()
            if not state.active:
                break
            stats.rounds += 1
            stats.max_active = max(stats.max_active, len(state.active))
            # ties between equal keys follow channel order
            ordered = sorted(state.active.values(), key=lambda c: c.channels)
            median = weighted_median([(c.key, c.level) for c in ordered])
            feasible = state.query(median)  # type: ignore[arg-type]
            record = TraceRecord(
                round=stats.rounds,
                active=len(ordered),
                median=median,
                feasible=feasible,
                lo=state.lo,
                hi=state.hi,
            )
            stats.trace.append(record)
            if self.trace:
                trace_logger.info(
                    "parametric round",
                    extra={
                        "round": record.round,
                        "active": record.active,
                        "median": str(record.median),
                        "verdict": "feasible" if feasible else "infeasible",
                        "lo": str(record.lo),
                        "hi": "inf" if record.hi is None else str(record.hi),
                    },
                )

        if stats.resolved != self.total:
            raise SolverError(
                "network simulation stalled",
                details={"resolved": stats.resolved, "comparators": self.total},
            )


@dataclass
class SortResult:
    """Lines ordered at ``eps*`` (``order`` holds -inf ranks) and the final state."""

    order: List[int]
    state: SearchState
    depth: int


def sort_lines_at_eps_star(
    lines: Sequence[DualLine],
    oracle: DecisionOracle,
    net: Optional[ComparatorNetwork] = None,
    trace: Optional[bool] = None,
    keep_resolved: bool = False,
) -> SortResult:
    """Sort ``lines`` (given in -inf order) by their position at ``eps*``.

    Ties at ``eps*`` keep the -inf order, so the result is deterministic.
    """
    if len(lines) < 2:
        raise SolverError(
            "at least two distinct dual lines are required", details={"m": len(lines)}
        )
    net = net or build_network(len(lines))
    if net.size != len(lines):
        raise ValidationError(
            "network size does not match line count",
            details={"size": net.size, "m": len(lines)},
        )
    if trace is None:
        trace = get_settings().solver.TRACE
    state = SearchState(oracle=oracle)
    _Engine(lines, net, state, keep_resolved=keep_resolved, trace=trace).run()
    return SortResult(order=list(state.channel_contents), state=state, depth=net.depth)


def audit_comparisons(
    state: SearchState, lines: Sequence[DualLine], eps_star: Fraction
) -> List[ComparatorState]:
    """Kept comparators whose recorded outcome disagrees with ``eps*``."""
    wrong = []
    for comparator in state.resolved:
        i, j = comparator.pair
        truth = lines[i].at(eps_star) <= lines[j].at(eps_star)
        if comparator.in_order != truth:
            wrong.append(comparator)
    return wrong


def oracle_call_budget(m: int, depth: int) -> int:
    """``4 (depth + ceil(log2 m)) + ceil(log2 m**2)`` oracle calls."""
    log_m = (m - 1).bit_length() if m > 1 else 0
    log_m2 = (m * m - 1).bit_length() if m > 1 else 0
    return 4 * (depth + log_m) + log_m2


@dataclass
class ParametricResult:
    eps_star: Fraction
    step_function: StepFunction
    lines: List[DualLine]
    order: List[int]
    state: SearchState
    depth: int


def _neighbour_candidates(
    lines: Sequence[DualLine], order: Sequence[int], state: SearchState
) -> List[Fraction]:
    floor = max(state.lo, Fraction(0))
    candidates = set()
    for first, second in zip(order, order[1:]):
        i, j = min(first, second), max(first, second)
        key = critical_value(lines[i], lines[j])
        if key != INF and key >= floor and (state.hi is None or key <= state.hi):
            candidates.add(key)
    return sorted(candidates)  # type: ignore[arg-type]


@log_duration()
def solve_parametric(
    inst: Instance,
    oracle: Optional[DecisionOracle] = None,
    trace: Optional[bool] = None,
    audit: Optional[bool] = None,
) -> ParametricResult:
    """Optimal tolerance via parametric search, with the full engine state."""
    if audit is None:
        audit = get_settings().solver.AUDIT
    oracle = oracle or DecisionOracle(inst)
    lines = build_dual_lines(inst.points)
    result = sort_lines_at_eps_star(lines, oracle, trace=trace, keep_resolved=audit)
    state = result.state

    candidates = _neighbour_candidates(lines, result.order, state)
    left, right = 0, len(candidates)
    while left < right:
        mid = (left + right) // 2
        value = candidates[mid]
        if state.hi is not None and value == state.hi:
            feasible = True
        elif value <= state.lo:
            feasible = False
        else:
            feasible = state.query(value)
        if feasible:
            right = mid
        else:
            left = mid + 1

    if left < len(candidates):
        eps_star = candidates[left]
    elif state.hi is not None:
        eps_star = state.hi
    else:
        eps_star = Fraction(0)

    if eps_star == 0 and state.hi != 0 and not state.query(eps_star):
        raise SolverError("no feasible tolerance among the neighbour crossings")

    if audit:
        wrong = audit_comparisons(state, lines, eps_star)
        if wrong:
            raise SolverError(
                "comparison outcome contradicts the optimum",
                details={"count": len(wrong), "first": wrong[0].channels},
            )

    logger.debug(
        "Parametric search finished",
        extra={
            "m": len(lines),
            "depth": result.depth,
            "oracle_calls": state.stats.oracle_calls,
            "rounds": state.stats.rounds,
            "max_active": state.stats.max_active,
        },
    )
    return ParametricResult(
        eps_star=eps_star,
        step_function=build_step_function(inst, eps_star),
        lines=list(lines),
        order=result.order,
        state=state,
        depth=result.depth,
    )


def solve(inst: Instance) -> Tuple[Fraction, StepFunction]:
    """Optimal tolerance and a k-step function achieving it."""
    result = solve_parametric(inst)
    return result.eps_star, result.step_function
