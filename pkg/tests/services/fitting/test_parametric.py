import math
import time
from fractions import Fraction

import pytest

from stepfit.core.errors import SolverError, ValidationError
from stepfit.models.domain import DualLine, Instance, StepFunction
from stepfit.services.fitting.decision import DecisionOracle, decide
from stepfit.services.fitting.geometry import build_dual_lines, distance
from stepfit.services.fitting.oracle import candidate_values, solve_bruteforce
from stepfit.services.fitting.parametric import (
    ACTIVE,
    INACTIVE,
    RESOLVED,
    ComparatorState,
    SearchState,
    audit_comparisons,
    compare_at_eps_star,
    critical_value,
    oracle_call_budget,
    solve,
    solve_parametric,
    sort_lines_at_eps_star,
    weighted_median,
)
from stepfit.services.fitting.service import FittingService
from stepfit.utils.generator import generate_triples


def line(a, b, index=0):
    a, b = Fraction(a), Fraction(b)
    return DualLine(a, b, index, 1 if a > 0 else -1)


class TestCriticalValue:
    def test_crossing(self):
        assert critical_value(line(1, 0), line(-1, 2)) == 1

    def test_parallel(self):
        assert critical_value(line(1, 0), line(1, 2)) == math.inf

    def test_same_source_point(self):
        assert critical_value(line("1/2", 3), line("-1/2", 3)) == 0

    def test_wrong_orientation(self):
        with pytest.raises(ValidationError):
            critical_value(line(-1, 2), line(1, 0))


class TestWeightedMedian:
    @pytest.mark.parametrize(
        "items,expected",
        [
            ([(1, 1), (3, 1), (5, 1)], 3),
            ([(1, 2), (3, 2), (5, 1)], 5),
            ([(Fraction(7, 2), 4)], Fraction(7, 2)),
            ([(5, 1), (1, 1), (3, 1)], 3),
            ([(1, 1), (math.inf, 1), (2, 1)], 2),
        ],
    )
    def test_examples(self, items, expected):
        assert weighted_median(items) == expected

    def test_empty(self):
        with pytest.raises(ValidationError):
            weighted_median([])


class TestComparatorState:
    def test_legal_transitions(self):
        comparator = ComparatorState(cid=0, level=1, channels=(0, 1))
        assert comparator.status == INACTIVE
        comparator.advance(ACTIVE)
        comparator.advance(RESOLVED)
        assert comparator.status == RESOLVED

    @pytest.mark.parametrize(
        "path", [[RESOLVED], [ACTIVE, ACTIVE], [ACTIVE, RESOLVED, ACTIVE]]
    )
    def test_illegal_transitions(self, path):
        comparator = ComparatorState(cid=0, level=1, channels=(0, 1))
        with pytest.raises(SolverError):
            for status in path:
                comparator.advance(status)


class TestCompareAtEpsStar:
    def test_parallel_lines_cost_nothing(self, three_points):
        state = SearchState(oracle=DecisionOracle(three_points))
        assert compare_at_eps_star(line(1, 0), line(1, 2), state) is True
        assert state.stats.oracle_calls == 0

    def test_negative_critical_value_costs_nothing(self, three_points):
        state = SearchState(oracle=DecisionOracle(three_points))
        assert compare_at_eps_star(line(1, 2), line(-1, 0), state) is False
        assert state.stats.oracle_calls == 0

    def test_queries_below_optimum(self, three_points):
        state = SearchState(oracle=DecisionOracle(three_points))
        # the lines cross at 1/2, below the optimum 1
        assert compare_at_eps_star(line(1, 0), line(-1, 1), state) is False
        assert state.stats.oracle_calls == 1
        assert state.lo == Fraction(1, 2)

    def test_bounds_answer_later_questions(self, three_points):
        state = SearchState(oracle=DecisionOracle(three_points), hi=Fraction(1))
        assert compare_at_eps_star(line(1, 0), line(-1, 4), state) is True
        assert state.stats.oracle_calls == 0


class TestSortLines:
    def test_single_point(self):
        inst = Instance.from_triples([(0, 3, 2)], 1)
        lines = build_dual_lines(inst.points)
        result = sort_lines_at_eps_star(lines, DecisionOracle(inst))
        assert result.state.stats.oracle_calls <= 1
        assert len(result.order) == 2

    def test_sorted_at_optimum(self, three_points):
        lines = build_dual_lines(three_points.points)
        result = sort_lines_at_eps_star(lines, DecisionOracle(three_points))
        positions = [lines[i].at(Fraction(1)) for i in result.order]
        assert positions == sorted(positions)
        assert sorted(result.order) == list(range(len(lines)))

    def test_requires_two_lines(self, three_points):
        with pytest.raises(SolverError):
            sort_lines_at_eps_star([line(1, 0)], DecisionOracle(three_points))

    @pytest.mark.parametrize("seed", range(15))
    def test_random_instances_sorted_at_optimum(self, seed, make_instance):
        inst = make_instance(4 + 3 * seed, 1 + seed % 5, seed=seed)
        eps_star, _ = solve_bruteforce(inst)
        lines = build_dual_lines(inst.points)
        result = sort_lines_at_eps_star(lines, DecisionOracle(inst), keep_resolved=True)
        positions = [lines[i].at(eps_star) for i in result.order]
        assert positions == sorted(positions)
        assert audit_comparisons(result.state, lines, eps_star) == []
        state = result.state
        assert state.lo < eps_star
        assert state.hi is None or eps_star <= state.hi

    @pytest.mark.parametrize("seed", range(10))
    def test_kept_keys_match_critical_values(self, seed, make_instance):
        inst = make_instance(6 + 4 * seed, 2, seed=seed, coord_range=(-30, 30))
        lines = build_dual_lines(inst.points)
        result = sort_lines_at_eps_star(lines, DecisionOracle(inst), keep_resolved=True)
        assert len(result.state.resolved) == result.state.stats.resolved
        for comparator in result.state.resolved:
            i, j = comparator.pair
            assert i < j
            assert comparator.key == critical_value(lines[i], lines[j])
            assert comparator.status == RESOLVED


class TestSearchState:
    @pytest.mark.parametrize(
        "lo,hi",
        [
            (Fraction(-1), None),
            (Fraction(0), None),
            (Fraction(1, 3), Fraction(5, 2)),
            (Fraction(-1), Fraction(7, 4)),
        ],
    )
    def test_settle_ratio_matches_settle(self, three_points, lo, hi):
        state = SearchState(oracle=DecisionOracle(three_points), lo=lo, hi=hi)
        for num in range(-12, 13):
            for den in range(1, 7):
                assert state.settle_ratio(num, den) == state.settle(Fraction(num, den))
                # unreduced ratios settle the same way
                assert state.settle_ratio(3 * num, 3 * den) == state.settle_ratio(num, den)
        assert state.settle_ratio(1, 0) is True
        assert state.settle(math.inf) is True


class TestSolve:
    @pytest.mark.parametrize(
        "triples,k,expected",
        [
            ([(0, 0, 1)], 1, Fraction(0)),
            ([(0, 0, 1), (1, 2, 1), (2, 0, 1)], 2, Fraction(1)),
            ([(0, 0, 1), (1, 2, 3)], 1, Fraction(3, 2)),
            ([(0, 0, 1), (1, 2, 1)], 2, Fraction(0)),
            ([(0, 0, 1), (0, 2, 1)], 5, Fraction(1)),
        ],
    )
    def test_examples(self, triples, k, expected):
        inst = Instance.from_triples(triples, k)
        eps_star, f = solve(inst)
        assert eps_star == expected
        assert distance(inst.points, f) <= eps_star
        assert f.num_steps <= k

    def test_single_point_constant(self):
        _, f = solve(Instance.from_triples([(0, 0, 1)], 1))
        assert f == StepFunction.constant(0)

    def test_trace_records_every_round(self, make_instance):
        result = solve_parametric(make_instance(20, 3, seed=1), trace=True)
        stats = result.state.stats
        assert len(stats.trace) == stats.rounds
        for record in stats.trace:
            assert record.active >= 1
            assert record.lo < (record.hi if record.hi is not None else math.inf)

    @pytest.mark.parametrize("seed", range(12))
    def test_trace_bounds_stay_sound(self, seed, make_instance):
        inst = make_instance(10 + 5 * seed, 1 + seed % 5, seed=seed, coord_range=(-25, 25))
        result = solve_parametric(inst, trace=False)
        lo, hi = Fraction(-1), None
        for record in result.state.stats.trace:
            assert record.feasible == decide(inst, record.median).feasible
            if record.hi is not None:
                assert decide(inst, record.hi).feasible
                assert hi is None or record.hi <= hi
            if record.lo >= 0:
                assert not decide(inst, record.lo).feasible
            assert record.lo >= lo
            assert record.lo < result.eps_star
            assert record.hi is None or result.eps_star <= record.hi
            lo, hi = record.lo, record.hi

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_bruteforce(self, seed, make_instance):
        n = 1 + (seed * 7) % 40
        inst = make_instance(n, 1 + seed % 6, seed=seed, coord_range=(-10, 10))
        result = solve_parametric(inst, audit=True)
        eps_star, _ = solve_bruteforce(inst)
        assert result.eps_star == eps_star
        assert distance(inst.points, result.step_function) == eps_star
        assert result.step_function.num_steps <= inst.k
        certificate = FittingService().certify(inst, result.eps_star, result.step_function)
        assert certificate.valid, certificate.problems
        assert result.eps_star in candidate_values(result.lines)

    @pytest.mark.parametrize("seed", range(10))
    def test_duplicated_points(self, seed, make_instance):
        base = make_instance(8, 2 + seed % 3, seed=seed, coord_range=(-4, 4))
        inst = Instance.from_points(base.points + base.points, base.k)
        assert solve(inst)[0] == solve_bruteforce(inst)[0]

    @pytest.mark.parametrize("n,seed", [(30, 0), (60, 1), (100, 2), (150, 3)])
    def test_oracle_call_budget(self, n, seed, make_instance):
        inst = make_instance(n, 5, seed=seed)
        oracle = DecisionOracle(inst)
        result = solve_parametric(inst, oracle=oracle)
        m = len(result.lines)
        assert oracle.calls == result.state.stats.oracle_calls
        assert oracle.calls <= oracle_call_budget(m, result.depth)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [100, 1000, 10000])
    def test_oracle_call_budget_at_scale(self, n, make_instance):
        inst = make_instance(n, max(1, n // 20), seed=n)
        oracle = DecisionOracle(inst)
        result = solve_parametric(inst, oracle=oracle)
        assert oracle.calls <= oracle_call_budget(len(result.lines), result.depth)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(200))
    def test_matches_bruteforce_many(self, seed, make_instance):
        inst = make_instance(1 + seed % 200, 1 + seed % 10, seed=10_000 + seed)
        assert solve(inst)[0] == solve_bruteforce(inst)[0]


class TestOracleCallBudget:
    @pytest.mark.parametrize(
        "m,depth,expected",
        [(2, 1, 4 * (1 + 1) + 2), (4, 3, 4 * (3 + 2) + 4), (5, 6, 4 * (6 + 3) + 5)],
    )
    def test_formula(self, m, depth, expected):
        assert oracle_call_budget(m, depth) == expected


def time_solve(n, k=50):
    inst = Instance.from_triples(generate_triples(n, n, coord_range=(-10**6, 10**6)), k)
    start = time.perf_counter()
    solve_parametric(inst, trace=False, audit=False)
    return time.perf_counter() - start


@pytest.mark.slow
class TestScaling:
    def test_doubling_n_stays_near_linear(self):
        small, large = time_solve(5000), time_solve(10000)
        assert large / small < 3

    def test_hundred_thousand_points(self):
        assert time_solve(10**5) < 120
