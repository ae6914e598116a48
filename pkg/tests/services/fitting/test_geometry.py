from fractions import Fraction

import pytest

from stepfit.core.errors import ValidationError
from stepfit.models.domain import StepFunction, WeightedPoint
from stepfit.services.fitting.geometry import (
    best_constant,
    best_constant_pairwise,
    build_dual_lines,
    crossing,
    distance,
)
from stepfit.utils.generator import generate_triples


def points_of(*triples):
    return [WeightedPoint.of(*t) for t in triples]


class TestDistance:
    @pytest.mark.parametrize(
        "triples,f,expected",
        [
            ([(0, 0, 1)], StepFunction.constant(0), Fraction(0)),
            ([(0, 0, 1), (1, 2, 3)], StepFunction.constant("3/2"), Fraction(3, 2)),
            (
                [(0, 0, 1), (1, 2, 1), (2, 0, 1)],
                StepFunction((1,), (0, 1)),
                Fraction(1),
            ),
        ],
    )
    def test_weighted_vertical_distance(self, triples, f, expected):
        assert distance(points_of(*triples), f) == expected

    def test_empty_point_set(self):
        with pytest.raises(ValidationError, match="empty point set"):
            distance([], StepFunction.constant(0))


class TestDualLines:
    def test_single_point(self):
        lines = build_dual_lines(points_of((0, 3, 2)))
        assert [(l.a, l.b) for l in lines] == [
            (Fraction(1, 2), Fraction(3)),
            (Fraction(-1, 2), Fraction(3)),
        ]

    def test_duplicates_discarded(self):
        lines = build_dual_lines(points_of((0, 1, 2), (5, 1, 2)))
        assert len(lines) == 2

    def test_order_at_minus_infinity(self):
        lines = build_dual_lines(points_of((0, 0, 1), (1, 2, 1)))
        assert [(l.a, l.b) for l in lines] == [(1, 0), (1, 2), (-1, 0), (-1, 2)]
        far = Fraction(-1000)
        positions = [l.at(far) for l in lines]
        assert positions == sorted(positions)
        assert len(set(positions)) == len(positions)

    def test_crossing(self):
        first, second, third, fourth = build_dual_lines(points_of((0, 0, 1), (1, 2, 1)))
        assert crossing(first, third) == 0
        assert crossing(first, fourth) == 1
        assert crossing(second, third) == -1
        assert crossing(first, second) is None


class TestBestConstant:
    @pytest.mark.parametrize(
        "triples,expected",
        [
            ([(0, 5, 2)], (Fraction(5), Fraction(0))),
            ([(0, 0, 1), (1, 2, 1)], (Fraction(1), Fraction(1))),
            ([(0, 0, 1), (1, 2, 3)], (Fraction(3, 2), Fraction(3, 2))),
        ],
    )
    def test_examples(self, triples, expected):
        assert best_constant(points_of(*triples)) == expected
        assert best_constant_pairwise(points_of(*triples)) == expected

    def test_equal_values(self):
        c, err = best_constant(points_of((0, 4, 1), (1, 4, 7)))
        assert (c, err) == (4, 0)

    @pytest.mark.parametrize("seed", range(25))
    def test_envelope_matches_pairwise_formula(self, seed):
        points = points_of(*generate_triples(1 + seed % 9, seed, coord_range=(-6, 6)))
        c, err = best_constant(points)
        _, reference = best_constant_pairwise(points)
        assert err == reference
        assert max(p.w * abs(c - p.y) for p in points) == err
