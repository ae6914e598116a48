from fractions import Fraction

import pytest

from stepfit.core.errors import ValidationError
from stepfit.models.domain import (
    CandidateSet,
    Instance,
    KCenterInstance,
    Site,
    StepFunction,
    WeightedPoint,
)


class TestWeightedPoint:
    def test_coerces_to_fractions(self):
        p = WeightedPoint.of("0.5", 3, "2/3")
        assert p.x == Fraction(1, 2)
        assert p.y == Fraction(3)
        assert p.w == Fraction(2, 3)

    @pytest.mark.parametrize("w", [0, -1, "-0.5"])
    def test_rejects_non_positive_weight(self, w):
        with pytest.raises(ValidationError):
            WeightedPoint.of(0, 0, w)

    def test_rejects_floats(self):
        with pytest.raises(ValidationError):
            WeightedPoint.of(0.1, 0, 1)


class TestInstance:
    def test_from_triples_sorts_stably_by_x(self):
        inst = Instance.from_triples([(2, 0, 1), (0, 5, 1), (0, 7, 1)], 1)
        assert [(p.x, p.y) for p in inst.points] == [(0, 5), (0, 7), (2, 0)]
        assert inst.n == 3

    def test_empty_point_set(self):
        with pytest.raises(ValidationError, match="empty point set"):
            Instance((), 1)

    @pytest.mark.parametrize("k", [0, -3, True])
    def test_invalid_k(self, k):
        with pytest.raises(ValidationError):
            Instance.from_triples([(0, 0, 1)], k)

    def test_unsorted_points_rejected(self):
        points = (WeightedPoint.of(1, 0), WeightedPoint.of(0, 0))
        with pytest.raises(ValidationError, match="sorted"):
            Instance(points, 1)


class TestStepFunction:
    def test_constant(self):
        f = StepFunction.constant("3/2")
        assert f.num_steps == 1
        assert f(-100) == f(100) == Fraction(3, 2)

    def test_breakpoint_belongs_to_right_step(self):
        f = StepFunction((1, 3), (0, 1, 2))
        assert f.evaluate(Fraction(1, 2)) == 0
        assert f.evaluate(1) == 1
        assert f.evaluate(Fraction(5, 2)) == 1
        assert f.evaluate(3) == 2

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            StepFunction((1,), (0,))

    def test_breakpoints_strictly_increasing(self):
        with pytest.raises(ValidationError):
            StepFunction((1, 1), (0, 1, 2))


class TestCandidateSet:
    def test_membership_and_predecessor(self):
        candidates = CandidateSet((Fraction(0), Fraction(1, 2), Fraction(1)))
        assert Fraction(1, 2) in candidates
        assert Fraction(1, 3) not in candidates
        assert "1/2" not in candidates
        assert len(candidates) == 3
        assert candidates.predecessor(Fraction(1)) == Fraction(1, 2)
        assert candidates.predecessor(Fraction(0)) is None


class TestKCenterInstance:
    def test_sorted_sites(self):
        inst = KCenterInstance((Site(10, 1), Site(0, 2)), 1)
        assert [s.r for s in inst.sorted_sites()] == [0, 10]

    def test_empty_site_set(self):
        with pytest.raises(ValidationError, match="empty site set"):
            KCenterInstance((), 1)

    def test_non_positive_weight(self):
        with pytest.raises(ValidationError):
            KCenterInstance((Site(0, 0),), 1)
