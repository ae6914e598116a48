"""Immutable value types shared by the solvers.

All quantities are :class:`fractions.Fraction`; instances are frozen so they
can be shared freely between threads and solver backends.
"""

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple

from stepfit.core.errors import ValidationError
from stepfit.utils.parsing import RationalLike, to_rational


@dataclass(frozen=True)
class WeightedPoint:
    """A point ``(x, y)`` with a positive weight ``w``."""

    x: Fraction
    y: Fraction
    w: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", to_rational(self.x))
        object.__setattr__(self, "y", to_rational(self.y))
        object.__setattr__(self, "w", to_rational(self.w))
        if self.w <= 0:
            raise ValidationError(
                "weight must be positive", details={"w": str(self.w)}
            )

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike, w: RationalLike = 1) -> "WeightedPoint":
        return cls(x, y, w)  # type: ignore[arg-type]


@dataclass(frozen=True)
class Instance:
    """Weighted points sorted by abscissa, and the number of allowed steps."""

    points: Tuple[WeightedPoint, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValidationError("empty point set")
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise ValidationError("k must be a positive integer", details={"k": self.k})
        for previous, current in zip(self.points, self.points[1:]):
            if current.x < previous.x:
                raise ValidationError(
                    "points must be sorted by x",
                    details={"x": str(current.x), "after": str(previous.x)},
                )

    @classmethod
    def from_points(cls, points: Iterable[WeightedPoint], k: int) -> "Instance":
        """Build an instance from unsorted points (stable sort by x)."""
        return cls(tuple(sorted(points, key=lambda p: p.x)), k)

    @classmethod
    def from_triples(
        cls, triples: Iterable[Sequence[RationalLike]], k: int
    ) -> "Instance":
        """Build an instance from ``(x, y, w)`` triples in any order."""
        return cls.from_points((WeightedPoint.of(*t) for t in triples), k)

    @property
    def n(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function.

    ``values[0]`` holds on ``(-inf, breakpoints[0])``, ``values[i]`` on
    ``[breakpoints[i-1], breakpoints[i])`` and ``values[-1]`` from the last
    breakpoint to ``+inf``.
    """

    breakpoints: Tuple[Fraction, ...]
    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "breakpoints", tuple(to_rational(a) for a in self.breakpoints)
        )
        object.__setattr__(self, "values", tuple(to_rational(c) for c in self.values))
        if len(self.values) != len(self.breakpoints) + 1:
            raise ValidationError(
                "a step function needs exactly one more value than breakpoints",
                details={
                    "breakpoints": len(self.breakpoints),
                    "values": len(self.values),
                },
            )
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise ValidationError("breakpoints must be strictly increasing")

    @classmethod
    def constant(cls, c: RationalLike) -> "StepFunction":
        return cls((), (to_rational(c),))

    @property
    def num_steps(self) -> int:
        return len(self.values)

    def evaluate(self, x: RationalLike) -> Fraction:
        """Value at ``x``; a breakpoint belongs to the step on its right."""
        return self.values[bisect_right(self.breakpoints, to_rational(x))]

    __call__ = evaluate


class DualLine(NamedTuple):
    """The line ``x = a*eps + b`` of one point, in (step value, tolerance) space.

    ``sign`` is +1 for the line with slope ``1/w`` and -1 for ``-1/w``;
    ``index`` is the position of the source point in its instance.
    """

    a: Fraction
    b: Fraction
    index: int
    sign: int

    def at(self, eps: Fraction) -> Fraction:
        return self.a * eps + self.b


@dataclass(frozen=True)
class DecisionOutcome:
    """Result of the greedy feasibility test at one tolerance."""

    feasible: bool
    steps_used: int
    witness: Optional[StepFunction] = None


@dataclass(frozen=True)
class CandidateSet:
    """Sorted, duplicate-free tolerances that may equal the optimum."""

    values: Tuple[Fraction, ...]

    def __contains__(self, value: object) -> bool:
        if not isinstance(value, (int, Fraction)):
            return False
        i = bisect_left(self.values, value)
        return i < len(self.values) and self.values[i] == value

    def __len__(self) -> int:
        return len(self.values)

    def predecessor(self, value: Fraction) -> Optional[Fraction]:
        """Largest candidate strictly below ``value``."""
        i = bisect_left(self.values, value)
        return self.values[i - 1] if i > 0 else None


@dataclass(frozen=True)
class ComparatorNetwork:
    """Levels of comparators ``(i, j)`` with ``i < j`` over ``size`` channels."""

    size: int
    levels: Tuple[Tuple[Tuple[int, int], ...], ...] = field(default_factory=tuple)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def comparators(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(c for level in self.levels for c in level)


class Site(NamedTuple):
    """A weighted position for the k-center problem."""

    r: Fraction
    w: Fraction


@dataclass(frozen=True)
class KCenterInstance:
    """Weighted sites on the real line and the number of centers."""

    sites: Tuple[Site, ...]
    k: int

    def __post_init__(self) -> None:
        sites = tuple(
            Site(to_rational(r), to_rational(w)) for r, w in self.sites
        )
        object.__setattr__(self, "sites", sites)
        if not sites:
            raise ValidationError("empty site set")
        if any(site.w <= 0 for site in sites):
            raise ValidationError("weight must be positive")
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise ValidationError("k must be a positive integer", details={"k": self.k})

    def sorted_sites(self) -> Tuple[Site, ...]:
        return tuple(sorted(self.sites, key=lambda s: s.r))
