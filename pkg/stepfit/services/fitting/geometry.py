"""Exact primitives: weighted distance, dual lines and the one-step fit."""

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from stepfit.core.errors import ValidationError
from stepfit.models.domain import DualLine, StepFunction, WeightedPoint

# A line eps = slope * c + intercept in (step value, tolerance) space.
_EnvelopeLine = Tuple[Fraction, Fraction]


def distance(points: Sequence[WeightedPoint], f: StepFunction) -> Fraction:
    """Largest weighted vertical distance ``w * |f(x) - y|`` over ``points``.

    Raises:
        ValidationError: If ``points`` is empty
    """
    if not points:
        raise ValidationError("empty point set")
    return max(p.w * abs(f.evaluate(p.x) - p.y) for p in points)


def build_dual_lines(points: Sequence[WeightedPoint]) -> List[DualLine]:
    """Both dual lines of every point, deduplicated, in their order at -inf.

    Point ``(x, y, w)`` yields ``x = eps/w + y`` and ``x = -eps/w + y``. As
    eps goes to -inf a larger coefficient means a smaller position, so the
    order is coefficient descending, then intercept ascending.
    """
    if not points:
        raise ValidationError("empty point set")
    unique = {}
    for index, p in enumerate(points):
        inverse = 1 / p.w
        for sign in (1, -1):
            line = DualLine(sign * inverse, p.y, index, sign)
            unique.setdefault((line.a, line.b), line)
    return sorted(unique.values(), key=lambda line: (-line.a, line.b))


def crossing(li: DualLine, lj: DualLine) -> Optional[Fraction]:
    """Tolerance at which two dual lines meet, or None when parallel."""
    if li.a == lj.a:
        return None
    return (lj.b - li.b) / (li.a - lj.a)


def _upper_envelope(lines: Iterable[_EnvelopeLine]) -> List[_EnvelopeLine]:
    """Upper envelope of non-vertical lines, ordered by increasing slope."""
    hull: List[_EnvelopeLine] = []
    for slope, intercept in sorted(lines):
        if hull and hull[-1][0] == slope:
            # same slope: sorted order puts the larger intercept last
            hull.pop()
        while len(hull) >= 2:
            (s1, t1), (s2, t2) = hull[-2], hull[-1]
            # hull[-1] is hidden when the new line overtakes hull[-2]
            # no later than hull[-1] does
            if (t1 - intercept) * (s2 - s1) <= (t1 - t2) * (slope - s1):
                hull.pop()
            else:
                break
        hull.append((slope, intercept))
    return hull


def best_constant(points: Sequence[WeightedPoint]) -> Tuple[Fraction, Fraction]:
    """Constant ``c`` minimising ``max w * |c - y|`` and that minimum.

    The cost ``max_i w_i |c - y_i|`` is the upper envelope of the lines
    ``eps = w_i (c - y_i)`` and ``eps = -w_i (c - y_i)``; its lowest vertex
    joins the last falling segment to the first rising one.

    Returns:
        Tuple of (c, err)
    """
    if not points:
        raise ValidationError("empty point set")
    lines = []
    for p in points:
        lines.append((p.w, -p.w * p.y))
        lines.append((-p.w, p.w * p.y))
    hull = _upper_envelope(lines)

    for (s1, t1), (s2, t2) in zip(hull, hull[1:]):
        if s1 < 0 < s2:
            c = (t1 - t2) / (s2 - s1)
            return c, s1 * c + t1
    # every point contributes one falling and one rising line
    raise AssertionError("upper envelope has no lowest vertex")


def best_constant_pairwise(
    points: Sequence[WeightedPoint],
) -> Tuple[Fraction, Fraction]:
    """Quadratic reference for :func:`best_constant`.

    The optimum is attained by the pair ``y_i <= y_j`` maximising
    ``w_i w_j (y_j - y_i) / (w_i + w_j)``, at ``c = y_i + err / w_i``.
    """
    if not points:
        raise ValidationError("empty point set")
    best_err = Fraction(0)
    best_c = points[0].y
    for pi in points:
        for pj in points:
            if pi.y < pj.y:
                err = pi.w * pj.w * (pj.y - pi.y) / (pi.w + pj.w)
                if err > best_err:
                    best_err, best_c = err, pi.y + err / pi.w
    return best_c, best_err
