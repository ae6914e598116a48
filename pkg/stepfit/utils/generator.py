"""Seeded random instances with integer data."""

import random
from typing import List, Tuple

from stepfit.core.errors import ValidationError

Triple = Tuple[int, int, int]


def generate_triples(
    n: int,
    seed: int,
    coord_range: Tuple[int, int] = (-50, 50),
    weight_range: Tuple[int, int] = (1, 9),
) -> List[Triple]:
    """``n`` points ``(x, y, w)`` drawn uniformly from the given integer ranges.

    The same arguments always produce the same points.
    """
    if n < 1:
        raise ValidationError("n must be positive", details={"n": n})
    lo, hi = coord_range
    wlo, whi = weight_range
    if lo > hi:
        raise ValidationError("empty coordinate range", details={"range": [lo, hi]})
    if wlo < 1 or wlo > whi:
        raise ValidationError(
            "weight range must be positive and non-empty", details={"range": [wlo, whi]}
        )
    rng = random.Random(seed)
    return [
        (rng.randint(lo, hi), rng.randint(lo, hi), rng.randint(wlo, whi))
        for _ in range(n)
    ]


def render_triples(triples: List[Triple], header: str = "") -> str:
    """Instance file text: optional ``#`` header then one ``x y w`` per line."""
    lines = [f"# {line}" for line in header.splitlines()] if header else []
    lines.extend(f"{x} {y} {w}" for x, y, w in triples)
    return "\n".join(lines) + "\n"
