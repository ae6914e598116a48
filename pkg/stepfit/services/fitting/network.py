"""Batcher odd-even merge sorting networks.

Non-power of two sizes are realized by generating the network for the next
larger power of two and dropping every comparator that touches a channel
outside the real ones. The dropped channels can be thought of as holding
values smaller (prefix) or larger (suffix) than any real item, so no
comparator would ever move them and the remaining network still sorts.
"""

import random
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple, TypeVar

from stepfit.core.errors import ValidationError
from stepfit.models.domain import ComparatorNetwork

T = TypeVar("T")

Comparator = Tuple[int, int]

EXHAUSTIVE_LIMIT = 16


def _sorting_network(indices: List[Optional[int]]) -> Iterator[Tuple[Optional[int], Optional[int]]]:
    if len(indices) < 2:
        return
    if len(indices) == 2:
        yield (indices[0], indices[1])
        return
    mid = len(indices) // 2
    yield from _sorting_network(indices[:mid])
    yield from _sorting_network(indices[mid:])
    yield from _merge_network(indices)


def _merge_network(indices: List[Optional[int]]) -> Iterator[Tuple[Optional[int], Optional[int]]]:
    if len(indices) < 2:
        return
    if len(indices) == 2:
        yield (indices[0], indices[1])
        return
    yield from _merge_network(indices[0::2])
    yield from _merge_network(indices[1::2])
    for x, y in zip(indices[1::2], indices[2::2]):
        yield (x, y)


def _layer(size: int, comparators: Sequence[Comparator]) -> Tuple[Tuple[Comparator, ...], ...]:
    """Group comparators into levels, each as early as its channels allow."""
    ready = [0] * size
    levels: List[List[Comparator]] = []
    for a, b in comparators:
        level = max(ready[a], ready[b])
        if level == len(levels):
            levels.append([])
        levels[level].append((a, b))
        ready[a] = ready[b] = level + 1
    return tuple(tuple(sorted(level)) for level in levels)


def build_network(m: int) -> ComparatorNetwork:
    """Batcher odd-even merge sorting network on ``m`` channels."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValidationError("network size must be a positive integer", details={"m": m})
    if m == 1:
        return ComparatorNetwork(size=1, levels=())

    next_pot_size = 1 << (m - 1).bit_length()
    fill = next_pot_size - m
    prefix_len = fill // 2
    suffix_len = (fill + 1) // 2

    channels: List[Optional[int]] = [None] * prefix_len + list(range(m)) + [None] * suffix_len
    comparators = [
        (a, b)
        for a, b in _sorting_network(channels)
        if a is not None and b is not None
    ]
    return ComparatorNetwork(size=m, levels=_layer(m, comparators))


def batcher_depth_bound(m: int) -> int:
    """``t (t + 1) / 2`` with ``t = ceil(log2 m)``."""
    t = (m - 1).bit_length() if m > 1 else 0
    return t * (t + 1) // 2


def run_network(net: ComparatorNetwork, items: Sequence[T]) -> List[T]:
    """Apply the network to ``items`` and return the result."""
    if len(items) != net.size:
        raise ValidationError(
            "input length does not match network size",
            details={"size": net.size, "length": len(items)},
        )
    values = list(items)
    for level in net.levels:
        for a, b in level:
            if values[b] < values[a]:  # type: ignore[operator]
                values[a], values[b] = values[b], values[a]
    return values


def levels_are_disjoint(net: ComparatorNetwork) -> bool:
    """True when no channel appears twice within a level."""
    for level in net.levels:
        seen = set()
        for a, b in level:
            if not 0 <= a < b < net.size or a in seen or b in seen:
                return False
            seen.update((a, b))
    return True


def is_sorting_network(
    net: ComparatorNetwork,
    samples: int = 10_000,
    rng: Optional[random.Random] = None,
) -> bool:
    """Check the network with the 0/1 principle.

    Every binary vector is tried for up to ``EXHAUSTIVE_LIMIT`` channels;
    larger networks are checked on ``samples`` random binary vectors.
    """
    if net.size <= EXHAUSTIVE_LIMIT:
        vectors = product((0, 1), repeat=net.size)
    else:
        rng = rng or random.Random(0)
        vectors = ([rng.getrandbits(1) for _ in range(net.size)] for _ in range(samples))
    for vector in vectors:
        out = run_network(net, vector)
        if any(out[i] > out[i + 1] for i in range(net.size - 1)):
            return False
    return True


def dump_levels(net: ComparatorNetwork) -> List[str]:
    """One line per level, comparators written as ``i:j``."""
    return [" ".join(f"{a}:{b}" for a, b in level) for level in net.levels]
