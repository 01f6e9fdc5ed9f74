"""Integer partitions, compositions, and box contents.

Partitions are tuples of positive integers sorted descending; compositions
are plain tuples in the given order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import Poly1

Partition = tuple[int, ...]
Composition = tuple[int, ...]


def as_partition(parts) -> Partition:
    p = tuple(sorted(parts, reverse=True))
    if any(x < 1 for x in p):
        raise ValueError(f"partition parts must be positive: {parts}")
    return p


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, sorted ascending in tuple order."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)

    def gen(remaining, maxpart):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(sorted(gen(n, n)))


def multiplicities(lam: Partition) -> dict[int, int]:
    out: dict[int, int] = {}
    for part in lam:
        out[part] = out.get(part, 0) + 1
    return out


def aut(lam: Partition) -> int:
    """Order of the automorphism group of the multiset of parts."""
    out = 1
    for m in multiplicities(lam).values():
        out *= factorial(m)
    return out


def boxes(lam: Partition):
    """Boxes (x, y) of the Young diagram, 1-indexed: x = column, y = row."""
    for y, row_len in enumerate(lam, start=1):
        for x in range(1, row_len + 1):
            yield (x, y)


def content(lam: Partition, flavor: str = "schur"):
    """Multiset of box contents.

    ``schur``  -> (x-1) - (y-1)           as Fractions
    ``zonal``  -> 2(x-1) - (y-1)          as Fractions
    ``jack``   -> (b+1)(x-1) - (y-1)      as Poly1 values in b
    """
    if flavor == "schur":
        return [Fraction((x - 1) - (y - 1)) for x, y in boxes(lam)]
    if flavor == "zonal":
        return [Fraction(2 * (x - 1) - (y - 1)) for x, y in boxes(lam)]
    if flavor == "jack":
        return [Poly1((Fraction((x - 1) - (y - 1)), Fraction(x - 1)))
                for x, y in boxes(lam)]
    raise ValueError(f"unknown content flavor {flavor!r}")


def content_sum(lam: Partition, flavor: str = "schur"):
    values = content(lam, flavor)
    total = values[0] if values else (Poly1() if flavor == "jack" else Fraction(0))
    for v in values[1:]:
        total = total + v
    return total


def merge(lam: Partition, mu: Partition) -> Partition:
    return as_partition(lam + mu)


def remove_index(comp: Composition, i: int) -> Composition:
    return comp[:i] + comp[i + 1:]
