"""Fixed-point-free involutions on {1, 1', ..., n, n'} as perfect matchings.

Point encoding: element i sits at index 2(i-1) and its barred partner i'
at index 2(i-1)+1, so the natural index order realizes the total order
1 < 1' < 2 < 2' < ... and barring a point is index XOR 1.

An involution is stored as a tuple ``match`` of length 2n with
``match[match[x]] == x`` and ``match[x] != x``.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import Iterator

from .errors import BoundExceeded, SamePoint
from .partitions import Composition, Partition, as_partition

FpfInvolution = tuple[int, ...]

ENUM_BOUND = 7


class StepKind(Enum):
    CUT = "cut"
    JOIN = "join"
    TWIST = "twist"


def point(i: int) -> int:
    """Index of the unbarred element i."""
    return 2 * (i - 1)


def bar(idx: int) -> int:
    """Index of the barred partner of a point."""
    return idx ^ 1


def element(idx: int) -> int:
    return idx // 2 + 1


def make_tau(n: int) -> FpfInvolution:
    """The reference involution (1 1')(2 2')...(n n')."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(x ^ 1 for x in range(2 * n))


def validate(rho: FpfInvolution) -> None:
    for x, y in enumerate(rho):
        if y == x or rho[y] != x:
            raise ValueError(f"not a fixed-point-free involution: {rho}")


def _rho_tau_image(rho: FpfInvolution, x: int) -> int:
    # (rho . tau)(x); tau is index XOR 1
    return rho[x ^ 1]


def rho_tau_cycles(rho: FpfInvolution) -> list[tuple[int, ...]]:
    """Cycles of the permutation rho*tau, each as a tuple of points."""
    seen = [False] * len(rho)
    cycles = []
    for start in range(len(rho)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = _rho_tau_image(rho, x)
        cycles.append(tuple(cyc))
    return cycles


def involution_type(rho: FpfInvolution) -> Partition:
    """Type of the involution: cycle lengths of rho*tau come in mirror
    pairs; one representative length per pair, as a partition of n."""
    lengths = sorted((len(c) for c in rho_tau_cycles(rho)), reverse=True)
    if len(lengths) % 2:
        raise ValueError("odd number of rho*tau cycles")
    rep = lengths[0::2]
    if rep != lengths[1::2]:
        raise ValueError("rho*tau cycle lengths do not pair up")
    return tuple(rep)


def components(rho: FpfInvolution) -> list[frozenset[int]]:
    """Connected components of the union graph of rho and tau."""
    seen = [False] * len(rho)
    comps = []
    for start in range(len(rho)):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        while stack:
            x = stack.pop()
            if seen[x]:
                continue
            seen[x] = True
            comp.append(x)
            stack.append(x ^ 1)      # tau edge
            stack.append(rho[x])     # rho edge
        comps.append(frozenset(comp))
    return comps


def canonical_involution(comp: Composition) -> FpfInvolution:
    """The preferred type representative built part by part: a part of
    size s starting after the last used index l contributes
    (l+1' l+2)(l+2' l+3)...(l+s' l+1)."""
    n = sum(comp)
    match = [-1] * (2 * n)

    def pair(a: int, b: int):
        match[a], match[b] = b, a

    used = 0
    for s in comp:
        if s < 1:
            raise ValueError("composition parts must be positive")
        for k in range(1, s):
            pair(bar(point(used + k)), point(used + k + 1))
        pair(bar(point(used + s)), point(used + 1))
        used += s
    rho = tuple(match)
    validate(rho)
    return rho


def classify_step(rho: FpfInvolution, i: int, j: int) -> StepKind:
    """Kind of action of the transposition (i j) on rho: a cut when i, j
    share a rho*tau cycle, a twist when they share a component but not a
    cycle, a join across components."""
    if i == j:
        raise SamePoint(f"transposition needs distinct points, got {i}")
    cyc_i = _cycle_points(rho, i)
    if j in cyc_i:
        return StepKind.CUT
    # the mirror cycle of cyc(i) is the rho*tau cycle through i XOR 1
    if (j ^ 1) in cyc_i:
        return StepKind.TWIST
    return StepKind.JOIN


def _cycle_points(rho: FpfInvolution, start: int) -> set[int]:
    out = {start}
    x = _rho_tau_image(rho, start)
    while x != start:
        out.add(x)
        x = _rho_tau_image(rho, x)
    return out


def conjugate(rho: FpfInvolution, i: int, j: int) -> FpfInvolution:
    """(i j) . rho = (i j) rho (i j)."""
    if i == j:
        raise SamePoint(f"transposition needs distinct points, got {i}")

    def swap(x: int) -> int:
        if x == i:
            return j
        if x == j:
            return i
        return x

    return tuple(swap(rho[swap(x)]) for x in range(len(rho)))


def enumerate_fpf(n: int, bound: int = ENUM_BOUND) -> Iterator[FpfInvolution]:
    """All (2n-1)!! fixed-point-free involutions, in the deterministic
    order given by repeatedly pairing the smallest unmatched point."""
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds enumeration bound {bound}")

    def rec(match: list[int]):
        try:
            a = match.index(-1)
        except ValueError:
            yield tuple(match)
            return
        for b in range(a + 1, len(match)):
            if match[b] != -1:
                continue
            match[a], match[b] = b, a
            yield from rec(match)
            match[a], match[b] = -1, -1

    yield from rec([-1] * (2 * n))


def enumerate_type_class(lam: Partition, bound: int = ENUM_BOUND) -> Iterator[FpfInvolution]:
    lam = as_partition(lam)
    n = sum(lam)
    for rho in enumerate_fpf(n, bound):
        if involution_type(rho) == lam:
            yield rho


@lru_cache(maxsize=None)
def type_class(lam: Partition) -> tuple[FpfInvolution, ...]:
    return tuple(enumerate_type_class(lam))


def type_class_size(lam: Partition) -> int:
    """#involutions of type lam: (2^n n!) / prod_j (2j)^{m_j} m_j!."""
    from math import factorial

    from .partitions import multiplicities
    n = sum(lam)
    denom = 1
    for j, m in multiplicities(lam).items():
        denom *= (2 * j) ** m * factorial(m)
    num = 2 ** n * factorial(n)
    assert num % denom == 0
    return num // denom


def to_text(rho: FpfInvolution, ascii_bars: bool = False) -> str:
    """Cycle notation with barred labels, e.g. (1' 2)(2' 3)(3' 1)."""
    mark = "'" if ascii_bars else "̄"

    def name(idx: int) -> str:
        e = element(idx)
        return f"{e}{mark}" if idx & 1 else str(e)

    pairs = []
    for x in range(len(rho)):
        y = rho[x]
        if x < y:
            pairs.append(f"({name(x)} {name(y)})")
    return "".join(pairs)
