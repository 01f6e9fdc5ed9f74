"""Memoized cut-and-join recursions and the connected/disconnected
transforms.

Four recursion families live here:

* ``refined_monotone_N``  -- marked monotone double numbers on compositions,
* ``refined_simple_h``    -- connected simple double numbers (p_1 powers),
* ``b_double_h``          -- the same after C*J -> (1+b)/2, T -> b, computed
                             natively over rational functions in b,
* ``single_monotone_N``   -- connected single monotone numbers.

Genus is carried as twice its value (``g2``) so half-integral genus stays
integral.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .errors import MissingSubprofile, SizeMismatch
from .exact import BRat, CJTPoly, Poly1
from .partitions import (Composition, Partition, as_partition, aut,
                         multiplicities, partitions_of)

_CJT_ZERO = CJTPoly.zero()
_TWO_CJ = CJTPoly.monomial(2, 1, 1, 0)
_T = CJTPoly.monomial(1, 0, 0, 1)

_B_HALF1PB = BRat(Poly1((Fraction(1, 2), Fraction(1, 2))))   # (1+b)/2
_B_1PB = BRat(Poly1((1, 1)))                                 # 1+b
_B_B = BRat(Poly1((0, 1)))                                   # b


def _inv_2cj(scale: int) -> CJTPoly:
    return CJTPoly.monomial(Fraction(1, 2 * scale), -1, -1, 0)


# ---------------------------------------------------------------------------
# Refined monotone double numbers (marked recursion on compositions)
# ---------------------------------------------------------------------------

class MonotoneTable:
    """Memo store for the marked monotone recursion.

    Keys quotient compositions down to (sorted head of nu, last part of nu,
    sorted mu away from the mark, marked value, a); the validity of this
    quotient is covered by tests that recompute values on raw keys.
    """

    def __init__(self, use_canonical_keys: bool = True, store=None):
        self.use_canonical_keys = use_canonical_keys
        self.store = store if store is not None else {}

    def key(self, g2, nu, mu, r, a):
        if self.use_canonical_keys:
            return (g2, tuple(sorted(nu[:-1])), nu[-1],
                    tuple(sorted(mu[:r] + mu[r + 1:])), mu[r], a)
        return (g2, nu, mu, r, a)


_DEFAULT_TABLE = MonotoneTable()


def refined_monotone_N(g2: int, nu: Composition, mu: Composition,
                       r: int, a: int,
                       table: MonotoneTable | None = None) -> CJTPoly:
    """Marked monotone double number N^a(g; nu; mu | r).

    ``nu`` and ``mu`` are compositions of the same integer, ``r`` is the
    0-based marked position in ``mu`` and ``1 <= a <= nu[-1]`` bounds the
    final step.  The value is exact and memoized.
    """
    nu, mu = tuple(nu), tuple(mu)
    if sum(nu) != sum(mu):
        raise SizeMismatch(f"profiles {nu} and {mu} have different sizes")
    if not (0 <= r < len(mu)):
        raise ValueError(f"marked index {r} outside of mu")
    if not (1 <= a <= nu[-1]):
        raise ValueError(f"a={a} outside 1..{nu[-1]}")
    return _mono_N(g2, nu, mu, r, a, table or _DEFAULT_TABLE)


def _mono_N(g2, nu, mu, r, a, table) -> CJTPoly:
    if g2 < 0:
        return _CJT_ZERO
    p, q = len(nu), len(mu)
    k = g2 - 2 + p + q
    if k < 0:
        return _CJT_ZERO
    if k == 0:
        if a == 1 and p == 1 and q == 1 and mu[0] == nu[0]:
            return _inv_2cj(nu[0])
        return _CJT_ZERO

    key = table.key(g2, nu, mu, r, a)
    hit = table.store.get(key)
    if hit is not None:
        return hit

    n_p = nu[-1]
    m_r = mu[r]
    gate = m_r - n_p + a - 1
    total = _CJT_ZERO

    if gate >= 0:
        # last step cut a bigger cycle; undo by merging the mark with part j
        for j in range(q):
            if j == r:
                continue
            merged = list(mu)
            merged[r] = m_r + mu[j]
            del merged[j]
            r2 = r - 1 if j < r else r
            for l in range(1, a + 1):
                total = total + _mono_N(g2, nu, tuple(merged), r2, l, table)
        # last step twisted the marked cycle
        if gate > 0:
            acc = _CJT_ZERO
            for l in range(1, a + 1):
                acc = acc + _mono_N(g2 - 1, nu, mu, r, l, table)
            total = total + acc * (_T * gate)

    for alpha in range(1, m_r):
        beta = m_r - alpha
        # redundant join: alpha and beta lived in one component
        split = mu[:r] + (alpha, beta) + mu[r + 1:]
        for l in range(1, a + 1):
            sub = _mono_N(g2 - 2, nu, split, r, l, table)
            if sub:
                total = total + sub * (_TWO_CJ * beta)
        # essential join: alpha and beta lived in separate components
        inner = _CJT_ZERO
        for l in range(1, a + 1):
            inner = inner + _essential_mono(g2, nu, mu, r, alpha, beta, l, table)
        if inner:
            total = total + inner * (_TWO_CJ * beta)

    table.store[key] = total
    return total


def _essential_mono(g2, nu, mu, r, alpha, beta, l, table) -> CJTPoly:
    p, q = len(nu), len(mu)
    others_mu = [i for i in range(q) if i != r]
    others_nu = list(range(p - 1))          # the last nu part stays in K2
    total = _CJT_ZERO
    for g2a in range(g2 + 1):
        g2b = g2 - g2a
        for csize in range(len(others_nu) + 1):
            for K1 in combinations(others_nu, csize):
                nu1 = tuple(nu[i] for i in K1)
                K1set = set(K1)
                nu2 = tuple(nu[i] for i in range(p) if i not in K1set)
                for isize in range(len(others_mu) + 1):
                    for I1 in combinations(others_mu, isize):
                        I1set = set(I1)
                        mu1 = tuple(beta if i == r else mu[i]
                                    for i in sorted(I1set | {r}))
                        if sum(nu1) != sum(mu1):
                            continue
                        rest2 = sorted((set(others_mu) - I1set) | {r})
                        mu2 = tuple(alpha if i == r else mu[i] for i in rest2)
                        if sum(nu2) != sum(mu2):
                            continue
                        r2 = rest2.index(r)
                        agg = refined_monotone_N_agg(g2a, nu1, mu1, table)
                        if not agg:
                            continue
                        sub = _mono_N(g2b, nu2, mu2, r2, l, table)
                        if sub:
                            total = total + agg * sub
    return total


def refined_monotone_N_agg(g2: int, nu: Composition, mu: Composition,
                           table: MonotoneTable | None = None) -> CJTPoly:
    """Aggregate N(g; nu; mu) = sum over marks r and final bounds a."""
    nu, mu = tuple(nu), tuple(mu)
    if not nu or not mu or sum(nu) != sum(mu):
        return _CJT_ZERO
    table = table or _DEFAULT_TABLE
    total = _CJT_ZERO
    for r in range(len(mu)):
        for a in range(1, nu[-1] + 1):
            total = total + _mono_N(g2, nu, mu, r, a, table)
    return total


def refined_monotone_H(g2: int, nu, mu,
                       table: MonotoneTable | None = None) -> CJTPoly:
    """Connected monotone double number on partitions: the aggregate
    divided by the automorphisms of both profiles."""
    nu = as_partition(nu)
    mu = as_partition(mu)
    if sum(nu) != sum(mu):
        raise SizeMismatch(f"profiles {nu} and {mu} have different sizes")
    agg = refined_monotone_N_agg(g2, nu, mu, table)
    return agg * Fraction(1, aut(nu) * aut(mu))


# ---------------------------------------------------------------------------
# Simple double numbers: one-step cut-and-join transfer on disconnected
# values, then inclusion-exclusion down to connected ones.
# ---------------------------------------------------------------------------

def _multiset_splits(parts: Partition):
    """Ordered pairs of sub-multisets (as partitions) with union ``parts``;
    each distinct pair appears exactly once."""
    mult = sorted(multiplicities(parts).items())
    values = [v for v, _ in mult]
    counts = [c for _, c in mult]

    def rec(idx):
        if idx == len(values):
            yield (), ()
            return
        v, c = values[idx], counts[idx]
        for take in range(c + 1):
            for left, right in rec(idx + 1):
                yield (v,) * take + left, (v,) * (c - take) + right

    for left, right in rec(0):
        yield as_partition(left), as_partition(right)


def _simple_step(state: dict, ring: str) -> dict:
    """Apply the one-step cut-and-join transfer to a dict mapping end
    profiles to disconnected values.

    Per ordered split (a, b) of an entry w the merged profile gains
    w*m_w/2; per ordered pair (a, b) of entries the joined profile gains
    2CJ/2 * a*b*m_a*(m_b - [a==b]); twists add T/2 sum m(m-1) in place.
    """
    cj = (CJTPoly.monomial(1, 1, 1, 0) if ring == "cjt" else _B_HALF1PB)
    tw_unit = (_T if ring == "cjt" else _B_B)
    out: dict = {}

    def add(mu, val):
        if not val:
            return
        prev = out.get(mu)
        s = val if prev is None else prev + val
        out[mu] = s

    for lam, h in state.items():
        if not h:
            continue
        mult = multiplicities(lam)
        # cuts: one entry w of lam splits into (a, b)
        for w in mult:
            rest = list(lam)
            rest.remove(w)
            for a in range(1, w):
                mu2 = as_partition(tuple(rest) + (a, w - a))
                add(mu2, h * Fraction(w * mult[w], 2))
        # joins: two entries of lam merge
        for a in sorted(mult):
            for b in sorted(mult):
                m_ab = mult[a] * (mult[b] - (1 if a == b else 0))
                if not m_ab:
                    continue
                rest = list(lam)
                rest.remove(a)
                rest.remove(b)
                mu2 = as_partition(tuple(rest) + (a + b,))
                add(mu2, h * cj * (a * b * m_ab))
        # twists
        tw = sum(m * (m - 1) for m in lam)
        if tw:
            add(lam, h * tw_unit * Fraction(tw, 2))
    return out


_SIMPLE_DISC_MEMO: dict = {}


def _simple_disconnected_table(nu: Partition, kmax: int, ring: str) -> dict:
    """Disconnected values for all end profiles and all k <= kmax."""
    key = (nu, kmax, ring)
    hit = _SIMPLE_DISC_MEMO.get(key)
    if hit is not None:
        return hit
    if ring == "cjt":
        denom = 1
        for j, m in multiplicities(nu).items():
            denom *= (2 * j) ** m * factorial(m)
        start = CJTPoly.monomial(Fraction(1, denom), -len(nu), -len(nu), 0)
    else:
        denom = 1
        for j, m in multiplicities(nu).items():
            denom *= j ** m * factorial(m)
        start = BRat.const(Fraction(1, denom)) * _B_1PB ** (-len(nu))
    state = {nu: start}
    table = {(nu2, 0): val for nu2, val in state.items()}
    for k in range(1, kmax + 1):
        state = _simple_step(state, ring)
        for mu, val in state.items():
            table[(mu, k)] = val
    _SIMPLE_DISC_MEMO[key] = table
    return table


def simple_disconnected(k: int, nu, mu, ring: str = "cjt"):
    nu = as_partition(nu)
    mu = as_partition(mu)
    if sum(nu) != sum(mu):
        raise SizeMismatch(f"profiles {nu} and {mu} have different sizes")
    table = _simple_disconnected_table(nu, k, ring)
    zero = _CJT_ZERO if ring == "cjt" else BRat.zero()
    return table.get((mu, k), zero)


_SIMPLE_CONN_MEMO: dict = {}


def _simple_connected(k: int, nu: Partition, mu: Partition, ring: str):
    key = (k, nu, mu, ring)
    hit = _SIMPLE_CONN_MEMO.get(key)
    if hit is not None:
        return hit
    # Simple steps of separate components interleave freely, so the
    # connected/disconnected relation is exponential in k!-scaled
    # coordinates (unlike the monotone family, where the interleaving is
    # forced and the plain product formula applies).
    disc = {}
    for key2 in _sub_keys((nu, mu, k)):
        n1, m1, k1 = key2
        disc[key2] = simple_disconnected(k1, n1, m1, ring) * Fraction(1, factorial(k1))
    value = connected_from_disconnected(disc, (nu, mu, k)) * factorial(k)
    _SIMPLE_CONN_MEMO[key] = value
    return value


def refined_simple_h(k: int, nu, mu) -> CJTPoly:
    """Connected simple double number for k ordinary steps."""
    nu = as_partition(nu)
    mu = as_partition(mu)
    if sum(nu) != sum(mu):
        raise SizeMismatch(f"profiles {nu} and {mu} have different sizes")
    if k < 0:
        raise ValueError("k must be non-negative")
    return _simple_connected(k, nu, mu, "cjt")


def b_double_h(k: int, nu, mu) -> BRat:
    """Connected b-deformed simple double number, computed natively over
    rational functions in b (the cross-check target of specialize_b on
    the three-parameter route)."""
    nu = as_partition(nu)
    mu = as_partition(mu)
    if sum(nu) != sum(mu):
        raise SizeMismatch(f"profiles {nu} and {mu} have different sizes")
    if k < 0:
        raise ValueError("k must be non-negative")
    return _simple_connected(k, nu, mu, "brat")


# ---------------------------------------------------------------------------
# Single monotone numbers
# ---------------------------------------------------------------------------

_SINGLE_MEMO: dict = {}


def single_monotone_N(g2: int, m: Composition, _mark: int = 0) -> CJTPoly:
    """Connected single monotone number; independent of the marked part
    used to unroll the recursion (checked in tests)."""
    m = tuple(m)
    if any(x < 1 for x in m):
        raise ValueError("profile parts must be positive")
    return _single_N(g2, m, _mark)


def _single_N(g2: int, m: Composition, mark: int = 0) -> CJTPoly:
    if g2 < 0:
        return _CJT_ZERO
    q = len(m)
    d = sum(m)
    k = g2 - 2 + d + q
    if k < 0 or q == 0:
        return _CJT_ZERO
    if k == 0:
        return _inv_2cj(1) if (d == 1 and q == 1) else _CJT_ZERO
    key = (g2, tuple(sorted(m)))
    hit = _SINGLE_MEMO.get(key)
    if hit is not None:
        return hit

    r = mark % q
    m_r = m[r]
    rest = m[:r] + m[r + 1:]
    total = _CJT_ZERO

    for j in range(q - 1):
        merged = (m_r + rest[j],) + rest[:j] + rest[j + 1:]
        sub = _single_N(g2, merged)
        if sub:
            total = total + sub * (m_r + rest[j])

    if m_r > 1:
        sub = _single_N(g2 - 1, m)
        if sub:
            total = total + sub * (_T * (m_r * (m_r - 1)))

    for alpha in range(1, m_r):
        beta = m_r - alpha
        sub = _single_N(g2 - 2, (alpha, beta) + rest)
        if sub:
            total = total + sub * (_TWO_CJ * (alpha * beta))
        for g2a in range(g2 + 1):
            g2b = g2 - g2a
            for isize in range(len(rest) + 1):
                for I1 in combinations(range(len(rest)), isize):
                    I1set = set(I1)
                    part1 = (beta,) + tuple(rest[i] for i in I1)
                    part2 = (alpha,) + tuple(rest[i] for i in range(len(rest))
                                             if i not in I1set)
                    h1 = _single_N(g2a, part1)
                    if not h1:
                        continue
                    h2 = _single_N(g2b, part2)
                    if not h2:
                        continue
                    total = total + h1 * h2 * (_TWO_CJ * (alpha * beta))

    value = total * Fraction(1, m_r)
    _SINGLE_MEMO[key] = value
    return value


def single_monotone_check_mark_independence(g2: int, m: Composition) -> bool:
    """Recompute with a different marked part and compare."""
    m = tuple(m)
    base = _single_N(g2, m, 0)
    _SINGLE_MEMO.pop((g2, tuple(sorted(m))), None)
    other = _single_N(g2, m, len(m) - 1)
    return base == other


# ---------------------------------------------------------------------------
# Connected <-> disconnected transforms
# ---------------------------------------------------------------------------

ProfileKey = tuple[Partition, Partition, int]


def _sub_keys(key: ProfileKey):
    nu, mu, k = key
    out = set()
    for nu1, _ in _multiset_splits(nu):
        for mu1, _ in _multiset_splits(mu):
            if not nu1 or not mu1 or sum(nu1) != sum(mu1):
                continue
            for k1 in range(k + 1):
                out.add((nu1, mu1, k1))
    return out


def _series_mul(a: dict, b: dict, allowed: set) -> dict:
    out: dict = {}
    for (nu1, mu1, k1), v1 in a.items():
        for (nu2, mu2, k2), v2 in b.items():
            key = (as_partition(nu1 + nu2), as_partition(mu1 + mu2), k1 + k2)
            if key not in allowed:
                continue
            prod = v1 * v2
            prev = out.get(key)
            s = prod if prev is None else prev + prod
            out[key] = s
    return {k: v for k, v in out.items() if v}


def _require_table(table: dict, keys) -> dict:
    out = {}
    for key in keys:
        if key not in table:
            raise MissingSubprofile(f"table lacks value for {key}")
        out[key] = table[key]
    return out


def disconnected_from_connected(table: dict, key: ProfileKey):
    """Assemble the disconnected number at ``key`` from a table of
    connected values on all sub-profiles (exponential formula)."""
    key = (as_partition(key[0]), as_partition(key[1]), key[2])
    needed = _sub_keys(key)
    conn = _require_table(table, needed)
    allowed = needed | {key}
    series = {k: v for k, v in conn.items() if v}
    total = series.get(key)
    power = dict(series)
    i = 1
    while power:
        i += 1
        power = _series_mul(power, series, allowed)
        term = power.get(key)
        if term is not None:
            scaled = term * Fraction(1, factorial(i))
            total = scaled if total is None else total + scaled
    if total is None:
        return next(iter(conn.values())) * 0 if conn else _CJT_ZERO
    return total


def connected_from_disconnected(table: dict, key: ProfileKey):
    """Inverse transform (logarithm): connected number at ``key`` from a
    table of disconnected values on all sub-profiles."""
    key = (as_partition(key[0]), as_partition(key[1]), key[2])
    needed = _sub_keys(key)
    disc = _require_table(table, needed)
    allowed = needed | {key}
    series = {k: v for k, v in disc.items() if v}
    total = series.get(key)
    power = dict(series)
    i = 1
    while power:
        i += 1
        power = _series_mul(power, series, allowed)
        term = power.get(key)
        if term is not None:
            scaled = term * Fraction((-1) ** (i + 1), i)
            total = scaled if total is None else total + scaled
    if total is None:
        return next(iter(disc.values())) * 0 if disc else _CJT_ZERO
    return total
