"""Independent classical oracle: Jucys-Murphy action on the center of the
symmetric group algebra.

This module deliberately shares no machinery with the involution-based
action; it is the cross-check target for the CJ = 1/2, T = 0 limit.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .action import SymFunc
from .errors import BoundExceeded
from .linalg import charpoly, poly_from_roots
from .partitions import Partition, as_partition, content_sum, multiplicities, partitions_of

Perm = tuple[int, ...]          # images, 0-indexed
GAVector = dict[Perm, Fraction]

SCHUR_BOUND = 6


def cycle_type(sigma: Perm) -> Partition:
    seen = [False] * len(sigma)
    lengths = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        ln = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = sigma[x]
            ln += 1
        lengths.append(ln)
    return tuple(sorted(lengths, reverse=True))


@lru_cache(maxsize=None)
def class_elements(mu: Partition) -> tuple[Perm, ...]:
    n = sum(mu)
    if n > SCHUR_BOUND:
        raise BoundExceeded(f"n={n} exceeds classical bound {SCHUR_BOUND}")
    return tuple(s for s in permutations(range(n)) if cycle_type(s) == mu)


def class_size(mu: Partition) -> int:
    n = sum(mu)
    denom = 1
    for j, m in multiplicities(mu).items():
        denom *= j ** m * factorial(m)
    return factorial(n) // denom


def class_indicator(mu: Partition) -> GAVector:
    return {s: Fraction(1) for s in class_elements(as_partition(mu))}


def _apply_transposition(a: int, b: int, vec: GAVector) -> GAVector:
    """Left multiplication by the transposition (a b)."""
    out: GAVector = {}
    for sigma, coeff in vec.items():
        lst = list(sigma)
        lst[a], lst[b] = lst[b], lst[a]
        tau = tuple(lst)
        s = out.get(tau, Fraction(0)) + coeff
        if s:
            out[tau] = s
        else:
            out.pop(tau, None)
    return out


def _ga_add(a: GAVector, b: GAVector) -> GAVector:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, Fraction(0)) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def jm_multiply(i: int, vec: GAVector) -> GAVector:
    """X_i . v where X_i = sum_{k < i} (k i), indices 1-based."""
    out: GAVector = {}
    for k in range(i - 1):
        out = _ga_add(out, _apply_transposition(k, i - 1, vec))
    return out


def _apply_generator(gen: tuple[str, int], vec: GAVector, n: int) -> GAVector:
    kind, k = gen
    states: list[GAVector] = [vec] + [{} for _ in range(k)]
    if kind == "e":
        for q in range(2, n + 1):
            for j in range(min(k, q - 1), 0, -1):
                states[j] = _ga_add(states[j], jm_multiply(q, states[j - 1]))
    elif kind == "h":
        for q in range(2, n + 1):
            for j in range(1, k + 1):
                states[j] = _ga_add(states[j], jm_multiply(q, states[j - 1]))
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return states[k]


def apply_symfunc(F: SymFunc, vec: GAVector, n: int) -> GAVector:
    total: GAVector = {}
    for factors, coeff in F.terms:
        cur = vec
        for gen in reversed(factors):
            cur = _apply_generator(gen, cur, n)
        total = _ga_add(total, {k: v * coeff for k, v in cur.items()})
    return total


def inner0(mu: Partition) -> Fraction:
    """<C_mu, C_mu>_0 = prod_j 1/(j^{m_j} m_j!)."""
    denom = 1
    for j, m in multiplicities(as_partition(mu)).items():
        denom *= j ** m * factorial(m)
    return Fraction(1, denom)


def schur_structure_coefficient(F: SymFunc, mu, nu) -> Fraction:
    """<C_mu, F(X_1..X_n) C_nu>_0 in the classical group algebra."""
    mu = as_partition(mu)
    nu = as_partition(nu)
    n = sum(mu)
    if n != sum(nu):
        raise ValueError("profiles of different size")
    if n > SCHUR_BOUND:
        raise BoundExceeded(f"n={n} exceeds classical bound {SCHUR_BOUND}")
    image = apply_symfunc(F, class_indicator(nu), n)
    rep = class_elements(mu)[0]
    coeff = image.get(rep, Fraction(0))
    return coeff * class_size(mu) / factorial(n)


def action_matrix_coefficients(F: SymFunc, n: int):
    """(basis, M): column nu of F acting on class indicators, expanded in
    class indicators."""
    basis = partitions_of(n)
    cols = []
    for nu in basis:
        image = apply_symfunc(F, class_indicator(nu), n)
        col = []
        for mu in basis:
            rep = class_elements(mu)[0]
            col.append(image.get(rep, Fraction(0)))
        cols.append(col)
    return basis, [[cols[j][i] for j in range(len(basis))]
                   for i in range(len(basis))]


def schur_spectrum_check(n: int) -> bool:
    """Char poly of the classical e_1 action equals
    prod over partitions of (x - sum of contents)."""
    basis, mat = action_matrix_coefficients(SymFunc.e(1), n)
    expected = poly_from_roots([content_sum(lam, "schur") for lam in basis])
    return charpoly(mat) == expected
