"""Brute-force ground truth: enumerate weighted step sequences acting on a
canonical involution, with optional monotonicity and transitivity, and
group monotone runs into sweep-cover signatures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BoundExceeded, MultiplicityMismatch, NonMonotone
from .exact import CJTPoly
from .matchings import (FpfInvolution, StepKind, canonical_involution,
                        classify_step, conjugate, involution_type, point)
from .partitions import Composition, Partition, as_partition

ORACLE_BOUND = 6


@dataclass(frozen=True)
class Factorization:
    """A step sequence acting on a starting involution.

    ``steps`` holds (p, q) with q the acted element (unbarred) and p a
    point index strictly below the point of q.
    """
    rho: FpfInvolution
    steps: tuple[tuple[int, int], ...]
    kinds: tuple[StepKind, ...]

    def weight(self) -> CJTPoly:
        c = sum(1 for k in self.kinds if k is StepKind.CUT)
        j = sum(1 for k in self.kinds if k is StepKind.JOIN)
        t = sum(1 for k in self.kinds if k is StepKind.TWIST)
        return CJTPoly.monomial(1, c, j, t)

    def counts(self) -> tuple[int, int, int]:
        c = sum(1 for k in self.kinds if k is StepKind.CUT)
        j = sum(1 for k in self.kinds if k is StepKind.JOIN)
        t = sum(1 for k in self.kinds if k is StepKind.TWIST)
        return c, j, t


def _uf_find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _uf_union(parent: list[int], a: int, b: int) -> None:
    ra, rb = _uf_find(parent, a), _uf_find(parent, b)
    if ra != rb:
        parent[ra] = rb


def _base_components(rho: FpfInvolution) -> list[int]:
    n2 = len(rho)
    parent = list(range(n2))
    for x in range(0, n2, 2):
        _uf_union(parent, x, x + 1)       # tau edges
    for x in range(n2):
        _uf_union(parent, x, rho[x])      # rho edges
    return parent


def _is_transitive(parent: list[int]) -> bool:
    root = _uf_find(parent, 0)
    return all(_uf_find(parent, x) == root for x in range(len(parent)))


def enumerate_factorizations(k: int, nu: Composition, mu=None,
                             monotone: bool = True, transitive: bool = True,
                             bound: int = ORACLE_BOUND):
    """All length-k step sequences from the canonical involution of nu,
    optionally monotone and transitive, optionally filtered to end type
    mu.  Returns (total weight, list of Factorization)."""
    nu = tuple(nu)
    n = sum(nu)
    if n > bound or k > 6:
        raise BoundExceeded(f"n={n}, k={k} beyond the enumeration bound")
    mu_p = as_partition(mu) if mu is not None else None
    rho0 = canonical_involution(nu)
    out: list[Factorization] = []
    total = CJTPoly.zero()

    def dfs(rho, parent, depth, qmin, steps, kinds):
        nonlocal total
        if depth == k:
            if mu_p is not None and involution_type(rho) != mu_p:
                return
            if transitive and not _is_transitive(list(parent)):
                return
            f = Factorization(rho0, tuple(steps), tuple(kinds))
            out.append(f)
            total_add(f)
            return
        qstart = qmin if monotone else 1
        for q in range(max(qstart, 2), n + 1):
            pq = point(q)
            for p in range(pq):
                kind = classify_step(rho, p, pq)
                rho2 = conjugate(rho, p, pq)
                parent2 = list(parent)
                _uf_union(parent2, p, pq)
                steps.append((p, q))
                kinds.append(kind)
                dfs(rho2, parent2, depth + 1, q, steps, kinds)
                steps.pop()
                kinds.pop()

    def total_add(f):
        nonlocal total
        total = total + f.weight()

    dfs(rho0, _base_components(rho0), 0, 1, [], [])
    return total, out


@lru_cache(maxsize=None)
def bulk_weighted_counts(nu: Composition, kmax: int, monotone: bool = True,
                         bound: int = ORACLE_BOUND):
    """One DFS pass collecting, for every k <= kmax, the weighted counts
    bucketed by (k, end type, transitive flag) as CJTPoly values."""
    nu = tuple(nu)
    n = sum(nu)
    if n > bound or kmax > 6:
        raise BoundExceeded(f"n={n}, kmax={kmax} beyond the enumeration bound")
    rho0 = canonical_involution(nu)
    buckets: dict[tuple, dict[tuple[int, int, int], int]] = {}

    def record(depth, rho, parent, counts):
        mu = involution_type(rho)
        trans = _is_transitive(list(parent))
        key = (depth, mu, trans)
        buckets.setdefault(key, {})
        c = buckets[key]
        c[counts] = c.get(counts, 0) + 1

    def dfs(rho, parent, depth, qmin, counts):
        record(depth, rho, parent, counts)
        if depth == kmax:
            return
        for q in range(max(qmin, 2), n + 1):
            pq = point(q)
            for p in range(pq):
                kind = classify_step(rho, p, pq)
                rho2 = conjugate(rho, p, pq)
                parent2 = list(parent)
                _uf_union(parent2, p, pq)
                add = tuple(c + (1 if kind is sk else 0)
                            for c, sk in zip(counts, (StepKind.CUT,
                                                      StepKind.JOIN,
                                                      StepKind.TWIST)))
                dfs(rho2, parent2, depth + 1, q if monotone else 1, add)

    dfs(rho0, _base_components(rho0), 0, 1, (0, 0, 0))
    out: dict[tuple, CJTPoly] = {}
    for (depth, mu, trans), cnts in buckets.items():
        out[(depth, mu, trans)] = CJTPoly(
            {(c, j, t): Fraction(m) for (c, j, t), m in cnts.items()})
    return out


def oracle_weight(nu: Composition, mu, k: int, monotone: bool = True,
                  transitive: bool = True) -> CJTPoly:
    """Weighted count of step sequences of length k from the canonical
    involution of nu ending in type mu.  Without the transitivity flag the
    count includes non-transitive sequences as well."""
    nu = tuple(nu)
    mu = as_partition(mu)
    counts = bulk_weighted_counts(nu, k, monotone)
    total = counts.get((k, mu, True), CJTPoly.zero())
    if not transitive:
        total = total + counts.get((k, mu, False), CJTPoly.zero())
    return total


def normalization(nu: Composition, mu) -> CJTPoly:
    """1 / (C^{l(mu)} prod_j (2jJ)^{n_j} n_j!) for counts started from one
    fixed representative of type nu."""
    from math import factorial

    from .partitions import multiplicities
    mu = as_partition(mu)
    denom = 1
    for j, m in multiplicities(as_partition(nu)).items():
        denom *= (2 * j) ** m * factorial(m)
    return CJTPoly.monomial(Fraction(1, denom), -len(mu), -len(as_partition(nu)), 0)


# ---------------------------------------------------------------------------
# Sweep-cover signatures of monotone runs
# ---------------------------------------------------------------------------

def _prefix_counter(nu: Composition, q: int) -> int:
    """q minus the largest partial sum of nu strictly below q."""
    acc = 0
    for part in nu:
        if acc + part >= q:
            return q - acc
        acc += part
    return q - acc


def _components_points(rho: FpfInvolution) -> list[frozenset[int]]:
    from .matchings import components
    return components(rho)


def cover_signature(f: Factorization, nu: Composition):
    """Deterministic sweep signature of a monotone factorization.

    Live quotient edges carry creation-order ids; each step consumes the
    edges it acts on and creates fresh ones, recording kind, the edge that
    carried the acted element (the bold edge), and the reduced counter.
    """
    last_q = 0
    for _, q in f.steps:
        if q < last_q:
            raise NonMonotone("signature requires a monotone factorization")
        last_q = q

    rho = f.rho
    comps = _components_points(rho)
    live: dict[int, dict] = {}
    by_points: dict[frozenset, int] = {}
    next_id = 0

    # in-end ids ordered by the smallest point of each component, which for
    # the canonical involution matches the composition order of nu
    for comp in sorted(comps, key=min):
        live[next_id] = {"w": len(comp) // 2, "points": comp, "bold": False}
        by_points[comp] = next_id
        next_id += 1

    events = []
    for (p, q), kind in zip(f.steps, f.kinds):
        s_pt = point(q)
        c = _prefix_counter(nu, q)
        rho2 = conjugate(rho, p, s_pt)
        comps2 = set(_components_points(rho2))
        comps1 = set(by_points.keys())

        def edge_of(pt):
            for pts, eid in by_points.items():
                if pt in pts:
                    return eid
            raise AssertionError("point not on any live edge")

        bold_edge = edge_of(s_pt)
        if kind is StepKind.TWIST:
            consumed = [bold_edge]
            created_sets = [live[bold_edge]["points"]]
        elif kind is StepKind.CUT:
            consumed = [bold_edge]
            created_sets = sorted(comps2 - comps1, key=lambda s: s_pt not in s)
        else:  # JOIN
            other = edge_of(p)
            consumed = sorted({bold_edge, other})
            created_sets = list(comps2 - comps1)

        for old in consumed:
            by_points.pop(live[old]["points"], None)
            live.pop(old, None)
        new_ids = []
        for pts in created_sets:
            live[next_id] = {"w": len(pts) // 2, "points": pts}
            by_points[pts] = next_id
            new_ids.append(next_id)
            next_id += 1
        events.append((kind.value, tuple(consumed), bold_edge, c,
                       tuple((i, live[i]["w"]) for i in new_ids)))
        rho = rho2

    ends = tuple(sorted((eid, rec["w"]) for eid, rec in live.items()))
    return ("sig", tuple(nu), tuple(events), ends)


def signature_multiplicity(sig) -> CJTPoly:
    """Multiplicity of a sweep cover from its signature alone:
    the product of non-bold edge weights (out-ends excluded) times C per
    cut, J per join, and T*(w - c + 1) per twist."""
    _, nu, events, ends = sig
    consumed_bold = set()
    created_weights: dict[int, int] = {}
    p = len(nu)
    for i in range(p):
        created_weights[i] = nu[i]
    for kind, consumed, bold_edge, c, created in events:
        consumed_bold.add(bold_edge)
        for eid, w in created:
            created_weights[eid] = w
    end_ids = {eid for eid, _ in ends}
    mult = CJTPoly.const(1)
    for eid, w in created_weights.items():
        if eid in consumed_bold or eid in end_ids:
            continue
        mult = mult * w
    for kind, consumed, bold_edge, c, created in events:
        if kind == "cut":
            mult = mult * CJTPoly.monomial(1, 1, 0, 0)
        elif kind == "join":
            mult = mult * CJTPoly.monomial(1, 0, 1, 0)
        else:
            w = created[0][1]
            mult = mult * CJTPoly.monomial(w - c + 1, 0, 0, 1)
    return mult


def group_by_signature(k: int, nu: Composition, mu,
                       bound: int = ORACLE_BOUND):
    """Group monotone transitive factorizations by sweep signature.

    Returns dict signature -> (grouped weight, number of factorizations).
    """
    _, facs = enumerate_factorizations(k, nu, mu, monotone=True,
                                       transitive=True, bound=bound)
    groups: dict = {}
    for f in facs:
        sig = cover_signature(f, nu)
        w, c = groups.get(sig, (CJTPoly.zero(), 0))
        groups[sig] = (w + f.weight(), c + 1)
    return groups


def verify_cover_multiplicity(sig, grouped_weight: CJTPoly) -> dict:
    """Check a grouped weight against the signature-only multiplicity."""
    expected = signature_multiplicity(sig)
    ok = expected == grouped_weight
    report = {"ok": ok,
              "from_signature": expected.text(),
              "grouped": grouped_weight.text()}
    if not ok:
        raise MultiplicityMismatch(str(report))
    return report
