"""Tropical enumerators: sweep covers for the b-deformed double numbers,
recursion-tree covers for single monotone numbers, DOT export, and the
piecewise-polynomiality probe.

A cover is a left-to-right sweep trace over live weighted edges.  Edges
carry creation-order ids; the in-ends occupy ids 0..p-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoundExceeded, FitFailure
from .exact import BRat, Poly1
from .partitions import as_partition, aut
from .recursions import b_double_h

_1PB = BRat(Poly1((1, 1)))
_B = BRat(Poly1((0, 1)))

SWEEP_BOUND = 8

# Event records:
#   ("cut",   branch, edge, ((id_a, w_a), (id_b, w_b)))
#   ("join",  branch, (e1, e2), (new_id, w), closes_cycle)
#   ("twist", branch, edge, (new_id, w))


@dataclass(frozen=True)
class TropCover:
    in_ends: tuple[tuple[int, int], ...]
    events: tuple
    out_ends: tuple[tuple[int, int], ...]
    genus: int
    wieners: int
    internal_weights: tuple[int, ...]
    # per-event component degrees; used by the single monotone family
    degrees: tuple[int, ...] = ()

    def weights_of(self) -> dict[int, int]:
        out = {eid: w for eid, w in self.in_ends}
        for ev in self.events:
            if ev[0] == "cut":
                for eid, w in ev[3]:
                    out[eid] = w
            else:
                out[ev[3][0]] = ev[3][1]
        return out

    def check_balanced(self) -> bool:
        w = self.weights_of()
        for ev in self.events:
            if ev[0] == "cut":
                (_, wa), (_, wb) = ev[3]
                if wa + wb != w[ev[2]]:
                    return False
            elif ev[0] == "join":
                e1, e2 = ev[2]
                if w[e1] + w[e2] != ev[3][1]:
                    return False
            else:
                if w[ev[2]] != ev[3][1]:
                    return False
        return True

    def genus_from_graph(self) -> int:
        """First Betti number: internal edges minus vertices plus one."""
        if not self.events:
            return 0
        return len(self.internal_weights) - len(self.events) + 1


def _cover_multiplicity(cover: TropCover) -> BRat:
    """Quotient-cover multiplicity: (1+b)^(g-1) times the product of
    internal edge weights, times (b/2)(w-1) per twist vertex, halved once
    per equal-weight wiener."""
    mult = _1PB ** (cover.genus - 1)
    acc = 1
    for w in cover.internal_weights:
        acc *= w
    mult = mult * acc
    for ev in cover.events:
        if ev[0] == "twist":
            w = ev[3][1]
            mult = mult * _B * Fraction(w - 1, 2)
    if cover.wieners:
        mult = mult * Fraction(1, 2 ** cover.wieners)
    return mult


def sweep_b_double(k: int, nu, mu, bound: int = SWEEP_BOUND):
    """Enumerate connected sweep covers with k branch points from profile
    nu to profile mu and total them with quotient multiplicities divided
    by the end automorphisms.

    Returns (total, covers) with covers a list of (TropCover, BRat); the
    total equals the b-deformed double number.
    """
    nu = as_partition(nu)
    mu = as_partition(mu)
    n = sum(nu)
    if n != sum(mu):
        raise BoundExceeded("profiles of different size")
    if n > bound or k > 6:
        raise BoundExceeded(f"n={n}, k={k} beyond the sweep bound")
    if k == 0:
        if len(nu) == 1 and nu == mu:
            cover = TropCover(in_ends=((0, nu[0]),), events=(),
                              out_ends=((0, nu[0]),), genus=0, wieners=0,
                              internal_weights=())
            total = BRat.const(Fraction(1, nu[0])) / _1PB
            return total, [(cover, total)]
        return BRat.zero(), []

    mu_sorted = tuple(sorted(mu))
    covers: dict = {}

    # state: live: id -> weight; comp: id -> component label;
    # twin: id -> twin id for equal-weight cut siblings, both untouched
    def dfs(live, comp, twin, events, next_id, cycles, depth):
        remaining = k - depth
        if abs(len(live) - len(mu)) > remaining:
            return
        if depth == k:
            if tuple(sorted(live.values())) != mu_sorted:
                return
            if len({comp[e] for e in live}) != 1:
                return
            _finish(live, events, cycles)
            return
        items = sorted(live.items())
        for eid, w in items:
            tw = twin.get(eid)
            if tw is not None and tw in live and tw < eid:
                continue  # canonical twin representative
            # cut
            for wa in range(w - 1, 0, -1):
                wb = w - wa
                if wa < wb:
                    break
                live2 = dict(live)
                del live2[eid]
                a, b = next_id, next_id + 1
                live2[a], live2[b] = wa, wb
                comp2 = dict(comp)
                root = comp2.pop(eid)
                comp2[a] = comp2[b] = root
                twin2 = dict(twin)
                if wa == wb:
                    twin2[a], twin2[b] = b, a
                ev = ("cut", depth, eid, ((a, wa), (b, wb)))
                dfs(live2, comp2, twin2, events + [ev], next_id + 2,
                    cycles, depth + 1)
            # twist (weight-1 twists carry multiplicity zero)
            if w >= 2:
                live2 = dict(live)
                del live2[eid]
                live2[next_id] = w
                comp2 = dict(comp)
                comp2[next_id] = comp2.pop(eid)
                ev = ("twist", depth, eid, (next_id, w))
                dfs(live2, comp2, dict(twin), events + [ev], next_id + 1,
                    cycles, depth + 1)
        for i in range(len(items)):
            e1, w1 = items[i]
            t1 = twin.get(e1)
            if t1 is not None and t1 in live and t1 < e1:
                continue
            for jdx in range(i + 1, len(items)):
                e2, w2 = items[jdx]
                t2 = twin.get(e2)
                if t2 is not None and t2 in live and t2 < e2 and t2 != e1:
                    continue
                live2 = dict(live)
                del live2[e1], live2[e2]
                live2[next_id] = w1 + w2
                comp2 = dict(comp)
                r1, r2 = comp2.pop(e1), comp2.pop(e2)
                closes = r1 == r2
                for key in comp2:
                    if comp2[key] == r2:
                        comp2[key] = r1
                comp2[next_id] = r1
                ev = ("join", depth, (e1, e2), (next_id, w1 + w2), closes)
                dfs(live2, comp2, dict(twin), events + [ev], next_id + 1,
                    cycles + (1 if closes else 0), depth + 1)

    def _finish(live, events, cycles):
        in_ends = tuple((i, w) for i, w in enumerate(nu))
        out_ends = tuple(sorted(live.items()))
        born_at_cut: dict[int, tuple] = {}
        consumed = set()
        for ev in events:
            if ev[0] == "cut":
                consumed.add(ev[2])
                for eid, _ in ev[3]:
                    born_at_cut[eid] = ev
            elif ev[0] == "twist":
                consumed.add(ev[2])
            else:
                consumed.update(ev[2])
        wieners = 0
        for ev in events:
            if ev[0] != "join":
                continue
            e1, e2 = ev[2]
            b1, b2 = born_at_cut.get(e1), born_at_cut.get(e2)
            if b1 is not None and b1 is b2:
                ws = dict(b1[3])
                if ws[e1] == ws[e2]:
                    wieners += 1
        weights = {eid: w for eid, w in in_ends}
        for ev in events:
            if ev[0] == "cut":
                for eid, w in ev[3]:
                    weights[eid] = w
            else:
                weights[ev[3][0]] = ev[3][1]
        internal = tuple(sorted(w for eid, w in weights.items()
                                if eid >= len(nu) and eid in consumed))
        cover = TropCover(in_ends=in_ends, events=tuple(events),
                          out_ends=out_ends, genus=cycles,
                          wieners=wieners, internal_weights=internal)
        covers[(cover.events, cover.out_ends)] = cover

    live0 = {i: w for i, w in enumerate(nu)}
    comp0 = {i: i for i in range(len(nu))}
    dfs(live0, comp0, {}, [], len(nu), 0, 0)

    norm = Fraction(1, aut(nu) * aut(mu))
    total = BRat.zero()
    stream = []
    for cover in covers.values():
        mult = _cover_multiplicity(cover) * norm
        if mult:
            stream.append((cover, mult))
            total = total + mult
    return total, stream


# ---------------------------------------------------------------------------
# Single monotone covers via the recursion tree
# ---------------------------------------------------------------------------
#
# The unroll follows the line of the largest element: every event of a
# connected run touches that line, and a split into two components hands
# the largest element of each part to the sub-runs.  Orders of events in
# different components are never compared, which realizes the count over
# equivalence classes of covers.  Trace events (all referencing line ids):
#
#   ("merge", d, marked, other, new_id, w)
#   ("twist", d, marked, new_id, w)
#   ("split", d, marked, (a_id, wa), (b_id, wb))            redundant
#   ("spawn", d, marked, (a_id, wa), (b_id, wb), sub_trace) separate
#
# d is the degree of the component ahead of the event.


def single_monotone_tropical(g2: int, m, bound: int = 6):
    """Covers for the single monotone family with left line weights m and
    unit right ends.  Returns (total, covers) where covers is a list of
    (TropCover, BRat); multiplicities are recursion shares summed per
    canonical trace and the total equals the b-specialized connected
    number."""
    m = tuple(m)
    if sum(m) > bound or g2 > 6:
        raise BoundExceeded(f"|m|={sum(m)}, g2={g2} beyond the bound")

    def expand(g2_, lines, next_id):
        """Yield (trace, weight, next_id) full expansions of one component.

        ``lines`` is a list of (id, weight) with the marked line first.
        """
        q = len(lines)
        d = sum(w for _, w in lines)
        k = g2_ - 2 + d + q
        if g2_ < 0 or k < 0:
            return
        if k == 0:
            if d == 1 and q == 1:
                yield ((), BRat.const(1) / _1PB, next_id)
            return
        mid, m_r = lines[0]
        rest = lines[1:]
        # merge the marked line with a later one
        for j, (oid, ow) in enumerate(rest):
            new = (next_id, m_r + ow)
            coeff = BRat.const(Fraction(m_r + ow, m_r))
            child = [new] + rest[:j] + rest[j + 1:]
            for trace, wt, nid in expand(g2_, child, next_id + 1):
                yield ((("merge", d, mid, oid) + new,) + trace,
                       wt * coeff, nid)
        # twist the marked line
        if m_r > 1:
            new = (next_id, m_r)
            coeff = _B * (m_r - 1)
            for trace, wt, nid in expand(g2_ - 1, [new] + rest, next_id + 1):
                yield ((("twist", d, mid) + new,) + trace, wt * coeff, nid)
        # split the marked line
        for alpha in range(1, m_r):
            beta = m_r - alpha
            coeff = _1PB * Fraction(alpha * beta, m_r)
            a, b = (next_id, alpha), (next_id + 1, beta)
            # redundant: both halves stay on this component
            for trace, wt, nid in expand(g2_ - 2, [a, b] + rest, next_id + 2):
                yield ((("split", d, mid, a, b),) + trace, wt * coeff, nid)
            # separate: the beta half leaves with a subset of the lines
            for g2a in range(g2_ + 1):
                g2b = g2_ - g2a
                for mask in range(1 << len(rest)):
                    away = [rest[i] for i in range(len(rest))
                            if mask >> i & 1]
                    stay = [rest[i] for i in range(len(rest))
                            if not mask >> i & 1]
                    for sub, sub_w, nid1 in expand(g2a, [b] + away,
                                                   next_id + 2):
                        ev = ("spawn", d, mid, a, b, sub)
                        for trace, wt, nid2 in expand(g2b, [a] + stay, nid1):
                            yield ((ev,) + trace,
                                   wt * sub_w * coeff, nid2)

    lines0 = [(i, w) for i, w in enumerate(sorted(m, reverse=True))]
    grouped: dict = {}
    for trace, wt, _ in expand(g2, lines0, len(m)):
        key = _canonical_trace(trace)
        prev = grouped.get(key)
        grouped[key] = wt if prev is None else prev + wt

    total = BRat.zero()
    stream = []
    for key in sorted(grouped, key=repr):
        wt = grouped[key]
        cover = _trace_to_cover(m, key)
        stream.append((cover, wt))
        total = total + wt
    return total, stream


def _canonical_trace(trace, mapping=None, next_new=None):
    """Relabel created line ids in event order, splits with the heavier
    half first; sub-traces canonicalize recursively.  Ties between equal
    split halves resolve to the lexicographically smaller serialization."""
    if mapping is None:
        mapping = {}
        next_new = [10 ** 6]

    def rename(eid):
        return mapping.get(eid, eid)

    out = []
    for idx, ev in enumerate(trace):
        kind = ev[0]
        if kind == "merge":
            _, d, a, b, new, w = ev
            pair = tuple(sorted((rename(a), rename(b))))
            nid = next_new[0]
            next_new[0] += 1
            mapping[new] = nid
            out.append(("merge", d, pair, nid, w))
        elif kind == "twist":
            _, d, a, new, w = ev
            nid = next_new[0]
            next_new[0] += 1
            mapping[new] = nid
            out.append(("twist", d, rename(a), nid, w))
        elif kind in ("split", "spawn"):
            d, a = ev[1], ev[2]
            (ida, wa), (idb, wb) = ev[3], ev[4]
            rest = trace[idx + 1:]
            variants = []
            orders = [((ida, wa), (idb, wb))]
            if wa == wb:
                orders.append(((idb, wb), (ida, wa)))
            elif wa < wb:
                orders = [((idb, wb), (ida, wa))]
            for (id1, w1), (id2, w2) in orders:
                mp = dict(mapping)
                nn = [next_new[0]]
                mp[id1] = nn[0]
                mp[id2] = nn[0] + 1
                nn[0] += 2
                if kind == "split":
                    head = ("split", d, rename(a), (mp[id1], w1),
                            (mp[id2], w2))
                else:
                    sub = _canonical_trace(ev[5], mp, nn)
                    head = ("spawn", d, rename(a), (mp[id1], w1),
                            (mp[id2], w2), sub)
                tail = _canonical_trace(rest, mp, nn)
                variants.append(tuple(out) + (head,) + tail)
            return min(variants, key=repr)
        else:
            raise AssertionError(f"unknown event {ev!r}")
    return tuple(out)


def _trace_to_cover(m, trace) -> TropCover:
    """Flatten a canonical recursion trace into a TropCover; spawned
    components are laid out depth first after their spawn event."""
    in_ends = tuple((i, w) for i, w in enumerate(sorted(m, reverse=True)))
    weights = {i: w for i, w in in_ends}
    events = []
    degrees = []
    consumed = set()
    fresh = [len(m)]
    relabel: dict[int, int] = {i: i for i in range(len(m))}

    def new_id(old):
        nid = fresh[0]
        fresh[0] += 1
        relabel[old] = nid
        return nid

    def walk(tr):
        for ev in tr:
            kind = ev[0]
            if kind == "merge":
                _, d, pair, new, w = ev
                a, b = (relabel[x] for x in pair)
                nid = new_id(new)
                weights[nid] = w
                consumed.update((a, b))
                events.append(("join", len(events), tuple(sorted((a, b))),
                               (nid, w), False))
                degrees.append(d)
            elif kind == "twist":
                _, d, a, new, w = ev
                ra = relabel[a]
                nid = new_id(new)
                weights[nid] = w
                consumed.add(ra)
                events.append(("twist", len(events), ra, (nid, w)))
                degrees.append(d)
            elif kind in ("split", "spawn"):
                d, a = ev[1], ev[2]
                (id1, w1), (id2, w2) = ev[3], ev[4]
                ra = relabel[a]
                n1, n2 = new_id(id1), new_id(id2)
                weights[n1], weights[n2] = w1, w2
                consumed.add(ra)
                events.append(("cut", len(events), ra,
                               ((n1, w1), (n2, w2))))
                degrees.append(d)
                if kind == "spawn":
                    walk(ev[5])

    walk(trace)
    out_ends = tuple(sorted((eid, w) for eid, w in weights.items()
                            if eid not in consumed))
    internal = tuple(sorted(w for eid, w in weights.items()
                            if eid in consumed and eid >= len(m)))
    genus = (len(internal) - len(events) + 1) if events else 0
    # count cycle-closing joins independently via union-find over lines
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
            return False
        return True

    closing = 0
    for ev in events:
        if ev[0] == "join":
            a, b = ev[2]
            closed = union(a, b)
            union(a, ev[3][0])
            if closed:
                closing += 1
        elif ev[0] == "twist":
            union(ev[2], ev[3][0])
        else:
            union(ev[2], ev[3][0][0])
            union(ev[2], ev[3][1][0])
    assert closing == genus, (closing, genus)
    return TropCover(in_ends=in_ends, events=tuple(events),
                     out_ends=out_ends, genus=genus, wieners=0,
                     internal_weights=internal, degrees=tuple(degrees))


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------

def export_dot(cover: TropCover, name: str = "cover") -> str:
    """A DOT digraph of a sweep cover: twist vertices are diamonds, edge
    labels carry id and weight, branch points give the left-right order."""
    weights = cover.weights_of()
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    source: dict[int, str] = {}
    for eid, w in cover.in_ends:
        node = f"in{eid}"
        lines.append(f'  {node} [shape=plaintext, label="in{eid} w={w}"];')
        source[eid] = node
    for idx, ev in enumerate(cover.events):
        kind = ev[0]
        node = f"ev{idx}"
        shape = "diamond" if kind == "twist" else "circle"
        lines.append(f'  {node} [shape={shape}, label="{kind}"];')
        if kind == "cut":
            eid = ev[2]
            lines.append(
                f'  {source[eid]} -> {node} [label="id={eid} w={weights[eid]}"];')
            for ceid, _ in ev[3]:
                source[ceid] = node
        elif kind == "join":
            for eid in ev[2]:
                lines.append(
                    f'  {source[eid]} -> {node} [label="id={eid} w={weights[eid]}"];')
            source[ev[3][0]] = node
        else:
            eid = ev[2]
            lines.append(
                f'  {source[eid]} -> {node} [label="id={eid} w={weights[eid]}"];')
            source[ev[3][0]] = node
    for eid, w in cover.out_ends:
        node = f"out{eid}"
        lines.append(f'  {node} [shape=plaintext, label="out{eid} w={w}"];')
        lines.append(f'  {source[eid]} -> {node} [label="id={eid} w={w}"];')
    lines.append("}")
    return "\n".join(lines)


_DOT_EDGE = re.compile(r"(\w+) -> (\w+) \[label=\"id=(\d+) w=(\d+)\"\];")
_DOT_NODE = re.compile(r"(ev\d+) \[shape=(\w+), label=\"(\w+)\"\];")


def parse_dot_events(text: str):
    """Recover (kind, consumed ids, created ids) per event from an
    exported DOT graph; the serializer round-trip check."""
    kinds = {}
    for mt in _DOT_NODE.finditer(text):
        kinds[mt.group(1)] = mt.group(3)
    consumed: dict[str, set[int]] = {}
    created: dict[str, set[int]] = {}
    for mt in _DOT_EDGE.finditer(text):
        tail, head, eid = mt.group(1), mt.group(2), int(mt.group(3))
        if head.startswith("ev"):
            consumed.setdefault(head, set()).add(eid)
        if tail.startswith("ev"):
            created.setdefault(tail, set()).add(eid)
    out = []
    for idx in range(len(kinds)):
        node = f"ev{idx}"
        out.append((kinds[node], tuple(sorted(consumed.get(node, ()))),
                    tuple(sorted(created.get(node, ())))))
    return out


def cover_event_summary(cover: TropCover):
    """(kind, consumed ids, created ids) per event, for round-trip tests."""
    out = []
    for ev in cover.events:
        if ev[0] == "cut":
            out.append(("cut", (ev[2],), tuple(sorted(e for e, _ in ev[3]))))
        elif ev[0] == "join":
            out.append(("join", tuple(sorted(ev[2])), (ev[3][0],)))
        else:
            out.append(("twist", (ev[2],), (ev[3][0],)))
    return out


# ---------------------------------------------------------------------------
# Piecewise polynomiality probe
# ---------------------------------------------------------------------------

def _lagrange_fit(points):
    """Interpolating polynomial coefficients (ascending) through points."""
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for t, c in enumerate(basis):
                new[t + 1] += c
                new[t] -= xj * c
            basis = new
            denom *= (xi - xj)
        scale = yi / denom
        for t, c in enumerate(basis):
            coeffs[t] += scale * c
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def polynomiality_probe(k: int = 2, samples=tuple(range(2, 9)),
                        holdout: int = 2, profile=None) -> dict:
    """Fit (1+b) times the family value coefficient-wise as polynomials in
    the profile parameter; verify the degree bound and exact prediction on
    held-out samples.  Raises FitFailure on any mismatch."""
    if profile is None:
        profile = lambda m: ((m,), (m,))
    samples = list(samples)
    if holdout < 1 or holdout >= len(samples) - 1:
        raise ValueError("need at least two fit points and one holdout")
    polys = {}
    for m in samples:
        nu, mu = profile(m)
        val = b_double_h(k, nu, mu) * _1PB
        polys[m] = val.as_polynomial()
    nu0, mu0 = profile(samples[0])
    g2 = k + 2 - len(nu0) - len(mu0)
    degree_bound = g2 - 1 + len(nu0) + len(mu0)
    max_b = max(p.degree() for p in polys.values())
    fit_pts = samples[:-holdout]
    test_pts = samples[-holdout:]
    fitted = {}
    for bi in range(max_b + 1):
        pts = [(Fraction(mm), polys[mm].coeffs[bi]
                if bi < len(polys[mm].coeffs) else Fraction(0))
               for mm in fit_pts]
        coeffs = _lagrange_fit(pts)
        if len(coeffs) - 1 > degree_bound:
            raise FitFailure(
                f"b^{bi} coefficient needs degree {len(coeffs) - 1} "
                f"> bound {degree_bound}")
        for mm in test_pts:
            want = (polys[mm].coeffs[bi] if bi < len(polys[mm].coeffs)
                    else Fraction(0))
            got = sum((c * Fraction(mm) ** t for t, c in enumerate(coeffs)),
                      Fraction(0))
            if got != want:
                raise FitFailure(f"b^{bi} coefficient misfits at m={mm}")
        fitted[bi] = coeffs
    return {"degree_bound": degree_bound,
            "fitted": {bi: [str(c) for c in cs] for bi, cs in fitted.items()},
            "samples": samples, "holdout": test_pts, "ok": True}
