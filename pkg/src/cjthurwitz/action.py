"""The cut/join/twist weighted action of symmetric functions on type
indicators via odd Jucys-Murphy operators.

Vectors in the involution module M_n are plain dicts mapping involutions
to CJTPoly coefficients; type vectors map partitions to CJTPoly.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import BoundExceeded, CentralityViolation, IndexOutOfRange, SizeMismatch
from .exact import CJ, C, CJTPoly, J, ONE, Poly1, T
from .linalg import charpoly, poly_from_roots
from .matchings import (FpfInvolution, StepKind, classify_step, conjugate,
                        involution_type, point, type_class)
from .partitions import Partition, as_partition, content_sum, multiplicities, partitions_of

MVector = dict[FpfInvolution, CJTPoly]
TypeVector = dict[Partition, CJTPoly]

ACT_BOUND = 6


class JMVariant(Enum):
    PRELIMINARY = "preliminary"
    REFINED = "refined"


# The refined variant substitutes J -> 1 and C -> C*J into the
# preliminary weights, so cuts carry C*J and joins carry 1.
_WEIGHTS = {
    JMVariant.PRELIMINARY: {StepKind.CUT: C, StepKind.JOIN: J, StepKind.TWIST: T},
    JMVariant.REFINED: {StepKind.CUT: CJ, StepKind.JOIN: ONE, StepKind.TWIST: T},
}


# ---------------------------------------------------------------------------
# Symmetric functions as combinations of e/h monomials
# ---------------------------------------------------------------------------

class SymFunc:
    """Linear combination of monomials in the generators e_k and h_k.

    Power sums p_k for k >= 2 are rewritten into the e-basis via Newton's
    identities at construction time; p_1 is e_1.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        # terms: iterable of (Fraction, tuple of ("e"|"h", k))
        merged: dict[tuple, Fraction] = {}
        for coeff, factors in terms:
            factors = tuple(sorted(factors))
            c = merged.get(factors, Fraction(0)) + Fraction(coeff)
            if c:
                merged[factors] = c
            else:
                merged.pop(factors, None)
        self.terms = tuple(sorted(merged.items()))

    @classmethod
    def e(cls, k: int) -> "SymFunc":
        if k < 1:
            raise ValueError("generator index must be >= 1")
        return cls([(1, (("e", k),))])

    @classmethod
    def h(cls, k: int) -> "SymFunc":
        if k < 1:
            raise ValueError("generator index must be >= 1")
        return cls([(1, (("h", k),))])

    @classmethod
    def p(cls, k: int) -> "SymFunc":
        if k < 1:
            raise ValueError("generator index must be >= 1")
        if k == 1:
            return cls.e(1)
        # Newton: p_k = (-1)^(k-1) k e_k + sum_{i=1}^{k-1} (-1)^(k-1+i) e_{k-i} p_i
        out = cls([((-1) ** (k - 1) * k, (("e", k),))])
        for i in range(1, k):
            out = out + cls([((-1) ** (k - 1 + i), (("e", k - i),))]) * cls.p(i)
        return out

    @classmethod
    def one(cls) -> "SymFunc":
        return cls([(1, ())])

    def __add__(self, other: "SymFunc") -> "SymFunc":
        return SymFunc(list(self.terms_list()) + list(other.terms_list()))

    def __mul__(self, other) -> "SymFunc":
        if isinstance(other, (int, Fraction)):
            return SymFunc([(c * other, f) for f, c in self.terms])
        out = []
        for f1, c1 in self.terms:
            for f2, c2 in other.terms:
                out.append((c1 * c2, f1 + f2))
        return SymFunc(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SymFunc":
        out = SymFunc.one()
        for _ in range(n):
            out = out * self
        return out

    def terms_list(self):
        return [(c, f) for f, c in self.terms]

    def key(self) -> tuple:
        return self.terms

    def degree(self) -> int:
        return max((sum(k for _, k in f) for f, _ in self.terms), default=0)

    def text(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for factors, coeff in self.terms:
            name = "*".join(f"{g}{k}" for g, k in factors) or "1"
            bits.append(name if coeff == 1 else f"{coeff}*{name}")
        return " + ".join(bits)

    def __repr__(self):
        return f"SymFunc({self.text()})"


def parse_symfunc(text: str) -> SymFunc:
    """Parse product specs like 'e2', 'h1*h2', 'p1^3'."""
    out = SymFunc.one()
    for factor in text.split("*"):
        factor = factor.strip()
        if "^" in factor:
            base, exp = factor.split("^")
            power = int(exp)
        else:
            base, power = factor, 1
        kind, idx = base[0], int(base[1:])
        if kind not in ("e", "h", "p"):
            raise ValueError(f"unknown generator {base!r}")
        gen = {"e": SymFunc.e, "h": SymFunc.h, "p": SymFunc.p}[kind](idx)
        out = out * gen ** power
    return out


# ---------------------------------------------------------------------------
# Jucys-Murphy application
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _jm_arrows(rho: FpfInvolution, k: int) -> tuple[tuple[StepKind, FpfInvolution], ...]:
    """All (kind, (j k).rho) for points j strictly below the point of k."""
    pk = point(k)
    out = []
    for j in range(pk):
        out.append((classify_step(rho, j, pk), conjugate(rho, j, pk)))
    return tuple(out)


def jm_apply(k: int, vec: MVector, variant: JMVariant) -> MVector:
    """Apply the k-th odd Jucys-Murphy operator to a vector of M_n."""
    if not vec:
        return {}
    n = len(next(iter(vec))) // 2
    if k < 2 or k > n:
        raise IndexOutOfRange(f"Jucys-Murphy index {k} outside 2..{n}")
    weights = _WEIGHTS[variant]
    out: MVector = {}
    for rho, coeff in vec.items():
        for kind, rho2 in _jm_arrows(rho, k):
            add = coeff * weights[kind]
            prev = out.get(rho2)
            s = add if prev is None else prev + add
            if s:
                out[rho2] = s
            else:
                out.pop(rho2, None)
    return out


def _apply_generator(gen: tuple[str, int], vec: MVector, n: int,
                     variant: JMVariant) -> MVector:
    """Apply e_k or h_k evaluated on the JM operators X_2..X_n."""
    kind, k = gen
    zero: MVector = {}
    states: list[MVector] = [vec] + [dict(zero) for _ in range(k)]
    if kind == "e":
        for q in range(2, n + 1):
            for j in range(min(k, q - 1), 0, -1):
                step = jm_apply(q, states[j - 1], variant)
                states[j] = _mv_add(states[j], step)
    elif kind == "h":
        for q in range(2, n + 1):
            for j in range(1, k + 1):
                step = jm_apply(q, states[j - 1], variant)
                states[j] = _mv_add(states[j], step)
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return states[k]


def _mv_add(a: MVector, b: MVector) -> MVector:
    out = dict(a)
    for rho, coeff in b.items():
        prev = out.get(rho)
        s = coeff if prev is None else prev + coeff
        if s:
            out[rho] = s
        else:
            out.pop(rho, None)
    return out


def _mv_scale(a: MVector, c) -> MVector:
    return {rho: coeff * c for rho, coeff in a.items()} if c else {}


def indicator(lam: Partition) -> MVector:
    return {rho: ONE for rho in type_class(as_partition(lam))}


def project_types(vec: MVector, n: int) -> TypeVector:
    """Collapse an M_n vector constant on type classes to type coordinates.

    Raises CentralityViolation when coefficients differ inside a class or
    when a class is only partially supported.
    """
    grouped: dict[Partition, dict] = {}
    for rho, coeff in vec.items():
        grouped.setdefault(involution_type(rho), {})[rho] = coeff
    out: TypeVector = {}
    for lam, members in grouped.items():
        cls = type_class(lam)
        values = set()
        for rho in cls:
            values.add(members.get(rho, CJTPoly.zero()))
            if len(values) > 1:
                raise CentralityViolation(
                    f"coefficients differ on the type class {lam}")
        coeff = values.pop()
        if coeff:
            out[lam] = coeff
    return out


_ACT_CACHE: dict[tuple, TypeVector] = {}


def act(F: SymFunc, lam, variant: JMVariant, bound: int = ACT_BOUND) -> TypeVector:
    """Evaluate F on the Jucys-Murphy operators, apply to the type
    indicator of lam, check class-constancy, and return type coordinates."""
    lam = as_partition(lam)
    n = sum(lam)
    if n > bound:
        raise BoundExceeded(f"|lambda| = {n} exceeds bound {bound}")
    key = (F.key(), lam, variant)
    cached = _ACT_CACHE.get(key)
    if cached is not None:
        return cached
    total: TypeVector = {}
    for factors, coeff in F.terms:
        vec = indicator(lam)
        for gen in reversed(factors):
            vec = _apply_generator(gen, vec, n, variant)
        tv = project_types(vec, n)
        for mu, val in tv.items():
            s = total.get(mu, CJTPoly.zero()) + val * coeff
            if s:
                total[mu] = s
            else:
                total.pop(mu, None)
    _ACT_CACHE[key] = total
    return total


# ---------------------------------------------------------------------------
# Inner product and structure coefficients
# ---------------------------------------------------------------------------

def inner_product(mu, nu) -> CJTPoly:
    """<D_mu, D_nu> = delta * prod_j 1/((2j*C*J)^{m_j} m_j!)."""
    mu = as_partition(mu)
    nu = as_partition(nu)
    if mu != nu:
        return CJTPoly.zero()
    denom = 1
    for j, m in multiplicities(mu).items():
        denom *= (2 * j) ** m * factorial(m)
    ell = len(mu)
    return CJTPoly.monomial(Fraction(1, denom), -ell, -ell, 0)


def structure_coefficient(F: SymFunc, mu, nu, bound: int = ACT_BOUND) -> CJTPoly:
    """<D_mu, F(X)(D_nu)> with the C*J-weighted join variant."""
    mu = as_partition(mu)
    nu = as_partition(nu)
    if sum(mu) != sum(nu):
        raise SizeMismatch(f"{mu} and {nu} partition different integers")
    tv = act(F, nu, JMVariant.REFINED, bound)
    coeff = tv.get(mu)
    if coeff is None:
        return CJTPoly.zero()
    return coeff * inner_product(mu, mu)


def action_matrix(F: SymFunc, n: int, variant: JMVariant,
                  bound: int = ACT_BOUND):
    """Matrix of F acting on the type-indicator basis.

    Returns (basis, M) with basis the partitions of n in ascending tuple
    order and M[i][j] the coefficient of D_{basis[i]} in F . D_{basis[j]}.
    """
    basis = partitions_of(n)
    cols = [act(F, lam, variant, bound) for lam in basis]
    return basis, [[cols[j].get(basis[i], CJTPoly.zero())
                    for j in range(len(basis))] for i in range(len(basis))]


def commutator_on_indicator(k: int, l: int, lam) -> MVector:
    """[X_k, X_l](D_lam) with preliminary weights; zero iff they commute."""
    lam = as_partition(lam)
    v = indicator(lam)
    a = jm_apply(k, jm_apply(l, v, JMVariant.PRELIMINARY), JMVariant.PRELIMINARY)
    b = jm_apply(l, jm_apply(k, v, JMVariant.PRELIMINARY), JMVariant.PRELIMINARY)
    return _mv_add(a, _mv_scale(b, Fraction(-1)))


# ---------------------------------------------------------------------------
# Spectrum probes
# ---------------------------------------------------------------------------

def zonal_spectrum_check(n: int) -> bool:
    """Char poly of the e_1 action at C*J = T = 1 equals
    prod over partitions of (x - sum of zonal contents)."""
    from .exact import specialize_point
    basis, mat = action_matrix(SymFunc.e(1), n, JMVariant.REFINED)
    num = [[specialize_point(entry, 1, 1) for entry in row] for row in mat]
    expected = poly_from_roots([content_sum(lam, "zonal") for lam in basis])
    return charpoly(num) == expected


def jack_spectrum_report(n: int) -> dict:
    """Exploratory: does the e_1 action at C*J = (1+b)/2, T = b have
    eigenvalues given by b-content sums?  Reported, not asserted."""
    basis, mat = action_matrix(SymFunc.e(1), n, JMVariant.REFINED)
    half = Fraction(1, 2)

    def to_poly(entry: CJTPoly) -> Poly1:
        out = Poly1()
        for (eCJ, eJ, eT), coeff in entry.terms.items():
            assert eCJ == eJ and eCJ >= 0
            term = Poly1.const(coeff) * Poly1((half, half)) ** eCJ * Poly1.b() ** eT
            out = out + term
        return out

    pm = [[to_poly(entry) for entry in row] for row in mat]
    got = charpoly(pm, zero=Poly1(), one=Poly1.const(1))
    roots = [content_sum(lam, "jack") for lam in basis]
    expected = poly_from_roots(roots, zero=Poly1(), one=Poly1.const(1))
    return {
        "n": n,
        "matches_b_content_spectrum": got == expected,
        "charpoly": [p.text() for p in got],
        "expected": [p.text() for p in expected],
    }
