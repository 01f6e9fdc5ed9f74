"""Exact coefficient arithmetic.

Everything is built on `fractions.Fraction`; no floating point is used
anywhere in the package.  Four layers live here:

* ``CJTPoly``   -- sparse Laurent polynomials in the three weights C, J, T,
* ``Poly1``     -- dense univariate polynomials in b over the rationals,
* ``BRat``      -- reduced univariate rational functions in b,
* ``TruncSeries`` -- truncated series in t, u and the p-variables with
  ``CJTPoly`` coefficients.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .errors import ExpOfNonzeroConstant, UnbalancedCJ

Scalar = int | Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact scalar, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# CJTPoly
# ---------------------------------------------------------------------------

class CJTPoly:
    """Sparse Laurent polynomial in C, J, T over the rationals.

    Terms map exponent triples ``(eC, eJ, eT)`` to nonzero Fractions.
    Exponents of C and J may be negative (normalizations divide by powers
    of C and J); the twist exponent eT is never negative.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int], Scalar] | None = None):
        clean: dict[tuple[int, int, int], Fraction] = {}
        if terms:
            for key, val in terms.items():
                c = _as_fraction(val)
                if c:
                    eC, eJ, eT = key
                    if eT < 0:
                        raise ValueError("negative twist exponent")
                    clean[(eC, eJ, eT)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "CJTPoly":
        return cls()

    @classmethod
    def monomial(cls, coeff: Scalar, eC: int = 0, eJ: int = 0, eT: int = 0) -> "CJTPoly":
        return cls({(eC, eJ, eT): coeff})

    @classmethod
    def const(cls, coeff: Scalar) -> "CJTPoly":
        return cls.monomial(coeff)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CJTPoly.const(other)
        if not isinstance(other, CJTPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "CJTPoly":
        if isinstance(other, (int, Fraction)):
            other = CJTPoly.const(other)
        out = dict(self.terms)
        for key, val in other.terms.items():
            s = out.get(key, _ZERO) + val
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        res = CJTPoly.__new__(CJTPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "CJTPoly":
        res = CJTPoly.__new__(CJTPoly)
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __sub__(self, other) -> "CJTPoly":
        if isinstance(other, (int, Fraction)):
            other = CJTPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "CJTPoly":
        return (-self) + other

    def __mul__(self, other) -> "CJTPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return CJTPoly.zero()
            res = CJTPoly.__new__(CJTPoly)
            res.terms = {k: v * c for k, v in self.terms.items()}
            return res
        out: dict[tuple[int, int, int], Fraction] = {}
        for (a1, b1, c1), v1 in self.terms.items():
            for (a2, b2, c2), v2 in other.terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                s = out.get(key, _ZERO) + v1 * v2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        res = CJTPoly.__new__(CJTPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CJTPoly":
        if n < 0:
            if len(self.terms) == 1:
                ((eC, eJ, eT), v), = self.terms.items()
                if eT != 0 and n < 0:
                    # T has no inverse in the Laurent ring used here.
                    raise ValueError("cannot invert a T-carrying monomial")
                return CJTPoly.monomial(Fraction(1) / v ** (-n), eC * n, eJ * n, 0)
            raise ValueError("only monomials in C, J can be inverted")
        out = CJTPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    # -- serialization ------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lex order on (eC, eJ, eT)."""
        return sorted(self.terms.items(),
                      key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (eC, eJ, eT), coeff in self.sorted_terms():
            factors = []
            if coeff != 1 or (eC, eJ, eT) == (0, 0, 0):
                factors.append(str(coeff))
            for sym, e in (("C", eC), ("J", eJ), ("T", eT)):
                if e == 1:
                    factors.append(sym)
                elif e:
                    factors.append(f"{sym}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __str__ = text

    def __repr__(self) -> str:
        return f"CJTPoly({self.text()})"

    def to_json(self) -> list[dict]:
        return [{"eC": k[0], "eJ": k[1], "eT": k[2],
                 "num": v.numerator, "den": v.denominator}
                for k, v in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "CJTPoly":
        return cls({(d["eC"], d["eJ"], d["eT"]): Fraction(d["num"], d["den"])
                    for d in data})


_ZERO = Fraction(0)

C = CJTPoly.monomial(1, 1, 0, 0)
J = CJTPoly.monomial(1, 0, 1, 0)
T = CJTPoly.monomial(1, 0, 0, 1)
CJ = CJTPoly.monomial(1, 1, 1, 0)
ONE = CJTPoly.const(1)


def cjt_add(a: CJTPoly, b: CJTPoly) -> CJTPoly:
    return a + b


def cjt_mul(a: CJTPoly, b: CJTPoly) -> CJTPoly:
    return a * b


def is_cj_balanced(p: CJTPoly) -> bool:
    """True when every term has equal C and J exponents."""
    return all(eC == eJ for (eC, eJ, _) in p.terms)


def _require_balanced(p: CJTPoly, prefactor: tuple[int, int] | None) -> CJTPoly:
    if prefactor is not None:
        a, b = prefactor
        p = p * CJTPoly.monomial(1, -a, -b, 0)
    for (eC, eJ, _) in p.terms:
        if eC != eJ:
            raise UnbalancedCJ(
                f"term with C^{eC} J^{eJ} cannot be written in terms of C*J")
    return p


def specialize_b(p: CJTPoly, prefactor: tuple[int, int] | None = None) -> "BRat":
    """Substitute C*J -> (1+b)/2 and T -> b.

    The polynomial must depend on C, J only through the product C*J; an
    optional ``prefactor`` (a, b) divides out a declared C^a J^b factor
    first.  Raises UnbalancedCJ otherwise.
    """
    p = _require_balanced(p, prefactor)
    half_1pb = BRat(Poly1((Fraction(1, 2), Fraction(1, 2))))
    b = BRat(Poly1((Fraction(0), Fraction(1))))
    out = BRat.zero()
    for (eCJ, _, eT), coeff in p.terms.items():
        term = BRat.const(coeff) * half_1pb ** eCJ * b ** eT
        out = out + term
    return out


def specialize_point(p: CJTPoly, cj: Scalar, t: Scalar) -> Fraction:
    """Evaluate a balanced polynomial at C*J = cj, T = t."""
    p = _require_balanced(p, None)
    cj = _as_fraction(cj)
    t = _as_fraction(t)
    out = Fraction(0)
    for (eCJ, _, eT), coeff in p.terms.items():
        out += coeff * cj ** eCJ * t ** eT
    return out


# ---------------------------------------------------------------------------
# Univariate polynomials and rational functions in b
# ---------------------------------------------------------------------------

class Poly1:
    """Dense univariate polynomial in b over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cl = [(c if isinstance(c, Fraction) else Fraction(c)) for c in coeffs]
        while cl and not cl[-1]:
            cl.pop()
        self.coeffs = tuple(cl)

    @classmethod
    def const(cls, c: Scalar) -> "Poly1":
        return cls((c,))

    @classmethod
    def b(cls) -> "Poly1":
        return cls((0, 1))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly1.const(other)
        if not isinstance(other, Poly1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly1.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [_ZERO] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Poly1(a)

    __radd__ = __add__

    def __neg__(self):
        return Poly1(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly1.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly1(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Poly1()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly1(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly1.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Poly1") -> tuple["Poly1", "Poly1"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [_ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        dlead = other.coeffs[-1]
        dn = len(other.coeffs)
        while len(rem) >= dn:
            coef = rem[-1] / dlead
            pos = len(rem) - dn
            quo[pos] = coef
            for i, c in enumerate(other.coeffs):
                rem[pos + i] -= coef * c
            while rem and not rem[-1]:
                rem.pop()
            if not rem:
                break
        return Poly1(quo), Poly1(rem)

    def gcd(self, other: "Poly1") -> "Poly1":
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        if a and a.coeffs[-1] != 1:
            a = a * (Fraction(1) / a.coeffs[-1])
        return a

    def derivative(self) -> "Poly1":
        return Poly1(tuple((i + 1) * c for i, c in enumerate(self.coeffs[1:])))

    def eval(self, x: Scalar) -> Fraction:
        x = _as_fraction(x)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("b" if c == 1 else f"{c}*b")
            else:
                parts.append(f"b^{i}" if c == 1 else f"{c}*b^{i}")
        return " + ".join(parts)

    __str__ = text

    def __repr__(self):
        return f"Poly1({self.text()})"


class BRat:
    """Reduced rational function in b: numerator / denominator with the
    denominator monic of positive leading coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly1, den: Poly1 | None = None):
        den = den if den is not None else Poly1.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly1(), Poly1.const(1)
            return
        g = num.gcd(den)
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
        lead = den.coeffs[-1]
        num = num * (Fraction(1) / lead)
        den = den * (Fraction(1) / lead)
        self.num, self.den = num, den

    @classmethod
    def zero(cls) -> "BRat":
        return cls(Poly1())

    @classmethod
    def const(cls, c: Scalar) -> "BRat":
        return cls(Poly1.const(c))

    @classmethod
    def b(cls) -> "BRat":
        return cls(Poly1.b())

    @classmethod
    def one_plus_b(cls) -> "BRat":
        return cls(Poly1((1, 1)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BRat.const(other)
        if not isinstance(other, BRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BRat.const(other)
        return BRat(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = BRat.__new__(BRat)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BRat.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BRat.const(other)
        return BRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BRat.const(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return BRat(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int):
        if n < 0:
            return BRat.const(1) / self ** (-n)
        out = BRat.const(1)
        for _ in range(n):
            out = out * self
        return out

    def eval(self, x: Scalar) -> Fraction:
        d = self.den.eval(x)
        if not d:
            raise ZeroDivisionError(f"pole at b = {x}")
        return self.num.eval(x) / d

    def as_polynomial(self) -> Poly1:
        """The numerator when the denominator is 1; error otherwise."""
        if self.den != Poly1.const(1):
            raise ValueError(f"{self.text()} is not a polynomial in b")
        return self.num

    def text(self) -> str:
        if self.den == Poly1.const(1):
            return self.num.text()
        return f"({self.num.text()}) / ({self.den.text()})"

    __str__ = text

    def __repr__(self):
        return f"BRat({self.text()})"

    def to_json(self) -> dict:
        return {"num": [[c.numerator, c.denominator] for c in self.num.coeffs],
                "den": [[c.numerator, c.denominator] for c in self.den.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "BRat":
        return cls(Poly1(Fraction(n, d) for n, d in data["num"]),
                   Poly1(Fraction(n, d) for n, d in data["den"]))


# ---------------------------------------------------------------------------
# Truncated series in t, u and the p-variables
# ---------------------------------------------------------------------------

PKey = tuple[int, ...]          # p-monomial as a partition, sorted descending
SKey = tuple[int, int, PKey]    # (t-degree, u-degree, p-monomial)


class TruncSeries:
    """Series in t, u, p_1, p_2, ... truncated at total (t, u)-degree D.

    Coefficients are CJTPoly values.  p-monomials are encoded as
    partitions since the p-variables commute.
    """

    __slots__ = ("order", "terms")

    def __init__(self, order: int,
                 terms: Mapping[SKey, CJTPoly] | None = None):
        self.order = order
        self.terms: dict[SKey, CJTPoly] = {}
        if terms:
            for key, val in terms.items():
                t, u, pk = key
                if t < 0 or u < 0:
                    raise ValueError("negative t or u degree")
                if t + u > order:
                    continue
                if val:
                    self.terms[(t, u, tuple(sorted(pk, reverse=True)))] = val

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls(order)

    @classmethod
    def const(cls, order: int, c) -> "TruncSeries":
        poly = c if isinstance(c, CJTPoly) else CJTPoly.const(c)
        return cls(order, {(0, 0, ()): poly})

    def coefficient(self, t: int, u: int, pk: PKey = ()) -> CJTPoly:
        return self.terms.get((t, u, tuple(sorted(pk, reverse=True))),
                              CJTPoly.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def _store(self, out: dict, key: SKey, val: CJTPoly):
        if key[0] + key[1] > self.order or not val:
            return
        prev = out.get(key)
        s = prev + val if prev is not None else val
        if s:
            out[key] = s
        else:
            out.pop(key, None)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        if self.order != other.order:
            raise ValueError("incompatible truncation orders")
        out = dict(self.terms)
        res = TruncSeries(self.order)
        res.terms = out
        for key, val in other.terms.items():
            res._store(out, key, val)
        return res

    def __neg__(self):
        res = TruncSeries(self.order)
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction, CJTPoly)):
            c = other if isinstance(other, CJTPoly) else CJTPoly.const(other)
            res = TruncSeries(self.order)
            res.terms = {}
            for k, v in self.terms.items():
                val = v * c
                if val:
                    res.terms[k] = val
            return res
        if self.order != other.order:
            raise ValueError("incompatible truncation orders")
        res = TruncSeries(self.order)
        out: dict[SKey, CJTPoly] = {}
        for (t1, u1, p1), v1 in self.terms.items():
            for (t2, u2, p2), v2 in other.terms.items():
                if t1 + t2 + u1 + u2 > self.order:
                    continue
                key = (t1 + t2, u1 + u2,
                       tuple(sorted(p1 + p2, reverse=True)))
                res._store(out, key, v1 * v2)
        res.terms = out
        return res

    __rmul__ = __mul__

    # -- operators ----------------------------------------------------------

    def diff_p(self, i: int) -> "TruncSeries":
        res = TruncSeries(self.order)
        out: dict[SKey, CJTPoly] = {}
        for (t, u, pk), v in self.terms.items():
            mult = pk.count(i)
            if not mult:
                continue
            lst = list(pk)
            lst.remove(i)
            res._store(out, (t, u, tuple(lst)), v * mult)
        res.terms = out
        return res

    def mul_p(self, i: int) -> "TruncSeries":
        res = TruncSeries(self.order)
        out: dict[SKey, CJTPoly] = {}
        for (t, u, pk), v in self.terms.items():
            key = (t, u, tuple(sorted(pk + (i,), reverse=True)))
            res._store(out, key, v)
        res.terms = out
        return res

    def diff_t(self) -> "TruncSeries":
        res = TruncSeries(self.order)
        out: dict[SKey, CJTPoly] = {}
        for (t, u, pk), v in self.terms.items():
            if t:
                res._store(out, (t - 1, u, pk), v * t)
        res.terms = out
        return res

    def mul_t(self) -> "TruncSeries":
        res = TruncSeries(self.order)
        out: dict[SKey, CJTPoly] = {}
        for (t, u, pk), v in self.terms.items():
            res._store(out, (t + 1, u, pk), v)
        res.terms = out
        return res

    def diff_u(self) -> "TruncSeries":
        res = TruncSeries(self.order)
        out: dict[SKey, CJTPoly] = {}
        for (t, u, pk), v in self.terms.items():
            if u:
                res._store(out, (t, u - 1, pk), v * u)
        res.terms = out
        return res

    def mul_u(self) -> "TruncSeries":
        res = TruncSeries(self.order)
        out: dict[SKey, CJTPoly] = {}
        for (t, u, pk), v in self.terms.items():
            res._store(out, (t, u + 1, pk), v)
        res.terms = out
        return res

    def exp(self) -> "TruncSeries":
        if (0, 0, ()) in self.terms:
            raise ExpOfNonzeroConstant("exp needs a zero constant term")
        out = TruncSeries.const(self.order, 1)
        power = TruncSeries.const(self.order, 1)
        for k in range(1, self.order + 1):
            power = power * self
            if power.is_zero():
                break
            out = out + power * Fraction(1, factorial(k))
        return out

    def log(self) -> "TruncSeries":
        """Inverse of exp: requires constant term exactly 1."""
        const = self.terms.get((0, 0, ()))
        if const != CJTPoly.const(1):
            raise ValueError("log needs constant term 1")
        x = self - TruncSeries.const(self.order, 1)
        out = TruncSeries.zero(self.order)
        power = TruncSeries.const(self.order, 1)
        for k in range(1, self.order + 1):
            power = power * x
            if power.is_zero():
                break
            out = out + power * Fraction((-1) ** (k + 1), k)
        return out

    def text(self, limit: int = 20) -> str:
        items = sorted(self.terms.items())[:limit]
        bits = []
        for (t, u, pk), v in items:
            mono = []
            if t:
                mono.append(f"t^{t}" if t > 1 else "t")
            if u:
                mono.append(f"u^{u}" if u > 1 else "u")
            for part in pk:
                mono.append(f"p{part}")
            head = "*".join(mono) if mono else "1"
            bits.append(f"({v.text()})*{head}")
        more = "" if len(self.terms) <= limit else f" + ... [{len(self.terms)} terms]"
        return (" + ".join(bits) or "0") + more

    def __repr__(self):
        return f"TruncSeries(order={self.order}, {len(self.terms)} terms)"


def poly_json_dumps(p: CJTPoly) -> str:
    return json.dumps(p.to_json(), separators=(",", ":"))
