"""Constraint checks on the single monotone partition function: the
family of first-order differential constraints, the evolution equation,
and expansions of the printed closed forms against recursion output.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import BoundExceeded
from .exact import CJTPoly, TruncSeries
from .partitions import multiplicities, partitions_of
from .recursions import single_monotone_N

_INV_2CJ = CJTPoly.monomial(Fraction(1, 2), -1, -1, 0)
_2CJ = CJTPoly.monomial(2, 1, 1, 0)
_T = CJTPoly.monomial(1, 0, 0, 1)

TOPREC_BOUND = 8

CLOSED_FORMS = ("H01", "Hhalf1", "H02", "U03", "Uhalf2", "U11")


# ---------------------------------------------------------------------------
# Partition function
# ---------------------------------------------------------------------------

def _aut_mult(lam) -> int:
    out = 1
    from math import factorial
    for m in multiplicities(lam).values():
        out *= factorial(m)
    return out


@lru_cache(maxsize=None)
def build_partition_function(order: int) -> TruncSeries:
    """The connected generating series: coefficient of t^|m| u^(g2-2+|m|+q)
    p_m is the connected single monotone number over the part symmetries."""
    if order > TOPREC_BOUND:
        raise BoundExceeded(f"order {order} exceeds bound {TOPREC_BOUND}")
    terms = {}
    for size in range(1, order + 1):
        for lam in partitions_of(size):
            if not lam:
                continue
            q = len(lam)
            g2 = 0
            while True:
                udeg = g2 - 2 + size + q
                if udeg < 0:
                    g2 += 1
                    continue
                if size + udeg > order:
                    break
                val = single_monotone_N(g2, lam)
                if val:
                    key = (size, udeg, lam)
                    terms[key] = val * Fraction(1, _aut_mult(lam))
                g2 += 1
    return TruncSeries(order, terms)


@lru_cache(maxsize=None)
def exp_partition_function(order: int) -> TruncSeries:
    return build_partition_function(order).exp()


# ---------------------------------------------------------------------------
# First-order constraints
# ---------------------------------------------------------------------------

def virasoro_residual(i: int, order: int,
                      series: TruncSeries | None = None) -> TruncSeries:
    """u times the i-th constraint operator applied to exp of the
    partition function; expected to vanish identically.

    The operator is -(i/u) d/dp_i + 2CJ sum_{a+b=i} ab d2/dp_a dp_b
    + sum_a (i+a) p_a d/dp_{i+a} + i(i-1) T d/dp_i + t delta_{i,1}/(2uCJ);
    multiplying through by u keeps every term polynomial in u.
    """
    if i < 1:
        raise ValueError("constraint index must be >= 1")
    H0 = series if series is not None else exp_partition_function(order)
    res = H0.diff_p(i) * (-i)
    acc = TruncSeries.zero(order)
    for a in range(1, i):
        b = i - a
        acc = acc + H0.diff_p(a).diff_p(b) * (a * b)
    res = res + (acc * _2CJ).mul_u()
    acc = TruncSeries.zero(order)
    for a in range(1, order + 1):
        term = H0.diff_p(i + a)
        if term.is_zero():
            continue
        acc = acc + term.mul_p(a) * (i + a)
    res = res + acc.mul_u()
    if i > 1:
        res = res + (H0.diff_p(i) * (_T * (i * (i - 1)))).mul_u()
    if i == 1:
        res = res + H0.mul_t() * _INV_2CJ
    return res


def laplace_beltrami_residual(order: int) -> TruncSeries:
    """Difference of the two sides of the evolution equation
    (t d/dt - t p_1/(2CJ)) H = 2u BL(H), with H the exp series."""
    H0 = exp_partition_function(order)
    lhs = H0.diff_t().mul_t() - (H0.mul_t().mul_p(1) * _INV_2CJ)
    rhs = TruncSeries.zero(order)
    for i in range(1, order + 1):
        for j in range(1, order + 1 - i):
            term = H0.diff_p(i + j)
            if term.is_zero():
                continue
            rhs = rhs + term.mul_p(i).mul_p(j) * (i + j)
            d2 = H0.diff_p(i).diff_p(j)
            if not d2.is_zero():
                rhs = rhs + d2.mul_p(i + j) * (CJTPoly.monomial(2 * i * j, 1, 1, 0))
        di = H0.diff_p(i)
        if i > 1 and not di.is_zero():
            rhs = rhs + di.mul_p(i) * (_T * (i * (i - 1)))
    return lhs - rhs.mul_u()


def laplace_beltrami_check(order: int) -> bool:
    return laplace_beltrami_residual(order).is_zero()


# ---------------------------------------------------------------------------
# Closed-form coefficient tables
# ---------------------------------------------------------------------------

def _catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def _sqrt_series(order: int) -> list[Fraction]:
    """(1 - 4w)^(1/2) as a series in w."""
    out = [Fraction(1)] + [Fraction(-2) * _catalan(k - 1)
                           for k in range(1, order + 1)]
    return out


def _z_series(order: int) -> list[Fraction]:
    """(1 - 4w)^(-1/2) = sum binom(2k, k) w^k."""
    return [Fraction(comb(2 * k, k)) for k in range(order + 1)]


def _ser_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if not x:
            continue
        for j, y in enumerate(b[:order + 1 - i]):
            if y:
                out[i + j] += x * y
    return out


def _ser_pow(a, n, order):
    out = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(n):
        out = _ser_mul(out, a, order)
    return out


def _ser_inv(a, order):
    if not a[0]:
        raise ZeroDivisionError("series has no constant term")
    out = [Fraction(1) / a[0]] + [Fraction(0)] * order
    for k in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            if j < len(a):
                acc += a[j] * out[k - j]
        out[k] = -acc / a[0]
    return out


def _biv_mul(a, b, order):
    out = [[Fraction(0)] * (order + 1) for _ in range(order + 1)]
    for i in range(order + 1):
        for j in range(order + 1 - i):
            x = a[i][j]
            if not x:
                continue
            for k in range(order + 1 - i):
                for l in range(order + 1 - j - k):
                    y = b[k][l]
                    if y:
                        out[i + k][j + l] += x * y
    return out


def _biv_from_z(order, fz, fw):
    """Outer product grid of two univariate series in wx and wy."""
    return [[fz[i] * fw[j] if i < len(fz) and j < len(fw) else Fraction(0)
             for j in range(order + 1)] for i in range(order + 1)]


def _biv_inv(a, order):
    if not a[0][0]:
        raise ZeroDivisionError("bivariate series has no constant term")
    out = [[Fraction(0)] * (order + 1) for _ in range(order + 1)]
    out[0][0] = Fraction(1) / a[0][0]
    for s in range(1, 2 * order + 1):
        for i in range(max(0, s - order), min(s, order) + 1):
            j = s - i
            if j > order:
                continue
            acc = Fraction(0)
            for k in range(i + 1):
                for l in range(j + 1):
                    if k == 0 and l == 0:
                        continue
                    if k < len(a) and l < len(a[0]) and a[k][l]:
                        acc += a[k][l] * out[i - k][j - l]
            out[i][j] = -acc / a[0][0]
    return out


def closed_form_coeffs(tag: str, order: int) -> dict:
    """Coefficient table of a printed closed form.

    Keys are profile tuples (m,), (m1, m2) or (m1, m2, m3); each value is
    the CJTPoly coefficient that multiplies the monomial u^.. t^.. at the
    matching grading of the generating series.
    """
    if tag not in CLOSED_FORMS:
        raise ValueError(f"unknown closed form {tag!r}")
    if order > TOPREC_BOUND:
        raise BoundExceeded(f"order {order} exceeds bound {TOPREC_BOUND}")
    inv_cj = CJTPoly.monomial(1, -1, -1, 0)
    out: dict = {}
    if tag == "H01":
        # (1 - sqrt(1-4w)) / (u CJ x): x^(m-1) coefficient 2 Cat(m-1)/CJ
        for m in range(1, order + 1):
            out[(m,)] = inv_cj * (2 * _catalan(m - 1))
        return out
    if tag == "Hhalf1":
        # T (1 - 2w - sqrt(1-4w)) / (4 (1-4w) CJ x)
        sq = _sqrt_series(order + 1)
        num = [Fraction(0)] * (order + 2)
        num[0] = 1 - sq[0]
        num[1] = Fraction(-2) - sq[1]
        for k in range(2, order + 2):
            num[k] = -sq[k]
        geo = [Fraction(4) ** k for k in range(order + 2)]  # 1/(1-4w)
        s = _ser_mul(num, geo, order + 1)
        for m in range(1, order + 1):
            val = s[m] / 4
            if val:
                out[(m,)] = inv_cj * _T * val
        return out
    if tag == "H02":
        # 2 t^2 u^2 (w z)^3 / (CJ (w+z)^2) with z, w the two square roots
        zx = _z_series(order)
        zy = _z_series(order)
        z3 = _biv_from_z(order, _ser_pow(zx, 3, order), _ser_pow(zy, 3, order))
        zsum = [[Fraction(0)] * (order + 1) for _ in range(order + 1)]
        for i in range(order + 1):
            zsum[i][0] += zx[i]
            zsum[0][i] += zy[i]
        denom = _biv_inv(_biv_mul(zsum, zsum, order), order)
        grid = _biv_mul(z3, denom, order)
        for m1 in range(1, order + 1):
            for m2 in range(1, order + 1):
                if m1 + m2 > order + 1:
                    continue
                val = grid[m1 - 1][m2 - 1] * 2
                if val:
                    out[(m1, m2)] = inv_cj * val
        return out
    if tag == "U03":
        # u/(2CJ) dz1 dz2 dz3 pulled back along dz = 2tu z^3 dx
        z3 = _ser_pow(_z_series(order), 3, order)
        for m1 in range(1, order + 1):
            for m2 in range(1, order + 1):
                for m3 in range(1, order + 1):
                    if m1 + m2 + m3 > order + 2:
                        continue
                    val = Fraction(8, 2) * z3[m1 - 1] * z3[m2 - 1] * z3[m3 - 1]
                    if val:
                        out[(m1, m2, m3)] = inv_cj * val
        return out
    if tag == "Uhalf2":
        # Tu/(2CJ) (z1 + (2 z2^3 - z2)/(z2+z1)^2 - (z2^4 - z2^2)/(z2+z1)^3)
        # pulled back along both dz factors
        zx = _z_series(order)
        zy = _z_series(order)

        def lift_x(series):
            return _biv_from_z(order, series,
                               [Fraction(1)] + [Fraction(0)] * order)

        def lift_y(series):
            return _biv_from_z(order,
                               [Fraction(1)] + [Fraction(0)] * order, series)

        z1 = lift_x(zx)
        z2 = lift_y(zy)
        zsum = [[z1[i][j] + z2[i][j] for j in range(order + 1)]
                for i in range(order + 1)]
        inv2 = _biv_inv(_biv_mul(zsum, zsum, order), order)
        inv3 = _biv_mul(inv2, _biv_inv(zsum, order), order)
        t1 = z1
        num2 = lift_y([2 * c for c in _ser_pow(zy, 3, order)])
        num2 = [[num2[i][j] - z2[i][j] for j in range(order + 1)]
                for i in range(order + 1)]
        t2 = _biv_mul(num2, inv2, order)
        num3 = lift_y(_ser_pow(zy, 4, order))
        z2sq = lift_y(_ser_pow(zy, 2, order))
        num3 = [[num3[i][j] - z2sq[i][j] for j in range(order + 1)]
                for i in range(order + 1)]
        t3 = _biv_mul(num3, inv3, order)
        base = [[t1[i][j] + t2[i][j] - t3[i][j] for j in range(order + 1)]
                for i in range(order + 1)]
        jac = _biv_from_z(order, _ser_pow(zx, 3, order),
                          _ser_pow(zy, 3, order))
        grid = _biv_mul(base, jac, order)
        for m1 in range(1, order + 1):
            for m2 in range(1, order + 1):
                if m1 + m2 > order + 1:
                    continue
                val = grid[m1 - 1][m2 - 1] * 2
                if val:
                    out[(m1, m2)] = inv_cj * _T * val
        return out
    # U11: u (z-1)(5 T^2 z - 3 T^2 + 2CJ z + 2CJ)/(16 CJ) pulled back
    z = _z_series(order)
    zm1 = [z[0] - 1] + z[1:]
    five_z = [c * 5 for c in z]
    tpart = [five_z[0] - 3] + five_z[1:]          # 5z - 3, times T^2
    cjpart = [z[0] + 1] + z[1:]                   # z + 1, times 2CJ
    z3 = _ser_pow(z, 3, order)
    for m in range(1, order + 1):
        acc = CJTPoly.zero()
        for part, mono in ((tpart, CJTPoly.monomial(1, 0, 0, 2)),
                           (cjpart, CJTPoly.monomial(2, 1, 1, 0))):
            prod = _ser_mul(_ser_mul(zm1, part, order), z3, order)
            if m - 1 < len(prod) and prod[m - 1]:
                acc = acc + mono * prod[m - 1]
        val = acc * CJTPoly.monomial(Fraction(2, 16), -1, -1, 0)
        if val:
            out[(m,)] = val
    return out


# ---------------------------------------------------------------------------
# Recursion-side coefficient tables and the proportionality report
# ---------------------------------------------------------------------------

def recursion_coeffs(tag: str, order: int) -> dict:
    """The generating-series coefficients matching closed_form_coeffs,
    assembled from the connected recursion: prod(m_i) times the connected
    number at the closed form's (g, q)."""
    g2q = {"H01": (0, 1), "Hhalf1": (1, 1), "H02": (0, 2),
           "U03": (0, 3), "Uhalf2": (1, 2), "U11": (2, 1)}
    if tag not in g2q:
        raise ValueError(f"unknown closed form {tag!r}")
    g2, q = g2q[tag]
    out: dict = {}
    if q == 1:
        for m in range(1, order + 1):
            val = single_monotone_N(g2, (m,)) * m
            if val:
                out[(m,)] = val
    elif q == 2:
        for m1 in range(1, order + 1):
            for m2 in range(1, order + 1):
                if m1 + m2 > order + 1:
                    continue
                val = single_monotone_N(g2, (m1, m2)) * (m1 * m2)
                if val:
                    out[(m1, m2)] = val
    else:
        for m1 in range(1, order + 1):
            for m2 in range(1, order + 1):
                for m3 in range(1, order + 1):
                    if m1 + m2 + m3 > order + 2:
                        continue
                    val = single_monotone_N(g2, (m1, m2, m3)) * (m1 * m2 * m3)
                    if val:
                        out[(m1, m2, m3)] = val
    return out


def _poly_ratio(a: CJTPoly, b: CJTPoly):
    """a / b when a is an exact rational multiple of b, else None."""
    if b.is_zero():
        return None
    key, coeff = next(iter(b.sorted_terms()))
    num = a.terms.get(key)
    if num is None:
        return None
    r = num / coeff
    return r if (b * r) == a else None


def proportionality_check(tag: str, order: int) -> dict:
    """Per-profile ratio of the printed closed form to the recursion
    output.  The ratio is required to be one constant across the grid;
    its value is recorded, never forced to 1."""
    cf = closed_form_coeffs(tag, order)
    rec = recursion_coeffs(tag, order)
    ratios = {}
    for key in sorted(set(cf) | set(rec)):
        a = cf.get(key, CJTPoly.zero())
        b = rec.get(key, CJTPoly.zero())
        if b.is_zero():
            if not a.is_zero() and tag != "Uhalf2":
                return {"tag": tag, "ok": False,
                        "reason": f"closed form nonzero at {key}, recursion zero"}
            continue
        # both grids are symmetric overall; compare symmetrized entries
        if len(key) > 1:
            syms = {tuple(sorted(key, reverse=True))}
            a = CJTPoly.zero()
            for k2 in set(_orderings(key)):
                a = a + cf.get(k2, CJTPoly.zero())
            a = a * Fraction(1, len(set(_orderings(key))))
        r = _poly_ratio(a, b)
        if r is None:
            return {"tag": tag, "ok": False,
                    "reason": f"not proportional at {key}",
                    "closed": a.text(), "recursion": b.text()}
        ratios[key] = r
    values = set(ratios.values())
    constant = values.pop() if len(values) == 1 else None
    return {"tag": tag, "ok": constant is not None,
            "constant": None if constant is None else str(constant),
            "ratios": {str(k): str(v) for k, v in sorted(ratios.items())}}


def _orderings(key):
    from itertools import permutations
    return [tuple(p) for p in permutations(key)]
