"""Small exact linear algebra helpers.

The Berkowitz algorithm computes characteristic polynomials without
division, so it works over any commutative ring (Fractions, Poly1, or
CJTPoly entries).
"""

from __future__ import annotations

from fractions import Fraction


def mat_mul(a, b, zero):
    n, m, k = len(a), len(b[0]), len(b)
    out = [[zero for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = zero
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            out[i][j] = acc
    return out


def charpoly(matrix, zero=None, one=None):
    """Coefficients [c_0, ..., c_n] of det(x*I - M), ascending in x.

    Division-free (Berkowitz), so entries may live in any commutative
    ring with the supplied zero and one.
    """
    n = len(matrix)
    if zero is None:
        zero = Fraction(0)
    if one is None:
        one = Fraction(1)
    if n == 0:
        return [one]

    # Column vector of charpoly coefficients, highest degree first.
    vec = [one, zero - matrix[0][0]]
    for k in range(1, n):
        a = matrix[k][k]
        row = matrix[k][:k]          # R
        col = [matrix[i][k] for i in range(k)]  # C
        sub = [matrix[i][:k] for i in range(k)]  # principal submatrix

        # Toeplitz column entries: 1, -a, -R C, -R M C, -R M^2 C, ...
        toep = [one, zero - a]
        cur = col
        for _ in range(k):
            dot = zero
            for x, y in zip(row, cur):
                dot = dot + x * y
            toep.append(zero - dot)
            cur = [sum_ring((sub[i][j] * cur[j] for j in range(k)), zero)
                   for i in range(k)]

        new = [zero] * (k + 2)
        for i in range(k + 2):
            acc = zero
            for j in range(min(i, len(vec) - 1) + 1):
                if i - j < len(toep):
                    acc = acc + toep[i - j] * vec[j]
            new[i] = acc
        vec = new

    vec.reverse()  # ascending order
    return vec


def sum_ring(items, zero):
    acc = zero
    for x in items:
        acc = acc + x
    return acc


def poly_from_roots(roots, zero=None, one=None):
    """Coefficients of prod (x - r), ascending."""
    if zero is None:
        zero = Fraction(0)
    if one is None:
        one = Fraction(1)
    coeffs = [one]
    for r in roots:
        new = [zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - r * c
        coeffs = new
    return coeffs
