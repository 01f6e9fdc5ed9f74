"""Reference values for the preliminary-weight action of elementary
symmetric functions on type indicators, n = 2..4.

Each entry maps (n, k of e_k, source type) to the exact expansion in
type indicators.  These are the byte-level targets of `verify appendixA`
in the CLI and of the golden acceptance test.
"""

from __future__ import annotations

from .exact import CJTPoly

_M = CJTPoly.monomial


def _p(cC=0, cJ=0, cT=0, coeff=1):
    return _M(coeff, cC, cJ, cT)


# rows: (n, k, type) -> {target type: coefficient}
GOLDEN_ACTION: dict = {
    (2, 1, (1, 1)): {(2,): _p(0, 1, 0)},
    (2, 1, (2,)): {(2,): _p(0, 0, 1), (1, 1): _p(1, 0, 0, 2)},

    (3, 1, (1, 1, 1)): {(2, 1): _p(0, 1, 0)},
    (3, 1, (2, 1)): {(3,): _p(0, 1, 0, 3), (2, 1): _p(0, 0, 1),
                     (1, 1, 1): _p(1, 0, 0, 6)},
    (3, 1, (3,)): {(3,): _p(0, 0, 1, 3), (2, 1): _p(1, 0, 0, 4)},
    (3, 2, (1, 1, 1)): {(3,): _p(0, 2, 0)},
    (3, 2, (2, 1)): {(3,): _p(0, 1, 1, 3), (2, 1): _p(1, 1, 0, 4)},
    (3, 2, (3,)): {(3,): _p(1, 1, 0, 2) + _p(0, 0, 2, 2),
                   (2, 1): _p(1, 0, 1, 4), (1, 1, 1): _p(2, 0, 0, 8)},

    (4, 1, (1, 1, 1, 1)): {(2, 1, 1): _p(0, 1, 0)},
    (4, 1, (2, 1, 1)): {(3, 1): _p(0, 1, 0, 3), (2, 2): _p(0, 1, 0, 2),
                        (2, 1, 1): _p(0, 0, 1), (1, 1, 1, 1): _p(1, 0, 0, 12)},
    (4, 1, (2, 2)): {(4,): _p(0, 1, 0, 2), (2, 2): _p(0, 0, 1, 2),
                     (2, 1, 1): _p(1, 0, 0, 2)},
    (4, 1, (3, 1)): {(4,): _p(0, 1, 0, 4), (3, 1): _p(0, 0, 1, 3),
                     (2, 1, 1): _p(1, 0, 0, 8)},
    (4, 1, (4,)): {(4,): _p(0, 0, 1, 6), (3, 1): _p(1, 0, 0, 6),
                   (2, 2): _p(1, 0, 0, 8)},
    (4, 2, (1, 1, 1, 1)): {(2, 2): _p(0, 2, 0), (3, 1): _p(0, 2, 0)},
    (4, 2, (2, 1, 1)): {(4,): _p(0, 2, 0, 6), (3, 1): _p(0, 1, 1, 3),
                        (2, 2): _p(0, 1, 1, 2), (2, 1, 1): _p(1, 1, 0, 10)},
    (4, 2, (2, 2)): {(4,): _p(0, 1, 1, 5), (3, 1): _p(1, 1, 0, 6),
                     (2, 2): _p(1, 1, 0, 4) + _p(0, 0, 2),
                     (2, 1, 1): _p(1, 0, 1, 2), (1, 1, 1, 1): _p(2, 0, 0, 12)},
    (4, 2, (3, 1)): {(4,): _p(0, 1, 1, 12),
                     (3, 1): _p(1, 1, 0, 14) + _p(0, 0, 2, 2),
                     (2, 2): _p(1, 1, 0, 16), (2, 1, 1): _p(1, 0, 1, 8),
                     (1, 1, 1, 1): _p(2, 0, 0, 32)},
    (4, 2, (4,)): {(4,): _p(1, 1, 0, 10) + _p(0, 0, 2, 11),
                   (3, 1): _p(1, 0, 1, 18), (2, 2): _p(1, 0, 1, 20),
                   (2, 1, 1): _p(2, 0, 0, 24)},
    (4, 3, (1, 1, 1, 1)): {(4,): _p(0, 3, 0)},
    (4, 3, (2, 1, 1)): {(4,): _p(0, 2, 1, 6), (3, 1): _p(1, 2, 0, 6),
                        (2, 2): _p(1, 2, 0, 8)},
    (4, 3, (2, 2)): {(4,): _p(1, 2, 0, 2) + _p(0, 1, 2, 3),
                     (3, 1): _p(1, 1, 1, 6), (2, 2): _p(1, 1, 1, 4),
                     (2, 1, 1): _p(2, 1, 0, 8)},
    (4, 3, (3, 1)): {(4,): _p(1, 2, 0, 8) + _p(0, 1, 2, 8),
                     (3, 1): _p(1, 1, 1, 12), (2, 2): _p(1, 1, 1, 16),
                     (2, 1, 1): _p(2, 1, 0, 16)},
    (4, 3, (4,)): {(4,): _p(1, 1, 1, 14) + _p(0, 0, 3, 6),
                   (3, 1): _p(2, 1, 0, 12) + _p(1, 0, 2, 12),
                   (2, 2): _p(2, 1, 0, 8) + _p(1, 0, 2, 12),
                   (2, 1, 1): _p(2, 0, 1, 24), (1, 1, 1, 1): _p(3, 0, 0, 48)},
}


def golden_rows():
    """Rows sorted by (n, k, type) for table output."""
    return sorted(GOLDEN_ACTION.items(),
                  key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))
