"""
Small dense matrices over Q(t) and Q, backed by sympy ``DomainMatrix``.

Entries over Q(t) are ``FracElement`` objects of ``QT``; ``T`` is the
uniformizer.
"""

from itertools import combinations
from typing import Sequence

from sympy import QQ
from sympy.polys.fields import field
from sympy.polys.matrices import DomainMatrix

from app.exceptions import SingularMatrixError

QT, T = field("t", QQ)
QT_DOMAIN = QT.to_domain()

Matrix = list[list]


def from_laurent(entry: dict[int, object]):
    """Element of Q(t) from {exponent: coefficient}."""
    value = QT.zero
    for e, c in entry.items():
        value += QT(c) * T**e
    return value


def to_laurent(value) -> dict[int, object]:
    """{exponent: coefficient} of a Laurent polynomial in Q(t)."""
    numer, denom = value.numer, value.denom
    if len(denom) != 1:
        raise ValueError("not a Laurent polynomial")
    ((shift,), scale) = next(iter(denom.items()))
    return {m[0] - shift: c / scale for m, c in numer.items()}


def valuation(value) -> int:
    """t-adic valuation; the zero element has none."""
    if not value:
        raise ValueError("zero has infinite valuation")
    return min(m[0] for m in value.numer.keys()) - min(m[0] for m in value.denom.keys())


def _domain_matrix(rows: Matrix, domain=QT_DOMAIN) -> DomainMatrix:
    return DomainMatrix([list(r) for r in rows], (len(rows), len(rows[0]) if rows else 0), domain)


def _entries(matrix: DomainMatrix) -> Matrix:
    m, n = matrix.shape
    return [[matrix[i, j].element for j in range(n)] for i in range(m)]


def identity(d: int) -> Matrix:
    return [[QT.one if i == j else QT.zero for j in range(d)] for i in range(d)]


def diagonal(exponents: Sequence[int]) -> Matrix:
    d = len(exponents)
    return [[T ** exponents[i] if i == j else QT.zero for j in range(d)] for i in range(d)]


def determinant(rows: Matrix, domain=QT_DOMAIN):
    return _domain_matrix(rows, domain).det()


def inverse(rows: Matrix) -> Matrix:
    if not determinant(rows):
        raise SingularMatrixError("matrix is singular over Q(t)")
    return _entries(_domain_matrix(rows).inv())


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return _entries(_domain_matrix(a) * _domain_matrix(b))


def scale(rows: Matrix, factor) -> Matrix:
    return [[factor * x for x in r] for r in rows]


def subsets(d: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of {1..d} in lexicographic order."""
    return list(combinations(range(1, d + 1), k))


def minor(rows: Matrix, row_set: Sequence[int], col_set: Sequence[int], domain=QT_DOMAIN):
    """Minor on 1-based row and column subsets."""
    sub = [[rows[i - 1][j - 1] for j in col_set] for i in row_set]
    return determinant(sub, domain)


def compound(rows: Matrix, k: int, domain=QT_DOMAIN) -> Matrix:
    """k-th compound: minors indexed by lexicographic k-subsets."""
    d = len(rows)
    index = subsets(d, k)
    return [[minor(rows, s, c, domain) for c in index] for s in index]


def rational_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return [[QQ(x) for x in r] for r in rows]


def evaluate_at(value, point):
    """Value of a Q(t) element at t = point (a nonzero rational)."""
    numer = sum((c * point ** m[0] for m, c in value.numer.items()), QQ.zero)
    denom = sum((c * point ** m[0] for m, c in value.denom.items()), QQ.zero)
    if not denom:
        raise SingularMatrixError(f"entry has a pole at t = {point}")
    return numer / denom


def elementary_divisor_exponents(rows: Matrix) -> list[int]:
    """Valuations of the invariant factors over Q[t]_(t), ascending.

    Gaussian elimination pivoting on an entry of minimal valuation; every
    row operation then has a coefficient in the valuation ring.
    """
    if not rows or not determinant(rows):
        raise SingularMatrixError("elementary divisors need an invertible matrix")
    work = [list(r) for r in rows]
    d = len(work)
    exponents = []
    for r in range(d):
        best = None
        for i in range(r, d):
            for j in range(r, d):
                if work[i][j]:
                    v = valuation(work[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
        v, i, j = best
        work[r], work[i] = work[i], work[r]
        for row in work:
            row[r], row[j] = row[j], row[r]
        pivot = work[r][r]
        for i in range(r + 1, d):
            if work[i][r]:
                factor = work[i][r] / pivot
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
        exponents.append(v)
    return sorted(exponents)


def leading_coefficient(value):
    """Coefficient of the lowest power of t in the t-adic expansion."""
    numer, denom = value.numer, value.denom
    low_n = min(numer.keys())
    low_d = min(denom.keys())
    return numer[low_n] / denom[low_d]


def lift(rows: Sequence[Sequence[object]]) -> Matrix:
    """Rational matrix as a matrix over Q(t)."""
    return [[QT(QQ.convert(x)) for x in r] for r in rows]
