"""Dense exact linear algebra over QQ and GF(p)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .fields import QQ


@dataclass(frozen=True)
class FieldMatrix:
    rows: tuple
    field: object = QQ

    def __post_init__(self):
        rows = tuple(tuple(self.field(x) for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def apply(self, vec) -> list:
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        zero = self.field.zero
        out = []
        for r in self.rows:
            s = zero
            for a, b in zip(r, vec):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def det(self):
        return determinant(self)

    def rank(self) -> int:
        return kernel_basis(self)[0]


def _rref(rows: list[list], field):
    """In-place reduced row echelon form; returns pivot columns."""
    nr, nc = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def kernel_basis(M: FieldMatrix) -> tuple[int, list[list]]:
    """Rank and a basis of the right kernel ``{v : M v = 0}``."""
    field = M.field
    rows = [list(r) for r in M.rows]
    pivots = _rref(rows, field)
    rank = len(pivots)
    free = [c for c in range(M.ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field.zero] * M.ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return rank, basis


def _int_bareiss(a: list[list[int]]) -> int:
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k]), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def determinant(M: FieldMatrix):
    """Exact determinant: fraction-free Bareiss over ZZ when possible, else Gaussian."""
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    field = M.field
    if field == QQ:
        den = 1
        for r in M.rows:
            for x in r:
                if x.denominator != 1:
                    den = den * x.denominator // gcd(den, x.denominator)
        a = [[int(x * den) for x in r] for r in M.rows]
        return Fraction(_int_bareiss(a), den ** M.nrows)
    rows = [list(r) for r in M.rows]
    n = len(rows)
    det = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = field.one / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det
