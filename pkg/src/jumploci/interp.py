"""Interpolation matrices M(d, m; Z; B) and their determinants.

Rows of the matrix are conditions on degree-d forms written in the monomial
basis: one evaluation row per point of Z, followed by one row per partial
derivative operator of order m - 1 taken at the movable point B = (a0:a1:a2).
The determinant is a form of degree binom(m+1, 2) * (d - m + 1) in the a's.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb, factorial

from .exactalg import QQ, FieldMatrix, HPoly, canonicalize, exact_divide, interpolate_homogeneous, kernel_basis
from .exactalg.poly import monomials_of_degree


class NonSquareError(ValueError):
    pass


def monomial_basis(d: int) -> list[tuple[int, int, int]]:
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return monomials_of_degree(d)


@dataclass(frozen=True)
class ParityChoice:
    n: int
    d: int
    m: int
    expected_degree: int


def expected_degree(d: int, m: int) -> int:
    return comb(m + 1, 2) * (d - m + 1)


def parity_parameters(n: int) -> ParityChoice:
    """(d, m) attached to |Z| = n: (k, k-1) for n = 2k+1 and (2k-1, 2k-1) for n = 2k."""
    if n < 2:
        raise ValueError("need at least two points")
    k, odd = divmod(n, 2)
    d, m = (k, k - 1) if odd else (2 * k - 1, 2 * k - 1)
    if m < 1:
        raise ValueError(f"n={n} gives m={m}; pass (d, m) explicitly")
    assert comb(d + 2, 2) == n + comb(m + 1, 2)
    return ParityChoice(n, d, m, expected_degree(d, m))


def _points(Z) -> tuple[tuple, ...]:
    return tuple(tuple(P) for P in Z)


@dataclass(frozen=True)
class InterpProblem:
    d: int
    m: int
    Z: tuple
    basis: tuple = field(init=False)

    def __post_init__(self):
        if self.d < 1 or self.m < 1:
            raise ValueError("need d >= 1 and m >= 1")
        if self.m > self.d:
            raise ValueError(f"m={self.m} exceeds d={self.d}")
        pts = _points(self.Z)
        if len(set(pts)) != len(pts):
            raise ValueError("points of Z must be distinct")
        object.__setattr__(self, "Z", pts)
        object.__setattr__(self, "basis", tuple(monomial_basis(self.d)))

    @property
    def square(self) -> bool:
        return len(self.basis) == len(self.Z) + comb(self.m + 1, 2)

    @property
    def expected_degree(self) -> int:
        return expected_degree(self.d, self.m)


def _eval_monomial(e, P, field):
    v = field.one
    for k, x in zip(e, P):
        if k:
            v = v * field(x) ** k
    return v


def _derivative_entry(e, alpha, field, vars="a") -> HPoly:
    """The form d^alpha x^e, written in the variables a."""
    if any(a > k for a, k in zip(alpha, e)):
        return HPoly.zero(field, vars)
    c = 1
    for a, k in zip(alpha, e):
        c *= factorial(k) // factorial(k - a)
    return HPoly({tuple(k - a for a, k in zip(alpha, e)): c}, field, vars)


@dataclass(frozen=True)
class SymbolicMatrix:
    rows: tuple
    n_eval: int
    operators: tuple
    field: object = QQ

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "blocks": [
                {"label": "evaluation", "rows": [[e.to_json() for e in r] for r in self.rows[: self.n_eval]]},
                {
                    "label": "derivative",
                    "operators": [list(a) for a in self.operators],
                    "rows": [[e.to_json() for e in r] for r in self.rows[self.n_eval:]],
                },
            ],
        }


def build_matrix(p: InterpProblem, field=QQ) -> SymbolicMatrix:
    rows = []
    for P in p.Z:
        rows.append(tuple(HPoly.constant(_eval_monomial(e, P, field), field) for e in p.basis))
    ops = tuple(monomials_of_degree(p.m - 1))
    for alpha in ops:
        rows.append(tuple(_derivative_entry(e, alpha, field) for e in p.basis))
    return SymbolicMatrix(tuple(rows), len(p.Z), ops, field)


def specialize_at(M: SymbolicMatrix, B) -> FieldMatrix:
    pt = tuple(M.field(x) for x in B)
    return FieldMatrix(tuple(tuple(e.eval(pt) if e else M.field.zero for e in r) for r in M.rows), M.field)


def condition_rows(d: int, B, mult: int, field=QQ) -> list[list]:
    """Rows imposing vanishing to order >= mult at B: all derivatives of orders 0..mult-1."""
    basis = monomial_basis(d)
    pt = tuple(field(x) for x in B)
    rows = []
    for k in range(mult):
        for alpha in monomials_of_degree(k):
            rows.append([_derivative_entry(e, alpha, field).eval(pt) for e in basis])
    return rows


def system_dimension(d: int, fat_points, Z, field=QQ) -> int:
    """dim of degree-d forms through Z vanishing to the given orders at the fat points."""
    basis = monomial_basis(d)
    rows = [[_eval_monomial(e, P, field) for e in basis] for P in _points(Z)]
    for B, mult in fat_points:
        if mult < 1:
            raise ValueError("multiplicities must be >= 1")
        rows.extend(condition_rows(d, B, mult, field))
    if not rows:
        return len(basis)
    rank, _ = kernel_basis(FieldMatrix(tuple(map(tuple, rows)), field))
    return len(basis) - rank


class _DetAt:
    # picklable oracle for process pools
    def __init__(self, M: SymbolicMatrix):
        self.M = M

    def __call__(self, B):
        return specialize_at(self.M, B).det()


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("JL_THREADS", "1")))
    except ValueError:
        return 1


def _bareiss(rows: list[list[HPoly]]) -> HPoly:
    """Fraction-free elimination on a square matrix of forms."""
    a = [list(r) for r in rows]
    n = len(a)
    field, vars = a[0][0].field, a[0][0].vars
    sign = 1
    prev = None
    for k in range(n - 1):
        cands = [i for i in range(k, n) if a[i][k]]
        if not cands:
            return HPoly.zero(field, vars)
        piv = min(cands, key=lambda i: (a[i][k].degree, len(a[i][k]), i))
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = akk * a[i][j]
                if aik and a[k][j]:
                    num = num - aik * a[k][j]
                if prev is None or not num:
                    a[i][j] = num
                else:
                    q = exact_divide(num, prev)
                    if q is None:
                        raise ArithmeticError("Bareiss division was not exact")
                    a[i][j] = q
        prev = akk
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def raw_determinant(p: InterpProblem, algorithm: str = "interpolation", field=QQ, seed: int = 0) -> HPoly:
    """det M(d, m; Z; B) as a form in (a0, a1, a2), without rescaling."""
    if not p.square:
        raise NonSquareError(
            f"(d, m) = ({p.d}, {p.m}) with |Z| = {len(p.Z)} gives a "
            f"{len(p.Z) + comb(p.m + 1, 2)} x {len(p.basis)} matrix"
        )
    M = build_matrix(p, field)
    D = p.expected_degree
    if algorithm == "bareiss":
        F = _bareiss([list(r) for r in M.rows])
    elif algorithm == "interpolation":
        workers = _workers()
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                F = interpolate_homogeneous(D, _DetAt(M), field, seed=seed, map_fn=lambda f, xs: pool.map(f, xs, chunksize=8))
        else:
            F = interpolate_homogeneous(D, _DetAt(M), field, seed=seed)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if F and F.degree != D:
        raise ArithmeticError(f"determinant has degree {F.degree}, expected {D}")
    return F


def determinant(p: InterpProblem, algorithm: str = "interpolation") -> HPoly:
    """Canonical (primitive, positive leading coefficient) form of F_{d,m;Z}."""
    return canonicalize(raw_determinant(p, algorithm))


def determinant_json(F: HPoly, p: InterpProblem) -> dict:
    out = F.to_json()
    out["expected_degree"] = p.expected_degree
    out["is_zero"] = F.is_zero()
    return out
