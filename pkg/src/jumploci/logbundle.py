"""Splitting types of the syzygy bundle of the dual line arrangement.

Each point P of Z gives a linear form l_P(a) = P . a; their product f cuts out
the arrangement A_Z. For a point B the lines through B form the pencil
{a : B . a = 0}, a line of the dual plane. Restricting the partials of f to
that pencil yields three binary forms of degree n - 1; the least degree of a
syzygy among them is d1, and the line is jumping when d1 falls below the
generic value floor((n - 1) / 2).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .exactalg import QQ, FieldMatrix, HPoly, canonicalize, kernel_basis
from .exactalg.univariate import roots_mod_p
from .geometry import ProjPoint
from .interp import InterpProblem, parity_parameters, raw_determinant


class DegeneratePencil(ValueError):
    pass


@dataclass(frozen=True)
class Arrangement:
    forms: tuple
    f: HPoly
    partials: tuple

    @property
    def n(self) -> int:
        return len(self.forms)

    def euler_holds(self) -> bool:
        a = [HPoly.var(i, self.f.field) for i in range(3)]
        lhs = a[0] * self.partials[0] + a[1] * self.partials[1] + a[2] * self.partials[2]
        return lhs == self.f.scale(self.n)


def arrangement_of(Z, field=QQ) -> Arrangement:
    pts = [tuple(P) for P in Z]
    if len(set(map(ProjPoint, pts))) != len(pts):
        raise ValueError("points must be distinct")
    forms = tuple(canonicalize(HPoly.linear(P)).change_field(field) if field == QQ
                  else HPoly.linear(P, field) for P in pts)
    f = HPoly.constant(1, field)
    for ell in forms:
        f = f * ell
    return Arrangement(forms, f, tuple(f.diff(i) for i in range(3)))


@dataclass(frozen=True)
class BinaryForm:
    """Coefficients c_k of s^k t^(deg-k), k = 0..deg."""

    coeffs: tuple
    field: object = QQ

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, s, t):
        return sum((c * s ** k * t ** (self.degree - k) for k, c in enumerate(self.coeffs)), self.field.zero)


def _bmul(f: list, g: list, field) -> list:
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = out[i + j] + a * b
    return out


def pencil_basis(B, field=QQ, rule: str = "gram-schmidt"):
    """Two independent vectors u, v spanning {a : B . a = 0}.

    ``gram-schmidt`` orthogonalizes (B, e_i, e_j) over QQ, with e_i, e_j the two
    coordinate vectors least aligned with B. ``cross`` uses B x e_i and B x e_j
    for the two indices other than a nonzero coordinate of B; it needs no
    division and works over GF(p).
    """
    Bf = [field(x) for x in B]
    if not any(Bf):
        raise ValueError("B must be nonzero")
    if rule == "gram-schmidt":
        if field != QQ:
            raise ValueError("gram-schmidt rule is for QQ; use 'cross'")
        order = sorted(range(3), key=lambda i: (abs(Bf[i]), i))
        i, j = order[0], order[1]
        basis = [Bf]
        for k in (i, j):
            w = [field.one if t == k else field.zero for t in range(3)]
            for b in basis:
                c = sum(x * y for x, y in zip(w, b)) / sum(y * y for y in b)
                w = [x - c * y for x, y in zip(w, b)]
            basis.append(w)
        return basis[1], basis[2]
    if rule == "cross":
        k = max(range(3), key=lambda t: (bool(Bf[t]), -t)) if field != QQ else max(range(3), key=lambda t: (abs(Bf[t]), -t))
        i, j = [t for t in range(3) if t != k]
        def bx(e):
            E = [field.one if t == e else field.zero for t in range(3)]
            return [Bf[1] * E[2] - Bf[2] * E[1], Bf[2] * E[0] - Bf[0] * E[2], Bf[0] * E[1] - Bf[1] * E[0]]
        return bx(i), bx(j)
    raise ValueError(f"unknown pencil rule {rule!r}")


def substitute(F: HPoly, u, v) -> BinaryForm:
    """The binary form (s, t) -> F(s*u + t*v)."""
    field = F.field
    lin = [[field(v[i]), field(u[i])] for i in range(3)]  # coefficients of t, s
    D = F.degree or 0
    pows = []
    for i in range(3):
        row = [[field.one]]
        for _ in range(D):
            row.append(_bmul(row[-1], lin[i], field))
        pows.append(row)
    out = [field.zero] * (D + 1)
    for (e0, e1, e2), c in F.terms:
        term = _bmul(_bmul(pows[0][e0], pows[1][e1], field), pows[2][e2], field)
        for k, x in enumerate(term):
            if x:
                out[k] = out[k] + c * x
    return BinaryForm(tuple(out), field)


def restrict_to_pencil(A: Arrangement, B, rule: str = "gram-schmidt"):
    field = A.f.field
    if field != QQ and rule == "gram-schmidt":
        rule = "cross"
    u, v = pencil_basis(B, field, rule)
    return tuple(substitute(g, u, v) for g in A.partials)


def syzygy_matrix(gs, e: int) -> FieldMatrix:
    """Columns: s^k t^(e-k) * g_i for each g_i and k; rows: coefficients of degree e + D."""
    field = gs[0].field
    D = gs[0].degree
    cols = []
    for g in gs:
        for k in range(e + 1):
            col = [field.zero] * (e + D + 1)
            for i, c in enumerate(g.coeffs):
                col[i + k] = c
            cols.append(col)
    return FieldMatrix(tuple(tuple(col[r] for col in cols) for r in range(e + D + 1)), field)


def min_syzygy_degree(g1: BinaryForm, g2: BinaryForm, g3: BinaryForm) -> int:
    gs = (g1, g2, g3)
    if all(g.is_zero() for g in gs):
        raise DegeneratePencil("all three restricted partials vanish")
    D = g1.degree
    for e in range(D + 1):
        rank, _ = kernel_basis(syzygy_matrix(gs, e))
        if rank < 3 * (e + 1):
            return e
    raise AssertionError("a syzygy of degree <= D always exists")


def common_root_degree(gs) -> int:
    """Degree of the common factor of the restricted partials (0 off the singular points)."""
    field = gs[0].field
    D = gs[0].degree
    # with gcd h of degree g, the ideal (g_i) is h times forms without common root,
    # which fill every degree >= 2(D-g)-1; so degree 2D-1 has rank 2D-g.
    e = D - 1
    if e < 0:
        return 0
    rank, _ = kernel_basis(syzygy_matrix(gs, e)) if any(not g.is_zero() for g in gs) else (0, None)
    return 2 * D - rank


@dataclass(frozen=True)
class SplittingType:
    d1: int
    d2: int
    jump_order: int
    above_generic: bool = False
    common_factor_degree: int = 0


def generic_d1(n: int) -> int:
    return (n - 1) // 2


def splitting_and_jump(Z, B, field=QQ, rule: str = "gram-schmidt", arrangement: Arrangement | None = None) -> SplittingType:
    A = arrangement or arrangement_of(Z, field)
    gs = restrict_to_pencil(A, B, rule)
    d1 = min_syzygy_degree(*gs)
    n = A.n
    jump = generic_d1(n) - d1
    return SplittingType(d1, n - 1 - d1, max(0, jump), jump < 0, common_root_degree(gs))


@dataclass
class CrossCheck:
    records: list
    field: str

    @property
    def disagreements(self) -> list:
        return [r for r in self.records if not r["agree"]]

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "samples": self.records,
            "summary": {
                "n_samples": len(self.records),
                "n_agree": len(self.records) - len(self.disagreements),
                "n_disagree": len(self.disagreements),
                "n_F_zero": sum(r["F_is_zero"] for r in self.records),
                "n_jumping": sum(r["jump"] >= 1 for r in self.records),
            },
        }


def cross_check(Z, d: int, m: int, samples, F: HPoly | None = None, field=QQ, sources=None) -> CrossCheck:
    """Compare F(B) = 0 with jump_order(B) >= 1 on every sample point."""
    if F is None:
        F = raw_determinant(InterpProblem(d, m, Z))
    if F.field != field:
        F = canonicalize(F).change_field(field)
    A = arrangement_of(Z, field)
    records = []
    for idx, B in enumerate(samples):
        Bf = [field(x) for x in B]
        F_zero = not F.eval(Bf)
        try:
            st = splitting_and_jump(Z, Bf, field, arrangement=A)
        except DegeneratePencil:
            records.append({"B": [str(x) for x in B], "F_is_zero": F_zero, "d1": None, "d2": None,
                            "jump": None, "agree": False, "degenerate": True})
            continue
        rec = {
            "B": [str(x) for x in B],
            "F_is_zero": F_zero,
            "d1": st.d1,
            "d2": st.d2,
            "jump": st.jump_order,
            "common_factor_degree": st.common_factor_degree,
            "agree": F_zero == (st.jump_order >= 1),
        }
        if st.above_generic:
            rec["above_generic"] = True
        if sources is not None:
            rec["source"] = sources[idx]
        records.append(rec)
    return CrossCheck(records, repr(field))


def generic_samples(k: int, seed: int, bound: int = 10**4) -> list[ProjPoint]:
    rng = random.Random(seed)
    out = []
    while len(out) < k:
        raw = [rng.randint(-bound, bound) for _ in range(3)]
        if any(raw):
            out.append(ProjPoint(raw))
    return out


def points_on_curve_mod_p(F: HPoly, p: int, k: int, seed: int = 0) -> list[tuple[int, int, int]]:
    """Up to k points of {F = 0} over GF(p), from the roots of F on random lines."""
    field = F.field
    rng = random.Random(seed)
    out = []
    for _ in range(50 * k):
        if len(out) >= k:
            break
        u = [rng.randrange(p) for _ in range(3)]
        v = [rng.randrange(p) for _ in range(3)]
        bf = substitute(F, u, v)  # coefficients of s^k t^(D-k); set t = 1
        coeffs = [c.v for c in bf.coeffs]
        if not any(coeffs):
            continue
        for r in roots_mod_p(coeffs, p, rng):
            pt = tuple((r * a + b) % p for a, b in zip(u, v))
            if any(pt) and pt not in out:
                out.append(pt)
    return out[:k]


def cross_check_mod_p(Z, d: int, m: int, p: int, n_on: int = 10, n_generic: int = 10, seed: int = 0,
                      F: HPoly | None = None) -> CrossCheck:
    """Both sides over GF(p): points of {F = 0} found by line scans plus random points."""
    from .exactalg import GF

    field = GF(p)
    if F is None:
        F = raw_determinant(InterpProblem(d, m, Z))
    Fp = canonicalize(F).change_field(field)
    on = points_on_curve_mod_p(Fp, p, n_on, seed)
    rng = random.Random(seed + 1)
    gen = []
    while len(gen) < n_generic:
        pt = tuple(rng.randrange(p) for _ in range(3))
        if any(pt):
            gen.append(pt)
    sources = ["on-curve"] * len(on) + ["generic"] * len(gen)
    return cross_check(Z, d, m, on + gen, F=Fp, field=field, sources=sources)


def default_parameters(n: int) -> tuple[int, int]:
    pc = parity_parameters(n)
    return pc.d, pc.m


__all__ = [
    "Arrangement", "BinaryForm", "SplittingType", "CrossCheck", "DegeneratePencil",
    "arrangement_of", "restrict_to_pencil", "min_syzygy_degree", "splitting_and_jump",
    "cross_check", "cross_check_mod_p", "generic_samples", "pencil_basis", "default_parameters",
]
