"""Rational point configurations in the plane and the curves they span.

Points are integer triples in a unique normal form (coprime, first nonzero
coordinate positive). Curves are canonical forms in the variables a0, a1, a2,
so a secant line <P, Q> is the form B -> det(P, Q, B) in the movable point B.
"""
from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd

from .bounds import feasibility_check
from .exactalg import QQ, FieldMatrix, HPoly, canonicalize, kernel_basis
from .exactalg.poly import monomials_of_degree


class GeometryError(ValueError):
    pass


class GenerationError(RuntimeError):
    pass


def _lcm(a, b):
    return a // gcd(a, b) * b


def normalize(coords) -> tuple[int, int, int]:
    q = [Fraction(c) for c in coords]
    if len(q) != 3 or not any(q):
        raise GeometryError(f"not a projective point: {coords!r}")
    den = reduce(_lcm, (c.denominator for c in q), 1)
    ints = [int(c * den) for c in q]
    g = reduce(gcd, (abs(c) for c in ints), 0)
    ints = [c // g for c in ints]
    if next(c for c in ints if c) < 0:
        ints = [-c for c in ints]
    return tuple(ints)


class ProjPoint(tuple):
    """A point of P^2 with rational coordinates, stored in normal form."""

    def __new__(cls, *coords):
        if len(coords) == 1:
            coords = coords[0]
        return super().__new__(cls, normalize(coords))

    def __repr__(self):
        return "(%d:%d:%d)" % self


def cross(P, Q) -> tuple:
    return (
        P[1] * Q[2] - P[2] * Q[1],
        P[2] * Q[0] - P[0] * Q[2],
        P[0] * Q[1] - P[1] * Q[0],
    )


def det3(P, Q, R):
    return sum(a * b for a, b in zip(cross(P, Q), R))


def collinear(P, Q, R) -> bool:
    return det3(P, Q, R) == 0


def conic_row(P) -> list:
    return [P[0] ** e[0] * P[1] ** e[1] * P[2] ** e[2] for e in monomials_of_degree(2)]


@dataclass(frozen=True)
class PointConfig:
    points: tuple
    label: str = ""
    seed: int | None = None

    def __post_init__(self):
        pts = tuple(ProjPoint(P) for P in self.points)
        if len(pts) < 2:
            raise GeometryError("a configuration needs at least two points")
        if len(set(pts)) != len(pts):
            raise GeometryError("points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "seed": self.seed,
            "points": [[str(c) for c in P] for P in self.points],
        }

    @classmethod
    def from_json(cls, obj) -> "PointConfig":
        return cls(tuple(tuple(Fraction(c) for c in P) for P in obj["points"]), obj.get("label", ""), obj.get("seed"))

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class PlaneCurve:
    poly: HPoly
    label: str = ""
    support: tuple = ()
    feasible: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.poly.is_zero():
            raise GeometryError("curve equation must be nonzero")
        object.__setattr__(self, "poly", canonicalize(self.poly))

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def n_support(self) -> int:
        return len(self.support)

    def contains(self, P) -> bool:
        return not self.poly.eval(P)

    def to_json(self) -> dict:
        out = {"curve": self.poly.to_json(), "degree": self.degree, "support": list(self.support)}
        if self.label:
            out["label"] = self.label
        return out


def support_of(poly: HPoly, Z) -> tuple[int, ...]:
    return tuple(i for i, P in enumerate(Z) if not poly.eval(P))


def line_through(P, Q, Z=None) -> PlaneCurve:
    P, Q = ProjPoint(P), ProjPoint(Q)
    if P == Q:
        raise GeometryError("a line needs two distinct points")
    poly = canonicalize(HPoly.linear(cross(P, Q)))
    return PlaneCurve(poly, "line", support_of(poly, Z) if Z is not None else ())


def conic_through(points, Z=None) -> PlaneCurve:
    pts = [ProjPoint(P) for P in points]
    if len(pts) < 5:
        raise GeometryError("a conic needs at least five points")
    rank, basis = kernel_basis(FieldMatrix(tuple(tuple(conic_row(P)) for P in pts)))
    if not basis:
        raise GeometryError("points are not on a common conic (kernel dim 0)")
    if len(basis) > 1:
        raise GeometryError(f"conic is not determined (kernel dim {len(basis)})")
    poly = canonicalize(HPoly(zip(monomials_of_degree(2), basis[0])))
    return PlaneCurve(poly, "conic", support_of(poly, Z) if Z is not None else ())


def collinear_subsets(Z) -> list[tuple[int, ...]]:
    """Maximal collinear index sets of size >= 3."""
    pts = list(Z)
    seen = set()
    out = []
    for i, j in combinations(range(len(pts)), 2):
        if (i, j) in seen:
            continue
        on = tuple(k for k in range(len(pts)) if collinear(pts[i], pts[j], pts[k]))
        for a, b in combinations(on, 2):
            seen.add((a, b))
        if len(on) >= 3:
            out.append(on)
    return out


def _conics_through_fives(Z) -> dict[HPoly, tuple[int, ...]]:
    pts = list(Z)
    out: dict[HPoly, tuple[int, ...]] = {}
    covered: set[tuple[int, ...]] = set()
    for five in combinations(range(len(pts)), 5):
        if five in covered:
            continue
        if any(collinear(pts[a], pts[b], pts[c]) for a, b, c in combinations(five, 3)):
            continue
        C = conic_through([pts[k] for k in five])
        sup = support_of(C.poly, pts)
        out[C.poly] = sup
        covered.update(combinations(sup, 5))
    return out


def coconic_subsets(Z, min_size: int = 6) -> list[tuple[int, ...]]:
    """Maximal index sets of size >= min_size on an irreducible conic."""
    return sorted(s for s in _conics_through_fives(Z).values() if len(s) >= min_size)


def position_report(Z) -> dict:
    pts = list(Z)
    lines = collinear_subsets(pts)
    conics = coconic_subsets(pts)
    distinct = len(set(map(ProjPoint, pts))) == len(pts)
    return {
        "n": len(pts),
        "distinct": distinct,
        "collinear": [list(s) for s in lines],
        "coconic": [list(s) for s in conics],
        "general_position": distinct and not lines and not conics,
        "criterion": "pairwise distinct, no 3 collinear, no 6 on a conic",
    }


def _fits(new, pts) -> bool:
    if new in pts:
        return False
    for P, Q in combinations(pts, 2):
        if collinear(P, Q, new):
            return False
    if len(pts) >= 5:
        for five in combinations(pts, 5):
            rows = tuple(tuple(conic_row(P)) for P in five + (new,))
            if FieldMatrix(rows).det() == 0:
                return False
    return True


def random_config(n: int, seed: int, coord_bound: int, retry_budget: int = 10000) -> PointConfig:
    """Deterministic general-position configuration with integer coordinates."""
    if n < 2:
        raise GeometryError("n must be at least 2")
    rng = random.Random(seed)
    pts: list[ProjPoint] = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > retry_budget:
            raise GenerationError(f"retry budget exhausted; bound {coord_bound} is too small for n={n}")
        raw = [rng.randint(-coord_bound, coord_bound) for _ in range(3)]
        if not any(raw):
            continue
        P = ProjPoint(raw)
        if _fits(P, pts):
            pts.append(P)
    cfg = PointConfig(tuple(pts), f"random-{n}", seed)
    assert position_report(cfg)["general_position"]
    return cfg


def point_on_conic(C: HPoly, Q, w) -> ProjPoint | None:
    """Second intersection of the conic with the line through its point Q in direction w."""
    grad = [C.diff(i).eval(Q) for i in range(3)]
    lin = sum(g * x for g, x in zip(grad, w))
    quad = C.eval(w)
    if quad == 0 or lin == 0:
        return None
    lam = -lin / quad
    return ProjPoint([Fraction(q) + lam * x for q, x in zip(Q, w)])


def sample_points_on(curve: PlaneCurve, Z, k: int, seed: int = 0, avoid=()) -> list[ProjPoint]:
    """k distinct rational points on a line or conic, off Z and off the ``avoid`` curves."""
    rng = random.Random(seed)
    pts = list(Z)
    on = [pts[i] for i in curve.support] or [P for P in pts if curve.contains(P)]
    taboo = set(pts)
    out: list[ProjPoint] = []
    budget = 2000
    while len(out) < k and budget:
        budget -= 1
        if curve.degree == 1:
            if len(on) >= 2:
                P, Q = on[0], on[1]
            else:
                P, Q = _line_basis(curve.poly)
            s, t = rng.randint(-40, 40), rng.randint(1, 40)
            if s == 0:
                continue
            cand = ProjPoint([s * a + t * b for a, b in zip(P, Q)])
        elif curve.degree == 2:
            if not on:
                raise GeometryError("conic sampling needs a known rational point")
            w = [rng.randint(-40, 40) for _ in range(3)]
            if not any(w):
                continue
            cand = point_on_conic(curve.poly, on[0], w)
            if cand is None:
                continue
        else:
            raise GeometryError("only lines and conics are sampled")
        if cand in taboo or cand in out:
            continue
        if any(A.contains(cand) for A in avoid):
            continue
        assert curve.contains(cand)
        out.append(cand)
    if len(out) < k:
        raise GenerationError("could not find enough rational points on the curve")
    return out


def _line_basis(line: HPoly):
    c = [line.coeff(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    _, basis = kernel_basis(FieldMatrix((tuple(c),)))
    return [ProjPoint(v) for v in basis]


# -- named configurations ---------------------------------------------------

def _example_5_2(seed: int) -> PointConfig:
    rng = random.Random(seed)
    for _ in range(500):
        ts = rng.sample(range(-12, 13), 7)
        conic_pts = [ProjPoint((1, t, t * t)) for t in ts]
        i, j = sorted(rng.sample(range(7), 2))
        P, Q = conic_pts[i], conic_pts[j]
        extra = []
        for _ in range(2):
            lam, mu = rng.randint(1, 9) * rng.choice((-1, 1)), rng.randint(1, 9)
            extra.append(ProjPoint([lam * a + mu * b for a, b in zip(P, Q)]))
        pts = conic_pts + extra
        if len(set(pts)) != 9:
            continue
        rep = position_report(pts)
        if rep["collinear"] == [[i, j, 7, 8]] and rep["coconic"] == [list(range(7))]:
            return PointConfig(tuple(pts), "example-5-2", seed)
    raise GenerationError("could not realize the example-5-2 incidence type")


def _two_conics(d: int, seed: int) -> PointConfig:
    if d < 2:
        raise GeometryError("two-conics needs d >= 2")
    rng = random.Random(seed)
    for _ in range(500):
        base = random_config(4, rng.randrange(1 << 30), 8).points
        conics, pts = [], list(base)
        ok = True
        for extra_count in (d - 1, d - 2):
            raw = [rng.randint(-9, 9) for _ in range(3)]
            if not any(raw):
                ok = False
                break
            R = ProjPoint(raw)
            if R in pts or any(collinear(a, b, R) for a, b in combinations(base, 2)):
                ok = False
                break
            C = conic_through(list(base) + [R]).poly
            new = [R]
            while len(new) < extra_count:
                w = [rng.randint(-9, 9) for _ in range(3)]
                X = point_on_conic(C, base[0], w)
                if X is not None and X not in pts and X not in new and X not in base:
                    new.append(X)
            new = new[:extra_count]
            conics.append(C)
            pts += new
        if not ok or len(set(pts)) != 2 * d + 1:
            continue
        if any(collinear(*t) for t in combinations(pts, 3)):
            continue
        sup = sorted(support_of(C, pts) for C in conics)
        if sorted(map(len, sup)) != [d + 2, d + 3]:
            continue
        expected = sorted(s for s in sup if len(s) >= 6)
        if coconic_subsets(pts) != expected:
            continue
        return PointConfig(tuple(pts), f"two-conics({d})", seed)
    raise GenerationError("could not realize the two-conics incidence type")


def parse_named(name: str) -> tuple[str, dict]:
    m = re.fullmatch(r"two-conics[(:](\d+)\)?", name)
    if m:
        return "two-conics", {"d": int(m.group(1))}
    return name, {}


def named_config(name: str, seed: int = 0, **params) -> PointConfig:
    base, parsed = parse_named(name)
    params = {**parsed, **params}
    if base == "triangle":
        return PointConfig(((1, 0, 0), (0, 1, 0), (0, 0, 1)), "triangle")
    if base == "collinear3":
        return PointConfig(((1, 0, 0), (0, 1, 0), (1, 1, 0)), "collinear3")
    if base == "example-5-2":
        return _example_5_2(seed)
    if base == "two-conics":
        return _two_conics(params.get("d", 4), seed)
    raise GeometryError(f"unknown configuration {name!r}")


NAMED = ("triangle", "collinear3", "example-5-2", "two-conics(d)")


# -- candidate fixed components ---------------------------------------------

def candidate_components(Z, d: int, m: int) -> list[PlaneCurve]:
    """Lines through >= 2 points and irreducible conics through >= 6 points of Z.

    Any five points with no three collinear lie on a conic, so a five-point
    conic records no incidence; for d >= 3 the feasibility bound needs d + 3 >= 6
    points anyway.
    """
    pts = list(Z)
    out: dict[HPoly, PlaneCurve] = {}
    for i, j in combinations(range(len(pts)), 2):
        L = line_through(pts[i], pts[j], pts)
        if L.poly not in out:
            out[L.poly] = PlaneCurve(L.poly, "line", L.support, feasibility_check(1, d, L.n_support, m))
    for poly, sup in _conics_through_fives(pts).items():
        if len(sup) < 6:
            continue
        out[poly] = PlaneCurve(poly, "conic", sup, feasibility_check(2, d, len(sup), m))
    return sorted(out.values(), key=curve_sort_key)


def curve_sort_key(C: PlaneCurve):
    return (C.degree, tuple(C.poly.terms))
