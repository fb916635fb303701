"""Forced components of the determinant curve and the residual factor."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from ..bounds import h_bound, j_min, predicted_multiplicity
from ..exactalg import HPoly, canonicalize, exact_divide
from ..exactalg.poly import monomials_of_degree
from ..geometry import GenerationError, GeometryError, PlaneCurve, ProjPoint, candidate_components, curve_sort_key, sample_points_on
from ..interp import InterpProblem, parity_parameters, raw_determinant, system_dimension
from .irreducibility import irreducibility_probe


class InvariantBreach(ArithmeticError):
    pass


@dataclass(frozen=True)
class ComponentFinding:
    curve: PlaneCurve
    observed_multiplicity: int
    predicted_multiplicity: int = 0

    @property
    def violation(self) -> bool:
        return self.observed_multiplicity < self.predicted_multiplicity

    def to_json(self) -> dict:
        return {
            "curve": self.curve.poly.to_json(),
            "kind": self.curve.label,
            "degree": self.curve.degree,
            "support": list(self.curve.support),
            "observed_mult": self.observed_multiplicity,
            "predicted_mult": self.predicted_multiplicity,
        }


def curve_multiplicity(F: HPoly, curve: HPoly) -> int:
    """Largest k with curve^k dividing F."""
    k, cur = 0, F
    while True:
        q = exact_divide(cur, curve)
        if q is None:
            return k
        k, cur = k + 1, q


def detect_fixed_components(F: HPoly, candidates, d: int | None = None, m: int | None = None) -> list[ComponentFinding]:
    if F.is_zero():
        raise ValueError("F must be nonzero")
    F = canonicalize(F)
    seen = set()
    out = []
    for C in candidates:
        if C.poly in seen:
            continue
        seen.add(C.poly)
        k = curve_multiplicity(F, C.poly)
        if k:
            pred = predicted_multiplicity(C.degree, d, m, C.n_support) if d is not None else 0
            out.append(ComponentFinding(C, k, pred))
    return sorted(out, key=lambda f: curve_sort_key(f.curve))


def residual(F: HPoly, findings) -> HPoly:
    G = canonicalize(F)
    for f in findings:
        for _ in range(f.observed_multiplicity):
            q = exact_divide(G, f.curve.poly)
            if q is None:
                raise InvariantBreach(f"{f.curve.poly} does not divide the remaining factor")
            G = q
    return canonicalize(G)


def multiplicity_at_point(F: HPoly, Q) -> int:
    """Order of vanishing of F at Q: least k with a nonzero order-k partial at Q."""
    if F.is_zero():
        raise ValueError("F must be nonzero")
    level = {(0, 0, 0): F}
    for k in range(F.degree + 1):
        if any(g.eval(Q) for g in level.values() if g):
            return k
        nxt = {}
        for alpha in monomials_of_degree(k + 1):
            for i in range(3):
                if alpha[i]:
                    parent = list(alpha)
                    parent[i] -= 1
                    nxt[alpha] = level[tuple(parent)].diff(i)
                    break
        level = nxt
    raise AssertionError("a nonzero form has a nonzero partial of order <= degree")


def actual_h(Z, d: int, B, j: int) -> int:
    vdim = max(0, comb(d + 2, 2) - len(Z) - comb(j + 1, 2))
    return system_dimension(d, [(B, j)], Z) - vdim


def verify_h_bounds(Z, d: int, curve: PlaneCurve, B, j_range, m: int | None = None) -> list[dict]:
    """Compare the actual defect h_{j,B} with its lower bound, for each j."""
    B = ProjPoint(B)
    if not curve.contains(B):
        raise ValueError(f"{B!r} is not on the curve {curve.poly}")
    if B in set(map(ProjPoint, Z)):
        raise ValueError("B must not be a point of Z")
    t, nC = curve.degree, curve.n_support
    jm = j_min(t, d, nC)
    hi = d if m is None else m
    rows = []
    for j in j_range:
        h = actual_h(Z, d, B, j)
        bound = h_bound(t, d, nC, j)
        covered = jm <= j <= hi
        rows.append({"j": j, "actual_h": h, "bound": bound, "in_range": covered,
                     "ok": h >= bound or not covered})
    return rows


@dataclass
class FactorizationReport:
    d: int
    m: int
    n: int
    F: HPoly
    findings: list
    residual: HPoly
    irreducibility: object
    missing: list = field(default_factory=list)
    h_tables: list = field(default_factory=list)
    label: str = ""
    seed: int | None = None

    @property
    def F_degree(self):
        return self.F.degree

    @property
    def residual_degree(self):
        return self.residual.degree

    @property
    def violations(self) -> list:
        return [f for f in self.findings if f.violation] + list(self.missing)

    def pattern(self) -> tuple:
        return tuple((f.curve.degree, f.observed_multiplicity) for f in self.findings) + (self.residual_degree,)

    def to_json(self) -> dict:
        irr = self.irreducibility
        return {
            "F_degree": self.F_degree,
            "components": [f.to_json() for f in self.findings],
            "residual": self.residual.to_json(),
            "residual_degree": self.residual_degree,
            "irreducibility": irr.verdict if irr is not None else None,
            "irreducibility_detail": irr.to_json() if irr is not None else None,
            "missing_predicted": [
                {"curve": C.poly.to_json(), "degree": C.degree, "support": list(C.support), "predicted_mult": p}
                for C, p in self.missing
            ],
            "h_tables": self.h_tables,
            "params": {"d": self.d, "m": self.m, "n": self.n, "label": self.label, "seed": self.seed},
        }


def analyze(Z, d: int | None = None, m: int | None = None, algorithm: str = "interpolation",
            probe_primes: int = 12, seed: int = 0, F: HPoly | None = None, h_tables: bool = True) -> FactorizationReport:
    """Full factorization report for the determinant curve of Z."""
    if d is None or m is None:
        pc = parity_parameters(len(Z))
        d, m = pc.d, pc.m
    if F is None:
        F = raw_determinant(InterpProblem(d, m, Z), algorithm)
    if F.is_zero():
        raise ValueError("the interpolation determinant vanishes identically")
    F = canonicalize(F)
    cands = candidate_components(Z, d, m)
    findings = detect_fixed_components(F, cands, d, m)
    found = {f.curve.poly for f in findings}
    missing = []
    for C in cands:
        p = predicted_multiplicity(C.degree, d, m, C.n_support)
        if p and C.poly not in found:
            missing.append((C, p))
    G = residual(F, findings)
    verdict = irreducibility_probe(G, probe_primes, seed) if G.degree else None
    tables = []
    if h_tables:
        others = [f.curve for f in findings]
        for f in findings:
            avoid = [c for c in others if c is not f.curve]
            try:
                (B,) = sample_points_on(f.curve, Z, 1, seed, avoid)
            except (GenerationError, GeometryError):
                continue
            rows = verify_h_bounds(Z, d, f.curve, B, range(1, d + 1), m)
            tables.append({
                "curve": str(f.curve.poly),
                "B": list(B),
                "rows": rows,
                "sum_h": sum(max(0, r["actual_h"]) for r in rows),
                "multiplicity_at_B": multiplicity_at_point(F, B),
            })
    label = getattr(Z, "label", "")
    return FactorizationReport(d, m, len(Z), F, findings, G, verdict, missing, tables, label, getattr(Z, "seed", None))
