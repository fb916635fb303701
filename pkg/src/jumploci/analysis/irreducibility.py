"""Irreducibility probe for forms over QQ.

A form F is restricted to a random line of the plane, giving a univariate
integer polynomial f of the same degree. Any factorization F = G*H over QQ
restricts to one of f, so for every good prime p the degrees of the factors
of f mod p must contain a sub-multiset summing to deg G. Intersecting these
subset-sum sets over several primes either rules out every proper degree
(irreducible over QQ) or leaves candidate degrees open.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..exactalg import HPoly, canonicalize, exact_divide, random_prime
from ..exactalg.univariate import NotSquarefree, factor_degrees_mod_p, rational_roots
from ..geometry import ProjPoint, cross


@dataclass
class Verdict:
    verdict: str
    degree: int
    open_degrees: list = field(default_factory=list)
    patterns: list = field(default_factory=list)
    witness: HPoly | None = None

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "degree": self.degree,
            "open_degrees": self.open_degrees,
            "patterns": [{"p": p, "degrees": d} for p, d in self.patterns],
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def restrict_to_line(F: HPoly, u, v) -> list[int]:
    """Coefficients (low first) of s -> F(s*u + v); F must have integer coefficients."""
    D = F.degree
    lin = [[v[i], u[i]] for i in range(3)]
    pows = []
    for i in range(3):
        row = [[1]]
        for _ in range(D):
            row.append(_imul(row[-1], lin[i]))
        pows.append(row)
    out = [0] * (D + 1)
    for (e0, e1, e2), c in F.terms:
        term = _imul(_imul(pows[0][e0], pows[1][e1]), pows[2][e2])
        for k, t in enumerate(term):
            out[k] += int(c) * t
    return out


def _imul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _subset_sums(degrees) -> set[int]:
    sums = {0}
    for k in degrees:
        sums |= {s + k for s in sums}
    return sums


def _random_line(rng, F):
    while True:
        u = [rng.randint(-30, 30) for _ in range(3)]
        v = [rng.randint(-30, 30) for _ in range(3)]
        if any(cross(u, v)) and F.eval(u):
            return u, v


def _linear_factor(F: HPoly, rng) -> HPoly | None:
    pts = []
    for _ in range(2):
        u, v = _random_line(rng, F)
        f = restrict_to_line(F, u, v)
        found = []
        for r in rational_roots(f, rng):
            found.append(ProjPoint([r.numerator * a + r.denominator * b for a, b in zip(u, v)]))
        pts.append(found)
    for A in pts[0]:
        for B in pts[1]:
            if A != B:
                ell = canonicalize(HPoly.linear(cross(A, B)))
                if exact_divide(F, ell) is not None:
                    return ell
    return None


def irreducibility_probe(F: HPoly, n_primes: int = 12, seed: int = 0, candidates=(), max_lines: int = 6) -> Verdict:
    if F.is_zero() or F.degree < 1:
        raise ValueError("probe needs a nonconstant form")
    F = canonicalize(F)
    D = F.degree
    if D == 1:
        return Verdict("irreducible", D)
    rng = random.Random(seed)
    open_degrees = set(range(1, D))
    patterns = []
    for _ in range(max_lines):
        u, v = _random_line(rng, F)
        f = restrict_to_line(F, u, v)
        used, draws = 0, 0
        while used < n_primes and draws < 4 * n_primes:
            draws += 1
            p = random_prime(20, rng)
            if f[-1] % p == 0:
                continue
            try:
                degs = factor_degrees_mod_p(f, p)
            except NotSquarefree:
                continue
            used += 1
            patterns.append((p, degs))
            open_degrees &= _subset_sums(degs)
            if not open_degrees:
                return Verdict("irreducible", D, [], patterns)
        if used:
            break
    for C in candidates:
        poly = getattr(C, "poly", C)
        if 0 < poly.degree < D and exact_divide(F, poly) is not None:
            return Verdict("reducible", D, sorted(open_degrees), patterns, poly)
    if not patterns or 1 in open_degrees:
        ell = _linear_factor(F, rng)
        if ell is not None:
            return Verdict("reducible", D, sorted(open_degrees), patterns, ell)
    return Verdict("inconclusive", D, sorted(open_degrees), patterns)
