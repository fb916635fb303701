"""Homogeneous polynomials in three variables with exact coefficients.

Monomials are exponent triples. The global monomial order is graded
lexicographic with var0 > var1 > var2; for homogeneous polynomials this is
plain lexicographic order on the triples, and term lists are kept descending.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping

from .fields import QQ, FieldMismatch, field_of

VARSETS = {"a": ("a0", "a1", "a2"), "xyz": ("x", "y", "z")}


class PolyError(ValueError):
    pass


class VariableMismatch(PolyError):
    pass


class InhomogeneousError(PolyError):
    pass


def monomials_of_degree(d: int) -> list[tuple[int, int, int]]:
    """All degree-d exponent triples, descending graded-lex."""
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class HPoly:
    """Immutable homogeneous polynomial; the zero polynomial has degree ``None``."""

    __slots__ = ("_terms", "field", "vars", "degree", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), field=QQ, vars: str = "a"):
        if vars not in VARSETS:
            raise VariableMismatch(f"unknown variable set {vars!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, int, int], object] = {}
        for e, c in items:
            e = tuple(int(k) for k in e)
            if len(e) != 3 or min(e) < 0:
                raise PolyError(f"bad exponent {e}")
            c = field(c)
            if e in clean:
                c = clean[e] + c
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise InhomogeneousError(f"terms of degrees {sorted(degs)}")
        self._terms = clean
        self.field = field
        self.vars = vars
        self.degree = degs.pop() if degs else None
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, field, vars: str, degree):
        # trusted constructor: terms already reduced, nonzero and homogeneous
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.field = field
        obj.vars = vars
        obj.degree = degree if terms else None
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, field=QQ, vars="a") -> "HPoly":
        return cls._raw({}, field, vars, None)

    @classmethod
    def constant(cls, c, field=QQ, vars="a") -> "HPoly":
        return cls({(0, 0, 0): c}, field, vars)

    @classmethod
    def var(cls, i: int, field=QQ, vars="a") -> "HPoly":
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1}, field, vars)

    @classmethod
    def linear(cls, coeffs, field=QQ, vars="a") -> "HPoly":
        return cls({(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]}, field, vars)

    @classmethod
    def parse(cls, text: str, field=QQ, vars="a") -> "HPoly":
        """Parse sums like ``"2*a0^2 - 3/4*a1*a2"``; ``**`` is accepted for powers."""
        names = VARSETS[vars]
        src = text.replace("**", "^").replace(" ", "")
        if src in ("", "0"):
            return cls.zero(field, vars)
        terms = []
        for sign, body in re.findall(r"([+-]?)([^+-]+)", src):
            coeff = Fraction(-1 if sign == "-" else 1)
            exps = [0, 0, 0]
            for factor in body.split("*"):
                base, _, power = factor.partition("^")
                if base in names:
                    exps[names.index(base)] += int(power or 1)
                else:
                    coeff *= Fraction(base) ** int(power or 1)
            terms.append((tuple(exps), coeff))
        return cls(terms, field, vars)

    # -- views ----------------------------------------------------------
    @property
    def terms(self) -> list[tuple[tuple[int, int, int], object]]:
        return sorted(self._terms.items(), reverse=True)

    def coeff(self, e) -> object:
        return self._terms.get(tuple(e), self.field.zero)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def leading_term(self):
        e = max(self._terms)
        return e, self._terms[e]

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.vars == other.vars and self.field == other.field and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.field, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"HPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = VARSETS[self.vars]
        out = []
        for e, c in self.terms:
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = self.field.to_str(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            if mono and mag == "1":
                piece = mono
            elif mono:
                piece = f"{mag}*{mono}"
            else:
                piece = mag
            if not out:
                out.append(("-" if neg else "") + piece)
            else:
                out.append(("- " if neg else "+ ") + piece)
        return " ".join(out)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "HPoly"):
        if self.vars != other.vars:
            raise VariableMismatch(f"{self.vars} vs {other.vars}")
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def _lift(self, other):
        if isinstance(other, HPoly):
            self._check(other)
            return other
        if self.field.contains(other) or isinstance(other, int):
            return HPoly.constant(other, self.field, self.vars)
        raise FieldMismatch(f"cannot combine {self.field!r} polynomial with {other!r}")

    def __add__(self, other):
        other = self._lift(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        if self.degree != other.degree:
            raise InhomogeneousError(f"degree {self.degree} + degree {other.degree}")
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return HPoly._raw(out, self.field, self.vars, self.degree)

    __radd__ = __add__

    def __neg__(self):
        return HPoly._raw({e: -c for e, c in self._terms.items()}, self.field, self.vars, self.degree)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "HPoly":
        c = self.field(c)
        if not c:
            return HPoly.zero(self.field, self.vars)
        return HPoly._raw({e: v * c for e, v in self._terms.items()}, self.field, self.vars, self.degree)

    def __mul__(self, other):
        if not isinstance(other, HPoly):
            return self.scale(other)
        self._check(other)
        if not self._terms or not other._terms:
            return HPoly.zero(self.field, self.vars)
        out: dict = {}
        for (i0, i1, i2), c in self._terms.items():
            for (j0, j1, j2), d in other._terms.items():
                e = (i0 + j0, i1 + j1, i2 + j2)
                v = out.get(e)
                out[e] = c * d if v is None else v + c * d
        out = {e: v for e, v in out.items() if v}
        return HPoly._raw(out, self.field, self.vars, self.degree + other.degree)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        result = HPoly.constant(1, self.field, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, i: int) -> "HPoly":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        out = {e: c for e, c in out.items() if c}
        deg = None if self.degree is None else self.degree - 1
        return HPoly._raw(out, self.field, self.vars, deg)

    def __call__(self, *pt):
        if len(pt) == 1:
            pt = tuple(pt[0])
        return self.eval(pt)

    def eval(self, pt) -> object:
        f = self.field
        x = [f(v) for v in pt]
        if len(x) != 3:
            raise PolyError("evaluation point needs three coordinates")
        # cache powers; degrees are small
        deg = self.degree or 0
        pows = []
        for v in x:
            row = [f.one]
            for _ in range(deg):
                row.append(row[-1] * v)
            pows.append(row)
        total = f.zero
        for (e0, e1, e2), c in self._terms.items():
            total = total + c * pows[0][e0] * pows[1][e1] * pows[2][e2]
        return total

    def change_field(self, field) -> "HPoly":
        return HPoly(((e, field(c)) for e, c in self._terms.items()), field, self.vars)

    def rename(self, vars: str) -> "HPoly":
        return HPoly._raw(dict(self._terms), self.field, vars, self.degree)

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vars": list(VARSETS[self.vars]),
            "degree": self.degree,
            "terms": [{"e": list(e), "c": self.field.to_str(c)} for e, c in self.terms],
        }

    @classmethod
    def from_json(cls, obj: Mapping, field=QQ) -> "HPoly":
        names = tuple(obj["vars"])
        vars = next((k for k, v in VARSETS.items() if v == names), None)
        if vars is None:
            raise VariableMismatch(f"unknown variables {names}")
        return cls(((t["e"], field.parse(t["c"])) for t in obj["terms"]), field, vars)


def poly_arith(op: str, f: HPoly, g=None) -> HPoly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    if op == "neg":
        return -f
    raise PolyError(f"unknown op {op!r}")


def poly_diff(f: HPoly, var_index: int) -> HPoly:
    return f.diff(var_index)


def poly_eval(f: HPoly, pt) -> object:
    for v in pt:
        if not isinstance(v, int) and field_of(v) != f.field:
            raise FieldMismatch(f"point in {field_of(v)!r}, polynomial over {f.field!r}")
    return f.eval(pt)


def exact_divide(f: HPoly, g: HPoly) -> HPoly | None:
    """Quotient ``q`` with ``f == g*q``, or ``None`` when ``g`` does not divide ``f``."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return HPoly.zero(f.field, f.vars)
    if f.degree < g.degree:
        return None
    ge, gc = g.leading_term()
    g_rest = [(e, c) for e, c in g._terms.items() if e != ge]
    inv = f.field.one / gc
    rem = dict(f._terms)
    quot = {}
    while rem:
        re_ = max(rem)
        qe = (re_[0] - ge[0], re_[1] - ge[1], re_[2] - ge[2])
        if min(qe) < 0:
            return None
        qc = rem.pop(re_) * inv
        quot[qe] = qc
        for e, c in g_rest:
            k = (e[0] + qe[0], e[1] + qe[1], e[2] + qe[2])
            v = rem.get(k)
            v = -qc * c if v is None else v - qc * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return HPoly._raw(quot, f.field, f.vars, f.degree - g.degree)


def content_and_primitive(f: HPoly) -> tuple[Fraction, HPoly]:
    """``(c, p)`` with ``f == c*p`` and ``p`` canonical."""
    if f.field != QQ:
        raise FieldMismatch("canonical form is defined over QQ only")
    if f.is_zero():
        return Fraction(0), f
    den = reduce(_lcm, (c.denominator for c in f._terms.values()), 1)
    num = reduce(gcd, (abs(c.numerator * (den // c.denominator)) for c in f._terms.values()), 0)
    c = Fraction(num, den)
    if f.leading_term()[1] < 0:
        c = -c
    return c, HPoly._raw({e: v / c for e, v in f._terms.items()}, QQ, f.vars, f.degree)


def canonicalize(f: HPoly) -> HPoly:
    """Integer-primitive representative with positive leading coefficient."""
    return content_and_primitive(f)[1]
