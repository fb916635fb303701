"""Exact scalar fields: the rationals and prime fields GF(p).

Rational scalars are plain :class:`fractions.Fraction` values (always reduced,
positive denominator). Prime-field scalars are :class:`ModP` instances. Mixing
the two, or mixing residues for different primes, raises ``FieldMismatch``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class FieldMismatch(TypeError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng) -> int:
    """A uniformly drawn prime with exactly ``bits`` bits."""
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_prime(n):
            return n


class ModP:
    """Residue class modulo an odd prime, value kept in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatch(f"GF({self.p}) vs QQ")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by 0 in GF(%d)" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ModP(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class RationalField:
    tag = "QQ"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, ModP):
            raise FieldMismatch("cannot read a GF(p) residue as a rational")
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def to_str(self, c) -> str:
        return str(Fraction(c))

    def parse(self, s: str) -> Fraction:
        return Fraction(s)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"GF(p) needs an odd prime, got {p}")
        self.p = p
        self.tag = f"GF({p})"
        self.characteristic = p

    def __call__(self, x) -> ModP:
        if isinstance(x, ModP):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) residue in {self.tag}")
            return x
        if isinstance(x, Fraction):
            return ModP(x.numerator, self.p) / x.denominator
        return ModP(int(x), self.p)

    @property
    def zero(self):
        return ModP(0, self.p)

    @property
    def one(self):
        return ModP(1, self.p)

    def contains(self, x) -> bool:
        return isinstance(x, ModP) and x.p == self.p

    def to_str(self, c) -> str:
        return str(c.v)

    def parse(self, s: str) -> ModP:
        return self(Fraction(s))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.tag


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_of(x):
    """Field an individual scalar belongs to (ints count as rationals)."""
    if isinstance(x, ModP):
        return GF(x.p)
    if isinstance(x, (Fraction, int)):
        return QQ
    raise TypeError(f"not an exact scalar: {x!r}")
