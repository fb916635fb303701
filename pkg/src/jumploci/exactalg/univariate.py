"""Univariate polynomials over GF(p) and ZZ as coefficient lists (lowest degree first).

Supports the irreducibility probe: distinct-degree factorization mod p,
roots mod p, and rational roots of integer polynomials via Hensel lifting.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, isqrt

from .fields import is_prime


class NotSquarefree(ValueError):
    pass


class BadPrime(ValueError):
    pass


def trim(f: list[int]) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f: list[int]) -> int:
    return len(f) - 1


def reduce_mod(f, p: int) -> list[int]:
    return trim([c % p for c in f])


def p_sub(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def p_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def p_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv = pow(g[-1], -1, p)
    q = [0] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g) and f:
        shift = len(f) - len(g)
        c = f[-1] * inv % p
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        f = trim(f)
    return trim(q), f


def p_mod(f, g, p):
    return p_divmod(f, g, p)[1]


def p_monic(f, p):
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def p_gcd(f, g, p):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, p_mod(f, g, p)
    return p_monic(f, p) if f else []


def p_powmod(base, e: int, modulus, p):
    result = [1]
    base = p_mod(base, modulus, p)
    while e:
        if e & 1:
            result = p_mod(p_mul(result, base, p), modulus, p)
        base = p_mod(p_mul(base, base, p), modulus, p)
        e >>= 1
    return result


def derivative(f, p=None):
    d = [i * c for i, c in enumerate(f)][1:]
    return reduce_mod(d, p) if p else trim(d)


def is_squarefree_mod_p(f, p) -> bool:
    f = reduce_mod(f, p)
    return deg(p_gcd(f, derivative(f, p), p)) == 0


def factor_degrees_mod_p(f, p: int) -> list[int]:
    """Sorted degrees of the irreducible factors of squarefree ``f`` over GF(p).

    Distinct-degree factorization: the product of all degree-i factors is
    gcd(f, x^(p^i) - x) once lower degrees have been removed.
    """
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
    f = [c % p for c in f]
    if not f or f[-1] == 0:
        raise BadPrime(f"p={p} divides the leading coefficient")
    f = trim(f)
    if not is_squarefree_mod_p(f, p):
        raise NotSquarefree(f"polynomial is not squarefree mod {p}")
    f = p_monic(f, p)
    degrees: list[int] = []
    x = [0, 1]
    h = x
    i = 1
    while deg(f) >= 2 * i:
        h = p_powmod(h, p, f, p)
        g = p_gcd(f, p_sub(h, x, p), p)
        if deg(g) > 0:
            degrees += [i] * (deg(g) // i)
            f = p_divmod(f, g, p)[0]
            h = p_mod(h, f, p)
        i += 1
    if deg(f) > 0:
        degrees.append(deg(f))
    return sorted(degrees)


def roots_mod_p(f, p: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots of ``f`` in GF(p), p odd, via Cantor-Zassenhaus splitting."""
    rng = rng or random.Random(0)
    f = reduce_mod(f, p)
    if deg(f) < 1:
        return []
    f = p_monic(f, p)
    g = p_gcd(f, p_sub(p_powmod([0, 1], p, f, p), [0, 1], p), p)
    roots: list[int] = []
    stack = [g]
    while stack:
        h = stack.pop()
        if deg(h) == 0:
            continue
        if deg(h) == 1:
            roots.append((-h[0]) * pow(h[1], -1, p) % p)
            continue
        while True:
            delta = rng.randrange(p)
            w = p_sub(p_powmod([delta, 1], (p - 1) // 2, h, p), [1], p)
            k = p_gcd(h, w, p)
            if 0 < deg(k) < deg(h):
                stack.append(k)
                stack.append(p_divmod(h, k, p)[0])
                break
    return sorted(roots)


def eval_int(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def rational_reconstruct(a: int, m: int, bound: int) -> Fraction | None:
    """Fraction n/d with |n|, d <= bound and n = a*d mod m, if one exists."""
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def q_squarefree_part(f: list[int]) -> list[int]:
    """Primitive squarefree part of an integer polynomial."""
    fr = [Fraction(c) for c in trim(f)]
    g = _q_gcd(fr, [Fraction(c) for c in derivative(f)])
    q = _q_div(fr, g)
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in q]
    cont = 0
    for c in ints:
        cont = gcd(cont, c)
    return [c // cont for c in ints]


def _q_divmod(f, g):
    f = list(f)
    q = [Fraction(0)] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g) and f:
        shift = len(f) - len(g)
        c = f[-1] / g[-1]
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] -= c * b
        while f and f[-1] == 0:
            f.pop()
    return q, f


def _q_div(f, g):
    return _q_divmod(f, g)[0]


def _q_gcd(f, g):
    while g and any(g):
        _, r = _q_divmod(f, g)
        f, g = g, r
    return f


def rational_roots(f: list[int], rng: random.Random | None = None) -> list[Fraction]:
    """All rational roots of a nonzero integer polynomial (p-adic lifting)."""
    rng = rng or random.Random(0)
    f = trim(f)
    roots: list[Fraction] = []
    while f and f[0] == 0:
        roots.append(Fraction(0))
        f = f[1:]
    if deg(f) < 1:
        return roots
    f = q_squarefree_part(f)
    if deg(f) < 1:
        return roots
    lc, c0 = abs(f[-1]), abs(f[0])
    bound = max(lc, c0)
    # a root n/d has |n| <= |c0| and d <= |lc|
    p = 3
    while f[-1] % p == 0 or not is_squarefree_mod_p(f, p):
        p = _next_prime(p)
    df = derivative(f)
    target = 2 * bound * bound + 1
    for r in roots_mod_p(f, p, rng):
        m, x = p, r
        while m < target:
            # Newton step modulo m^2
            m2 = m * m
            x = (x - eval_int(f, x) * pow(eval_int(df, x), -1, m2)) % m2
            m = m2
        cand = rational_reconstruct(x, m, isqrt(m // 2))
        if cand is not None and _is_root(f, cand):
            roots.append(cand)
    return sorted(set(roots))


def _is_root(f, q: Fraction) -> bool:
    n, d = q.numerator, q.denominator
    k = len(f) - 1
    return sum(c * n ** i * d ** (k - i) for i, c in enumerate(f)) == 0


def _next_prime(p: int) -> int:
    p += 2 if p > 2 else 1
    while not is_prime(p):
        p += 2
    return p
