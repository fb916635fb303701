"""Recover a homogeneous ternary form of known degree from its values.

The form is dehomogenized on the chart var2 = 1 and fitted on the principal
lattice {(x0 + i*h, y0 + j*h) : i + j <= D}, which is unisolvent for
bivariate polynomials of total degree <= D. The fit uses forward differences
(Newton form), so no linear system is solved.
"""
from __future__ import annotations

import random

from .fields import QQ
from .poly import HPoly


class SingularFit(ArithmeticError):
    pass


class InconsistentOracle(ArithmeticError):
    pass


def lattice(D: int) -> list[tuple[int, int]]:
    """Lattice indices (i, j) in evaluation order; the point is (x0+i*h, y0+j*h, 1)."""
    return [(i, j) for i in range(D + 1) for j in range(D + 1 - i)]


def _grid_params(seed: int):
    if seed == 0:
        return 0, 0, 1
    rng = random.Random(seed)
    return rng.randint(-50, 50), rng.randint(-50, 50), rng.randint(1, 7)


def _falling_basis(a: int, x0, h, field) -> list:
    """Coefficients (low first) of C((x - x0)/h, a) as a polynomial in x."""
    poly = [field.one]
    inv_h = field.one / field(h)
    for k in range(a):
        # multiply by ((x - x0)/h - k) / (k + 1)
        c0 = (field(-x0) * inv_h - k) / (k + 1)
        c1 = inv_h / (k + 1)
        nxt = [field.zero] * (len(poly) + 1)
        for t, c in enumerate(poly):
            nxt[t] = nxt[t] + c * c0
            nxt[t + 1] = nxt[t + 1] + c * c1
        poly = nxt
    return poly


def interpolate_homogeneous(
    D: int,
    eval_oracle,
    field=QQ,
    vars: str = "a",
    seed: int = 0,
    n_checks: int = 3,
    map_fn=map,
) -> HPoly:
    """Return the degree-D form whose values ``eval_oracle`` reports.

    ``eval_oracle`` takes a coordinate triple and returns a field element. The
    result is verified at ``n_checks`` extra points off the lattice; a mismatch
    means the oracle is not a degree-D form and raises ``InconsistentOracle``.
    """
    if D < 0:
        raise ValueError("degree must be nonnegative")
    x0, y0, h = _grid_params(seed)
    if field.characteristic and (field.characteristic <= D or h % field.characteristic == 0):
        raise SingularFit(f"lattice of degree {D} degenerates in {field!r}")
    idx = lattice(D)
    pts = [(field(x0 + i * h), field(y0 + j * h), field.one) for i, j in idx]
    vals = dict(zip(idx, map_fn(eval_oracle, pts)))
    vals = {k: field(v) for k, v in vals.items()}

    # forward differences in j, then in i
    dy = {}
    for i in range(D + 1):
        col = [vals[(i, j)] for j in range(D + 1 - i)]
        for b in range(D + 1 - i):
            dy[(i, b)] = col[0]
            col = [col[t + 1] - col[t] for t in range(len(col) - 1)]
    coeffs = {}
    for b in range(D + 1):
        row = [dy[(i, b)] for i in range(D + 1 - b)]
        for a in range(D + 1 - b):
            coeffs[(a, b)] = row[0]
            row = [row[t + 1] - row[t] for t in range(len(row) - 1)]

    xb = [_falling_basis(a, x0, h, field) for a in range(D + 1)]
    yb = [_falling_basis(b, y0, h, field) for b in range(D + 1)]
    affine: dict[tuple[int, int], object] = {}
    for (a, b), c in coeffs.items():
        if not c:
            continue
        for p, cx in enumerate(xb[a]):
            if not cx:
                continue
            for q, cy in enumerate(yb[b]):
                if cy:
                    key = (p, q)
                    affine[key] = affine.get(key, field.zero) + c * cx * cy
    result = HPoly(
        (((p, q, D - p - q), c) for (p, q), c in affine.items()), field, vars
    )
    if result and result.degree != D:
        raise InconsistentOracle("fitted form has the wrong degree")

    rng = random.Random(10007 + seed)
    for _ in range(n_checks):
        pt = (field(rng.randint(-10**6, 10**6)), field(rng.randint(-10**6, 10**6)), field(rng.randint(1, 97)))
        if field(eval_oracle(pt)) != (result.eval(pt) if result else field.zero):
            raise InconsistentOracle(f"oracle disagrees with degree-{D} fit at {pt}")
    return result

