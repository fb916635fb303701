"""Numeric bounds for forced components of the determinant curve.

For an irreducible curve C of degree t containing n_C points of Z, the defect
h_{j,B} at a point B of C is bounded below by n_C + j - t*d + (t^2 - 3t)/2
(when C is a fixed component of the order-j system). t^2 - 3t is always even.
"""
from __future__ import annotations


def _half_t_term(t: int) -> int:
    return (t * t - 3 * t) // 2


def h_bound(t: int, d: int, nC: int, j: int) -> int:
    return max(0, nC + j - t * d + _half_t_term(t))


def j_min(t: int, d: int, nC: int) -> int:
    # the ceiling is exact: every term is an integer
    return max(t, t * d - nC - _half_t_term(t) + 1)


def predicted_multiplicity(t: int, d: int, m: int, nC: int) -> int:
    """Lower bound for the multiplicity of C in the determinant: sum of h-bounds, j = t..m."""
    if m > d:
        raise ValueError("m must not exceed d")
    return sum(h_bound(t, d, nC, j) for j in range(t, m + 1))


def min_support(t: int, d: int) -> int:
    """Fewest points of Z a degree-t fixed component can carry."""
    return (t - 1) * d - _half_t_term(t) + 2


def feasibility_check(t: int, d: int, nC: int, m: int) -> bool:
    return nC >= min_support(t, d) and m >= j_min(t, d, nC)


def expected_jumping_degree(n: int) -> int:
    """3d^2 - tau with tau = binom(n, 2) for n = 2d + 1 nodal lines; equals d(d-1)."""
    if n % 2 == 0 or n < 3:
        raise ValueError("defined for odd n = 2d + 1 >= 3")
    d = (n - 1) // 2
    return 3 * d * d - n * (n - 1) // 2
