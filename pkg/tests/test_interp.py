import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import general
from jumploci.exactalg import GF, HPoly, canonicalize
from jumploci.geometry import ProjPoint
from jumploci.interp import (
    InterpProblem,
    NonSquareError,
    build_matrix,
    determinant,
    determinant_json,
    expected_degree,
    monomial_basis,
    parity_parameters,
    raw_determinant,
    specialize_at,
    system_dimension,
)

P = HPoly.parse
TRIANGLE = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
COLLINEAR = ((1, 0, 0), (0, 1, 0), (1, 1, 0))


class TestBasis:
    def test_degree_one(self):
        assert monomial_basis(1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def test_degree_two_grlex(self):
        assert monomial_basis(2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]

    def test_size(self):
        assert len(monomial_basis(4)) == 15

    def test_negative(self):
        with pytest.raises(ValueError):
            monomial_basis(-1)


class TestParity:
    @pytest.mark.parametrize("n, dm, D", [(9, (4, 3), 12), (7, (3, 2), 6), (4, (3, 3), 6)])
    def test_examples(self, n, dm, D):
        pc = parity_parameters(n)
        assert (pc.d, pc.m) == dm and pc.expected_degree == D

    @pytest.mark.parametrize("n", range(4, 16))
    def test_square_and_degree(self, n):
        pc = parity_parameters(n)
        assert comb(pc.d + 2, 2) == n + comb(pc.m + 1, 2)
        k = n // 2
        assert pc.expected_degree == (k * (k - 1) if n % 2 else comb(2 * k, 2))

    def test_n_three_refused(self):
        with pytest.raises(ValueError):
            parity_parameters(3)

    def test_too_small(self):
        with pytest.raises(ValueError):
            parity_parameters(1)


class TestBuildMatrix:
    def test_triangle_rows(self):
        M = build_matrix(InterpProblem(2, 2, TRIANGLE))
        assert M.shape == (6, 6)
        # columns are x^2, xy, xz, y^2, yz, z^2; d/dx applied to them at (a0, a1, a2)
        assert [str(e) if e else "0" for e in M.rows[3]] == ["2*a0", "a1", "a2", "0", "0", "0"]
        assert [str(e) if e else "0" for e in M.rows[5]] == ["0", "0", "a0", "0", "a1", "2*a2"]

    def test_one_point_line(self):
        M = build_matrix(InterpProblem(1, 1, ((2, 3, 5),)))
        assert M.shape == (2, 3)
        assert [e.eval((0, 0, 0)) for e in M.rows[0]] == [2, 3, 5]
        assert list(M.rows[1]) == [P("a0"), P("a1"), P("a2")]

    def test_block_degrees_4_3(self):
        cfg = general(9)
        M = build_matrix(InterpProblem(4, 3, cfg.points))
        assert M.shape == (15, 15)
        assert all(e.degree in (0, None) for r in M.rows[:9] for e in r)
        assert all(e.degree in (2, None) for r in M.rows[9:] for e in r)
        assert M.operators == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))

    def test_m_exceeds_d(self):
        with pytest.raises(ValueError):
            InterpProblem(2, 3, TRIANGLE)

    def test_json_blocks(self):
        obj = build_matrix(InterpProblem(2, 2, TRIANGLE)).to_json()
        assert [b["label"] for b in obj["blocks"]] == ["evaluation", "derivative"]
        assert obj["blocks"][1]["rows"][0][0] == P("2*a0").to_json()


class TestSpecialize:
    def test_triangle_at_first_point(self):
        F = specialize_at(build_matrix(InterpProblem(2, 2, TRIANGLE)), (1, 0, 0))
        # rows (2,0,0,0,0,0),(0,0,0,1,0,0),(0,0,0,0,1,0) in the column order
        # x^2,y^2,z^2,xy,xz,yz become, in grlex order x^2,xy,xz,y^2,yz,z^2:
        assert F.rows[3:] == ((2, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0))

    @given(st.integers(0, 10**6))
    def test_determinant_consistency(self, seed):
        rng = random.Random(seed)
        p = InterpProblem(3, 2, general(7).points)
        F = _raw_cached(p)
        M = build_matrix(p)
        B = (rng.randint(-30, 30), rng.randint(-30, 30), rng.randint(-30, 30))
        assert specialize_at(M, B).det() == F.eval(B)

    def test_zero_entries_stay_zero(self):
        F = specialize_at(build_matrix(InterpProblem(2, 2, TRIANGLE)), (3, 5, 7))
        assert F.rows[3][3:] == (0, 0, 0)

    def test_mod_p(self):
        M = build_matrix(InterpProblem(2, 2, TRIANGLE), GF(11))
        assert specialize_at(M, (1, 1, 1)).det() == GF(11)(2)


_cache = {}


def _raw_cached(p):
    if p not in _cache:
        _cache[p] = raw_determinant(p)
    return _cache[p]


class TestSystemDimension:
    def test_secant_fat_point(self):
        assert system_dimension(2, [((1, 1, 0), 2)], TRIANGLE) == 1

    def test_generic_fat_point(self):
        assert system_dimension(2, [((2, 3, 5), 2)], TRIANGLE) == 0

    def test_lines_through_point(self):
        assert system_dimension(1, [((2, 3, 5), 1)], ()) == 2

    def test_bad_multiplicity(self):
        with pytest.raises(ValueError):
            system_dimension(2, [((1, 0, 0), 0)], ())

    @given(st.integers(0, 10**6))
    def test_lower_bound(self, seed):
        rng = random.Random(seed)
        d = rng.randint(1, 4)
        Z = general(rng.randint(2, 6), seed=rng.randint(1, 3)).points
        B = ProjPoint((rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(1, 5)))
        mult = rng.randint(1, 3)
        dim = system_dimension(d, [(B, mult)], Z)
        assert dim >= comb(d + 2, 2) - len(Z) - comb(mult + 1, 2)


class TestDeterminant:
    def test_triangle(self):
        p = InterpProblem(2, 2, TRIANGLE)
        # -2*a0*a1*a2 in the column order x^2, y^2, z^2, xy, xz, yz; grlex columns flip the sign
        assert raw_determinant(p) == P("2*a0*a1*a2")
        assert raw_determinant(p, "bareiss") == P("2*a0*a1*a2")
        assert determinant(p) == P("a0*a1*a2")

    def test_collinear(self):
        assert determinant(InterpProblem(2, 2, COLLINEAR)) == P("a2^3")

    def test_two_points(self):
        assert determinant(InterpProblem(1, 1, ((1, 0, 0), (0, 1, 0)))) == P("a2")

    def test_non_square(self):
        with pytest.raises(NonSquareError):
            determinant(InterpProblem(2, 1, TRIANGLE))

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            raw_determinant(InterpProblem(2, 2, TRIANGLE), "laplace")

    @pytest.mark.parametrize("n, seed", [(4, 1), (5, 2), (7, 3), (9, 4)])
    def test_algorithms_agree(self, n, seed):
        pc = parity_parameters(n)
        p = InterpProblem(pc.d, pc.m, general(n, seed).points)
        F = determinant(p, "interpolation")
        assert F == determinant(p, "bareiss")
        assert F.degree == expected_degree(pc.d, pc.m)

    def test_seed_independence(self):
        p = InterpProblem(3, 2, general(7).points)
        assert canonicalize(raw_determinant(p, seed=0)) == canonicalize(raw_determinant(p, seed=9))

    def test_parallel_matches_serial(self, monkeypatch):
        p = InterpProblem(3, 2, general(7).points)
        serial = raw_determinant(p)
        monkeypatch.setenv("JL_THREADS", "2")
        assert raw_determinant(p) == serial

    def test_json(self):
        p = InterpProblem(2, 2, TRIANGLE)
        obj = determinant_json(determinant(p), p)
        assert obj["expected_degree"] == 3 and obj["is_zero"] is False
        assert obj["terms"] == [{"e": [1, 1, 1], "c": "1"}]

    @given(st.permutations(range(7)), st.lists(st.integers(-5, 5).filter(bool), min_size=7, max_size=7))
    def test_permutation_and_rescaling(self, perm, scales):
        base = general(7).points
        F = _canon_cached(base)
        moved = tuple(tuple(s * c for c in base[i]) for i, s in zip(perm, scales))
        assert determinant(InterpProblem(3, 2, moved)) == F

    @given(st.integers(0, 10**6))
    def test_zero_iff_positive_dimension(self, seed):
        rng = random.Random(seed)
        Z = general(5).points
        F = _canon_cached(Z, 2, 1)
        # half of the samples on the conic through Z, where F vanishes
        if rng.random() < 0.5:
            from jumploci.geometry import conic_through, sample_points_on

            (B,) = sample_points_on(conic_through(Z, Z), Z, 1, rng.randint(0, 10**6))
        else:
            B = (rng.randint(-40, 40), rng.randint(-40, 40), rng.randint(1, 40))
        assert (F.eval(B) == 0) == (system_dimension(2, [(B, 1)], Z) > 0)


_ccache = {}


def _canon_cached(Z, d=3, m=2):
    key = (Z, d, m)
    if key not in _ccache:
        _ccache[key] = determinant(InterpProblem(d, m, Z))
    return _ccache[key]
