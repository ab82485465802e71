from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from mwlat.errors import NonMinimalModel, NotInSpan, SpecError
from mwlat.mwlattice import (HeightContext, decompose, det, gram, height, intersect_zero,
                             local_contributions, pair, solve)
from mwlat.weierstrass import Point, ec_add, ec_mul, linear_combination

F = Fraction


def test_heights_1a(ex1a, ctx1a):
    want = {"Ptau": 0, "P0": 2, "P1": 1, "P2": 1, "P3": 1, "P4": 1}
    assert {n: height(ctx1a, ex1a.point(n)) for n in want} == want
    assert height(ctx1a, Point.zero()) == 0


def test_height_formula_terms(ex1a, ctx1a):
    # h = 2 chi + 2 (P.O) - sum of local terms
    for n in ("P0", "P1", "P2", "P3"):
        P = ex1a.point(n)
        contr = sum(c for _, _, c in local_contributions(ctx1a, P))
        assert height(ctx1a, P) == 2 + 2 * intersect_zero(ctx1a, P) - contr
    P0 = ex1a.point("P0")
    assert intersect_zero(ctx1a, P0) == 0
    # [2]P0 meets every reducible fiber in the identity component: 8 = 2 + 2 (2P0.O)
    assert intersect_zero(ctx1a, ec_mul(ex1a.curve, 2, P0)) == 3
    with pytest.raises(SpecError):
        intersect_zero(ctx1a, Point.zero())


def test_intersect_zero_reads_the_s_chart(ctx1a):
    from mwlat.errors import OddPoleOrder
    from mwlat.funcfield import Poly, RatFunc

    tw = ctx1a.curve.tower
    t = Poly.gen(tw)
    one = Poly.const(tw, 1)
    # only x_P enters: a degree-4 polynomial has a double pole in s^2 x at s = 0
    assert intersect_zero(ctx1a, Point(t ** 4 + 1, one)) == 1
    assert intersect_zero(ctx1a, Point(t ** 2, one)) == 0
    assert intersect_zero(ctx1a, Point(RatFunc(one, (t + 1) ** 2), one)) == 1
    with pytest.raises(OddPoleOrder):
        intersect_zero(ctx1a, Point(t ** 3, one))
    with pytest.raises(OddPoleOrder):
        intersect_zero(ctx1a, Point(RatFunc(one, t + 1), one))


def test_gram_1a(ex1a, ctx1a):
    G = gram(ctx1a, [ex1a.point(n) for n in ("P0", "P1", "P2", "P3")])
    half = F(1, 2)
    assert G.as_lists() == [[2, 1, 1, 1], [1, 1, half, half], [1, half, 1, half], [1, half, half, 1]]
    assert G.leading_minors() == [2, 1, F(1, 2), F(1, 4)]
    want = sympy.Matrix(G.as_lists()).det()
    assert det(G.as_lists()) == F(int(want.p), int(want.q))


def test_gram_1b(ex1b, ctx1b):
    G = gram(ctx1b, [ex1b.point(n) for n in ("P1", "P2", "P3")])
    assert G.as_lists() == [[F(1, 2), 0, 0], [0, F(1, 2), 0], [0, 0, F(1, 2)]]
    heights = {n: height(ctx1b, ex1b.point(n)) for n in ("P4", "P5", "P6", "P7")}
    assert set(heights.values()) == {1}


def test_decompose_examples(ex1a, ctx1a):
    basis = [ex1a.point(n) for n in ("P0", "P1", "P2", "P3")]
    G = gram(ctx1a, basis)
    coeffs, rest = decompose(ctx1a, basis, G, ex1a.point("P4"))
    assert linear_combination(ex1a.curve, coeffs, basis) == ec_add(ex1a.curve, ex1a.point("P4"),
                                                                    rest)
    assert rest in (Point.zero(), ex1a.point("Ptau"))
    with pytest.raises(NotInSpan):
        decompose(ctx1a, basis[:1], gram(ctx1a, basis[:1]), ex1a.point("P1"))


def test_solve_matches_sympy():
    M = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    b = [1, F(1, 2), -2]
    got = solve(M, b)
    want = sympy.Matrix(M).LUsolve(sympy.Matrix([sympy.Rational(1), sympy.Rational(1, 2), -2]))
    assert got == [F(int(w.p), int(w.q)) for w in want]
    with pytest.raises(NotInSpan):
        solve([[1, 2], [2, 4]], [1, 1])


def test_build_rejects_non_rational_surface():
    from mwlat.funcfield import QQ, Poly
    from mwlat.weierstrass import CurveModel

    # a constant curve reads y^2 = x^3 - s^6 in the chart at infinity: not minimal there
    with pytest.raises(NonMinimalModel):
        HeightContext.build(CurveModel(0, 0, Poly.const(QQ, -1)))


# property tests on the 1-(b) surface, where G = I/2 over P1, P2, P3 ----------

vec = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
small = st.tuples(st.integers(-1, 1), st.integers(-1, 1), st.integers(-1, 1))


@pytest.fixture(scope="module")
def lattice(ex1b, ctx1b):
    gens = [ex1b.point(n) for n in ("P1", "P2", "P3")]
    return ex1b.curve, ctx1b, gens, ex1b.point("Ptau"), gram(ctx1b, gens)


def _pt(lat, a, eps=0):
    C, _, gens, tau, _ = lat
    P = linear_combination(C, list(a), gens)
    return ec_add(C, P, tau) if eps else P


@given(vec, st.integers(0, 1))
def test_height_is_the_gram_quadratic_form(lattice, a, eps):
    assert height(lattice[1], _pt(lattice, a, eps)) == F(sum(x * x for x in a), 2)


@given(small, st.integers(0, 1), st.integers(-2, 2))
def test_height_scales_quadratically(lattice, a, eps, n):
    C, ctx = lattice[0], lattice[1]
    P = _pt(lattice, a, eps)
    assert height(ctx, ec_mul(C, n, P)) == n * n * height(ctx, P)


@given(small, small, st.integers(0, 1))
def test_pairing_is_symmetric_bilinear(lattice, a, b, eps):
    ctx = lattice[1]
    P, Q = _pt(lattice, a, eps), _pt(lattice, b)
    assert pair(ctx, P, Q) == pair(ctx, Q, P) == F(sum(x * y for x, y in zip(a, b)), 2)


@given(vec, st.integers(0, 1))
def test_decompose_recovers_coordinates(lattice, a, eps):
    C, ctx, gens, tau, G = lattice
    coeffs, rest = decompose(ctx, gens, G, _pt(lattice, a, eps))
    assert coeffs == list(a)
    assert rest == (tau if eps else Point.zero())
