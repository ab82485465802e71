from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from mwlat.errors import BadIndex, NonMinimalModel, UnsupportedFiber
from mwlat.fibers import (FiberReport, KodairaType, chart_at_infinity, classify_fibers, component_index,
                          contribution, gamma_vector, kodaira_from_ords, model_invariants,
                          reducible_fibers, shioda_tate_tally, sum_ord_delta)
from mwlat.funcfield import QQ, Place, Poly
from mwlat.weierstrass import CurveModel, Point, ec_add, linear_combination

T, S = sympy.symbols("t s")


def _sym(p, var=T):
    return sum(sympy.Rational(str(c.rational())) * var ** k for k, c in enumerate(p.coeffs))


def test_model_1a_and_chart(ex1a):
    C = ex1a.curve
    assert C.b2.is_zero() and C.b4.is_zero()
    assert sympy.expand(_sym(C.b3) + T ** 3 + 3 * T ** 2 + 2 * T) == 0
    star = chart_at_infinity(C)
    assert star.var == "s"
    assert sympy.expand(_sym(star.b3, S) + S + 3 * S ** 2 + 2 * S ** 3) == 0


def test_classification_1a(ex1a):
    reps = classify_fibers(ex1a.curve)
    assert [r.label for r in reps] == ["t=-2", "t=-1", "t=0", "t=inf"]
    assert all(r.kodaira_type == "III" and r.ord_delta == 3 for r in reps)
    assert shioda_tate_tally(reps) == 4 and sum_ord_delta(reps) == 12
    # c6 vanishes identically for this model
    assert reps[0].to_json()["ord_c6"] == "inf"


def test_classification_1b(ex1b):
    reps = classify_fibers(ex1b.curve)
    got = {r.label: (r.kodaira_type, r.sing_x.rational()) for r in reps}
    assert got == {"t=-1": ("III", 0), "t=-3/4": ("I2", Fraction(3, 8)), "t=0": ("I2", 0),
                   "t=3": ("I2", 6), "t=inf": ("III", 0)}
    assert shioda_tate_tally(reps) == 5 and sum_ord_delta(reps) == 12


@pytest.mark.parametrize("ords,name", [
    ((0, 0, 0), "I0"), ((0, 0, 1), "I1"), ((0, 0, 5), "I5"), ((1, 1, 2), "II"), ((1, 2, 3), "III"),
    ((2, 2, 4), "IV"), ((2, 3, 6), "I0*"), ((2, 3, 8), "I2*"), ((3, 4, 8), "IV*"), ((3, 5, 9), "III*"),
    ((4, 5, 10), "II*"), ((float("inf"), 1, 2), "II"), ((1, float("inf"), 3), "III"),
])
def test_kodaira_table(ords, name):
    assert kodaira_from_ords(*ords).name == name


def test_kodaira_errors():
    with pytest.raises(NonMinimalModel):
        kodaira_from_ords(4, 6, 12)
    with pytest.raises(UnsupportedFiber):
        kodaira_from_ords(1, 1, 5)


@pytest.mark.parametrize("sym,n,m", [("I", 0, 1), ("I", 1, 1), ("I", 7, 7), ("II", 0, 1), ("III", 0, 2),
                                     ("IV", 0, 3), ("I*", 0, 5), ("I*", 3, 8), ("IV*", 0, 7),
                                     ("III*", 0, 8), ("II*", 0, 9)])
def test_component_counts(sym, n, m):
    assert KodairaType(sym, n).m_v == m


def _rep(sym, n=0):
    return FiberReport(Place.finite(QQ(0)), KodairaType(sym, n), 0, 0, 0)


def test_contribution_table():
    assert contribution(_rep("I", 4), 2) == 1
    assert contribution(_rep("I", 4), 1) == Fraction(3, 4)
    assert contribution(_rep("I", 5), 1, 3) == Fraction(2, 5)
    assert contribution(_rep("I", 2), 1) == Fraction(1, 2)
    assert contribution(_rep("III"), 1) == Fraction(1, 2)
    assert contribution(_rep("IV"), 1) == Fraction(2, 3)
    assert contribution(_rep("IV"), 1, 2) == Fraction(1, 3)
    assert contribution(_rep("IV*"), 1) == Fraction(4, 3)
    assert contribution(_rep("III*"), 1) == Fraction(3, 2)
    assert contribution(_rep("I*", 2), 1) == 1
    assert contribution(_rep("I*", 2), 2) == Fraction(3, 2)
    assert contribution(_rep("I*", 2), 2, 3) == 1
    assert contribution(_rep("III"), 0) == 0
    with pytest.raises(BadIndex):
        contribution(_rep("I", 4), 4)
    with pytest.raises(BadIndex):
        contribution(_rep("III"), -1)


def test_unsupported_automatic_index(ex1a):
    rep = _rep("I", 4)
    with pytest.raises(UnsupportedFiber):
        component_index(ex1a.curve, rep, ex1a.point("P1"))
    assert component_index(ex1a.curve, rep, ex1a.point("P1"), override=3) == 3
    with pytest.raises(BadIndex):
        component_index(ex1a.curve, rep, ex1a.point("P1"), override=4)


def test_gamma_examples(ex1a, ex1b):
    reps = classify_fibers(ex1a.curve)
    # canonical order: -2, -1, 0, inf
    assert gamma_vector(ex1a.curve, reps, ex1a.point("Ptau")).indices == (1, 1, 1, 1)
    assert gamma_vector(ex1a.curve, reps, ex1a.point("P1")).indices == (0, 0, 1, 1)
    assert gamma_vector(ex1a.curve, reps, Point.zero()).indices == (0, 0, 0, 0)
    reps = classify_fibers(ex1b.curve)
    # canonical order: -1, -3/4, 0, 3, inf
    assert gamma_vector(ex1b.curve, reps, ex1b.point("P1")).indices == (1, 0, 1, 0, 1)


@pytest.fixture(scope="module")
def gamma_pool(ex1b):
    C = ex1b.curve
    return C, classify_fibers(C), [ex1b.point(n) for n in ("Ptau", "P1", "P2", "P3")]


combo = st.tuples(st.integers(0, 1), st.integers(-1, 1), st.integers(-1, 1), st.integers(-1, 1))


@given(combo, combo)
def test_gamma_is_additive_mod_two(gamma_pool, a, b):
    # all reducible fibers have two components, so gamma is a homomorphism to (Z/2)^5
    C, reps, gens = gamma_pool
    P, Q = linear_combination(C, list(a), gens), linear_combination(C, list(b), gens)
    g = lambda R: gamma_vector(C, reps, R).indices
    assert g(ec_add(C, P, Q)) == tuple(x ^ y for x, y in zip(g(P), g(Q)))


coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@given(st.lists(coeff, min_size=3, max_size=3), st.lists(coeff, min_size=5, max_size=5),
       st.lists(coeff, min_size=7, max_size=7))
def test_invariants_match_textbook_formulas(a2, a4, a6):
    p = lambda cs: Poly(QQ, [QQ(c) for c in cs])
    try:
        C = CurveModel(p(a2), p(a4), p(a6))
    except Exception:
        return  # singular model
    c4, c6, delta = model_invariants(C)
    A2, A4, A6 = (sum(sympy.Rational(c.numerator, c.denominator) * T ** k for k, c in enumerate(cs))
                  for cs in (a2, a4, a6))
    b2, b4, b6 = 4 * A2, 2 * A4, 4 * A6
    b8 = 4 * A2 * A6 - A4 ** 2
    want_c4 = b2 ** 2 - 24 * b4
    want_c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    want_d = -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6
    assert sympy.expand(_sym(c4) - want_c4) == 0
    assert sympy.expand(_sym(c6) - want_c6) == 0
    assert sympy.expand(_sym(delta) - want_d) == 0
    assert sympy.expand(_sym(c4) ** 3 - _sym(c6) ** 2 - 1728 * _sym(delta)) == 0


def test_reducible_subset(ex1b):
    reps = classify_fibers(ex1b.curve)
    assert reducible_fibers(reps) == reps
