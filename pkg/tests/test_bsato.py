"""Generator polynomials, Buchberger engine, elimination, b-functions."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricbsato.bsato import (
    TruncationExhausted,
    bfunction,
    build_generator,
    c_vectors,
    eliminate_minimal_univariate,
    groebner_basis,
    monomial_generator,
    normal_form,
    rational_roots,
)
from toricbsato.multipoly import MultiPoly, UniPoly, binom_poly, grevlex
from toricbsato.toric import build_semigroup, monomial_ideal

F = Fraction
CUSP = [[1, 1, 1, 1], [0, 1, 2, 3]]
CUSP_IDEAL = [(1, 1), (1, 2)]


@pytest.fixture
def cusp():
    return build_semigroup(CUSP)


# --- generator polynomials --------------------------------------------------


def test_generator_worked_examples(cusp):
    # transported generator exponents: F(1,1) = (2,1), F(1,2) = (1,2)
    g10 = build_generator(cusp, CUSP_IDEAL, (1, 0))
    expected10 = binom_poly(MultiPoly.linear_form((2, 1), 2), 2) * binom_poly(
        MultiPoly.linear_form((1, 2), 1), 1
    )
    assert g10 == expected10

    g2m1 = build_generator(cusp, CUSP_IDEAL, (2, -1))
    expected2m1 = binom_poly(MultiPoly.variable(2, 1), 1) * binom_poly(
        MultiPoly.linear_form((2, 1), 3), 3
    )
    assert g2m1 == expected2m1


def test_generator_two_routes_agree(cusp):
    alphas = [(2, 1), (1, 2)]
    for c in c_vectors(2, 3):
        assert build_generator(cusp, CUSP_IDEAL, c) == monomial_generator(alphas, c)


def test_generator_principal_closed_form():
    line = build_semigroup([[1]])
    for a in (1, 2, 3, 4):
        g = build_generator(line, [(a,)], (1,))
        assert g == binom_poly(MultiPoly.linear_form((a,), a), a)


def test_generator_validation(cusp):
    with pytest.raises(ValueError, match="sum of c must be 1"):
        build_generator(cusp, CUSP_IDEAL, (1, 1))
    with pytest.raises(ValueError, match="sum of c must be 1"):
        monomial_generator([(2, 1), (1, 2)], (0, 0))
    with pytest.raises(ValueError, match="equal length"):
        build_generator(cusp, CUSP_IDEAL, (1, 0, 0))


def test_c_vectors():
    assert c_vectors(2, 3) == [(-2, 3), (-1, 2), (0, 1), (1, 0), (2, -1), (3, -2)]
    assert c_vectors(1, 5) == [(1,)]
    # brute-force oracle: all tuples with sum 1 inside the box, lex order
    for r, B in ((2, 2), (3, 1), (3, 2)):
        brute = [c for c in product(range(-B, B + 1), repeat=r) if sum(c) == 1]
        assert c_vectors(r, B) == brute
    with pytest.raises(ValueError):
        c_vectors(0, 2)


# --- Groebner engine --------------------------------------------------------


def test_groebner_toys():
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    assert set(groebner_basis([x, y], grevlex(2))) == {x, y}
    # 1 = (xy+1) - y*x*x/x ... the ideal contains x^2 and xy+1, hence 1
    assert groebner_basis([x * x, x * y + 1], grevlex(2)) == [MultiPoly.constant(2, 1)]
    with pytest.raises(ValueError, match="nonzero"):
        groebner_basis([x, MultiPoly.zero(2)], grevlex(2))


coeffs = st.integers(-4, 4).filter(bool)
exponents = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exponents, coeffs, min_size=1, max_size=3).map(
    lambda d: MultiPoly(2, {e: F(c) for e, c in d.items()})
)


@given(st.lists(polys, min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_groebner_random_systems(gens):
    """Self-check is on suite-wide, so each run re-verifies the basis; on top
    of that: reduced shape, input membership, and order-independence."""
    order = grevlex(2)
    gb = groebner_basis(gens, order)
    leads = [g.leading_exponent(order) for g in gb]
    for i, g in enumerate(gb):
        assert g.leading_coefficient(order) == 1
        for j, le in enumerate(leads):
            if i != j:
                assert not all(a <= b for a, b in zip(le, leads[i]))
    for f in gens:
        assert normal_form(f, gb, order).is_zero()
    assert groebner_basis(list(reversed(gens)), order) == gb


def test_elimination_toys():
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    assert eliminate_minimal_univariate([x, y]) == UniPoly([F(0), F(1)])
    assert eliminate_minimal_univariate([x - 1, y - 2]) == UniPoly([F(-3), F(1)])
    assert eliminate_minimal_univariate([x - y]) is None


# --- rational roots ---------------------------------------------------------


def test_rational_roots_spot_values():
    p = UniPoly.from_roots([F(-1), F(-1), F(-2, 3)])
    roots, rem = rational_roots(p)
    assert roots == [(F(-1), 2), (F(-2, 3), 1)]
    assert rem == UniPoly([F(1)])

    roots, rem = rational_roots(UniPoly([F(0), F(1), F(1)]))  # s^2 + s
    assert roots == [(F(-1), 1), (F(0), 1)]

    roots, rem = rational_roots(UniPoly([F(1), F(0), F(1)]))  # s^2 + 1
    assert roots == [] and rem == UniPoly([F(1), F(0), F(1)])

    with pytest.raises(ValueError):
        rational_roots(UniPoly.zero())


@given(
    st.lists(
        st.fractions(min_value=-3, max_value=3, max_denominator=4),
        min_size=1,
        max_size=5,
    )
)
@settings(max_examples=100)
def test_rational_roots_reconstruction(cs):
    p = UniPoly(cs)
    if p.is_zero():
        return
    roots, rem = rational_roots(p)
    rebuilt = rem
    for r, mult in roots:
        rebuilt = rebuilt * UniPoly.from_roots([r] * mult)
    assert rebuilt == p
    for r, _ in roots:
        assert p(r) == 0
    assert rem.degree == 0 or not any(rem(c) == 0 for r, _ in roots for c in (r,))


# --- the b-function driver --------------------------------------------------


def test_bfunction_running_example(cusp):
    res = bfunction(cusp, monomial_ideal(cusp, CUSP_IDEAL))
    b = UniPoly([F(8, 9), F(34, 9), F(53, 9), F(4), F(1)])
    assert res.b == b
    assert res.b == UniPoly.from_roots([F(-1), F(-1), F(-2, 3), F(-4, 3)])
    assert res.roots == ((F(-4, 3), 1), (F(-1), 2), (F(-2, 3), 1))
    assert res.unfactored_remainder == UniPoly([F(1)])
    assert res.stabilized
    assert res.box_used == 3
    assert res.generator_count == 6
    assert res.truncation == ((1, None), (2, b), (3, b))


def test_bfunction_accepts_raw_exponents(cusp):
    by_ideal = bfunction(cusp, monomial_ideal(cusp, CUSP_IDEAL))
    by_list = bfunction(cusp, CUSP_IDEAL)
    assert by_ideal.b == by_list.b


def test_bfunction_identity_maximal_ideal():
    plane = build_semigroup([[1, 0], [0, 1]])
    res = bfunction(plane, monomial_ideal(plane, [(1, 0), (0, 1)]))
    assert res.b == UniPoly([F(2), F(1)])  # s + 2
    assert res.stabilized and res.box_used == 2
    assert res.truncation == ((1, res.b), (2, res.b))


def test_bfunction_principal_closed_form():
    line = build_semigroup([[1]])
    for a in (1, 2, 3):
        res = bfunction(line, monomial_ideal(line, [(a,)]))
        assert res.b == UniPoly.from_roots([F(-j, a) for j in range(1, a + 1)])
        assert res.stabilized


def test_bfunction_truncation_cap(cusp):
    # box 1 yields no univariate polynomial for the running example
    with pytest.raises(TruncationExhausted):
        bfunction(cusp, monomial_ideal(cusp, CUSP_IDEAL), schedule=(1,), cap=1)
    with pytest.raises(ValueError, match="positive"):
        bfunction(cusp, monomial_ideal(cusp, CUSP_IDEAL), schedule=(0, 1))
