import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcluster.cyclo import (
    context,
    cyclo_arith,
    cyclotomic_polynomial,
    euler_phi,
    specialize_to_one,
)
from qcluster.errors import ContextMismatch

ELLS = [2, 3, 4, 5, 6, 7, 8, 9, 12]


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def elements(ell):
    n = euler_phi(ell)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, min_size=n, max_size=n).map(context(ell).from_coefficients)


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(b))


def test_known_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", range(1, 25))
def test_product_of_cyclotomics_is_x_n_minus_1(n):
    prod = [1]
    for d in range(1, n + 1):
        if n % d == 0:
            prod = poly_mul(prod, list(cyclotomic_polynomial(d)))
    assert prod == [-1] + [0] * (n - 1) + [1]
    assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


@pytest.mark.parametrize("ell", ELLS)
def test_root_of_unity_relations(ell):
    ctx = context(ell)
    z = ctx.zeta
    assert z**ell == 1
    assert all(z**k != 1 for k in range(1, ell))
    assert ctx.root_power(-1) * z == 1
    assert ctx.root_power(ell + 3) == ctx.root_power(3)
    assert close(z.approx(), cmath.exp(2j * cmath.pi / ell))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(ELLS).flatmap(lambda l: st.tuples(elements(l), elements(l), elements(l))))
def test_field_axioms_against_floating_point(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert close((a * b).approx(), a.approx() * b.approx(), 1e-7)
    assert close((a - b).approx(), a.approx() - b.approx(), 1e-7)
    if b:
        assert (a / b) * b == a
        assert b * b.inverse() == 1


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(ELLS).flatmap(lambda l: st.tuples(elements(l), elements(l))))
def test_conjugation_is_a_field_automorphism(ab):
    a, b = ab
    conj = lambda x: x.conjugate_inverse_root()
    assert conj(a * b) == conj(a) * conj(b)
    assert conj(a + b) == conj(a) + conj(b)
    assert close(conj(a).approx(), a.approx().conjugate(), 1e-7)


def test_mixed_contexts_are_rejected():
    with pytest.raises(ContextMismatch):
        context(3).zeta + context(5).zeta


def test_cyclo_arith_dispatch():
    ctx = context(5)
    a, b = ctx.zeta, ctx(2)
    assert cyclo_arith(a, b, "add") == a + b
    assert cyclo_arith(a, b, "sub") == a - 2
    assert cyclo_arith(a, b, "mul") == a * 2
    assert cyclo_arith(a, b, "div") * 2 == a
    with pytest.raises(ValueError):
        cyclo_arith(a, b, "pow")


def test_specialize_examples():
    c3, c4, c5 = context(3), context(4), context(5)
    assert specialize_to_one(c3.zeta**2) == 1
    assert specialize_to_one(c3.from_coefficients([2, 3])) == 5
    assert specialize_to_one(c4.zeta**2) == 1
    assert specialize_to_one(c4(-3)) == 3
    assert specialize_to_one(c5(-3)) == -3
    assert specialize_to_one(c5.zeta**3 * Fraction(7, 2)) == Fraction(7, 2)


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from([3, 5, 7, 9]),
    st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(bool),
    st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(bool),
    st.integers(-20, 20),
    st.integers(-20, 20),
)
def test_specialization_multiplicative_on_monomial_scalars(ell, c, d, j, k):
    # odd ℓ: -1 is not a power of ζ, so c·ζ^j ↦ c is well defined and multiplicative
    ctx = context(ell)
    a, b = ctx.root_power(j) * c, ctx.root_power(k) * d
    assert specialize_to_one(a * b) == specialize_to_one(a) * specialize_to_one(b)


def test_render_and_roundtrip():
    ctx = context(5)
    x = ctx.from_coefficients([1, Fraction(-1, 2)])
    assert x.render() == "(1,-1/2)"
    assert ctx.from_coefficients(x.coeffs) == x
