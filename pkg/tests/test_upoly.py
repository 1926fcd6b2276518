import random

import pytest
from hypothesis import given, strategies as st

from ffkronecker.errors import DivisionByZero, DuplicateAbscissa
from ffkronecker.field import ExtensionField, PrimeField, make_field
from ffkronecker.oracle import brute_force_roots, sylvester_resultant
from ffkronecker.upoly import (
    BivariatePoly,
    DensePoly,
    div_rem,
    extended_gcd,
    factor,
    gcd,
    interpolate,
    rational_reconstruction,
    resultant,
    roots_in_field,
    squarefree_decomposition,
    squarefree_part,
)

F5, F7, F101 = PrimeField(5), PrimeField(7), PrimeField(101)
F9 = ExtensionField(3, [1, 0, 1])


def P(F, *cs):
    return DensePoly(F, cs)


def rand_poly(F, deg, rng, monic=False):
    cs = [F.random(rng) for _ in range(deg + 1)]
    if monic:
        cs[-1] = F.one
    return DensePoly(F, cs, raw=True)


def test_div_rem_examples():
    q, r = div_rem(P(F5, 1, 0, 0, 1), P(F5, 1, 1))
    assert q == P(F5, 1, 4, 1) and r.is_zero()
    f = P(F7, 3, 1, 4)
    assert div_rem(f, P(F7, 1)) == (f, DensePoly(F7))
    q, r = div_rem(P(F7, -2, 0, 1), P(F7, -3, 1))
    assert q == P(F7, 3, 1) and r.is_zero()


def test_div_by_zero():
    with pytest.raises(DivisionByZero):
        div_rem(P(F7, 1, 1), DensePoly(F7))


def test_extended_gcd_examples():
    g, s, t = extended_gcd(P(F7, -1, 0, 1), P(F7, -1, 1))
    assert g == P(F7, -1, 1) and s.is_zero() and t == P(F7, 1)
    f = P(F7, 2, 0, 3)
    g, s, t = extended_gcd(f, DensePoly(F7))
    assert g == f.monic() and s == P(F7, F7.inv(3)) and t.is_zero()


@pytest.mark.parametrize("F", [F7, F101, F9], ids=str)
def test_bezout_identity_many_pairs(F):
    rng = random.Random(17)
    for _ in range(1000 // 3 + 1):
        f = rand_poly(F, rng.randrange(9), rng)
        g = rand_poly(F, rng.randrange(9), rng)
        if f.is_zero() and g.is_zero():
            continue
        d, s, t = extended_gcd(f, g)
        assert s * f + t * g == d
        assert d.is_zero() or d.lc == F.one
        if not d.is_zero():
            assert div_rem(f, d)[1].is_zero() and div_rem(g, d)[1].is_zero()


def test_resultant_examples():
    assert resultant(P(F7, -1, 0, 1), P(F7, -2, 1)) == F7.element(3)
    f = P(F7, 1, 2, 3)
    assert resultant(f, f) == F7.element(0)


def test_resultant_against_sylvester_sample():
    rng = random.Random(9)
    for F in (F7, F101, F9):
        for _ in range(40):
            f = rand_poly(F, rng.randrange(1, 7), rng)
            g = rand_poly(F, rng.randrange(1, 7), rng)
            if f.is_zero() or g.is_zero():
                continue
            assert resultant(f, g).value == sylvester_resultant(f.coeffs, g.coeffs, F)


def test_squarefree_examples():
    f = P(F7, -1, 1) ** 2 * P(F7, -2, 1)
    assert squarefree_part(f) == P(F7, -1, 1) * P(F7, -2, 1)
    g = P(F7, 3, 5, 1)
    assert squarefree_part(g * 4) == g
    c = 3
    assert squarefree_part(DensePoly(F7, [-c] + [0] * 6 + [1])) == P(F7, -c, 1)


def test_squarefree_decomposition_multiplicities():
    F = PrimeField(3)
    f = P(F, 1, 1) ** 3 * P(F, 1, 0, 1) ** 2 * P(F, 0, 1)
    dec = squarefree_decomposition(f)
    prod = DensePoly(F, [1])
    for g, m in dec:
        prod = prod * g**m
    assert prod == f.monic()
    assert sorted(m for _, m in dec) == [1, 2, 3]


def test_roots_examples():
    assert {r.value for r in roots_in_field(P(F7, -2, 0, 1))} == {3, 4}
    assert roots_in_field(P(F7, -3, 0, 1)) == set()
    F3 = PrimeField(3)
    assert {r.value for r in roots_in_field(P(F3, 0, -1, 0, 1))} == {0, 1, 2}


def test_roots_in_prime_subfield():
    K = make_field(7, 2)
    f = DensePoly(K, [K.from_int(c) for c in (-2, 0, 1)])
    assert {r.value for r in roots_in_field(f, F7)} == {3, 4}


def test_factor_examples():
    fs = factor(P(F5, -1, 0, 0, 0, 1))
    assert [g.coeffs for g, _ in fs] == [[4, 1], [3, 1], [2, 1], [1, 1]] or sorted(
        g.coeffs[0] for g, _ in fs
    ) == [1, 2, 3, 4]
    assert all(g.degree == 1 and m == 1 for g, m in fs)
    fs = factor(P(F7, 1, 0, 1))
    assert len(fs) == 1 and fs[0][0] == P(F7, 1, 0, 1)


def test_factor_remultiplies_sample():
    rng = random.Random(4)
    for F in (F7, F9, PrimeField(2)):
        for _ in range(30):
            f = rand_poly(F, rng.randrange(1, 11), rng)
            if f.degree < 1:
                continue
            prod = DensePoly(F, [f.lc], raw=True)
            for g, m in factor(f):
                prod = prod * g**m
            assert prod == f


def test_interpolate_examples():
    assert interpolate([(0, 1), (1, 2), (2, 5)], F7) == P(F7, 1, 0, 1)
    assert interpolate([(3, 4)], F7) == P(F7, 4)
    with pytest.raises(DuplicateAbscissa):
        interpolate([(1, 1), (1, 2)], F7)


def test_rational_reconstruction():
    F = F101
    rng = random.Random(1)
    num = rand_poly(F, 3, rng)
    den = rand_poly(F, 2, rng, monic=True)
    m = DensePoly(F, [0] * 12 + [1])
    a = (num * den.invmod(m)) % m
    n2, d2 = rational_reconstruction(a.coeffs, m.coeffs, 3, 2, F)
    assert DensePoly(F, n2, raw=True) * den == num * DensePoly(F, d2, raw=True)


def test_bivariate_helpers():
    h = BivariatePoly(F7, [[0, 6], [], [1]])  # Z^2 - T
    assert h.degree_primitive() == 2 and h.degree_free() == 1 and h.total_degree() == 2
    assert h.specialize_free(2) == P(F7, -2, 0, 1)
    assert h(2, 3) == 0


coeff = st.integers(0, 100)


@given(st.lists(coeff, max_size=9), st.lists(coeff, min_size=1, max_size=9))
def test_division_identity(a, b):
    f, g = DensePoly(F101, a), DensePoly(F101, b)
    if g.is_zero():
        return
    q, r = div_rem(f, g)
    assert q * g + r == f
    assert r.deg() < g.deg()


@given(st.lists(coeff, min_size=2, max_size=7), st.lists(coeff, min_size=2, max_size=7))
def test_resultant_multiplicative_and_symmetric(a, b):
    f, g = DensePoly(F101, a), DensePoly(F101, b)
    if f.deg() < 1 or g.deg() < 1:
        return
    sign = -1 if (f.deg() * g.deg()) % 2 else 1
    assert resultant(f, g) == resultant(g, f) * sign
    assert (resultant(f, g).value == 0) == (gcd(f, g).deg() > 0)


@given(st.lists(coeff, min_size=1, max_size=9), st.lists(st.integers(0, 100), min_size=1, max_size=9, unique=True))
def test_evaluate_then_interpolate(cs, xs):
    f = DensePoly(F101, cs)
    if len(xs) <= f.deg():
        return
    assert interpolate([(x, f(x)) for x in xs], F101) == f


@given(st.lists(st.integers(0, 12), min_size=2, max_size=6))
def test_roots_match_brute_force(cs):
    F = PrimeField(13)
    f = DensePoly(F, cs)
    if f.is_zero():
        return
    assert {r.value for r in roots_in_field(f)} == brute_force_roots(f.coeffs, F)
