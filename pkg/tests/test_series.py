import random

import pytest
from hypothesis import given, strategies as st

from ffkronecker.errors import UnluckyCenter
from ffkronecker.field import PrimeField, make_field
from ffkronecker.series import (
    SeriesPoly,
    TruncatedSeries,
    s_inv,
    s_mul,
    series_invert,
    series_poly_eea,
    sp_resultant,
)
from ffkronecker.upoly import DensePoly, p_eval, resultant

F7 = PrimeField(7)


def S(cs, N, F=F7):
    return TruncatedSeries.make(F, cs, N)


def test_invert_geometric():
    assert series_invert(S([1, -1], 3)) == S([1, 1, 1], 3)


def test_invert_constant():
    assert series_invert(S([2], 4)) == S([4], 4)


def test_unit_status():
    assert S([3, 1], 5).is_unit()
    assert not S([0, 1], 5).is_unit()


@pytest.mark.parametrize("F", [PrimeField(101), make_field(3, 3)], ids=str)
def test_invert_multiplies_back(F):
    rng = random.Random(5)
    for _ in range(100):
        N = rng.randrange(1, 12)
        a = [F.random(rng) for _ in range(N)]
        if a[0] == F.zero:
            a[0] = F.one
        prod = s_mul(a, s_inv(a, N, F), N, F)
        assert prod == [F.one]


def test_precision_is_respected():
    a = S([1, 2, 3, 4, 5, 6], 3)
    assert len(a.coeffs) <= 3
    b = a * a
    assert b.precision == 3 and len(b.coeffs) <= 3


def _sp(rows, N):
    return SeriesPoly(F7, N, [list(r) for r in rows])


def test_separable_square_has_unit_resultant():
    N = 4
    f = _sp([[-1 % 7, -1 % 7], [], [1]], N)  # Y^2 - (1 + e)
    g = _sp([[], [2]], N)
    _, res = series_poly_eea(f, g)
    assert res.is_unit()


def test_resultant_of_ramified_square():
    N = 4
    f = _sp([[0, 6], [], [1]], N)  # Y^2 - e
    g = _sp([[], [2]], N)
    _, res = series_poly_eea(f, g)
    assert res == S([0, (-4) % 7], N)


def test_unlucky_center():
    N = 3
    f = _sp([[1], [], [1]], N)
    g = _sp([[1], [0, 1]], N)  # leading coefficient e is not a unit
    with pytest.raises(UnluckyCenter):
        series_poly_eea(f, g)


@given(
    st.lists(st.lists(st.integers(0, 100), min_size=1, max_size=3), min_size=2, max_size=4),
    st.lists(st.lists(st.integers(0, 100), min_size=1, max_size=3), min_size=2, max_size=4),
    st.integers(0, 100),
)
def test_series_resultant_specializes(fr, gr, t):
    """Resultant at precision N, evaluated at a point, matches the field resultant there."""
    F = PrimeField(101)
    N = 16
    f = [[c % 101 for c in r] for r in fr]
    g = [[c % 101 for c in r] for r in gr]
    f[-1][0] = f[-1][0] or 1
    g[-1][0] = g[-1][0] or 1
    # degree in e of the resultant is at most 3*2 + 3*2 < N, so truncation loses nothing
    try:
        res, _ = sp_resultant(f, g, N, F)
    except UnluckyCenter:
        return
    fe = DensePoly(F, [p_eval(r, t, F) for r in f], raw=True)
    ge = DensePoly(F, [p_eval(r, t, F) for r in g], raw=True)
    if fe.deg() != len(f) - 1 or ge.deg() != len(g) - 1:
        return
    assert p_eval(res, t, F) == resultant(fe, ge).value
