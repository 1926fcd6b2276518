import math
import random

import pytest

from ffkronecker.errors import BudgetExhausted, FieldTooSmall
from ffkronecker.field import PrimeField
from ffkronecker.geosol import GeometricSolutionCurve, LiftingFiber
from ffkronecker.kronecker import SolverConfig, Trace, solve_to_lifting_fiber
from ffkronecker.ratpoint import (
    PlaneSlice,
    compute_rational_point,
    descend_to_base_field,
    field_size_bound,
    find_curve_point,
    slice_to_plane_curve,
)
from ffkronecker.slp import LinearForms, parse_system
from ffkronecker.upoly import BivariatePoly, p_is_squarefree

from support import PARABOLA

F7, F101 = PrimeField(7), PrimeField(101)


def bare_slice(F, rows):
    h = BivariatePoly(F, rows)
    forms = LinearForms.identity(F, 2)
    curve = GeometricSolutionCurve(F, h, {}, forms, (F.zero,), (F.one,))
    return PlaneSlice((F.one,), h, curve, (F.zero,), LiftingFiber(F, h.specialize_free(0).coeffs, {}, (0,), forms))


def test_field_size_bound_formula():
    assert field_size_bound(3, 2, 2) == 8 * 9 * 2 * 16


def test_parabola_slice():
    _, polys = parse_system(PARABOLA.format(p=7))
    fib = LiftingFiber(F7, [6, 0, 1], {}, (1,), LinearForms.identity(F7, 2))
    sl = slice_to_plane_curve(fib, polys, [1])
    assert sl.h.rows == [[6, 6], [], [1]]  # Z^2 - (1 + T)
    assert sl.h.specialize_free(0).coeffs == fib.q


def test_zero_direction_gives_constant_slice():
    _, polys = parse_system(PARABOLA.format(p=7))
    fib = LiftingFiber(F7, [6, 0, 1], {}, (1,), LinearForms.identity(F7, 2))
    sl = slice_to_plane_curve(fib, polys, [0])
    assert sl.h.degree_free() == 0


def test_find_point_on_z2_minus_t():
    sl = bare_slice(F7, [[0, 6], [], [1]])
    squares = {1, 2, 4}
    for seed in range(30):
        try:
            a, b = find_curve_point(sl, random.Random(seed), budget=7)
        except BudgetExhausted:  # pragma: no cover - 7 abscissae always include a square
            pytest.fail("no point found with every abscissa available")
        assert a in squares and (b * b - a) % 7 == 0


def test_non_square_abscissa_is_skipped():
    sl = bare_slice(F7, [[0, 6], [], [1]])
    # budget 1: the draw either is a square or the search gives up
    for seed in range(40):
        try:
            a, _ = find_curve_point(sl, random.Random(seed), budget=1)
        except BudgetExhausted:
            continue
        assert a not in (0, 3, 5, 6)


def _random_conic(rng):
    while True:
        c, b, a = (rng.randrange(101) for _ in range(3))
        if a and (b * b - 4 * a * c) % 101:
            return [[c, b, a], [], [100]]  # g(T) - Z^2 with g squarefree of degree 2


def test_conic_point_search_rates():
    """Within delta draws the derived lower bound holds; a few more draws reach 95%."""
    q, delta = 101, 2
    p_a = (q - math.sqrt(q) * delta**2 - delta**2) / (q * delta)
    bound = 1 - (1 - p_a) ** delta
    rng = random.Random(11)
    hits_delta = hits_wide = 0
    trials = 400
    for _ in range(trials):
        sl = bare_slice(F101, _random_conic(rng))
        seed = rng.randrange(2**32)
        try:
            find_curve_point(sl, random.Random(seed), budget=delta)
            hits_delta += 1
        except BudgetExhausted:
            pass
        try:
            find_curve_point(sl, random.Random(seed), budget=5 * delta)
            hits_wide += 1
        except BudgetExhausted:
            pass
    assert hits_delta / trials >= bound
    assert hits_wide / trials >= 0.95


def test_sphere_slice_properties():
    _, polys = parse_system("field p=10007\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n")
    trace = Trace()
    fib, st = solve_to_lifting_fiber(polys, SolverConfig(), random.Random(1), trace)
    fq = descend_to_base_field(st, fib, trace)
    rng = random.Random(2)
    sl = slice_to_plane_curve(fq, polys, [rng.randrange(1, 10007) for _ in range(fq.primitive)])
    assert sl.h.total_degree() == fq.degree == sl.degree
    assert p_is_squarefree(sl.h.specialize_free(0).coeffs, sl.field)
    assert sl.h.specialize_free(0).coeffs == fq.q


def test_parabola_in_three_space():
    _, polys = parse_system("field p=11\nvars X1 X2 X3\npoly X2 - X1^2\n")
    cfg = SolverConfig(enforce_field_size=False)
    for seed in range(5):
        pt, _ = compute_rational_point(polys, cfg, random.Random(seed))
        a, b, _ = pt.coords
        assert b == a * a % 11 and pt.verified


def test_sphere_point():
    _, polys = parse_system("field p=10007\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n")
    pt, trace = compute_rational_point(polys, SolverConfig(), random.Random(42))
    x = pt.coords
    assert pt.residuals == [0] and (x[0] ** 2 + x[1] ** 2 + x[2] ** 2 - 1) % 10007 == 0
    assert trace.degrees == [2]


def test_small_field_is_rejected_with_the_bound():
    _, polys = parse_system("field p=3\nvars X1 X2 X3\npoly X1^2 + X2^2 + 1\n")
    with pytest.raises(FieldTooSmall) as info:
        compute_rational_point(polys, SolverConfig(), random.Random(0))
    assert info.value.bound == 8 * 9 * 2 * 2**4 and info.value.q == 3
    assert "2304" in str(info.value)


def test_extension_base_field():
    _, polys = parse_system("field p=101 ext=2\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n")
    pt, _ = compute_rational_point(polys, SolverConfig(), random.Random(3))
    assert pt.verified and pt.field.cardinality == 101**2


def test_same_seed_same_point():
    _, polys = parse_system("field p=20011\nvars X1 X2 X3\npoly X1*X2*X3 - 1\n")
    a, ta = compute_rational_point(polys, SolverConfig(), random.Random(7))
    b, tb = compute_rational_point(polys, SolverConfig(), random.Random(7))
    assert a.coords == b.coords and ta.to_json() == tb.to_json()
