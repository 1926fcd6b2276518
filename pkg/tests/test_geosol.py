import json
import random

import pytest

from ffkronecker.errors import NotLiftingPoint, RamifiedRoot
from ffkronecker.field import PrimeField
from ffkronecker.geosol import (
    GeometricSolutionCurve,
    LiftingFiber,
    decode_point,
    fiber_residuals,
    specialize_to_fiber,
    validate_fiber,
)
from ffkronecker.kronecker import solve_to_lifting_fiber
from ffkronecker.slp import LinearForms, parse_system
from ffkronecker.upoly import BivariatePoly

from support import CIRCLE, CIRCLE_LINE, LOOSE

F7 = PrimeField(7)
ID2 = LinearForms.identity(F7, 2)


def circle_curve():
    q = BivariatePoly(F7, [[6, 0, 1], [], [1]])  # Y2^2 + Y1^2 - 1
    return GeometricSolutionCurve(F7, q, {}, ID2, (0,), (1,))


def circle_fiber():
    return LiftingFiber(F7, [6, 0, 1], {}, (0,), ID2)


def test_specialize_at_zero():
    fib = specialize_to_fiber(circle_curve(), 0)
    assert fib.q == [6, 0, 1] and fib.lifting_point == (0,)


def test_specialize_at_one_is_ramified():
    with pytest.raises(NotLiftingPoint):
        specialize_to_fiber(circle_curve(), 1)


def test_specialize_keeps_degree_off_branch_points():
    curve = circle_curve()
    rng = random.Random(2)
    for _ in range(10):
        t = rng.randrange(7)
        try:
            fib = specialize_to_fiber(curve, t)
        except NotLiftingPoint:
            assert t in (1, 6)
            continue
        assert fib.degree == curve.degree


def test_validate_circle_fiber():
    _, polys = parse_system(CIRCLE.format(p=7))
    rep = validate_fiber(circle_fiber(), polys)
    assert rep.ok and rep.degree == 2


def test_validate_rejects_corrupted_parametrization():
    _, polys = parse_system(CIRCLE_LINE.format(p=7))
    fib, state = solve_to_lifting_fiber(polys, LOOSE, random.Random(1))
    assert validate_fiber(fib, state.system).ok
    j = fib.dependents[0]
    bad = LiftingFiber(fib.field, fib.q, {j: [(c + 1) % 7 for c in fib.v[j]] or [1]}, fib.lifting_point, fib.forms)
    rep = validate_fiber(bad, state.system)
    assert not rep.ok and not rep.residuals_zero


def test_validate_rejects_square():
    _, polys = parse_system(CIRCLE.format(p=7))
    rep = validate_fiber(LiftingFiber(F7, [0, 0, 1], {}, (1,), ID2), polys)
    assert not rep.squarefree and not rep.ok


def test_decode_circle_points():
    _, polys = parse_system(CIRCLE.format(p=7))
    pt = decode_point(circle_fiber(), 1, polys)
    assert pt.coords == [0, 1] and pt.verified
    pt = decode_point(circle_fiber(), 6, polys)
    assert pt.coords == [0, 6] and pt.verified


def test_decode_ramified_root():
    with pytest.raises(RamifiedRoot):
        decode_point(LiftingFiber(F7, [0, 0, 1], {}, (1,), ID2), 0)


def test_point_json():
    _, polys = parse_system(CIRCLE.format(p=7))
    assert decode_point(circle_fiber(), 1, polys).to_json() == {"point": ["0", "1"], "residuals": ["0"]}


def test_fiber_json_round_trip():
    _, polys = parse_system(CIRCLE_LINE.format(p=11))
    fib, state = solve_to_lifting_fiber(polys, LOOSE, random.Random(4))
    obj = json.loads(json.dumps(fib.to_json()))
    back = LiftingFiber.from_json(obj)
    assert back.q == fib.q and back.v == fib.v and back.forms == fib.forms
    assert all(not r for r in fiber_residuals(back, state.system))


def test_pipeline_fibers_decode_to_points():
    _, polys = parse_system(CIRCLE_LINE.format(p=13))
    fib, state = solve_to_lifting_fiber(polys, LOOSE, random.Random(7))
    from ffkronecker.oracle import brute_force_roots

    for r in brute_force_roots(fib.q, fib.field):
        assert decode_point(fib, r, state.system).verified
