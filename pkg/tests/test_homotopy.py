import random

import pytest

from ffkronecker.errors import NotBaseField
from ffkronecker.field import FieldEmbedding, PrimeField, extend_field
from ffkronecker.geosol import LiftingFiber, validate_fiber
from ffkronecker.homotopy import (
    HomotopyPath,
    change_dependent_forms,
    change_primitive_element,
    deform_fiber_to_base_field,
    descend_fiber,
    rationalize,
    sample_path,
)
from ffkronecker.kronecker import SolverConfig, init_base_fiber, solve_to_lifting_fiber
from ffkronecker.oracle import eliminant_minimal_polynomial
from ffkronecker.slp import LinearForms, map_field, parse_system, random_matrix

from support import CIRCLE, LOOSE, MODEL, manual_state

F7 = PrimeField(7)


def test_constant_path_returns_the_input():
    st = manual_state(CIRCLE.format(p=7), point=(0,))
    fib = init_base_fiber(st)
    path = HomotopyPath(st.forms, (0,), st.forms, (0,), FieldEmbedding(F7, F7))
    end = deform_fiber_to_base_field(fib, path, st.system)
    assert end.q == fib.q and end.v == fib.v and end.forms == fib.forms


def test_circle_point_moves_to_rational_value():
    _, polys = parse_system(CIRCLE.format(p=7))
    K, emb = extend_field(F7, 2, random.Random(1))
    system = [map_field(s, K, emb.embed) for s in polys]
    start = LinearForms.identity(K, 2)
    p = K.normalize((3, 1))  # not in F_7
    c = K.add(K.mul(p, p), K.from_int(-1))
    fib = LiftingFiber(K, [c, K.zero, K.one], {}, (p,), start)
    assert validate_fiber(fib, system).ok
    for q0 in range(7):
        if q0 in (1, 6):
            continue  # the end fiber would be a double point
        path = HomotopyPath(start, (p,), LinearForms.identity(F7, 2), (q0,), emb)
        end = deform_fiber_to_base_field(fib, path, system)
        want = [K.from_int(q0 * q0 - 1), K.zero, K.one]
        assert end.q == want


def test_sphere_descends_to_base_field():
    _, polys = parse_system("field p=10007\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n")
    fib, st = solve_to_lifting_fiber(polys, SolverConfig(), random.Random(2))
    assert st.field.cardinality == 10007**2
    path = sample_path(st.forms, st.point[:2], st.problem.base_field, st.embedding, random.Random(3))
    end = deform_fiber_to_base_field(fib, path, st.system)
    out = rationalize(end, path, st.problem.system)
    assert out.field == st.problem.base_field
    assert out.degree == 2 and validate_fiber(out, st.problem.system).ok


def test_model_descends_with_oracle_degree():
    text = MODEL.format(p=40009)
    _, polys = parse_system(text)
    fib, st = solve_to_lifting_fiber(polys, SolverConfig(), random.Random(5))
    path = sample_path(st.forms, st.point[:1], st.problem.base_field, st.embedding, random.Random(6))
    out = rationalize(deform_fiber_to_base_field(fib, path, st.system), path, st.problem.system)
    k = out.primitive
    oracle, count = eliminant_minimal_polynomial(
        st.problem.system, out.forms, out.lifting_point, out.forms.matrix[k], out.forms.shift[k]
    )
    assert count == 4 and oracle.coeffs == out.q


def test_identity_change_of_primitive():
    st = manual_state(CIRCLE.format(p=7), point=(0,))
    fib = init_base_fiber(st)
    out = change_primitive_element(fib, fib.forms.matrix[1], fib.forms.shift[1], st.system)
    assert out.q == fib.q and out.forms == fib.forms


def test_circle_primitive_x1_plus_x2():
    st = manual_state(CIRCLE.format(p=7), point=(0,))
    fib = init_base_fiber(st)
    out = change_primitive_element(fib, [1, 1], 0, st.system)
    assert out.q == [6, 0, 1]  # Z^2 - 1 from the points (0, 1) and (0, 6)


def test_random_primitive_matches_oracle():
    st = manual_state(MODEL.format(p=13), [[1, 2, 3], [0, 1, 4], [2, 0, 1]], [0, 0, 0], (2, 5))
    fib, _ = solve_to_lifting_fiber(
        st.problem.system, LOOSE, random.Random(8)
    )
    rng = random.Random(4)
    K = fib.field
    done = 0
    for _ in range(10):
        row = list(fib.forms.matrix[fib.primitive])
        row = [K.add(a, K.random(rng)) for a in row]
        shift = K.random(rng)
        try:
            out = change_primitive_element(fib, row, shift, st.problem.system)
        except Exception:
            continue
        oracle, count = eliminant_minimal_polynomial(st.problem.system, fib.forms, fib.lifting_point, row, shift)
        assert count == fib.degree == 4
        assert out.q == oracle.coeffs
        done += 1
    assert done >= 5


def test_change_dependent_forms_round_trip():
    _, polys = parse_system(MODEL.format(p=101))
    fib, st = solve_to_lifting_fiber(polys, LOOSE, random.Random(1))
    K = fib.field
    rows = [list(r) for r in fib.forms.matrix]
    rows[2] = random_matrix(K, 3, random.Random(2))[0]
    new = LinearForms.make(K, rows, list(fib.forms.shift[:2]) + [5])
    out = change_dependent_forms(fib, new)
    assert validate_fiber(out, st.system).ok
    back = change_dependent_forms(out, fib.forms)
    assert back.v == fib.v


def test_descend_rejects_non_rational_fiber():
    K, emb = extend_field(F7, 2, random.Random(1))
    start = LinearForms.identity(K, 2)
    p = K.normalize((3, 1))
    c = K.add(K.mul(p, p), K.from_int(-1))
    fib = LiftingFiber(K, [c, K.zero, K.one], {}, (p,), start)
    with pytest.raises(NotBaseField):
        descend_fiber(fib, emb, LinearForms.identity(F7, 2), (0,))
