import random

import pytest

from ffkronecker.errors import InconsistentSystem, NotLiftingPoint, PreconditionError, RetriesExhausted
from ffkronecker.field import PrimeField
from ffkronecker.geosol import curve_residuals, validate_fiber
from ffkronecker.kronecker import (
    SolverConfig,
    Trace,
    analyze,
    init_base_fiber,
    intermediate_degree,
    intersect_minimal_polynomial,
    lift_fiber_to_curve,
    next_fiber,
    recombine_parametrizations,
    shear,
    solve_to_lifting_fiber,
    true_degree,
)
from ffkronecker.oracle import eliminant_minimal_polynomial
from ffkronecker.slp import parse_polynomial, parse_system
from ffkronecker.upoly import DensePoly

from support import CIRCLE, CIRCLE_LINE, MODEL, PARABOLA, manual_state

F7 = PrimeField(7)


def test_base_fiber_of_circle():
    st = manual_state(CIRCLE.format(p=7), point=(0,))
    fib = init_base_fiber(st)
    assert fib.q == [6, 0, 1] and fib.stage == 1


def test_base_fiber_rejects_tangent_point():
    st = manual_state(CIRCLE.format(p=7), point=(1,))
    with pytest.raises(NotLiftingPoint):
        init_base_fiber(st)


def test_base_fiber_under_random_rotation():
    rng = random.Random(5)
    hits = 0
    for seed in range(20):
        M = [[rng.randrange(7) for _ in range(2)] for _ in range(2)]
        if (M[0][0] * M[1][1] - M[0][1] * M[1][0]) % 7 == 0:
            continue
        st = manual_state(CIRCLE.format(p=7), M, [0, 0], (rng.randrange(7),))
        try:
            fib = init_base_fiber(st)
        except NotLiftingPoint:
            continue
        hits += 1
        assert fib.degree == 2 and validate_fiber(fib, st.system[:1]).ok
    assert hits > 0


def test_lift_circle_gives_the_circle():
    st = manual_state(CIRCLE.format(p=7), point=(0,))
    curve = lift_fiber_to_curve(st, init_base_fiber(st))
    assert curve.q.rows == [[6, 0, 1], [], [1]]


def test_lift_parabola():
    st = manual_state(PARABOLA.format(p=7), point=(1,))
    curve = lift_fiber_to_curve(st, init_base_fiber(st))
    assert curve.q.rows == [[0, 6], [], [1]]


def test_model_stage_two_lift_is_exact():
    # identity forms fail here: X2 takes two values on the four points
    st = manual_state(MODEL.format(p=13), [[1, 2, 3], [0, 1, 4], [2, 0, 1]], [0, 0, 0], (2, 5))
    st.rng = random.Random(3)
    fib1 = init_base_fiber(st)
    curve = lift_fiber_to_curve(st, fib1)
    fib2 = next_fiber(st, curve)
    assert fib2.degree == 4 and validate_fiber(fib2, st.system).ok
    # lift the stage-2 fiber as well and check residuals at a random center
    curve2 = lift_fiber_to_curve(st, fib2)
    assert curve2.degree == 4
    N = 2 * curve2.degree + 3
    assert all(not r for r in curve_residuals(curve2, st.prog(2), 4, N))


def test_intersection_with_zero_lambda_model():
    st = manual_state(MODEL.format(p=13), point=(3, 0))
    st.rng = random.Random(1)
    # F_1 gives the curve Y3^2 - Y1 - Y2; F_2 = Y2^2 - Y1 has no Y3
    curve = lift_fiber_to_curve(st, init_base_fiber(st))
    q0 = intersect_minimal_polynomial(st, curve, st.system_y[1], 0, 2)
    assert q0 == DensePoly(st.field, [-3, 0, 1])


def test_intersection_separating_form_has_full_degree():
    st = manual_state(MODEL.format(p=13), point=(3, 0))
    st.rng = random.Random(1)
    curve = lift_fiber_to_curve(st, init_base_fiber(st))
    for lam in (1, 2, 5):
        ql = intersect_minimal_polynomial(st, curve, st.system_y[1], lam, 2)
        # oracle: the same form T + lam*Y on the stage-2 fiber, by elimination
        oracle, count = eliminant_minimal_polynomial(st.system[:2], st.forms, (3,), [0, 1, lam])
        assert count == 4
        if ql.deg() == 4:
            assert ql.coeffs == oracle.coeffs


def test_intersection_with_constant_gives_constant():
    st = manual_state(CIRCLE.format(p=7), point=(0,))
    curve = lift_fiber_to_curve(st, init_base_fiber(st))
    c = parse_polynomial("3", st.field, ["X1", "X2"])
    out = intersect_minimal_polynomial(st, curve, c, 0, 0)
    assert out.deg() == 0


def test_circle_meets_line():
    st = manual_state(CIRCLE_LINE.format(p=7), point=(0,))
    st.rng = random.Random(2)
    fib = next_fiber(st, lift_fiber_to_curve(st, init_base_fiber(st)))
    assert fib.q == DensePoly(F7, [10, -7, 1]).coeffs  # (Y1 - 2)(Y1 - 5)
    assert fib.w()[1] == [0, 1]  # Y2 = Y1
    assert validate_fiber(fib, st.system).ok


def test_single_point_recombination():
    text = "field p=11\nvars X1 X2\npoly X2 - X1 - 1\npoly X1 - 3\n"
    st = manual_state(text, point=(0,))
    st.rng = random.Random(1)
    fib = init_base_fiber(st)
    curve = lift_fiber_to_curve(st, fib)
    polys = {}
    for lam in (0, 1, 2):
        polys[lam] = intersect_minimal_polynomial(st, curve, st.system_y[1], lam, 1)
    out = recombine_parametrizations(st, polys, curve)
    assert out.degree == 1 and validate_fiber(out, st.system).ok


def test_shear_of_identity():
    # b = Y: sheared is Y with no t dependence
    assert shear([[], [1]], 2, 3, 4, F7) == [[], [1]]


def test_solve_hypersurface_is_base_fiber():
    _, polys = parse_system("field p=10007\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n")
    fib, st = solve_to_lifting_fiber(polys, SolverConfig(), random.Random(0))
    assert fib.stage == 1 and fib.degree == 2 and st.fibers == [fib]


def test_solve_two_quadrics_large_prime():
    _, polys = parse_system("field p=10007\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\npoly X1*X2 - X3\n")
    fib, st = solve_to_lifting_fiber(polys, SolverConfig(), random.Random(0))
    assert st.field.cardinality == 10007**2
    assert fib.degree == 4 and validate_fiber(fib, st.system).ok


def test_inconsistent_system():
    _, polys = parse_system("field p=101\nvars X1 X2 X3\npoly X1^2 - X2\npoly 1\n")
    with pytest.raises(InconsistentSystem):
        solve_to_lifting_fiber(polys, SolverConfig(), random.Random(0))


def test_empty_intersection_detected():
    _, polys = parse_system("field p=101\nvars X1 X2 X3\npoly X1^2 - X2\npoly X1^2 - X2 + 1\n")
    with pytest.raises(InconsistentSystem):
        solve_to_lifting_fiber(polys, SolverConfig(), random.Random(0))


def test_preconditions():
    _, polys = parse_system(CIRCLE.format(p=101))
    with pytest.raises(PreconditionError):
        analyze(polys, SolverConfig())
    _, polys = parse_system("field p=101\nvars X1 X2 X3\npoly X1 + X2\n")
    with pytest.raises(PreconditionError):
        analyze(polys, SolverConfig())


def test_true_degree_sees_cancellation():
    F = PrimeField(7)
    s = parse_polynomial("(X1 + 1)^2 - X1^2", F, ["X1", "X2"])
    assert s.degrees[0] == 2 and true_degree(s) == 1


def test_intermediate_degree_formula():
    F, polys = parse_system("field p=10007\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n")
    problem = analyze(polys)
    bound = 60 * 3**4 * 2 * 2**4
    k = intermediate_degree(problem, SolverConfig())
    assert 10007**k > bound >= 10007 ** (k - 1)


def test_retries_exhausted_with_tiny_budget():
    # every base point is rejected when F_1 is a square of a linear form times a constant only
    _, polys = parse_system("field p=101\nvars X1 X2 X3\npoly (X1 + X2 + X3)^2\n")
    with pytest.raises(RetriesExhausted):
        solve_to_lifting_fiber(polys, SolverConfig(max_global_retries=3), random.Random(0))


def test_trace_records_degrees_and_is_deterministic():
    _, polys = parse_system(MODEL.format(p=40009))
    t1, t2 = Trace(), Trace()
    solve_to_lifting_fiber(polys, SolverConfig(), random.Random(9), t1)
    solve_to_lifting_fiber(polys, SolverConfig(), random.Random(9), t2)
    assert t1.degrees == [2, 4] and t1.to_json() == t2.to_json()
