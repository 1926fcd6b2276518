"""Rational points: plane slices through an F_q-rational fiber and the full pipeline.

The slice {Z_j = Q_j + omega_j T} through the fiber V_Q is a curve whose
minimal polynomial h(T, Z) is obtained by one more Newton lift. A rational
point of {h = 0} off the ramification locus is found by sampling T = a and
taking gcd(h(a, Z), Z^q - Z); it decodes to a point of V through the curve
parametrizations.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import (
    ArithmeticFailure,
    BadRandomChoice,
    BudgetExhausted,
    FieldTooSmall,
    RetriesExhausted,
    ValidationFailed,
)
from .field import Field
from .geosol import GeometricSolutionCurve, LiftingFiber, RationalPoint, decode_point, specialize_to_fiber
from .homotopy import deform_fiber_to_base_field, rationalize, sample_path
from .kronecker import Problem, SolverConfig, SolverState, Trace, analyze, solve_to_lifting_fiber
from .lifting import Substitution, lift_to_curve
from .slp import Slp, apply_linear_change, combine
from .upoly import BivariatePoly, p_eval, p_gcd, p_is_squarefree, p_powmod, p_roots, p_sub

__all__ = [
    "PlaneSlice",
    "Trace",
    "compute_rational_point",
    "field_size_bound",
    "find_curve_point",
    "slice_to_plane_curve",
]


@dataclass
class PlaneSlice:
    omega: tuple
    h: BivariatePoly  # rows by powers of Z, polynomials in T
    curve: GeometricSolutionCurve
    point: tuple  # Q
    fiber: LiftingFiber

    @property
    def field(self) -> Field:
        return self.curve.field

    @property
    def degree(self) -> int:
        return self.h.degree_primitive()


def field_size_bound(n: int, d: int, delta: int) -> int:
    """The cardinality requirement q > 8 n^2 d delta^4."""
    return 8 * n * n * d * delta**4


def slice_to_plane_curve(fiber: LiftingFiber, system: Sequence[Slp], omega: Sequence) -> PlaneSlice:
    """Lift the F_q-fiber V_Q along Z_j = Q_j + omega_j T (system in X-coordinates)."""
    F = fiber.field
    n, k = fiber.n, fiber.primitive
    omega = tuple(F.normalize(c) for c in omega)
    if len(omega) != k:
        raise ValueError(f"omega needs {k} entries")
    prog = combine([apply_linear_change(s, fiber.forms) for s in system])
    fixed = {j: [fiber.lifting_point[j], omega[j]] for j in range(k)}
    unknown = list(range(k, n))
    subst = Substitution.coordinates(F, n, fixed, unknown)
    w = fiber.w()
    w0 = [w.get(j, []) for j in unknown[1:]]
    q_rows, v_rows, _ = lift_to_curve(F, prog, subst, fiber.q, w0, fiber.degree, F.zero)
    curve = GeometricSolutionCurve(
        F,
        BivariatePoly(F, q_rows),
        {j: BivariatePoly(F, v_rows[i]) for i, j in enumerate(unknown[1:])},
        fiber.forms,
        tuple(fiber.lifting_point),
        omega,
    )
    h = curve.q
    if h.specialize_free(F.zero).coeffs != list(fiber.q):
        raise ValidationFailed("slice curve does not restrict to the fiber at T = 0")
    return PlaneSlice(omega, h, curve, tuple(fiber.lifting_point), fiber)


def find_curve_point(sl: PlaneSlice, rng: random.Random, budget: int | None = None) -> tuple[Any, Any]:
    """(a, b) with h(a, b) = 0 and dh/dZ(a, b) != 0, sampling a without replacement."""
    F = sl.field
    h = sl.h
    delta = sl.degree
    budget = budget if budget is not None else max(delta, 1)
    dh = h.derivative_primitive()
    Q = F.cardinality
    tried: set = set()
    x = [F.zero, F.one]
    while len(tried) < min(budget, Q):
        a = F.random(rng)
        if a in tried:
            continue
        tried.add(a)
        ha = h.specialize_free(a).coeffs
        if len(ha) - 1 != delta or not p_is_squarefree(ha, F):
            continue
        if delta == 1:
            roots = p_roots(ha, F, rng)
        else:
            xq = p_powmod(x, Q, ha, F)
            g = p_gcd(ha, p_sub(xq, x, F), F)
            if len(g) < 2:
                continue
            roots = p_roots(g, F, rng)
        roots = [b for b in roots if p_eval(dh.specialize_free(a).coeffs, b, F) != F.zero]
        if roots:
            return a, roots[rng.randrange(len(roots))]
    raise BudgetExhausted(f"no rational point on the slice after {len(tried)} abscissae")


def decode_curve_point(sl: PlaneSlice, a: Any, b: Any, system: Sequence[Slp]) -> RationalPoint:
    fib = specialize_to_fiber(sl.curve, a)
    return decode_point(fib, b, system)


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------


def _check_size(problem: Problem, delta: int, label: str) -> None:
    q = problem.base_field.cardinality
    bound = field_size_bound(problem.n, problem.d, delta)
    if q <= bound:
        raise FieldTooSmall(
            f"field too small ({label}): need q > 8 n^2 d delta^4 = 8*{problem.n}^2*{problem.d}*{delta}^4 = {bound}, got q = {q}",
            q=q,
            bound=bound,
        )


def descend_to_base_field(state: SolverState, fiber: LiftingFiber, trace: Trace) -> LiftingFiber:
    """Homotopy to F_q-rational end data, then descent; resamples (nu, eta, Q)."""
    problem = state.problem
    Fq = problem.base_field
    n, r = problem.n, problem.r
    last: Exception | None = None
    for _ in range(state.config.nu_budget):
        path = sample_path(state.forms, state.point[: n - r], Fq, state.embedding, state.rng)
        t0 = time.perf_counter()
        try:
            end = deform_fiber_to_base_field(fiber, path, state.system)
            trace.timed("homotopy", t0)
            t0 = time.perf_counter()
            out = rationalize(end, path, problem.system)
            trace.timed("primitive", t0)
            return out
        except (BadRandomChoice, ArithmeticFailure) as exc:
            last = exc
            trace.retry("homotopy", exc)
    raise BudgetExhausted(f"homotopy failed for {state.config.nu_budget} end points (last: {last!r})")


def point_on_fiber(fiber: LiftingFiber, problem: Problem, config: SolverConfig, rng: random.Random, trace: Trace) -> RationalPoint:
    """Slices through V_Q with random omega until a verified point decodes."""
    Fq = problem.base_field
    k = fiber.primitive
    last: Exception | None = None
    for _ in range(config.omega_budget):
        omega = [Fq.random(rng) for _ in range(k)]
        if all(c == Fq.zero for c in omega):
            continue
        t0 = time.perf_counter()
        try:
            sl = slice_to_plane_curve(fiber, problem.system, omega)
            trace.timed("slice", t0)
            t0 = time.perf_counter()
            a, b = find_curve_point(sl, rng, config.point_budget)
            pt = decode_curve_point(sl, a, b, problem.system)
            trace.timed("point", t0)
        except (BadRandomChoice, ArithmeticFailure) as exc:
            last = exc
            trace.retry("slice", exc)
            continue
        if not pt.verified:
            last = ValidationFailed("decoded point has nonzero residuals")
            trace.retry("slice", last)
            continue
        return pt
    raise BudgetExhausted(f"no point after {config.omega_budget} slices (last: {last!r})")


def compute_rational_point(
    system: Sequence[Slp],
    config: SolverConfig | None = None,
    rng: random.Random | None = None,
    trace: Trace | None = None,
) -> tuple[RationalPoint, Trace]:
    """A verified F_q-rational point of the variety defined by the system."""
    config = config or SolverConfig()
    rng = rng or random.Random(0)
    trace = trace or Trace()
    problem = analyze(system, config)
    if config.enforce_field_size:
        _check_size(problem, problem.bezout, "Bezout bound before solving")
    last: Exception | None = None
    for _ in range(config.max_global_retries):
        fiber, state = solve_to_lifting_fiber(problem.system, config, rng, trace)
        delta = fiber.degree
        trace.info["field"] = str(problem.base_field)
        trace.info["intermediate_field"] = str(state.field)
        if config.enforce_field_size:
            _check_size(problem, delta, "degree of the lifting fiber")
        try:
            fq_fiber = descend_to_base_field(state, fiber, trace)
            pt = point_on_fiber(fq_fiber, problem, config, rng, trace)
        except (BadRandomChoice, ArithmeticFailure) as exc:
            last = exc
            trace.retry("global", exc)
            continue
        return pt, trace
    raise RetriesExhausted(
        f"no rational point after {config.max_global_retries} global attempts (last: {last!r})",
        stage="ratpoint",
        last_error=repr(last),
    )
