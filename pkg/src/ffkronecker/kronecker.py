"""The recursive geometric-resolution engine.

Starting from the hypersurface {F_1 = 0}, each round lifts the current
lifting fiber to a curve by Newton iteration, intersects the curve with the
next hypersurface through a resultant over truncated power series, and
recombines three minimal polynomials into the parametrizations of the next
fiber. Every random choice is verified after the fact; failures raise a
:class:`BadRandomChoice` subclass and are resampled, first locally and then
globally.

Coordinates are 0-based. A stage-s fiber fixes the first ``n - s``
Y-coordinates to the prefix of one random vector P of length n - 1.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field as dc_field
from math import comb, prod
from typing import Any, Sequence

from .errors import (
    ArithmeticFailure,
    BadRandomChoice,
    DivisionByZero,
    InconsistentSystem,
    NonLinearGcd,
    NotAUnit,
    NotLiftingPoint,
    PreconditionError,
    RetriesExhausted,
    SingularMatrix,
    UnluckyCenter,
    UnluckyLambda,
    ValidationFailed,
    ZeroDivisorHit,
)
from .field import Field, FieldEmbedding, extend_field, smallest_degree_above
from .geosol import GeometricSolutionCurve, LiftingFiber, validate_fiber
from .lifting import Substitution, lift_to_curve
from .rings import PolyRing, ResidueField, SeriesQuotientRing
from .series import sp_resultant
from .slp import LinearForms, Slp, apply_linear_change, combine, eval_generic, map_field
from .upoly import (
    BivariatePoly,
    DensePoly,
    factor,
    p_add,
    p_compose,
    p_deriv,
    p_gcd,
    p_invmod,
    p_is_squarefree,
    p_mod,
    p_monic,
    p_mul,
    p_squarefree_part,
    p_taylor_shift,
    p_trim,
)


# ---------------------------------------------------------------------------
# configuration and trace
# ---------------------------------------------------------------------------


@dataclass
class SolverConfig:
    max_global_retries: int = 16
    lambda_budget: int = 8
    lambda2_budget: int = 8
    alpha_budget: int = 8
    nu_budget: int = 8
    omega_budget: int = 8
    point_budget: int | None = None  # defaults to delta_r trials per slice
    check_preconditions: bool = True  # n >= 3, d >= 2, 1 <= r <= n - 1
    enforce_field_size: bool = True  # q > 8 n^2 d delta^4
    extension_degree: int | None = None  # [K : F_q]; None picks the smallest admissible

    def __post_init__(self) -> None:
        for name in ("max_global_retries", "lambda_budget", "lambda2_budget", "alpha_budget", "nu_budget", "omega_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.point_budget is not None and self.point_budget < 1:
            raise ValueError("point_budget must be at least 1")


@dataclass
class Trace:
    """Retries per stage, degrees and timings of one run."""

    retries: Counter = dc_field(default_factory=Counter)
    reasons: list = dc_field(default_factory=list)
    degrees: list = dc_field(default_factory=list)
    timings: dict = dc_field(default_factory=dict)
    info: dict = dc_field(default_factory=dict)

    def retry(self, stage: str, exc: BaseException) -> None:
        self.retries[stage] += 1
        self.reasons.append({"stage": stage, "error": type(exc).__name__})

    def timed(self, stage: str, t0: float) -> None:
        self.timings[stage] = self.timings.get(stage, 0.0) + time.perf_counter() - t0

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "degrees": list(self.degrees),
            "retries": {k: self.retries[k] for k in sorted(self.retries)},
            "failures": list(self.reasons),
        }
        out.update({k: self.info[k] for k in sorted(self.info)})
        if timings:
            out["elapsed"] = {k: round(v, 6) for k, v in sorted(self.timings.items())}
        return out


# ---------------------------------------------------------------------------
# preparing a system
# ---------------------------------------------------------------------------


def true_degree(slp: Slp, rng: random.Random | None = None, trials: int = 3) -> int:
    """Total degree of a single-output program, -1 for the zero polynomial.

    The restriction to a random line has the total degree unless the
    leading form vanishes on the direction; a few lines over a field with at
    least 2^20 elements make that negligible.
    """
    F = slp.field
    rng = rng or random.Random(0x5EED)
    H, emb = F, None
    if F.cardinality < 1 << 20:
        m = 1
        while F.cardinality**m < 1 << 20:
            m += 1
        H, emb = extend_field(F, m, random.Random(F.p * 31 + m))
        slp = map_field(slp, H, emb.embed)
    R = PolyRing(H)
    best = -1
    for _ in range(trials):
        line = [[H.random(rng), H.random(rng)] for _ in range(slp.n_vars)]
        val = eval_generic(slp, [p_trim(list(x), H) for x in line], R)[0]
        best = max(best, len(val) - 1)
    return best


@dataclass
class Problem:
    base_field: Field
    system: list  # over F_q, X-coordinates
    n: int
    r: int
    degrees: list
    symbolic_degrees: list

    @property
    def d(self) -> int:
        return max(self.degrees)

    @property
    def bezout(self) -> int:
        return prod(self.degrees)


def analyze(system: Sequence[Slp], config: SolverConfig | None = None) -> Problem:
    config = config or SolverConfig()
    system = list(system)
    if not system:
        raise PreconditionError("empty system")
    F = system[0].field
    n = system[0].n_vars
    if any(s.field != F or s.n_vars != n for s in system):
        raise PreconditionError("polynomials over different fields or variables")
    if any(len(s.outputs) != 1 for s in system):
        system = [s.output(i) for s in system for i in range(len(s.outputs))]
    if not all(s.division_free for s in system):
        raise PreconditionError("the solver needs division-free programs")
    degs = []
    for s in system:
        deg = true_degree(s)
        if deg <= 0:
            val = s.evaluate([F.zero] * n)[0]
            if val != F.zero:
                raise InconsistentSystem("a polynomial of the system is a nonzero constant")
            raise PreconditionError("a polynomial of the system is identically zero")
        degs.append(deg)
    r = len(system)
    if config.check_preconditions:
        if n < 3:
            raise PreconditionError(f"need n >= 3 variables, got {n}")
        if max(degs) < 2:
            raise PreconditionError("need maximal degree d >= 2")
        if not 1 <= r <= n - 1:
            raise PreconditionError(f"need 1 <= r <= n - 1, got r = {r}")
    elif r > n:
        raise PreconditionError("more polynomials than variables")
    return Problem(F, system, n, r, degs, [s.degrees[0] for s in system])


def intermediate_degree(problem: Problem, config: SolverConfig) -> int:
    """[K : F_q]: the smallest k with q^k > 60 n^4 d D^4, D the Bezout number."""
    if config.extension_degree is not None:
        return config.extension_degree
    q = problem.base_field.cardinality
    bound = 60 * problem.n**4 * problem.d * problem.bezout**4
    k = smallest_degree_above(q, bound)
    return k


# ---------------------------------------------------------------------------
# the solver state
# ---------------------------------------------------------------------------


@dataclass
class SolverState:
    problem: Problem
    field: Field  # K
    embedding: FieldEmbedding
    system: list  # over K, X-coordinates
    config: SolverConfig
    rng: random.Random
    trace: Trace
    forms: LinearForms | None = None
    point: tuple = ()
    system_y: list = dc_field(default_factory=list)
    fiber: LiftingFiber | None = None
    fibers: list = dc_field(default_factory=list)
    curves: list = dc_field(default_factory=list)
    stage: int = 0
    _progs: dict = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.problem.n

    def prog(self, s: int) -> Slp:
        """F_1..F_s in Y-coordinates as one program."""
        if s not in self._progs:
            self._progs[s] = combine(self.system_y[:s])
        return self._progs[s]

    def nonzero(self) -> Any:
        K = self.field
        while True:
            c = K.random(self.rng)
            if c != K.zero:
                return c


def make_state(problem: Problem, config: SolverConfig, rng: random.Random, trace: Trace | None = None) -> SolverState:
    k = intermediate_degree(problem, config)
    Fq = problem.base_field
    K, emb = extend_field(Fq, k, random.Random(Fq.cardinality * 7919 + k))
    system = [map_field(s, K, emb.embed) for s in problem.system] if K != Fq else list(problem.system)
    return SolverState(problem, K, emb, system, config, rng, trace or Trace())


def sample_global(state: SolverState) -> None:
    """Random (lambda, gamma, P) over K."""
    K, n, rng = state.field, state.n, state.rng
    while True:
        M = [[K.random(rng) for _ in range(n)] for _ in range(n)]
        shift = [K.random(rng) for _ in range(n)]
        try:
            forms = LinearForms.make(K, M, shift)
            break
        except SingularMatrix:
            continue
    state.forms = forms
    state.point = tuple(K.random(rng) for _ in range(n - 1))
    state.system_y = [apply_linear_change(s, forms) for s in state.system]
    state._progs = {}
    state.fibers, state.curves = [], []


# ---------------------------------------------------------------------------
# base case
# ---------------------------------------------------------------------------


def init_base_fiber(state: SolverState) -> LiftingFiber:
    """q^(1) = monic F_1(P, Y_n): squarefree of degree deg F_1 or rejected."""
    K, n = state.field, state.n
    R = PolyRing(K)
    ys = [R.from_field(c) for c in state.point[: n - 1]] + [R.gen()]
    f = eval_generic(state.system_y[0], ys, R)[0]
    if len(f) - 1 != state.problem.degrees[0]:
        raise NotLiftingPoint("F_1 drops degree on the line through P")
    if not p_is_squarefree(f, K):
        raise NotLiftingPoint("F_1 restricted to the line through P is not squarefree")
    fiber = LiftingFiber(K, p_monic(f, K), {}, tuple(state.point[: n - 1]), state.forms)
    state.fiber, state.stage = fiber, 1
    state.fibers.append(fiber)
    return fiber


# ---------------------------------------------------------------------------
# lifting
# ---------------------------------------------------------------------------


def lift_fiber_to_curve(state: SolverState, fiber: LiftingFiber) -> GeometricSolutionCurve:
    """Newton-Hensel lift of a stage-s fiber along the coordinate Y_{n-s-1}."""
    K, n = state.field, state.n
    s = fiber.stage
    free = n - s - 1
    if free < 0:
        raise ValueError("a fiber with no fixed coordinate cannot be lifted")
    P = fiber.lifting_point
    fixed = {i: [P[i]] for i in range(free)}
    fixed[free] = [P[free], K.one]
    unknown = list(range(n - s, n))
    subst = Substitution.coordinates(K, n, fixed, unknown)
    w = fiber.w()
    w0 = [w.get(j, []) for j in unknown[1:]]
    q_rows, v_rows, _ = lift_to_curve(K, state.prog(s), subst, fiber.q, w0, fiber.degree, P[free])
    direction = tuple(K.one if i == free else K.zero for i in range(free + 1))
    curve = GeometricSolutionCurve(
        K,
        BivariatePoly(K, q_rows),
        {j: BivariatePoly(K, v_rows[k]) for k, j in enumerate(unknown[1:])},
        fiber.forms,
        tuple(P[:free]) + (K.zero,),
        direction,
    )
    state.curves.append(curve)
    return curve


# ---------------------------------------------------------------------------
# intersection
# ---------------------------------------------------------------------------


def shear(rows: Sequence[Sequence], lam: Any, alpha: Any, N: int, F: Field) -> list:
    """b(alpha + t - lam*Y, Y) for b = sum_i rows[i](T) Y^i, as series rows in t."""
    out: dict[int, list] = {}
    nl = F.neg(lam)
    for i, r in enumerate(rows):
        c = p_taylor_shift(list(r), alpha, F)
        for k, ck in enumerate(c):
            if ck == F.zero:
                continue
            pw = F.one
            for j in range(k + 1):
                e = k - j
                if e < N and pw != F.zero:
                    row = out.setdefault(i + j, [F.zero] * N)
                    row[e] = F.add(row[e], F.mul(ck, F.mul(F.from_int(comb(k, j)), pw)))
                pw = F.mul(pw, nl)
    if not out:
        return []
    top = max(out)
    res = [p_trim(out.get(i, []), F) for i in range(top + 1)]
    while res and not res[-1]:
        res.pop()
    return res


def intersect_minimal_polynomial(
    state: SolverState, curve: GeometricSolutionCurve, f: Slp, lam: Any, f_degree: int | None = None
) -> DensePoly:
    """Squarefree part of the minimal polynomial of T + lam*Y on the next fiber.

    A nonzero constant result means the next fiber is empty.
    """
    K, n = state.field, state.n
    delta = curve.degree
    d = f_degree if f_degree is not None else f.degree
    N = d * delta + 1
    free, prim = curve.primitive - 1, curve.primitive
    dq = curve.q.derivative_primitive().rows
    last: Exception | None = None
    for _ in range(state.config.alpha_budget):
        alpha = K.random(state.rng)
        ql = shear(curve.q.rows, lam, alpha, N, K)
        if len(ql) != delta + 1 or len(ql[-1]) != 1:
            raise UnluckyLambda("the sheared curve is not monic in the primitive variable")
        c = K.inv(ql[-1][0])
        ql = [[K.mul(x, c) for x in row] for row in ql]
        R = SeriesQuotientRing(K, N, ql)
        try:
            h = R.inv(R.reduce(shear(dq, lam, alpha, N, K)))
        except NotAUnit as exc:
            last = UnluckyCenter(str(exc))
            state.trace.retry("intersect-center", last)
            continue
        ys = []
        gen = R.gen()
        for i in range(n):
            if i < free:
                ys.append(R.from_field(curve.base[i]))
            elif i == free:
                ys.append(R.sub(R.from_series([alpha, K.one]), R.mul(R.from_field(lam), gen)))
            elif i == prim:
                ys.append(gen)
            else:
                ys.append(R.mul(R.reduce(shear(curve.v[i].rows, lam, alpha, N, K)), h))
        fval = eval_generic(f, ys, R)[0]
        if not fval:
            raise ValidationFailed("the next polynomial vanishes on the curve")
        try:
            g, _ = sp_resultant(ql, fval, N, K)
        except UnluckyCenter as exc:
            last = exc
            state.trace.retry("intersect-center", exc)
            continue
        if not g:
            raise ValidationFailed("vanishing resultant: the system is not a regular sequence here")
        G = p_trim(p_taylor_shift(g, K.neg(alpha), K), K)
        if len(G) == 1:
            return DensePoly(K, G, raw=True)
        return DensePoly(K, p_squarefree_part(G, K), raw=True)
    raise last if last is not None else UnluckyCenter("no lucky center")


class _EmptyFiber(BadRandomChoice):
    """The next fiber came out empty; confirmed by a second global attempt."""


def _bivariate_at(rows: Sequence[Sequence], y: Sequence, m: Sequence, F: Field) -> list:
    """sum_i rows[i](T) y^i modulo m, everything in K[T]."""
    acc: list = []
    for r in reversed(rows):
        acc = p_mod(p_mul(acc, y, F), m, F) if acc else []
        acc = p_add(acc, p_mod(list(r), m, F), F)
    return acc


def recombine_parametrizations(
    state: SolverState,
    polys: dict,
    curve: GeometricSolutionCurve,
    rng: random.Random | None = None,
) -> LiftingFiber:
    """Parametrizations of the next fiber from the minimal polynomials for 0, lam1, lam2.

    ``polys`` maps each lambda (0 first) to its minimal polynomial.
    """
    K = state.field
    rng = rng or state.rng
    lams = list(polys)
    if len(lams) != 3 or lams[0] != K.zero:
        raise ValueError("need the minimal polynomials for 0, lambda_1 and lambda_2")
    q0 = polys[lams[0]].coeffs
    (l1, q1), (l2, q2) = [(lam, polys[lam].coeffs) for lam in lams[1:]]
    free, prim = curve.primitive - 1, curve.primitive
    dq0 = p_deriv(q0, K)
    if len(q0) == 2:
        factors = [list(q0)]
    else:
        factors = [f.coeffs for f, _ in factor(DensePoly(K, q0, raw=True), rng)]
    # the old primitive coordinate as a function of the new one, factor by factor
    vb: list = []
    for qj in factors:
        RF = ResidueField(K, qj)
        a = RF.gen()
        try:
            A = p_compose([RF.from_field(c) for c in q1], [a, RF.from_field(l1)], RF)
            B = p_compose([RF.from_field(c) for c in q2], [a, RF.from_field(l2)], RF)
            g = p_gcd(A, B, RF)
        except DivisionByZero as exc:
            raise ZeroDivisorHit("inversion failed in a residue field") from exc
        if len(g) != 2:
            raise NonLinearGcd(f"gcd of degree {len(g) - 1} in a residue field")
        bj = RF.neg(g[0])
        cj = p_mod(p_mul(p_deriv(qj, K), bj, K), qj, K)
        others: list = [K.one]
        for qi in factors:
            if qi is not qj:
                others = p_mul(others, qi, K)
        vb = p_add(vb, p_mod(p_mul(cj, others, K), q0, K), K)
    try:
        wb = p_mod(p_mul(vb, p_invmod(dq0, q0, K), K), q0, K) if len(q0) > 2 else p_mod(vb, q0, K)
        hq = _bivariate_at(curve.q.derivative_primitive().rows, wb, q0, K)
        h = p_invmod(hq, q0, K)
    except DivisionByZero as exc:
        raise ZeroDivisorHit("derivative not invertible on the next fiber") from exc
    v = {prim: p_mod(p_mul(dq0, wb, K), q0, K) if len(q0) > 2 else vb}
    for j, vj in curve.v.items():
        wj = p_mod(p_mul(_bivariate_at(vj.rows, wb, q0, K), h, K), q0, K)
        v[j] = p_mod(p_mul(dq0, wj, K), q0, K)
    fiber = LiftingFiber(K, list(q0), v, tuple(curve.base[:free]), curve.forms)
    report = validate_fiber(fiber, state.system[: fiber.stage])
    if not report.ok:
        raise ValidationFailed("; ".join(report.messages))
    return fiber


def next_fiber(state: SolverState, curve: GeometricSolutionCurve) -> LiftingFiber:
    """One intersection round: stage s curve and F_{s+1} to the stage s+1 fiber."""
    K = state.field
    s = curve.stage
    f = state.system_y[s]
    deg = state.problem.degrees[s]
    t0 = time.perf_counter()
    q0 = intersect_minimal_polynomial(state, curve, f, K.zero, deg)
    if q0.deg() == 0:
        raise _EmptyFiber("empty intersection")
    target = q0.deg()

    def sample_lambda(budget: int, label: str) -> tuple[Any, DensePoly]:
        last: Exception = UnluckyLambda("lambda budget exhausted")
        for _ in range(budget):
            lam = state.nonzero()
            try:
                ql = intersect_minimal_polynomial(state, curve, f, lam, deg)
            except (UnluckyLambda, UnluckyCenter) as exc:
                last = exc
                state.trace.retry(label, exc)
                continue
            if ql.deg() < target:
                last = UnluckyLambda("the form does not separate the fiber")
                state.trace.retry(label, last)
                continue
            if ql.deg() > target:
                raise NotLiftingPoint("the free coordinate does not separate the next fiber")
            return lam, ql
        raise last

    l1, q1 = sample_lambda(state.config.lambda_budget, "intersect-lambda1")
    state.trace.timed("intersect", t0)
    t0 = time.perf_counter()
    last: Exception = NonLinearGcd("lambda_2 budget exhausted")
    for _ in range(state.config.lambda2_budget):
        l2, q2 = sample_lambda(state.config.lambda_budget, "intersect-lambda2")
        if l2 == l1:
            continue
        try:
            fiber = recombine_parametrizations(state, {K.zero: q0, l1: q1, l2: q2}, curve)
        except (NonLinearGcd, ZeroDivisorHit) as exc:
            last = exc
            state.trace.retry("recombine", exc)
            continue
        state.trace.timed("recombine", t0)
        state.fiber, state.stage = fiber, fiber.stage
        state.fibers.append(fiber)
        return fiber
    raise last


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def run_kronecker(state: SolverState) -> LiftingFiber:
    """One global attempt with the current (lambda, gamma, P)."""
    t0 = time.perf_counter()
    fiber = init_base_fiber(state)
    state.trace.timed("base", t0)
    for _ in range(1, state.problem.r):
        t0 = time.perf_counter()
        curve = lift_fiber_to_curve(state, fiber)
        state.trace.timed("lift", t0)
        fiber = next_fiber(state, curve)
    return fiber


def solve_to_lifting_fiber(
    system: Sequence[Slp],
    config: SolverConfig | None = None,
    rng: random.Random | None = None,
    trace: Trace | None = None,
) -> tuple[LiftingFiber, SolverState]:
    """A geometric solution over K of the lifting fiber of the whole system."""
    config = config or SolverConfig()
    rng = rng or random.Random(0)
    problem = analyze(system, config)
    state = make_state(problem, config, rng, trace)
    last: Exception | None = None
    empty = 0
    for _ in range(config.max_global_retries):
        sample_global(state)
        try:
            fiber = run_kronecker(state)
        except _EmptyFiber as exc:
            empty += 1
            last = exc
            state.trace.retry(f"stage-{state.stage + 1}", exc)
            if empty >= 2:
                raise InconsistentSystem(f"stage {state.stage + 1} has an empty lifting fiber") from exc
            continue
        except (BadRandomChoice, ArithmeticFailure) as exc:
            last = exc
            state.trace.retry(f"stage-{state.stage + 1}", exc)
            continue
        state.trace.degrees = [fb.degree for fb in state.fibers]
        return fiber, state
    raise RetriesExhausted(
        f"no verified lifting fiber after {config.max_global_retries} global attempts (last: {last!r})",
        stage=str(state.stage),
        last_error=repr(last),
    )
