"""Deformation of a K-definable lifting fiber into an F_q-definable one.

The fixed coordinates move linearly in a parameter T: the forms
(1 - T) lambda + T Delta_1, the shift (1 - T) gamma + T Gamma_1 and the
point (1 - T) P + T Q, where Delta_1 takes its first n - r rows from an
F_q-matrix nu and the remaining rows from lambda. The fiber over T = 0 is
the solver's output; a Newton lift in T followed by Pade reconstruction of
the coefficients gives the fiber over T = 1, whose fixed forms and point are
F_q-rational. A change of primitive element to an F_q-form then makes the
minimal polynomial F_q-definable, and re-expressing the dependent
coordinates in the F_q-forms nu yields a fiber over F_q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import (
    DuplicateAbscissa,
    InsufficientField,
    LiftDiverged,
    NotAUnit,
    NotBaseField,
    NotSeparating,
    PathHitsDiscriminant,
    SingularMatrix,
    UnluckyCenter,
    ValidationFailed,
)
from .field import Field, FieldEmbedding
from .geosol import LiftingFiber, validate_fiber
from .lifting import Substitution, lift_to, start_lift
from .series import s_mul, sp_resultant
from .slp import LinearForms, Slp, combine, mat_inverse, mat_mul, mat_vec
from .upoly import (
    p_add,
    p_compose,
    p_deriv,
    p_eval,
    p_interpolate,
    p_invmod,
    p_is_squarefree,
    p_mod,
    p_mul,
    p_scale,
    p_sub,
    p_trim,
    rational_reconstruction,
)


@dataclass(frozen=True)
class HomotopyPath:
    """Linear path between the solver's data over K and F_q-rational end data.

    ``start`` and ``end_K`` are forms over K; ``end`` and ``end_point`` are
    the F_q originals of the end data.
    """

    start: LinearForms  # lambda, gamma over K
    start_point: tuple  # P over K, length n - r
    end: LinearForms  # nu, eta over F_q
    end_point: tuple  # Q over F_q
    embedding: FieldEmbedding  # F_q -> K

    @property
    def n(self) -> int:
        return self.start.n

    @property
    def r(self) -> int:
        return self.n - len(self.start_point)

    @property
    def field(self) -> Field:
        return self.start.field

    def end_embedded(self) -> LinearForms:
        e = self.embedding.embed
        return LinearForms.make(
            self.field, [[e(x) for x in row] for row in self.end.matrix], [e(x) for x in self.end.shift]
        )

    def delta1(self) -> LinearForms:
        """nu rows for the fixed coordinates, lambda rows for the others."""
        k = self.n - self.r
        nu = self.end_embedded()
        rows = [nu.matrix[i] if i < k else self.start.matrix[i] for i in range(self.n)]
        shift = [nu.shift[i] if i < k else self.start.shift[i] for i in range(self.n)]
        return LinearForms.make(self.field, rows, shift)

    def end_point_embedded(self) -> tuple:
        return tuple(self.embedding.embed(c) for c in self.end_point)

    def matrix_at(self, T: Any) -> list[list]:
        K = self.field
        d1 = self.delta1().matrix
        s = K.sub(K.one, T)
        return [[K.add(K.mul(s, a), K.mul(T, b)) for a, b in zip(ra, rb)] for ra, rb in zip(self.start.matrix, d1)]

    def shift_at(self, T: Any) -> list:
        K = self.field
        s = K.sub(K.one, T)
        return [K.add(K.mul(s, a), K.mul(T, b)) for a, b in zip(self.start.shift, self.delta1().shift)]

    def point_at(self, T: Any) -> list:
        K = self.field
        s = K.sub(K.one, T)
        return [K.add(K.mul(s, a), K.mul(T, b)) for a, b in zip(self.start_point, self.end_point_embedded())]


def sample_path(start: LinearForms, point: Sequence, base: Field, embedding: FieldEmbedding, rng: random.Random) -> HomotopyPath:
    """Random nu, eta, Q over F_q with nu and Delta_1 invertible."""
    n = start.n
    while True:
        nu = [[base.random(rng) for _ in range(n)] for _ in range(n)]
        eta = [base.random(rng) for _ in range(n)]
        Q = tuple(base.random(rng) for _ in range(len(point)))
        try:
            end = LinearForms.make(base, nu, eta)
            path = HomotopyPath(start, tuple(point), end, Q, embedding)
            path.delta1()
            return path
        except SingularMatrix:
            continue


# ---------------------------------------------------------------------------
# the substitution X = Lambda(T)^-1 (Y(T) - Gamma(T)) as series in T
# ---------------------------------------------------------------------------


def _series_mat_mul(A, B, N: int, F: Field):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc: list = []
            for l in range(k):
                if A[i][l] and B[l][j]:
                    acc = p_add(acc, s_mul(A[i][l], B[l][j], N, F), F)
            row.append(acc)
        out.append(row)
    return out


def path_substitution(path: HomotopyPath, N: int) -> Substitution:
    """The X-coordinates of the moving fiber as affine functions of the unknowns."""
    K = path.field
    n, k = path.n, path.n - path.r
    lam = path.start.matrix
    lam_inv = mat_inverse(K, lam)
    d1 = path.delta1()
    # Lambda(T) = lam (I + T A) with A = lam^-1 Delta_1 - I
    A = mat_mul(K, lam_inv, d1.matrix)
    for i in range(n):
        A[i][i] = K.sub(A[i][i], K.one)
    # inverse series: sum_j (-A)^j T^j lam^-1
    negA = [[K.neg(x) for x in row] for row in A]
    inv = [[p_trim([x], K) for x in row] for row in lam_inv]
    term = [list(row) for row in lam_inv]
    for j in range(1, N):
        term = mat_mul(K, negA, term)
        for a in range(n):
            for b in range(n):
                if term[a][b] != K.zero:
                    s = inv[a][b] + [K.zero] * (j + 1 - len(inv[a][b]))
                    s[j] = term[a][b]
                    inv[a][b] = s
        if all(x == K.zero for row in term for x in row):
            break
    # Y(T) - Gamma(T) for the fixed coordinates: linear polynomials in T
    P, Q = path.start_point, path.end_point_embedded()
    g0, g1 = path.start.shift, d1.shift
    fixed = []
    for j in range(k):
        c0 = K.sub(P[j], g0[j])
        c1 = K.sub(K.sub(Q[j], g1[j]), c0)
        fixed.append(p_trim([c0, c1], K))
    const, coef = [], []
    for i in range(n):
        acc: list = []
        for j in range(k):
            if inv[i][j] and fixed[j]:
                acc = p_add(acc, s_mul(inv[i][j], fixed[j], N, K), K)
        for j in range(k, n):
            if inv[i][j] and g0[j] != K.zero:
                acc = p_sub(acc, p_scale(inv[i][j], g0[j], K), K)
        const.append(acc)
        coef.append([inv[i][j] for j in range(k, n)])
    return Substitution(K, const, coef, n - k)


# ---------------------------------------------------------------------------
# deformation
# ---------------------------------------------------------------------------


def _pade_at_one(series: Sequence, D: int, N: int, F: Field) -> Any:
    """Value at T = 1 of the rational function of degrees (D, D) matching ``series``.

    The approximant is computed modulo T^(2D+1) and must agree with the
    series up to T^N; None signals that D is too small.
    """
    a = p_trim(list(series[:N]), F)
    if not a:
        return F.zero
    M = 2 * D + 1
    mod = [F.zero] * M + [F.one]
    rr = rational_reconstruction(a[:M], mod, D, D, F)
    if rr is None:
        return None
    num, den = rr
    if p_trim(p_mul(den, a, F)[:N], F) != p_trim(list(num[:N]), F):
        return None
    d1 = p_eval(den, F.one, F)
    if d1 == F.zero:
        raise PathHitsDiscriminant("the path passes through a pole at T = 1")
    return F.div(p_eval(num, F.one, F), d1)


def deform_fiber_to_base_field(
    fiber: LiftingFiber, path: HomotopyPath, system: Sequence[Slp], max_doublings: int = 3
) -> LiftingFiber:
    """The fiber over T = 1: F_q-rational fixed forms and point, same primitive row.

    ``system`` is in X-coordinates over K. Coefficients of the moving
    parametrization are rational in T; they are recovered by Pade
    approximation with degree bounds delta, 2 delta, 4 delta, ...
    """
    K = fiber.field
    n, r = path.n, path.r
    delta = fiber.degree
    prog = combine(list(system))
    w = fiber.w()
    w0 = [w.get(j, []) for j in range(n - r + 1, n)]
    bounds = [delta * 2**i for i in range(max_doublings + 1)]
    margin = delta + 2
    Nmax = 2 * bounds[-1] + 1 + margin
    subst = path_substitution(path, Nmax)
    try:
        state = start_lift(K, prog, subst, fiber.q, w0)
    except Exception as exc:
        raise PathHitsDiscriminant(f"the start fiber does not lift: {exc}") from exc
    for D in bounds:
        N = 2 * D + 1 + margin
        try:
            state = lift_to(state, prog, subst, N)
        except (LiftDiverged, NotAUnit) as exc:
            raise PathHitsDiscriminant(str(exc)) from exc
        vs = state.v()
        q1 = [_pade_at_one(row, D, N, K) for row in state.q]
        v1 = [[_pade_at_one(row, D, N, K) for row in vk] for vk in vs]
        if any(c is None for c in q1) or any(c is None for vk in v1 for c in vk):
            continue
        q1 = p_trim(q1, K)
        if len(q1) != delta + 1 or q1[-1] != K.one or not p_is_squarefree(q1, K):
            raise PathHitsDiscriminant("the fiber over T = 1 is ramified")
        v = {j: p_mod(p_trim(v1[k], K), q1, K) for k, j in enumerate(range(n - r + 1, n))}
        end = LiftingFiber(K, q1, v, path.end_point_embedded(), path.delta1())
        report = validate_fiber(end, system)
        if not report.ok:
            raise PathHitsDiscriminant("fiber over T = 1 fails validation: " + "; ".join(report.messages))
        return end
    raise PathHitsDiscriminant("no Pade approximant within the degree bounds")


# ---------------------------------------------------------------------------
# change of primitive element
# ---------------------------------------------------------------------------


def _primitive_form_on_fiber(fiber: LiftingFiber, row: Sequence, shift: Any, w: dict) -> list:
    """row.X + shift as a polynomial in the primitive variable modulo q."""
    K = fiber.field
    forms = fiber.forms
    ell = [K.dot(list(row), [forms.inverse[i][j] for i in range(forms.n)]) for j in range(forms.n)]
    c = K.sub(shift, K.dot(ell, list(forms.shift)))
    for j in range(fiber.primitive):
        c = K.add(c, K.mul(ell[j], fiber.lifting_point[j]))
    out = p_trim([c, ell[fiber.primitive]], K)
    for j in fiber.dependents:
        if ell[j] != K.zero:
            out = p_add(out, p_scale(w.get(j, []), ell[j], K), K)
    return p_mod(out, fiber.q, K)


def change_primitive_element(fiber: LiftingFiber, row: Sequence, shift: Any, system: Sequence[Slp] | None = None) -> LiftingFiber:
    """The same fiber with primitive element row.X + shift.

    The minimal polynomial of Z + T*U (U the old primitive) is computed
    modulo T^2 at 2 delta + 1 abscissae and interpolated; its T^0 part is
    the new minimal polynomial and minus its T^1 part parametrizes U.
    """
    K = fiber.field
    delta = fiber.degree
    prim = fiber.primitive
    w = fiber.w()
    ell = _primitive_form_on_fiber(fiber, row, shift, w)
    qs = [[c] if c != K.zero else [] for c in fiber.q]
    need = 2 * delta + 1
    xs, r0, r1 = [], [], []
    limit = K.p if K.k == 1 else K.cardinality
    s = 0
    while len(xs) < need and s < limit:
        S = K.from_int(s) if s < K.p else _nth_element(K, s)
        s += 1
        a = p_sub([S], ell, K)
        f = [[x] if x != K.zero else [] for x in a]
        while len(f) < 2:
            f.append([])
        f[1] = p_sub(f[1], [K.zero, K.one], K)
        while f and not f[-1]:
            f.pop()
        try:
            res, _ = sp_resultant(f, qs, 2, K)
        except UnluckyCenter:
            continue
        res = res + [K.zero] * (2 - len(res))
        xs.append(S)
        r0.append(res[0])
        r1.append(res[1])
    if len(xs) < need:
        raise InsufficientField(f"fewer than {need} usable interpolation abscissae")
    try:
        P0 = p_interpolate(xs, r0, K)
        P1 = p_interpolate(xs, r1, K)
    except DuplicateAbscissa as exc:  # pragma: no cover - abscissae are distinct by construction
        raise InsufficientField(str(exc)) from exc
    if len(P0) != delta + 1:
        raise NotSeparating("minimal polynomial of the new form has the wrong degree")
    c = K.inv(P0[-1])
    qz = p_scale(P0, c, K)
    if not p_is_squarefree(qz, K):
        raise NotSeparating("the new form does not separate the fiber points")
    dqz = p_deriv(qz, K)
    vu = p_mod(p_scale(P1, K.neg(c), K), qz, K)
    if delta == 1:
        wu = vu
    else:
        wu = p_mod(p_mul(vu, p_invmod(dqz, qz, K), K), qz, K)
    v = {}
    for j in fiber.dependents:
        wj = p_compose(w.get(j, []), wu, K, qz)
        v[j] = p_mod(p_mul(dqz, wj, K), qz, K) if delta > 1 else wj
    rows = [list(r) for r in fiber.forms.matrix]
    shifts = list(fiber.forms.shift)
    rows[prim] = [K.normalize(x) for x in row]
    shifts[prim] = K.normalize(shift)
    try:
        forms = LinearForms.make(K, rows, shifts)
    except SingularMatrix as exc:
        raise NotSeparating("the new primitive form is dependent on the fixed forms") from exc
    out = LiftingFiber(K, qz, v, fiber.lifting_point, forms)
    if system is not None:
        report = validate_fiber(out, system)
        if not report.ok:
            raise ValidationFailed("; ".join(report.messages))
    return out


def _nth_element(K: Field, s: int) -> Any:
    coords = []
    for _ in range(K.k):
        coords.append(s % K.p)
        s //= K.p
    return K.from_coordinates(coords)


# ---------------------------------------------------------------------------
# dependent coordinates and descent to F_q
# ---------------------------------------------------------------------------


def change_dependent_forms(fiber: LiftingFiber, forms: LinearForms) -> LiftingFiber:
    """Re-express the dependent coordinates in new forms sharing the other rows."""
    K = fiber.field
    prim = fiber.primitive
    old = fiber.forms
    for i in range(prim + 1):
        if tuple(forms.matrix[i]) != tuple(old.matrix[i]) or forms.shift[i] != old.shift[i]:
            raise ValueError("new forms must agree on the fixed and primitive rows")
    # Z = B (Y - shift_old) + shift_new with B = M_new M_old^-1
    B = mat_mul(K, forms.matrix, old.inverse)
    off = mat_vec(K, B, old.shift)
    w = fiber.w()
    coords: list = []
    for i in range(fiber.n):
        if i < prim:
            coords.append([fiber.lifting_point[i]] if fiber.lifting_point[i] != K.zero else [])
        elif i == prim:
            coords.append(p_mod([K.zero, K.one], fiber.q, K))
        else:
            coords.append(w.get(i, []))
    dq = p_deriv(fiber.q, K)
    v = {}
    for j in fiber.dependents:
        acc = p_trim([K.sub(forms.shift[j], off[j])], K)
        for i in range(fiber.n):
            if B[j][i] != K.zero and coords[i]:
                acc = p_add(acc, p_scale(coords[i], B[j][i], K), K)
        acc = p_mod(acc, fiber.q, K)
        v[j] = p_mod(p_mul(dq, acc, K), fiber.q, K) if fiber.degree > 1 else acc
    return LiftingFiber(K, list(fiber.q), v, fiber.lifting_point, forms)


def descend_fiber(fiber: LiftingFiber, embedding: FieldEmbedding, forms: LinearForms, point: Sequence) -> LiftingFiber:
    """The fiber over the subfield; NotBaseField when a coefficient is not in it."""
    proj = embedding.project
    try:
        q = [proj(c) for c in fiber.q]
        v = {j: [proj(c) for c in vj] for j, vj in fiber.v.items()}
    except NotBaseField as exc:
        raise NotBaseField(f"fiber is not defined over {embedding.small}: {exc}") from exc
    small = embedding.small
    return LiftingFiber(small, p_trim(q, small), {j: p_trim(vj, small) for j, vj in v.items()}, tuple(point), forms)


def rationalize(fiber_end: LiftingFiber, path: HomotopyPath, system_q: Sequence[Slp]) -> LiftingFiber:
    """From the T = 1 fiber to a validated fiber over F_q in the forms nu, eta.

    ``system_q`` is the system over F_q in X-coordinates.
    """
    k = path.n - path.r
    nuK = path.end_embedded()
    z = change_primitive_element(fiber_end, nuK.matrix[k], nuK.shift[k])
    z = change_dependent_forms(z, nuK)
    out = descend_fiber(z, path.embedding, path.end, path.end_point)
    report = validate_fiber(out, system_q)
    if not report.ok:
        raise ValidationFailed("descended fiber fails validation: " + "; ".join(report.messages))
    return out
