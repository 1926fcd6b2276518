"""Global Newton-Hensel lifting of zero-dimensional parametrizations.

The unknowns u_0, ..., u_{m-1} are the coordinates of the points of a fiber;
u_0 is the primitive element. A fiber is a monic q(Y) and polynomials
w_1..w_{m-1} with u_0 = Y, u_k = w_k(Y) modulo q. A one-parameter family of
fibers is described by a :class:`Substitution` that expresses every input
variable of a straight-line program as an affine function of the unknowns
with coefficients in K[[t]].

Each Newton step doubles the t-adic precision: with
Delta = J^{-1} F computed modulo q,

    q   <- q + (q' * Delta_0 mod q)
    w_k <- w_k - Delta_k + (w_k' * Delta_0 mod q),

which moves the roots of q to the corrected values of u_0 and re-expresses
the other coordinates in terms of the new roots. The inverse Jacobian is
itself maintained by a Newton iteration, so only the first step inverts a
matrix from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .errors import LiftDiverged, NotAUnit, NotLiftingPoint
from .field import Field
from .rings import DualRing, SeriesQuotientRing, b_add, b_scale_series, b_sub, b_trim, b_truncate
from .series import s_shift, s_trunc
from .slp import Slp, eval_generic
from .upoly import p_taylor_shift, p_trim


# ---------------------------------------------------------------------------
# affine substitutions with series coefficients
# ---------------------------------------------------------------------------


class Substitution:
    """x_i = const_i(t) + sum_k coef_ik(t) u_k for every program input.

    ``const`` holds one raw series per input; ``coef`` one list of m raw
    series per input, where an empty list stands for zero.
    """

    def __init__(self, F: Field, const: Sequence[Sequence], coef: Sequence[Sequence[Sequence]], m: int):
        self.F = F
        self.m = m
        self.const = [p_trim(list(c), F) for c in const]
        self.coef = [[p_trim(list(c), F) for c in row] for row in coef]
        self.n_inputs = len(self.const)
        # inputs that are literally one unknown
        self._direct = []
        for c, row in zip(self.const, self.coef):
            nz = [k for k, e in enumerate(row) if e]
            if not c and len(nz) == 1 and row[nz[0]] == [F.one]:
                self._direct.append(nz[0])
            else:
                self._direct.append(None)

    @classmethod
    def coordinates(cls, F: Field, n: int, fixed: dict[int, Sequence], unknown_index: Sequence[int]) -> "Substitution":
        """Inputs are coordinates: fixed ones are series, the rest unknowns."""
        m = len(unknown_index)
        pos = {v: k for k, v in enumerate(unknown_index)}
        const, coef = [], []
        for i in range(n):
            row: list = [[] for _ in range(m)]
            if i in pos:
                row[pos[i]] = [F.one]
                const.append([])
            else:
                const.append(list(fixed[i]))
            coef.append(row)
        return cls(F, const, coef, m)

    def assign(self, R: Any, us: Sequence) -> list:
        out = []
        for i in range(self.n_inputs):
            d = self._direct[i]
            if d is not None:
                out.append(us[d])
                continue
            acc = R.from_series(self.const[i]) if self.const[i] else R.zero
            for k, c in enumerate(self.coef[i]):
                if c:
                    acc = R.add(acc, R.mul(R.from_series(c), us[k]))
            out.append(acc)
        return out


# ---------------------------------------------------------------------------
# small dense linear algebra over commutative rings
# ---------------------------------------------------------------------------


def ring_det(R: Any, M: Sequence[Sequence]) -> Any:
    """Determinant by cofactor expansion with memoized minors (small sizes)."""
    n = len(M)
    memo: dict = {}

    def det(cols: tuple) -> Any:
        k = n - len(cols)
        if not cols:
            return R.one
        if cols in memo:
            return memo[cols]
        acc = R.zero
        for idx, c in enumerate(cols):
            entry = M[k][c]
            if R.is_zero(entry):
                continue
            term = R.mul(entry, det(cols[:idx] + cols[idx + 1 :]))
            acc = R.sub(acc, term) if idx % 2 else R.add(acc, term)
        memo[cols] = acc
        return acc

    return det(tuple(range(n)))


def ring_adjugate(R: Any, M: Sequence[Sequence]) -> tuple[Any, list[list]]:
    n = len(M)
    d = ring_det(R, M)
    if n == 1:
        return d, [[R.one]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            c = ring_det(R, minor)
            adj[j][i] = c if (i + j) % 2 == 0 else R.neg(c)
    return d, adj


def ring_matmul(R: Any, A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = R.zero
            for l in range(k):
                a, b = A[i][l], B[l][j]
                if not R.is_zero(a) and not R.is_zero(b):
                    acc = R.add(acc, R.mul(a, b))
            row.append(acc)
        out.append(row)
    return out


def ring_matvec(R: Any, A: Sequence[Sequence], v: Sequence) -> list:
    return [r[0] for r in ring_matmul(R, A, [[x] for x in v])]


def ring_inverse(R: Any, M: Sequence[Sequence]) -> list[list]:
    """Inverse through the adjugate; NotAUnit when the determinant is not a unit."""
    d, adj = ring_adjugate(R, M)
    di = R.inv(d)
    return [[R.mul(x, di) for x in row] for row in adj]


# ---------------------------------------------------------------------------
# the lift
# ---------------------------------------------------------------------------


@dataclass
class LiftState:
    """A parametrization valid modulo t^precision."""

    F: Field
    precision: int
    q: list  # rows by powers of Y, raw t-series, monic
    w: list  # one bivariate element per non-primitive unknown
    jinv: list | None = None
    jprec: int = 0

    def v(self) -> list:
        """The parametrizations in v-form: q' * w_k modulo q."""
        R = SeriesQuotientRing(self.F, self.precision, self.q)
        dq = R.derivative(self.q)
        return [R.mul(dq, wk) for wk in self.w]


def _jacobian(prog: Slp, subst: Substitution, R: SeriesQuotientRing, us: Sequence) -> list[list]:
    m = len(us)
    D = DualRing(R, m)
    dus = [D.variable(u, k) for k, u in enumerate(us)]
    out = eval_generic(prog, subst.assign(D, dus), D)
    return [D.gradient(o) for o in out]


def start_lift(F: Field, prog: Slp, subst: Substitution, q0: Sequence, w0: Sequence[Sequence]) -> LiftState:
    """Initial state from a fiber at t = 0; checks the Jacobian is invertible."""
    if len(prog.outputs) != subst.m:
        raise ValueError("square systems only: outputs must match unknowns")
    q = [[c] if c != F.zero else [] for c in q0]
    w = [b_trim([[c] if c != F.zero else [] for c in wk]) for wk in w0]
    R = SeriesQuotientRing(F, 1, q)
    us = [R.gen()] + [R.reduce(x) for x in w]
    vals = eval_generic(prog, subst.assign(R, us), R)
    if any(vals):
        raise NotLiftingPoint("the starting fiber does not satisfy the system")
    J = _jacobian(prog, subst, R, us)
    try:
        jinv = ring_inverse(R, J)
    except NotAUnit as exc:
        raise NotLiftingPoint("Jacobian is singular at a fiber point") from exc
    return LiftState(F, 1, q, [R.reduce(x) for x in w], jinv, 1)


def lift_to(state: LiftState, prog: Slp, subst: Substitution, N: int) -> LiftState:
    """Continue Newton steps until the precision reaches N."""
    F = state.F
    q, w = state.q, state.w
    kappa = state.precision
    jinv, jprec = state.jinv, state.jprec
    while kappa < N:
        k2 = min(2 * kappa, N)
        R2 = SeriesQuotientRing(F, k2, q)
        us = [R2.gen()] + [R2.truncate(x, k2) for x in w]
        vals = eval_generic(prog, subst.assign(R2, us), R2)
        step = k2 - kappa
        low = []
        for v in vals:
            if any(c != F.zero for r in v for c in r[:kappa]):
                raise LiftDiverged("residual is not divisible by t^kappa")
            low.append(b_trim([s_shift(r, -kappa, step, F) for r in v]))
        Rs = SeriesQuotientRing(F, step, q)
        if jprec < step:
            J = _jacobian(prog, subst, Rs, [Rs.truncate(u, step) for u in us])
            jinv = [[Rs.truncate(x, step) for x in row] for row in jinv]
            m = len(J)
            JJ = ring_matmul(Rs, J, jinv)
            corr = [[Rs.sub(Rs.one if i == j else Rs.zero, JJ[i][j]) for j in range(m)] for i in range(m)]
            jinv = [[Rs.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(jinv, ring_matmul(Rs, jinv, corr))]
            jprec = step
        jin = [[Rs.truncate(x, step) for x in row] for row in jinv]
        delta = ring_matvec(Rs, jin, low)
        d0 = delta[0]
        dq = Rs.derivative(Rs.truncate(q, step))
        qcorr = Rs.mul(dq, d0)
        new_q = b_add(b_truncate(q, k2, F), _shift_b(qcorr, kappa, k2, F), F)
        new_w = []
        for k, wk in enumerate(w):
            wk2 = R2.truncate(wk, k2)
            dw = Rs.derivative(Rs.truncate(wk, step))
            corr = Rs.sub(Rs.mul(dw, d0), delta[k + 1])
            new_w.append(b_add(wk2, _shift_b(corr, kappa, k2, F), F))
        q, w = new_q, new_w
        kappa = k2
    return LiftState(F, kappa, q, w, jinv, jprec)


def _shift_b(a: Sequence, k: int, N: int, F: Field) -> list:
    return b_trim([s_shift(r, k, N, F) for r in a])


def newton_lift(F: Field, prog: Slp, subst: Substitution, q0: Sequence, w0: Sequence[Sequence], N: int) -> LiftState:
    return lift_to(start_lift(F, prog, subst, q0, w0), prog, subst, N)


def residuals(prog: Slp, subst: Substitution, F: Field, N: int, q: Sequence, v: Sequence) -> list:
    """System values on a v-form parametrization modulo (t^N, q)."""
    R = SeriesQuotientRing(F, N, q)
    dq = R.derivative(R.truncate(q, N))
    try:
        h = R.inv(dq)
    except NotAUnit as exc:
        raise LiftDiverged("q' is not invertible modulo q") from exc
    us = [R.gen()] + [R.mul(R.truncate(vk, N), h) for vk in v]
    return eval_generic(prog, subst.assign(R, us), R)


# ---------------------------------------------------------------------------
# conversions between series rows and polynomials in the free variable
# ---------------------------------------------------------------------------


def series_rows_to_poly_rows(rows: Sequence[Sequence], center: Any, F: Field, max_degree: int) -> list[list]:
    """Reinterpret each t-series as a polynomial in T = center + t."""
    out = []
    neg_center = F.neg(center)
    for r in rows:
        r = s_trunc(r, max_degree + 1, F)
        out.append(p_trim(p_taylor_shift(r, neg_center, F), F))
    return out


def poly_rows_to_series_rows(rows: Sequence[Sequence], center: Any, F: Field, N: int) -> list[list]:
    """Expand polynomials in T around T = center, truncated at t^N."""
    return b_trim([s_trunc(p_taylor_shift(list(r), center, F), N, F) for r in rows])


def scale_rows(rows: Sequence[Sequence], s: Sequence, N: int, F: Field) -> list:
    return b_scale_series(rows, s, N, F)


def rows_sub(a: Sequence, b: Sequence, F: Field) -> list:
    return b_sub(a, b, F)


# ---------------------------------------------------------------------------
# lifting a fiber to a curve with polynomial coefficients
# ---------------------------------------------------------------------------


def lift_to_curve(
    F: Field,
    prog: Slp,
    subst: Substitution,
    q0: Sequence,
    w0: Sequence[Sequence],
    degree_bound: int,
    center: Any,
) -> tuple[list, list, LiftState]:
    """Lift a fiber and read the coefficients as polynomials of bounded degree.

    The lift runs to precision degree_bound + 1; the polynomial curve it
    defines is then checked at twice that precision. On failure the lift is
    continued once to 2 * degree_bound + 1 with the degree bound doubled.
    Returns (q rows, v rows per unknown, state) in the free variable.
    """
    state = start_lift(F, prog, subst, q0, w0)
    for bound in (degree_bound, 2 * degree_bound):
        state = lift_to(state, prog, subst, bound + 1)
        q_rows = series_rows_to_poly_rows(state.q, center, F, bound)
        v_rows = [series_rows_to_poly_rows(vk, center, F, bound) for vk in state.v()]
        M = 2 * bound + 2
        qs = poly_rows_to_series_rows(q_rows, center, F, M)
        vs = [poly_rows_to_series_rows(r, center, F, M) for r in v_rows]
        if not any(residuals(prog, subst, F, M, qs, vs)):
            return q_rows, v_rows, state
    raise LiftDiverged("lifted parametrization is not polynomial of the expected degree")
