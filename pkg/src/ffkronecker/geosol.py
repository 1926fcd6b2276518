"""Geometric solutions of lifting fibers and lifting curves.

Coordinates are indexed from 0. A fiber of a variety of dimension n - s has
``len(lifting_point) = n - s`` fixed coordinates, the primitive element at
index ``n - s`` and dependent coordinates after it. Parametrizations are kept
in v-form: on the fiber, q'(Y) * Y_j = v_j(Y) with q monic and squarefree.

A curve has the same layout with one extra degree of freedom: the fixed
coordinates move along ``base + T * direction``. For the curves of the
recursive solver ``direction`` is a unit vector, so T is simply the last fixed
coordinate; slices through a rational point use a non-trivial direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from .errors import NotLiftingPoint, RamifiedRoot
from .field import Field, FieldElement, field_from_json
from .lifting import Substitution, poly_rows_to_series_rows, residuals
from .rings import DualRing, QuotientRing
from .slp import LinearForms, Slp, combine, eval_generic
from .lifting import ring_det
from .upoly import (
    BivariatePoly,
    DensePoly,
    p_deriv,
    p_eval,
    p_gcd,
    p_invmod,
    p_is_squarefree,
    p_mod,
    p_monic,
    p_mul,
)

SCHEMA = "ffkronecker/1"


@dataclass
class LiftingFiber:
    field: Field
    q: list  # monic raw coefficients in the primitive variable
    v: dict  # dependent index -> raw coefficients, degree < deg q
    lifting_point: tuple
    forms: LinearForms

    @property
    def n(self) -> int:
        return self.forms.n

    @property
    def primitive(self) -> int:
        return len(self.lifting_point)

    @property
    def stage(self) -> int:
        return self.n - len(self.lifting_point)

    @property
    def degree(self) -> int:
        return len(self.q) - 1

    @property
    def dependents(self) -> list[int]:
        return list(range(self.primitive + 1, self.n))

    @property
    def q_poly(self) -> DensePoly:
        return DensePoly(self.field, self.q, raw=True)

    def v_poly(self, j: int) -> DensePoly:
        return DensePoly(self.field, self.v.get(j, []), raw=True)

    def w(self) -> dict:
        """Solved parametrizations w_j = v_j / q' modulo q."""
        F = self.field
        if len(self.q) == 2:
            # a single point: q' = 1
            return {j: p_mod(vj, self.q, F) for j, vj in self.v.items()}
        h = p_invmod(p_deriv(self.q, F), self.q, F)
        return {j: p_mod(p_mul(vj, h, F), self.q, F) for j, vj in self.v.items()}

    def to_json(self) -> dict:
        F = self.field
        return {
            "schema": SCHEMA,
            "kind": "fiber",
            "field": F.descriptor_json(),
            "n": self.n,
            "stage": self.stage,
            "primitive": self.primitive,
            "forms": self.forms.to_json(),
            "lifting_point": [F.to_json(c) for c in self.lifting_point],
            "q": [F.to_json(c) for c in self.q],
            "v": {str(j): [F.to_json(c) for c in self.v[j]] for j in sorted(self.v)},
        }

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None) -> "LiftingFiber":
        F = field or field_from_json(obj["field"])
        forms = LinearForms.from_json(F, obj["forms"])
        fiber = cls(
            F,
            [F.from_json(c) for c in obj["q"]],
            {int(j): [F.from_json(c) for c in cs] for j, cs in obj["v"].items()},
            tuple(F.from_json(c) for c in obj["lifting_point"]),
            forms,
        )
        if int(obj.get("primitive", fiber.primitive)) != fiber.primitive:
            raise ValueError("primitive index disagrees with the lifting point")
        return fiber


@dataclass
class GeometricSolutionCurve:
    field: Field
    q: BivariatePoly  # rows by primitive power, polynomials in T
    v: dict  # dependent index -> BivariatePoly
    forms: LinearForms
    base: tuple  # fixed coordinates at T = 0
    direction: tuple

    @property
    def n(self) -> int:
        return self.forms.n

    @property
    def primitive(self) -> int:
        return len(self.base)

    @property
    def stage(self) -> int:
        return self.n - len(self.base)

    @property
    def degree(self) -> int:
        return self.q.degree_primitive()

    @property
    def free_var(self) -> int | None:
        """Index of the moving coordinate when the direction is a unit vector."""
        nz = [i for i, c in enumerate(self.direction) if c != self.field.zero]
        if len(nz) == 1 and self.direction[nz[0]] == self.field.one:
            return nz[0]
        return None

    def fixed_at(self, value: Any) -> tuple:
        F = self.field
        return tuple(F.add(b, F.mul(value, d)) for b, d in zip(self.base, self.direction))

    def to_json(self) -> dict:
        F = self.field
        return {
            "schema": SCHEMA,
            "kind": "curve",
            "field": F.descriptor_json(),
            "n": self.n,
            "stage": self.stage,
            "primitive": self.primitive,
            "forms": self.forms.to_json(),
            "base": [F.to_json(c) for c in self.base],
            "direction": [F.to_json(c) for c in self.direction],
            "q": self.q.to_json(),
            "v": {str(j): self.v[j].to_json() for j in sorted(self.v)},
        }


@dataclass
class RationalPoint:
    field: Field
    coords: list
    residuals: list = dc_field(default_factory=list)

    @property
    def verified(self) -> bool:
        return bool(self.residuals) and all(r == self.field.zero for r in self.residuals)

    def to_json(self) -> dict:
        F = self.field
        return {
            "point": [F.to_json(c) for c in self.coords],
            "residuals": [F.to_json(c) for c in self.residuals],
        }


@dataclass
class FiberReport:
    residuals_zero: bool
    squarefree: bool
    jacobian_invertible: bool
    degree: int
    messages: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.residuals_zero and self.squarefree and self.jacobian_invertible

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "fiber-report",
            "ok": self.ok,
            "residuals_zero": self.residuals_zero,
            "squarefree": self.squarefree,
            "jacobian_invertible": self.jacobian_invertible,
            "degree": self.degree,
            "messages": list(self.messages),
        }


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def specialize_to_fiber(curve: GeometricSolutionCurve, value: Any) -> LiftingFiber:
    """Fiber of the curve above T = value; NotLiftingPoint if ramified there."""
    F = curve.field
    value = F.normalize(value)
    q = curve.q.specialize_free(value)
    if q.deg() != curve.degree or not q.is_squarefree():
        raise NotLiftingPoint("specialized minimal polynomial is not squarefree of full degree")
    qm = q.monic()
    inv_lc = F.inv(q.lc)
    v = {}
    for j, vj in curve.v.items():
        s = vj.specialize_free(value)
        v[j] = [F.mul(c, inv_lc) for c in s.coeffs]
    return LiftingFiber(F, qm.coeffs, v, curve.fixed_at(value), curve.forms)


def fiber_assignment(fiber: LiftingFiber, R: QuotientRing, w: dict | None = None) -> list:
    """X-coordinates of the generic fiber point as elements of K[Y]/(q)."""
    F = fiber.field
    w = fiber.w() if w is None else w
    ys = []
    for i in range(fiber.n):
        if i < fiber.primitive:
            ys.append(R.from_field(fiber.lifting_point[i]))
        elif i == fiber.primitive:
            ys.append(R.gen())
        else:
            ys.append(R.reduce(w.get(i, [])))
    return _to_x(F, fiber.forms, R, ys)


def _to_x(F: Field, forms: LinearForms, R: Any, ys: Sequence) -> list:
    inv = forms.inverse
    shifted = [R.sub(y, R.from_field(g)) for y, g in zip(ys, forms.shift)]
    xs = []
    for row in inv:
        acc = R.zero
        for c, y in zip(row, shifted):
            if c != F.zero and not R.is_zero(y):
                acc = R.add(acc, R.mul(R.from_field(c), y))
        xs.append(acc)
    return xs


def fiber_residuals(fiber: LiftingFiber, system: Sequence[Slp]) -> list:
    if len(fiber.q) < 2:
        return []
    R = QuotientRing(fiber.field, fiber.q)
    prog = combine(list(system))
    return eval_generic(prog, fiber_assignment(fiber, R), R)


def validate_fiber(fiber: LiftingFiber, system: Sequence[Slp]) -> FiberReport:
    """Residuals modulo q, squarefreeness of q, invertibility of the Jacobian."""
    F = fiber.field
    msgs = []
    if len(fiber.q) < 2:
        return FiberReport(False, False, False, fiber.degree, ["q is constant"])
    sqf = p_is_squarefree(fiber.q, F)
    if not sqf:
        msgs.append("q is not squarefree")
    try:
        w = fiber.w()
    except Exception as exc:  # q' not invertible
        msgs.append(f"q' is not invertible modulo q: {exc}")
        return FiberReport(False, False, False, fiber.degree, msgs)
    R = QuotientRing(F, fiber.q)
    prog = combine(list(system))
    res = eval_generic(prog, fiber_assignment(fiber, R, w), R)
    res_ok = all(not r for r in res)
    if not res_ok:
        msgs.append("some polynomial does not vanish on the parametrization")
    # Jacobian with respect to the primitive and dependent Y-coordinates
    unknowns = [fiber.primitive] + fiber.dependents
    jac_ok = len(unknowns) == len(system)
    if not jac_ok:
        msgs.append("system is not square in the dependent variables")
    else:
        D = DualRing(R, len(unknowns))
        ys = []
        for i in range(fiber.n):
            if i < fiber.primitive:
                ys.append(D.from_field(fiber.lifting_point[i]))
            elif i == fiber.primitive:
                ys.append(D.variable(R.gen(), 0))
            else:
                ys.append(D.variable(R.reduce(w.get(i, [])), i - fiber.primitive))
        xs = _to_x(F, fiber.forms, D, ys)
        out = eval_generic(prog, xs, D)
        J = [D.gradient(o) for o in out]
        det = ring_det(R, J)
        jac_ok = len(p_gcd(det, fiber.q, F)) == 1 if det else False
        if not jac_ok:
            msgs.append("Jacobian determinant is not a unit modulo q")
    return FiberReport(res_ok, sqf, jac_ok, fiber.degree, msgs)


def decode_point(fiber: LiftingFiber, root: Any, system: Sequence[Slp] | None = None) -> RationalPoint:
    """The fiber point whose primitive coordinate is ``root``."""
    F = fiber.field
    r = root.value if isinstance(root, FieldElement) else F.normalize(root)
    if p_eval(fiber.q, r, F) != F.zero:
        raise ValueError("not a root of the minimal polynomial")
    d = p_eval(p_deriv(fiber.q, F), r, F)
    if d == F.zero:
        raise RamifiedRoot("q' vanishes at the root")
    dinv = F.inv(d)
    ys = []
    for i in range(fiber.n):
        if i < fiber.primitive:
            ys.append(fiber.lifting_point[i])
        elif i == fiber.primitive:
            ys.append(r)
        else:
            ys.append(F.mul(p_eval(fiber.v.get(i, []), r, F), dinv))
    xs = fiber.forms.apply_inverse(ys)
    res = combine(list(system)).evaluate(xs) if system else []
    return RationalPoint(F, xs, res)


def curve_substitution(curve: GeometricSolutionCurve, center: Any, N: int) -> Substitution:
    """Y-coordinates of the curve with T = center + t, as a substitution."""
    F = curve.field
    fixed = {}
    for i in range(curve.primitive):
        b, d = curve.base[i], curve.direction[i]
        fixed[i] = [F.add(b, F.mul(center, d)), d]
    unknown = list(range(curve.primitive, curve.n))
    return Substitution.coordinates(F, curve.n, fixed, unknown)


def curve_residuals(curve: GeometricSolutionCurve, system_y: Slp, center: Any, N: int) -> list:
    """Residuals of a system given in Y-coordinates modulo (q, (T - center)^N)."""
    F = curve.field
    q = poly_rows_to_series_rows(curve.q.rows, center, F, N)
    v = [poly_rows_to_series_rows(curve.v[j].rows, center, F, N) for j in sorted(curve.v)]
    subst = curve_substitution(curve, center, N)
    return residuals(system_y, subst, F, N, q, v)


def monic_normalize(q: Sequence, v: dict, F: Field) -> tuple[list, dict]:
    lc = q[-1]
    if lc == F.one:
        return list(q), dict(v)
    inv = F.inv(lc)
    return p_monic(q, F), {j: [F.mul(c, inv) for c in vj] for j, vj in v.items()}
