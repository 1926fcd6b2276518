"""Independent ground truth by exhaustive search.

Nothing here touches the solver: only field arithmetic, dense univariate
helpers and straight-line program evaluation are used. The one exception to
brute force is :func:`eliminant_minimal_polynomial`, which asks sympy for a
lexicographic Groebner basis; it covers fibers whose points live in
extensions too large to enumerate.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import CountUnstable, TooLarge
from .field import Field, FieldEmbedding, extend_field
from .slp import LinearForms, Slp, combine, eval_generic, map_field
from .upoly import BivariatePoly, DensePoly, p_eval, p_mul, p_squarefree_part, p_trim

GUARD = 10**8


@dataclass
class SolutionSet:
    field: Field
    points: list

    @property
    def count(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        F = self.field
        return {"count": self.count, "points": [[F.to_json(c) for c in pt] for pt in self.points]}


def _check_guard(size: int, what: str, limit: int = GUARD) -> None:
    if size > limit:
        raise TooLarge(f"{what}: {size} candidates exceed the guard of {limit}")


def enumerate_solutions(system: Sequence[Slp], field: Field | None = None) -> SolutionSet:
    """Every point of field^n where all polynomials vanish."""
    prog = combine(list(system))
    F = field or prog.field
    if F != prog.field:
        prog = map_field(prog, F, FieldEmbedding(prog.field, F).embed)
    n = prog.n_vars
    _check_guard(F.cardinality**n, "enumeration")
    elems = sorted(F.elements(), key=F.sort_key)
    pts = []
    for x in itertools.product(elems, repeat=n):
        if all(v == F.zero for v in eval_generic(prog, list(x), F)):
            pts.append(tuple(x))
    return SolutionSet(F, pts)


def fiber_points(
    system: Sequence[Slp], forms: LinearForms, point: Sequence, field: Field, embedding: FieldEmbedding, limit: int = GUARD
) -> list:
    """X-coordinates of the points with Y_i = point_i (i < len(point)) over ``field``."""
    prog = map_field(combine(list(system)), field, embedding.embed)
    e = embedding.embed
    inv = [[e(c) for c in row] for row in forms.inverse]
    shift = [e(c) for c in forms.shift]
    n = forms.n
    k = len(point)
    fixed = [e(c) for c in point]
    _check_guard(field.cardinality ** (n - k), "fiber enumeration", limit)
    elems = list(field.elements())
    out = []
    F = field
    for u in itertools.product(elems, repeat=n - k):
        y = fixed + list(u)
        d = [F.sub(a, b) for a, b in zip(y, shift)]
        x = [F.dot(row, d) for row in inv]
        if all(v == F.zero for v in eval_generic(prog, x, F)):
            out.append(x)
    return out


def fiber_minimal_polynomial(
    system: Sequence[Slp],
    forms: LinearForms,
    point: Sequence,
    row: Sequence,
    shift: Any = 0,
    extension_degree: int = 1,
    stabilize: bool = False,
    limit: int = GUARD,
) -> DensePoly:
    """prod (Z - row.x - shift) over the fiber points in the degree-e extension.

    With ``stabilize`` the degree doubles until two consecutive counts agree,
    up to degree 8 (CountUnstable beyond).
    """
    F = forms.field
    e = extension_degree
    prev = None
    while True:
        big, emb = extend_field(F, e, random.Random(F.p * 101 + e))
        pts = fiber_points(system, forms, point, big, emb, limit)
        if not stabilize or (prev is not None and len(pts) == prev[0]):
            break
        prev = (len(pts), e)
        e *= 2
        if e > 8:
            raise CountUnstable("fiber count did not stabilise up to degree 8")
    if stabilize and prev is not None:
        e = prev[1]
        big, emb = extend_field(F, e, random.Random(F.p * 101 + e))
        pts = fiber_points(system, forms, point, big, emb, limit)
    r = [emb.embed(F.normalize(c)) for c in row]
    s = emb.embed(F.normalize(shift))
    acc = [big.one]
    for x in pts:
        val = big.add(big.dot(r, x), s)
        acc = p_mul(acc, [big.neg(val), big.one], big)
    return DensePoly(F, [emb.project(c) for c in acc], raw=True)


def fiber_cardinality(
    system: Sequence[Slp], forms: LinearForms, point: Sequence, extension_degree: int, limit: int = GUARD
) -> int:
    F = forms.field
    big, emb = extend_field(F, extension_degree, random.Random(F.p * 101 + extension_degree))
    return len(fiber_points(system, forms, point, big, emb, limit))


def count_curve_points(h: BivariatePoly, field: Field | None = None) -> int:
    """#{(t, z) : h(t, z) = 0} by a double loop."""
    F = field or h.field
    _check_guard(F.cardinality**2, "curve point count")
    elems = list(F.elements())
    total = 0
    for t in elems:
        row = [p_eval(r, t, F) for r in h.rows]
        for z in elems:
            if p_eval(row, z, F) == F.zero:
                total += 1
    return total


def brute_force_roots(f: Sequence, F: Field) -> set:
    return {a for a in F.elements() if p_eval(f, a, F) == F.zero}


def sylvester_resultant(f: Sequence, g: Sequence, F: Field) -> Any:
    """Determinant of the Sylvester matrix by Gaussian elimination."""
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return F.zero
    size = m + n
    if size == 0:
        return F.one
    rows = []
    fr, gr = list(reversed(f)), list(reversed(g))
    for i in range(n):
        rows.append([F.zero] * i + fr + [F.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([F.zero] * i + gr + [F.zero] * (size - n - 1 - i))
    det = F.one
    for c in range(size):
        piv = next((r for r in range(c, size) if rows[r][c] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = F.neg(det)
        det = F.mul(det, rows[c][c])
        inv = F.inv(rows[c][c])
        for r in range(c + 1, size):
            if rows[r][c] != F.zero:
                fac = F.mul(rows[r][c], inv)
                rows[r] = [F.sub(a, F.mul(fac, b)) for a, b in zip(rows[r], rows[c])]
    return det


# ---------------------------------------------------------------------------
# elimination through sympy (prime fields only)
# ---------------------------------------------------------------------------


class _SympyRing:
    def __init__(self) -> None:
        import sympy

        self.sympy = sympy
        self.zero = sympy.Integer(0)
        self.one = sympy.Integer(1)

    def from_field(self, c: int):
        return self.sympy.Integer(c)

    def from_int(self, c: int):
        return self.sympy.Integer(c)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return self.sympy.expand(a * b)

    def is_zero(self, a) -> bool:
        return a == 0


def eliminant_minimal_polynomial(
    system: Sequence[Slp], forms: LinearForms, point: Sequence, row: Sequence, shift: Any = 0
) -> tuple[DensePoly, int | None]:
    """Squarefree eliminant of row.x + shift on the fiber, and the fiber size.

    The size is certified only when the radical ideal is in shape position
    for the eliminated form (every unknown a polynomial in Z); otherwise it is
    None.
    """
    import sympy

    F = forms.field
    if F.k != 1:
        raise ValueError("the elimination oracle works over prime fields")
    p = F.p
    n, k = forms.n, len(point)
    us = list(sympy.symbols(f"u0:{n - k}")) if n > k else []
    z = sympy.Symbol("z")
    R = _SympyRing()
    y = [sympy.Integer(c) for c in point] + us
    d = [a - int(g) for a, g in zip(y, forms.shift)]
    x = [sympy.expand(sum(int(c) * t for c, t in zip(r, d))) for r in forms.inverse]
    prog = combine(list(system))
    eqs = [sympy.expand(e) for e in eval_generic(prog, x, R)]
    ell = sympy.expand(sum(int(c) * t for c, t in zip(row, x)) + int(shift))
    gens = us + [z]
    G = sympy.groebner(eqs + [z - ell], *gens, modulus=p, order="lex")
    uni = [g for g in G.exprs if g.free_symbols <= {z}]
    if not uni:
        raise TooLarge("the fiber is not zero-dimensional")
    h = sympy.Poly(uni[-1], z, modulus=p)
    coeffs = [int(c) % p for c in reversed(h.all_coeffs())]
    sq = p_squarefree_part(p_trim(coeffs, F), F) if len(coeffs) > 1 else p_trim(coeffs, F)
    count = None
    if len(sq) > 1:
        hs = sum(int(c) * z**i for i, c in enumerate(sq))
        J = sympy.groebner(list(G.exprs) + [hs], *gens, modulus=p, order="lex")
        shape = len(J.exprs) == len(us) + 1 and all(
            (J.exprs[i] - us[i]).free_symbols <= {z} for i in range(len(us))
        )
        if shape:
            count = len(sq) - 1
    elif len(sq) == 1:
        count = 0
    return DensePoly(F, sq, raw=True), count
