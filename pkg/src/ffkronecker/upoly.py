"""Dense univariate polynomials over a field descriptor.

Coefficients are raw field values stored low-to-high with no trailing zeros;
the zero polynomial has an empty coefficient list and degree ``-inf``.
Most algorithms are written once against the raw-list helpers prefixed with
``p_`` so that the ring adapters in :mod:`ffkronecker.rings` can reuse them
without allocating ``DensePoly`` wrappers.
"""

from __future__ import annotations

import random
from typing import Any, Iterable, Sequence

from .errors import BudgetExhausted, DivisionByZero, DuplicateAbscissa, NotBaseField
from .field import Field, FieldElement

DEG_ZERO = float("-inf")
SPLIT_BUDGET = 32


# ---------------------------------------------------------------------------
# raw coefficient-list layer
# ---------------------------------------------------------------------------


def p_trim(a: list, F: Field) -> list:
    z = F.zero
    while a and a[-1] == z:
        a.pop()
    return a


def p_add(a: Sequence, b: Sequence, F: Field) -> list:
    if len(a) < len(b):
        a, b = b, a
    if F.k == 1:
        p = F.p
        out = [(x + y) % p for x, y in zip(a, b)]
    else:
        out = [F.add(x, y) for x, y in zip(a, b)]
    out.extend(a[len(b) :])
    if len(a) == len(b):
        p_trim(out, F)
    return out


def p_sub(a: Sequence, b: Sequence, F: Field) -> list:
    la, lb = len(a), len(b)
    if F.k == 1:
        p = F.p
        out = [(x - y) % p for x, y in zip(a, b)]
        if la > lb:
            out.extend(a[lb:])
        else:
            out.extend(-y % p for y in b[la:])
    else:
        out = [F.sub(x, y) for x, y in zip(a, b)]
        if la > lb:
            out.extend(a[lb:])
        else:
            out.extend(F.neg(y) for y in b[la:])
    if la == lb:
        p_trim(out, F)
    return out


def p_neg(a: Sequence, F: Field) -> list:
    return [F.neg(x) for x in a]


def p_scale(a: Sequence, c: Any, F: Field) -> list:
    if c == F.zero:
        return []
    if F.k == 1:
        p = F.p
        return [x * c % p for x in a]
    return [F.mul(x, c) for x in a]


def p_mul(a: Sequence, b: Sequence, F: Field) -> list:
    if not a or not b:
        return []
    return F.poly_mul(a, b)


def p_divmod(a: Sequence, b: Sequence, F: Field) -> tuple[list, list]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return [], list(a)
    if db == 0:
        c = F.inv(b[0])
        return p_scale(a, c, F), []
    inv = F.inv(b[-1])
    r = list(a)
    nq = len(a) - db
    q = [F.zero] * nq
    if F.k == 1:
        p = F.p
        bl = [(-x) % p for x in b[:db]]
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i] % p
            if not c:
                continue
            c = c * inv % p
            s = i - db
            q[s] = c
            for j, bj in enumerate(bl):
                r[s + j] += c * bj
        out = [x % p for x in r[:db]]
    else:
        mul, sub = F.mul, F.sub
        z = F.zero
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i]
            if c == z:
                continue
            c = mul(c, inv)
            s = i - db
            q[s] = c
            for j in range(db):
                bj = b[j]
                if bj != z:
                    r[s + j] = sub(r[s + j], mul(c, bj))
        out = r[:db]
    return q, p_trim(out, F)


def p_mod(a: Sequence, b: Sequence, F: Field) -> list:
    if len(a) < len(b):
        return list(a)
    return p_divmod(a, b, F)[1]


def p_monic(a: Sequence, F: Field) -> list:
    if not a:
        return []
    if a[-1] == F.one:
        return list(a)
    return p_scale(a, F.inv(a[-1]), F)


def p_eval(a: Sequence, x: Any, F: Field) -> Any:
    if F.k == 1:
        p = F.p
        acc = 0
        for c in reversed(a):
            acc = (acc * x + c) % p
        return acc
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def p_deriv(a: Sequence, F: Field) -> list:
    out = [F.mul(F.from_int(i), a[i]) for i in range(1, len(a))]
    return p_trim(out, F)


def p_gcd(a: Sequence, b: Sequence, F: Field) -> list:
    a, b = list(a), list(b)
    while b:
        a, b = b, p_mod(a, b, F)
    return p_monic(a, F)


def p_xgcd(a: Sequence, b: Sequence, F: Field) -> tuple[list, list, list]:
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = p_divmod(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(s0, p_mul(q, s1, F), F)
        t0, t1 = t1, p_sub(t0, p_mul(q, t1, F), F)
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return p_scale(r0, c, F), p_scale(s0, c, F), p_scale(t0, c, F)


def p_invmod(a: Sequence, m: Sequence, F: Field) -> list:
    g, s, _ = p_xgcd(p_mod(a, m, F), m, F)
    if len(g) != 1:
        raise DivisionByZero("not invertible modulo m")
    return p_mod(s, m, F)


def p_mulmod(a: Sequence, b: Sequence, m: Sequence, F: Field) -> list:
    return p_mod(p_mul(a, b, F), m, F)


def p_powmod(a: Sequence, e: int, m: Sequence, F: Field) -> list:
    result = p_mod([F.one], m, F)
    base = p_mod(a, m, F)
    while e:
        if e & 1:
            result = p_mulmod(result, base, m, F)
        e >>= 1
        if e:
            base = p_mulmod(base, base, m, F)
    return result


def p_compose(a: Sequence, b: Sequence, F: Field, m: Sequence | None = None) -> list:
    """a(b), optionally reduced modulo m after each step."""
    acc: list = []
    for c in reversed(a):
        acc = p_mul(acc, b, F)
        acc = p_add(acc, [c], F) if c != F.zero or acc else acc
        if m is not None:
            acc = p_mod(acc, m, F)
    return p_trim(acc, F)


def p_taylor_shift(a: Sequence, c: Any, F: Field) -> list:
    """Coefficients of a(X + c)."""
    out = list(a)
    n = len(out)
    if c == F.zero:
        return out
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] = F.add(out[j], F.mul(c, out[j + 1]))
    return out


def p_resultant(a: Sequence, b: Sequence, F: Field) -> Any:
    """Resultant through the Euclidean remainder sequence."""
    if not a or not b:
        return F.zero
    f, g = list(a), list(b)
    acc = F.one
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return F.mul(acc, F.pow(g[0], m))
        if m == 0:
            return F.mul(acc, F.pow(f[0], n))
        r = p_mod(f, g, F)
        if not r:
            return F.zero
        k = len(r) - 1
        if (m * n) % 2:
            acc = F.neg(acc)
        acc = F.mul(acc, F.pow(g[-1], m - k))
        f, g = g, r


def p_pth_root(a: Sequence, F: Field) -> list:
    """The polynomial b with b^p = a, for a with a' = 0."""
    p = F.p
    return [F.pth_root(a[i]) for i in range(0, len(a), p)]


def p_squarefree_decomposition(a: Sequence, F: Field) -> list[tuple[list, int]]:
    """Pairs (g_i, m_i) with a = lc * prod g_i^m_i, g_i squarefree and coprime."""
    a = p_monic(a, F)
    if len(a) <= 1:
        return []
    out: list[tuple[list, int]] = []
    d = p_deriv(a, F)
    if not d:
        for g, m in p_squarefree_decomposition(p_pth_root(a, F), F):
            out.append((g, m * F.p))
        return out
    c = p_gcd(a, d, F)
    w = p_divmod(a, c, F)[0]
    i = 1
    while len(w) > 1:
        y = p_gcd(w, c, F)
        z = p_divmod(w, y, F)[0]
        if len(z) > 1:
            out.append((p_monic(z, F), i))
        i += 1
        w = y
        c = p_divmod(c, y, F)[0]
    if len(c) > 1:
        for g, m in p_squarefree_decomposition(p_pth_root(c, F), F):
            out.append((g, m * F.p))
    return out


def p_squarefree_part(a: Sequence, F: Field) -> list:
    if not a:
        raise DivisionByZero("squarefree part of zero")
    out = [F.one]
    for g, _ in p_squarefree_decomposition(a, F):
        out = p_mul(out, g, F)
    return out


def p_is_squarefree(a: Sequence, F: Field) -> bool:
    if len(a) <= 1:
        return bool(a)
    d = p_deriv(a, F)
    if not d:
        return False
    return len(p_gcd(a, d, F)) == 1


# ---------------------------------------------------------------------------
# root finding and factorization
# ---------------------------------------------------------------------------


def _random_poly(deg_bound: int, F: Field, rng: random.Random) -> list:
    return p_trim([F.random(rng) for _ in range(deg_bound)], F)


def _trace_poly(a: Sequence, m: Sequence, F: Field, steps: int) -> list:
    """sum_{i < steps} a^(2^i) mod m (characteristic two)."""
    acc = p_mod(a, m, F)
    cur = acc
    for _ in range(steps - 1):
        cur = p_mulmod(cur, cur, m, F)
        acc = p_add(acc, cur, F)
    return acc


def p_split_equal_degree(g: Sequence, d: int, F: Field, rng: random.Random, Q: int | None = None) -> list[list]:
    """Split a monic squarefree g whose irreducible factors all have degree d.

    Q is the size of the field the factors are irreducible over; it defaults
    to the cardinality of F.
    """
    Q = F.cardinality if Q is None else Q
    g = p_monic(g, F)
    if len(g) - 1 == d:
        return [g]
    if len(g) <= 1:
        return []
    for _ in range(SPLIT_BUDGET):
        a = _random_poly(len(g) - 1, F, rng)
        if len(a) <= 1:
            continue
        if Q % 2:
            b = p_powmod(a, (Q**d - 1) // 2, g, F)
            b = p_sub(b, [F.one], F)
        else:
            b = _trace_poly(a, g, F, d * (Q.bit_length() - 1))
        h = p_gcd(g, b, F)
        if 1 < len(h) < len(g):
            rest = p_divmod(g, h, F)[0]
            return p_split_equal_degree(h, d, F, rng, Q) + p_split_equal_degree(rest, d, F, rng, Q)
    raise BudgetExhausted(f"equal-degree splitting failed {SPLIT_BUDGET} times")


def p_distinct_degree(a: Sequence, F: Field, Q: int | None = None) -> list[tuple[list, int]]:
    """Distinct-degree factorization of a monic squarefree polynomial."""
    Q = F.cardinality if Q is None else Q
    f = p_monic(a, F)
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = p_powmod(h, Q, f, F)
        g = p_gcd(f, p_sub(h, x, F), F)
        if len(g) > 1:
            out.append((g, d))
            f = p_divmod(f, g, F)[0]
            h = p_mod(h, f, F)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def p_roots(a: Sequence, F: Field, rng: random.Random) -> list:
    """Distinct roots of a in F, sorted by the field's canonical key."""
    a = p_monic(a, F)
    if len(a) <= 1:
        return []
    Q = F.cardinality
    x = [F.zero, F.one]
    if len(a) - 1 == 1:
        g = a
    else:
        xq = p_powmod(x, Q, a, F)
        g = p_gcd(a, p_sub(xq, x, F), F)
    roots = []
    for lin in p_split_equal_degree(g, 1, F, rng, Q):
        roots.append(F.neg(lin[0]))
    return sorted(roots, key=F.sort_key)


def _default_rng(coeffs: Sequence, F: Field) -> random.Random:
    return random.Random(hash((F.p, F.k, len(coeffs))) & 0xFFFFFFFF)


# ---------------------------------------------------------------------------
# DensePoly
# ---------------------------------------------------------------------------


class DensePoly:
    """Polynomial sum c_i X^i with coefficients in ``field``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = (), *, raw: bool = False):
        self.field = field
        if raw:
            c = list(coeffs)
        else:
            c = [field.normalize(x) for x in coeffs]
        self.coeffs = p_trim(c, field)

    # construction helpers
    @classmethod
    def x(cls, field: Field) -> "DensePoly":
        return cls(field, [field.zero, field.one], raw=True)

    @classmethod
    def constant(cls, field: Field, c: Any) -> "DensePoly":
        return cls(field, [field.normalize(c)], raw=True)

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable) -> "DensePoly":
        out = [field.one]
        for r in roots:
            out = p_mul(out, [field.neg(field.normalize(r)), field.one], field)
        return cls(field, out, raw=True)

    def _wrap(self, c: list) -> "DensePoly":
        return DensePoly(self.field, c, raw=True)

    def _coerce(self, other: Any) -> list:
        if isinstance(other, DensePoly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other.coeffs
        c = self.field.normalize(other)
        return [] if c == self.field.zero else [c]

    # basic properties
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def deg(self) -> int:
        """Degree with -1 for the zero polynomial (handy for arithmetic)."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Any:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == [self.field.one]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Any:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def monic(self) -> "DensePoly":
        return self._wrap(p_monic(self.coeffs, self.field))

    def derivative(self) -> "DensePoly":
        return self._wrap(p_deriv(self.coeffs, self.field))

    def __call__(self, x: Any) -> Any:
        return p_eval(self.coeffs, self.field.normalize(x), self.field)

    def evaluate(self, x: Any) -> FieldElement:
        return FieldElement(self.field, self(x))

    # arithmetic
    def __add__(self, other):
        return self._wrap(p_add(self.coeffs, self._coerce(other), self.field))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(p_sub(self.coeffs, self._coerce(other), self.field))

    def __rsub__(self, other):
        return self._wrap(p_sub(self._coerce(other), self.coeffs, self.field))

    def __neg__(self):
        return self._wrap(p_neg(self.coeffs, self.field))

    def __mul__(self, other):
        if isinstance(other, DensePoly):
            return self._wrap(p_mul(self.coeffs, self._coerce(other), self.field))
        return self._wrap(p_scale(self.coeffs, self.field.normalize(other), self.field))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = [self.field.one]
        base = self.coeffs
        while e:
            if e & 1:
                result = p_mul(result, base, self.field)
            e >>= 1
            if e:
                base = p_mul(base, base, self.field)
        return self._wrap(result)

    def __divmod__(self, other):
        q, r = p_divmod(self.coeffs, self._coerce(other), self.field)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return self._wrap(p_mod(self.coeffs, self._coerce(other), self.field))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DensePoly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, tuple, FieldElement)):
            return self.coeffs == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, tuple(self.coeffs)))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        body = ",".join(_coef_text(self.field, c) for c in self.coeffs)
        return f"poly[{body}] over {self.field!r}"

    def sort_key(self) -> tuple:
        return (len(self.coeffs), tuple(self.field.sort_key(c) for c in reversed(self.coeffs)))

    # further operations
    def compose(self, other: "DensePoly", modulus: "DensePoly | None" = None) -> "DensePoly":
        m = modulus.coeffs if modulus is not None else None
        return self._wrap(p_compose(self.coeffs, other.coeffs, self.field, m))

    def taylor_shift(self, c: Any) -> "DensePoly":
        return self._wrap(p_trim(p_taylor_shift(self.coeffs, self.field.normalize(c), self.field), self.field))

    def powmod(self, e: int, modulus: "DensePoly") -> "DensePoly":
        return self._wrap(p_powmod(self.coeffs, e, modulus.coeffs, self.field))

    def invmod(self, modulus: "DensePoly") -> "DensePoly":
        return self._wrap(p_invmod(self.coeffs, modulus.coeffs, self.field))

    def is_squarefree(self) -> bool:
        return p_is_squarefree(self.coeffs, self.field)

    def map_coeffs(self, fn, field: Field | None = None) -> "DensePoly":
        F = field or self.field
        return DensePoly(F, [fn(c) for c in self.coeffs], raw=True)

    def to_json(self) -> list:
        return [self.field.to_json(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, field: Field, obj: Sequence) -> "DensePoly":
        return cls(field, [field.from_json(c) for c in obj], raw=True)


def _coef_text(F: Field, c: Any) -> str:
    j = F.to_json(c)
    if isinstance(j, list):
        return "(" + ",".join(j) + ")"
    return j


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def div_rem(f: DensePoly, g: DensePoly) -> tuple[DensePoly, DensePoly]:
    """Quotient and remainder; raises DivisionByZero for g = 0."""
    return divmod(f, g)


def gcd(f: DensePoly, g: DensePoly) -> DensePoly:
    return f._wrap(p_gcd(f.coeffs, g.coeffs, f.field))


def extended_gcd(f: DensePoly, g: DensePoly) -> tuple[DensePoly, DensePoly, DensePoly]:
    """Monic gcd and Bezout cofactors s, t with s*f + t*g = gcd."""
    if f.is_zero() and g.is_zero():
        raise DivisionByZero("gcd of two zero polynomials")
    d, s, t = p_xgcd(f.coeffs, g.coeffs, f.field)
    return f._wrap(d), f._wrap(s), f._wrap(t)


def resultant(f: DensePoly, g: DensePoly) -> FieldElement:
    return FieldElement(f.field, p_resultant(f.coeffs, g.coeffs, f.field))


def squarefree_part(f: DensePoly) -> DensePoly:
    """Monic product of the distinct irreducible factors of f."""
    return f._wrap(p_squarefree_part(f.coeffs, f.field))


def squarefree_decomposition(f: DensePoly) -> list[tuple[DensePoly, int]]:
    return [(f._wrap(g), m) for g, m in p_squarefree_decomposition(f.coeffs, f.field)]


def roots_in_field(
    f: DensePoly,
    target: Field | None = None,
    rng: random.Random | None = None,
    embedding=None,
) -> set[FieldElement]:
    """The roots of f lying in ``target``.

    ``target`` is the coefficient field (the default) or a subfield of it; a
    subfield other than the prime field needs an explicit ``embedding``.
    Roots are returned as elements of ``target``.
    """
    F = f.field
    target = target or F
    if f.is_zero():
        raise DivisionByZero("roots of the zero polynomial")
    rng = rng or _default_rng(f.coeffs, F)
    if target == F:
        return {FieldElement(F, r) for r in p_roots(f.coeffs, F, rng)}
    if embedding is None:
        from .field import FieldEmbedding

        embedding = FieldEmbedding(target, F)
    Q = target.cardinality
    a = p_monic(f.coeffs, F)
    if len(a) <= 1:
        return set()
    x = [F.zero, F.one]
    xq = p_powmod(x, Q, a, F)
    g = p_gcd(a, p_sub(xq, x, F), F)
    try:
        g_small = [embedding.project(c) for c in g]
    except NotBaseField as exc:  # pragma: no cover - impossible for a genuine subfield
        raise NotBaseField("roots polynomial not defined over the subfield") from exc
    return {FieldElement(target, r) for r in p_roots(g_small, target, rng)}


def factor(f: DensePoly, rng: random.Random | None = None) -> list[tuple[DensePoly, int]]:
    """Irreducible monic factors with multiplicities, in a canonical order."""
    F = f.field
    if f.is_zero():
        raise DivisionByZero("factorization of zero")
    rng = rng or _default_rng(f.coeffs, F)
    out = []
    for g, m in p_squarefree_decomposition(f.coeffs, F):
        for part, d in p_distinct_degree(g, F):
            for irr in p_split_equal_degree(part, d, F, rng):
                out.append((DensePoly(F, irr, raw=True), m))
    out.sort(key=lambda fm: (fm[0].sort_key(), fm[1]))
    return out


def interpolate(points: Sequence[tuple[Any, Any]], field: Field | None = None) -> DensePoly:
    """Newton interpolation through pairwise distinct abscissae."""
    if not points:
        raise ValueError("interpolation needs at least one point")
    F = field
    if F is None:
        x0 = points[0][0]
        if not isinstance(x0, FieldElement):
            raise ValueError("pass the field when points are raw values")
        F = x0.field
    xs = [F.normalize(x) for x, _ in points]
    ys = [F.normalize(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("abscissae must be pairwise distinct")
    return DensePoly(F, p_interpolate(xs, ys, F), raw=True)


def p_interpolate(xs: Sequence, ys: Sequence, F: Field) -> list:
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            num = F.sub(coef[i], coef[i - 1])
            den = F.sub(xs[i], xs[i - j])
            if den == F.zero:
                raise DuplicateAbscissa("abscissae must be pairwise distinct")
            coef[i] = F.div(num, den)
    out: list = []
    for i in range(n - 1, -1, -1):
        out = p_mul(out, [F.neg(xs[i]), F.one], F) if out else []
        out = p_add(out, [coef[i]], F)
    return p_trim(out, F)


def rational_reconstruction(a: Sequence, m: Sequence, num_deg: int, den_deg: int, F: Field):
    """(n, d) with d*a = n mod m, deg n <= num_deg, deg d <= den_deg, d monic.

    Returns None when no such pair with gcd(d, m) = 1 exists.
    """
    r0, r1 = list(m), p_mod(a, m, F)
    t0, t1 = [], [F.one]
    while r1 and len(r1) - 1 > num_deg:
        q, r = p_divmod(r0, r1, F)
        r0, r1 = r1, r
        t0, t1 = t1, p_sub(t0, p_mul(q, t1, F), F)
    if not t1 or len(t1) - 1 > den_deg:
        return None
    if len(p_gcd(t1, m, F)) != 1:
        return None
    c = F.inv(t1[-1])
    return p_scale(r1, c, F), p_scale(t1, c, F)


# ---------------------------------------------------------------------------
# bivariate polynomials
# ---------------------------------------------------------------------------


class BivariatePoly:
    """Polynomial in (free, primitive) stored by powers of the primitive variable.

    ``rows[i]`` is the coefficient of primitive^i, a raw coefficient list in
    the free variable.
    """

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows: Iterable[Sequence]):
        self.field = field
        rs = [p_trim(list(r), field) for r in rows]
        while rs and not rs[-1]:
            rs.pop()
        self.rows = rs

    @classmethod
    def from_dense_rows(cls, field: Field, rows: Iterable[DensePoly]) -> "BivariatePoly":
        return cls(field, [r.coeffs for r in rows])

    def degree_primitive(self) -> int:
        return len(self.rows) - 1

    def degree_free(self) -> int:
        return max((len(r) - 1 for r in self.rows), default=-1)

    def total_degree(self) -> int:
        return max((i + len(r) - 1 for i, r in enumerate(self.rows) if r), default=-1)

    def is_zero(self) -> bool:
        return not self.rows

    def specialize_free(self, value: Any) -> DensePoly:
        F = self.field
        return DensePoly(F, [p_eval(r, value, F) for r in self.rows], raw=True)

    def specialize_primitive(self, value: Any) -> DensePoly:
        F = self.field
        acc: list = []
        for r in reversed(self.rows):
            acc = p_add(p_scale(acc, value, F), r, F)
        return DensePoly(F, acc, raw=True)

    def __call__(self, free: Any, prim: Any) -> Any:
        return self.specialize_free(free)(prim)

    def derivative_primitive(self) -> "BivariatePoly":
        F = self.field
        return BivariatePoly(F, [p_scale(self.rows[i], F.from_int(i), F) for i in range(1, len(self.rows))])

    def row_poly(self, i: int) -> DensePoly:
        return DensePoly(self.field, self.rows[i] if i < len(self.rows) else [], raw=True)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BivariatePoly) and self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.field, tuple(tuple(r) for r in self.rows)))

    def __repr__(self) -> str:
        return "bipoly[" + ";".join(",".join(_coef_text(self.field, c) for c in r) for r in self.rows) + "]"

    def to_json(self) -> list:
        F = self.field
        return [[F.to_json(c) for c in r] for r in self.rows]

    @classmethod
    def from_json(cls, field: Field, obj: Sequence) -> "BivariatePoly":
        return cls(field, [[field.from_json(c) for c in r] for r in obj])
