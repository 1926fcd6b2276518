"""Ring adapters for generic straight-line program evaluation.

An adapter is any object exposing ``zero``, ``one``, ``from_int``,
``from_field``, ``add``, ``sub``, ``neg``, ``mul`` and ``is_zero`` on its own
element representation. Field descriptors already qualify. The adapters here
cover polynomial rings, quotient rings K[Y]/(m), truncated series, the
bivariate quotient (K[t]/t^N)[Y]/(m) used by every Newton lift, and dual
numbers over any of them for Jacobians.
"""

from __future__ import annotations

from typing import Any, Sequence

from .errors import DivisionByZero, NotAUnit
from .field import Field
from .series import s_add, s_inv, s_mul, s_sub, s_trunc
from .upoly import p_add, p_invmod, p_mod, p_monic, p_mul, p_neg, p_scale, p_sub, p_trim


class PolyRing:
    """K[Y] on raw coefficient lists."""

    def __init__(self, F: Field):
        self.F = F
        self.zero: list = []
        self.one = [F.one]

    def from_int(self, n: int) -> list:
        c = self.F.from_int(n)
        return [] if c == self.F.zero else [c]

    def from_field(self, c: Any) -> list:
        return [] if c == self.F.zero else [c]

    def gen(self) -> list:
        return [self.F.zero, self.F.one]

    def add(self, a, b):
        return p_add(a, b, self.F)

    def sub(self, a, b):
        return p_sub(a, b, self.F)

    def neg(self, a):
        return p_neg(a, self.F)

    def mul(self, a, b):
        return p_mul(a, b, self.F)

    def is_zero(self, a) -> bool:
        return not a


class QuotientRing(PolyRing):
    """K[Y]/(m) for a nonconstant m, elements reduced below deg m."""

    def __init__(self, F: Field, m: Sequence):
        super().__init__(F)
        self.m = p_monic(list(m), F)
        if len(self.m) < 2:
            raise DivisionByZero("quotient by a constant")
        self.one = p_mod([F.one], self.m, F)

    def reduce(self, a):
        return p_mod(a, self.m, self.F)

    def gen(self):
        return self.reduce([self.F.zero, self.F.one])

    def mul(self, a, b):
        return p_mod(p_mul(a, b, self.F), self.m, self.F)

    def inv(self, a):
        try:
            return p_invmod(a, self.m, self.F)
        except DivisionByZero as exc:
            raise NotAUnit("element is a zero divisor modulo m") from exc

    def scale(self, a, c):
        return p_scale(a, c, self.F)


class SeriesRing:
    """K[[t]]/(t^N) on raw coefficient lists."""

    def __init__(self, F: Field, N: int):
        self.F = F
        self.N = N
        self.zero: list = []
        self.one = [F.one]

    def from_int(self, n: int) -> list:
        c = self.F.from_int(n)
        return [] if c == self.F.zero else [c]

    def from_field(self, c: Any) -> list:
        return [] if c == self.F.zero else [c]

    def from_series(self, s: Sequence) -> list:
        return s_trunc(s, self.N, self.F)

    def add(self, a, b):
        return s_add(a, b, self.F)

    def sub(self, a, b):
        return s_sub(a, b, self.F)

    def neg(self, a):
        return p_neg(a, self.F)

    def mul(self, a, b):
        return s_mul(a, b, self.N, self.F)

    def inv(self, a):
        return s_inv(a, self.N, self.F)

    def is_zero(self, a) -> bool:
        return not a


# ---------------------------------------------------------------------------
# bivariate kernels: lists (by powers of Y) of raw series (by powers of t)
# ---------------------------------------------------------------------------


def b_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def b_add(a: Sequence, b: Sequence, F: Field) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = [s_add(x, y, F) for x, y in zip(a, b)]
    out.extend(list(x) for x in a[len(b) :])
    return b_trim(out)


def b_sub(a: Sequence, b: Sequence, F: Field) -> list:
    out = [s_sub(x, y, F) for x, y in zip(a, b)]
    if len(a) > len(b):
        out.extend(list(x) for x in a[len(b) :])
    else:
        out.extend(p_neg(y, F) for y in b[len(a) :])
    return b_trim(out)


def b_mul(a: Sequence, b: Sequence, N: int, F: Field, rows: int | None = None) -> list:
    """Product truncated at t^N (and to the first ``rows`` powers of Y)."""
    if not a or not b:
        return []
    if rows is not None:
        a = a[:rows]
        b = b[:rows]
    W = 2 * N - 1
    z = F.zero
    fa: list = []
    for r in a:
        r = r[:N]
        fa.extend(r)
        fa.extend([z] * (W - len(r)))
    fb: list = []
    for r in b:
        r = r[:N]
        fb.extend(r)
        fb.extend([z] * (W - len(r)))
    prod = F.poly_mul(fa, fb)
    nrows = len(a) + len(b) - 1
    if rows is not None:
        nrows = min(nrows, rows)
    out = []
    for i in range(nrows):
        row = prod[i * W : i * W + N]
        out.append(p_trim(row, F))
    return b_trim(out)


def b_scale_series(a: Sequence, s: Sequence, N: int, F: Field) -> list:
    if not s:
        return []
    return b_trim([s_mul(r, s, N, F) for r in a])


def b_truncate(a: Sequence, N: int, F: Field) -> list:
    return b_trim([s_trunc(r, N, F) for r in a])


class SeriesQuotientRing:
    """(K[t]/t^N)[Y]/(m) with m monic in Y.

    Reduction modulo m uses a cached inverse of the reversal of m, so that a
    product costs three packed bivariate multiplications.
    """

    def __init__(self, F: Field, N: int, m: Sequence):
        self.F = F
        self.N = N
        m = b_truncate([list(r) for r in m], N, F)
        if len(m) < 2 or m[-1] != [F.one]:
            raise ValueError("modulus must be monic of positive degree in Y")
        self.m = m
        self.d = len(m) - 1
        self.zero: list = []
        self.one = [[F.one]]
        self._rev_inv: list | None = None
        self._rev_len = 0

    # constructors
    def from_int(self, n: int) -> list:
        c = self.F.from_int(n)
        return [] if c == self.F.zero else [[c]]

    def from_field(self, c: Any) -> list:
        return [] if c == self.F.zero else [[c]]

    def from_series(self, s: Sequence) -> list:
        s = s_trunc(s, self.N, self.F)
        return [s] if s else []

    def gen(self) -> list:
        return self.reduce([[], [self.F.one]])

    def from_poly(self, a: Sequence) -> list:
        """Embed a K[Y] polynomial (constant in t)."""
        return self.reduce([[c] if c != self.F.zero else [] for c in a])

    # arithmetic
    def add(self, a, b):
        return b_add(a, b, self.F)

    def sub(self, a, b):
        return b_sub(a, b, self.F)

    def neg(self, a):
        return [p_neg(r, self.F) for r in a]

    def mul(self, a, b):
        if not a or not b:
            return []
        if len(a) == 1 and len(b) == 1:
            s = s_mul(a[0], b[0], self.N, self.F)
            return [s] if s else []
        if len(a) == 1:
            return b_scale_series(b, a[0], self.N, self.F)
        if len(b) == 1:
            return b_scale_series(a, b[0], self.N, self.F)
        return self.reduce(b_mul(a, b, self.N, self.F))

    def scale_series(self, a, s):
        return b_scale_series(a, s, self.N, self.F)

    def is_zero(self, a) -> bool:
        return not a

    def _reversal_inverse(self, L: int) -> list:
        """Inverse of Y^d m(1/Y) modulo Y^L."""
        if self._rev_inv is None or self._rev_len < L:
            F, N = self.F, self.N
            rev = [list(r) for r in reversed(self.m)]
            L = max(L, self.d - 1, 1)
            b = [[F.one]]
            prec = 1
            two = [[F.from_int(2)]]
            while prec < L:
                prec = min(2 * prec, L)
                e = b_mul(rev, b, N, F, rows=prec)
                b = b_mul(b, b_sub(two, e, F), N, F, rows=prec)
            self._rev_inv = b
            self._rev_len = L
        return self._rev_inv

    def reduce(self, a):
        a = b_trim([list(r) for r in a])
        d = self.d
        if len(a) <= d:
            return a
        F, N = self.F, self.N
        da = len(a) - 1
        L = da - d + 1
        rev_a = [a[da - i] for i in range(L)]
        q_rev = b_mul(rev_a, self._reversal_inverse(L), N, F, rows=L)
        q_rev = q_rev + [[]] * (L - len(q_rev))
        q = b_trim(list(reversed(q_rev)))
        qm = b_mul(q, self.m, N, F, rows=d)
        return b_sub(a[:d], qm, F)

    def derivative(self, a):
        F = self.F
        return b_trim([p_scale(a[i], F.from_int(i), F) for i in range(1, len(a))])

    def with_precision(self, N: int) -> "SeriesQuotientRing":
        return SeriesQuotientRing(self.F, N, self.m)

    def truncate(self, a, N: int):
        return b_truncate(a, N, self.F)

    def at_zero(self, a) -> list:
        """The t = 0 specialization as a K[Y] coefficient list."""
        F = self.F
        return p_trim([r[0] if r else F.zero for r in a], F)

    def inv(self, a):
        """Inverse by Newton iteration from the inverse at t = 0."""
        F, N = self.F, self.N
        m0 = self.at_zero(self.m)
        a0 = self.at_zero(a)
        try:
            b0 = p_invmod(a0, m0, F)
        except DivisionByZero as exc:
            raise NotAUnit("element is not a unit modulo (t, m)") from exc
        b = [[c] if c != F.zero else [] for c in b0]
        b = b_trim(b)
        prec = 1
        two = [[F.from_int(2)]]
        while prec < N:
            prec = min(2 * prec, N)
            R = self.with_precision(prec)
            e = R.mul(R.truncate(a, prec), b)
            b = R.mul(b, R.sub(two, e))
        return b


class DualRing:
    """First-order forward mode over a base ring: pairs (value, gradient).

    Gradients are lists of length ``m`` where ``None`` stands for zero.
    """

    def __init__(self, base, m: int):
        self.base = base
        self.m = m
        self.zero = (base.zero, [None] * m)
        self.one = (base.one, [None] * m)

    def const(self, v):
        return (v, [None] * self.m)

    def variable(self, v, j: int):
        g = [None] * self.m
        g[j] = self.base.one
        return (v, g)

    def from_int(self, n: int):
        return self.const(self.base.from_int(n))

    def from_field(self, c):
        return self.const(self.base.from_field(c))

    def from_series(self, s):
        return self.const(self.base.from_series(s))

    def add(self, a, b):
        B = self.base
        return (B.add(a[0], b[0]), [_dadd(B, x, y) for x, y in zip(a[1], b[1])])

    def sub(self, a, b):
        B = self.base
        return (B.sub(a[0], b[0]), [_dsub(B, x, y) for x, y in zip(a[1], b[1])])

    def neg(self, a):
        B = self.base
        return (B.neg(a[0]), [None if x is None else B.neg(x) for x in a[1]])

    def mul(self, a, b):
        B = self.base
        va, vb = a[0], b[0]
        g = []
        for x, y in zip(a[1], b[1]):
            t = None
            if x is not None and not B.is_zero(vb):
                t = B.mul(vb, x)
            if y is not None and not B.is_zero(va):
                u = B.mul(va, y)
                t = u if t is None else B.add(t, u)
            g.append(t)
        return (B.mul(va, vb), g)

    def is_zero(self, a) -> bool:
        return self.base.is_zero(a[0]) and all(x is None or self.base.is_zero(x) for x in a[1])

    def gradient(self, a) -> list:
        return [self.base.zero if x is None else x for x in a[1]]


def _dadd(B, x, y):
    if x is None:
        return y
    if y is None:
        return x
    return B.add(x, y)


def _dsub(B, x, y):
    if y is None:
        return x
    if x is None:
        return B.neg(y)
    return B.sub(x, y)


class ResidueField:
    """K[Y]/(m) for an irreducible m, shaped like a field descriptor.

    Elements are reduced raw coefficient lists over K. The raw polynomial
    layer of :mod:`upoly` accepts this object in place of a field, which is
    how gcds over the residue fields of a factored minimal polynomial are
    computed.
    """

    def __init__(self, F: Field, m: Sequence):
        self.base = F
        self.m = p_monic(list(m), F)
        if len(self.m) < 2:
            raise DivisionByZero("residue field of a constant")
        self.p = F.p
        self.k = 0  # keeps the prime-field fast paths away
        self.zero: list = []
        self.one = [F.one]

    def from_int(self, n: int) -> list:
        c = self.base.from_int(n)
        return [] if c == self.base.zero else [c]

    def from_field(self, c: Any) -> list:
        return [] if c == self.base.zero else [c]

    def gen(self) -> list:
        return p_mod([self.base.zero, self.base.one], self.m, self.base)

    def add(self, a, b):
        return p_add(a, b, self.base)

    def sub(self, a, b):
        return p_sub(a, b, self.base)

    def neg(self, a):
        return p_neg(a, self.base)

    def mul(self, a, b):
        if not a or not b:
            return []
        return p_mod(p_mul(a, b, self.base), self.m, self.base)

    def inv(self, a):
        return p_invmod(a, self.m, self.base)

    def pow(self, a, e: int):
        out, base = self.one, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return out

    def is_zero(self, a) -> bool:
        return not a

    def poly_mul(self, a: Sequence, b: Sequence) -> list:
        out: list = [[] for _ in range(len(a) + len(b) - 1)]
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = self.add(out[i + j], self.mul(x, y))
        while out and not out[-1]:
            out.pop()
        return out
