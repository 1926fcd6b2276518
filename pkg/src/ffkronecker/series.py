"""Truncated power series K[[t]]/(t^N) and polynomials over them.

Here t stands for ``L - alpha`` where alpha is the center; the center is
carried along as metadata so that series from different expansions are not
mixed by accident. The raw layer (``s_*`` functions) works on plain
coefficient lists of length at most N.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .errors import NotAUnit, UnluckyCenter
from .field import Field
from .upoly import DensePoly, p_trim


# ---------------------------------------------------------------------------
# raw layer
# ---------------------------------------------------------------------------


def s_trunc(a: Sequence, N: int, F: Field) -> list:
    return p_trim(list(a[:N]), F)


def s_add(a: Sequence, b: Sequence, F: Field) -> list:
    from .upoly import p_add

    return p_add(a, b, F)


def s_sub(a: Sequence, b: Sequence, F: Field) -> list:
    from .upoly import p_sub

    return p_sub(a, b, F)


def s_mul(a: Sequence, b: Sequence, N: int, F: Field) -> list:
    if not a or not b:
        return []
    a = a[:N]
    b = b[:N]
    return p_trim(F.poly_mul(a, b)[:N], F)


def s_inv(a: Sequence, N: int, F: Field) -> list:
    """Inverse modulo t^N by Newton iteration with precision doubling."""
    if not a or a[0] == F.zero:
        raise NotAUnit("series with zero constant term is not a unit")
    b = [F.inv(a[0])]
    prec = 1
    two = F.from_int(2)
    while prec < N:
        prec = min(2 * prec, N)
        ab = s_mul(a, b, prec, F)
        corr = [F.neg(c) for c in ab]
        if corr:
            corr[0] = F.add(corr[0], two)
        else:
            corr = [two]
        b = s_mul(b, corr, prec, F)
    return b


def s_shift(a: Sequence, k: int, N: int, F: Field) -> list:
    """t^k * a truncated at N (k may be negative: exact division by t^-k)."""
    if k >= 0:
        return p_trim(([F.zero] * k + list(a))[:N], F)
    return p_trim(list(a[-k:N - k]), F)


def s_valuation(a: Sequence, F: Field) -> int | None:
    for i, c in enumerate(a):
        if c != F.zero:
            return i
    return None


# ---------------------------------------------------------------------------
# wrappers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    field: Field
    coeffs: tuple
    precision: int
    center: Any = None

    @classmethod
    def make(cls, field: Field, coeffs: Sequence, precision: int, center: Any = None) -> "TruncatedSeries":
        c = [field.normalize(x) for x in coeffs][:precision]
        p_trim(c, field)
        return cls(field, tuple(c), precision, center)

    @classmethod
    def _raw(cls, like: "TruncatedSeries", coeffs: list) -> "TruncatedSeries":
        return cls(like.field, tuple(coeffs), like.precision, like.center)

    def _check(self, other: "TruncatedSeries") -> None:
        if other.field != self.field or other.precision != self.precision or other.center != self.center:
            raise ValueError("series with different field, precision or center")

    def __getitem__(self, i: int) -> Any:
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero

    def is_unit(self) -> bool:
        return bool(self.coeffs) and self.coeffs[0] != self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return self._raw(self, s_add(self.coeffs, other.coeffs, self.field))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return self._raw(self, s_sub(self.coeffs, other.coeffs, self.field))

    def __neg__(self) -> "TruncatedSeries":
        F = self.field
        return self._raw(self, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return self._raw(self, s_mul(self.coeffs, other.coeffs, self.precision, self.field))

    def truncate(self, m: int) -> "TruncatedSeries":
        return TruncatedSeries(self.field, tuple(s_trunc(self.coeffs, m, self.field)), m, self.center)

    def to_poly(self) -> DensePoly:
        return DensePoly(self.field, list(self.coeffs), raw=True)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.field == other.field
            and self.precision == other.precision
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs, self.precision))


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries._raw(a, s_inv(a.coeffs, a.precision, a.field))


@dataclass
class SeriesPoly:
    """Polynomial in Y whose coefficients are truncated series sharing a center."""

    field: Field
    precision: int
    coeffs: list  # raw series per power of Y
    center: Any = None

    def __post_init__(self) -> None:
        F, N = self.field, self.precision
        cs = [s_trunc(c, N, F) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def from_series(cls, coeffs: Sequence[TruncatedSeries]) -> "SeriesPoly":
        first = coeffs[0]
        return cls(first.field, first.precision, [list(c.coeffs) for c in coeffs], first.center)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> TruncatedSeries:
        c = self.coeffs[i] if i < len(self.coeffs) else []
        return TruncatedSeries(self.field, tuple(c), self.precision, self.center)

    def leading_is_unit(self) -> bool:
        return bool(self.coeffs) and bool(self.coeffs[-1]) and self.coeffs[-1][0] != self.field.zero


# ---------------------------------------------------------------------------
# Euclid over K[[t]]/(t^N)[Y]
# ---------------------------------------------------------------------------


def sp_divmod(a: list, b: list, N: int, F: Field) -> tuple[list, list]:
    """Division by b with unit leading coefficient; lists of raw series."""
    lc = b[-1]
    if not lc or lc[0] == F.zero:
        raise UnluckyCenter("leading coefficient of a divisor is not a unit")
    inv = s_inv(lc, N, F)
    db = len(b) - 1
    r = [list(c) for c in a]
    q = [[] for _ in range(max(0, len(a) - db))]
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        c = s_mul(c, inv, N, F)
        q[i - db] = c
        for j in range(db + 1):
            if b[j]:
                r[i - db + j] = s_sub(r[i - db + j], s_mul(c, b[j], N, F), F)
    rem = r[:db]
    while rem and not rem[-1]:
        rem.pop()
    while q and not q[-1]:
        q.pop()
    return q, rem


def s_pow(a: list, e: int, N: int, F: Field) -> list:
    out = [F.one]
    base = a
    while e:
        if e & 1:
            out = s_mul(out, base, N, F)
        e >>= 1
        if e:
            base = s_mul(base, base, N, F)
    return out


def sp_resultant(f: list, g: list, N: int, F: Field) -> tuple[list, list]:
    """Resultant of two Y-polynomials with series coefficients.

    Returns (resultant series, remainder chain degrees). Each divisor in the
    remainder sequence must have a unit leading coefficient; otherwise the
    center is declared unlucky.
    """
    if not f or not g:
        return [], []
    f = [list(c) for c in f]
    g = [list(c) for c in g]
    acc = [F.one]
    chain = [len(f) - 1, len(g) - 1]
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return s_mul(acc, s_pow(g[0], m, N, F), N, F), chain
        if m == 0:
            return s_mul(acc, s_pow(f[0], n, N, F), N, F), chain
        _, r = sp_divmod(f, g, N, F)
        if not r:
            return [], chain
        k = len(r) - 1
        chain.append(k)
        if (m * n) % 2:
            acc = [F.neg(c) for c in acc]
        acc = s_mul(acc, s_pow(g[-1], m - k, N, F), N, F)
        f, g = g, r


def series_poly_eea(f: SeriesPoly, g: SeriesPoly) -> tuple[list[int], TruncatedSeries]:
    """Remainder-chain degrees and the resultant of f and g as a series."""
    if f.precision != g.precision or f.field != g.field or f.center != g.center:
        raise ValueError("series polynomials must share field, center and precision")
    if not f.coeffs or not g.coeffs:
        raise ValueError("series_poly_eea needs nonzero inputs")
    res, chain = sp_resultant(f.coeffs, g.coeffs, f.precision, f.field)
    return chain, TruncatedSeries(f.field, tuple(res), f.precision, f.center)
