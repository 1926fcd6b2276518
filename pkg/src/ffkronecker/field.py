"""Prime fields F_p and extensions F_{p^k}.

A field descriptor does all arithmetic on *raw* values: plain ints in
``[0, p)`` for prime fields and k-tuples of such ints (little-endian in the
power basis of the modulus) for extensions. ``FieldElement`` wraps a raw value
together with its descriptor when operator syntax is more convenient; the hot
paths of the library never allocate wrappers.

Every descriptor also owns a convolution kernel (``poly_mul``) used by the
polynomial and power-series layers, so that the field representation decides
how products of coefficient vectors are computed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Sequence

from .errors import (
    DivisionByZero,
    IrreducibleSearchExhausted,
    NotBaseField,
    NotPrime,
    SingularMatrix,
)

Raw = Any  # int for prime fields, tuple[int, ...] for extensions


# ---------------------------------------------------------------------------
# primality
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3 * 10**24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# packed products (Kronecker substitution into Python integers)
# ---------------------------------------------------------------------------

_KRONECKER_MIN = 12


def _pack(values: Sequence[int], nb: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(nb, "little") for v in values), "little")


def _unpack(x: int, nb: int, count: int) -> list[int]:
    raw = x.to_bytes(nb * count, "little")
    return [int.from_bytes(raw[i : i + nb], "little") for i in range(0, nb * count, nb)]


def _int_convolve(a: Sequence[int], b: Sequence[int], bound: int) -> list[int]:
    """Exact integer convolution of non-negative vectors with entries < bound."""
    la, lb = len(a), len(b)
    if min(la, lb) < _KRONECKER_MIN:
        out = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    top = (bound - 1) * (bound - 1) * min(la, lb)
    nb = (top.bit_length() + 8) // 8
    prod = _pack(a, nb) * _pack(b, nb)
    return _unpack(prod, nb, la + lb - 1)


# ---------------------------------------------------------------------------
# tiny F_p[x] helpers on int lists (bootstrap for extension construction)
# ---------------------------------------------------------------------------


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _ptrim([x % p for x in a])
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    return _pmod(_int_convolve(a, b, p), m, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _ptrim([x % p for x in a])
    b = _ptrim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowx(e: int, m: list[int], p: int) -> list[int]:
    """X^e mod m over F_p."""
    result = [1]
    base = _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible_fp(m: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p (gcd with X^{p^i} - X)."""
    m = _ptrim([x % p for x in m])
    k = len(m) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    h = [0, 1]
    for i in range(1, k):
        h = _pmulmod_pow(h, p, m, p)
        t = list(h) + [0] * max(0, 2 - len(h))
        t[1] = (t[1] - 1) % p
        if len(_pgcd(m, _ptrim(t), p)) > 1:
            return False
    h = _pmulmod_pow(h, p, m, p)
    t = list(h) + [0] * max(0, 2 - len(h))
    t[1] = (t[1] - 1) % p
    return not _ptrim(t)


def _pmulmod_pow(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pinv_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Inverse of a modulo m over F_p; raises DivisionByZero if not coprime."""
    r0, r1 = list(m), _pmod(a, m, p)
    s0, s1 = [], [1]
    while r1:
        inv = pow(r1[-1], p - 2, p)
        q: list[int] = [0] * max(0, len(r0) - len(r1) + 1)
        r = list(r0)
        while len(r) >= len(r1) and r:
            c = r[-1] * inv % p
            sh = len(r) - len(r1)
            q[sh] = c
            for i, x in enumerate(r1):
                r[sh + i] = (r[sh + i] - c * x) % p
            _ptrim(r)
        qs = _int_convolve(q, s1, p) if q and s1 else []
        s2 = [0] * max(len(s0), len(qs))
        for i, x in enumerate(s0):
            s2[i] = x
        for i, x in enumerate(qs):
            s2[i] = (s2[i] - x) % p
        r0, r1 = r1, r
        s0, s1 = s1, _ptrim(s2)
    if len(r0) != 1:
        raise DivisionByZero("element is not invertible")
    c = pow(r0[0], p - 2, p)
    return [x * c % p for x in s0]


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------


class Field:
    """Common interface of prime and extension field descriptors.

    The descriptor doubles as the ring adapter for its own raw elements, so it
    can be passed wherever a ring is expected (see :mod:`ffkronecker.rings`).
    """

    p: int
    k: int
    modulus: tuple[int, ...] | None
    cardinality: int
    zero: Raw
    one: Raw

    # ring-adapter aliases
    def from_field(self, c: Raw) -> Raw:
        return c

    def element(self, x: Any) -> "FieldElement":
        return FieldElement(self, self.normalize(x))

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def pow(self, a: Raw, e: int) -> Raw:
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a: Raw, times: int = 1) -> Raw:
        """a^(p^times)."""
        times %= self.k
        if times == 0:
            return a
        return self.pow(a, self.p**times)

    def pth_root(self, a: Raw) -> Raw:
        return self.frobenius(a, self.k - 1)

    def elements(self) -> Iterator[Raw]:
        raise NotImplementedError

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def descriptor_json(self) -> dict:
        d: dict = {"p": str(self.p), "k": self.k}
        if self.modulus is not None:
            d["modulus"] = [str(c) for c in self.modulus]
        return d


class PrimeField(Field):
    def __init__(self, p: int):
        self.p = p
        self.k = 1
        self.modulus = None
        self.cardinality = p
        self.zero = 0
        self.one = 1 % p

    def __repr__(self) -> str:
        return f"F_{self.p}"

    # conversions
    def normalize(self, x: Any) -> int:
        if isinstance(x, FieldElement):
            x = x.value
        if isinstance(x, (tuple, list)):
            if any(int(c) % self.p for c in x[1:]):
                raise NotBaseField(f"{x!r} is not in {self}")
            x = x[0] if x else 0
        return int(x) % self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def to_json(self, a: int) -> str:
        return str(a)

    def from_json(self, obj: Any) -> int:
        return self.normalize(int(obj) if isinstance(obj, str) else obj)

    def coordinates(self, a: int) -> tuple[int, ...]:
        return (a,)

    def from_coordinates(self, c: Sequence[int]) -> int:
        return c[0] % self.p

    # arithmetic
    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in {self}")
        return pow(a, -1, self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def frobenius(self, a: int, times: int = 1) -> int:
        return a

    def pth_root(self, a: int) -> int:
        return a

    def is_zero(self, a: int) -> bool:
        return a == 0

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def in_prime_subfield(self, a: int) -> bool:
        return True

    def sort_key(self, a: int) -> tuple[int, ...]:
        return (a,)

    # kernels on coefficient vectors
    def poly_mul(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        if not a or not b:
            return []
        p = self.p
        return [x % p for x in _int_convolve(a, b, p)]

    def dot(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(a, b)) % self.p


class ExtensionField(Field):
    def __init__(self, p: int, modulus: Sequence[int]):
        m = tuple(int(c) % p for c in modulus)
        if m[-1] != 1:
            raise ValueError("modulus must be monic")
        self.p = p
        self.k = len(m) - 1
        self.modulus = m
        self.cardinality = p**self.k
        self.zero = (0,) * self.k
        self.one = (1,) + (0,) * (self.k - 1)
        k = self.k
        # x^j mod m for j in [k, 2k-2], as coordinate vectors
        self._red: list[tuple[int, ...]] = []
        cur = [(-c) % p for c in m[:k]]
        for _ in range(k - 1):
            self._red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(cur[i] - top * m[i]) % p for i in range(k)]
        self._m0 = m[0]
        self._m1 = m[1] if k >= 2 else 0

    def __repr__(self) -> str:
        return f"F_{self.p}^{self.k}"

    # conversions
    def normalize(self, x: Any) -> tuple[int, ...]:
        if isinstance(x, FieldElement):
            x = x.value
        if isinstance(x, int):
            return (x % self.p,) + (0,) * (self.k - 1)
        c = [int(v) % self.p for v in x]
        if len(c) > self.k:
            c = _pmod(c, list(self.modulus), self.p)
        c = c + [0] * (self.k - len(c))
        return tuple(c)

    def from_int(self, n: int) -> tuple[int, ...]:
        return (n % self.p,) + (0,) * (self.k - 1)

    def to_json(self, a: tuple[int, ...]) -> list[str]:
        return [str(c) for c in a]

    def from_json(self, obj: Any) -> tuple[int, ...]:
        if isinstance(obj, str):
            return self.from_int(int(obj))
        return self.normalize([int(c) for c in obj])

    def coordinates(self, a: tuple[int, ...]) -> tuple[int, ...]:
        return a

    def from_coordinates(self, c: Sequence[int]) -> tuple[int, ...]:
        return self.normalize(list(c))

    def generator(self) -> tuple[int, ...]:
        """The class of X in F_p[X]/(modulus)."""
        return self.normalize([0, 1])

    # arithmetic
    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _reduce(self, c: Sequence[int]) -> tuple[int, ...]:
        k, p = self.k, self.p
        if k == 2:
            c2 = c[2] if len(c) > 2 else 0
            return ((c[0] - self._m0 * c2) % p, (c[1] - self._m1 * c2) % p)
        out = list(c[:k]) + [0] * max(0, k - len(c))
        for j in range(k, len(c)):
            cj = c[j]
            if cj:
                r = self._red[j - k]
                for i in range(k):
                    out[i] += cj * r[i]
        return tuple(x % p for x in out)

    def mul(self, a, b):
        if self.k == 2:
            a0, a1 = a
            b0, b1 = b
            c2 = a1 * b1
            p = self.p
            return ((a0 * b0 - self._m0 * c2) % p, (a0 * b1 + a1 * b0 - self._m1 * c2) % p)
        k = self.k
        c = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return self._reduce(c)

    def inv(self, a):
        if not any(a):
            raise DivisionByZero(f"inverse of 0 in {self}")
        c = _pinv_mod(_ptrim(list(a)), list(self.modulus), self.p)
        return self.normalize(c)

    def is_zero(self, a) -> bool:
        return not any(a)

    def random(self, rng: random.Random):
        p = self.p
        return tuple(rng.randrange(p) for _ in range(self.k))

    def elements(self) -> Iterator[tuple[int, ...]]:
        return iter(itertools.product(range(self.p), repeat=self.k))

    def in_prime_subfield(self, a) -> bool:
        return not any(a[1:])

    def sort_key(self, a) -> tuple[int, ...]:
        return tuple(reversed(a))

    # kernels
    def poly_mul(self, a: Sequence[tuple], b: Sequence[tuple]) -> list[tuple]:
        if not a or not b:
            return []
        k, p = self.k, self.p
        w = 2 * k - 1
        la, lb = len(a), len(b)
        if min(la, lb) < 4:
            if k == 2:
                n = la + lb - 1
                r0 = [0] * n
                r1 = [0] * n
                r2 = [0] * n
                for i, (x0, x1) in enumerate(a):
                    for j, (y0, y1) in enumerate(b):
                        r0[i + j] += x0 * y0
                        r1[i + j] += x0 * y1 + x1 * y0
                        r2[i + j] += x1 * y1
                m0, m1 = self._m0, self._m1
                return [((u - m0 * z) % p, (v - m1 * z) % p) for u, v, z in zip(r0, r1, r2)]
        fa = [0] * (la * w)
        for i, x in enumerate(a):
            fa[i * w : i * w + k] = x
        fb = [0] * (lb * w)
        for i, y in enumerate(b):
            fb[i * w : i * w + k] = y
        # fa, fb are padded: slot products never overlap because j1 + j2 <= 2k - 2
        conv = _int_convolve_bounded(fa, fb, p, k * min(la, lb))
        out = []
        red = self._reduce
        for i in range(la + lb - 1):
            out.append(red(conv[i * w : i * w + w]))
        return out

    def dot(self, a, b):
        k = self.k
        c = [0] * (2 * k - 1)
        for x, y in zip(a, b):
            for i, xi in enumerate(x):
                if xi:
                    for j, yj in enumerate(y):
                        c[i + j] += xi * yj
        return self._reduce(c)


def _int_convolve_bounded(a: Sequence[int], b: Sequence[int], p: int, terms: int) -> list[int]:
    """Convolution with a caller-supplied bound on the number of summed terms."""
    la, lb = len(a), len(b)
    if min(la, lb) < _KRONECKER_MIN:
        out = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return out
    top = (p - 1) * (p - 1) * terms
    nb = (top.bit_length() + 8) // 8
    prod = _pack(a, nb) * _pack(b, nb)
    return _unpack(prod, nb, la + lb - 1)


FieldDescriptor = Field


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def make_field(p: int, k: int = 1, rng: random.Random | None = None) -> Field:
    """F_p (k = 1) or F_{p^k} with a random verified-irreducible modulus.

    Candidates are monic polynomials with uniformly random lower
    coefficients; the search gives up after 64*k candidates.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be positive")
    if k == 1:
        return PrimeField(p)
    if rng is None:
        rng = random.Random(p * 1_000_003 + k)
    for _ in range(64 * k):
        cand = [rng.randrange(p) for _ in range(k)] + [1]
        if cand[0] == 0:
            continue
        if is_irreducible_fp(cand, p):
            return ExtensionField(p, cand)
    raise IrreducibleSearchExhausted(f"no irreducible of degree {k} over F_{p} in {64 * k} tries")


def field_from_json(obj: dict) -> Field:
    p = int(obj["p"])
    k = int(obj.get("k", 1))
    if k == 1:
        return make_field(p, 1)
    mod = [int(c) for c in obj["modulus"]]
    if not is_irreducible_fp(mod, p):
        raise ValueError("serialized modulus is not irreducible")
    return ExtensionField(p, mod)


def smallest_degree_above(p: int, bound: int) -> int:
    """Smallest k with p**k > bound."""
    k, q = 1, p
    while q <= bound:
        k += 1
        q *= p
    return k


# ---------------------------------------------------------------------------
# element wrapper and module-level operations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: Any

    def _coerce(self, other: Any) -> Any:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return self.field.normalize(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, tuple, list)):
            try:
                return self.value == self.field.normalize(other)
            except NotBaseField:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return not self.field.is_zero(self.value)

    def __repr__(self) -> str:
        return f"{self.field.to_json(self.value)!r}@{self.field!r}"

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coordinates(self.value)

    def to_json(self) -> Any:
        return self.field.to_json(self.value)


def invert(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.inv(a.value))


def frobenius(a: FieldElement, times: int = 1) -> FieldElement:
    return FieldElement(a.field, a.field.frobenius(a.value, times))


def sample_uniform(descriptor: Field, rng: random.Random) -> FieldElement:
    return FieldElement(descriptor, descriptor.random(rng))


# ---------------------------------------------------------------------------
# subfield embeddings
# ---------------------------------------------------------------------------


class FieldEmbedding:
    """An embedding of a field ``small`` into an extension ``big``.

    The embedding is fixed by the image ``theta`` of the generator of
    ``small``; for a prime field there is nothing to choose.
    """

    def __init__(self, small: Field, big: Field, theta: Raw | None = None):
        if small.p != big.p or big.k % small.k:
            raise ValueError(f"{small} does not embed in {big}")
        self.small = small
        self.big = big
        self.theta = theta
        self._powers: list[Raw] = []
        if small.k > 1:
            if theta is None:
                raise ValueError("extension embedding needs the image of the generator")
            cur = big.one
            for _ in range(small.k):
                self._powers.append(cur)
                cur = big.mul(cur, theta)
        self._basis_cache: list[Any] | None = None

    @property
    def trivial(self) -> bool:
        return self.small == self.big

    def embed(self, a: Raw) -> Raw:
        if self.trivial:
            return a
        if self.small.k == 1:
            return self.big.from_int(a)
        out = self.big.zero
        for c, pw in zip(a, self._powers):
            if c:
                out = self.big.add(out, self.big.mul(self.big.from_int(c), pw))
        return out

    def contains(self, b: Raw) -> bool:
        return self.big.frobenius(b, self.small.k) == b

    def project(self, b: Raw) -> Raw:
        """Preimage of b; raises NotBaseField when b is outside the image."""
        big, small = self.big, self.small
        if self.trivial:
            return b
        if small.k == 1:
            if not big.in_prime_subfield(b):
                raise NotBaseField(f"{big.to_json(b)} is not in {small}")
            return big.coordinates(b)[0]
        # solve sum_i c_i theta^i = b over F_p
        p = big.p
        cols = [list(big.coordinates(x)) for x in self._powers]
        rows = [[cols[j][i] for j in range(small.k)] + [big.coordinates(b)[i]] for i in range(big.k)]
        sol = _solve_mod_p(rows, small.k, p)
        if sol is None:
            raise NotBaseField(f"{big.to_json(b)} is not in the image of {small}")
        return small.normalize(sol)


def _solve_mod_p(rows: list[list[int]], nvars: int, p: int) -> list[int] | None:
    rows = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] % p:
            return None
    if len(piv_cols) < nvars:
        raise SingularMatrix("embedding basis is degenerate")
    sol = [0] * nvars
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][-1] % p
    return sol


def extend_field(base: Field, m: int, rng: random.Random) -> tuple[Field, FieldEmbedding]:
    """A degree-m extension K of ``base`` together with the embedding base -> K."""
    if m == 1:
        return base, FieldEmbedding(base, base)
    big = make_field(base.p, base.k * m, rng)
    if base.k == 1:
        return big, FieldEmbedding(base, big)
    from .upoly import DensePoly, roots_in_field

    mod = DensePoly(big, [big.from_int(c) for c in base.modulus])
    roots = sorted((r.value for r in roots_in_field(mod, big, rng=rng)), key=big.sort_key)
    if not roots:
        raise IrreducibleSearchExhausted("base modulus has no root in the extension")
    return big, FieldEmbedding(base, big, roots[0])


def parse_field_descriptor(items: Iterable[str]) -> tuple[int, int]:
    """Parse ``p=<prime> ext=<k>`` tokens."""
    kv = {}
    for tok in items:
        if "=" not in tok:
            raise ValueError(f"bad field token {tok!r}")
        key, val = tok.split("=", 1)
        kv[key.strip()] = int(val)
    return kv["p"], kv.get("ext", 1)
