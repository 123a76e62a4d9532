"""Finite fields F_q, q = p^m, with elements encoded as small integers.

An element of F_{p^m} is the residue class of a polynomial
a_0 + a_1 t + ... + a_{m-1} t^{m-1} modulo a fixed monic irreducible
polynomial.  Internally it is stored as the integer code
a_0 + a_1 p + ... + a_{m-1} p^{m-1}, so the prime subfield is exactly the
codes 0..p-1 and all arithmetic is table lookup.

The hot paths (point enumeration, census sweeps) work directly on codes and
numpy arrays of codes; :class:`Elem` wraps a code together with its field for
the friendlier operator-based API.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

DEFAULT_FIELD_CAP = 64


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- polynomials over F_p (coefficient lists, lowest degree first) -----------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        factor = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _poly_trim(a)
    return a


def _monic_polys(degree: int, p: int) -> Iterator[list[int]]:
    """Monic polynomials of the given degree, ordered by the code of the lower coefficients."""
    for code in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(code % p)
            code //= p
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _poly_trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            if not _poly_mod(poly, g, p):
                return False
    return True


def lowest_irreducible(m: int, p: int) -> tuple[int, ...]:
    for poly in _monic_polys(m, p):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover


# --- fields -------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^m} defined by ``modulus`` (monic, lowest degree first)."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.m}")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree m")
        if not is_irreducible(self.modulus, self.p):
            raise FieldError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    # Tables.  cached_property writes straight into __dict__, which the frozen
    # dataclass allows; they are excluded from eq/hash.
    @cached_property
    def _tables(self):
        p, m, q = self.p, self.m, self.q
        digits = [self.to_coeffs(a) for a in range(q)]
        add = np.empty((q, q), dtype=np.int64)
        mul = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            da = digits[a]
            for b in range(a, q):
                db = digits[b]
                s = self.from_coeffs([(x + y) % p for x, y in zip(da, db)])
                prod = [0] * (2 * m - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] += x * y
                r = _poly_mod([c % p for c in prod], self.modulus, p) if m > 1 else [prod[0] % p]
                r = r + [0] * (m - len(r))
                add[a, b] = add[b, a] = s
                mul[a, b] = mul[b, a] = self.from_coeffs(r)
        neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        sq = np.array([mul[a, a] for a in range(q)], dtype=np.int64)
        return add, mul, neg, inv, sq

    @property
    def add_table(self) -> np.ndarray:
        return self._tables[0]

    @property
    def mul_table(self) -> np.ndarray:
        return self._tables[1]

    @property
    def neg_table(self) -> np.ndarray:
        return self._tables[2]

    @cached_property
    def _lists(self):
        add, mul, neg, inv, sq = self._tables
        return add.tolist(), mul.tolist(), neg.tolist(), inv.tolist(), sq.tolist()

    @cached_property
    def _sqrt(self) -> dict[int, int]:
        roots: dict[int, int] = {}
        for a, s in enumerate(self._lists[4]):
            roots.setdefault(s, a)
        return roots

    # code <-> coefficient vector
    def to_coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise FieldError(f"too many coefficients for {self!r}: {list(coeffs)}")
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + (int(c) % self.p)
        return code

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_q."""
        return int(n) % self.p

    def serialize(self, a: int):
        return a if self.m == 1 else self.to_coeffs(a)

    def deserialize(self, value) -> int:
        if isinstance(value, (list, tuple)):
            return self.from_coeffs(value)
        if self.m == 1:
            return int(value) % self.p
        return self.from_int(value)

    def format(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self.to_coeffs(a)) + "]"

    # scalar arithmetic on codes
    def add(self, a: int, b: int) -> int:
        return self._lists[0][a][b]

    def sub(self, a: int, b: int) -> int:
        return self._lists[0][a][self._lists[2][b]]

    def mul(self, a: int, b: int) -> int:
        return self._lists[1][a][b]

    def neg(self, a: int) -> int:
        return self._lists[2][a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._lists[3][a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        mul = self._lists[1]
        while e:
            if e & 1:
                result = mul[result][base]
            base = mul[base][base]
            e >>= 1
        return result

    def is_square(self, a: int) -> bool:
        return a in self._sqrt

    def sqrt(self, a: int) -> int:
        try:
            return self._sqrt[a]
        except KeyError:
            raise FieldError(f"{self.format(a)} is not a square in {self!r}") from None

    def elements(self) -> range:
        return range(self.q)

    def elem(self, value) -> "Elem":
        if isinstance(value, Elem):
            _check_same(self, value.field)
            return value
        return Elem(self, self.deserialize(value))

    @property
    def zero(self) -> "Elem":
        return Elem(self, 0)

    @property
    def one(self) -> "Elem":
        return Elem(self, 1)

    # vectorised helpers for numpy arrays of codes
    def vmul(self, a, b) -> np.ndarray:
        return self.mul_table[a, b]

    def vadd(self, a, b) -> np.ndarray:
        if self.m == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.add_table[a, b]

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product over F_q of code arrays of shapes (K, N) and (N, P)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            # exact in float64 while N * (p-1)^2 < 2^53
            prod = a.astype(np.float64) @ b.astype(np.float64)
            return prod.astype(np.int64) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        mul = self.mul_table
        for k in range(a.shape[1]):
            out = self.vadd(out, mul[a[:, k, None], b[None, k, :]])
        return out


def _check_same(f: FieldSpec, g: FieldSpec) -> None:
    if f != g:
        raise FieldMismatchError(f"operands live in different fields: {f!r} vs {g!r}")


def make_field(p: int, m: int = 1, cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    """F_{p^m} with the lowest irreducible modulus (ordered by coefficient code)."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if p ** m > cap:
        raise FieldError(f"field size {p}^{m} = {p ** m} exceeds the cap {cap}")
    modulus = (0, 1) if m == 1 else lowest_irreducible(m, p)
    return FieldSpec(p, m, modulus)


def field_of_order(q: int, cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                break
            return make_field(p, m, cap)
    raise FieldError(f"{q} is not a prime power")


@dataclass(frozen=True)
class Elem:
    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"code {self.value} out of range for {self.field!r}")

    @property
    def coeffs(self) -> list[int]:
        return self.field.to_coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, Elem):
            _check_same(self.field, other.field)
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return Elem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return Elem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return Elem(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return Elem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __neg__(self):
        return Elem(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        b = self._other(other)
        return Elem(self.field, self.field.mul(self.value, self.field.inv(b)))

    def __pow__(self, e: int):
        return Elem(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "Elem":
        return Elem(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return self.field.format(self.value)


def add(a: Elem, b: Elem) -> Elem:
    return a + b


def mul(a: Elem, b: Elem) -> Elem:
    return a * b


def neg(a: Elem) -> Elem:
    return -a


def inv(a: Elem) -> Elem:
    return a.inverse()


def power(a: Elem, e: int) -> Elem:
    return a ** e


def is_square(a: Elem) -> bool:
    return a.field.is_square(a.value)


@dataclass(frozen=True)
class Extension:
    """F_{q^k} together with the embedding of its subfield F_q."""

    base: FieldSpec
    field: FieldSpec
    image: tuple[int, ...]  # image[a] = embedded code of base code a

    @property
    def degree(self) -> int:
        return self.field.m // self.base.m

    def embed(self, a):
        if isinstance(a, Elem):
            _check_same(self.base, a.field)
            return Elem(self.field, self.image[a.value])
        return self.image[a]

    def embed_array(self, arr) -> np.ndarray:
        return np.asarray(self.image, dtype=np.int64)[np.asarray(arr, dtype=np.int64)]


def extend_field(base: FieldSpec, k: int, cap: int = DEFAULT_FIELD_CAP) -> Extension:
    if k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    big = make_field(base.p, base.m * k, cap)
    if base.m == 1:
        return Extension(base, big, tuple(range(base.p)))
    # send t to the least root of the base modulus in the big field
    for alpha in range(big.q):
        acc = 0
        for c in reversed(base.modulus):
            acc = big.add(big.mul(acc, alpha), c)
        if acc == 0:
            break
    else:  # pragma: no cover - an irreducible of degree m splits in F_{p^{mk}}
        raise FieldError("base modulus has no root in the extension")
    image = []
    for a in range(base.q):
        acc = 0
        for c in reversed(base.to_coeffs(a)):
            acc = big.add(big.mul(acc, alpha), c)
        image.append(acc)
    return Extension(base, big, tuple(image))
