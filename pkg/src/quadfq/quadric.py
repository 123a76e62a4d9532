"""Quadratic forms over F_q and the quadrics they cut out.

Rank, vertex and type are computed in a characteristic-free way:

* the vanishing radical V(f) = {w : f(u + w) = f(u) for all u} is the
  kernel of the polar form, cut down in characteristic 2 by the
  (Frobenius-semilinear) condition f(w) = 0;
* rank = n + 1 - dim V(f);
* the type is read off from the number of points of the non-degenerate
  base quadric obtained by restricting f to a complement of V(f).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Mapping, Optional, Sequence

import numpy as np

from . import linalg
from .gf import FieldSpec
from .projective import (PointTable, canonicalize, enumerate_points, pi,
                         quadratic_monomials)


class QuadricType(str, Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"

    def __str__(self) -> str:
        return self.value


class ZeroFormError(ValueError):
    pass


@lru_cache(maxsize=None)
def _monomial_index(n: int) -> dict[tuple[int, int], int]:
    return {m: k for k, m in enumerate(quadratic_monomials(n))}


@lru_cache(maxsize=None)
def point_table(n: int, F: FieldSpec) -> PointTable:
    return enumerate_points(n, F)


LinearForm = tuple[int, ...]


@dataclass(frozen=True)
class QuadraticForm:
    """sum_{i<=j} c_ij x_i x_j in x_0..x_n; ``coeffs`` follows quadratic_monomials(n)."""

    n: int
    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != (self.n + 1) * (self.n + 2) // 2:
            raise ValueError(f"expected {(self.n + 1) * (self.n + 2) // 2} coefficients for n={self.n}")
        if not any(self.coeffs):
            raise ZeroFormError("the zero form does not define a quadric")

    @classmethod
    def from_dict(cls, n: int, F: FieldSpec, terms: Mapping[tuple[int, int], int]) -> "QuadraticForm":
        index = _monomial_index(n)
        coeffs = [0] * len(index)
        for (i, j), c in terms.items():
            if not (0 <= i <= n and 0 <= j <= n):
                raise ValueError(f"variable index out of range in x{i}*x{j} for n={n}")
            k = index[(min(i, j), max(i, j))]
            coeffs[k] = F.add(coeffs[k], c)
        return cls(n, F, tuple(coeffs))

    def coeff(self, i: int, j: int) -> int:
        return self.coeffs[_monomial_index(self.n)[(min(i, j), max(i, j))]]

    def terms(self) -> dict[tuple[int, int], int]:
        return {m: c for m, c in zip(quadratic_monomials(self.n), self.coeffs) if c}

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.n + 1:
            raise ValueError(f"point has {len(point)} coordinates, form has {self.n + 1} variables")
        F = self.field
        add, mul = F._lists[0], F._lists[1]
        acc = 0
        for (i, j), c in zip(quadratic_monomials(self.n), self.coeffs):
            if c:
                acc = add[acc][mul[c][mul[point[i]][point[j]]]]
        return acc

    def values(self, table: PointTable) -> np.ndarray:
        if table.n != self.n or table.field != self.field:
            raise ValueError("point table does not match the form's ambient space")
        return self.field.matmul(np.array([self.coeffs]), table.monomials.T)[0]

    def zero_mask(self, table: PointTable) -> np.ndarray:
        return self.values(table) == 0

    def polar(self, u: Sequence[int], v: Sequence[int]) -> int:
        """B(u, v) = f(u + v) - f(u) - f(v)."""
        F = self.field
        s = tuple(F.add(a, b) for a, b in zip(u, v))
        return F.sub(F.sub(self.evaluate(s), self.evaluate(u)), self.evaluate(v))

    def polar_matrix(self) -> list[list[int]]:
        F = self.field
        size = self.n + 1
        b = [[0] * size for _ in range(size)]
        for (i, j), c in zip(quadratic_monomials(self.n), self.coeffs):
            if i == j:
                b[i][i] = F.add(c, c)
            else:
                b[i][j] = b[j][i] = c
        return b

    def scale(self, s: int) -> "QuadraticForm":
        return QuadraticForm(self.n, self.field, tuple(self.field.mul(s, c) for c in self.coeffs))

    def normalized(self) -> "QuadraticForm":
        """Scalar multiple with first nonzero coefficient 1 (same quadric)."""
        return QuadraticForm(self.n, self.field, canonicalize(self.coeffs, self.field))

    def substitute(self, matrix: Sequence[Sequence[int]]) -> "QuadraticForm":
        """The form y -> f(A y) for an (n+1) x (n+1) matrix A."""
        F = self.field
        add, mul = F._lists[0], F._lists[1]
        size = self.n + 1
        index = _monomial_index(self.n)
        out = [0] * len(self.coeffs)
        for (i, j), c in self.terms().items():
            for k in range(size):
                a = mul[c][matrix[i][k]]
                if not a:
                    continue
                for l in range(size):
                    t = mul[a][matrix[j][l]]
                    if t:
                        key = index[(k, l) if k <= l else (l, k)]
                        out[key] = add[out[key]][t]
        return QuadraticForm(self.n, F, tuple(out))

    def restrict(self, basis: Sequence[Sequence[int]]) -> "QuadraticForm":
        """Form in len(basis) variables: y -> f(sum y_k b_k)."""
        F = self.field
        k = len(basis) - 1
        terms: dict[tuple[int, int], int] = {}
        for a in range(len(basis)):
            terms[(a, a)] = self.evaluate(basis[a])
            for b in range(a + 1, len(basis)):
                terms[(a, b)] = self.polar(basis[a], basis[b])
        return QuadraticForm.from_dict(k, F, terms)

    def embed(self, n: int) -> "QuadraticForm":
        """The same polynomial viewed in the larger space P^n."""
        if n < self.n:
            raise ValueError(f"cannot embed a form on P^{self.n} into P^{n}")
        return QuadraticForm.from_dict(n, self.field, self.terms())

    def __str__(self) -> str:
        return format_form(self)


def format_form(f: QuadraticForm) -> str:
    F = f.field
    parts = []
    for (i, j), c in f.terms().items():
        mono = f"x{i}^2" if i == j else f"x{i}*x{j}"
        parts.append(mono if c == 1 else f"{F.format(c)}*{mono}")
    return "+".join(parts)


def format_linear(L: Sequence[int], F: FieldSpec) -> str:
    parts = []
    for i, c in enumerate(L):
        if c:
            parts.append(f"x{i}" if c == 1 else f"{F.format(c)}*x{i}")
    return "+".join(parts) if parts else "0"


# --- radical, rank, type -------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def vanishing_radical(f: QuadraticForm) -> tuple[tuple[int, ...], ...]:
    """Basis (in reduced echelon form) of V(f)."""
    F = f.field
    size = f.n + 1
    ker = linalg.kernel(f.polar_matrix(), size, F)
    if F.p != 2 or not ker:
        return tuple(linalg.row_space(ker, F))
    # On ker B, f(sum a_k w_k) = sum a_k^2 f(w_k): solve the linear equation in
    # b_k = a_k^2, then take square roots coordinatewise.
    vals = [f.evaluate(w) for w in ker]
    if not any(vals):
        return tuple(linalg.row_space(ker, F))
    sols = linalg.kernel([vals], len(ker), F)
    add, mul = F._lists[0], F._lists[1]
    out = []
    for b in sols:
        a = [F.sqrt(x) for x in b]
        v = [0] * size
        for coef, w in zip(a, ker):
            if coef:
                v = [add[x][mul[coef][y]] for x, y in zip(v, w)]
        out.append(tuple(v))
    return tuple(linalg.row_space(out, F))


def rank(f: QuadraticForm) -> int:
    return f.n + 1 - len(vanishing_radical(f))


def nondegenerate_count(r: int, qtype: QuadricType, q: int) -> int:
    """Points of a non-degenerate quadric of rank r in P^{r-1}(F_q)."""
    if r % 2:
        if qtype != QuadricType.PARABOLIC:
            raise ValueError(f"odd rank {r} forces the parabolic type")
        return pi(r - 2, q)
    half = r // 2
    if qtype == QuadricType.HYPERBOLIC:
        return (q ** half - 1) * (q ** (half - 1) + 1) // (q - 1)
    if qtype == QuadricType.ELLIPTIC:
        return (q ** half + 1) * (q ** (half - 1) - 1) // (q - 1)
    raise ValueError(f"even rank {r} is hyperbolic or elliptic, not {qtype}")


def types_for_rank(r: int) -> list[QuadricType]:
    if r % 2:
        return [QuadricType.PARABOLIC]
    return [QuadricType.HYPERBOLIC, QuadricType.ELLIPTIC]


@dataclass(frozen=True)
class QuadricProfile:
    rank: int
    vertex_dim: int
    type: QuadricType
    point_count: int
    base_count: int
    vertex_basis: tuple[tuple[int, ...], ...]

    def to_json(self, F: FieldSpec) -> dict:
        return {
            "rank": self.rank,
            "vertex_dim": self.vertex_dim,
            "type": self.type.value,
            "point_count": self.point_count,
            "base_count": self.base_count,
            "vertex_basis": [[F.serialize(x) for x in v] for v in self.vertex_basis],
        }


def base_form(f: QuadraticForm) -> QuadraticForm:
    """The non-degenerate quadric f induces on a complement of its vertex."""
    V = vanishing_radical(f)
    comp = linalg.complement(V, f.n + 1, f.field)
    return f.restrict(comp)


@lru_cache(maxsize=1 << 12)
def classify(f: QuadraticForm) -> QuadricProfile:
    V = vanishing_radical(f)
    r = f.n + 1 - len(V)
    base = base_form(f)
    q = f.field.q
    base_count = int(np.count_nonzero(base.zero_mask(point_table(r - 1, f.field))))
    for t in types_for_rank(r):
        if nondegenerate_count(r, t, q) == base_count:
            qtype = t
            break
    else:
        raise AssertionError(f"base quadric of {f} has {base_count} points, matching no type of rank {r}")
    total = base_count * q ** (f.n - r + 1) + pi(f.n - r, q)
    return QuadricProfile(r, f.n - r, qtype, total, base_count, V)


def count_points(f: QuadraticForm, table: Optional[PointTable] = None) -> int:
    table = table if table is not None else point_table(f.n, f.field)
    return int(np.count_nonzero(f.zero_mask(table)))


def irreducible_binary_constant(F: FieldSpec) -> int:
    """Least c such that x^2 + x y + c y^2 has no linear factor over F."""
    values = {F.add(F.mul(t, t), t) for t in F.elements()}
    for c in F.elements():
        if F.neg(c) not in values:
            return c
    raise AssertionError("unreachable: x^2 + x is never surjective")  # pragma: no cover


def canonical_form(r: int, qtype: QuadricType | str, n: int, F: FieldSpec) -> QuadraticForm:
    """A fixed representative of the rank-r quadrics of the given type in P^n."""
    qtype = QuadricType(qtype)
    if not 1 <= r <= n + 1:
        raise ValueError(f"rank {r} impossible in P^{n}")
    if qtype not in types_for_rank(r):
        raise ValueError(f"rank {r} is incompatible with type {qtype}")
    terms: dict[tuple[int, int], int] = {}
    if r % 2:
        terms[(0, 0)] = 1
        for k in range(1, r, 2):
            terms[(k, k + 1)] = 1
    else:
        for k in range(0, r, 2):
            terms[(k, k + 1)] = 1
        if qtype == QuadricType.ELLIPTIC:
            a, b = r - 2, r - 1
            terms[(a, a)] = 1
            terms[(b, b)] = irreducible_binary_constant(F)
    return QuadraticForm.from_dict(n, F, terms)


def class_id(r: int, qtype: QuadricType | str) -> str:
    return f"r{r}-{QuadricType(qtype).value}"


@lru_cache(maxsize=1 << 16)
def split_linear_factors(f: QuadraticForm) -> Optional[tuple[LinearForm, LinearForm]]:
    """(L1, L2) with f = L1 * L2 if f splits into linear forms over F_q, else None.

    Both factors are returned with leading coefficient scaled into L1; L2 is
    monic.  Rank 1 gives a repeated factor.
    """
    F = f.field
    V = vanishing_radical(f)
    r = f.n + 1 - len(V)
    if r > 2:
        return None
    size = f.n + 1
    comp = linalg.complement(V, size, F)
    basis = comp + list(V)
    # columns of M are the new basis; row k of M^{-1} is the k-th coordinate form
    M = [[basis[c][i] for c in range(size)] for i in range(size)]
    coords = linalg.inverse(M, F)
    phi = f.restrict(comp)
    if r == 1:
        a = phi.coeff(0, 0)
        ell = canonicalize(coords[0], F)
        lead = next(x for x in coords[0] if x)
        s = F.mul(a, F.mul(lead, lead))
        factors = (tuple(F.mul(s, x) for x in ell), ell)
    else:
        roots = [pt for pt in ((0, 1), (1, 0), *((1, t) for t in range(1, F.q))) if phi.evaluate(pt) == 0]
        roots = sorted(set(canonicalize(pt, F) for pt in roots))
        if not roots:
            return None
        assert len(roots) == 2, "a rank-2 binary form has 0 or 2 roots"
        lins = []
        for u1, u2 in roots:
            # linear form vanishing at (u1:u2): u2*y1 - u1*y2
            lins.append(canonicalize(tuple(F.sub(F.mul(u2, a), F.mul(u1, b))
                                           for a, b in zip(coords[0], coords[1])), F))
        lins.sort(reverse=True)
        prod = linear_product(lins[0], lins[1], f.n, F)
        k = next(i for i, c in enumerate(prod.coeffs) if c)
        s = F.mul(f.coeffs[k], F.inv(prod.coeffs[k]))
        factors = (tuple(F.mul(s, x) for x in lins[0]), lins[1])
    assert linear_product(*factors, f.n, F) == f
    return factors


def linear_product(L1: Sequence[int], L2: Sequence[int], n: int, F: FieldSpec) -> QuadraticForm:
    terms: dict[tuple[int, int], int] = {}
    for i, a in enumerate(L1):
        for j, b in enumerate(L2):
            if a and b:
                key = (min(i, j), max(i, j))
                terms[key] = F.add(terms.get(key, 0), F.mul(a, b))
    return QuadraticForm.from_dict(n, F, terms)
