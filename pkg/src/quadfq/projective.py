"""Projective space P^n(F_q): point counts, canonical points, monomial tables."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from .gf import FieldError, FieldSpec

DEFAULT_POINT_CAP = 2_000_000


def pi(n: int, q: int) -> int:
    """|P^n(F_q)| = q^n + ... + q + 1, with pi(-1) = 0 and 0 below that."""
    if n < 0:
        return 0
    return (q ** (n + 1) - 1) // (q - 1)


def quadratic_monomials(n: int) -> list[tuple[int, int]]:
    """Index pairs (i, j), i <= j, in lexicographic order."""
    return [(i, j) for i in range(n + 1) for j in range(i, n + 1)]


def monomials(n: int, degree: int) -> list[tuple[int, ...]]:
    """Degree-d monomials in x_0..x_n as sorted index tuples, lexicographic."""
    return list(combinations_with_replacement(range(n + 1), degree))


def canonicalize(v: Sequence[int], F: FieldSpec) -> tuple[int, ...]:
    """Scale v so its first nonzero coordinate is 1."""
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    if lead == 1:
        return tuple(v)
    s = F.inv(lead)
    return tuple(F.mul(s, x) for x in v)


def format_point(point: Sequence[int], F: FieldSpec) -> str:
    return "(" + ":".join(F.format(x) for x in point) + ")"


def canonical_vectors(length: int, q: int) -> np.ndarray:
    """All nonzero vectors of F_q^length with leading nonzero entry 1, lexicographic."""
    blocks = []
    for lead in range(length - 1, -1, -1):
        tail = length - lead - 1
        count = q ** tail
        block = np.zeros((count, length), dtype=np.int64)
        block[:, lead] = 1
        if tail:
            idx = np.arange(count, dtype=np.int64)
            for pos in range(length - 1, lead, -1):
                block[:, pos] = idx % q
                idx //= q
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


@dataclass(frozen=True, eq=False)
class PointTable:
    """Every point of P^n(F_q) with its degree-2 monomial values precomputed."""

    n: int
    field: FieldSpec
    points: np.ndarray = dc_field(repr=False)
    monomials: np.ndarray = dc_field(repr=False)

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {tuple(int(x) for x in row): i for i, row in enumerate(self.points)}

    def point(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.points[i])

    def monomial_values(self, degree: int) -> np.ndarray:
        """(P, #monomials) table of degree-d monomial values; cached per degree."""
        if degree == 2:
            return self.monomials
        cache = self.__dict__.setdefault("_mono_cache", {})
        if degree not in cache:
            mul = self.field.mul_table
            cols = []
            for mono in monomials(self.n, degree):
                val = np.ones(len(self.points), dtype=np.int64)
                for i in mono:
                    val = mul[val, self.points[:, i]]
                cols.append(val)
            cache[degree] = np.stack(cols, axis=1)
        return cache[degree]

    def hyperplane_incidence(self) -> np.ndarray:
        """Boolean (π_n, π_n) matrix: row h marks the points on hyperplane h.

        Hyperplanes are indexed by the same canonical vectors as points (duality).
        """
        vals = self.field.matmul(self.points, self.points.T)
        return vals == 0


def enumerate_points(n: int, F: FieldSpec, cap: int = DEFAULT_POINT_CAP) -> PointTable:
    total = pi(n, F.q)
    if total > cap:
        raise FieldError(f"P^{n}(F_{F.q}) has {total} points, above the cap {cap}")
    pts = canonical_vectors(n + 1, F.q)
    mul = F.mul_table
    mons = np.stack([mul[pts[:, i], pts[:, j]] for i, j in quadratic_monomials(n)], axis=1)
    return PointTable(n, F, pts, mons)
