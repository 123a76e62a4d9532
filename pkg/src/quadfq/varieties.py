"""Projective algebraic sets given by lists of homogeneous forms."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bounds import lachaud_bound, lachaud_conj_bound, tss_bound
from .gf import DEFAULT_FIELD_CAP, FieldSpec, extend_field
from .projective import PointTable, enumerate_points, monomials
from .quadric import QuadraticForm, format_form

Monomial = tuple[int, ...]  # sorted variable indices, length = degree


@dataclass(frozen=True)
class Form:
    """Homogeneous form of degree d; ``terms`` holds (monomial, nonzero code) sorted by monomial."""

    n: int
    field: FieldSpec
    degree: int
    terms: tuple[tuple[Monomial, int], ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("forms have degree >= 1")
        for mono, c in self.terms:
            if len(mono) != self.degree:
                raise ValueError(f"monomial {mono} is not of degree {self.degree}")
            if not c:
                raise ValueError("zero coefficients are not stored")
            if any(not 0 <= i <= self.n for i in mono):
                raise ValueError(f"variable index out of range in {mono} for n={self.n}")

    @classmethod
    def from_dict(cls, n: int, F: FieldSpec, degree: int, terms: dict) -> "Form":
        acc: dict[Monomial, int] = {}
        for mono, c in terms.items():
            key = tuple(sorted(mono))
            acc[key] = F.add(acc.get(key, 0), c)
        return cls(n, F, degree, tuple(sorted((m, c) for m, c in acc.items() if c)))

    @classmethod
    def from_quadratic(cls, f: QuadraticForm) -> "Form":
        return cls.from_dict(f.n, f.field, 2, dict(f.terms()))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff_vector(self) -> np.ndarray:
        index = {m: k for k, m in enumerate(monomials(self.n, self.degree))}
        vec = np.zeros(len(index), dtype=np.int64)
        for m, c in self.terms:
            vec[index[m]] = c
        return vec

    def evaluate(self, point: Sequence[int]) -> int:
        F = self.field
        acc = 0
        for mono, c in self.terms:
            t = c
            for i in mono:
                t = F.mul(t, point[i])
            acc = F.add(acc, t)
        return acc

    def values(self, table: PointTable, embed=None) -> np.ndarray:
        vec = self.coeff_vector()
        if embed is not None:
            vec = embed(vec)
        return table.field.matmul(vec[None, :], table.monomial_values(self.degree).T)[0]

    def to_quadratic(self) -> QuadraticForm:
        if self.degree != 2:
            raise ValueError(f"degree {self.degree} form is not quadratic")
        return QuadraticForm.from_dict(self.n, self.field, {m: c for m, c in self.terms})

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(f: Form) -> str:
    if f.degree == 2 and f.terms:
        return format_form(f.to_quadratic())
    F = f.field
    parts = []
    for mono, c in f.terms:
        powers: dict[int, int] = {}
        for i in mono:
            powers[i] = powers.get(i, 0) + 1
        body = "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in sorted(powers.items()))
        parts.append(body if c == 1 else f"{F.format(c)}*{body}")
    return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class AlgebraicSet:
    forms: tuple[Form, ...]
    declared_dim: Optional[int] = None
    declared_deg: Optional[int] = None

    def __post_init__(self):
        if not self.forms:
            raise ValueError("an algebraic set needs at least one form")
        f0 = self.forms[0]
        for f in self.forms[1:]:
            if f.n != f0.n or f.field != f0.field:
                raise ValueError("all forms must share the ambient space")

    @property
    def n(self) -> int:
        return self.forms[0].n

    @property
    def field(self) -> FieldSpec:
        return self.forms[0].field

    def add(self, f: Form) -> "AlgebraicSet":
        return AlgebraicSet(self.forms + (f,), self.declared_dim, self.declared_deg)


def count_points(X: AlgebraicSet, k: int = 1, cap: int = DEFAULT_FIELD_CAP) -> int:
    """|X(F_{q^k})| by enumerating P^n(F_{q^k})."""
    F = X.field
    if k == 1:
        table, embed = enumerate_points(X.n, F), None
    else:
        ext = extend_field(F, k, cap)
        table, embed = enumerate_points(X.n, ext.field), ext.embed_array
    mask = np.ones(len(table), dtype=bool)
    for f in X.forms:
        if f.is_zero():
            continue
        mask &= f.values(table, embed) == 0
    return int(np.count_nonzero(mask))


@dataclass(frozen=True)
class DimDegreeEstimate:
    s: Optional[int]
    d: Optional[int]
    counts: tuple[int, ...]
    ratios: tuple[float, ...]


def estimate_dim_degree(X: AlgebraicSet, k_max: int, cap: int = DEFAULT_FIELD_CAP) -> DimDegreeEstimate:
    """Heuristic (s, d) from the growth |X(F_{q^k})| ≈ d q^{ks}.

    s comes from the last ratio of consecutive counts, d from the last count.
    The raw sequence is returned so callers can judge stability.
    """
    if k_max < 2:
        raise ValueError("need k_max >= 2 to read off a growth rate")
    q = X.field.q
    counts = tuple(count_points(X, k, cap) for k in range(1, k_max + 1))
    ratios = tuple(b / a if a else math.inf for a, b in zip(counts, counts[1:]))
    if counts[-1] == 0 or counts[-2] == 0:
        return DimDegreeEstimate(None, None, counts, ratios)
    s = max(0, round(math.log(ratios[-1], q)))
    d = max(1, round(counts[-1] / q ** (k_max * s)))
    return DimDegreeEstimate(s, d, counts, ratios)


@dataclass(frozen=True)
class Conjecture2Report:
    n: int
    q: int
    d: int
    s: int
    count: int
    bounds: tuple[tuple[str, int], ...]
    note: str

    @property
    def satisfied(self) -> dict[str, bool]:
        return {name: self.count <= v for name, v in self.bounds}

    @property
    def counterexample(self) -> bool:
        return not self.satisfied["tss"]

    def to_json(self) -> dict:
        return {
            "n": self.n, "q": self.q, "d": self.d, "s": self.s,
            "count": self.count,
            "bounds": [{"name": k, "value": v, "satisfied": self.count <= v, "slack": v - self.count}
                       for k, v in self.bounds],
            "counterexample": self.counterexample,
            "note": self.note,
        }


def check_conjecture2(X: AlgebraicSet, d: Optional[int] = None, s: Optional[int] = None,
                      count: Optional[int] = None) -> Conjecture2Report:
    """Compare |X(F_q)| with d q^s + π_{s-1} and Lachaud's two bounds.  Never raises on failure."""
    d = d if d is not None else X.declared_deg
    s = s if s is not None else X.declared_dim
    if d is None or s is None:
        raise ValueError("degree and dimension must be declared (see estimate_dim_degree)")
    q = X.field.q
    count = count_points(X) if count is None else count
    bounds = (
        ("tss", tss_bound(d, s, q)),
        ("lachaud_conj", lachaud_conj_bound(d, s, X.n, q)),
        ("lachaud", lachaud_bound(d, s, q)),
    )
    if s == X.n - 1 and len(X.forms) == 1:
        note = "hypersurface: the tss bound is proven here"
    else:
        note = "d and s are caller-declared; for reducible or mixed-dimension X their meaning is not fixed"
    return Conjecture2Report(X.n, q, d, s, count, bounds, note)


def random_form(n: int, F: FieldSpec, degree: int, rng) -> Form:
    mons = monomials(n, degree)
    while True:
        coeffs = rng.integers(0, F.q, size=len(mons))
        if coeffs.any():
            return Form.from_dict(n, F, degree, {m: int(c) for m, c in zip(mons, coeffs)})
