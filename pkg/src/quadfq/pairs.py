"""Pairs of quadrics: order, common hyperplanes, intersection counts, cone lifting."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .bounds import (aubry_bound, conj1_bound, edoukou_bound, eh_bound,
                     eh_max, ls_bound, schmidt_bound)
from .gf import FieldSpec
from .projective import PointTable, canonicalize, pi
from .quadric import (LinearForm, QuadraticForm, classify, format_linear,
                      irreducible_binary_constant, point_table,
                      split_linear_factors, vanishing_radical)


def _check_pair(f1: QuadraticForm, f2: QuadraticForm) -> None:
    if f1.n != f2.n or f1.field != f2.field:
        raise ValueError("the two forms live in different ambient spaces")


def order(f1: QuadraticForm, f2: QuadraticForm) -> int:
    """Least number of variables in which both forms can be written simultaneously."""
    _check_pair(f1, f2)
    common = linalg.intersect(vanishing_radical(f1), vanishing_radical(f2), f1.n + 1, f1.field)
    return f1.n + 1 - len(common)


def common_hyperplane(f1: QuadraticForm, f2: QuadraticForm) -> Optional[LinearForm]:
    """A linear form dividing both f1 and f2 (monic), or None."""
    _check_pair(f1, f2)
    s1 = split_linear_factors(f1)
    if s1 is None:
        return None
    s2 = split_linear_factors(f2)
    if s2 is None:
        return None
    F = f1.field
    left = {canonicalize(L, F) for L in s1}
    right = {canonicalize(L, F) for L in s2}
    shared = sorted(left & right, reverse=True)
    return shared[0] if shared else None


def common_hyperplanes_by_enumeration(f1: QuadraticForm, f2: QuadraticForm,
                                      table: Optional[PointTable] = None) -> list[LinearForm]:
    """Every hyperplane whose points all lie on both quadrics (dual enumeration)."""
    _check_pair(f1, f2)
    table = table if table is not None else point_table(f1.n, f1.field)
    both = f1.zero_mask(table) & f2.zero_mask(table)
    inc = table.hyperplane_incidence()
    inside = ~(inc & ~both[None, :]).any(axis=1)
    return [table.point(h) for h in np.flatnonzero(inside)]


def intersection_count(f1: QuadraticForm, f2: QuadraticForm,
                       table: Optional[PointTable] = None) -> int:
    _check_pair(f1, f2)
    table = table if table is not None else point_table(f1.n, f1.field)
    on_first = np.flatnonzero(f1.zero_mask(table))
    if not len(on_first):
        return 0
    sub = table.monomials[on_first]
    vals = f1.field.matmul(np.array([f2.coeffs]), sub.T)[0]
    return int(np.count_nonzero(vals == 0))


def cone_lift_bound(m: int, l: int, q: int) -> int:
    """m q^l + π_{l-1}: lifting a count m on E_{n-l} to all of P^n."""
    if m < 0 or l < 1:
        raise ValueError("need m >= 0 and l >= 1")
    return m * q ** l + pi(l - 1, q)


def embed_and_lift(f1: QuadraticForm, f2: QuadraticForm, n: int) -> tuple[QuadraticForm, QuadraticForm]:
    """Reinterpret a pair on P^t as a pair on P^n (t < n) with the same equations."""
    _check_pair(f1, f2)
    if f1.n >= n:
        raise ValueError(f"target dimension {n} must exceed the base dimension {f1.n}")
    return f1.embed(n), f2.embed(n)


def proportional(f1: QuadraticForm, f2: QuadraticForm) -> bool:
    return f1.normalized() == f2.normalized()


@dataclass(frozen=True)
class PairReport:
    n: int
    q: int
    order: int
    common_hyperplane: Optional[LinearForm]
    same_quadric: bool
    intersection_count: int
    theorem_bound: int
    applicable_bounds: tuple[tuple[str, int], ...]
    field: FieldSpec

    @property
    def in_hypothesis(self) -> bool:
        return self.common_hyperplane is None and not self.same_quadric

    @property
    def slack(self) -> int:
        return self.theorem_bound - self.intersection_count

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "common_hyperplane": (format_linear(self.common_hyperplane, self.field)
                                  if self.common_hyperplane is not None else None),
            "count": self.intersection_count,
            "bound_theorem": self.theorem_bound,
            "bounds": [{"name": k, "value": v} for k, v in self.applicable_bounds],
            "slack": self.slack,
            "in_hypothesis": self.in_hypothesis,
        }


def applicable_bounds(f1: QuadraticForm, f2: QuadraticForm, w: int) -> list[tuple[str, int]]:
    n, q = f1.n, f1.field.q
    out = [("theorem", edoukou_bound(n, q)),
           ("aubry", int(aubry_bound(n, q))),
           ("schmidt", int(schmidt_bound(n, q)))]
    if n < 3:
        return out
    if w == n + 1:
        out.append(("ls", ls_bound(n, q)))
    ranks = [classify(f).rank for f in (f1, f2)]
    if n + 1 in ranks:
        out.append(("eh_max", eh_max(n, q)))
        out += [(b.label, b.value) for b in eh_bound(n, q)]
    degenerate = [r for r in ranks if 4 <= r <= n]
    if degenerate:
        r = max(degenerate)
        out.append((f"conj1_r{r}", conj1_bound(n, r, q)))
    return out


def pair_report(f1: QuadraticForm, f2: QuadraticForm, table: Optional[PointTable] = None) -> PairReport:
    _check_pair(f1, f2)
    w = order(f1, f2)
    return PairReport(
        n=f1.n,
        q=f1.field.q,
        order=w,
        common_hyperplane=common_hyperplane(f1, f2),
        same_quadric=proportional(f1, f2),
        intersection_count=intersection_count(f1, f2, table),
        theorem_bound=edoukou_bound(f1.n, f1.field.q),
        applicable_bounds=tuple(applicable_bounds(f1, f2, w)),
        field=f1.field,
    )


# --- named extremal configurations ---------------------------------------------

FIXTURES = {
    "rank3-extremal": "x0^2+x1^2-x2^2 with x0*x1: 4q^{n-2}+pi_{n-3} points for odd q",
    "plane-extremal": "(x0+x1)*x2+x2^2 with (x2+x0)*x1+x1^2: q+2 points in the plane",
    "rank1": "x2^2 with x0*x1+x2^2: 2q^{n-2}+pi_{n-3} points",
    "elliptic-rank2": "irreducible f(x0,x1) with x0*x1: pi_{n-2} points",
}


def fixture(name: str, n: int, F: FieldSpec) -> tuple[QuadraticForm, QuadraticForm]:
    mk = QuadraticForm.from_dict
    neg1 = F.neg(1)
    if name == "rank3-extremal":
        if n < 2:
            raise ValueError("needs n >= 2")
        return mk(n, F, {(0, 0): 1, (1, 1): 1, (2, 2): neg1}), mk(n, F, {(0, 1): 1})
    if name == "plane-extremal":
        if n < 2:
            raise ValueError("needs n >= 2")
        return (mk(n, F, {(0, 2): 1, (1, 2): 1, (2, 2): 1}),
                mk(n, F, {(1, 2): 1, (0, 1): 1, (1, 1): 1}))
    if name == "rank1":
        if n < 2:
            raise ValueError("needs n >= 2")
        return mk(n, F, {(2, 2): 1}), mk(n, F, {(0, 1): 1, (2, 2): 1})
    if name == "elliptic-rank2":
        if n < 1:
            raise ValueError("needs n >= 1")
        c = irreducible_binary_constant(F)
        return mk(n, F, {(0, 0): 1, (0, 1): 1, (1, 1): c}), mk(n, F, {(0, 1): 1})
    raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}")
