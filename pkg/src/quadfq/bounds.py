"""Closed-form upper bounds for |Q1 ∩ Q2| and for point counts of algebraic sets.

All arithmetic is exact: integers where the expression is integral,
``fractions.Fraction`` for the two historical bounds that carry a 1/(q-1)
term.  Nothing is floored until a comparison site asks for it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .projective import pi


class BoundDomainError(ValueError):
    pass


def schmidt_bound(n: int, q: int) -> Fraction:
    """2(4q^{n-2} + 4π_{n-3}) + 7/(q-1)."""
    return 2 * (4 * q ** (n - 2) + 4 * pi(n - 3, q)) + Fraction(7, q - 1)


def aubry_bound(n: int, q: int) -> Fraction:
    """2(4q^{n-2} + π_{n-3}) + 1/(q-1)."""
    return 2 * (4 * q ** (n - 2) + pi(n - 3, q)) + Fraction(1, q - 1)


def ls_bound(n: int, q: int) -> int:
    """Leep-Schueller bound for pairs of full order (n + 1 >= 4)."""
    if n < 3:
        raise BoundDomainError(f"LS(n, q) needs n >= 3, got n={n}")
    base = 2 * q ** (n - 2) + pi(n - 3, q)
    if (n + 1) % 2 == 0:
        return base + 2 * q ** ((n - 1) // 2) - q ** ((n - 3) // 2)
    return base + q ** (n // 2)


def edoukou_bound(n: int, q: int) -> int:
    """4q^{n-2} + π_{n-3}: the bound for two quadrics with no common hyperplane."""
    if n < 2:
        raise BoundDomainError(f"the intersection bound needs n >= 2, got n={n}")
    return 4 * q ** (n - 2) + pi(n - 3, q)


@dataclass(frozen=True)
class EHBranch:
    label: str
    condition: str
    value: int


def eh_bound(n: int, q: int) -> list[EHBranch]:
    """Branches of EH(n, q) whose exponents are integral for this n.

    Two branches carry the identical condition "n+1 >= 4 and even"; both are
    returned as printed, callers wanting one number use :func:`eh_max`.
    """
    if n < 3:
        raise BoundDomainError(f"EH(n, q) needs n >= 3, got n={n}")
    base = 2 * q ** (n - 2) + pi(n - 3, q)
    if (n + 1) % 2 == 0:
        return [
            EHBranch("eh1", "n+1 >= 4 and even", base + 2 * q ** ((n - 1) // 2) - q ** ((n - 3) // 2)),
            EHBranch("eh2", "n+1 >= 4 and even", base + q ** ((n - 3) // 2)),
        ]
    return [EHBranch("eh3", "n+1 >= 5 and odd", base + 2 * q ** ((n - 2) // 2))]


def eh_max(n: int, q: int) -> int:
    return max(b.value for b in eh_bound(n, q))


def conj1_bound(n: int, r: int, q: int) -> int:
    """EH(r-1, q) q^{n-r+1} + π_{n-r}, using the largest EH branch."""
    if r < 4:
        raise BoundDomainError(f"the degenerate-quadric bound needs rank >= 4, got r={r}")
    if r > n + 1:
        raise BoundDomainError(f"rank {r} impossible in P^{n}")
    return eh_max(r - 1, q) * q ** (n - r + 1) + pi(n - r, q)


def tss_bound(d: int, s: int, q: int) -> int:
    """d q^s + π_{s-1}."""
    return d * q ** s + pi(s - 1, q)


def lachaud_bound(d: int, s: int, q: int) -> int:
    """d π_s."""
    return d * pi(s, q)


def lachaud_conj_bound(d: int, s: int, n: int, q: int) -> int:
    """d(π_s - π_{2s-n}) + π_{2s-n}."""
    low = pi(2 * s - n, q)
    return d * (pi(s, q) - low) + low


@dataclass(frozen=True)
class BoundEntry:
    name: str
    value: Fraction | int
    hypothesis: str

    @property
    def floor(self) -> int:
        return math.floor(self.value)

    def to_json(self) -> dict:
        exact = self.value
        return {
            "name": self.name,
            "value": self.floor,
            "exact": str(exact) if isinstance(exact, Fraction) and exact.denominator != 1 else str(int(exact)),
            "hypothesis": self.hypothesis,
        }


@dataclass(frozen=True)
class BoundsTable:
    n: int
    q: int
    d: Optional[int]
    s: Optional[int]
    r: Optional[int]
    entries: tuple[BoundEntry, ...]

    def get(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "n": self.n, "q": self.q, "d": self.d, "s": self.s, "r": self.r,
            "entries": [e.to_json() for e in self.entries],
        }

    def to_text(self) -> str:
        rows = [(e.name, e.to_json()["exact"], str(e.floor), e.hypothesis) for e in self.entries]
        head = ("bound", "exact", "floor", "applies when")
        widths = [max(len(r[i]) for r in rows + [head]) for i in range(4)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(head, widths)).rstrip()]
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        return "\n".join(lines)


def bounds_table(n: int, q: int, d: Optional[int] = None, s: Optional[int] = None,
                 r: Optional[int] = None) -> BoundsTable:
    entries: list[BoundEntry] = []
    if n >= 2:
        entries += [
            BoundEntry("schmidt", schmidt_bound(n, q), "two quadrics, no common component"),
            BoundEntry("aubry", aubry_bound(n, q), "two quadrics, no common component"),
            BoundEntry("theorem", edoukou_bound(n, q), "two quadrics, no common hyperplane"),
        ]
    if n >= 3:
        entries.append(BoundEntry("ls", ls_bound(n, q), "pair of full order n+1"))
        for b in eh_bound(n, q):
            entries.append(BoundEntry(b.label, b.value, f"one quadric non-degenerate; {b.condition}"))
    if r is not None:
        entries.append(BoundEntry("conj1", conj1_bound(n, r, q),
                                  f"conjectural; Q1 degenerate of rank {r}, max EH branch"))
    if d is not None and s is not None:
        entries += [
            BoundEntry("tss", tss_bound(d, s, q), "conjectural for codim > 1; proven for hypersurfaces"),
            BoundEntry("lachaud", lachaud_bound(d, s, q), "algebraic set of degree d, dimension s"),
            BoundEntry("lachaud_conj", lachaud_conj_bound(d, s, n, q), "conjectural"),
        ]
    return BoundsTable(n, q, d, s, r, tuple(entries))
