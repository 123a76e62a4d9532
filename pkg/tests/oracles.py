"""Brute-force reference computations for prime fields.

Everything here uses plain integer arithmetic mod p and direct enumeration of
F_p^{n+1}; none of it goes through the package's tables or linear algebra.
"""
from __future__ import annotations

import itertools
import math

import numpy as np


def all_vectors(n: int, p: int) -> np.ndarray:
    return np.array(list(itertools.product(range(p), repeat=n + 1)), dtype=np.int64)


def projective_points(n: int, p: int) -> np.ndarray:
    vecs = all_vectors(n, p)
    keep = []
    for v in vecs:
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            keep.append(v)
    return np.array(keep, dtype=np.int64)


def monomial_pairs(n: int):
    return [(i, j) for i in range(n + 1) for j in range(i, n + 1)]


def eval_forms(coeffs: np.ndarray, vecs: np.ndarray, n: int, p: int) -> np.ndarray:
    """Values of forms (rows of coeffs, lexicographic x_i x_j order) at vecs."""
    mons = np.stack([vecs[:, i] * vecs[:, j] % p for i, j in monomial_pairs(n)], axis=1)
    return (np.atleast_2d(coeffs) @ mons.T) % p


def naive_count(coeff_list, n: int, p: int) -> int:
    """Points of P^n(F_p) where every listed quadratic form vanishes."""
    pts = projective_points(n, p)
    vals = eval_forms(np.array(coeff_list), pts, n, p)
    return int((vals == 0).all(axis=0).sum())


class RadicalOracle:
    """{w : f(u + w) = f(u) for all u} by exhausting u and w."""

    def __init__(self, n: int, p: int):
        self.n, self.p = n, p
        self.vecs = all_vectors(n, p)
        size = len(self.vecs)
        weights = p ** np.arange(n, -1, -1)
        sums = (self.vecs[:, None, :] + self.vecs[None, :, :]) % p
        self.sum_index = (sums * weights).sum(axis=2)  # [w, u] -> index of u + w
        assert self.sum_index.shape == (size, size)

    def radical_mask(self, coeffs) -> np.ndarray:
        vals = eval_forms(np.array(coeffs), self.vecs, self.n, self.p)[0]
        return (vals[self.sum_index] == vals[None, :]).all(axis=1)

    def dim(self, mask: np.ndarray) -> int:
        size = int(mask.sum())
        d = round(math.log(size, self.p))
        assert self.p ** d == size
        return d


class HyperplaneOracle:
    """Which hyperplanes of P^n(F_p) lie inside a quadric, by point enumeration."""

    def __init__(self, n: int, p: int):
        self.n, self.p = n, p
        self.points = projective_points(n, p)
        self.incidence = (self.points @ self.points.T) % p == 0  # [hyperplane, point]

    def contained(self, coeffs) -> np.ndarray:
        zero = eval_forms(np.array(coeffs), self.points, self.n, self.p)[0] == 0
        return ~(self.incidence & ~zero[None, :]).any(axis=1)


def gl_matrices(dim: int, p: int):
    """Every invertible dim x dim matrix over F_p (determinant by cofactor expansion)."""
    def det(m):
        if len(m) == 1:
            return m[0][0]
        return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]])
                   for j in range(len(m)))

    for entries in itertools.product(range(p), repeat=dim * dim):
        m = [list(entries[r * dim:(r + 1) * dim]) for r in range(dim)]
        if det(m) % p:
            yield m


def naive_count_terms(term_maps, n: int, p: int) -> int:
    """Like naive_count, for forms given as {monomial tuple: coeff} of any degree."""
    total = 0
    for v in projective_points(n, p).tolist():
        ok = True
        for terms in term_maps:
            val = sum(c * math.prod(v[i] for i in mono) for mono, c in terms.items()) % p
            if val:
                ok = False
                break
        total += ok
    return total
