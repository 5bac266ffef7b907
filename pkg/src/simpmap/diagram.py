"""Persistence diagrams, log-scale transform and bottleneck distance."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

INF = math.inf

Pair = tuple[int, float, float]


class NonpositiveCoordinate(ValueError):
    pass


def _sort_key(p: Pair):
    return (p[0], p[1], p[2])


@dataclass
class PersistenceDiagram:
    """Multiset of ``(dim, birth, death)`` triples; ``death`` may be ``inf``."""

    pairs: list[Pair] = field(default_factory=list)

    def __post_init__(self):
        self.pairs = sorted(((int(d), float(b), float(x)) for d, b, x in self.pairs),
                            key=_sort_key)
        for d, b, x in self.pairs:
            if x < b:
                raise ValueError(f"death before birth in {(d, b, x)}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return self.pairs == other.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def dims(self) -> list[int]:
        return sorted({p[0] for p in self.pairs})

    def in_dim(self, dim: int) -> list[tuple[float, float]]:
        return [(b, x) for d, b, x in self.pairs if d == dim]

    def essential(self, dim: int) -> list[float]:
        return [b for b, x in self.in_dim(dim) if math.isinf(x)]

    def finite(self, dim: int) -> list[tuple[float, float]]:
        return [(b, x) for b, x in self.in_dim(dim) if not math.isinf(x)]

    def without_zero(self) -> "PersistenceDiagram":
        return PersistenceDiagram([p for p in self.pairs if p[2] > p[1]])

    def restrict(self, dims: Iterable[int]) -> "PersistenceDiagram":
        dims = set(dims)
        return PersistenceDiagram([p for p in self.pairs if p[0] in dims])

    def __repr__(self) -> str:
        return f"PersistenceDiagram({self.pairs})"


def log_scale(D: PersistenceDiagram) -> PersistenceDiagram:
    """Natural log of births and finite deaths."""
    out = []
    for d, b, x in D:
        if b <= 0 or x <= 0:
            raise NonpositiveCoordinate(f"cannot take log of {(d, b, x)}")
        out.append((d, math.log(b), x if math.isinf(x) else math.log(x)))
    return PersistenceDiagram(out)


def _essential_distance(a: list[float], b: list[float]) -> float:
    if len(a) != len(b):
        return INF
    if not a:
        return 0.0
    # sorted pairing minimizes the max difference on the line
    return max(abs(x - y) for x, y in zip(sorted(a), sorted(b)))


def _feasible(A: np.ndarray, B: np.ndarray, t: float) -> bool:
    """Perfect matching of A + diag(B) against B + diag(A) at threshold t."""
    n, m = len(A), len(B)
    size = n + m
    rows, cols = [], []
    if n and m:
        cost = np.maximum(np.abs(A[:, None, 0] - B[None, :, 0]),
                          np.abs(A[:, None, 1] - B[None, :, 1]))
        i, j = np.nonzero(cost <= t)
        rows.extend(i.tolist())
        cols.extend(j.tolist())
    half_a = (A[:, 1] - A[:, 0]) / 2 if n else np.empty(0)
    half_b = (B[:, 1] - B[:, 0]) / 2 if m else np.empty(0)
    # point of A to its own diagonal projection
    for i in np.nonzero(half_a <= t)[0]:
        rows.append(int(i))
        cols.append(m + int(i))
    # diagonal projection of B to its point
    for j in np.nonzero(half_b <= t)[0]:
        rows.append(n + int(j))
        cols.append(int(j))
    # diagonal to diagonal is free
    for j in range(m):
        for i in range(n):
            rows.append(n + j)
            cols.append(m + i)
    if not rows:
        return size == 0
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def _finite_distance(a: list[tuple[float, float]], b: list[tuple[float, float]]) -> float:
    if not a and not b:
        return 0.0
    A = np.asarray(a, dtype=float).reshape(-1, 2)
    B = np.asarray(b, dtype=float).reshape(-1, 2)
    candidates = {0.0}
    candidates.update(((A[:, 1] - A[:, 0]) / 2).tolist())
    candidates.update(((B[:, 1] - B[:, 0]) / 2).tolist())
    if len(A) and len(B):
        cost = np.maximum(np.abs(A[:, None, 0] - B[None, :, 0]),
                          np.abs(A[:, None, 1] - B[None, :, 1]))
        candidates.update(cost.ravel().tolist())
    values = sorted(candidates)
    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(A, B, values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return values[lo]


def bottleneck_by_dim(D1: PersistenceDiagram, D2: PersistenceDiagram) -> dict[int, float]:
    """Bottleneck distance in each homology dimension present in either diagram.

    Zero-persistence pairs are ignored.  Essential pairs match essential
    pairs only, at cost ``|birth difference|``; a mismatch in essential
    counts gives ``inf`` for that dimension.
    """
    D1, D2 = D1.without_zero(), D2.without_zero()
    out = {}
    for d in sorted(set(D1.dims()) | set(D2.dims())):
        out[d] = max(_essential_distance(D1.essential(d), D2.essential(d)),
                     _finite_distance(D1.finite(d), D2.finite(d)))
    return out


def bottleneck(D1: PersistenceDiagram, D2: PersistenceDiagram, dim: int | None = None) -> float:
    """Bottleneck distance; the max over dimensions unless ``dim`` is given."""
    per = bottleneck_by_dim(D1, D2)
    if dim is not None:
        return per.get(dim, 0.0)
    return max(per.values(), default=0.0)


def essential_counts_match(D1: PersistenceDiagram, D2: PersistenceDiagram) -> bool:
    dims = set(D1.dims()) | set(D2.dims())
    return all(len(D1.essential(d)) == len(D2.essential(d)) for d in dims)

