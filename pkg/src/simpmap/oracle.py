"""Ground truth by standard Z2 linear algebra.

Nothing here touches annotations: ranks come from Gaussian elimination on
bit rows (Python ints) and persistence from the textbook left-to-right
column reduction of the filtered boundary matrix.
"""

from __future__ import annotations

import math
from typing import Iterable

from .complex import Simplex, SimplicialComplex, facets, simplex
from .diagram import PersistenceDiagram


class NotInclusionOnly(ValueError):
    pass


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over Z2 of integer-encoded bit rows."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                rank += 1
                break
    return rank


def _index(K: SimplicialComplex, p: int) -> dict[Simplex, int]:
    return {s: i for i, s in enumerate(K.simplices(p))}


def boundary_rank(K: SimplicialComplex, p: int) -> int:
    """Rank of the boundary map C_p -> C_{p-1}."""
    if p <= 0:
        return 0
    idx = _index(K, p - 1)
    rows = []
    for s in K.simplices(p):
        r = 0
        for f in facets(s):
            r |= 1 << idx[f]
        rows.append(r)
    return gf2_rank(rows)


def betti_numbers(K: SimplicialComplex, max_dim: int | None = None) -> list[int]:
    top = K.dim if max_dim is None else max_dim
    ranks = [boundary_rank(K, p) for p in range(top + 2)]
    return [K.count(p) - ranks[p] - ranks[p + 1] for p in range(top + 1)]


def reduce_persistence(F, keep_zero: bool = False) -> PersistenceDiagram:
    """Standard column reduction of an inclusion-only filtration."""
    from .engine import Insert

    order: dict[Simplex, int] = {}
    dims: list[int] = []
    grades: list[float] = []
    columns: list[set[int]] = []
    for op in F:
        if not isinstance(op, Insert):
            raise NotInclusionOnly(f"{op} is not an insertion")
        s = simplex(op.simplex)
        if s in order:
            raise NotInclusionOnly(f"{s} inserted twice")
        col = set()
        for f in facets(s):
            if f not in order:
                raise NotInclusionOnly(f"face {f} of {s} not yet inserted")
            col.add(order[f])
        order[s] = len(columns)
        dims.append(len(s) - 1)
        grades.append(float(op.grade))
        columns.append(col)

    low_owner: dict[int, int] = {}
    paired: set[int] = set()
    pts = []
    for j, col in enumerate(columns):
        while col:
            low = max(col)
            k = low_owner.get(low)
            if k is None:
                break
            col ^= columns[k]
        if col:
            low = max(col)
            low_owner[low] = j
            paired.update((low, j))
            pts.append((dims[low], grades[low], grades[j]))
    for i in range(len(columns)):
        if i not in paired:
            pts.append((dims[i], grades[i], math.inf))
    D = PersistenceDiagram(pts)
    return D if keep_zero else D.without_zero()


def cycle_basis(K: SimplicialComplex, p: int) -> list[list[Simplex]]:
    """p-cycles whose classes form a basis of H_p(K).

    Runs the reduction on K ordered by dimension, tracking column
    operations for the p-columns; zero p-columns give cycles, and those not
    killed by any (p+1)-column are the essential ones.
    """
    cells = [s for d in range(p + 2) for s in K.simplices(d)]
    pos = {s: i for i, s in enumerate(cells)}
    low_owner: dict[int, int] = {}
    cols: dict[int, set[int]] = {}
    track: dict[int, set[int]] = {}
    cycles: dict[int, set[int]] = {}
    killed: set[int] = set()
    for j, s in enumerate(cells):
        col = {pos[f] for f in facets(s)}
        v = {j}
        while col:
            low = max(col)
            k = low_owner.get(low)
            if k is None:
                break
            col ^= cols[k]
            v ^= track[k]
        cols[j], track[j] = col, v
        if col:
            low = max(col)
            low_owner[low] = j
            killed.add(low)
        elif len(s) - 1 == p:
            cycles[j] = v
    return [sorted((cells[i] for i in v), key=lambda t: t)
            for j, v in sorted(cycles.items()) if j not in killed]
