"""Per-dimension Z2 annotation matrices.

Each p-simplex carries a sparse binary vector, stored as a frozenset of the
element serials whose entry is 1.  An element is one column of the matrix,
i.e. one cocycle of the maintained cohomology basis, and is stamped with
the time it was created.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .complex import Simplex, SimplicialComplex, facets

Row = frozenset

ZERO: Row = frozenset()


class AnnotationError(ValueError):
    pass


class UnknownSimplex(AnnotationError):
    pass


class ZeroVector(AnnotationError):
    pass


class NotAFace(AnnotationError):
    pass


@dataclass(frozen=True, order=True)
class Timestamp:
    """Creation time of an element: filtration grade plus a global sequence."""

    grade: float
    seq: int


@dataclass(frozen=True, order=True)
class ElementId:
    dim: int
    serial: int


@dataclass
class AnnotationMatrix:
    """Annotation rows for every dimension plus the active element registry."""

    rows: dict[int, dict[Simplex, Row]] = field(default_factory=dict)
    # serial -> Timestamp, per dimension; insertion order is creation order
    active: dict[int, dict[int, Timestamp]] = field(default_factory=dict)
    _next_serial: dict[int, int] = field(default_factory=dict)

    # -- rows ------------------------------------------------------------

    def add_simplex(self, s: Simplex) -> None:
        self.rows.setdefault(len(s) - 1, {})[s] = ZERO

    def drop_simplex(self, s: Simplex) -> Row:
        try:
            return self.rows[len(s) - 1].pop(s)
        except KeyError:
            raise UnknownSimplex(s) from None

    def __getitem__(self, s: Simplex) -> Row:
        try:
            return self.rows[len(s) - 1][s]
        except KeyError:
            raise UnknownSimplex(s) from None

    def __setitem__(self, s: Simplex, row: Row) -> None:
        d = len(s) - 1
        if s not in self.rows.get(d, {}):
            raise UnknownSimplex(s)
        self.rows[d][s] = frozenset(row)

    def __contains__(self, s) -> bool:
        return tuple(s) in self.rows.get(len(s) - 1, {})

    def rank(self, p: int) -> int:
        """Number of active elements in dimension ``p``."""
        return len(self.active.get(p, {}))

    def elements(self, p: int) -> list[ElementId]:
        return [ElementId(p, k) for k in self.active.get(p, {})]

    def timestamp(self, e: ElementId) -> Timestamp:
        return self.active[e.dim][e.serial]

    # -- operations ------------------------------------------------------

    def annotation_of_chain(self, chain: Iterable[Simplex]) -> Row:
        acc: set[int] = set()
        for s in chain:
            acc.symmetric_difference_update(self[s])
        return frozenset(acc)

    def boundary_annotation(self, s: Simplex) -> Row:
        return self.annotation_of_chain(facets(s))

    def add_element(self, p: int, marked: Simplex, t: Timestamp) -> ElementId:
        """Append a new element: 1 on ``marked``, 0 elsewhere.

        The previous entries of ``marked`` are cleared.
        """
        if marked not in self.rows.get(p, {}):
            raise UnknownSimplex(marked)
        serial = self._next_serial.get(p, 0)
        self._next_serial[p] = serial + 1
        self.active.setdefault(p, {})[serial] = t
        self.rows[p][marked] = frozenset((serial,))
        return ElementId(p, serial)

    def youngest(self, p: int, w: Row) -> int:
        stamps = self.active[p]
        return max(w, key=lambda k: stamps[k].seq)

    def kill_element(self, p: int, w: Row) -> tuple[ElementId, Timestamp]:
        """Force the class annotated by ``w`` to zero.

        The youngest element ``u`` of ``w`` is retired: ``w`` is added to
        every p-row with a 1 in column ``u``, which clears that column.
        Returns the retired element and its creation timestamp.
        """
        if not w:
            raise ZeroVector("cannot kill with a zero annotation")
        u = self.youngest(p, w)
        rows = self.rows.get(p, {})
        for s, row in rows.items():
            if u in row:
                rows[s] = row ^ w
        t = self.active[p].pop(u)
        return ElementId(p, u), t

    def transfer(self, K: SimplicialComplex, sigma: Simplex, tau: Simplex) -> None:
        """Add ann(sigma) to every codimension-1 coface of its facet ``tau``."""
        if len(tau) != len(sigma) - 1 or not set(tau) <= set(sigma):
            raise NotAFace(f"{tau} is not a facet of {sigma}")
        a = self[sigma]
        if not a:
            return
        rows = self.rows[len(sigma) - 1]
        for c in K.cofaces(tau):
            rows[c] = rows[c] ^ a

    # -- debug -----------------------------------------------------------

    def dump(self) -> str:
        """One line per simplex: vertices, ``|``, then ``serial:bit`` pairs."""
        lines = []
        for p in sorted(self.rows):
            serials = list(self.active.get(p, {}))
            for s in sorted(self.rows[p]):
                row = self.rows[p][s]
                bits = " ".join(f"{k}:{int(k in row)}" for k in serials)
                lines.append(f"{' '.join(map(str, s))} | {bits}".rstrip())
        return "\n".join(lines) + ("\n" if lines else "")
