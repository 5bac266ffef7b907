"""Simplicial complex store with star / closure / link queries.

Simplices are plain tuples of strictly ascending vertex ids.  The complex
keeps, for every simplex, the set of its codimension-1 cofaces so that
coface enumeration (used on the collapse hot path) is a dictionary lookup.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from itertools import combinations

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Base class for complex mutation/query errors."""


class MissingFace(ComplexError):
    pass


class Duplicate(ComplexError):
    pass


class NotInComplex(ComplexError):
    pass


class InvalidMerge(ComplexError):
    pass


class DimensionTooLarge(ComplexError):
    pass


def simplex(*vertices: int) -> Simplex:
    """Normalize vertex ids into a canonical simplex tuple."""
    if len(vertices) == 1 and not isinstance(vertices[0], int):
        vertices = tuple(vertices[0])
    s = tuple(sorted(int(v) for v in vertices))
    if not s:
        raise ComplexError("a simplex needs at least one vertex")
    if any(a == b for a, b in zip(s, s[1:])):
        raise ComplexError(f"repeated vertex in {s}")
    if s[0] < 0:
        raise ComplexError(f"negative vertex id in {s}")
    return s


def facets(s: Simplex) -> list[Simplex]:
    """Codimension-1 faces of ``s`` (empty for a vertex)."""
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def faces(s: Simplex) -> Iterator[Simplex]:
    """All nonempty faces of ``s``, including ``s`` itself."""
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


def simplex_order(s: Simplex) -> tuple[int, Simplex]:
    """Sort key: dimension first, then lexicographic vertex order."""
    return (len(s), s)


class SimplicialComplex:
    """A face-closed family of simplices.

    Parameters
    ----------
    max_dim : int or None
        Largest simplex dimension accepted by :meth:`insert`.  ``None``
        disables the cap.
    """

    def __init__(self, max_dim: int | None = 3):
        self.max_dim = max_dim
        self._cofaces: dict[Simplex, set[Simplex]] = {}
        self._by_dim: dict[int, set[Simplex]] = {}

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[int]],
                       max_dim: int | None = 3) -> "SimplicialComplex":
        """Build the closure of ``simplices``."""
        closed = set()
        for s in simplices:
            closed.update(faces(simplex(tuple(s))))
        K = cls(max_dim=max_dim)
        for s in sorted(closed, key=simplex_order):
            K.insert(s)
        return K

    def copy(self) -> "SimplicialComplex":
        K = SimplicialComplex(self.max_dim)
        K._cofaces = {s: set(c) for s, c in self._cofaces.items()}
        K._by_dim = {d: set(ss) for d, ss in self._by_dim.items()}
        return K

    # -- basic container protocol ---------------------------------------

    def __contains__(self, s) -> bool:
        return tuple(s) in self._cofaces

    def __len__(self) -> int:
        return len(self._cofaces)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self._cofaces, key=simplex_order))

    def __eq__(self, other) -> bool:
        if isinstance(other, SimplicialComplex):
            return self._cofaces.keys() == other._cofaces.keys()
        return NotImplemented

    def __repr__(self) -> str:
        counts = [len(self._by_dim.get(d, ())) for d in range(self.dim + 1)]
        return f"SimplicialComplex(counts={counts})"

    def as_set(self) -> set[Simplex]:
        return set(self._cofaces)

    @property
    def dim(self) -> int:
        live = [d for d, ss in self._by_dim.items() if ss]
        return max(live) if live else -1

    def simplices(self, dim: int) -> list[Simplex]:
        return sorted(self._by_dim.get(dim, ()))

    def count(self, dim: int) -> int:
        return len(self._by_dim.get(dim, ()))

    def vertices(self) -> list[int]:
        return sorted(s[0] for s in self._by_dim.get(0, ()))

    def cofaces(self, s: Simplex) -> set[Simplex]:
        """Codimension-1 cofaces of ``s``."""
        try:
            return self._cofaces[s]
        except KeyError:
            raise NotInComplex(f"{s} not in complex") from None

    # -- mutation --------------------------------------------------------

    def insert(self, s: Simplex) -> None:
        s = simplex(s)
        if s in self._cofaces:
            raise Duplicate(f"{s} already in complex")
        d = len(s) - 1
        if self.max_dim is not None and d > self.max_dim:
            raise DimensionTooLarge(f"{s} exceeds max_dim={self.max_dim}")
        fs = facets(s)
        for f in fs:
            if f not in self._cofaces:
                raise MissingFace(f"face {f} of {s} is absent")
        for f in fs:
            self._cofaces[f].add(s)
        self._cofaces[s] = set()
        self._by_dim.setdefault(d, set()).add(s)

    def remove(self, s: Simplex) -> None:
        """Remove a simplex that has no cofaces."""
        cof = self.cofaces(s)
        if cof:
            raise ComplexError(f"{s} still has cofaces {sorted(cof)}")
        for f in facets(s):
            self._cofaces[f].discard(s)
        del self._cofaces[s]
        self._by_dim[len(s) - 1].discard(s)

    def rename_vertex(self, old: int, new: int) -> dict[Simplex, Simplex | None]:
        """Replace ``old`` by ``new`` in every simplex containing ``old``.

        Simplices whose image already exists merge with it.  Returns the
        map from each moved simplex to its image, or ``None`` where the
        simplex merged into an existing one.  No simplex may contain both
        vertices (delete vanishing simplices first).
        """
        moved = sorted(self.star([(old,)]), key=simplex_order)
        for s in moved:
            if new in s:
                raise InvalidMerge(f"{s} contains both {old} and {new}")
        images = {s: tuple(sorted(new if x == old else x for x in s)) for s in moved}
        for s in reversed(moved):
            self.remove(s)
        result: dict[Simplex, Simplex | None] = {}
        for s in moved:
            t = images[s]
            if t in self._cofaces:
                result[s] = None
                continue
            try:
                self.insert(t)
            except MissingFace as exc:
                raise InvalidMerge(str(exc)) from None
            result[s] = t
        return result

    # -- queries ---------------------------------------------------------

    def _check(self, X: Iterable[Simplex]) -> list[Simplex]:
        X = [tuple(x) for x in X]
        for x in X:
            if x not in self._cofaces:
                raise NotInComplex(f"{x} not in complex")
        return X

    def star(self, X: Iterable[Simplex]) -> set[Simplex]:
        """Every simplex having some member of ``X`` as a face."""
        out: set[Simplex] = set()
        stack = self._check(X)
        while stack:
            s = stack.pop()
            if s in out:
                continue
            out.add(s)
            stack.extend(self._cofaces[s])
        return out

    def closure(self, X: Iterable[Simplex]) -> "SimplicialComplex":
        return SimplicialComplex.from_simplices(self._check(X), max_dim=None)

    def link(self, X: Iterable[Simplex]) -> set[Simplex]:
        """closure(star X) minus star(closure X)."""
        X = self._check(X)
        st = self.star(X)
        closed_st: set[Simplex] = set()
        for s in st:
            closed_st.update(faces(s))
        cl: set[Simplex] = set()
        for x in X:
            cl.update(faces(x))
        return closed_st - self.star(cl)

    def vertex_link(self, u: int) -> set[Simplex]:
        """Link of a single vertex: {t : t + u in K, u not in t}."""
        return {tuple(x for x in s if x != u) for s in self.star([(u,)]) if len(s) > 1}

    def link_condition(self, u: int, v: int) -> tuple[bool, list[Simplex]]:
        """Check the link condition for the pair (u, v).

        Returns ``(satisfied, S)`` where ``S`` lists the simplices whose
        insertion (in order) makes the condition hold: the edge uv when
        missing, then ``t + {u, v}`` for each ``t`` in
        ``Lk u & Lk v - Lk uv``, sorted by dimension then vertex order.
        """
        self._check([(u,), (v,)])
        if u == v:
            raise ComplexError("link condition needs two distinct vertices")
        edge = (u, v) if u < v else (v, u)
        common = self.vertex_link(u) & self.vertex_link(v)
        if edge in self._cofaces:
            edge_link = {tuple(x for x in s if x != u and x != v)
                         for s in self.star([edge]) if len(s) > 2}
            missing = []
        else:
            edge_link = set()
            missing = [edge]
        repair = sorted((tuple(sorted(t + edge)) for t in common - edge_link),
                        key=simplex_order)
        S = missing + repair
        return (not S, S)

    def is_closed(self) -> bool:
        """Exhaustive face-closure check plus coface index consistency."""
        for s in self._cofaces:
            for f in faces(s):
                if f not in self._cofaces:
                    return False
        rebuilt: dict[Simplex, set[Simplex]] = {s: set() for s in self._cofaces}
        for s in self._cofaces:
            for f in facets(s):
                rebuilt[f].add(s)
        return rebuilt == self._cofaces
