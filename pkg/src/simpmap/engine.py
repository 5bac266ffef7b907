"""Persistence for sequences of elementary inclusions and vertex collapses.

The engine keeps a simplicial complex together with a valid annotation
for it.  Inserting a simplex either creates a new element (its boundary
annotation is zero) or retires the youngest element present in its
boundary annotation.  Collapsing ``(u, v) -> u`` first inserts whatever
simplices the link condition demands, then moves annotations off the
simplices that vanish, and finally identifies ``v`` with ``u``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Union

from .annotation import AnnotationMatrix, ElementId, Timestamp
from .complex import (ComplexError, Duplicate, MissingFace, Simplex, SimplicialComplex,
                      faces, simplex, simplex_order)
from .diagram import PersistenceDiagram

log = logging.getLogger(__name__)


class EngineError(ComplexError):
    pass


class DeadVertex(EngineError):
    pass


class SameVertex(EngineError):
    pass


class GradeOrderError(EngineError):
    pass


class NotSimplicial(EngineError):
    pass


@dataclass(frozen=True)
class Insert:
    simplex: Simplex
    grade: float = 0.0


@dataclass(frozen=True)
class Collapse:
    u: int
    v: int
    grade: float = 0.0

    def __post_init__(self):
        if self.u == self.v:
            raise SameVertex(f"collapse of {self.u} onto itself")


ElementaryOp = Union[Insert, Collapse]


@dataclass
class Filtration:
    ops: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def is_inclusion_only(self) -> bool:
        return all(isinstance(op, Insert) for op in self.ops)

    def max_dim(self) -> int:
        return max((len(op.simplex) - 1 for op in self.ops if isinstance(op, Insert)), default=0)


@dataclass(frozen=True)
class Birth:
    dim: int
    element: ElementId
    time: Timestamp


@dataclass(frozen=True)
class Death:
    dim: int
    element: ElementId
    birth: Timestamp
    death: Timestamp


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth: Timestamp
    death: Timestamp | None  # None encodes an essential class

    @property
    def death_grade(self) -> float:
        return math.inf if self.death is None else self.death.grade


@dataclass
class CollapseRecord:
    """What happened during one collapse; kept when ``record_collapses`` is on."""

    u: int
    v: int
    grade: float
    repair: list[Simplex]
    vanishing: list[Simplex]
    vanishing_zero: bool
    mirrors_equal: bool
    betti_preserving: bool  # repair set was empty


class Engine:
    """Mutable state of one persistence run.

    Parameters
    ----------
    lenient : bool
        Auto-insert missing faces of an inserted simplex (at the same grade)
        instead of raising :class:`MissingFace`.
    record_collapses : bool
        Keep a :class:`CollapseRecord` per collapse with the transfer
        invariants evaluated just before the simplices are identified.
    """

    def __init__(self, lenient: bool = False, record_collapses: bool = False):
        # repair simplices may exceed the input dimension by one
        self.complex = SimplicialComplex(max_dim=None)
        self.ann = AnnotationMatrix()
        self.lenient = lenient
        self.record_collapses = record_collapses
        self.collapses: list[CollapseRecord] = []
        self.pairs: list[PersistencePair] = []
        self.retired: set[int] = set()
        self._seq = 0
        self._grade = -math.inf

    def _stamp(self, grade: float) -> Timestamp:
        if grade < self._grade:
            raise GradeOrderError(f"grade {grade} after {self._grade}")
        self._grade = grade
        self._seq += 1
        return Timestamp(float(grade), self._seq)

    # -- inclusion -------------------------------------------------------

    def step_insert(self, s: Iterable[int], grade: float) -> list[Birth | Death]:
        s = simplex(tuple(s))
        for x in s:
            if x in self.retired:
                raise DeadVertex(f"vertex {x} was collapsed away")
        if s in self.complex:
            raise Duplicate(f"{s} already present")
        missing = [f for f in faces(s) if f != s and f not in self.complex]
        if missing and not self.lenient:
            raise MissingFace(f"faces {sorted(missing, key=simplex_order)} of {s} absent")
        events: list[Birth | Death] = []
        for f in sorted(missing, key=simplex_order):
            events.extend(self._insert(f, grade))
        events.extend(self._insert(s, grade))
        return events

    def _insert(self, s: Simplex, grade: float) -> list[Birth | Death]:
        t = self._stamp(grade)
        self.complex.insert(s)
        self.ann.add_simplex(s)
        p = len(s) - 1
        w = self.ann.boundary_annotation(s) if p > 0 else frozenset()
        if not w:
            e = self.ann.add_element(p, s, t)
            return [Birth(p, e, t)]
        e, born = self.ann.kill_element(p - 1, w)
        self.pairs.append(PersistencePair(p - 1, born, t))
        return [Death(p - 1, e, born, t)]

    # -- collapse --------------------------------------------------------

    def step_collapse(self, u: int, v: int, grade: float) -> list[Birth | Death]:
        if u == v:
            raise SameVertex(f"collapse of {u} onto itself")
        for x in (u, v):
            if (x,) not in self.complex:
                raise DeadVertex(f"vertex {x} is not live")
        K, ann = self.complex, self.ann

        _, repair = K.link_condition(u, v)
        events: list[Birth | Death] = []
        for s in repair:
            events.extend(self._insert(s, grade))
        if not repair:
            self._stamp(grade)

        edge = (u, v) if u < v else (v, u)
        vanishing = sorted(K.star([edge]), key=simplex_order)
        for s in vanishing:
            ann.transfer(K, s, tuple(x for x in s if x != v))

        if self.record_collapses:
            zero = all(not ann[s] for s in vanishing)
            mirrors = True
            for s in K.star([(v,)]):
                if u in s:
                    continue
                partner = tuple(sorted(u if x == v else x for x in s))
                if partner in K and ann[partner] != ann[s]:
                    mirrors = False
            self.collapses.append(CollapseRecord(u, v, grade, list(repair), vanishing,
                                                 zero, mirrors, not repair))

        for s in reversed(vanishing):
            K.remove(s)
            ann.drop_simplex(s)
        rows = {s: ann.drop_simplex(s) for s in K.star([(v,)])}
        moved = K.rename_vertex(v, u)
        for s, image in moved.items():
            if image is not None:
                ann.add_simplex(image)
                ann[image] = rows[s]
        self.retired.add(v)
        return events

    # -- driving ---------------------------------------------------------

    def step(self, op: ElementaryOp) -> list[Birth | Death]:
        if isinstance(op, Insert):
            return self.step_insert(op.simplex, op.grade)
        return self.step_collapse(op.u, op.v, op.grade)

    def essential_pairs(self) -> list[PersistencePair]:
        out = []
        for p in sorted(self.ann.active):
            for serial, t in self.ann.active[p].items():
                out.append(PersistencePair(p, t, None))
        return out

    def all_pairs(self) -> list[PersistencePair]:
        return self.pairs + self.essential_pairs()

    def diagram(self, keep_zero: bool = False) -> PersistenceDiagram:
        pts = [(q.dim, q.birth.grade, q.death_grade) for q in self.all_pairs()]
        D = PersistenceDiagram(pts)
        return D if keep_zero else D.without_zero()


Observer = Callable[[int, ElementaryOp, Engine], None]


def run(F: Filtration | Iterable[ElementaryOp], keep_zero: bool = False, lenient: bool = False,
        observer: Observer | None = None, engine: Engine | None = None) -> PersistenceDiagram:
    """Process every op of ``F`` and return its persistence diagram.

    ``observer(index, op, engine)`` is called after each op; audits hook in
    there.  Errors are re-raised with the failing op index attached.
    """
    E = engine if engine is not None else Engine(lenient=lenient)
    for i, op in enumerate(F):
        try:
            E.step(op)
        except ComplexError as exc:
            raise type(exc)(f"op {i}: {exc}") from exc
        if observer is not None:
            observer(i, op, E)
    return E.diagram(keep_zero=keep_zero)


def decompose_map(K: SimplicialComplex, vmap: Mapping[int, int], K2: SimplicialComplex,
                  grade: float = 0.0) -> list[ElementaryOp]:
    """Split the simplicial map K -> K2 induced by ``vmap`` into elementary ops.

    Vertices are expected to be named so that ``vmap`` is the identity off
    the collapsed classes and each class contains its own target.  Classes
    are handled by ascending target, sources within a class ascending.
    """
    verts = K.vertices()
    for x in verts:
        if x not in vmap:
            raise NotSimplicial(f"vertex {x} has no image")
        if (vmap[x],) not in K2:
            raise NotSimplicial(f"image {vmap[x]} of {x} not in target")
    image = set()
    for s in K:
        t = tuple(sorted({vmap[x] for x in s}))
        if t not in K2:
            raise NotSimplicial(f"image {t} of {s} not in target")
        image.add(t)
    classes: dict[int, list[int]] = {}
    for x in verts:
        classes.setdefault(vmap[x], []).append(x)
    ops: list[ElementaryOp] = []
    for w in sorted(classes):
        src = classes[w]
        if len(src) == 1:
            if src[0] != w:
                raise ValueError(f"vertex {src[0]} maps injectively to {w}; rename first")
            continue
        if w not in src:
            raise ValueError(f"class {src} does not contain its target {w}; rename first")
        ops.extend(Collapse(w, x, grade) for x in src if x != w)
    extra = sorted(K2.as_set() - image, key=simplex_order)
    ops.extend(Insert(s, grade) for s in extra)
    return ops
