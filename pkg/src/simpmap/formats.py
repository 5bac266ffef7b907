"""Plain-text file formats: filtrations, point clouds and diagrams.

Filtration files::

    # simpfilt v1
    t 0.5          set the grade for the following ops (non-decreasing)
    i 0 1 2        insert a simplex
    c 3 7          collapse (3, 7) -> 3

Ops before the first ``t`` line get grades 1, 2, 3, ...
Diagram files hold one ``dim birth death`` line per pair, ``inf`` for
essential classes, values with 9 significant digits.
"""

from __future__ import annotations

import math

import numpy as np

from .diagram import PersistenceDiagram
from .engine import Collapse, Filtration, Insert
from .tda import PointCloud

HEADER = "# simpfilt v1"


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def parse_filtration(text: str) -> Filtration:
    ops = []
    grade = None
    auto = 0
    for n, line in _lines(text):
        tok = line.split()
        kind, args = tok[0], tok[1:]
        try:
            if kind == "t":
                if len(args) != 1:
                    raise ValueError("expected one grade")
                g = float(args[0])
                if math.isnan(g):
                    raise ValueError("grade is NaN")
                last = grade if grade is not None else (auto if auto else -math.inf)
                if g < last:
                    raise ValueError(f"grade {g} decreases (previous {last})")
                grade = g
                continue
            nums = [int(a) for a in args]
        except ValueError as exc:
            raise ParseError(n, str(exc)) from None
        if grade is None:
            auto += 1
            g = float(auto)
        else:
            g = grade
        if kind == "i":
            if not nums or len(set(nums)) != len(nums) or min(nums) < 0:
                raise ParseError(n, "insert needs distinct nonnegative vertex ids")
            ops.append(Insert(tuple(sorted(nums)), g))
        elif kind == "c":
            if len(nums) != 2 or nums[0] == nums[1]:
                raise ParseError(n, "collapse needs two distinct vertices")
            ops.append(Collapse(nums[0], nums[1], g))
        else:
            raise ParseError(n, f"unknown op {kind!r}")
    return Filtration(ops)


def serialize_filtration(F: Filtration) -> str:
    out = [HEADER]
    grade = None
    for op in F:
        if op.grade != grade:
            grade = op.grade
            out.append(f"t {grade!r}")
        if isinstance(op, Insert):
            out.append("i " + " ".join(map(str, op.simplex)))
        else:
            out.append(f"c {op.u} {op.v}")
    return "\n".join(out) + "\n"


def parse_points(text: str) -> PointCloud:
    rows = []
    for n, line in _lines(text):
        try:
            rows.append([float(x) for x in line.split()])
        except ValueError as exc:
            raise ParseError(n, str(exc)) from None
        if len(rows[-1]) != len(rows[0]):
            raise ParseError(n, f"expected {len(rows[0])} coordinates, got {len(rows[-1])}")
    if not rows:
        raise ParseError(0, "no points")
    return PointCloud(np.array(rows))


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.9g}"


def format_diagram(D: PersistenceDiagram) -> str:
    return "".join(f"{d} {_fmt(b)} {_fmt(x)}\n" for d, b, x in D)


def parse_diagram(text: str) -> PersistenceDiagram:
    pts = []
    for n, line in _lines(text):
        tok = line.split()
        if len(tok) != 3:
            raise ParseError(n, "expected 'dim birth death'")
        try:
            pts.append((int(tok[0]), float(tok[1]), float(tok[2])))
        except ValueError as exc:
            raise ParseError(n, str(exc)) from None
    return PersistenceDiagram(pts)
