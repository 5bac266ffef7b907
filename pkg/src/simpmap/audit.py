"""Annotation validity audit against the oracle."""

from __future__ import annotations

from .annotation import AnnotationMatrix
from .complex import SimplicialComplex
from .oracle import betti_numbers, cycle_basis, gf2_rank


class AuditFailure(AssertionError):
    pass


def audit_annotation(K: SimplicialComplex, ann: AnnotationMatrix) -> list[str]:
    """Return a list of violated conditions (empty when the annotation is valid).

    For each dimension: the element count equals the Betti number, every
    row only references active elements, and the annotations of an oracle
    homology basis form a full-rank matrix.
    """
    problems = []
    top = max([K.dim] + [p for p, a in ann.active.items() if a])
    betti = betti_numbers(K, max_dim=top)
    for p in range(top + 1):
        g = ann.rank(p)
        if g != betti[p]:
            problems.append(f"dim {p}: {g} elements but betti {betti[p]}")
            continue
        active = ann.active.get(p, {})
        rows = ann.rows.get(p, {})
        if set(rows) != set(K.simplices(p)):
            problems.append(f"dim {p}: annotated simplices differ from complex")
            continue
        for s, row in rows.items():
            if not row <= active.keys():
                problems.append(f"dim {p}: {s} references retired elements {sorted(row - active.keys())}")
                break
        if g == 0:
            continue
        column = {serial: i for i, serial in enumerate(active)}
        vectors = []
        for z in cycle_basis(K, p):
            bits = 0
            for serial in ann.annotation_of_chain(z):
                if serial in column:
                    bits ^= 1 << column[serial]
            vectors.append(bits)
        r = gf2_rank(vectors)
        if r != g:
            problems.append(f"dim {p}: cycle-basis annotation rank {r} < {g}")
    return problems


def check_annotation(K: SimplicialComplex, ann: AnnotationMatrix) -> None:
    problems = audit_annotation(K, ann)
    if problems:
        raise AuditFailure("; ".join(problems))
