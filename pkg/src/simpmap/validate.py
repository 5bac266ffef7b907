"""Run a filtration with every available cross-check switched on."""

from __future__ import annotations

from dataclasses import dataclass, field

from .audit import audit_annotation
from .coning import collapse_image, coning_checks
from .engine import Collapse, Engine, Filtration
from .oracle import betti_numbers


@dataclass
class Check:
    op: int
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    engine: Engine | None = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def summary(self) -> dict[str, tuple[int, int]]:
        """check name -> (passed, total)."""
        out: dict[str, tuple[int, int]] = {}
        for c in self.checks:
            p, t = out.get(c.name, (0, 0))
            out[c.name] = (p + c.ok, t + 1)
        return out


def validate_filtration(F: Filtration, lenient: bool = False, coning: bool = True,
                        engine: Engine | None = None) -> Report:
    """Replay ``F`` auditing the annotation after every op.

    Each collapse additionally gets: the transfer invariants (vanishing rows
    zero, mirror rows equal), a comparison of the resulting complex with the
    independently computed collapse image, Betti preservation when no
    repair was needed, and the coning checks on the pre-collapse complex.
    """
    E = engine or Engine(lenient=lenient, record_collapses=True)
    E.record_collapses = True
    report = Report(engine=E)
    add = report.checks.append
    for i, op in enumerate(F):
        before = None
        if isinstance(op, Collapse):
            before = E.complex.copy()
            if coning:
                for name, ok in coning_checks(before, op.u, op.v).items():
                    add(Check(i, name, ok))
        E.step(op)
        problems = audit_annotation(E.complex, E.ann)
        add(Check(i, "annotation_valid", not problems, "; ".join(problems)))
        if before is not None:
            rec = E.collapses[-1]
            add(Check(i, "vanishing_rows_zero", rec.vanishing_zero))
            add(Check(i, "mirror_rows_equal", rec.mirrors_equal))
            add(Check(i, "complex_equals_image",
                      E.complex.as_set() == collapse_image(before, op.u, op.v).as_set()))
            if rec.betti_preserving:
                top = max(before.dim, 0)
                add(Check(i, "link_condition_preserves_betti",
                          betti_numbers(before, top) == betti_numbers(E.complex, top)))
    return report
