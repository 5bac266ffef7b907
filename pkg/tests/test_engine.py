import random

import pytest

from conftest import load_fixture, random_inclusion_filtration, random_mixed_filtration
from simpmap.audit import audit_annotation
from simpmap.complex import MissingFace, SimplicialComplex
from simpmap.diagram import PersistenceDiagram
from simpmap.engine import (Birth, Collapse, DeadVertex, Death, Engine, Filtration,
                            GradeOrderError, Insert, NotSimplicial, SameVertex,
                            decompose_map, run)
from simpmap.oracle import betti_numbers, reduce_persistence

INF = float("inf")


def test_filled_triangle_diagram():
    D = run(load_fixture("filled_triangle.txt"))
    assert D == PersistenceDiagram([(0, 1, INF), (0, 2, 4), (0, 3, 5), (1, 6, 7)])


def test_keep_zero_pairs():
    F = Filtration([Insert((0,), 0), Insert((1,), 0), Insert((0, 1), 0)])
    assert run(F) == PersistenceDiagram([(0, 0, INF)])
    assert run(F, keep_zero=True) == PersistenceDiagram([(0, 0, INF), (0, 0, 0)])


def test_events():
    E = Engine()
    assert isinstance(E.step_insert((0,), 0)[0], Birth)
    E.step_insert((1,), 1)
    (ev,) = E.step_insert((0, 1), 2)
    assert isinstance(ev, Death)
    assert ev.dim == 0 and ev.birth.grade == 1 and ev.death.grade == 2


def test_strict_and_lenient_insert():
    E = Engine()
    with pytest.raises(MissingFace):
        E.step_insert((0, 1, 2), 0)
    E = Engine(lenient=True)
    E.step_insert((0, 1, 2), 0)
    assert len(E.complex) == 7
    assert E.diagram() == PersistenceDiagram([(0, 0, INF)])


def test_grades_must_not_decrease():
    E = Engine()
    E.step_insert((0,), 2)
    with pytest.raises(GradeOrderError):
        E.step_insert((1,), 1)


def test_collapse_guards():
    with pytest.raises(SameVertex):
        Collapse(1, 1)
    E = Engine()
    E.step_insert((0,), 0)
    E.step_insert((1,), 0)
    with pytest.raises(DeadVertex):
        E.step_collapse(0, 5, 0)
    E.step_collapse(0, 1, 0)
    with pytest.raises(DeadVertex):
        E.step_insert((1,), 0)


def test_collapse_of_two_components_kills_one():
    E = Engine()
    E.step_insert((0,), 0)
    E.step_insert((1,), 1)
    E.step_collapse(0, 1, 2)
    # the repair edge joins the components and the younger class dies
    assert E.diagram() == PersistenceDiagram([(0, 0, INF), (0, 1, 2)])
    assert E.complex.as_set() == {(0,)}


def test_collapse_filled_triangle_preserves_homology():
    E = Engine(record_collapses=True)
    for s in [(0,), (1,), (2,), (0, 1), (1, 2), (0, 2), (0, 1, 2)]:
        E.step_insert(s, 0)
    E.step_collapse(0, 1, 1)
    rec = E.collapses[-1]
    assert rec.repair == [] and rec.betti_preserving
    assert rec.vanishing == [(0, 1), (0, 1, 2)]
    assert E.complex.as_set() == {(0,), (2,), (0, 2)}
    assert audit_annotation(E.complex, E.ann) == []


def test_collapse_hollow_triangle_kills_loop():
    E = Engine()
    for s in [(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)]:
        E.step_insert(s, 0)
    E.step_collapse(0, 1, 3)
    assert E.diagram() == PersistenceDiagram([(0, 0, INF), (1, 0, 3)])


def test_errors_carry_op_index():
    F = Filtration([Insert((0,), 0), Insert((0, 1), 1)])
    with pytest.raises(MissingFace, match="op 1"):
        run(F)


def test_observer_sees_every_op():
    seen = []
    run(load_fixture("collapse_with_repair.txt"), observer=lambda i, op, E: seen.append(i))
    assert seen == list(range(len(load_fixture("collapse_with_repair.txt"))))


@pytest.mark.parametrize("seed", range(15))
def test_random_inclusions_match_oracle(seed):
    F = random_inclusion_filtration(random.Random(seed), n_simplices=120, n_verts=10)
    assert run(F) == reduce_persistence(F)
    assert run(F, keep_zero=True) == reduce_persistence(F, keep_zero=True)


@pytest.mark.parametrize("seed", range(8))
def test_random_mixed_stay_valid(seed):
    F = random_mixed_filtration(random.Random(seed), n_ops=60)
    E = Engine()
    for op in F:
        E.step(op)
        assert audit_annotation(E.complex, E.ann) == []


def test_decompose_map_roundtrip():
    K = SimplicialComplex.from_simplices([(0, 1), (1, 2), (2, 3)])
    K2 = SimplicialComplex.from_simplices([(0, 2), (2, 4)])
    vmap = {0: 0, 1: 0, 2: 2, 3: 2}
    ops = decompose_map(K, vmap, K2, grade=1.0)
    assert ops == [Collapse(0, 1, 1.0), Collapse(2, 3, 1.0), Insert((4,), 1.0),
                   Insert((2, 4), 1.0)]
    E = Engine()
    for s in K:
        E.step_insert(s, 0)
    for op in ops:
        E.step(op)
    assert E.complex.as_set() == K2.as_set()


def test_decompose_map_rejects_bad_maps():
    K = SimplicialComplex.from_simplices([(0, 1)])
    with pytest.raises(NotSimplicial):
        decompose_map(K, {0: 0, 1: 1}, SimplicialComplex.from_simplices([(0,), (1,)]))
    with pytest.raises(NotSimplicial):
        decompose_map(K, {0: 0}, K)
    with pytest.raises(ValueError):
        decompose_map(K, {0: 5, 1: 5}, SimplicialComplex.from_simplices([(5,)]))


def test_betti_after_collapses_matches_image():
    F = load_fixture("collapse_with_repair.txt")
    E = Engine()
    for op in F:
        E.step(op)
    assert betti_numbers(E.complex, 2) == [1, 2, 0]
