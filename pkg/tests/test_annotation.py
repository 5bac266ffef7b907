import pytest

from simpmap.annotation import (AnnotationMatrix, NotAFace, Timestamp, UnknownSimplex,
                                ZeroVector)
from simpmap.complex import SimplicialComplex


def t(seq):
    return Timestamp(float(seq), seq)


def test_rows_start_at_zero():
    A = AnnotationMatrix()
    A.add_simplex((0,))
    assert A[(0,)] == frozenset()
    assert (0,) in A and (1,) not in A
    with pytest.raises(UnknownSimplex):
        A[(1,)]
    with pytest.raises(UnknownSimplex):
        A[(1,)] = {0}


def test_add_element_marks_only_new_simplex():
    A = AnnotationMatrix()
    for s in [(0,), (1,)]:
        A.add_simplex(s)
    e0 = A.add_element(0, (0,), t(1))
    e1 = A.add_element(0, (1,), t(2))
    assert (e0.serial, e1.serial) == (0, 1)
    assert A[(0,)] == {0} and A[(1,)] == {1}
    assert A.rank(0) == 2
    assert A.timestamp(e1) == t(2)


def test_vertex_boundary_cancels():
    # two vertices in one component carry the same class: 1 + 1 = 0
    A = AnnotationMatrix()
    for s in [(0,), (1,), (0, 1)]:
        A.add_simplex(s)
    A[(0,)] = {0}
    A[(1,)] = {0}
    A.active[0] = {0: t(1)}
    assert A.boundary_annotation((0, 1)) == frozenset()


def test_kill_element_retires_youngest():
    A = AnnotationMatrix()
    for s in [(0,), (1,), (2,)]:
        A.add_simplex(s)
        A.add_element(0, s, t(s[0] + 1))
    e, born = A.kill_element(0, frozenset({0, 2}))
    assert e.serial == 2 and born == t(3)
    assert A[(2,)] == {0}
    assert A[(0,)] == {0} and A[(1,)] == {1}
    assert sorted(A.active[0]) == [0, 1]
    with pytest.raises(ZeroVector):
        A.kill_element(0, frozenset())


def test_youngest_follows_timestamps_not_serials():
    A = AnnotationMatrix()
    A.active[1] = {0: Timestamp(1.0, 9), 1: Timestamp(1.0, 3)}
    assert A.youngest(1, frozenset({0, 1})) == 0


def test_transfer_adds_to_cofaces_of_facet():
    K = SimplicialComplex.from_simplices([(0, 1), (0, 2), (0, 3)])
    A = AnnotationMatrix()
    for s in K:
        A.add_simplex(s)
    A[(0, 1)] = {0, 1}
    A[(0, 2)] = {0}
    A.transfer(K, (0, 1), (0,))
    assert A[(0, 1)] == frozenset()
    assert A[(0, 2)] == {1}
    assert A[(0, 3)] == {0, 1}
    with pytest.raises(NotAFace):
        A.transfer(K, (0, 1), (2,))


def test_annotation_of_chain_is_xor():
    A = AnnotationMatrix()
    for s in [(0, 1), (1, 2), (0, 2)]:
        A.add_simplex(s)
    A[(0, 1)] = {0}
    A[(1, 2)] = {0, 1}
    assert A.annotation_of_chain([(0, 1), (1, 2), (0, 2)]) == {1}


def test_dump_format():
    A = AnnotationMatrix()
    for s in [(0,), (1,), (0, 1)]:
        A.add_simplex(s)
    A.add_element(0, (0,), t(1))
    assert A.dump() == "0 | 0:1\n1 | 0:0\n0 1 |\n"
    assert AnnotationMatrix().dump() == ""
