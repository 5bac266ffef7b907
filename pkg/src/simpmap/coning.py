"""Coning construction for an elementary collapse, used to cross-check collapses.

For a collapse ``(u, v) -> u`` of K, the coned complex is
``K + {s + u : s in closure(star v)}``.  The collapse image embeds in it,
and the homology of the image and of the coned complex agree.  Simplicial
maps are represented by vertex maps (dicts); identity where absent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .complex import NotInComplex, Simplex, SimplicialComplex, faces, simplex_order
from .engine import NotSimplicial
from .oracle import betti_numbers


@dataclass
class ConingResult:
    khat: SimplicialComplex
    added: set[Simplex]


def image(s: Simplex, vmap: Mapping[int, int]) -> Simplex:
    return tuple(sorted({vmap.get(x, x) for x in s}))


def map_complex(K: SimplicialComplex, vmap: Mapping[int, int]) -> SimplicialComplex:
    """The image f(K) of K under the simplicial map induced by ``vmap``."""
    return SimplicialComplex.from_simplices((image(s, vmap) for s in K), max_dim=None)


def collapse_image(K: SimplicialComplex, u: int, v: int) -> SimplicialComplex:
    return map_complex(K, {v: u})


def cone_complex(K: SimplicialComplex, u: int, v: int) -> ConingResult:
    if (u,) not in K or (v,) not in K:
        raise NotInComplex(f"{u} or {v} not a vertex of the complex")
    closed_star = set()
    for s in K.star([(v,)]):
        closed_star.update(faces(s))
    base = K.as_set()
    added = {tuple(sorted(set(s) | {u})) for s in closed_star} - base
    khat = SimplicialComplex(max_dim=None)
    for s in sorted(base | added, key=simplex_order):
        khat.insert(s)
    return ConingResult(khat, added)


def _check_simplicial(K1: SimplicialComplex, K2: SimplicialComplex, f: Mapping[int, int]) -> None:
    for s in K1:
        if image(s, f) not in K2:
            raise NotSimplicial(f"image of {s} is not in the target")


def is_contiguous(K1: SimplicialComplex, K2: SimplicialComplex,
                  f: Mapping[int, int], g: Mapping[int, int]) -> bool:
    """True iff f(s) | g(s) is a simplex of K2 for every simplex s of K1."""
    _check_simplicial(K1, K2, f)
    _check_simplicial(K1, K2, g)
    return all(tuple(sorted(set(image(s, f)) | set(image(s, g)))) in K2 for s in K1)


def coning_checks(K: SimplicialComplex, u: int, v: int) -> dict[str, bool]:
    """All coning consequences for the collapse (u, v) -> u of K."""
    kp = collapse_image(K, u, v)
    khat = cone_complex(K, u, v).khat
    top = max(khat.dim, kp.dim)
    collapse = {v: u}
    return {
        "image_in_cone": kp.as_set() <= khat.as_set(),
        "betti_cone_equals_image": betti_numbers(khat, top) == betti_numbers(kp, top),
        # the inclusion K -> Khat vs. collapse followed by Khat's inclusion of K'
        "contiguous_i_vs_collapse": is_contiguous(K, khat, {}, collapse),
        # projection of Khat onto K' included back vs. the identity on Khat
        "contiguous_projection_vs_identity": is_contiguous(khat, khat, collapse, {}),
    }
