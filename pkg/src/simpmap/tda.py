"""Point-cloud filtrations: greedy nets, Rips complexes, sparsified Rips
and graph-induced-complex sequences connected by vertex collapses."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .complex import Simplex, SimplicialComplex, simplex_order
from .engine import Collapse, Filtration, Insert

# relative slack for "distance <= r" so that exactly-at-scale pairs count
REL_TOL = 1e-9


def within(d, r: float):
    return d <= r * (1 + REL_TOL)


@dataclass
class PointCloud:
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise ValueError("points must be an (n, D) array with D >= 1")
        self.points = pts
        self._dist = cdist(pts, pts)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def distances(self) -> np.ndarray:
        return self._dist

    def dist(self, i: int, j: int) -> float:
        return float(self._dist[i, j])

    def diameter(self) -> float:
        return float(self._dist.max()) if len(self) else 0.0


def delta_net(V: Sequence[int], delta: float, cloud: PointCloud) -> list[int]:
    """Greedy farthest-point delta-net of ``V``, seeded at its lowest index.

    Points are added while the farthest remaining one is more than
    ``delta`` from the net, giving coverage <= delta and separation > delta.
    """
    V = sorted(V)
    if not V:
        raise ValueError("empty point set")
    D = cloud.distances[np.ix_(V, V)]
    chosen = [0]
    nearest = D[0].copy()
    while True:
        far = int(np.argmax(nearest))  # first maximum = lowest index
        if nearest[far] <= delta:
            break
        chosen.append(far)
        nearest = np.minimum(nearest, D[far])
    return sorted(V[i] for i in chosen)


def nearest_map(V: Sequence[int], net: Sequence[int], cloud: PointCloud) -> dict[int, int]:
    """Assign each point of V to its closest net point, ties to the lowest index."""
    net = sorted(net)
    D = cloud.distances[np.ix_(list(V), net)]
    return {v: net[int(np.argmin(D[i]))] for i, v in enumerate(V)}


def net_radius(alpha: float, eps: float, k: int) -> float:
    """Radius of the net V_{k+1} taken inside V_k."""
    return alpha * eps ** 2 / 2 * (1 + eps) ** (k - 1)


@dataclass
class NetHierarchy:
    """Nested nets V_0 >= V_1 >= ... >= V_m with nearest-point maps between levels."""

    levels: list[list[int]]
    maps: list[dict[int, int]]  # maps[k]: V_k -> V_{k+1}
    radii: list[float] = field(default_factory=list)  # radii[k] for V_{k+1}

    @classmethod
    def build(cls, cloud: PointCloud, alpha: float, eps: float, m: int) -> "NetHierarchy":
        levels = [list(range(len(cloud)))]
        maps, radii = [], []
        for k in range(m):
            delta = net_radius(alpha, eps, k)
            nxt = delta_net(levels[-1], delta, cloud) if delta > 0 else list(levels[-1])
            maps.append(nearest_map(levels[-1], nxt, cloud))
            levels.append(nxt)
            radii.append(delta)
        return cls(levels, maps, radii)

    def composed(self, k: int) -> dict[int, int]:
        """V_0 -> V_{k+1}: maps[k] o ... o maps[0]."""
        out = {v: v for v in self.levels[0]}
        for j in range(k + 1):
            out = {v: self.maps[j][w] for v, w in out.items()}
        return out


def _check_params(alpha: float, eps: float, m: int) -> None:
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not 0 <= eps <= 1:
        raise ValueError(f"eps must lie in [0, 1], got {eps}")
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")


def scale(alpha: float, eps: float, k: int) -> float:
    return alpha * (1 + eps) ** k


def rips_simplices(cloud: PointCloud, subset: Sequence[int], r: float, max_dim: int) -> list[Simplex]:
    """Cliques of the r-neighborhood graph on ``subset`` with at most max_dim+1 vertices."""
    subset = sorted(subset)
    D = cloud.distances
    nbrs = {v: [w for w in subset if w > v and within(D[v, w], r)] for v in subset}
    out: list[Simplex] = []

    def grow(s: Simplex, cand: list[int]) -> None:
        out.append(s)
        if len(s) > max_dim:
            return
        for i, w in enumerate(cand):
            grow(s + (w,), [x for x in cand[i + 1:] if within(D[w, x], r)])

    for v in subset:
        grow((v,), nbrs[v])
    return sorted(out, key=simplex_order)


def rips(cloud: PointCloud, subset: Sequence[int], r: float, max_dim: int) -> SimplicialComplex:
    if r < 0:
        raise ValueError("negative Rips scale")
    K = SimplicialComplex(max_dim=max_dim)
    for s in rips_simplices(cloud, subset, r, max_dim):
        K.insert(s)
    return K


def exact_rips_filtration(cloud: PointCloud, alpha: float, eps: float, m: int,
                          max_dim: int) -> Filtration:
    """Inclusions Rips^{a_0}(V) -> ... -> Rips^{a_m}(V), a_k = alpha (1+eps)^k.

    Each simplex is graded by the first scale at which it appears.
    """
    _check_params(alpha, eps, m)
    scales = [scale(alpha, eps, k) for k in range(m + 1)]
    D = cloud.distances
    graded = []
    for s in rips_simplices(cloud, range(len(cloud)), scales[-1], max_dim):
        diam = max((D[a, b] for i, a in enumerate(s) for b in s[i + 1:]), default=0.0)
        k = next(k for k, a in enumerate(scales) if within(diam, a))
        graded.append((k, s))
    graded.sort(key=lambda t: (t[0], len(t[1]), t[1]))
    return Filtration([Insert(s, scales[k]) for k, s in graded])


def _image(simplices, vmap) -> set[Simplex]:
    return {tuple(sorted({vmap[x] for x in s})) for s in simplices}


@dataclass
class Stage:
    """End state of one stage of a generated filtration."""

    grade: float
    vertices: list[int]
    simplices: set[Simplex]


def sparse_rips_filtration(cloud: PointCloud, alpha: float, eps: float, m: int, max_dim: int,
                           stages: list[Stage] | None = None) -> Filtration:
    """Rips^{a_0}(V_0) -> Rips^{a_1}(V_1) -> ... -> Rips^{a_m}(V_m) via nearest-point maps.

    Stage k+1 collapses every point of V_k - V_{k+1} onto its nearest net
    point and then inserts the simplices of Rips^{a_{k+1}}(V_{k+1}) still
    missing, all at grade a_{k+1}.  When ``stages`` is given, the expected
    complex at the end of each stage is appended to it.
    """
    _check_params(alpha, eps, m)
    H = NetHierarchy.build(cloud, alpha, eps, m)
    D = cloud.distances
    a0 = scale(alpha, eps, 0)
    current = rips_simplices(cloud, H.levels[0], a0, max_dim)
    ops: list = [Insert(s, a0) for s in current]
    current = set(current)
    if stages is not None:
        stages.append(Stage(a0, H.levels[0], set(current)))
    for k in range(m):
        a = scale(alpha, eps, k + 1)
        pi = H.maps[k]
        for s in current:
            if len(s) == 2:
                x, y = pi[s[0]], pi[s[1]]
                if not within(D[x, y], a):
                    raise AssertionError(f"edge {s} maps to {(x, y)} longer than {a}")
        ops.extend(Collapse(pi[w], w, a) for w in H.levels[k] if pi[w] != w)
        moved = _image(current, pi)
        target = set(rips_simplices(cloud, H.levels[k + 1], a, max_dim))
        if not moved <= target:
            raise AssertionError("collapse image escapes the next Rips complex")
        ops.extend(Insert(s, a) for s in sorted(target - moved, key=simplex_order))
        current = target
        if stages is not None:
            stages.append(Stage(a, H.levels[k + 1], set(current)))
    return Filtration(ops)


def gic_simplices(cloud: PointCloud, r: float, nu: dict[int, int], max_dim: int) -> set[Simplex]:
    """Images under ``nu`` of the cliques of the r-neighborhood graph on all points."""
    cliques = rips_simplices(cloud, range(len(cloud)), r, max_dim)
    return {t for t in _image(cliques, nu) if len(t) <= max_dim + 1}


def gic(cloud: PointCloud, r: float, net: Sequence[int], nu: dict[int, int],
        max_dim: int) -> SimplicialComplex:
    """Graph induced complex on ``net`` with base graph the 1-skeleton of Rips^r."""
    missing = set(range(len(cloud))) - nu.keys()
    if missing:
        raise ValueError(f"vertex map undefined on {sorted(missing)}")
    if not set(nu.values()) <= set(net):
        raise ValueError("vertex map leaves the net")
    K = SimplicialComplex(max_dim=max_dim)
    for s in sorted(gic_simplices(cloud, r, nu, max_dim), key=simplex_order):
        K.insert(s)
    return K


def gic_filtration(cloud: PointCloud, alpha: float, eps: float, m: int, max_dim: int,
                   stages: list[Stage] | None = None) -> Filtration:
    """G^{a_0}(V_0, V_1) -> G^{a_1}(V_0, V_2) -> ... -> G^{a_{m-1}}(V_0, V_m).

    The run opens with Rips^{a_0}(V_0) at grade a_0.  Stage k (k < m)
    collapses V_k onto V_{k+1} and inserts the missing simplices of
    G^{a_k}(V_0, V_{k+1}), all at grade a_k.
    """
    _check_params(alpha, eps, m)
    if m < 1:
        raise ValueError("a graph induced filtration needs m >= 1")
    H = NetHierarchy.build(cloud, alpha, eps, m)
    a0 = scale(alpha, eps, 0)
    current = rips_simplices(cloud, H.levels[0], a0, max_dim)
    ops: list = [Insert(s, a0) for s in current]
    current = set(current)
    for k in range(m):
        a = scale(alpha, eps, k)
        pi = H.maps[k]
        ops.extend(Collapse(pi[w], w, a) for w in H.levels[k] if pi[w] != w)
        moved = _image(current, pi)
        target = gic_simplices(cloud, a, H.composed(k), max_dim)
        if not moved <= target:
            raise AssertionError("collapse image escapes the next graph induced complex")
        ops.extend(Insert(s, a) for s in sorted(target - moved, key=simplex_order))
        current = target
        if stages is not None:
            stages.append(Stage(a, H.levels[k + 1], set(current)))
    return Filtration(ops)


def steps_to_cover(alpha: float, eps: float, diameter: float, extra: int = 0) -> int:
    """Smallest m with alpha (1+eps)^(m - extra) >= diameter."""
    if eps == 0 or diameter <= alpha:
        return extra
    return max(0, math.ceil(math.log(diameter / alpha) / math.log1p(eps))) + extra
