"""Epsilon-nets, nested quantization chains and covering-number bounds.

Everything here works on finite point sets with the Euclidean metric.
Continuous action sets are handled by discretizing them first (grid or
quasi-uniform sample) and building the chain over the discretization.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

__all__ = [
    "PointSet",
    "EpsilonNet",
    "QuantizationChain",
    "greedy_epsilon_net",
    "compute_k0",
    "build_quantization_chain",
    "quantize",
    "covering_number_bounds",
]


@dataclass(frozen=True)
class PointSet:
    """A finite set of points in R^d under the Euclidean distance."""

    points: np.ndarray  # shape (n, d)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("PointSet needs a nonempty (n, d) array of points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("PointSet coordinates must be finite")
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def diameter(self) -> float:
        d2 = _pairwise_sq(self.points, self.points)
        return float(np.sqrt(d2.max()))

    def radius(self) -> float:
        """Max distance from the origin (ball convention)."""
        return float(np.linalg.norm(self.points, axis=1).max())


def _pairwise_sq(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = a[:, None, :] - b[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


@dataclass(frozen=True)
class EpsilonNet:
    """Centers plus a point -> center assignment with covering radius epsilon."""

    epsilon: float
    center_indices: tuple  # indices into the underlying PointSet
    assignment: tuple  # per point: index into the PointSet (a center)

    def covering_radius(self, space: PointSet) -> float:
        pts = space.points
        centers = pts[np.asarray(self.assignment)]
        return float(np.linalg.norm(pts - centers, axis=1).max())


def _nearest(points: np.ndarray, center_idx: Sequence[int], all_points: np.ndarray) -> np.ndarray:
    """Assign each row of `points` to the nearest center, ties to the lowest
    position in `center_idx` (centers are kept sorted by point index)."""
    centers = all_points[np.asarray(center_idx)]
    d2 = _pairwise_sq(points, centers)
    pick = np.argmin(d2, axis=1)  # argmin returns the first minimum
    return np.asarray(center_idx)[pick]


def greedy_epsilon_net(
    space: PointSet,
    epsilon: float,
    candidates: Optional[Sequence[int]] = None,
    first_pick: Optional[int] = None,
) -> EpsilonNet:
    """Farthest-point greedy epsilon-net over `space` (or a candidate subset).

    The first center is the lowest-index candidate unless `first_pick` is
    given; subsequent centers are the farthest-from-chosen candidate point
    (first max on ties) until every candidate is within epsilon of a center.
    Every point of the space is then assigned to its nearest center.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    pts = space.points
    cand = np.arange(space.size) if candidates is None else np.asarray(sorted(candidates))
    if cand.size == 0:
        raise ValueError("empty candidate set")
    cpts = pts[cand]

    start = int(cand[0]) if first_pick is None else int(first_pick)
    if start not in set(int(i) for i in cand):
        raise ValueError("first_pick must be a candidate index")
    chosen = [start]
    dist = np.linalg.norm(cpts - pts[start], axis=1)
    while dist.max() > epsilon:
        far = int(np.argmax(dist))
        chosen.append(int(cand[far]))
        dist = np.minimum(dist, np.linalg.norm(cpts - pts[int(cand[far])], axis=1))

    centers = tuple(sorted(chosen))
    assignment = tuple(int(i) for i in _nearest(pts, centers, pts))
    return EpsilonNet(epsilon=float(epsilon), center_indices=centers, assignment=assignment)


def compute_k0(space: PointSet, alpha: float = 2.0, unit_ball: bool = False) -> int:
    """Largest integer k with alpha**-k >= diameter (or >= radius in ball mode)."""
    if alpha <= 1:
        raise ValueError("alpha must be > 1")
    scale = space.radius() if unit_ball else space.diameter()
    if scale <= 0:
        raise ValueError("degenerate point set: zero diameter/radius")
    k = math.floor(-math.log(scale) / math.log(alpha))
    # guard against floating-point drift at the boundary
    while alpha ** (-k) < scale:
        k -= 1
    while alpha ** (-(k + 1)) >= scale:
        k += 1
    return int(k)


@dataclass(frozen=True)
class QuantizationChain:
    """Nested nets at scales alpha**-k with exactly composable projections.

    levels maps k -> EpsilonNet, for k = k0..K_max.  parent_maps[k] maps each
    level-(k+1) center index to a level-k center index; the level-k assignment
    of any point equals the parent map applied to its level-(k+1) assignment.
    """

    space: PointSet
    alpha: float
    k0: int
    K_max: int
    levels: dict  # k -> EpsilonNet
    parent_maps: dict  # k -> {child center idx: parent center idx}, k0 <= k < K_max
    unit_ball: bool = False

    def centers(self, k: int) -> tuple:
        return self.levels[k].center_indices

    def to_json(self) -> str:
        payload = {
            "alpha": self.alpha,
            "k0": self.k0,
            "unit_ball": self.unit_ball,
            "levels": [
                {
                    "k": k,
                    "epsilon": self.levels[k].epsilon,
                    "center_indices": list(self.levels[k].center_indices),
                    "assignment": list(self.levels[k].assignment),
                }
                for k in range(self.k0, self.K_max + 1)
            ],
            "parent_maps": {
                str(k): {str(c): p for c, p in self.parent_maps[k].items()}
                for k in range(self.k0, self.K_max)
            },
        }
        return json.dumps(payload, indent=2)


def build_quantization_chain(
    space: PointSet,
    alpha: float = 2.0,
    K_max: int = 4,
    unit_ball: bool = False,
) -> QuantizationChain:
    """Build a nested chain of nets at scales alpha**-k for k = k0..K_max.

    The finest net is a plain greedy net with nearest-center assignment.
    Coarser nets are built over the centers of the finer net; to keep the
    composed projections within alpha**-k of every point, level k is built at
    the tightened radius alpha**-k minus the measured covering radius of
    level k+1.  The root level holds a single center (covering follows from
    the definition of k0), placed at the lowest-index point, or at the point
    nearest the origin in ball mode.
    """
    if alpha <= 1:
        raise ValueError("alpha must be > 1")
    k0 = compute_k0(space, alpha, unit_ball=unit_ball)
    if K_max <= k0:
        raise ValueError(f"K_max must exceed k0={k0}")
    pts = space.points

    levels: dict = {}
    parent_maps: dict = {}

    def ball_first(cand: Sequence[int]) -> int:
        norms = np.linalg.norm(pts[np.asarray(cand)], axis=1)
        return int(np.asarray(cand)[int(np.argmin(norms))])

    first = ball_first(range(space.size)) if unit_ball else None
    finest = greedy_epsilon_net(space, alpha ** (-K_max), first_pick=first)
    levels[K_max] = finest
    assign = {K_max: np.asarray(finest.assignment)}
    rho = float(np.linalg.norm(pts - pts[assign[K_max]], axis=1).max())

    for k in range(K_max - 1, k0, -1):
        cand = levels[k + 1].center_indices
        eps_k = alpha ** (-k) - rho
        first = ball_first(cand) if unit_ball else None
        sub = greedy_epsilon_net(space, eps_k, candidates=cand, first_pick=first)
        # parent map: each finer center goes to its nearest level-k center
        pmap = {int(c): int(sub.assignment[c]) for c in cand}
        parent_maps[k] = pmap
        composed = np.asarray([pmap[int(c)] for c in assign[k + 1]])
        assign[k] = composed
        levels[k] = EpsilonNet(
            epsilon=float(alpha ** (-k)),
            center_indices=sub.center_indices,
            assignment=tuple(int(i) for i in composed),
        )
        rho = float(np.linalg.norm(pts - pts[composed], axis=1).max())

    # singleton root: covering holds because alpha**-k0 >= diam (or radius)
    cand = levels[k0 + 1].center_indices
    root = ball_first(cand) if unit_ball else int(cand[0])
    parent_maps[k0] = {int(c): root for c in cand}
    root_assign = np.full(space.size, root, dtype=int)
    levels[k0] = EpsilonNet(
        epsilon=float(alpha ** (-k0)),
        center_indices=(root,),
        assignment=tuple(int(i) for i in root_assign),
    )

    return QuantizationChain(
        space=space,
        alpha=float(alpha),
        k0=k0,
        K_max=int(K_max),
        levels=levels,
        parent_maps=parent_maps,
        unit_ball=unit_ball,
    )


def quantize(chain: QuantizationChain, a: Union[int, np.ndarray], k: int) -> int:
    """Project a point onto its level-k center; returns the center's index.

    `a` is either an index into the chain's point set or a coordinate vector,
    in which case it is first mapped to the nearest finest-level center.
    """
    if not chain.k0 <= k <= chain.K_max:
        raise ValueError(f"level {k} outside [{chain.k0}, {chain.K_max}]")
    if isinstance(a, (int, np.integer)):
        idx = int(a)
        if not 0 <= idx < chain.space.size:
            raise ValueError("point index out of range")
        c = int(chain.levels[chain.K_max].assignment[idx])
    else:
        pt = np.asarray(a, dtype=float).reshape(1, -1)
        if pt.shape[1] != chain.space.dimension:
            raise ValueError("dimension mismatch")
        c = int(_nearest(pt, chain.levels[chain.K_max].center_indices, chain.space.points)[0])
    for j in range(chain.K_max - 1, k - 1, -1):
        c = chain.parent_maps[j][c]
    return c


def covering_number_bounds(d: int, epsilon: float) -> tuple:
    """Lower/upper bounds on the covering number of the d-dim unit ball."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if epsilon >= 1:
        return (1.0, 1.0)
    return ((1.0 / epsilon) ** d, (1.0 + 2.0 / epsilon) ** d)
