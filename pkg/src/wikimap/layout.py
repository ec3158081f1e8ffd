"""Deterministic 2-D force-directed layout of the co-occurrence network."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .errors import EmptyGraph, NonFiniteCoordinate

EXACT_REPULSION_MAX_NODES = 2000


@dataclass(frozen=True)
class LayoutParams:
    seed: int = 0
    iterations: int = 500
    initial_temperature: float = 0.1  # fraction of the unit layout side
    cooling: float = 0.995
    min_separation: float = 1e-4

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if not 0.0 < self.cooling < 1.0:
            raise ValueError("cooling must be in (0, 1)")
        if self.seed < 0 or self.seed >= 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.initial_temperature <= 0 or self.min_separation <= 0:
            raise ValueError("temperature and min separation must be positive")


@dataclass(frozen=True)
class LayoutPoints:
    ids: np.ndarray  # node ids, ascending
    xy: np.ndarray  # shape (n, 2), normalized to the unit square

    def __len__(self):
        return len(self.ids)

    def as_dict(self) -> dict:
        return {int(i): (float(x), float(y)) for i, (x, y) in zip(self.ids, self.xy)}

    def to_tsv(self) -> str:
        lines = ["id\tx\ty"]
        lines.extend(f"{int(i)}\t{x:.9f}\t{y:.9f}" for i, (x, y) in zip(self.ids, self.xy))
        return "\n".join(lines) + "\n"


def normalize_coords(xy) -> np.ndarray:
    """Map the bounding box onto [0, 1]^2 keeping the aspect ratio.

    The longer side spans [0, 1]; the shorter one is centred.
    """
    xy = np.asarray(xy, dtype=np.float64).reshape(-1, 2)
    if len(xy) == 0:
        raise ValueError("need at least one point")
    if not np.isfinite(xy).all():
        raise NonFiniteCoordinate("layout produced non-finite coordinates")
    lo = xy.min(axis=0)
    extent = xy.max(axis=0) - lo
    side = extent.max()
    if len(xy) == 1 or side == 0.0:
        return np.full_like(xy, 0.5)
    return (xy - lo) / side + (1.0 - extent / side) / 2.0


def layout_graph(
    n_nodes: int,
    src,
    dst,
    weight,
    params: LayoutParams = LayoutParams(),
    on_iteration: Optional[Callable[[int, float, float], None]] = None,
) -> np.ndarray:
    """Annealed weighted Fruchterman-Reingold layout; returns normalized xy.

    Attraction along an edge is ``w * d**2 / k`` and repulsion between
    nodes ``k**2 / d`` with ``k = 1 / sqrt(n)`` on a unit square. Above
    ``EXACT_REPULSION_MAX_NODES`` nodes, repulsion only acts within
    ``2k`` via a uniform cell grid. A node's move per iteration is capped
    by the temperature, which starts at ``initial_temperature`` and is
    multiplied by ``cooling`` after each iteration.

    ``on_iteration(i, temperature, largest_move)`` is called after each
    iteration when given.
    """
    if n_nodes < 1:
        raise EmptyGraph("cannot lay out an empty graph")
    rng = np.random.default_rng(params.seed)
    pos = rng.random((n_nodes, 2))
    if n_nodes == 1:
        return normalize_coords(pos)
    src = np.ascontiguousarray(src, dtype=np.int64)
    dst = np.ascontiguousarray(dst, dtype=np.int64)
    weight = np.ascontiguousarray(weight, dtype=np.float64)
    k = 1.0 / math.sqrt(n_nodes)
    backend = _kernels.active()
    step = backend.fr_step_exact if n_nodes <= EXACT_REPULSION_MAX_NODES else backend.fr_step_grid
    temp = params.initial_temperature
    for it in range(params.iterations):
        pos, moved = step(pos, src, dst, weight, k, temp, params.min_separation)
        if on_iteration is not None:
            on_iteration(it, temp, moved)
        temp *= params.cooling
    return normalize_coords(pos)


def layout_force(
    network,
    params: LayoutParams = LayoutParams(),
    nodes=None,
    on_iteration=None,
) -> LayoutPoints:
    """Lay out ``network`` (or the subgraph induced by ``nodes``)."""
    if nodes is None:
        ids = np.arange(network.n_nodes, dtype=np.int64)
    else:
        ids = np.unique(np.asarray(nodes, dtype=np.int64))
    if len(ids) == 0:
        raise EmptyGraph("cannot lay out an empty graph")
    local = np.full(network.n_nodes, -1, dtype=np.int64)
    local[ids] = np.arange(len(ids))
    keep = (local[network.src] >= 0) & (local[network.dst] >= 0)
    xy = layout_graph(
        len(ids),
        local[network.src[keep]],
        local[network.dst[keep]],
        network.cos[keep],
        params,
        on_iteration,
    )
    return LayoutPoints(ids, xy)
