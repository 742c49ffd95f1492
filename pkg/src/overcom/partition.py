"""Step-1 disjoint clustering: modularity, Louvain, and the spectral
partitioner over the walk-Laplacian embedding.

Both Louvain variants run through one weighted-digraph code path; an
undirected graph enters as its symmetric arc representation, where the
directed gain and quality formulas coincide exactly with the undirected
ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph, Partition
from .walks import diplacian_embedding

__all__ = ["ClusteringConfig", "modularity", "louvain", "spectral_partition"]


@dataclass(frozen=True)
class ClusteringConfig:
    seed: int = 0
    min_gain: float = 1e-9
    max_passes: int = 100

    def __post_init__(self):
        if self.min_gain < 0:
            raise ValueError("min_gain must be >= 0")
        if self.max_passes < 1:
            raise ValueError("max_passes must be >= 1")


def _arc_weight(graph: Graph) -> float:
    return float(graph.m if graph.directed else 2 * graph.m)


def modularity(graph: Graph, partition: Partition) -> float:
    """Partition quality; picks the undirected or directed form to match
    the graph. Self-pair null terms are included, as the formulas state.
    """
    if partition.labels.size != graph.n:
        raise ValueError("partition size does not match graph")
    labels = partition.labels
    k = partition.k
    w = _arc_weight(graph)
    if w == 0:
        raise ValueError("graph has no edges")
    src = np.repeat(np.arange(graph.n), np.diff(graph.out_indptr))
    dst = graph.out_indices
    internal = labels[src] == labels[dst]
    arcs_in = np.bincount(labels[src[internal]], minlength=k).astype(np.float64)
    s_out = np.bincount(labels, weights=graph.d_out.astype(np.float64), minlength=k)
    s_in = np.bincount(labels, weights=graph.d_in.astype(np.float64), minlength=k)
    return float(np.sum(arcs_in / w - s_in * s_out / (w * w)))


class _Level:
    """Weighted digraph arrays for one Louvain aggregation level."""

    __slots__ = ("n", "optr", "oidx", "owt", "iptr", "iidx", "iwt", "sout", "sin")

    def __init__(self, n, optr, oidx, owt, iptr, iidx, iwt):
        self.n = n
        self.optr, self.oidx, self.owt = optr, oidx, owt
        self.iptr, self.iidx, self.iwt = iptr, iidx, iwt
        self.sout = np.zeros(n, dtype=np.float64)
        np.add.at(self.sout, np.repeat(np.arange(n), np.diff(optr)), owt)
        self.sin = np.zeros(n, dtype=np.float64)
        np.add.at(self.sin, np.repeat(np.arange(n), np.diff(iptr)), iwt)


def _weighted_csr(src, dst, wt, n):
    order = np.lexsort((dst, src))
    src, dst, wt = src[order], dst[order], wt[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum(np.bincount(src, minlength=n))
    return indptr, dst, wt


def _level_from_graph(graph: Graph) -> _Level:
    arcs = graph.out_indices.shape[0]
    return _Level(
        graph.n,
        graph.out_indptr.copy(), graph.out_indices.copy(), np.ones(arcs),
        graph.in_indptr.copy(), graph.in_indices.copy(), np.ones(arcs),
    )


def _aggregate(level: _Level, dense_labels: np.ndarray, k: int) -> _Level:
    src = dense_labels[np.repeat(np.arange(level.n), np.diff(level.optr))]
    dst = dense_labels[level.oidx]
    order = np.lexsort((dst, src))
    src, dst, wt = src[order], dst[order], level.owt[order]
    first = np.ones(src.size, dtype=bool)
    first[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
    starts = np.flatnonzero(first)
    w_sum = np.add.reduceat(wt, starts)
    a_src, a_dst = src[starts], dst[starts]
    optr, oidx, owt = _weighted_csr(a_src, a_dst, w_sum, k)
    iptr, iidx, iwt = _weighted_csr(a_dst, a_src, w_sum, k)
    return _Level(k, optr, oidx, owt, iptr, iidx, iwt)


def _dense_relabel(labels: np.ndarray) -> tuple[np.ndarray, int]:
    uniq, dense = np.unique(labels, return_inverse=True)
    return dense.astype(np.int64), uniq.size


def louvain(graph: Graph, config: ClusteringConfig | None = None) -> Partition:
    """Two-phase Louvain (local moves, then aggregation), deterministic for
    a given seed. Visit order is a seeded shuffle; the best-gain move wins,
    ties going to the lowest community id.
    """
    config = config or ClusteringConfig()
    if graph.n == 0:
        raise ValueError("empty graph")
    if graph.m == 0:
        raise ValueError("graph has no edges")
    total_w = _arc_weight(graph)
    rng = np.random.default_rng(config.seed)
    level = _level_from_graph(graph)
    mapping = np.arange(graph.n, dtype=np.int64)
    for _ in range(config.max_passes):
        order = rng.permutation(level.n).astype(np.int64)
        labels = np.arange(level.n, dtype=np.int64)
        comm_out = level.sout.copy()
        comm_in = level.sin.copy()
        level_gain = 0.0
        for _sweep in range(config.max_passes):
            gain = _kernels.louvain_sweep(
                level.optr, level.oidx, level.owt,
                level.iptr, level.iidx, level.iwt,
                level.sout, level.sin, comm_out, comm_in,
                labels, order, total_w)
            level_gain += gain
            if gain < config.min_gain:
                break
        dense, k = _dense_relabel(labels)
        if k == level.n:  # nothing moved at this level
            break
        mapping = dense[mapping]
        if level_gain < config.min_gain or k == 1:
            break
        level = _aggregate(level, dense, k)
    return Partition.from_labels(mapping)


def _kmeans(coords: np.ndarray, k: int, rng: np.random.Generator,
            max_iter: int = 100) -> np.ndarray:
    """Lloyd iterations with k-means++ seeding; empty clusters are
    re-seeded from the point farthest from its assigned center.
    """
    n = coords.shape[0]
    centers = np.empty((k, coords.shape[1]), dtype=np.float64)
    centers[0] = coords[int(rng.integers(n))]
    d2 = ((coords - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total > 0:
            pick = int(rng.choice(n, p=d2 / total))
        else:
            pick = int(rng.integers(n))
        centers[j] = coords[pick]
        d2 = np.minimum(d2, ((coords - centers[j]) ** 2).sum(axis=1))
    labels = np.full(n, -1, dtype=np.int64)
    for _ in range(max_iter):
        dist = ((coords[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = dist.argmin(axis=1)
        assigned = dist[np.arange(n), new_labels]
        for j in range(k):
            if not (new_labels == j).any():
                far = int(assigned.argmax())
                new_labels[far] = j
                assigned[far] = 0.0
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for j in range(k):
            centers[j] = coords[labels == j].mean(axis=0)
    return labels


def spectral_partition(graph: Graph, k: int,
                       config: ClusteringConfig | None = None) -> Partition:
    """k-way clustering of the walk-Laplacian embedding (k-means on the
    2k-dimensional coordinates). k = n degenerates to singletons.
    """
    config = config or ClusteringConfig()
    if not 2 <= k <= graph.n:
        raise ValueError(f"k must satisfy 2 <= k <= n (got k = {k}, n = {graph.n})")
    if k == graph.n:
        return Partition.from_labels(np.arange(graph.n))
    emb = diplacian_embedding(graph, k)
    rng = np.random.default_rng(config.seed)
    labels = _kmeans(emb.coords, k, rng)
    return Partition.from_labels(labels)
