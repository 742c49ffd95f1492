"""Random-walk machinery: transition rows, walk profiles, stationary
distributions, and the walk-based vertex embeddings.

Dense constructions (embeddings, the normalized walk Laplacian) are desk
scale and refuse inputs above ``DENSE_CAP`` vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph, strongly_connected

__all__ = [
    "ConvergenceError",
    "StationaryDistribution",
    "Embedding",
    "transition_row",
    "walk_profile",
    "stationary_distribution",
    "walktrap_embedding",
    "diplacian",
    "diplacian_embedding",
    "embedding_to_csv",
    "DENSE_CAP",
]

DENSE_CAP = 5000


class ConvergenceError(RuntimeError):
    """Iteration budget exhausted before reaching tolerance."""


@dataclass(frozen=True)
class StationaryDistribution:
    """Stationary row vector of the walk: phi P = phi, positive, sums to 1."""

    phi: np.ndarray
    iterations: int
    residual: float

    def __post_init__(self):
        self.phi.setflags(write=False)
        if self.phi.size == 0 or self.phi.min() <= 0.0:
            raise ValueError("stationary distribution must be strictly positive")
        if abs(float(self.phi.sum()) - 1.0) > 1e-12:
            raise ValueError("stationary distribution must sum to 1")


@dataclass(frozen=True)
class Embedding:
    """Vertex coordinates; kind is "walk-profile" (param=t) or "diplacian" (param=k)."""

    coords: np.ndarray
    kind: str
    param: int

    def __post_init__(self):
        self.coords.setflags(write=False)
        if not np.isfinite(self.coords).all():
            raise ValueError("embedding has non-finite coordinates")

    @property
    def label(self) -> str:
        return f"{self.kind}({self.param})"


def _invd(graph: Graph) -> np.ndarray:
    d = graph.d_out.astype(np.float64)
    inv = np.zeros_like(d)
    np.divide(1.0, d, out=inv, where=d > 0)
    return inv


def transition_row(graph: Graph, u: int) -> np.ndarray:
    """Row u of P = D^-1 A. Errors on a sink (d_out = 0)."""
    if graph.d_out[u] == 0:
        raise ValueError(f"vertex {u} has no outgoing arcs (sink)")
    row = np.zeros(graph.n, dtype=np.float64)
    row[graph.out_neighbors(u)] = 1.0 / graph.d_out[u]
    return row


def walk_profile(graph: Graph, u: int, t: int) -> np.ndarray:
    """Distribution of a t-step walk from u (row u of P^t)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    x = np.zeros(graph.n, dtype=np.float64)
    x[u] = 1.0
    if t == 0:
        return x
    invd = _invd(graph)
    has_sinks = bool((graph.d_out == 0).any())
    for _ in range(t):
        if has_sinks:
            bad = np.flatnonzero((x > 0) & (graph.d_out == 0))
            if bad.size:
                raise ValueError(f"vertex {int(bad[0])} has no outgoing arcs (sink)")
        x = _kernels.push_step(graph.out_indptr, graph.out_indices, invd, x)
    return x


def stationary_distribution(graph: Graph, tol: float = 1e-12,
                            max_iter: int | None = None,
                            teleport: float = 0.0) -> StationaryDistribution:
    """Power-iterate the lazy chain (I + P)/2 from uniform until the
    stationarity residual ||x P - x||_1 drops to tol.

    ``teleport`` mixes in uniform jumps, P' = (1 - a) P + a U, which lifts
    the strong-connectivity requirement (dangling mass also goes uniform).
    """
    n = graph.n
    if n == 0:
        raise ValueError("empty graph has no stationary distribution")
    if not 0.0 <= teleport < 1.0:
        raise ValueError("teleport must be in [0, 1)")
    if teleport == 0.0 and not strongly_connected(graph):
        raise ValueError("graph is not strongly connected; "
                         "set teleport > 0 for a well-defined walk")
    if max_iter is None:
        max_iter = 100 * n
    invd = _invd(graph)
    sinks = np.flatnonzero(graph.d_out == 0)
    x = np.full(n, 1.0 / n, dtype=np.float64)
    for it in range(max_iter + 1):
        y = _kernels.push_step(graph.out_indptr, graph.out_indices, invd, x)
        if teleport > 0.0:
            dangling = float(x[sinks].sum()) if sinks.size else 0.0
            y = (1.0 - teleport) * (y + dangling / n) + teleport / n
        residual = float(np.abs(y - x).sum())
        if residual <= tol:
            return StationaryDistribution(phi=x, iterations=it, residual=residual)
        x = 0.5 * (x + y)
        x /= x.sum()
    raise ConvergenceError(
        f"stationary distribution did not reach tol={tol:g} within "
        f"{max_iter} iterations (residual {residual:.3e})")


def _check_dense(n: int, what: str):
    if n > DENSE_CAP:
        raise ValueError(f"{what} is dense and capped at n <= {DENSE_CAP} (got n = {n})")


def walktrap_embedding(graph: Graph, t: int = 4) -> Embedding:
    """Coordinates Coord(u)_w = d_w^(-1/2) P^t[u, w] for undirected graphs."""
    if graph.directed:
        raise ValueError("walk-profile embedding needs an undirected graph; "
                         "use diplacian_embedding for digraphs")
    if t < 1:
        raise ValueError("t must be >= 1")
    if not strongly_connected(graph):
        raise ValueError("graph must be connected")
    _check_dense(graph.n, "the walk-profile embedding")
    if (graph.d_out == 0).any():
        raise ValueError("degree-zero vertex has no walk profile")
    prof = np.zeros((graph.n, graph.n), dtype=np.float64)
    _kernels.walk_matrix(graph.out_indptr, graph.out_indices, _invd(graph), t, prof)
    coords = prof * (graph.degrees.astype(np.float64) ** -0.5)[None, :]
    return Embedding(coords=coords, kind="walk-profile", param=t)


def diplacian(graph: Graph, phi) -> np.ndarray:
    """Normalized walk Laplacian Gamma = Phi^(1/2) (I - P) Phi^(-1/2), dense."""
    _check_dense(graph.n, "the normalized walk Laplacian")
    phi = phi.phi if isinstance(phi, StationaryDistribution) else np.asarray(phi, dtype=np.float64)
    if phi.shape != (graph.n,):
        raise ValueError("phi has the wrong length")
    if phi.min() <= 0.0:
        raise ValueError("phi must be strictly positive")
    if (graph.d_out == 0).any():
        raise ValueError("sink vertex: transition matrix undefined")
    p = np.zeros((graph.n, graph.n), dtype=np.float64)
    for u in range(graph.n):
        p[u, graph.out_neighbors(u)] = 1.0 / graph.d_out[u]
    sq = np.sqrt(phi)
    return sq[:, None] * (np.eye(graph.n) - p) / sq[None, :]


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    # deterministic orientation: largest-magnitude entry made positive
    i = int(np.argmax(np.abs(vec)))
    return -vec if vec[i] < 0 else vec


def diplacian_embedding(graph: Graph, k: int, tol: float = 1e-12) -> Embedding:
    """2k-dimensional coordinates from the k smallest singular triplets of
    the normalized walk Laplacian: right vectors first, then left, each row
    scaled by phi_u^(-1/2).
    """
    if not 1 <= k < graph.n:
        raise ValueError(f"k must satisfy 1 <= k < n (got k = {k}, n = {graph.n})")
    stat = stationary_distribution(graph, tol=tol)
    gamma = diplacian(graph, stat)
    u_mat, _sigma, vt = np.linalg.svd(gamma)
    cols = []
    for i in range(graph.n - 1, graph.n - 1 - k, -1):  # ascending singular value
        cols.append(_fix_sign(vt[i]))
    for i in range(graph.n - 1, graph.n - 1 - k, -1):
        cols.append(_fix_sign(u_mat[:, i]))
    coords = np.column_stack(cols) / np.sqrt(stat.phi)[:, None]
    return Embedding(coords=coords, kind="diplacian", param=k)


def embedding_to_csv(embedding: Embedding, ids: np.ndarray | None = None) -> str:
    """CSV export: vertex id followed by its coordinates."""
    n, dim = embedding.coords.shape
    ids = np.arange(n) if ids is None else ids
    lines = ["vertex," + ",".join(f"c{i}" for i in range(dim))]
    for v in range(n):
        row = ",".join(f"{x:.17g}" for x in embedding.coords[v])
        lines.append(f"{ids[v]},{row}")
    return "\n".join(lines) + "\n"
