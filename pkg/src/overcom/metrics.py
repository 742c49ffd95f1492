"""Cover quality metrics: belonging coefficients, overlap modularities,
theta-scaled modularities, and overlapping NMI.
"""

from __future__ import annotations

import numpy as np

from .graph import Cover, Graph
from .walks import StationaryDistribution, stationary_distribution

__all__ = [
    "belonging_coefficients",
    "overlap_modularity_avg",
    "overlap_modularity_q0",
    "theta_modularity",
    "onmi",
]


def _arc_endpoints(graph: Graph):
    src = np.repeat(np.arange(graph.n), np.diff(graph.out_indptr))
    return src, graph.out_indices


def belonging_coefficients(graph: Graph, cover: Cover) -> np.ndarray:
    """alpha[u, j] = (edges from u into C_j) / (edges from u into any of u's
    own communities), for u in C_j; zero for communities u is not in.

    On a disjoint cover every covered vertex with an internal edge gets
    alpha = 1 in its community, so the weighted modularities reduce to the
    classical one. Rows of vertices whose edges all leave their communities
    are all zero.
    """
    if graph.directed:
        raise ValueError("belonging coefficients are defined on undirected graphs")
    if cover.n != graph.n:
        raise ValueError("cover universe does not match graph")
    member = cover.to_matrix().astype(np.float64)
    src, dst = _arc_endpoints(graph)
    counts = np.zeros((graph.n, cover.k), dtype=np.float64)
    np.add.at(counts, src, member[dst])
    counts *= member
    totals = counts.sum(axis=1)
    return np.divide(counts, totals[:, None], out=np.zeros_like(counts),
                     where=totals[:, None] > 0)


def overlap_modularity_avg(graph: Graph, cover: Cover) -> float:
    """Average-belonging overlap modularity: per community, the modularity
    kernel over member pairs weighted by (alpha_u + alpha_v) / 2.
    """
    if graph.directed:
        raise ValueError("overlap modularity is defined on undirected graphs")
    alpha = belonging_coefficients(graph, cover)
    two_m = float(2 * graph.m)
    if two_m == 0:
        raise ValueError("graph has no edges")
    deg = graph.degrees.astype(np.float64)
    total = 0.0
    for j, comm in enumerate(cover.communities):
        members = np.fromiter(comm, dtype=np.int64)
        mask = np.zeros(graph.n, dtype=bool)
        mask[members] = True
        a = alpha[:, j]
        edge_part = 0.0
        for u in members:
            nbrs = graph.out_neighbors(u)
            inside = nbrs[mask[nbrs]]
            edge_part += float((0.5 * (a[u] + a[inside])).sum())
        s_deg = float(deg[members].sum())
        s_deg_a = float((deg[members] * a[members]).sum())
        total += edge_part - s_deg_a * s_deg / two_m
    return total / two_m


def overlap_modularity_q0(graph: Graph, cover: Cover) -> float:
    """Product-belonging overlap modularity over all vertex pairs."""
    if graph.directed:
        raise ValueError("overlap modularity is defined on undirected graphs")
    alpha = belonging_coefficients(graph, cover)
    two_m = float(2 * graph.m)
    if two_m == 0:
        raise ValueError("graph has no edges")
    deg = graph.degrees.astype(np.float64)
    src, dst = _arc_endpoints(graph)
    edge_part = float(np.einsum("ej,ej->", alpha[src], alpha[dst]))
    weighted = deg @ alpha  # per community, sum_u d_u alpha_u
    return (edge_part - float((weighted ** 2).sum()) / two_m) / two_m


def theta_modularity(graph: Graph, cover: Cover, theta: float,
                     variant: str = "undirected", phi=None) -> float:
    """Theta-scaled modularity of a cover; overlapping vertices count in
    every community holding them.

    variant: "undirected", "directed-d" (in/out-degree null), or
    "directed-sd" (stationary-walk null, needs phi or a strongly connected
    graph to compute it).
    """
    if cover.n != graph.n:
        raise ValueError("cover universe does not match graph")
    if variant == "undirected":
        if graph.directed:
            raise ValueError("undirected variant on a directed graph")
        two_m = float(2 * graph.m)
        deg = graph.degrees.astype(np.float64)
        total = 0.0
        for comm in cover.communities:
            members = np.fromiter(comm, dtype=np.int64)
            mask = np.zeros(graph.n, dtype=bool)
            mask[members] = True
            arcs_in = sum(int(mask[graph.out_neighbors(u)].sum()) for u in members)
            s = float(deg[members].sum())
            total += arcs_in / two_m - theta * s * s / (two_m * two_m)
        return total
    if variant == "directed-d":
        m_arcs = float(graph.m if graph.directed else 2 * graph.m)
        din = graph.d_in.astype(np.float64)
        dout = graph.d_out.astype(np.float64)
        total = 0.0
        for comm in cover.communities:
            members = np.fromiter(comm, dtype=np.int64)
            mask = np.zeros(graph.n, dtype=bool)
            mask[members] = True
            arcs_in = sum(int(mask[graph.out_neighbors(u)].sum()) for u in members)
            total += (arcs_in / m_arcs
                      - theta * float(din[members].sum()) * float(dout[members].sum())
                      / (m_arcs * m_arcs))
        return total
    if variant == "directed-sd":
        if phi is None:
            phi = stationary_distribution(graph)
        phi = phi.phi if isinstance(phi, StationaryDistribution) else np.asarray(phi, dtype=np.float64)
        if (graph.d_out == 0).any():
            raise ValueError("sink vertex: transition matrix undefined")
        invd = 1.0 / graph.d_out.astype(np.float64)
        total = 0.0
        for comm in cover.communities:
            members = np.fromiter(comm, dtype=np.int64)
            mask = np.zeros(graph.n, dtype=bool)
            mask[members] = True
            flow = sum(float(phi[u] * invd[u] * mask[graph.out_neighbors(u)].sum())
                       for u in members)
            s_phi = float(phi[members].sum())
            total += flow - theta * s_phi * s_phi
        return total
    raise ValueError(f"unknown variant {variant!r}")


def _h(counts: np.ndarray, n: int) -> np.ndarray:
    """Entropy contribution -(c/n) log2(c/n), with 0 log 0 = 0."""
    p = counts / n
    out = np.zeros_like(p, dtype=np.float64)
    nz = p > 0
    out[nz] = -p[nz] * np.log2(p[nz])
    return out


def _cond_entropy_table(a_mat: np.ndarray, b_mat: np.ndarray, n: int):
    """H(X_i | Y_j) matrix for the binary membership variables of cover A
    given cover B, with the complement-matching guard.
    """
    sizes_a = a_mat.sum(axis=0).astype(np.float64)
    sizes_b = b_mat.sum(axis=0).astype(np.float64)
    inter = (a_mat.T @ b_mat).astype(np.float64)  # |A_i & B_j|
    p11 = inter
    p10 = sizes_a[:, None] - inter
    p01 = sizes_b[None, :] - inter
    p00 = n - sizes_a[:, None] - sizes_b[None, :] + inter
    h11, h10, h01, h00 = (_h(p, n) for p in (p11, p10, p01, p00))
    h_a = _h(sizes_a, n) + _h(n - sizes_a, n)  # H(X_i)
    h_b = _h(sizes_b, n) + _h(n - sizes_b, n)  # H(Y_j)
    joint = h11 + h10 + h01 + h00
    cond = joint - h_b[None, :]
    valid = (h11 + h00) >= (h01 + h10)
    return np.where(valid, cond, h_a[:, None]), h_a


def onmi(a: Cover, b: Cover) -> float:
    """Overlapping NMI over per-community membership indicators,
    normalized by the mean of the two total entropies.
    """
    if a.n != b.n:
        raise ValueError("covers live on different universes")
    if a.k == 0 or b.k == 0:
        raise ValueError("empty cover")
    n = a.n
    a_mat = a.to_matrix().astype(np.int64)
    b_mat = b.to_matrix().astype(np.int64)
    cond_ab, h_a = _cond_entropy_table(a_mat, b_mat, n)
    cond_ba, h_b = _cond_entropy_table(b_mat, a_mat, n)
    h_total_a = float(h_a.sum())
    h_total_b = float(h_b.sum())
    denom = h_total_a + h_total_b
    if denom == 0.0:
        if a == b:
            return 1.0
        raise ValueError("both covers are entropy-free and differ")
    mi = 0.5 * ((h_total_a - float(cond_ab.min(axis=1).sum()))
                + (h_total_b - float(cond_ba.min(axis=1).sum())))
    return float(np.clip(2.0 * mi / denom, 0.0, 1.0))
