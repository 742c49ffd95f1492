"""Step-2 membership expansion: grow a disjoint partition into an
overlapping cover by admitting adjacent vertices whose connection to a
community beats a theta-scaled null expectation (or a cosine threshold).

The modularity-family rules run multi-pass: admissions apply immediately,
vertices are visited in ascending id order and communities in ascending id
order within a vertex, and a pass that admits nobody ends the run. The
cosine and neighbor-fraction rules are single-pass against frozen
references. Communities only ever grow, so every output cover extends the
input partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import Cover, Graph, Partition
from .walks import StationaryDistribution, diplacian_embedding, walktrap_embedding

__all__ = [
    "OverlapParams",
    "MembershipDecision",
    "OverlapResult",
    "delta_q_theta",
    "delta_q_theta_directed",
    "delta_q_theta_stationary",
    "paramet_modularity_overlap",
    "di_paramet_d_modularity_overlap",
    "di_paramet_sd_modularity_overlap",
    "cosine_overlap",
    "di_cosine_overlap",
    "baseline_parameterized_overlap",
]


@dataclass(frozen=True)
class OverlapParams:
    """Knobs for the expansion step.

    theta scales the admission null (modularity family, theta > 0) or acts
    as the similarity/fraction threshold (cosine and baseline rules,
    theta in (0, 1]; the baseline also accepts 0). t is the walk length
    behind the cosine rule; k the embedding order for the digraph cosine
    rule, defaulting to the partition's community count.
    """

    theta: float
    t: int = 4
    k: int | None = None
    max_passes: int | None = None

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be >= 1")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1")
        if self.max_passes is not None and self.max_passes < 1:
            raise ValueError("max_passes must be >= 1")


@dataclass(frozen=True)
class MembershipDecision:
    """One audited admission test: accepted iff lhs > rhs (the baseline
    rule alone uses >=)."""

    vertex: int
    community: int
    lhs: float
    rhs: float
    accepted: bool
    pass_index: int


@dataclass(frozen=True)
class OverlapResult:
    cover: Cover
    decisions: list[MembershipDecision] = field(repr=False)
    passes: int

    def __repr__(self):
        return (f"OverlapResult(cover={self.cover!r}, passes={self.passes}, "
                f"decisions={len(self.decisions)})")


def _check_partition(graph: Graph, partition: Partition):
    if partition.labels.size != graph.n:
        raise ValueError("partition size does not match graph")


def _require_positive_theta(theta: float):
    if not theta > 0:
        raise ValueError("theta must be > 0")


def _unit_threshold_theta(theta: float, allow_zero: bool = False):
    lo_ok = theta >= 0 if allow_zero else theta > 0
    if not (lo_ok and theta <= 1):
        raise ValueError("theta must lie in (0, 1]" + (" or be 0" if allow_zero else ""))


def _community_array(community) -> np.ndarray:
    arr = np.fromiter(community, dtype=np.int64)
    if arr.size == 0:
        raise ValueError("community must be nonempty")
    return arr


def _count_in(graph_row: np.ndarray, mask: np.ndarray) -> int:
    return int(mask[graph_row].sum())


def delta_q_theta(graph: Graph, community, u: int, theta: float) -> float:
    """Theta-scaled modularity stake of u in C for undirected graphs:
    (1/2m) sum_{w in C} (A_uw - theta d_u d_w / 2m).
    """
    if graph.directed:
        raise ValueError("delta_q_theta needs an undirected graph")
    c = _community_array(community)
    mask = np.zeros(graph.n, dtype=bool)
    mask[c] = True
    two_m = float(2 * graph.m)
    edges = _count_in(graph.out_neighbors(u), mask)
    d = graph.degrees.astype(np.float64)
    return (edges - theta * d[u] * float(d[c].sum()) / two_m) / two_m


def delta_q_theta_directed(graph: Graph, community, u: int, theta: float) -> float:
    """Two-sided directed counterpart over arcs into and out of C."""
    c = _community_array(community)
    mask = np.zeros(graph.n, dtype=bool)
    mask[c] = True
    m_arcs = float(graph.m if graph.directed else 2 * graph.m)
    arcs = _count_in(graph.out_neighbors(u), mask) + _count_in(graph.in_neighbors(u), mask)
    din = graph.d_in.astype(np.float64)
    dout = graph.d_out.astype(np.float64)
    expect = din[u] * float(dout[c].sum()) + dout[u] * float(din[c].sum())
    return (arcs - theta * expect / m_arcs) / m_arcs


def delta_q_theta_stationary(graph: Graph, community, u: int, theta: float,
                             phi) -> float:
    """Stationary-walk counterpart: phi-weighted flow between u and C minus
    2 theta phi_u phi(C).
    """
    phi = phi.phi if isinstance(phi, StationaryDistribution) else np.asarray(phi, dtype=np.float64)
    c = _community_array(community)
    mask = np.zeros(graph.n, dtype=bool)
    mask[c] = True
    if (graph.d_out == 0).any():
        raise ValueError("sink vertex: transition matrix undefined")
    out_in_c = _count_in(graph.out_neighbors(u), mask)
    in_nbrs = graph.in_neighbors(u)
    in_from_c = in_nbrs[mask[in_nbrs]]
    flow = phi[u] * out_in_c / graph.d_out[u] + float(
        (phi[in_from_c] / graph.d_out[in_from_c]).sum())
    return flow - 2.0 * theta * phi[u] * float(phi[c].sum())


def _member_matrix(partition: Partition) -> np.ndarray:
    member = np.zeros((partition.labels.size, partition.k), dtype=np.uint8)
    member[np.arange(partition.labels.size), partition.labels] = 1
    return member


def _decisions_from_buffers(bufs, n_eval: int, pass_index: int) -> list[MembershipDecision]:
    cu, cj, clhs, crhs, cacc = bufs
    return [
        MembershipDecision(vertex=int(cu[i]), community=int(cj[i]),
                           lhs=float(clhs[i]), rhs=float(crhs[i]),
                           accepted=bool(cacc[i]), pass_index=pass_index)
        for i in range(n_eval)
    ]


def _cover_from_member(member: np.ndarray, n: int) -> Cover:
    return Cover.from_sets(
        n, [set(np.flatnonzero(member[:, j]).tolist()) for j in range(member.shape[1])])


def _run_passes(graph: Graph, partition: Partition, params: OverlapParams,
                record_decisions: bool, run_pass) -> OverlapResult:
    n, k = graph.n, partition.k
    member = _member_matrix(partition)
    cap = n * k
    bufs = (np.empty(cap, dtype=np.int64), np.empty(cap, dtype=np.int64),
            np.empty(cap, dtype=np.float64), np.empty(cap, dtype=np.float64),
            np.empty(cap, dtype=np.uint8))
    max_passes = params.max_passes if params.max_passes is not None else n * k + 1
    decisions: list[MembershipDecision] = []
    passes = 0
    while True:
        if passes >= max_passes:
            raise RuntimeError(f"expansion did not settle within max_passes={max_passes}")
        n_eval, n_add = run_pass(member, bufs)
        passes += 1
        if record_decisions:
            decisions.extend(_decisions_from_buffers(bufs, n_eval, passes))
        if n_add == 0:
            break
    return OverlapResult(cover=_cover_from_member(member, n),
                         decisions=decisions, passes=passes)


def paramet_modularity_overlap(graph: Graph, partition: Partition,
                               params: OverlapParams,
                               record_decisions: bool = False) -> OverlapResult:
    """Grow communities on an undirected graph: admit u to an adjacent C_j
    when its edge fraction into C_j exceeds theta times C_j's degree share.
    """
    if graph.directed:
        raise ValueError("this rule needs an undirected graph")
    _check_partition(graph, partition)
    _require_positive_theta(params.theta)
    deg = graph.degrees.astype(np.float64)
    comm_deg = np.bincount(partition.labels, weights=deg,
                           minlength=partition.k).astype(np.float64)
    two_m = float(2 * graph.m)

    def run_pass(member, bufs):
        return _kernels.overlap_pass_undirected(
            graph.out_indptr, graph.out_indices, deg, two_m, params.theta,
            member, comm_deg, *bufs)

    return _run_passes(graph, partition, params, record_decisions, run_pass)


def di_paramet_d_modularity_overlap(graph: Graph, partition: Partition,
                                    params: OverlapParams,
                                    record_decisions: bool = False) -> OverlapResult:
    """Directed counterpart: arcs both ways between u and C_j against the
    in/out-degree product expectation.
    """
    _check_partition(graph, partition)
    _require_positive_theta(params.theta)
    din = graph.d_in.astype(np.float64)
    dout = graph.d_out.astype(np.float64)
    comm_din = np.bincount(partition.labels, weights=din,
                           minlength=partition.k).astype(np.float64)
    comm_dout = np.bincount(partition.labels, weights=dout,
                            minlength=partition.k).astype(np.float64)
    m_arcs = float(graph.m if graph.directed else 2 * graph.m)

    def run_pass(member, bufs):
        return _kernels.overlap_pass_directed(
            graph.out_indptr, graph.out_indices, graph.in_indptr,
            graph.in_indices, din, dout, m_arcs, params.theta,
            member, comm_din, comm_dout, *bufs)

    return _run_passes(graph, partition, params, record_decisions, run_pass)


def di_paramet_sd_modularity_overlap(graph: Graph, partition: Partition, phi,
                                     params: OverlapParams,
                                     record_decisions: bool = False) -> OverlapResult:
    """Stationary-walk counterpart: phi-weighted flow between u and C_j
    against 2 theta phi_u phi(C_j).
    """
    _check_partition(graph, partition)
    _require_positive_theta(params.theta)
    phi = phi.phi if isinstance(phi, StationaryDistribution) else np.asarray(phi, dtype=np.float64)
    if phi.shape != (graph.n,):
        raise ValueError("phi has the wrong length")
    if (graph.d_out == 0).any():
        raise ValueError("sink vertex: transition matrix undefined")
    invd = 1.0 / graph.d_out.astype(np.float64)
    comm_phi = np.bincount(partition.labels, weights=phi,
                           minlength=partition.k).astype(np.float64)

    def run_pass(member, bufs):
        return _kernels.overlap_pass_sd(
            graph.out_indptr, graph.out_indices, graph.in_indptr,
            graph.in_indices, phi, invd, params.theta,
            member, comm_phi, *bufs)

    return _run_passes(graph, partition, params, record_decisions, run_pass)


def _cosine_expand(coords: np.ndarray, graph: Graph, partition: Partition,
                   theta: float, record_decisions: bool) -> OverlapResult:
    """Single pass: admit u to C_j when cos(Coord(u), Center_j) > theta.

    Centers come from the original members only and stay frozen, so
    admissions cannot cascade.
    """
    norms = np.linalg.norm(coords, axis=1)
    if (norms == 0).any():
        raise ValueError("zero-norm coordinate vector")
    unit = coords / norms[:, None]
    centers = np.stack([coords[partition.labels == j].mean(axis=0)
                        for j in range(partition.k)])
    c_norms = np.linalg.norm(centers, axis=1)
    if (c_norms == 0).any():
        raise ValueError("zero-norm community center")
    sims = np.clip(unit @ (centers / c_norms[:, None]).T, -1.0, 1.0)
    member = _member_matrix(partition)
    decisions: list[MembershipDecision] = []
    for u in range(graph.n):
        for j in range(partition.k):
            if member[u, j]:
                continue
            accepted = bool(sims[u, j] > theta)
            if record_decisions:
                decisions.append(MembershipDecision(
                    vertex=u, community=j, lhs=float(sims[u, j]), rhs=theta,
                    accepted=accepted, pass_index=1))
            if accepted:
                member[u, j] = 1
    return OverlapResult(cover=_cover_from_member(member, graph.n),
                         decisions=decisions, passes=1)


def cosine_overlap(graph: Graph, partition: Partition, params: OverlapParams,
                   record_decisions: bool = False) -> OverlapResult:
    """Walk-profile cosine rule for undirected graphs (walk length params.t)."""
    _check_partition(graph, partition)
    _unit_threshold_theta(params.theta)
    emb = walktrap_embedding(graph, params.t)
    return _cosine_expand(emb.coords, graph, partition, params.theta, record_decisions)


def di_cosine_overlap(graph: Graph, partition: Partition, params: OverlapParams,
                      record_decisions: bool = False) -> OverlapResult:
    """Walk-Laplacian cosine rule for digraphs; embedding order params.k
    defaults to the partition's community count.
    """
    _check_partition(graph, partition)
    _unit_threshold_theta(params.theta)
    k = params.k if params.k is not None else partition.k
    emb = diplacian_embedding(graph, k)
    return _cosine_expand(emb.coords, graph, partition, params.theta, record_decisions)


def baseline_parameterized_overlap(graph: Graph, partition: Partition,
                                   params: OverlapParams,
                                   record_decisions: bool = False) -> OverlapResult:
    """Neighbor-fraction rule: one pass against the original partition,
    admitting v to C_j when at least a theta fraction of v's neighbors
    started in C_j (>= comparison; theta = 0 admits everywhere).
    """
    if graph.directed:
        raise ValueError("this rule needs an undirected graph")
    _check_partition(graph, partition)
    _unit_threshold_theta(params.theta, allow_zero=True)
    member0 = _member_matrix(partition).astype(np.float64)
    src = np.repeat(np.arange(graph.n), np.diff(graph.out_indptr))
    counts = np.zeros((graph.n, partition.k), dtype=np.float64)
    np.add.at(counts, src, member0[graph.out_indices])
    deg = graph.degrees.astype(np.float64)
    frac = np.divide(counts, deg[:, None], out=np.zeros_like(counts),
                     where=deg[:, None] > 0)
    member = _member_matrix(partition)
    decisions: list[MembershipDecision] = []
    for v in range(graph.n):
        for j in range(partition.k):
            if member[v, j]:
                continue
            accepted = bool(frac[v, j] >= params.theta)
            if record_decisions:
                decisions.append(MembershipDecision(
                    vertex=v, community=j, lhs=float(frac[v, j]),
                    rhs=params.theta, accepted=accepted, pass_index=1))
            if accepted:
                member[v, j] = 1
    return OverlapResult(cover=_cover_from_member(member, graph.n),
                         decisions=decisions, passes=1)
