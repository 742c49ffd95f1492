"""Benchmark harness: planted-overlap generator, LFR file ingestion, and
theta-grid sweeps over the expansion algorithms.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .graph import Cover, Graph, GraphFormatError, Partition, graph_from_edges, \
    load_cover, load_edge_list, strongly_connected
from .metrics import onmi, overlap_modularity_avg, theta_modularity
from .overlap import OverlapParams, OverlapResult, baseline_parameterized_overlap, \
    cosine_overlap, di_cosine_overlap, di_paramet_d_modularity_overlap, \
    di_paramet_sd_modularity_overlap, paramet_modularity_overlap
from .partition import ClusteringConfig, louvain, spectral_partition
from .walks import stationary_distribution

__all__ = [
    "PlantedParams",
    "planted_overlap_graph",
    "load_lfr",
    "ALGORITHMS",
    "default_grid",
    "run_algorithm",
    "SweepRow",
    "SweepReport",
    "sweep",
]


@dataclass(frozen=True)
class PlantedParams:
    """Planted-overlap benchmark: k round-robin base communities over
    n - on vertices, the last on vertices drawing om communities each,
    edges Bernoulli(p_in) inside shared communities and Bernoulli(p_out)
    across.
    """

    n: int
    k: int
    on: int
    om: int
    p_in: float
    p_out: float
    directed: bool = False

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError("need 1 <= k <= n")
        if not 0 <= self.on <= self.n:
            raise ValueError("need 0 <= on <= n")
        if not 2 <= self.om <= self.k:
            raise ValueError("need 2 <= om <= k")
        if not 0.0 <= self.p_out < self.p_in <= 1.0:
            raise ValueError("need 0 <= p_out < p_in <= 1")
        if self.n - self.on < self.k:
            raise ValueError("too few non-overlapping vertices to seed every community")


def _shared_pairs(member: np.ndarray) -> np.ndarray:
    """Unordered vertex pairs sharing at least one community, unique rows."""
    chunks = []
    for j in range(member.shape[1]):
        mj = np.flatnonzero(member[:, j])
        if mj.size >= 2:
            i, l = np.triu_indices(mj.size, k=1)
            chunks.append(np.stack([mj[i], mj[l]], axis=1))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    return np.unique(np.concatenate(chunks), axis=0)


def _sample_cross(rng: np.random.Generator, n: int, count: int,
                  shared_codes: set, directed: bool) -> list:
    """First `count` distinct non-shared pairs from an iid uniform stream,
    which is exactly a uniform subset of that size.
    """
    picked = []
    seen = set()
    while len(picked) < count:
        batch = max(4 * (count - len(picked)), 64)
        us = rng.integers(0, n, size=batch)
        vs = rng.integers(0, n, size=batch)
        for u, v in zip(us.tolist(), vs.tolist()):
            if u == v:
                continue
            lo, hi = (u, v) if u < v else (v, u)
            if lo * n + hi in shared_codes:
                continue
            code = u * n + v if directed else lo * n + hi
            if code in seen:
                continue
            seen.add(code)
            picked.append((u, v) if directed else (lo, hi))
            if len(picked) == count:
                break
    return picked


def planted_overlap_graph(params: PlantedParams, seed: int = 0) -> tuple[Graph, Cover]:
    """Sample a (Graph, Cover) instance; deterministic for a given seed.

    With p_out > 0 the sample is redrawn (up to 100 times) until the
    undirected result is connected or the directed one strongly connected.
    p_out = 0 instances are disconnected by construction and returned as is.
    """
    rng = np.random.default_rng(seed)
    n, k, on = params.n, params.k, params.on
    for _attempt in range(100):
        member = np.zeros((n, k), dtype=bool)
        base = np.arange(n - on) % k
        member[np.arange(n - on), base] = True
        for v in range(n - on, n):
            member[v, rng.choice(k, size=params.om, replace=False)] = True
        shared = _shared_pairs(member)
        edges = []
        if shared.size:
            keep = rng.random(shared.shape[0]) < params.p_in
            edges.extend(map(tuple, shared[keep].tolist()))
            if params.directed:
                keep_rev = rng.random(shared.shape[0]) < params.p_in
                edges.extend((v, u) for u, v in shared[keep_rev].tolist())
        shared_codes = {int(u) * n + int(v) for u, v in shared.tolist()}
        n_unordered = n * (n - 1) // 2 - shared.shape[0]
        if params.p_out > 0 and n_unordered > 0:
            n_cross = 2 * n_unordered if params.directed else n_unordered
            count = int(rng.binomial(n_cross, params.p_out))
            edges.extend(_sample_cross(rng, n, count, shared_codes, params.directed))
        graph = graph_from_edges(edges, n=n, directed=params.directed)
        cover = Cover.from_sets(n, [set(np.flatnonzero(member[:, j]).tolist())
                                    for j in range(k)])
        if params.p_out == 0 or strongly_connected(graph):
            return graph, cover
    raise RuntimeError("no connected instance within 100 attempts; "
                       "raise p_out or shrink the graph")


def load_lfr(network_source, community_source, directed: bool = False) -> tuple[Graph, Cover]:
    """Read an LFR-style pair: 1-indexed arc lines (first token the source)
    plus "node community..." membership lines.
    """
    graph = load_edge_list(network_source, directed=directed, one_indexed=True)
    if graph.n and not np.array_equal(graph.ids, np.arange(1, graph.n + 1)):
        raise GraphFormatError("network file ids must be contiguous from 1")
    cover = load_cover(community_source, n=graph.n)
    return graph, cover


@dataclass(frozen=True)
class _AlgoSpec:
    name: str
    grid: str
    undirected_only: bool
    step1: str
    needs_phi: bool


ALGORITHMS = {s.name: s for s in (
    _AlgoSpec("paramet-modul", "modularity", True, "louvain", False),
    _AlgoSpec("di-paramet-d", "modularity", False, "louvain", False),
    _AlgoSpec("di-paramet-sd", "modularity", False, "louvain", True),
    _AlgoSpec("cosine", "cosine", True, "louvain", False),
    _AlgoSpec("di-cosine", "cosine", False, "spectral", False),
    _AlgoSpec("baseline-paramet", "baseline", True, "louvain", False),
)}

_GRID_STEP = {"modularity": (1.0, 0.1), "cosine": (0.2, 0.035), "baseline": (0.2, 0.015)}


def _spec(algorithm: str) -> _AlgoSpec:
    try:
        return ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; "
                         f"expected one of {sorted(ALGORITHMS)}") from None


def default_grid(algorithm: str) -> list[float]:
    """The 20-point theta grid used by the sweeps."""
    base, step = _GRID_STEP[_spec(algorithm).grid]
    return [base + step * t for t in range(1, 21)]


def run_algorithm(algorithm: str, graph: Graph, partition: Partition,
                  params: OverlapParams, phi=None,
                  record_decisions: bool = False) -> OverlapResult:
    """Dispatch one expansion algorithm by registry name."""
    if algorithm == "paramet-modul":
        return paramet_modularity_overlap(graph, partition, params, record_decisions)
    if algorithm == "di-paramet-d":
        return di_paramet_d_modularity_overlap(graph, partition, params, record_decisions)
    if algorithm == "di-paramet-sd":
        if phi is None:
            phi = stationary_distribution(graph)
        return di_paramet_sd_modularity_overlap(graph, partition, phi, params,
                                                record_decisions)
    if algorithm == "cosine":
        return cosine_overlap(graph, partition, params, record_decisions)
    if algorithm == "di-cosine":
        return di_cosine_overlap(graph, partition, params, record_decisions)
    if algorithm == "baseline-paramet":
        return baseline_parameterized_overlap(graph, partition, params, record_decisions)
    raise ValueError(f"unknown algorithm {algorithm!r}")


@dataclass(frozen=True)
class SweepRow:
    algorithm: str
    theta: float
    modularity: float
    onmi: float | None
    runtime_s: float
    best_modularity: bool = False
    best_onmi: bool = False


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...] = field(default=())

    def best(self, algorithm: str, by: str = "modularity") -> SweepRow:
        rows = [r for r in self.rows if r.algorithm == algorithm]
        if not rows:
            raise ValueError(f"no rows for {algorithm!r}")
        key = (lambda r: r.onmi) if by == "onmi" else (lambda r: r.modularity)
        return max(rows, key=lambda r: -np.inf if key(r) is None else key(r))

    def to_csv(self) -> str:
        lines = ["algorithm,theta,modularity,onmi,runtime_s,best_modularity,best_onmi"]
        for r in self.rows:
            onmi_s = "" if r.onmi is None else f"{r.onmi:.12g}"
            lines.append(f"{r.algorithm},{r.theta:.12g},{r.modularity:.12g},"
                         f"{onmi_s},{r.runtime_s:.6f},"
                         f"{int(r.best_modularity)},{int(r.best_onmi)}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps([r.__dict__ for r in self.rows], indent=2) + "\n"

    def series(self) -> dict:
        """Per-algorithm theta series, handy for plotting."""
        out: dict = {}
        for r in self.rows:
            s = out.setdefault(r.algorithm, {"theta": [], "modularity": [], "onmi": []})
            s["theta"].append(r.theta)
            s["modularity"].append(r.modularity)
            s["onmi"].append(r.onmi)
        return out


def _cover_quality(graph: Graph, cover: Cover) -> float:
    if graph.directed:
        return theta_modularity(graph, cover, 1.0, "directed-d")
    return overlap_modularity_avg(graph, cover)


def sweep(graph: Graph, algorithms: list[str] | None = None,
          truth: Cover | None = None, grids: dict | None = None,
          seed: int = 0, t: int = 4, k: int | None = None,
          config: ClusteringConfig | None = None) -> SweepReport:
    """Run each algorithm across its theta grid on one graph.

    Step 1 runs once per family (Louvain for the modularity/cosine/baseline
    rules, the spectral partitioner for the digraph cosine rule, with k
    defaulting to Louvain's community count). Every row records the cover
    quality (average-belonging overlap modularity; theta = 1 directed-d
    modularity when the graph is directed) and, when a reference cover is
    given, its overlapping NMI.
    """
    config = config or ClusteringConfig(seed=seed)
    if algorithms is None:
        algorithms = [name for name, s in ALGORITHMS.items()
                      if not (graph.directed and s.undirected_only)]
    for name in algorithms:
        if name not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {name!r}")
        if graph.directed and ALGORITHMS[name].undirected_only:
            raise ValueError(f"{name} needs an undirected graph")
    if truth is not None and truth.n != graph.n:
        raise ValueError("reference cover universe does not match graph")

    louvain_part = None
    spectral_part = None
    phi = None

    def step1(name: str) -> Partition:
        nonlocal louvain_part, spectral_part
        if ALGORITHMS[name].step1 == "spectral":
            if spectral_part is None:
                kk = k
                if kk is None:
                    kk = step1("paramet-modul").k  # Louvain community count
                spectral_part = spectral_partition(graph, kk, config)
            return spectral_part
        if louvain_part is None:
            louvain_part = louvain(graph, config)
        return louvain_part

    rows: list[SweepRow] = []
    for name in algorithms:
        part = step1(name)
        if ALGORITHMS[name].needs_phi and phi is None:
            phi = stationary_distribution(graph)
        grid = (grids or {}).get(name, default_grid(name))
        algo_rows = []
        for theta in grid:
            params = OverlapParams(theta=theta, t=t, k=k)
            start = time.perf_counter()
            result = run_algorithm(name, graph, part, params, phi=phi)
            elapsed = time.perf_counter() - start
            q = _cover_quality(graph, result.cover)
            score = onmi(result.cover, truth) if truth is not None else None
            algo_rows.append(SweepRow(algorithm=name, theta=theta, modularity=q,
                                      onmi=score, runtime_s=elapsed))
        best_q = int(np.argmax([r.modularity for r in algo_rows]))
        best_o = int(np.argmax([r.onmi for r in algo_rows])) if truth is not None else -1
        for i, r in enumerate(algo_rows):
            rows.append(SweepRow(algorithm=r.algorithm, theta=r.theta,
                                 modularity=r.modularity, onmi=r.onmi,
                                 runtime_s=r.runtime_s,
                                 best_modularity=(i == best_q),
                                 best_onmi=(i == best_o)))
    return SweepReport(rows=tuple(rows))
