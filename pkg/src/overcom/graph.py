"""Graph containers and text formats.

Vertices are dense ints 0..n-1. Undirected graphs are stored as symmetric
digraphs; an undirected edge counts once in ``m`` but contributes an arc in
each direction. Edge lists with arbitrary integer ids are re-indexed at
load and the original ids are kept in ``Graph.ids``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "GraphFormatError",
    "Graph",
    "Partition",
    "Cover",
    "graph_from_edges",
    "load_edge_list",
    "write_edge_list",
    "load_cover",
    "write_cover",
    "strongly_connected",
]


class GraphFormatError(ValueError):
    """Malformed graph or cover input."""


def _read_text(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text()


def _csr(src: np.ndarray, dst: np.ndarray, n: int):
    # arcs sorted by (src, dst) so each neighbor row comes out sorted
    order = np.lexsort((dst, src))
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum(np.bincount(src, minlength=n))
    return indptr, dst[order].astype(np.int64, copy=True)


@dataclass(frozen=True, eq=False, repr=False)
class Graph:
    """Immutable digraph in CSR form (both directions)."""

    n: int
    m: int
    directed: bool
    out_indptr: np.ndarray
    out_indices: np.ndarray
    in_indptr: np.ndarray
    in_indices: np.ndarray
    d_out: np.ndarray
    d_in: np.ndarray
    ids: np.ndarray  # original vertex ids, sorted; ids[i] is the input id of vertex i

    def __post_init__(self):
        for a in (self.out_indptr, self.out_indices, self.in_indptr,
                  self.in_indices, self.d_out, self.d_in, self.ids):
            a.setflags(write=False)
        arcs = self.m if self.directed else 2 * self.m
        if int(self.d_out.sum()) != arcs or int(self.d_in.sum()) != arcs:
            raise ValueError("degree sums inconsistent with m")

    def out_neighbors(self, u: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[u]:self.out_indptr[u + 1]]

    def in_neighbors(self, u: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[u]:self.in_indptr[u + 1]]

    def has_arc(self, u: int, v: int) -> bool:
        row = self.out_neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < row.size and row[i] == v)

    @property
    def degrees(self) -> np.ndarray:
        """Undirected degree vector; equals d_out on the symmetric storage."""
        return self.d_out

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.m == other.m
                and self.directed == other.directed
                and np.array_equal(self.out_indptr, other.out_indptr)
                and np.array_equal(self.out_indices, other.out_indices)
                and np.array_equal(self.ids, other.ids))

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, m={self.m}, {kind})"


def _build(src: np.ndarray, dst: np.ndarray, n: int, directed: bool,
           ids: np.ndarray | None) -> Graph:
    """Assemble a Graph from deduplicated arc arrays over dense ids."""
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    if directed:
        pairs = np.unique(np.stack([src, dst], axis=1), axis=0) if src.size else \
            np.empty((0, 2), dtype=np.int64)
        m = pairs.shape[0]
        a_src, a_dst = pairs[:, 0], pairs[:, 1]
    else:
        lo = np.minimum(src, dst)
        hi = np.maximum(src, dst)
        pairs = np.unique(np.stack([lo, hi], axis=1), axis=0) if src.size else \
            np.empty((0, 2), dtype=np.int64)
        m = pairs.shape[0]
        a_src = np.concatenate([pairs[:, 0], pairs[:, 1]])
        a_dst = np.concatenate([pairs[:, 1], pairs[:, 0]])
    out_indptr, out_indices = _csr(a_src, a_dst, n)
    in_indptr, in_indices = _csr(a_dst, a_src, n)
    if ids is None:
        ids = np.arange(n, dtype=np.int64)
    return Graph(
        n=n, m=m, directed=directed,
        out_indptr=out_indptr, out_indices=out_indices,
        in_indptr=in_indptr, in_indices=in_indices,
        d_out=np.diff(out_indptr).astype(np.int64),
        d_in=np.diff(in_indptr).astype(np.int64),
        ids=np.asarray(ids, dtype=np.int64),
    )


def graph_from_edges(edges, n: int | None = None, directed: bool = False) -> Graph:
    """Build a graph from (u, v) pairs over dense vertex ids.

    Duplicate pairs collapse silently; self-loops are rejected.
    """
    arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    if arr.size and arr.min() < 0:
        raise GraphFormatError("negative vertex id")
    if n is None:
        n = int(arr.max()) + 1 if arr.size else 0
    elif arr.size and int(arr.max()) >= n:
        raise GraphFormatError("vertex id out of range")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        raise GraphFormatError(f"self-loop at vertex {int(arr[loops][0, 0])}")
    return _build(arr[:, 0], arr[:, 1], n, directed, None)


def load_edge_list(source, directed: bool = False, one_indexed: bool = False) -> Graph:
    """Parse a whitespace edge list: two integer ids per non-comment line.

    Lines starting with "#" are comments. Weighted rows are an error.
    Ids are densely re-indexed; the original ids survive in ``Graph.ids``.
    The parse is order-insensitive: any permutation of the lines yields
    the same Graph.
    """
    text = _read_text(source)
    lo_bound = 1 if one_indexed else 0
    us, vs = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise GraphFormatError(
                f"line {lineno}: expected 'src dst', got {len(toks)} tokens"
                " (weight columns are not supported)")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {line!r}") from None
        if u < lo_bound or v < lo_bound:
            raise GraphFormatError(f"line {lineno}: vertex id out of range")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        us.append(u)
        vs.append(v)
    if not us:
        return _build(np.empty(0, np.int64), np.empty(0, np.int64), 0, directed,
                      np.empty(0, np.int64))
    orig = np.array([us, vs], dtype=np.int64)
    ids = np.unique(orig)
    dense = np.searchsorted(ids, orig)
    return _build(dense[0], dense[1], len(ids), directed, ids)


def write_edge_list(graph: Graph) -> str:
    """Inverse of load_edge_list, in original ids (each undirected edge once)."""
    lines = []
    for u in range(graph.n):
        for v in graph.out_neighbors(u):
            if graph.directed or u < v:
                lines.append(f"{graph.ids[u]} {graph.ids[v]}")
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True, eq=False, repr=False)
class Partition:
    """Disjoint communities: labels[u] in 0..k-1, every community nonempty."""

    labels: np.ndarray
    k: int

    def __post_init__(self):
        self.labels.setflags(write=False)
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() >= self.k):
            raise ValueError("labels out of range")
        if len(np.unique(self.labels)) != self.k:
            raise ValueError("empty community in partition")

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        """Relabel arbitrary ints to 0..k-1, ordered by smallest member vertex."""
        labels = np.asarray(labels, dtype=np.int64)
        _, first = np.unique(labels, return_index=True)
        order = np.argsort(first)  # community that appears first gets id 0
        remap = np.empty(order.size, dtype=np.int64)
        remap[order] = np.arange(order.size)
        dense = remap[np.searchsorted(np.unique(labels), labels)]
        return cls(labels=dense, k=order.size)

    def communities(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.labels == j) for j in range(self.k)]

    def to_cover(self, n: int | None = None) -> "Cover":
        n = self.labels.size if n is None else n
        return Cover.from_sets(n, [set(c.tolist()) for c in self.communities()])

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.labels, other.labels)

    def __repr__(self):
        return f"Partition(n={self.labels.size}, k={self.k})"


@dataclass(frozen=True, eq=False, repr=False)
class Cover:
    """Possibly-overlapping communities over vertices 0..n-1."""

    n: int
    communities: tuple[frozenset, ...]

    def __post_init__(self):
        for c in self.communities:
            if not c:
                raise ValueError("empty community in cover")
            if min(c) < 0 or max(c) >= self.n:
                raise ValueError("cover member out of range")

    @classmethod
    def from_sets(cls, n: int, sets) -> "Cover":
        return cls(n=n, communities=tuple(frozenset(s) for s in sets))

    @property
    def k(self) -> int:
        return len(self.communities)

    def to_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.k), dtype=bool)
        for j, c in enumerate(self.communities):
            mat[sorted(c), j] = True
        return mat

    def membership_counts(self) -> np.ndarray:
        return self.to_matrix().sum(axis=1)

    def overlap_count(self) -> int:
        """Vertices belonging to two or more communities."""
        return int((self.membership_counts() >= 2).sum())

    def _canon(self):
        return sorted(tuple(sorted(c)) for c in self.communities)

    def __eq__(self, other):
        if not isinstance(other, Cover):
            return NotImplemented
        return self.n == other.n and self._canon() == other._canon()

    def __repr__(self):
        return f"Cover(n={self.n}, k={self.k}, overlapping={self.overlap_count()})"


def load_cover(source, n: int | None = None) -> Cover:
    """Parse "node_id community_id [community_id ...]" lines, 1-indexed."""
    text = _read_text(source)
    members: dict[int, set] = {}
    max_node = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) < 2:
            raise GraphFormatError(f"line {lineno}: expected 'node community...'")
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {line!r}") from None
        node = vals[0]
        if node < 1 or any(c < 1 for c in vals[1:]):
            raise GraphFormatError(f"line {lineno}: ids are 1-indexed")
        max_node = max(max_node, node)
        for c in vals[1:]:
            members.setdefault(c, set()).add(node - 1)
    if not members:
        raise GraphFormatError("empty cover")
    if n is None:
        n = max_node
    elif max_node > n:
        raise GraphFormatError(f"node id {max_node} outside universe of size {n}")
    return Cover.from_sets(n, [members[c] for c in sorted(members)])


def write_cover(cover: Cover) -> str:
    """Inverse of load_cover: one line per covered vertex, ids 1-indexed."""
    rows = []
    mat = cover.to_matrix()
    for v in range(cover.n):
        js = np.flatnonzero(mat[v])
        if js.size:
            rows.append(f"{v + 1} " + " ".join(str(j + 1) for j in js))
    return "\n".join(rows) + ("\n" if rows else "")


def _reaches_all(indptr: np.ndarray, indices: np.ndarray, n: int) -> bool:
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for v in indices[indptr[u]:indptr[u + 1]]:
            if not seen[v]:
                seen[v] = True
                stack.append(int(v))
    return bool(seen.all())


def strongly_connected(graph: Graph) -> bool:
    """True when every vertex reaches every other (connectivity if undirected)."""
    if graph.n <= 1:
        return True
    return (_reaches_all(graph.out_indptr, graph.out_indices, graph.n)
            and _reaches_all(graph.in_indptr, graph.in_indices, graph.n))
