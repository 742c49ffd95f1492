import io

import numpy as np
import pytest

import overcom as oc
from overcom import GraphFormatError


def test_build_counts_and_neighbors(barbell):
    assert barbell.n == 6
    assert barbell.m == 7
    assert not barbell.directed
    assert sorted(barbell.out_neighbors(2)) == [0, 1, 3]
    assert barbell.degrees.tolist() == [2, 2, 3, 3, 2, 2]
    assert barbell.has_arc(2, 3) and barbell.has_arc(3, 2)
    assert not barbell.has_arc(0, 5)


def test_duplicate_edges_collapse():
    g = oc.graph_from_edges([(0, 1), (1, 0), (0, 1)])
    assert g.m == 1
    gd = oc.graph_from_edges([(0, 1), (1, 0), (0, 1)], directed=True)
    assert gd.m == 2
    assert gd.d_out.tolist() == [1, 1]


def test_directed_degrees():
    g = oc.graph_from_edges([(0, 1), (0, 2), (2, 1)], directed=True)
    assert g.d_out.tolist() == [2, 0, 1]
    assert g.d_in.tolist() == [0, 2, 1]
    assert sorted(g.in_neighbors(1)) == [0, 2]


def test_load_rejects_weights():
    src = io.StringIO("0 1\n1 2 0.5\n")
    with pytest.raises(GraphFormatError, match="weight"):
        oc.load_edge_list(src)


def test_load_rejects_self_loop_with_line_number():
    src = io.StringIO("0 1\n2 2\n")
    with pytest.raises(GraphFormatError, match="line 2"):
        oc.load_edge_list(src)


def test_load_comments_and_one_indexed():
    src = io.StringIO("# header\n1 2\n2 3\n")
    g = oc.load_edge_list(src, one_indexed=True)
    assert g.n == 3 and g.m == 2
    assert g.ids.tolist() == [1, 2, 3]


def test_load_reindexes_sparse_ids():
    g = oc.load_edge_list(io.StringIO("10 40\n40 7\n"))
    assert g.n == 3
    assert g.ids.tolist() == [7, 10, 40]
    # internal indices follow sorted original ids
    assert g.has_arc(1, 2) and g.has_arc(0, 2)


def test_load_permutation_idempotent(rng):
    edges = [(0, 3), (3, 5), (5, 0), (2, 5)]
    text1 = "\n".join(f"{u} {v}" for u, v in edges)
    perm = rng.permutation(len(edges))
    text2 = "\n".join(f"{edges[i][0]} {edges[i][1]}" for i in perm)
    g1 = oc.load_edge_list(io.StringIO(text1))
    g2 = oc.load_edge_list(io.StringIO(text2))
    assert g1 == g2


def test_write_then_load_round_trip(barbell):
    text = oc.write_edge_list(barbell)
    g = oc.load_edge_list(io.StringIO(text))
    assert g == barbell
    gd = oc.graph_from_edges([(0, 1), (1, 2), (2, 0)], directed=True)
    assert oc.load_edge_list(io.StringIO(oc.write_edge_list(gd)),
                             directed=True) == gd


def test_partition_relabels_by_first_appearance():
    p = oc.Partition.from_labels(np.array([5, 5, 2, 2, 5]))
    assert p.labels.tolist() == [0, 0, 1, 1, 0]
    assert p.k == 2
    comms = p.communities()
    assert [c.tolist() for c in comms] == [[0, 1, 4], [2, 3]]


def test_partition_to_cover():
    p = oc.Partition.from_labels(np.array([0, 0, 1]))
    cover = p.to_cover()
    assert cover.communities == (frozenset({0, 1}), frozenset({2}))


def test_cover_validation():
    with pytest.raises(ValueError):
        oc.Cover.from_sets(3, [frozenset()])
    with pytest.raises(ValueError):
        oc.Cover.from_sets(3, [frozenset({3})])
    c = oc.Cover.from_sets(4, [frozenset({0, 1}), frozenset({1, 2, 3})])
    assert c.overlap_count() == 1
    assert c.membership_counts().tolist() == [1, 2, 1, 1]
    mat = c.to_matrix()
    assert mat.tolist() == [[1, 0], [1, 1], [0, 1], [0, 1]]


def test_cover_file_round_trip():
    c = oc.Cover.from_sets(5, [frozenset({0, 1, 2}), frozenset({2, 4})])
    text = oc.write_cover(c)
    back = oc.load_cover(io.StringIO(text), n=5)
    assert back == c


def test_load_cover_merges_duplicate_vertex_lines():
    src = io.StringIO("1 1\n2 1\n1 2\n3 2\n")
    c = oc.load_cover(src)
    assert c.communities == (frozenset({0, 1}), frozenset({0, 2}))


def test_load_cover_rejects_bad_ids():
    with pytest.raises(GraphFormatError):
        oc.load_cover(io.StringIO("0 1\n"))
    with pytest.raises(GraphFormatError):
        oc.load_cover(io.StringIO("1 1\n9 1\n"), n=3)


def test_strongly_connected_cases():
    cyc = oc.graph_from_edges([(0, 1), (1, 2), (2, 0)], directed=True)
    assert oc.strongly_connected(cyc)
    path = oc.graph_from_edges([(0, 1), (1, 2)], directed=True)
    assert not oc.strongly_connected(path)
    und = oc.graph_from_edges([(0, 1), (2, 3)])
    assert not oc.strongly_connected(und)
    single = oc.graph_from_edges([(0, 1)])
    assert oc.strongly_connected(single)
