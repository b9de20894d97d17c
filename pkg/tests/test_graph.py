import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turan53.graph import (
    AlmostRegular,
    CellSpec,
    Graph,
    GraphFormatError,
    GridSpec,
    Irregular,
    Regular,
    classify_regularity,
    complement,
    disjoint_union,
    from_edges,
    grid_compose,
    grid_degree_check,
    make_clique,
    make_cycle,
    make_empty,
    parse_edgelist,
    read_edgelist,
    write_edgelist,
)
from turan53.tables import M_CONG2_CASES, M_DIV4, N27_GRID
from turan53.constructions import build_grid
from turan53.triples import from_graph
from turan53.verifier import brute_find_c5, count_triangles_anti


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def test_make_empty():
    assert make_empty(0).n == 0 and make_empty(0).edge_count == 0
    assert classify_regularity(make_empty(3)) == Regular(0)
    assert count_triangles_anti(make_empty(5)) == (0, 10)


def test_make_clique():
    k4 = make_clique(4)
    assert classify_regularity(k4) == Regular(3)
    assert k4.edge_count == 6
    assert count_triangles_anti(make_clique(5)) == (10, 0)
    assert classify_regularity(make_clique(1)) == Regular(0)


def test_graph_rejects_bad_rows():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(ValueError):
        Graph(1, (0b1,))  # loop
    with pytest.raises(ValueError):
        Graph(2, (0b100, 0))  # out of range


def test_complement_examples():
    assert complement(make_clique(3)) == make_empty(3)
    k44 = complement(disjoint_union([make_clique(4), make_clique(4)]))
    assert classify_regularity(k44) == Regular(4)
    assert all(not k44.adjacent(u, v) for u in range(4) for v in range(4) if u != v)
    assert all(k44.adjacent(u, v) for u in range(4) for v in range(4, 8))
    assert brute_find_c5(k44) is None


def test_c5_self_complementary():
    c5 = make_cycle(5)
    co = complement(c5)
    # 0-2-4-1-3-0 is the cycle in the complement
    relabel = [0, 2, 4, 1, 3]
    mapped = from_edges(5, [(relabel.index(u), relabel.index(v)) for u, v in co.edges()])
    assert mapped == c5


def test_disjoint_union():
    k2 = make_clique(2)
    assert classify_regularity(disjoint_union([k2, k2])) == Regular(1)
    for m in (3, 5, 6):
        g = disjoint_union([make_clique(m)] * 2)
        assert g.n == 2 * m and classify_regularity(g) == Regular(m - 1)
        assert len(from_graph(g)) == sum(count_triangles_anti(g))
    assert len(from_graph(disjoint_union([make_clique(5)] * 2))) == 20
    g = disjoint_union([make_cycle(4), make_clique(3)])
    assert g.degrees() == [2] * 7
    assert g.adjacent(4, 5) and not g.adjacent(3, 4)


def test_grid_all_single_vertices():
    g = grid_compose([make_empty(1)] * 9)
    assert g.n == 9 and classify_regularity(g) == Regular(4)


def test_grid_n27_profile():
    g, _ = build_grid(N27_GRID)
    assert g.n == 27
    assert classify_regularity(g) == Irregular(((12, 3), (13, 24)))


def test_grid_cell_degree_formula():
    sizes = [2, 3, 1, 4, 2, 3, 1, 2, 5]
    parts = [make_cycle(3) if s == 3 else make_empty(s) for s in sizes]
    g = grid_compose(parts)
    # vertex 0 is in cell 1: d_1 + n_2 + n_3 + n_4 + n_7
    assert g.degree(0) == 0 + 3 + 1 + 4 + 1
    offset = 0
    for i, part in enumerate(parts):
        row, col = divmod(i, 3)
        lines = [j for j in range(9) if j != i and (j // 3 == row or j % 3 == col)]
        for v in range(part.n):
            assert g.degree(offset + v) == part.degree(v) + sum(sizes[j] for j in lines)
        offset += part.n


def test_classify_regularity_examples():
    assert classify_regularity(make_cycle(5)) == Regular(2)
    edge_plus_isolated = from_edges(3, [(0, 1)])
    assert classify_regularity(edge_plus_isolated) == AlmostRegular(1, 2, 0)
    # one degree-2 vertex, two of degree 1: almost 1-regular by definition
    path3 = from_edges(3, [(0, 1), (1, 2)])
    assert classify_regularity(path3) == AlmostRegular(1, 1, 2)
    star = from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert classify_regularity(star) == Irregular(((1, 3), (3, 1)))
    path4 = from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert classify_regularity(path4) == Irregular(((1, 2), (2, 2)))


def test_grid_degree_check_examples():
    lemma_r2 = GridSpec.parse(
        [[(1, 0), (2, 1), (2, 1)], [(2, 1), (2, 0), (2, 0)], [(2, 1), (2, 0), (2, 0)]]
    )
    assert lemma_r2 == M_DIV4.spec(2)
    assert grid_degree_check(lemma_r2, 8)
    assert not grid_degree_check(lemma_r2, 7)
    assert grid_degree_check(M_CONG2_CASES[0].spec(1), 38)


def test_gridspec_validation():
    with pytest.raises(ValueError):
        CellSpec(3, 3)
    with pytest.raises(ValueError):
        GridSpec((CellSpec(1, 0),) * 8)
    with pytest.raises(ValueError):
        GridSpec((CellSpec(3, 1),) + (CellSpec(3, 1, True),) + (CellSpec(1, 0),) * 7)
    assert CellSpec(0, 0).n == 0


def test_edgelist_roundtrip():
    g = make_cycle(5)
    buf = io.StringIO()
    write_edgelist(g, buf)
    assert buf.getvalue() == "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n"
    assert read_edgelist(io.StringIO(buf.getvalue())) == g


@pytest.mark.parametrize(
    "text",
    ["", "3\n", "3 1\n", "3 1\n1 0\n", "3 1\n0 3\n", "3 2\n0 1\n0 1\n", "a b\n"],
)
def test_edgelist_errors(text):
    with pytest.raises(GraphFormatError):
        parse_edgelist(text)


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_complement_of_regular(g):
    cls = classify_regularity(g)
    if isinstance(cls, Regular) and g.n:
        assert classify_regularity(complement(g)) == Regular(g.n - 1 - cls.d)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7), graphs(max_n=7))
def test_union_preserves_c5_freeness(a, b):
    if brute_find_c5(a) is None and brute_find_c5(b) is None:
        assert brute_find_c5(disjoint_union([a, b])) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(graphs(max_n=3), min_size=9, max_size=9))
def test_grid_preserves_c5_freeness(parts):
    g = grid_compose(parts)
    assert g.n == sum(p.n for p in parts)
    if all(brute_find_c5(p) is None for p in parts):
        assert brute_find_c5(g) is None
