import pytest

from turan53.constructions import (
    LEAF_RULES,
    ConstructionError,
    ConstructionTrace,
    almost_main,
    almost_reg,
    almost_table,
    build,
    is_supported,
    m_cong2_mod4,
    m_cong2_table,
    m_div4,
    make_H,
    n27,
    rebuild,
    reg_even,
    reg_odd,
    resolve_cell,
)
from turan53.graph import (
    AlmostRegular,
    Irregular,
    Regular,
    classify_regularity,
    complement,
    disjoint_union,
    from_edges,
    grid_degree_check,
    make_clique,
    make_empty,
)
from turan53.tables import (
    ALMOST_CASES,
    ALMOST_SPECIAL,
    M_CONG2_CASE1,
    M_CONG2_CASES,
    M_DIV4,
)
from turan53.triples import goodman_M
from turan53.verifier import count_triangles_anti, find_induced_c5

LIMIT = 101


def test_reg_even_examples():
    g, t = reg_even(2, 0)
    assert g == make_empty(2)
    g, _ = reg_even(10, 4)
    assert g == disjoint_union([make_clique(5)] * 2)
    g, _ = reg_even(8, 4)
    assert g == complement(disjoint_union([make_clique(4)] * 2))
    assert find_induced_c5(g) is None


def test_reg_odd_examples():
    g, _ = reg_odd(7, 2)
    # C4 on {0..3} (the complement of two K2) followed by K3
    assert g == from_edges(7, [(0, 2), (0, 3), (1, 2), (1, 3), (4, 5), (4, 6), (5, 6)])
    assert classify_regularity(g) == Regular(2)
    g, _ = reg_odd(9, 2)
    assert g == disjoint_union([make_clique(3)] * 3)
    with pytest.raises(ConstructionError):
        reg_odd(9, 4)
    with pytest.raises(ConstructionError):
        reg_odd(9, 3)


def test_parameter_errors():
    with pytest.raises(ConstructionError):
        reg_even(7, 2)
    with pytest.raises(ConstructionError):
        reg_even(6, 6)
    with pytest.raises(ConstructionError):
        m_div4(6)
    with pytest.raises(ConstructionError):
        m_cong2_mod4(6)
    with pytest.raises(ConstructionError):
        m_cong2_mod4(12)
    with pytest.raises(ConstructionError):
        make_H(4)
    for m in (7, 10, 13):
        with pytest.raises(ConstructionError):
            almost_main(m)


@pytest.mark.parametrize("m,total", [(4, 12), (8, 136), (12, 500)])
def test_m_div4(m, total):
    g, t = m_div4(m)
    assert g.n == 2 * m + 1
    assert classify_regularity(g) == Regular(m)
    assert sum(count_triangles_anti(g)) == total == goodman_M(2 * m + 1)
    assert find_induced_c5(g) is None
    assert t.params["r"] == m // 4


def test_m_cong2_mod4_examples():
    table, r = m_cong2_table(10)
    assert table is M_CONG2_CASE1 and r == 2
    assert table.spec(2).as_rows() == [
        [(3, 0, False)] * 3,
        [(2, 1, False)] * 3,
        [(2, 1, False)] * 3,
    ]
    g, _ = m_cong2_mod4(10)
    assert g.n == 21 and classify_regularity(g) == Regular(10)

    table, r = m_cong2_table(14)
    assert table.name == "case4" and r == 0
    g, _ = m_cong2_mod4(14)
    assert g.n == 29 and sum(count_triangles_anti(g)) == 812

    table, r = m_cong2_table(38)
    assert table.name == "case2" and r == 1
    g, _ = m_cong2_mod4(38)
    assert g.n == 77 and classify_regularity(g) == Regular(38)


@pytest.mark.parametrize("m", range(10, 200, 4))
def test_case1_precedence(m):
    table, _ = m_cong2_table(m)
    assert (table is M_CONG2_CASE1) == (m % 36 in (10, 22, 34))


def test_make_H():
    assert make_H(1) == from_edges(3, [(0, 2), (1, 2)])
    assert make_H(3).degrees() == [3, 3, 3, 3, 4]
    assert classify_regularity(make_H(5)) == AlmostRegular(5, 6, 6)
    for d in range(1, 16, 2):
        h = make_H(d)
        assert h.edge_count == (d + 2) * (d + 1) // 2 - (d + 1) // 2
        assert find_induced_c5(h) is None


def test_almost_reg_examples():
    g, t = almost_reg(11, 3)
    assert sorted(g.degrees()) == [3] * 10 + [4]
    union = t.children[0]
    assert union.rule == "union"
    assert [c.rule for c in union.children] == ["reg_even", "H_graph"]
    k33, _ = reg_even(6, 3)
    assert k33 == complement(disjoint_union([make_clique(3)] * 2))

    g, t = almost_reg(7, 5)
    assert classify_regularity(g) == AlmostRegular(5, 6, 4)
    assert t.children[0].rule == "complement"
    with pytest.raises(ConstructionError):
        almost_reg(11, 5)


def test_almost_main_examples():
    g, _ = almost_main(9)
    assert g.n == 19 and sum(count_triangles_anti(g)) == 200
    spec, case, r = almost_table(21)
    assert (case, r) == ("case2", 1)
    assert spec.as_rows()[0][0] == (7, 1, True)
    assert [c[:2] for row in spec.as_rows() for c in row] == [
        (7, 1), (6, 0), (6, 0), (4, 2), (4, 3), (4, 3), (4, 2), (4, 3), (4, 3)
    ]
    g, _ = almost_main(21)
    assert g.n == 43
    spec, case, _ = almost_table(37)
    assert case == "special37" and spec.n == 75
    g, _ = almost_main(37)
    assert g.n == 75 and isinstance(classify_regularity(g), AlmostRegular)


def test_n27():
    g, t = n27()
    assert classify_regularity(g) == Irregular(((12, 3), (13, 24)))
    assert sum(count_triangles_anti(g)) == 645
    assert find_induced_c5(g) is None


def test_resolve_cell():
    assert resolve_cell(9, 4).rule == "m_div4"
    assert resolve_cell(3, 1, almost=True).rule == "special_table"
    with pytest.raises(ConstructionError):
        resolve_cell(5, 3)
    assert resolve_cell(1, 0).rule == "empty"
    assert resolve_cell(3, 2).rule == "clique"
    assert resolve_cell(8, 5).rule == "reg_even"
    assert resolve_cell(9, 2).rule == "reg_odd"
    assert resolve_cell(21, 10).rule == "m_cong2_mod4"
    assert resolve_cell(7, 5, almost=True).rule == "almost_reg"
    assert resolve_cell(19, 9, almost=True).rule == "almost_main"
    with pytest.raises(ConstructionError):
        resolve_cell(5, 2)  # would need a 2-regular 5-vertex graph, i.e. C5
    with pytest.raises(ConstructionError):
        resolve_cell(5, 1, almost=True)


def test_build_dispatch():
    assert build(17)[1].rule == "m_div4"
    assert build(27)[1].rule == "n27"
    assert build(19)[1].rule == "almost_main"
    assert build(21)[1].rule == "m_cong2_mod4"
    with pytest.raises(ConstructionError, match="no construction for n=13"):
        build(13)
    rejected = [n for n in range(1, 202, 2) if not is_supported(n)]
    assert rejected == [1, 3, 5, 7, 11, 13, 15]


def all_tables():
    for table in (M_DIV4, M_CONG2_CASE1) + M_CONG2_CASES + ALMOST_CASES:
        for r in range(table.r_min, table.r_min + 6):
            yield table.name, table.modulus * r + table.residue, table.spec(r)
    for m, spec in ALMOST_SPECIAL.items():
        yield f"special{m}", m, spec


@pytest.mark.parametrize("name,m,spec", list(all_tables()))
def test_grid_tables_satisfy_equations(name, m, spec):
    assert spec.n == 2 * m + 1
    assert grid_degree_check(spec, m)


def regular_params():
    for n in range(2, LIMIT + 1, 2):
        for d in range(n):
            yield "reg_even", n, d
    for n in range(1, LIMIT + 1, 2):
        for d in range(0, n, 2):
            if 2 * d != n - 1:
                yield "reg_odd", n, d
    for n in range(3, LIMIT + 1, 4):
        for d in range(1, n, 2):
            if 2 * d != n - 1:
                yield "almost_reg", n, d


CONSTRUCTORS = {"reg_even": reg_even, "reg_odd": reg_odd, "almost_reg": almost_reg}


def test_small_constructors_up_to_101():
    for name, n, d in regular_params():
        g, trace = CONSTRUCTORS[name](n, d)
        assert g.n == n
        cls = classify_regularity(g)
        if name == "almost_reg":
            assert isinstance(cls, AlmostRegular) and cls.d == d, (name, n, d)
        else:
            assert cls == Regular(d), (name, n, d)
        if n <= 41:
            assert find_induced_c5(g) is None, (name, n, d)


def test_small_constructors_c5_free_sampled_large():
    for name, n, d in regular_params():
        if n > 41 and (d % 7 == 0 or d in (n // 2 - 1, n // 2 + 1)):
            g, _ = CONSTRUCTORS[name](n, d)
            assert find_induced_c5(g) is None, (name, n, d)


def _check_trace(trace: ConstructionTrace):
    assert trace.rule
    if trace.rule in LEAF_RULES:
        assert not trace.children
    else:
        assert trace.children
    for child in trace.children:
        _check_trace(child)


@pytest.mark.parametrize("n", [n for n in range(9, LIMIT + 1, 2) if is_supported(n)])
def test_build_traces_rebuild(n):
    g, trace = build(n)
    _check_trace(trace)
    assert rebuild(trace) == g
    assert ConstructionTrace.from_json(trace.to_json()) == trace
    if n != 27:
        assert trace.params["n"] == n and trace.params["d"] == (n - 1) // 2
    for node in trace.walk():
        p = node.params
        if node.rule in ("reg_even", "reg_odd"):
            assert p["n"] * p["d"] % 2 == 0
        if node.rule != "grid" and node.rule not in ("union", "complement"):
            assert rebuild(node).n == p["n"]
