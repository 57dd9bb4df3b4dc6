import random

import pytest

from linecayley.cayley import build_graph, connection_from_lines, sample_connection_set
from linecayley.coloring import (
    Coloring,
    coloring_from_classes,
    coset_coloring,
    enumerate_proper_partitions,
    exact_chromatic_number,
    is_proper,
    line_clique,
    plus_zero_recolor,
)
from linecayley.errors import EnumerationLimitExceeded
from oracles import brute_chromatic_number, brute_partition_count


def _neighbors(g):
    return [g.neighbors(v) for v in range(g.num_vertices)]


def test_coloring_from_classes():
    c = coloring_from_classes([[0, 1], [2]], 3)
    assert c.num_colors == 2
    assert c.class_of == (0, 0, 1)
    assert c.classes() == [[0, 1], [2]]
    with pytest.raises(ValueError):
        coloring_from_classes([[0, 1], [1, 2]], 3)
    with pytest.raises(ValueError):
        coloring_from_classes([[0, 1]], 3)


def test_coloring_json_roundtrip():
    c = coloring_from_classes([[0, 2], [1]], 3)
    d = c.to_json_dict()
    assert d["num_colors"] == 2
    assert d["classes"] == [[0, 2], [1]]
    assert Coloring.from_json_dict(d) == c


def test_coset_coloring_proper():
    for q, n, seed in ((3, 2, 1), (3, 3, 2), (5, 3, 3)):
        s = sample_connection_set(q, n, 0.5, seed)
        if not s.lines:
            continue
        g = build_graph(s)
        c = coset_coloring(g)
        assert c.num_colors == q
        assert is_proper(g, c)
        assert c.class_sizes() == [q ** (n - 1)] * q


def test_coset_coloring_requires_member():
    s = connection_from_lines(3, 2, [(0, 1)])
    g = build_graph(s)
    with pytest.raises(ValueError):
        coset_coloring(g, (1, 1))
    c = coset_coloring(g, (0, 2))
    assert is_proper(g, c)


def test_coset_coloring_empty_raises():
    from linecayley.cayley import ConnectionSet

    g = build_graph(ConnectionSet(3, 2, []))
    with pytest.raises(ValueError):
        coset_coloring(g)


def test_line_clique():
    s = connection_from_lines(5, 3, [(1, 2, 1), (0, 0, 1)])
    g = build_graph(s)
    clique = line_clique(g, (1, 2, 1))
    assert len(clique) == 5
    for i, u in enumerate(clique):
        for v in clique[:i]:
            assert g.is_edge(u, v)
    with pytest.raises(ValueError):
        line_clique(g, (1, 0, 1))


def test_is_proper_detects_conflict():
    s = connection_from_lines(3, 2, [(0, 1)])
    g = build_graph(s)
    # vertex 0 and 0 + (0,1) = id 3 are adjacent
    labels = [0] * 9
    labels[3] = 0
    bad = Coloring(1, tuple(labels))
    assert not is_proper(g, bad)


def test_exact_chromatic_number_structure():
    for q, n, seed in ((3, 2, 5), (5, 3, 6)):
        s = sample_connection_set(q, n, 0.5, seed)
        if not s.lines:
            continue
        g = build_graph(s)
        res = exact_chromatic_number(g)
        assert res.exact and res.value == q
        assert len(res.clique) == q
        assert is_proper(g, res.coloring)
        assert res.coloring.num_colors == q


def test_exact_chromatic_number_empty():
    from linecayley.cayley import ConnectionSet

    g = build_graph(ConnectionSet(3, 2, []))
    res = exact_chromatic_number(g)
    assert res.exact and res.value == 1


def test_backtracking_agrees_with_brute():
    rng = random.Random(17)
    seeds = [rng.randrange(10**6) for _ in range(8)]
    for seed in seeds:
        s = sample_connection_set(3, 2, 0.5, seed)
        if not s.lines:
            continue
        g = build_graph(s)
        res = exact_chromatic_number(g, use_structure=False)
        assert res.exact
        assert res.value == brute_chromatic_number(_neighbors(g), 9)
        assert res.value == 3


def test_backtracking_budget_exhaustion():
    s = connection_from_lines(3, 2, [(0, 1), (1, 1), (2, 1)])
    g = build_graph(s)
    res = exact_chromatic_number(g, budget=1, use_structure=False)
    assert not res.exact
    assert res.lower <= res.upper


def test_enumerate_proper_partitions_counts():
    s = connection_from_lines(3, 2, [(0, 1)])
    g = build_graph(s)
    got = sum(1 for _ in enumerate_proper_partitions(g))
    assert got == 36
    assert got == brute_partition_count(_neighbors(g), 3)
    s3 = connection_from_lines(3, 2, [(0, 1), (1, 1), (2, 1)])
    g3 = build_graph(s3)
    assert sum(1 for _ in enumerate_proper_partitions(g3)) == 1


def test_enumerate_proper_partitions_yields_proper():
    s = connection_from_lines(3, 2, [(0, 1), (1, 1)])
    g = build_graph(s)
    seen = set()
    for c in enumerate_proper_partitions(g):
        assert is_proper(g, c)
        key = tuple(tuple(cl) for cl in c.classes())
        assert key not in seen
        seen.add(key)
    assert len(seen) == brute_partition_count(_neighbors(g), 3)


def test_enumerate_limit():
    s = connection_from_lines(3, 2, [(0, 1)])
    g = build_graph(s)
    with pytest.raises(EnumerationLimitExceeded):
        list(enumerate_proper_partitions(g, limit=5))


def test_plus_zero_recolor():
    s = sample_connection_set(5, 3, 0.5, 42)
    g = build_graph(s)
    c = coset_coloring(g)
    r = plus_zero_recolor(c)
    assert r.num_colors == c.num_colors + 1
    assert r.class_of[0] == c.num_colors
    assert all(r.class_of[x] == c.class_of[x] for x in range(1, 125))
    assert is_proper(g, r)
