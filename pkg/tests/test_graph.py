"""Data model, GEM text round-trips, bipartition, canonical codes, DOT."""

import itertools
import re

import pytest

from gemkit import (
    ColoredGraph,
    DisconnectedError,
    Equivalence,
    FixedPointError,
    GemSyntaxError,
    InvolutionError,
    OddOrderError,
    canonical_code,
    export_dot,
    format_code_line,
    format_gem,
    isomorphic,
    parse_code_line,
    parse_gem,
)
from gemkit.library import k2, q4


# ============================================================
# Parsing and validation
# ============================================================


def test_parse_order2_all_colors_joined():
    text = "gem 4 2\n0: 1 0\n1: 1 0\n2: 1 0\n3: 1 0\n4: 1 0\n"
    g = parse_gem(text)
    assert g.n == 4 and g.order == 2
    assert g.matchings == k2(4).matchings


def test_parse_torus_fixture(t6):
    lines = ["gem 2 6"]
    for c in range(3):
        imgs = [3 + ((i + c) % 3) if i < 3 else (i - 3 - c) % 3 for i in range(6)]
        lines.append(f"{c}: " + " ".join(map(str, imgs)))
    g = parse_gem("\n".join(lines))
    assert g == t6
    # independent oracle: chi via bigon count minus half the order, bipartite
    bigons = _bigon_count(g)
    assert bigons - g.order // 2 == 0
    assert _bfs_two_coloring(g) is not None


def test_parse_comments_and_whitespace():
    text = "# a torus\ngem 1 4   # header\n0: 1 0 3 2\n1: 3 2 1 0  # cycle\n"
    g = parse_gem(text)
    assert g.order == 4


def test_parse_rows_any_order():
    text = "gem 1 4\n1: 3 2 1 0\n0: 1 0 3 2\n"
    g = parse_gem(text)
    assert g.matchings[0] == (1, 0, 3, 2)


def test_parse_fixed_point_rejected():
    text = "gem 4 4\n0: 1 0 3 2\n1: 1 0 3 2\n2: 1 0 3 2\n3: 1 0 3 2\n4: 0 1 3 2\n"
    with pytest.raises(FixedPointError):
        parse_gem(text)


def test_parse_non_involution_rejected():
    text = "gem 1 4\n0: 1 0 3 2\n1: 1 2 3 0\n"
    with pytest.raises(InvolutionError):
        parse_gem(text)


def test_parse_odd_order_rejected():
    with pytest.raises(OddOrderError):
        parse_gem("gem 1 3\n0: 1 0 2\n1: 1 0 2\n")


def test_odd_order_constructor():
    with pytest.raises(OddOrderError):
        ColoredGraph(((1, 0, 3),) * 2)


def test_parse_disconnected_rejected():
    rows = ["1 0 3 2"] * 2
    text = "gem 1 4\n" + "\n".join(f"{c}: {r}" for c, r in enumerate(rows))
    with pytest.raises(DisconnectedError):
        parse_gem(text)


def test_parse_syntax_error_position():
    with pytest.raises(GemSyntaxError) as err:
        parse_gem("gem x 2\n")
    assert err.value.line == 1
    assert err.value.column == 5


@pytest.mark.parametrize(
    "bad",
    [
        "",
        "gem 1",
        "graph 1 2",
        "gem 1 2\n0: 1 0\n0: 1 0",  # duplicate color
        "gem 1 2\n0: 1 0\n5: 1 0",  # color out of range
        "gem 1 2\n0: 1 0\n1: 1",  # short row
    ],
)
def test_parse_rejects(bad):
    with pytest.raises(GemSyntaxError):
        parse_gem(bad)


def test_gem_round_trip(fixtures_all):
    for g in fixtures_all:
        assert parse_gem(format_gem(g)) == g
        # canonical text round-trips exactly
        assert format_gem(parse_gem(format_gem(g))) == format_gem(g)


def test_code_line_round_trip(fixtures_all):
    for g in fixtures_all:
        assert parse_code_line(format_code_line(g)) == g


def test_code_line_rejects():
    with pytest.raises(GemSyntaxError):
        parse_code_line("4;2")
    with pytest.raises(GemSyntaxError):
        parse_code_line("1;2;1,0")


# ============================================================
# Bipartition
# ============================================================


def _bfs_two_coloring(g):
    """Independent traversal oracle for two-colorability."""
    side = [None] * g.order
    side[0] = 0
    queue = [0]
    while queue:
        v = queue.pop()
        for c in g.colors:
            w = g.matchings[c][v]
            if side[w] is None:
                side[w] = 1 - side[v]
                queue.append(w)
            elif side[w] == side[v]:
                return None
    return side


def _bigon_count(g):
    total = 0
    for i, j in itertools.combinations(g.colors, 2):
        seen = set()
        for v in g.vertices:
            if v in seen:
                continue
            u = v
            while u not in seen:
                seen.add(u)
                step = g.matchings[i][u]
                seen.add(step)
                u = g.matchings[j][step]
            total += 1
    return total


def test_bipartite_k2():
    bip = k2(4).is_bipartite()
    assert bip is not None
    assert bip.classes == (frozenset({0}), frozenset({1}))


def test_bipartite_torus(t6):
    bip = t6.is_bipartite()
    assert bip.classes == (frozenset({0, 1, 2}), frozenset({3, 4, 5}))


def test_bipartite_matches_oracle(fixtures_all, rng):
    graphs = list(fixtures_all)
    from gemkit.census import random_graph

    graphs += [random_graph(3, 8, rng) for _ in range(30)]
    for g in graphs:
        assert (g.is_bipartite() is not None) == (_bfs_two_coloring(g) is not None)


def test_odd_cycle_not_bipartite():
    # two vertices cannot make an odd cycle; use the complete graph on 4
    # vertices as three mutually crossing matchings: it has 3-cycles
    a, b, c = (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)
    g = ColoredGraph((a, b, c))
    assert g.is_bipartite() is None


# ============================================================
# Canonical codes
# ============================================================


def _brute_force_isomorphic(g1, g2, color_permuting=False):
    """Exhaustive oracle over all vertex (and optionally color) bijections."""
    if g1.order != g2.order or g1.n != g2.n:
        return False
    color_perms = (
        itertools.permutations(g1.colors) if color_permuting else [tuple(g1.colors)]
    )
    for cp in color_perms:
        h = tuple(g2.matchings[c] for c in cp)
        for vp in itertools.permutations(range(g1.order)):
            if all(
                vp[g1.matchings[c][v]] == h[c][vp[v]]
                for c in g1.colors
                for v in g1.vertices
            ):
                return True
    return False


def test_canonical_invariant_under_relabeling(fixtures_all, rng):
    for g in fixtures_all:
        base = canonical_code(g)
        for _ in range(100):
            perm = list(g.vertices)
            rng.shuffle(perm)
            assert canonical_code(g.relabel(perm)) == base


def test_canonical_invariant_under_color_swap():
    g = q4()
    swapped = g.permute_colors((1, 0, 2, 3, 4))
    assert canonical_code(g, Equivalence.COLOR_PERMUTING) == canonical_code(
        swapped, Equivalence.COLOR_PERMUTING
    )


def test_canonical_separates_against_brute_force(rng):
    """On all order-4 3-colored graphs, equal codes exactly match brute-force
    isomorphism, in both equivalences."""
    involutions = [(1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)]
    graphs = []
    for rows in itertools.product(involutions, repeat=3):
        try:
            graphs.append(ColoredGraph(rows))
        except Exception:
            continue
    for g1, g2 in itertools.combinations(graphs, 2):
        for eq, perm in (
            (Equivalence.COLOR_PRESERVING, False),
            (Equivalence.COLOR_PERMUTING, True),
        ):
            same_code = canonical_code(g1, eq) == canonical_code(g2, eq)
            assert same_code == _brute_force_isomorphic(g1, g2, perm)


def test_color_positions_separate_only_when_preserving():
    """Placing the duplicated matching on colors {0,1} versus {0,2} gives
    distinct graphs up to relabeling, but the same class up to recoloring."""
    a, b = (1, 0, 3, 2), (3, 2, 1, 0)
    g01 = ColoredGraph((a, a, b, b, b))
    g02 = ColoredGraph((a, b, a, b, b))
    assert not _brute_force_isomorphic(g01, g02)
    assert _brute_force_isomorphic(g01, g02, color_permuting=True)
    assert canonical_code(g01) != canonical_code(g02)
    assert canonical_code(g01, Equivalence.COLOR_PERMUTING) == canonical_code(
        g02, Equivalence.COLOR_PERMUTING
    )


def test_isomorphic_helper(t6, rng):
    perm = list(t6.vertices)
    rng.shuffle(perm)
    assert isomorphic(t6, t6.relabel(perm))
    assert not isomorphic(t6, k2(2))


# ============================================================
# DOT export
# ============================================================

_EDGE_RE = re.compile(r"^\s+(\d+) -- (\d+) \[color=\"(#[0-9a-f]{6})\", label=\"(\d+)\"\];$")
_NODE_RE = re.compile(r"^\s+(\d+);$")


def _validate_dot(text):
    """Tiny grammar check for the emitted DOT subset; returns (nodes, edges)."""
    lines = text.strip().splitlines()
    assert lines[0].startswith("graph ") and lines[0].endswith("{")
    assert lines[-1] == "}"
    nodes, edges = [], []
    for line in lines[1:-1]:
        if line.strip().startswith("node ["):
            continue
        m = _EDGE_RE.match(line)
        if m:
            edges.append((int(m.group(1)), int(m.group(2)), m.group(3), int(m.group(4))))
            continue
        m = _NODE_RE.match(line)
        assert m, f"unparseable DOT line: {line!r}"
        nodes.append(int(m.group(1)))
    return nodes, edges


def test_dot_k2_parallel_edges():
    nodes, edges = _validate_dot(export_dot(k2(1)))
    assert len(nodes) == 2
    assert len(edges) == 2
    assert len({(color, label) for _, _, color, label in edges}) == 2


def test_dot_torus_counts(t6):
    nodes, edges = _validate_dot(export_dot(t6))
    assert len(nodes) == 6
    assert len(edges) == 9  # (n+1) * order/2
    assert len({color for _, _, color, _ in edges}) == 3


def test_dot_valid_for_all_fixtures(fixtures_all):
    for g in fixtures_all:
        nodes, edges = _validate_dot(export_dot(g))
        assert len(nodes) == g.order
        assert len(edges) == (g.n + 1) * g.p
