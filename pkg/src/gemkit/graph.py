"""Core data model: edge-colored graphs, text formats, canonical codes, DOT export.

A graph on an even vertex set 0..order-1 carries n+1 colors; each color c
induces a perfect matching stored as an involution image row, so
``matchings[c][v]`` is the unique c-neighbor of v.  Everything downstream
(residues, moves, invariants) walks these rows, which makes every elementary
step O(1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    ColorRangeError,
    DisconnectedError,
    FixedPointError,
    GemSyntaxError,
    InvolutionError,
    OddOrderError,
)

Matchings = tuple  # tuple[tuple[int, ...], ...]


# ============================================================
# The graph itself
# ============================================================


@dataclass(frozen=True)
class ColoredGraph:
    """Connected (n+1)-regular multigraph with a proper (n+1)-edge-coloring.

    Immutable; all operations elsewhere in the package return new graphs.
    """

    matchings: Matchings

    def __init__(self, matchings: Iterable[Iterable[int]]):
        rows = tuple(tuple(row) for row in matchings)
        object.__setattr__(self, "matchings", rows)
        self._validate()

    def _validate(self) -> None:
        rows = self.matchings
        if len(rows) < 2:
            raise ValueError("a colored graph needs at least two colors (n >= 1)")
        order = len(rows[0])
        if order == 0:
            raise ValueError("empty vertex set")
        if order % 2 != 0:
            raise OddOrderError(f"order {order} is odd")
        for c, row in enumerate(rows):
            if len(row) != order:
                raise InvolutionError(f"color {c}: row length {len(row)} != order {order}")
            for v, w in enumerate(row):
                if not isinstance(w, int) or not (0 <= w < order):
                    raise InvolutionError(f"color {c}: image {w} of vertex {v} out of range")
                if w == v:
                    raise FixedPointError(f"color {c}: vertex {v} maps to itself")
            for v in range(order):
                if row[row[v]] != v:
                    raise InvolutionError(f"color {c}: not an involution at vertex {v}")
        reached = _reach(rows, 0)
        if len(reached) != order:
            missing = min(set(range(order)) - reached)
            raise DisconnectedError(f"vertex {missing} unreachable from vertex 0")

    # ---- basic accessors ----

    @property
    def n(self) -> int:
        """Represented dimension: number of colors minus one."""
        return len(self.matchings) - 1

    @property
    def order(self) -> int:
        return len(self.matchings[0])

    @property
    def p(self) -> int:
        """Half the order (edges per color)."""
        return self.order // 2

    @property
    def colors(self) -> range:
        return range(len(self.matchings))

    @property
    def vertices(self) -> range:
        return range(self.order)

    def neighbor(self, v: int, c: int) -> int:
        return self.matchings[c][v]

    def check_color(self, c: int) -> None:
        if not (0 <= c <= self.n):
            raise ColorRangeError(f"color {c} outside 0..{self.n}")

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield (v, w, c) with v < w, one triple per edge."""
        for c, row in enumerate(self.matchings):
            for v, w in enumerate(row):
                if v < w:
                    yield (v, w, c)

    # ---- relabelings ----

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Apply the vertex permutation v -> perm[v]."""
        order = self.order
        if sorted(perm) != list(range(order)):
            raise ValueError("relabel needs a permutation of the vertex set")
        inv = [0] * order
        for v, w in enumerate(perm):
            inv[w] = v
        rows = tuple(
            tuple(perm[row[inv[v]]] for v in range(order)) for row in self.matchings
        )
        return ColoredGraph(rows)

    def permute_colors(self, perm: Sequence[int]) -> "ColoredGraph":
        """Return the graph whose new color c is the old color perm[c]."""
        if sorted(perm) != list(self.colors):
            raise ValueError("permute_colors needs a permutation of the color set")
        return ColoredGraph(tuple(self.matchings[c] for c in perm))

    # ---- bipartition ----

    def is_bipartite(self) -> Optional["Bipartition"]:
        """The 2-coloring of the vertex set if one exists, else None.

        Unique up to swapping the classes; the class containing vertex 0
        comes first.
        """
        side = _two_color(self.matchings)
        if side is None:
            return None
        cls0 = frozenset(v for v in self.vertices if side[v] == 0)
        cls1 = frozenset(v for v in self.vertices if side[v] == 1)
        return Bipartition((cls0, cls1))

    # ---- canonical codes ----

    def canonical_code(self, equivalence: "Equivalence" = None) -> "CanonicalCode":
        return canonical_code(self, equivalence or Equivalence.COLOR_PRESERVING)

    def __repr__(self) -> str:  # keep tracebacks readable
        return f"ColoredGraph(n={self.n}, order={self.order})"


@dataclass(frozen=True)
class Bipartition:
    """The two vertex classes of a bipartite graph."""

    classes: tuple[frozenset, frozenset]

    def side(self, v: int) -> int:
        return 0 if v in self.classes[0] else 1


class Equivalence(Enum):
    COLOR_PRESERVING = "color-preserving"
    COLOR_PERMUTING = "color-permuting"


@dataclass(frozen=True)
class CanonicalCode:
    """Total-order key over graphs: equal iff isomorphic under `equivalence`."""

    equivalence: Equivalence
    code: bytes

    def __lt__(self, other: "CanonicalCode") -> bool:
        return self.code < other.code


# ============================================================
# Traversal-based canonical labeling
# ============================================================
#
# Every vertex has exactly one neighbor per color, so a breadth-first
# traversal that scans colors in increasing order is fully determined by its
# start vertex.  Relabeling by discovery order and taking the minimum
# serialized matching table over all start vertices therefore yields a true
# canonical form for connected graphs; isomorphic graphs produce identical
# sets of rooted tables.  Color permutations are handled by minimizing over
# the (n+1)! color orders, which stays tiny for n <= 5.


def _reach(matchings: Matchings, start: int) -> set:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for row in matchings:
            w = row[v]
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _two_color(matchings: Matchings) -> Optional[list]:
    order = len(matchings[0])
    side: list = [None] * order
    for root in range(order):
        if side[root] is not None:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for row in matchings:
                w = row[v]
                if side[w] is None:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    return side


def _rooted_table(matchings: Matchings, start: int) -> Matchings:
    """Relabel by color-ordered BFS discovery from `start` (connected input)."""
    order = len(matchings[0])
    label = [-1] * order
    label[start] = 0
    discovery = [start]
    for u in discovery:  # grows while iterating: BFS queue
        for row in matchings:
            w = row[u]
            if label[w] < 0:
                label[w] = len(discovery)
                discovery.append(w)
    return tuple(
        tuple(label[row[discovery[v]]] for v in range(order)) for row in matchings
    )


def _min_rooted_table(matchings: Matchings) -> Matchings:
    best = None
    for start in range(len(matchings[0])):
        table = _rooted_table(matchings, start)
        if best is None or table < best:
            best = table
    return best


def canonical_matchings(matchings: Matchings, color_permuting: bool = False) -> Matchings:
    """Canonical representative of a raw matching table.

    Works on possibly disconnected tables (used by the census while colors
    are still being assigned): components are canonicalized independently,
    sorted, and re-stacked block by block.
    """
    comps = _components_all_colors(matchings)
    if len(comps) == 1:
        return _apply_color_perms(matchings, color_permuting, _min_rooted_table)

    def canon_split(ms: Matchings) -> Matchings:
        parts = []
        for comp in _components_all_colors(ms):
            index = {v: i for i, v in enumerate(comp)}
            sub = tuple(tuple(index[row[v]] for v in comp) for row in ms)
            parts.append(_min_rooted_table(sub))
        parts.sort(key=lambda t: (len(t[0]), t))
        stacked = []
        for c in range(len(ms)):
            row: list = []
            offset = 0
            for part in parts:
                row.extend(x + offset for x in part[c])
                offset += len(part[c])
            stacked.append(tuple(row))
        return tuple(stacked)

    return _apply_color_perms(matchings, color_permuting, canon_split)


def _apply_color_perms(matchings: Matchings, color_permuting: bool, canon) -> Matchings:
    if not color_permuting:
        return canon(matchings)
    best = None
    for perm in _admissible_color_orders(matchings):
        table = canon(tuple(matchings[c] for c in perm))
        if best is None or table < best:
            best = table
    return best


def _pair_components(matchings: Matchings, i: int, j: int) -> int:
    order = len(matchings[0])
    mi, mj = matchings[i], matchings[j]
    seen = [False] * order
    count = 0
    for v in range(order):
        if seen[v]:
            continue
        count += 1
        u = v
        while not seen[u]:
            seen[u] = True
            step = mi[u]
            seen[step] = True
            u = mj[step]
    return count


def _admissible_color_orders(matchings: Matchings):
    """Color orders worth trying when minimizing over recolorings.

    Each color gets an isomorphism-invariant signature (the sorted cycle
    counts it forms with every other color); only orders listing signatures
    in their sorted sequence can attain the minimum, so the search shrinks
    from (n+1)! to the product of the signature multiplicities' factorials.
    """
    k = len(matchings)
    pair = {}
    for i in range(k):
        for j in range(i + 1, k):
            pair[(i, j)] = pair[(j, i)] = _pair_components(matchings, i, j)
    signature = {
        c: tuple(sorted(pair[(c, d)] for d in range(k) if d != c)) for c in range(k)
    }
    groups: dict = {}
    for c in range(k):
        groups.setdefault(signature[c], []).append(c)
    ordered_groups = [groups[sig] for sig in sorted(groups)]
    for parts in itertools.product(
        *(itertools.permutations(group) for group in ordered_groups)
    ):
        yield tuple(c for part in parts for c in part)


def _components_all_colors(matchings: Matchings) -> list:
    order = len(matchings[0])
    seen = [False] * order
    comps = []
    for root in range(order):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        stack = [root]
        while stack:
            v = stack.pop()
            for row in matchings:
                w = row[v]
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _encode(matchings: Matchings) -> bytes:
    n = len(matchings) - 1
    order = len(matchings[0])
    head = f"{n}/{order}:".encode()
    body = b"".join(v.to_bytes(2, "big") for row in matchings for v in row)
    return head + body


def canonical_code(g: ColoredGraph, equivalence: Equivalence = Equivalence.COLOR_PRESERVING) -> CanonicalCode:
    """Deterministic code equal for two graphs iff they are isomorphic."""
    table = canonical_matchings(
        g.matchings, color_permuting=(equivalence is Equivalence.COLOR_PERMUTING)
    )
    return CanonicalCode(equivalence, _encode(table))


def canonical_graph(g: ColoredGraph, equivalence: Equivalence = Equivalence.COLOR_PRESERVING) -> ColoredGraph:
    """The canonical representative of g's isomorphism class."""
    return ColoredGraph(
        canonical_matchings(g.matchings, equivalence is Equivalence.COLOR_PERMUTING)
    )


def isomorphic(a: ColoredGraph, b: ColoredGraph, equivalence: Equivalence = Equivalence.COLOR_PRESERVING) -> bool:
    if a.n != b.n or a.order != b.order:
        return False
    return canonical_code(a, equivalence) == canonical_code(b, equivalence)


# ============================================================
# GEM v1 text format
# ============================================================
#
# Line 1: ``gem <n> <order>``, then one line per color:
# ``<c>: <img_0> <img_1> ... <img_{order-1}>``.  ``#`` starts a comment,
# tokens are whitespace-separated, color lines may come in any order.


def parse_gem(text: str) -> ColoredGraph:
    """Parse GEM v1 text into a validated graph."""
    lines = text.splitlines()
    tokens: list[tuple[str, int, int]] = []
    for ln, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0]
        pos = 0
        for tok in body.split():
            pos = body.index(tok, pos)
            tokens.append((tok, ln, pos + 1))
            pos += len(tok)
    if not tokens:
        raise GemSyntaxError("empty input")
    if tokens[0][0] != "gem":
        raise GemSyntaxError(f"expected 'gem' header, got {tokens[0][0]!r}", tokens[0][1], tokens[0][2])
    if len(tokens) < 3:
        raise GemSyntaxError("header needs '<n> <order>'", tokens[0][1])
    n = _int_token(tokens[1], "dimension")
    order = _int_token(tokens[2], "order")
    if n < 1:
        raise GemSyntaxError(f"dimension must be >= 1, got {n}", tokens[1][1], tokens[1][2])
    if order < 2:
        raise GemSyntaxError(f"order must be >= 2, got {order}", tokens[2][1], tokens[2][2])

    expected = (n + 1) * (order + 1)
    rest = tokens[3:]
    if len(rest) != expected:
        raise GemSyntaxError(
            f"expected {n + 1} color rows of {order} images, found {len(rest)} tokens"
        )
    rows: dict[int, tuple] = {}
    for k in range(n + 1):
        chunk = rest[k * (order + 1) : (k + 1) * (order + 1)]
        head = chunk[0]
        if not head[0].endswith(":"):
            raise GemSyntaxError(f"expected '<color>:' tag, got {head[0]!r}", head[1], head[2])
        c = _int_token((head[0][:-1], head[1], head[2]), "color tag")
        if not (0 <= c <= n):
            raise GemSyntaxError(f"color {c} outside 0..{n}", head[1], head[2])
        if c in rows:
            raise GemSyntaxError(f"duplicate row for color {c}", head[1], head[2])
        rows[c] = tuple(_int_token(t, "image") for t in chunk[1:])
    return ColoredGraph(tuple(rows[c] for c in range(n + 1)))


def _int_token(token: tuple[str, int, int], what: str) -> int:
    text, ln, col = token
    try:
        return int(text)
    except ValueError:
        raise GemSyntaxError(f"bad {what} {text!r}", ln, col) from None


def format_gem(g: ColoredGraph) -> str:
    """Canonical GEM v1 text; ``parse_gem(format_gem(g)) == g``."""
    out = [f"gem {g.n} {g.order}"]
    for c, row in enumerate(g.matchings):
        out.append(f"{c}: " + " ".join(str(v) for v in row))
    return "\n".join(out) + "\n"


def parse_code_line(line: str) -> ColoredGraph:
    """Parse the single-line catalogue form ``n;order;imgs;imgs;...``."""
    parts = line.strip().split(";")
    if len(parts) < 3:
        raise GemSyntaxError("code line needs 'n;order;<rows>'")
    try:
        n = int(parts[0])
        order = int(parts[1])
    except ValueError as exc:
        raise GemSyntaxError(f"bad code header: {exc}") from None
    rows = parts[2:]
    if len(rows) != n + 1:
        raise GemSyntaxError(f"code line has {len(rows)} rows, expected {n + 1}")
    try:
        table = tuple(tuple(int(x) for x in row.split(",")) for row in rows)
    except ValueError as exc:
        raise GemSyntaxError(f"bad image list: {exc}") from None
    for row in table:
        if len(row) != order:
            raise GemSyntaxError(f"row length {len(row)} != order {order}")
    return ColoredGraph(table)


def format_code_line(g: ColoredGraph) -> str:
    rows = ";".join(",".join(str(v) for v in row) for row in g.matchings)
    return f"{g.n};{g.order};{rows}"


# ============================================================
# DOT export
# ============================================================

_PALETTE = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628")


def export_dot(g: ColoredGraph, name: str = "gem") -> str:
    """Graphviz text with one styled parallel edge per (vertex pair, color)."""
    out = [f"graph {name} {{"]
    out.append('  node [shape=circle, fontsize=10];')
    for v in g.vertices:
        out.append(f"  {v};")
    for v, w, c in g.edges():
        color = _PALETTE[c] if c < len(_PALETTE) else "#777777"
        out.append(f'  {v} -- {w} [color="{color}", label="{c}"];')
    out.append("}")
    return "\n".join(out) + "\n"
