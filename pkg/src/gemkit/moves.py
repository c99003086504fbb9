"""Graph moves: dipole detection and cancellation/addition, suspension,
connected sums, vertex indices, internalization, and simplification.

The mechanical layer (finding candidate pairs, surgery on matchings) needs no
topology; labeling a dipole ordinary or singular consults the residue
classification from `singularity`, imported lazily to keep the module graphs
acyclic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional

from .errors import (
    DimensionMismatchError,
    InvalidVertexError,
    NotADipoleError,
    UnresolvedResidueError,
    WouldAnnihilateError,
)
from .graph import ColoredGraph
from .residues import colors_of, complement, mask_of


class DipoleKind(Enum):
    ORDINARY = "ordinary"
    SINGULAR = "singular"


class Properness(Enum):
    PROPER = "proper"
    NOT_PROPER = "not-proper"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Dipole:
    """Two vertices joined by exactly the listed colors, with the endpoints
    lying in different residues on the complementary colors."""

    vertices: tuple[int, int]
    colors: tuple[int, ...]
    kind: Optional[DipoleKind] = None
    properness: Properness = Properness.UNKNOWN

    @property
    def h(self) -> int:
        return len(self.colors)


# ============================================================
# Mechanics
# ============================================================


def joined_colors(g: ColoredGraph, v: int, w: int) -> tuple[int, ...]:
    return tuple(c for c in g.colors if g.matchings[c][v] == w)


def is_dipole_site(g: ColoredGraph, v: int, w: int) -> bool:
    """True iff (v, w) spans a dipole: joined by 1..n colors and separated
    on the complementary colors."""
    cols = joined_colors(g, v, w)
    if not 1 <= len(cols) <= g.n:
        return False
    return _separated(g, v, w, complement(mask_of(cols), g.n))


def _separated(g: ColoredGraph, v: int, w: int, mask: int) -> bool:
    cols = colors_of(mask)
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for c in cols:
            x = g.matchings[c][u]
            if x == w:
                return False
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return True


def dipole_sites(g: ColoredGraph) -> list[tuple[int, int, tuple[int, ...]]]:
    """All (v, w, colors) dipole sites, v < w, in vertex order."""
    out = []
    for v in g.vertices:
        partners = {g.matchings[c][v] for c in g.colors}
        for w in sorted(partners):
            if w < v:
                continue
            cols = joined_colors(g, v, w)
            if 1 <= len(cols) <= g.n and _separated(g, v, w, complement(mask_of(cols), g.n)):
                out.append((v, w, cols))
    return out


def cancel_site(g: ColoredGraph, v: int, w: int) -> ColoredGraph:
    """Remove the dipole at (v, w): delete both vertices and weld the hanging
    edges color by color.  Callers must have checked the site."""
    if g.order <= 2:
        raise WouldAnnihilateError("cancelling the only vertex pair")
    cols = joined_colors(g, v, w)
    keep = [u for u in g.vertices if u not in (v, w)]
    index = {u: i for i, u in enumerate(keep)}
    rows = []
    for c in g.colors:
        row = [0] * len(keep)
        if c in cols:
            for u in keep:
                row[index[u]] = index[g.matchings[c][u]]
        else:
            a, b = g.matchings[c][v], g.matchings[c][w]
            for u in keep:
                x = g.matchings[c][u]
                if x == v:
                    x = b  # u is a; weld its edge through the pair to b
                elif x == w:
                    x = a
                row[index[u]] = index[x]
        rows.append(tuple(row))
    return ColoredGraph(tuple(rows))


def cancel_dipole(g: ColoredGraph, d: Dipole) -> ColoredGraph:
    """Validated cancellation; the site is re-derived, never trusted."""
    if g.order <= 2:
        raise WouldAnnihilateError("cancelling the only vertex pair")
    v, w = d.vertices
    if not (0 <= v < g.order and 0 <= w < g.order) or v == w:
        raise NotADipoleError(f"bad vertex pair {d.vertices}")
    cols = joined_colors(g, v, w)
    if cols != tuple(sorted(d.colors)):
        raise NotADipoleError(f"pair {d.vertices} joined by {cols}, not {d.colors}")
    if not _separated(g, v, w, complement(mask_of(cols), g.n)):
        raise NotADipoleError(f"pair {d.vertices} shares its complement residue")
    return cancel_site(g, v, w)


def add_dipole(g: ColoredGraph, vertex: int, colors: Iterable[int]) -> ColoredGraph:
    """Insert a dipole with the given colors next to `vertex`.

    The two new vertices take ids order and order+1.  Vertex ``order`` hooks
    to `vertex` by every complementary color (so for an n-color dipole this
    splits the single remaining edge at `vertex`; to split a specific edge
    (v, w), pass the endpoint that should sit next to the new pair).  The
    inserted pair always forms a dipole, and one of its two complementary
    residues is an order-two sphere, so the new dipole is proper.
    """
    if not 0 <= vertex < g.order:
        raise InvalidVertexError(f"vertex {vertex} outside 0..{g.order - 1}")
    mask = mask_of(colors)
    cols = colors_of(mask)
    for c in cols:
        g.check_color(c)
    if not 1 <= len(cols) <= g.n:
        raise ValueError(f"a dipole uses between 1 and {g.n} colors, got {len(cols)}")
    near, far = g.order, g.order + 1
    rows = []
    for c in g.colors:
        row = list(g.matchings[c]) + [0, 0]
        if c in cols:
            row[near], row[far] = far, near
        else:
            old = g.matchings[c][vertex]
            row[vertex] = near
            row[near] = vertex
            row[far] = old
            row[old] = far
        rows.append(tuple(row))
    return ColoredGraph(tuple(rows))


def suspend(g: ColoredGraph, c: int) -> ColoredGraph:
    """Add a new color whose matching duplicates color c.

    Same order, one more color; the residues missing either the new color or
    c are copies of g.
    """
    g.check_color(c)
    return ColoredGraph(g.matchings + (g.matchings[c],))


def connected_sum(g1: ColoredGraph, v1: int, g2: ColoredGraph, v2: int) -> ColoredGraph:
    """Delete v1 from g1 and v2 from g2 and weld the hanging edges by color."""
    if g1.n != g2.n:
        raise DimensionMismatchError(f"dimensions {g1.n} != {g2.n}")
    if not 0 <= v1 < g1.order:
        raise InvalidVertexError(f"vertex {v1} outside g1")
    if not 0 <= v2 < g2.order:
        raise InvalidVertexError(f"vertex {v2} outside g2")
    keep1 = [u for u in g1.vertices if u != v1]
    keep2 = [u for u in g2.vertices if u != v2]
    idx1 = {u: i for i, u in enumerate(keep1)}
    idx2 = {u: len(keep1) + i for i, u in enumerate(keep2)}
    rows = []
    for c in g1.colors:
        row = [0] * (len(keep1) + len(keep2))
        a, b = g1.matchings[c][v1], g2.matchings[c][v2]
        for u in keep1:
            x = g1.matchings[c][u]
            row[idx1[u]] = idx2[b] if x == v1 else idx1[x]
        for u in keep2:
            x = g2.matchings[c][u]
            row[idx2[u]] = idx1[a] if x == v2 else idx2[x]
        rows.append(tuple(row))
    return ColoredGraph(tuple(rows))


# ============================================================
# Classification-aware layer
# ============================================================


def find_dipoles(g: ColoredGraph, classification=None) -> list[Dipole]:
    """Every dipole of g with kind and properness labels.

    Kind needs the two complementary residues classified: both singular
    means singular, any ordinary one means ordinary, otherwise the kind is
    left None and properness unknown.
    """
    from .singularity import ResidueClass, classify_graph, is_singular_manifold

    cls = classification if classification is not None else classify_graph(g)
    singular_manifold = is_singular_manifold(g, cls)
    out = []
    for v, w, cols in dipole_sites(g):
        comp = complement(mask_of(cols), g.n)
        side_v = cls.of_containing(comp, v)
        side_w = cls.of_containing(comp, w)
        if side_v is ResidueClass.SINGULAR and side_w is ResidueClass.SINGULAR:
            kind = DipoleKind.SINGULAR
        elif ResidueClass.ORDINARY in (side_v, side_w):
            kind = DipoleKind.ORDINARY
        else:
            kind = None
        if kind is DipoleKind.ORDINARY:
            proper = Properness.PROPER
        elif kind is DipoleKind.SINGULAR:
            if singular_manifold is True or _strictly_pinched(g, cls, v, w, comp):
                proper = Properness.NOT_PROPER
            else:
                proper = Properness.UNKNOWN
        else:
            proper = Properness.UNKNOWN
        out.append(Dipole((v, w), cols, kind, proper))
    return out


def _strictly_pinched(g: ColoredGraph, cls, v: int, w: int, comp_mask: int) -> bool:
    """True when every proper sub-residue of the complement through v or w is
    ordinary on at least one side, which certifies a singular dipole is not
    proper (its cancellation shifts the singular set's Euler characteristic)."""
    from .singularity import ResidueClass

    comp_cols = colors_of(comp_mask)
    for r in range(3, len(comp_cols)):
        for sub in combinations(comp_cols, r):
            cv = cls.of_containing(mask_of(sub), v)
            cw = cls.of_containing(mask_of(sub), w)
            if ResidueClass.ORDINARY not in (cv, cw):
                return False
    return True


@dataclass(frozen=True)
class VertexIndex:
    vertex: int
    index: int

    @property
    def internal(self) -> bool:
        return self.index == 0


def vertex_index(g: ColoredGraph, v: int, classification=None) -> VertexIndex:
    """Number of singular residues missing one color that contain v."""
    from .singularity import ResidueClass, classify_graph

    if not 0 <= v < g.order:
        raise InvalidVertexError(f"vertex {v} outside 0..{g.order - 1}")
    cls = classification if classification is not None else classify_graph(g)
    count = 0
    for c in g.colors:
        side = cls.of_containing(complement(1 << c, g.n), v)
        if side is ResidueClass.UNKNOWN:
            raise UnresolvedResidueError(
                f"residue missing color {c} through vertex {v} is unclassified"
            )
        if side is ResidueClass.SINGULAR:
            count += 1
    return VertexIndex(v, count)


def internalize(g: ColoredGraph) -> ColoredGraph:
    """Grow the graph by proper top-color dipoles until a vertex of index
    zero exists; the represented space is unchanged.

    Picks a vertex of minimal positive index and splits its c-edge for a
    color c whose complement residue through it is singular; each step drops
    the minimal index by one, so at most (initial minimal index) dipoles are
    added.
    """
    from .singularity import ResidueClass, classify_graph

    cur = g
    while True:
        cls = classify_graph(cur)
        indices = [vertex_index(cur, v, cls) for v in cur.vertices]
        best = min(indices, key=lambda vi: (vi.index, vi.vertex))
        if best.index == 0:
            return cur
        v = best.vertex
        chosen = None
        for c in cur.colors:
            if cls.of_containing(complement(1 << c, cur.n), v) is ResidueClass.SINGULAR:
                chosen = c
                break
        dipole_colors = [d for d in cur.colors if d != chosen]
        cur = add_dipole(cur, v, dipole_colors)


@dataclass(frozen=True)
class SimplifyResult:
    graph: ColoredGraph
    complete: bool
    cancelled: tuple[Dipole, ...]


def simplify(g: ColoredGraph) -> SimplifyResult:
    """Cancel proper dipoles until none are certified ordinary.

    Largest dipoles go first (top-size dipoles never need residue
    classification), ties broken by smallest vertex pair.  If unclassifiable
    dipoles remain at the end the result is flagged incomplete, since an
    ordinary dipole may be hiding among them.
    """
    cur = g
    cancelled = []
    while True:
        dipoles = find_dipoles(cur)
        ordinary = [d for d in dipoles if d.kind is DipoleKind.ORDINARY]
        if not ordinary:
            unresolved = [d for d in dipoles if d.kind is None]
            return SimplifyResult(cur, complete=not unresolved, cancelled=tuple(cancelled))
        pick = max(ordinary, key=lambda d: (d.h, tuple(-x for x in d.vertices)))
        cur = cancel_dipole(cur, pick)
        cancelled.append(pick)


def inflate(g: ColoredGraph, k: int, rng: random.Random) -> ColoredGraph:
    """Add k random proper dipoles; inverse moves of `simplify` for tests."""
    cur = g
    for _ in range(k):
        vertex = rng.randrange(cur.order)
        h = rng.randint(1, cur.n)
        cols = rng.sample(range(cur.n + 1), h)
        cur = add_dipole(cur, vertex, cols)
    return cur
