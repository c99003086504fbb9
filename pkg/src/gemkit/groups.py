"""Group presentations read off a colored graph, and their abelianizations.

The c-group of a graph has one generator per c-edge (oriented from its
smaller endpoint) and one relator per bicolored {i,c}-cycle, read off by
walking the cycle from its minimum vertex starting along the c-edge.  Adding
relators that kill a spanning set of c-edges over the residues missing color
c turns it into a fundamental-group presentation under the right hypotheses;
the hypothesis checks live in `invariants`, the raw constructions here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .graph import ColoredGraph
from .residues import complement, residues

Word = tuple  # tuple[tuple[int, int], ...]: (generator index, +1 | -1)


@dataclass(frozen=True)
class GroupPresentation:
    """Finite presentation with integer-indexed generators.

    ``extra_killed`` records which single-generator relators were appended to
    connect the color-complement residues; they are also present in
    ``relators``.
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    extra_killed: tuple[int, ...] = ()

    def abelianized_rows(self) -> list[list[int]]:
        """Exponent-sum matrix, one row per relator."""
        rows = []
        for word in self.relators:
            row = [0] * len(self.generators)
            for gen, exp in word:
                row[gen] += exp
            rows.append(row)
        return rows

    def format_lines(self) -> str:
        out = [f"gen {g}" for g in self.generators]
        for word in self.relators:
            out.append("rel " + format_word(word, self.generators))
        return "\n".join(out) + "\n"


def format_word(word: Word, generators: Sequence[str]) -> str:
    if not word:
        return "1"
    parts = []
    for gen, exp in word:
        parts.append(generators[gen] if exp == 1 else f"{generators[gen]}^{exp}")
    return " ".join(parts)


@dataclass(frozen=True)
class AbelianInvariants:
    """H1 in canonical form: free rank plus invariant factors d1 | d2 | ..."""

    free_rank: int
    torsion: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        terms = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return "+".join(terms) if terms else "0"


# ============================================================
# Presentations from a graph
# ============================================================


def c_edges(g: ColoredGraph, c: int) -> list[tuple[int, int]]:
    """The color-c edges as (v, w) with v < w, sorted."""
    g.check_color(c)
    return [(v, g.matchings[c][v]) for v in g.vertices if v < g.matchings[c][v]]


def c_group_presentation(g: ColoredGraph, c: int) -> GroupPresentation:
    """Generators: c-edges oriented small-to-large.  Relators: {i,c}-cycles.

    Each cycle is walked from its minimum vertex, first step along the
    c-edge; a generator enters with exponent +1 when the walk crosses its
    edge from the smaller endpoint.  The group is independent of these
    conventions; fixing them makes the text deterministic.
    """
    g.check_color(c)
    edges = c_edges(g, c)
    gen_index = {e: k for k, e in enumerate(edges)}
    relators = []
    for i in g.colors:
        if i == c:
            continue
        for rv in residues(g, (i, c)):
            start = rv.vertices[0]
            word = []
            v, along_c = start, True
            while True:
                w = g.matchings[c if along_c else i][v]
                if along_c:
                    k = gen_index[(min(v, w), max(v, w))]
                    word.append((k, 1 if v < w else -1))
                v, along_c = w, not along_c
                if v == start and along_c:
                    break
            relators.append(tuple(word))
    labels = tuple(f"g{k}" for k in range(len(edges)))
    return GroupPresentation(labels, tuple(relators))


def connecting_relators(g: ColoredGraph, c: int) -> tuple[int, ...]:
    """Indices of a minimal set of c-edges whose killing connects the
    residues missing color c.

    Greedy by increasing edge index over the quotient multigraph whose nodes
    are those residues, so the set is deterministic; it has g_chat - 1
    elements.
    """
    g.check_color(c)
    comps = residues(g, complement(1 << c, g.n))
    node_of = {}
    for k, rv in enumerate(comps):
        for v in rv.vertices:
            node_of[v] = k
    parent = list(range(len(comps)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for k, (v, w) in enumerate(c_edges(g, c)):
        rv, rw = find(node_of[v]), find(node_of[w])
        if rv != rw:
            parent[rv] = rw
            chosen.append(k)
    return tuple(chosen)


def quotient_presentation(g: ColoredGraph, c: int) -> GroupPresentation:
    """The c-group with a spanning set of c-edges added as relators."""
    pres = c_group_presentation(g, c)
    killed = connecting_relators(g, c)
    extra = tuple(((k, 1),) for k in killed)
    return GroupPresentation(pres.generators, pres.relators + extra, killed)


# ============================================================
# Integer Smith form and H1
# ============================================================


def smith_invariant_factors(rows: Iterable[Iterable[int]], width: int) -> list[int]:
    """Nonzero diagonal of the Smith normal form, as a divisibility chain.

    Two phases: diagonalize with the globally smallest entry as pivot (picked
    afresh after every reduction round, which keeps coefficient growth tame),
    then sort divisibility into the diagonal by pairwise gcd/lcm exchanges,
    which are realizable by elementary operations on a diagonal pair.
    """
    mat = [list(r) for r in rows]
    for r in mat:
        if len(r) != width:
            raise ValueError("ragged relator matrix")
    nr, nc = len(mat), width
    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        while True:
            piv = None
            for i in range(t, nr):
                for j in range(t, nc):
                    x = mat[i][j]
                    if x and (piv is None or abs(x) < abs(mat[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            if piv[0] != t:
                mat[t], mat[piv[0]] = mat[piv[0]], mat[t]
            if piv[1] != t:
                for row in mat:
                    row[t], row[piv[1]] = row[piv[1]], row[t]
            pivot = mat[t][t]
            for i in range(t + 1, nr):
                q = mat[i][t] // pivot
                if q:
                    for j in range(t, nc):
                        mat[i][j] -= q * mat[t][j]
            for j in range(t + 1, nc):
                q = mat[t][j] // pivot
                if q:
                    for i in range(t, nr):
                        mat[i][j] -= q * mat[i][t]
            if all(mat[i][t] == 0 for i in range(t + 1, nr)) and all(
                mat[t][j] == 0 for j in range(t + 1, nc)
            ):
                break
        if mat[t][t] == 0:
            break
        diag.append(abs(mat[t][t]))
        t += 1

    # bubble gcd/lcm until the chain divides in order
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a:
                g = gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
    return diag


def homology_h1(pres: GroupPresentation) -> AbelianInvariants:
    """Abelianization of the presented group, in invariant-factor form."""
    factors = smith_invariant_factors(pres.abelianized_rows(), len(pres.generators))
    rank = len(factors)
    return AbelianInvariants(
        free_rank=len(pres.generators) - rank,
        torsion=tuple(d for d in factors if d > 1),
    )
