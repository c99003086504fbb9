"""Isomorph-free enumeration of colored graphs with filters, catalogue
persistence, and census reports.

The engine fixes color 0 as the standard matching (0 1)(2 3)... and extends
one color at a time; after each extension the partial tables are reduced to
canonical representatives, so the frontier holds one table per isomorphism
class and never revisits relabelings.  Connectivity and the requested
filters apply to the completed graphs, and a final pass deduplicates under
the requested equivalence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import BudgetExceededError, GemSyntaxError
from .graph import (
    ColoredGraph,
    Equivalence,
    _two_color,
    canonical_matchings,
    format_code_line,
    parse_code_line,
)
from .invariants import classify_small, g_degree
from .moves import DipoleKind, find_dipoles
from .singularity import classify_graph, is_closed_manifold, is_singular_manifold

DEFAULT_BUDGET = (5, 8)  # max dimension, max order


# ============================================================
# Parameters and catalogue
# ============================================================


@dataclass(frozen=True)
class CensusParams:
    n: int
    order: int
    equivalence: Equivalence = Equivalence.COLOR_PERMUTING
    bipartite: Optional[bool] = None  # True: only, False: exclude, None: both
    supercontracted: bool = False
    no_ordinary_dipoles: bool = False
    budget: tuple[int, int] = DEFAULT_BUDGET

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.order < 2 or self.order % 2:
            raise ValueError("order must be even and >= 2")
        max_n, max_order = self.budget
        if self.n > max_n or self.order > max_order:
            raise BudgetExceededError(
                f"census n={self.n}, order={self.order} exceeds budget "
                f"(n <= {max_n}, order <= {max_order})"
            )

    def filter_tags(self) -> str:
        tags = ["connected"]
        if self.bipartite is True:
            tags.append("bipartite")
        if self.bipartite is False:
            tags.append("nonbipartite")
        if self.supercontracted:
            tags.append("supercontracted")
        if self.no_ordinary_dipoles:
            tags.append("no-ordinary-dipoles")
        return ",".join(tags)


@dataclass(frozen=True)
class Catalogue:
    params: CensusParams
    entries: tuple[str, ...]  # canonical single-line codes, sorted
    bipartite_count: int
    nonbipartite_count: int

    @property
    def count(self) -> int:
        return len(self.entries)

    def graphs(self) -> Iterator[ColoredGraph]:
        for line in self.entries:
            yield parse_code_line(line)


# ============================================================
# Enumeration
# ============================================================


def _fpf_involutions(order: int) -> tuple[tuple[int, ...], ...]:
    """Every fixed-point-free involution on 0..order-1."""

    def pair_up(free: tuple[int, ...]):
        if not free:
            yield ()
            return
        a = free[0]
        for i in range(1, len(free)):
            b = free[i]
            for rest in pair_up(free[1:i] + free[i + 1 :]):
                yield ((a, b),) + rest

    out = []
    for pairs in pair_up(tuple(range(order))):
        row = [0] * order
        for a, b in pairs:
            row[a], row[b] = b, a
        out.append(tuple(row))
    return tuple(out)


def _standard_matching(order: int) -> tuple[int, ...]:
    return tuple(v + 1 if v % 2 == 0 else v - 1 for v in range(order))


def _connected(matchings, order: int) -> bool:
    seen = [False] * order
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for row in matchings:
            w = row[v]
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == order


def _keep_completed(matchings, order: int, params: CensusParams) -> bool:
    """Raw-table filters for fully colored candidates."""
    if params.supercontracted:
        # connectivity of any drop-one table implies the full table's
        for drop in range(len(matchings)):
            kept = matchings[:drop] + matchings[drop + 1 :]
            if not _connected(kept, order):
                return False
    elif not _connected(matchings, order):
        return False
    if params.bipartite is not None:
        if (_two_color(matchings) is not None) != params.bipartite:
            return False
    return True


def enumerate_census(params: CensusParams) -> Catalogue:
    """Complete, duplicate-free list of graph classes matching the filters.

    Deterministic: the same parameters always produce the same entries in
    the same order.
    """
    params.validate()
    order = params.order
    involutions = _fpf_involutions(order)

    frontier: list = [(_standard_matching(order),)]
    for level in range(1, params.n + 1):
        finishing = level == params.n
        seen: dict = {}
        for partial in frontier:
            for extra in involutions:
                cand = partial + (extra,)
                # cheap isomorphism-invariant filters before canonicalizing
                if finishing and not _keep_completed(cand, order, params):
                    continue
                table = canonical_matchings(cand)
                if table not in seen:
                    seen[table] = None
        frontier = sorted(seen)

    survivors = [ColoredGraph(table) for table in frontier]
    if params.no_ordinary_dipoles:
        survivors = [
            g
            for g in survivors
            if not any(d.kind is DipoleKind.ORDINARY for d in find_dipoles(g))
        ]

    classes: dict = {}
    permuting = params.equivalence is Equivalence.COLOR_PERMUTING
    for g in survivors:
        rep = canonical_matchings(g.matchings, color_permuting=permuting)
        classes.setdefault(rep, ColoredGraph(rep))

    reps = sorted(classes.values(), key=lambda g: g.matchings)
    bip = sum(1 for g in reps if g.is_bipartite() is not None)
    return Catalogue(
        params=params,
        entries=tuple(format_code_line(g) for g in reps),
        bipartite_count=bip,
        nonbipartite_count=len(reps) - bip,
    )


def random_graph(n: int, order: int, rng: random.Random) -> ColoredGraph:
    """A uniformly drawn valid graph: color 0 standard, the rest rejection
    sampled until the union is connected."""
    if order < 2 or order % 2:
        raise ValueError("order must be even and >= 2")
    base = _standard_matching(order)
    verts = list(range(order))
    while True:
        rows = [base]
        for _ in range(n):
            free = verts[:]
            rng.shuffle(free)
            row = [0] * order
            while free:
                a = free.pop()
                b = free.pop()
                row[a], row[b] = b, a
            rows.append(tuple(row))
        if _connected(rows, order):
            return ColoredGraph(tuple(rows))


# ============================================================
# Catalogue files
# ============================================================

_HEADER_PREFIX = "# gemkit-census v1"


def format_catalogue(cat: Catalogue) -> str:
    p = cat.params
    lines = [
        f"{_HEADER_PREFIX} n={p.n} order={p.order} "
        f"eq={p.equivalence.value} filters={p.filter_tags()}"
    ]
    lines.extend(cat.entries)
    lines.append(
        f"# count={cat.count} bipartite={cat.bipartite_count} "
        f"nonbipartite={cat.nonbipartite_count}"
    )
    return "\n".join(lines) + "\n"


def parse_catalogue(text: str) -> Catalogue:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith(_HEADER_PREFIX):
        raise GemSyntaxError("missing catalogue header")
    fields = dict(
        tok.split("=", 1) for tok in lines[0][len(_HEADER_PREFIX) :].split() if "=" in tok
    )
    try:
        params = CensusParams(
            n=int(fields["n"]),
            order=int(fields["order"]),
            equivalence=Equivalence(fields["eq"]),
            bipartite=(
                True
                if "bipartite" in fields["filters"].split(",")
                else False
                if "nonbipartite" in fields["filters"].split(",")
                else None
            ),
            supercontracted="supercontracted" in fields["filters"].split(","),
            no_ordinary_dipoles="no-ordinary-dipoles" in fields["filters"].split(","),
        )
    except (KeyError, ValueError) as exc:
        raise GemSyntaxError(f"bad catalogue header: {exc}") from None
    entries = tuple(ln for ln in lines[1:] if not ln.startswith("#"))
    graphs = [parse_code_line(ln) for ln in entries]
    bip = sum(1 for g in graphs if g.is_bipartite() is not None)
    return Catalogue(params, entries, bip, len(graphs) - bip)


# ============================================================
# Census report
# ============================================================


@dataclass(frozen=True)
class CensusRow:
    code: str
    bipartite: bool
    closed: Optional[bool]
    singular_manifold: Optional[bool]
    omega_reduced: Optional[int]
    name: Optional[str]
    identities_ok: bool


@dataclass(frozen=True)
class CensusReport:
    catalogue: Catalogue
    rows: tuple[CensusRow, ...]
    omega_histogram: dict
    closed_count: int
    singular_manifold_count: int
    identity_failures: tuple[str, ...]

    def format_text(self) -> str:
        cat = self.catalogue
        out = [
            f"census n={cat.params.n} order={cat.params.order} "
            f"count={cat.count} bipartite={cat.bipartite_count} "
            f"nonbipartite={cat.nonbipartite_count}"
        ]
        for row in self.rows:
            bits = [
                f"bipartite={_tri(row.bipartite)}",
                f"closed={_tri(row.closed)}",
                f"singular_manifold={_tri(row.singular_manifold)}",
            ]
            if row.omega_reduced is not None:
                bits.append(f"omega_G_reduced={row.omega_reduced}")
            if row.name:
                bits.append(f"name={row.name}")
            out.append(f"{row.code} " + " ".join(bits))
        if self.omega_histogram:
            hist = " ".join(
                f"{k}:{v}" for k, v in sorted(self.omega_histogram.items())
            )
            out.append(f"# omega_G_reduced histogram: {hist}")
        out.append(
            f"# closed={self.closed_count} singular_manifold={self.singular_manifold_count}"
        )
        if self.identity_failures:
            out.append("# IDENTITY FAILURES: " + "; ".join(self.identity_failures))
        else:
            out.append("# identities: all hold")
        return "\n".join(out) + "\n"


def _tri(x: Optional[bool]) -> str:
    return "unknown" if x is None else ("true" if x else "false")


def census_report(cat: Catalogue) -> CensusReport:
    """Per-entry invariants plus the global identity checks: the bigon-count
    inequality with its singular-manifold equality case, the G-degree
    identities, and degree parity for bipartite or singular-manifold
    entries."""
    rows = []
    hist: dict = {}
    failures = []
    closed_count = 0
    singular_count = 0
    for line in cat.entries:
        g = parse_code_line(line)
        cls = classify_graph(g)
        omega_reduced = None
        identities_ok = True
        closed = is_closed_manifold(g, cls)
        singular = is_singular_manifold(g, cls)
        if g.n == 4:
            report = g_degree(g)
            omega_reduced = report.omega_reduced
            checks = report.checks
            if not (
                checks.multiple_of_three
                and checks.closed_form
                and checks.subdegree
                and all(checks.pair_relation.values())
            ):
                identities_ok = False
                failures.append(f"{line}: G-degree identities")
            slack = (
                2 * _rank_count(cls, 3) - 3 * _rank_count(cls, 2) + 10 * g.p
            )
            if slack < 0:
                identities_ok = False
                failures.append(f"{line}: bigon-count inequality")
            if singular is not None and (slack == 0) != singular:
                identities_ok = False
                failures.append(f"{line}: singular-manifold equality case")
            parity_applies = g.is_bipartite() is not None or singular is True
            if parity_applies and omega_reduced is not None and omega_reduced % 2:
                identities_ok = False
                failures.append(f"{line}: reduced degree parity")
            hist[omega_reduced] = hist.get(omega_reduced, 0) + 1
        name = None
        if g.order <= 6 and g.n <= 4:
            try:
                name = classify_small(g, cls)
            except Exception:
                name = None
        if closed is True:
            closed_count += 1
        if singular is True:
            singular_count += 1
        rows.append(
            CensusRow(
                code=line,
                bipartite=g.is_bipartite() is not None,
                closed=closed,
                singular_manifold=singular,
                omega_reduced=omega_reduced,
                name=name,
                identities_ok=identities_ok,
            )
        )
    return CensusReport(
        catalogue=cat,
        rows=tuple(rows),
        omega_histogram=hist,
        closed_count=closed_count,
        singular_manifold_count=singular_count,
        identity_failures=tuple(failures),
    )


def _rank_count(cls, h: int) -> int:
    return cls.lattice.rank_counts().get(h, 0)
