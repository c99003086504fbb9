"""Sphere recognition, residue classification, singular sets, Euler
characteristics, and boundary structure.

Sphere recognition is exact through represented dimension 2 and three-valued
above it: necessary conditions (orientability, Euler count, residue
classification, first homology) certify NotSphere, a greedy proper-dipole
reduction to the order-two graph certifies Sphere, and everything else stays
Unknown rather than guessed.  Operations that need every residue classified
refuse with UnresolvedResidueError instead of reporting on partial data.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import UnresolvedResidueError
from .graph import ColoredGraph, canonical_code
from .groups import AbelianInvariants, homology_h1, quotient_presentation
from .moves import cancel_site, dipole_sites
from .residues import (
    ResidueLattice,
    ResidueView,
    colors_of,
    complement,
    mask_of,
    residue_lattice,
)


class Verdict(Enum):
    SPHERE = "sphere"
    NOT_SPHERE = "not-sphere"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SphereStatus:
    verdict: Verdict
    certificate: str


class ResidueClass(Enum):
    ORDINARY = "ordinary"
    SINGULAR = "singular"
    UNKNOWN = "unknown"


_SPHERE_CACHE: dict[bytes, SphereStatus] = {}


# ============================================================
# Sphere recognition
# ============================================================


def quasi_manifold_euler(g: ColoredGraph) -> int:
    """Euler characteristic of the cone space, from residue counts alone:
    alternating sum of h-residue counts weighted by (-1)^(n-h)."""
    lattice = residue_lattice(g)
    return _chi_hat_from_lattice(lattice)


def _chi_hat_from_lattice(lattice: ResidueLattice) -> int:
    n = lattice.n
    return sum((-1) ** (n - h) * k for h, k in lattice.rank_counts().items())


def sphere_status(g: ColoredGraph, step_limit: Optional[int] = None) -> SphereStatus:
    """Decide whether the cone space of g is a sphere of dimension n.

    Verdicts carry a checkable certificate.  Unknown appears only in
    represented dimension >= 3, where recognition is undecidable in general;
    the reduction budget defaults to 10 * order cancellations.
    """
    cacheable = step_limit is None
    key = canonical_code(g).code if cacheable else b""
    if cacheable and key in _SPHERE_CACHE:
        return _SPHERE_CACHE[key]
    status = _sphere_status_impl(g, step_limit)
    if cacheable:
        _SPHERE_CACHE[key] = status
    return status


def _sphere_status_impl(g: ColoredGraph, step_limit: Optional[int]) -> SphereStatus:
    n = g.n
    if g.order == 2:
        return SphereStatus(Verdict.SPHERE, "order-2 graph")
    if n == 1:
        return SphereStatus(Verdict.SPHERE, "bicolored cycle")

    bip = g.is_bipartite()
    lattice = residue_lattice(g)

    if n == 2:
        chi = _chi_hat_from_lattice(lattice)
        if bip is not None and chi == 2:
            return SphereStatus(Verdict.SPHERE, "closed orientable surface with chi=2")
        return SphereStatus(
            Verdict.NOT_SPHERE,
            f"surface with chi={chi}, bipartite={bip is not None}",
        )

    if bip is None:
        return SphereStatus(Verdict.NOT_SPHERE, "not bipartite, hence not orientable")

    chi = _chi_hat_from_lattice(lattice)
    target = 2 if n % 2 == 0 else 0
    if chi != target:
        return SphereStatus(Verdict.NOT_SPHERE, f"chi={chi}, a {n}-sphere needs {target}")

    # classify every residue on 3..n colors; a singular one kills sphereness
    unknown_present = False
    bad_colors: set[int] = set()  # colors whose complement residues are uncertified
    for rv in lattice.all_residues(min_h=3):
        sub = sphere_status(rv.as_graph(), step_limit)
        if sub.verdict is Verdict.NOT_SPHERE:
            return SphereStatus(
                Verdict.NOT_SPHERE,
                f"singular {rv.colors} residue at vertex {rv.vertices[0]}: {sub.certificate}",
            )
        if sub.verdict is Verdict.UNKNOWN:
            unknown_present = True
            if rv.h == n:
                bad_colors.update(set(range(n + 1)) - set(rv.colors))

    # first homology of the cone space, when one color carries all doubt
    if len(bad_colors) <= 1:
        c = next(iter(bad_colors), 0)
        h1 = homology_h1(quotient_presentation(g, c))
        if not h1.trivial:
            return SphereStatus(Verdict.NOT_SPHERE, f"H1 = {h1} is nontrivial")

    limit = step_limit if step_limit is not None else 10 * g.order
    steps = _reduce_to_point(g, limit)
    if steps is not None:
        return SphereStatus(Verdict.SPHERE, f"reduced to the order-2 graph in {steps} moves")
    reason = "reduction stalled"
    if unknown_present:
        reason += " with unclassified residues"
    return SphereStatus(Verdict.UNKNOWN, reason)


def _reduce_to_point(g: ColoredGraph, limit: int) -> Optional[int]:
    """Greedily cancel certified-ordinary dipoles; step count if the order-2
    graph is reached, None if the reduction stalls or overruns."""
    cur = g
    steps = 0
    while cur.order > 2 and steps < limit:
        site = _safe_site(cur)
        if site is None:
            return None
        cur = cancel_site(cur, site[0], site[1])
        steps += 1
    return steps if cur.order == 2 else None


def _safe_site(g: ColoredGraph) -> Optional[tuple[int, int]]:
    """A dipole whose cancellation provably preserves the cone space:
    largest color count first, then smallest vertex pair."""
    n = g.n
    sites = sorted(dipole_sites(g), key=lambda s: (-len(s[2]), s[0], s[1]))
    for v, w, cols in sites:
        if len(cols) >= n - 1:
            return (v, w)  # complement residues are edges or cycles
        comp = complement(mask_of(cols), n)
        for u in (v, w):
            rv = _component_view(g, comp, u)
            if sphere_status(rv.as_graph()).verdict is Verdict.SPHERE:
                return (v, w)
    return None


def _component_view(g: ColoredGraph, mask: int, v: int) -> ResidueView:
    cols = colors_of(mask)
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for c in cols:
            x = g.matchings[c][u]
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return ResidueView(g, mask, tuple(sorted(seen)))


# ============================================================
# Classification of a graph's residues
# ============================================================


def classify_residue(rv: ResidueView) -> ResidueClass:
    """Ordinary, singular, or unknown; residues on at most two colors are
    ordinary unconditionally."""
    if rv.h <= 2:
        return ResidueClass.ORDINARY
    verdict = sphere_status(rv.as_graph()).verdict
    if verdict is Verdict.SPHERE:
        return ResidueClass.ORDINARY
    if verdict is Verdict.NOT_SPHERE:
        return ResidueClass.SINGULAR
    return ResidueClass.UNKNOWN


@dataclass(frozen=True)
class Classification:
    """Residue classes for one graph, backed by its full lattice."""

    lattice: ResidueLattice
    classes: dict

    @property
    def graph(self) -> ColoredGraph:
        return self.lattice.graph

    def of(self, rv: ResidueView) -> ResidueClass:
        if rv.h <= 2:
            return ResidueClass.ORDINARY
        return self.classes[rv.key]

    def of_containing(self, colors, v: int) -> ResidueClass:
        return self.of(self.lattice.residue_containing(colors, v))

    @property
    def unresolved(self) -> tuple[ResidueView, ...]:
        return tuple(
            rv
            for rv in self.lattice.all_residues(min_h=3)
            if self.classes[rv.key] is ResidueClass.UNKNOWN
        )

    def require_resolved(self, what: str) -> None:
        bad = self.unresolved
        if bad:
            raise UnresolvedResidueError(
                f"{what} needs every residue classified; "
                f"{len(bad)} unknown (first: colors {bad[0].colors})",
                residues=tuple(rv.key for rv in bad),
            )

    def singular_views(self, h: Optional[int] = None) -> list[ResidueView]:
        out = [
            rv
            for rv in self.lattice.all_residues(min_h=3)
            if self.classes[rv.key] is ResidueClass.SINGULAR
        ]
        if h is not None:
            out = [rv for rv in out if rv.h == h]
        out.sort(key=lambda rv: rv.key)
        return out

    def rank_class_counts(self, cls: ResidueClass) -> dict[int, int]:
        """Number of h-residues in the given class, for every h."""
        out = {h: 0 for h in range(self.lattice.n + 1)}
        for rv in self.lattice.all_residues():
            if self.of(rv) is cls:
                out[rv.h] += 1
        return out

    def color_is_ordinary(self, c: int) -> Optional[bool]:
        """Whether every residue missing color c is ordinary (None = unknown)."""
        n = self.lattice.n
        classes = [self.of(rv) for rv in self.lattice.residues(complement(1 << c, n))]
        if ResidueClass.SINGULAR in classes:
            return False
        if ResidueClass.UNKNOWN in classes:
            return None
        return True

    def ordinary_colors(self) -> list[int]:
        return [c for c in self.graph.colors if self.color_is_ordinary(c) is True]


def classify_graph(g: ColoredGraph, lattice: Optional[ResidueLattice] = None) -> Classification:
    lattice = lattice or residue_lattice(g)
    classes = {rv.key: classify_residue(rv) for rv in lattice.all_residues(min_h=3)}
    return Classification(lattice, classes)


# ============================================================
# Singular set and manifold tests
# ============================================================


@dataclass(frozen=True)
class SingularComponent:
    """One connected piece of the singular set: the chain-connected singular
    residues spanning it, its top residues, dimension, and Euler number."""

    residues: tuple[ResidueView, ...]
    top_residues: tuple[ResidueView, ...]  # the singular n-residues (R_S)
    dimension: int
    chi: int


@dataclass(frozen=True)
class SingularSetSummary:
    components: tuple[SingularComponent, ...]
    dimension: Optional[int]  # None when the singular set is empty
    chi: int

    @property
    def is_empty(self) -> bool:
        return not self.components


def singular_summary(g: ColoredGraph, classification: Optional[Classification] = None) -> SingularSetSummary:
    """Connected components of the singular set with dimensions and Euler
    characteristics; refuses on unresolved residues."""
    cls = classification or classify_graph(g)
    cls.require_resolved("singular summary")
    n = g.n
    sing = cls.singular_views()
    if not sing:
        return SingularSetSummary((), None, 0)

    # chains of singular residues span the set; join comparable pairs
    parent = list(range(len(sing)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, a in enumerate(sing):
        for j in range(i + 1, len(sing)):
            b = sing[j]
            if cls.lattice.contains(a, b) or cls.lattice.contains(b, a):
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[ra] = rb

    groups: dict[int, list[ResidueView]] = {}
    for i, rv in enumerate(sing):
        groups.setdefault(find(i), []).append(rv)

    comps = []
    for members in groups.values():
        members.sort(key=lambda rv: rv.key)
        top = tuple(rv for rv in members if rv.h == n)
        dim = n - min(rv.h for rv in members)
        chi = sum((-1) ** (n - rv.h) for rv in members)
        comps.append(SingularComponent(tuple(members), top, dim, chi))
    comps.sort(key=lambda comp: comp.residues[0].key)
    return SingularSetSummary(
        components=tuple(comps),
        dimension=max(comp.dimension for comp in comps),
        chi=sum(comp.chi for comp in comps),
    )


def is_closed_manifold(g: ColoredGraph, classification: Optional[Classification] = None) -> Optional[bool]:
    """True/False when every top residue is classified, else None."""
    cls = classification or classify_graph(g)
    tops = [cls.of(rv) for rv in cls.lattice.all_residues(min_h=g.n, max_h=g.n)]
    if ResidueClass.SINGULAR in tops:
        return False
    if ResidueClass.UNKNOWN in tops:
        return None
    return True


def is_singular_manifold(g: ColoredGraph, classification: Optional[Classification] = None) -> Optional[bool]:
    """Whether every singular residue (if any) uses all but one color."""
    cls = classification or classify_graph(g)
    below = [cls.of(rv) for rv in cls.lattice.all_residues(min_h=3, max_h=g.n - 1)]
    if ResidueClass.SINGULAR in below:
        return False
    if ResidueClass.UNKNOWN in below:
        return None
    return True


@dataclass(frozen=True)
class EulerCharacteristics:
    chi_m: int  # compact manifold (singular neighborhoods removed)
    chi_hat_m: int  # cone space
    chi_singular_set: int


def euler_characteristics(g: ColoredGraph, classification: Optional[Classification] = None) -> EulerCharacteristics:
    """The three alternating residue-count sums: ordinary residues weighted
    by (-1)^h, all residues and singular residues by (-1)^(n-h)."""
    cls = classification or classify_graph(g)
    cls.require_resolved("Euler characteristics")
    n = g.n
    ordinary = cls.rank_class_counts(ResidueClass.ORDINARY)
    singular = cls.rank_class_counts(ResidueClass.SINGULAR)
    total = cls.lattice.rank_counts()
    return EulerCharacteristics(
        chi_m=sum((-1) ** h * k for h, k in ordinary.items()),
        chi_hat_m=sum((-1) ** (n - h) * k for h, k in total.items()),
        chi_singular_set=sum((-1) ** (n - h) * k for h, k in singular.items() if h >= 3),
    )


# ============================================================
# Boundary structure
# ============================================================


@dataclass(frozen=True)
class BoundaryPiece:
    """Invariant bundle of one singular top residue's space."""

    residue: ResidueView
    order: int
    chi: int
    bipartite: bool
    h1: Optional[AbelianInvariants]


@dataclass(frozen=True)
class SharedWall:
    """A singular residue one color short of the top, glued between the two
    top residues that contain it."""

    residue: ResidueView
    between: tuple[tuple, tuple]  # the two top residues' keys


@dataclass(frozen=True)
class BoundaryComponent:
    kind: str  # "single" | "glued" | "unsupported"
    pieces: tuple[BoundaryPiece, ...]
    walls: tuple[SharedWall, ...] = ()


def boundary_structure(g: ColoredGraph, classification: Optional[Classification] = None) -> tuple[BoundaryComponent, ...]:
    """One entry per singular-set component.

    Components that are points report the single bounding space; dimension-1
    components report the glued pieces and their shared walls.  Higher
    dimensional components are counted but their structure is omitted.
    """
    cls = classification or classify_graph(g)
    summary = singular_summary(g, cls)
    n = g.n
    out = []
    for comp in summary.components:
        if comp.dimension == 0:
            out.append(
                BoundaryComponent("single", (_piece(comp.top_residues[0], cls),))
            )
        elif comp.dimension == 1:
            pieces = tuple(_piece(rv, cls) for rv in comp.top_residues)
            walls = []
            for rv in comp.residues:
                if rv.h != n - 1:
                    continue
                tops = [
                    parent.key
                    for parent in cls.lattice.parents(rv)
                    if cls.of(parent) is ResidueClass.SINGULAR
                ]
                walls.append(SharedWall(rv, (tops[0], tops[1])))
            out.append(BoundaryComponent("glued", pieces, tuple(walls)))
        else:
            out.append(BoundaryComponent("unsupported", ()))
    return tuple(out)


def _piece(rv: ResidueView, cls: Classification) -> BoundaryPiece:
    sub = rv.as_graph()
    return BoundaryPiece(
        residue=rv,
        order=sub.order,
        chi=quasi_manifold_euler(sub),
        bipartite=sub.is_bipartite() is not None,
        h1=h1_manifold(sub),
    )


# ============================================================
# First homology of the represented spaces
# ============================================================


def h1_manifold(g: ColoredGraph, classification: Optional[Classification] = None) -> Optional[AbelianInvariants]:
    """H1 of the compact manifold, via the quotiented c-group of the smallest
    color all of whose complement residues are ordinary; None if no color
    qualifies."""
    if g.n == 1:
        return AbelianInvariants(1, ())  # every bicolored cycle is a circle
    cls = classification or classify_graph(g)
    for c in g.colors:
        if cls.color_is_ordinary(c) is True:
            return homology_h1(quotient_presentation(g, c))
    return None


def h1_quasi_manifold(g: ColoredGraph, classification: Optional[Classification] = None) -> Optional[AbelianInvariants]:
    """H1 of the cone space, via a color c such that every other color is
    ordinary; None if no such color exists."""
    if g.n == 1:
        return AbelianInvariants(1, ())
    cls = classification or classify_graph(g)
    flags = {c: cls.color_is_ordinary(c) for c in g.colors}
    not_ordinary = [c for c, ok in flags.items() if ok is not True]
    if len(not_ordinary) > 1:
        return None
    c = not_ordinary[0] if not_ordinary else 0
    return homology_h1(quotient_presentation(g, c))
