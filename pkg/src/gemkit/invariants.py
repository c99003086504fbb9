"""Graph invariants: regular genus, G-degree report, fundamental-group
presentations under their hypotheses, fingerprints, and the small-order
classification table.

The genus of the surface a graph embeds into regularly, for a cyclic color
order eps, comes from the count identity
``2 - 2*rho = sum_j g(eps_j, eps_j+1) + (1-n)p``; summing rho over the n!/2
cyclic orders (up to inversion) gives the G-degree.  In dimension four the
report also carries the reduced degree, the subdegree, and the identities
tying them to bigon counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ColorRangeError, HypothesisViolatedError, OutOfTableRangeError
from .graph import ColoredGraph
from .groups import (
    AbelianInvariants,
    GroupPresentation,
    c_group_presentation,
    quotient_presentation,
)
from .residues import complement, residue_count, residues
from .singularity import (
    Classification,
    ResidueClass,
    classify_graph,
    euler_characteristics,
    h1_manifold,
    singular_summary,
)

# Fixed cyclic orders on the four colors left after dropping c, used by the
# per-color genus relation in dimension four.
PAIR_RELATION_ORDERS: dict[int, tuple[int, int, int, int]] = {
    0: (1, 3, 4, 2),
    1: (0, 3, 2, 4),
    2: (0, 3, 4, 1),
    3: (0, 2, 1, 4),
    4: (0, 2, 3, 1),
}


# ============================================================
# Fundamental group layer
# ============================================================


def pi1_presentation(g: ColoredGraph, c: int, target: str = "m",
                     classification: Optional[Classification] = None) -> GroupPresentation:
    """Presentation of the fundamental group of the manifold ("m") or the
    cone space ("hatm"), checking the hypothesis that makes it valid.

    target "m" needs color c ordinary; target "hatm" needs every color other
    than c ordinary.  "cgroup" skips both the check and the connecting
    relators.
    """
    g.check_color(c)
    if target == "cgroup":
        return c_group_presentation(g, c)
    if target not in ("m", "hatm"):
        raise ValueError(f"target must be 'm', 'hatm' or 'cgroup', got {target!r}")
    if g.n < 2:
        # a bicolored cycle is a circle; its cycles are not relator disks
        raise ValueError("fundamental-group shortcuts need at least three colors")
    cls = classification or classify_graph(g)
    if target == "m":
        _check_color_ordinary(cls, c)
    else:
        for d in g.colors:
            if d != c:
                _check_color_ordinary(cls, d)
    return quotient_presentation(g, c)


def _check_color_ordinary(cls: Classification, c: int) -> None:
    n = cls.lattice.n
    for rv in cls.lattice.residues(complement(1 << c, n)):
        state = cls.of(rv)
        if state is ResidueClass.SINGULAR:
            raise HypothesisViolatedError(
                f"color {c} is singular: residue on colors {rv.colors} "
                f"at vertex {rv.vertices[0]} is not a sphere",
                offending_residue=rv.key,
            )
        if state is ResidueClass.UNKNOWN:
            raise HypothesisViolatedError(
                f"color {c} cannot be certified ordinary: residue on colors "
                f"{rv.colors} at vertex {rv.vertices[0]} is unclassified",
                offending_residue=rv.key,
            )


# ============================================================
# Regular genus and G-degree
# ============================================================


def cyclic_orders(colors: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """The cyclic permutations of a color set up to rotation and inversion:
    k!/2 of them for k+1 colors (k >= 2)."""
    colors = tuple(sorted(colors))
    if len(colors) < 3:
        raise ValueError("cyclic orders need at least three colors")
    first, rest = colors[0], colors[1:]
    out = []
    for perm in itertools.permutations(rest):
        if perm[0] < perm[-1]:  # one representative per inversion pair
            out.append((first,) + perm)
    return tuple(out)


def regular_genus(g: ColoredGraph, eps: Sequence[int]) -> Fraction:
    """Genus (half the genus when non-orientable) of the regular embedding
    surface for the cyclic color order eps."""
    eps = tuple(eps)
    if sorted(eps) != list(g.colors):
        raise ColorRangeError(f"{eps} is not a cyclic order of colors 0..{g.n}")
    k = len(eps)
    s = sum(residue_count(g, (eps[j], eps[(j + 1) % k])) for j in range(k))
    return Fraction(2 - s - (1 - g.n) * g.p, 2)


@dataclass(frozen=True)
class GDegreeChecks:
    """Identity checks evaluated for 5-colored graphs."""

    multiple_of_three: bool
    closed_form: bool  # omega_G == 3(4 + 6p - bigons)
    subdegree: bool  # sum_c omega_G(residues missing c) == 3 rho_G
    pair_relation: dict  # color -> bool, the per-color genus relation


@dataclass(frozen=True)
class GDegreeReport:
    n: int
    p: int
    genera: dict  # cyclic order -> Fraction
    omega: Fraction
    omega_reduced: Optional[int] = None  # n == 4 only
    rho: Optional[int] = None  # n == 4 only
    checks: Optional[GDegreeChecks] = None

    @property
    def omega_int(self) -> int:
        if self.omega.denominator != 1:
            raise ValueError(f"G-degree {self.omega} is not an integer")
        return int(self.omega)


def g_degree(g: ColoredGraph) -> GDegreeReport:
    """Regular genera over all cyclic color orders and their sum, plus the
    dimension-four identities when they apply."""
    if g.n < 2:
        raise ValueError("the G-degree needs at least three colors")
    genera = {eps: regular_genus(g, eps) for eps in cyclic_orders(tuple(g.colors))}
    omega = sum(genera.values(), Fraction(0))
    if g.n != 4:
        return GDegreeReport(g.n, g.p, genera, omega)

    p = g.p
    bigons = sum(
        residue_count(g, (i, j)) for i in range(5) for j in range(i + 1, 5)
    )
    top = sum(len(residues(g, complement(1 << c, 4))) for c in range(5))
    rho = top + 5 * p - bigons
    omega_int = int(omega) if omega.denominator == 1 else None
    multiple = omega_int is not None and omega_int % 3 == 0
    closed_form = omega_int == 3 * (4 + 6 * p - bigons)

    # subdegree: G-degrees of the residues missing one color, summed
    sub_total = Fraction(0)
    pair_ok: dict[int, bool] = {}
    for c in range(5):
        parts = residues(g, complement(1 << c, 4))
        for rv in parts:
            sub = rv.as_graph()
            sub_total += sum(
                regular_genus(sub, eps) for eps in cyclic_orders(tuple(sub.colors))
            )
        # per-color relation with the fixed cyclic order on the leftover colors
        order = PAIR_RELATION_ORDERS[c]
        rho_c = Fraction(0)
        for rv in parts:
            sub = rv.as_graph()
            local = tuple(rv.colors.index(col) for col in order)
            rho_c += regular_genus(sub, local)
        lhs = 2 * len(parts) - 2 * rho_c
        rhs = (
            sum(residue_count(g, (order[i], order[(i + 1) % 4])) for i in range(4))
            - 2 * p
        )
        pair_ok[c] = lhs == rhs
    subdegree_ok = sub_total == 3 * rho

    checks = GDegreeChecks(
        multiple_of_three=multiple,
        closed_form=closed_form,
        subdegree=subdegree_ok,
        pair_relation=pair_ok,
    )
    reduced = omega_int // 3 if multiple else None
    return GDegreeReport(4, p, genera, omega, reduced, rho, checks)


# ============================================================
# Fingerprints and the small-order table
# ============================================================


@dataclass(frozen=True)
class ManifoldFingerprint:
    """Census-grade invariant bundle of one graph."""

    n: int
    order: int
    bipartite: bool
    chi_m: int
    chi_hat_m: int
    h1: Optional[AbelianInvariants]  # of the manifold; None if no color qualifies
    boundary_components: int
    singular_shape: tuple  # sorted per-component (dimension, chi) pairs
    omega_reduced: Optional[int]  # n == 4 only

    def space_key(self) -> tuple:
        """The dipole-move invariant part (graph size and degree dropped)."""
        return (
            self.n,
            self.bipartite,
            self.chi_m,
            self.chi_hat_m,
            str(self.h1) if self.h1 is not None else None,
            self.boundary_components,
            self.singular_shape,
        )


def fingerprint(g: ColoredGraph, classification: Optional[Classification] = None) -> ManifoldFingerprint:
    cls = classification or classify_graph(g)
    cls.require_resolved("fingerprint")
    chis = euler_characteristics(g, cls)
    summary = singular_summary(g, cls)
    shape = tuple(sorted((comp.dimension, comp.chi) for comp in summary.components))
    omega_reduced = g_degree(g).omega_reduced if g.n == 4 else None
    return ManifoldFingerprint(
        n=g.n,
        order=g.order,
        bipartite=g.is_bipartite() is not None,
        chi_m=chis.chi_m,
        chi_hat_m=chis.chi_hat_m,
        h1=h1_manifold(g, cls),
        boundary_components=len(summary.components),
        singular_shape=shape,
        omega_reduced=omega_reduced,
    )


_SURFACES = {
    (True, 2): "S2",
    (True, 0): "T2",
    (False, 1): "RP2",
    (False, 0): "KB",
}


def classify_small(g: ColoredGraph, classification: Optional[Classification] = None) -> Optional[str]:
    """Name the represented manifold for order <= 6 and dimension <= 4,
    or None when the table has no row for it.

    Backed by the small-order classification: order two and bipartite order
    four always give spheres, non-bipartite order four gives the twisted
    projective-plane bundle pieces, and the bipartite order-six graphs in
    dimensions three and four fall into the known short lists, separated
    here by Euler characteristic, boundary count, homology, and the shape of
    the singular set.
    """
    if g.order > 6 or g.n > 4:
        raise OutOfTableRangeError(f"table covers order <= 6, n <= 4; got order {g.order}, n {g.n}")
    n = g.n
    bip = g.is_bipartite() is not None

    if n == 1:
        return "S1"
    if g.order == 2:
        return f"S{n}"
    if g.order == 4:
        if bip:
            return f"S{n}"
        return "RP2" if n == 2 else f"RP2xB{n - 2}"

    # order six
    if n == 2:
        chi = euler_characteristics(g).chi_hat_m
        return _SURFACES.get((bip, chi))
    if not bip:
        return None

    cls = classification or classify_graph(g)
    fp = fingerprint(g, cls)
    h1 = fp.h1
    if n == 3:
        if fp.boundary_components == 0 and h1 is not None and h1.trivial:
            return "S3"
        if fp.boundary_components == 1 and h1 == AbelianInvariants(1, ()):
            return "S1xB2"
        if fp.boundary_components == 2 and h1 == AbelianInvariants(2, ()):
            return "S1xS1xI"
        return None
    # n == 4, bipartite, order 6
    if fp.boundary_components == 0 and fp.chi_m == 2:
        return "S4"
    if fp.boundary_components == 1 and fp.chi_m == 1:
        return "B4"
    if fp.boundary_components == 1 and fp.chi_m == 0:
        if h1 == AbelianInvariants(1, ()):
            return "S1xB3"
        if h1 == AbelianInvariants(2, ()):
            return "S1xS1xB2"
        if h1 is None and fp.singular_shape == ((1, 1),):
            return "S1xB3"
        if h1 is None and fp.singular_shape == ((1, 0),):
            return "S1xS1xB2"
    return None
