"""Regular genus, G-degree identities, fundamental-group wrappers,
fingerprints, small-order classification."""

from fractions import Fraction

import pytest

from gemkit import (
    ColorRangeError,
    HypothesisViolatedError,
    OutOfTableRangeError,
    classify_small,
    cyclic_orders,
    fingerprint,
    g_degree,
    homology_h1,
    pi1_presentation,
    regular_genus,
)
from gemkit.census import random_graph
from gemkit.library import (
    k2,
    order4_nonbipartite,
    q4,
    rp3,
    torus_disk,
    torus_interval,
)


# ============================================================
# Cyclic orders and regular genus
# ============================================================


def test_cyclic_order_counts():
    assert len(cyclic_orders(range(3))) == 1
    assert len(cyclic_orders(range(4))) == 3
    assert len(cyclic_orders(range(5))) == 12  # 4!/2


def test_cyclic_orders_canonical():
    for eps in cyclic_orders(range(5)):
        assert eps[0] == 0
        assert eps[1] < eps[-1]


def test_regular_genus_k2():
    g = k2(4)
    for eps in cyclic_orders(range(5)):
        assert regular_genus(g, eps) == 0


def test_regular_genus_torus(t6):
    (eps,) = cyclic_orders(range(3))
    assert regular_genus(t6, eps) == 1


def test_regular_genus_projective_plane():
    # the complete graph on four vertices with three colors
    from gemkit import ColoredGraph

    g = ColoredGraph(((1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)))
    (eps,) = cyclic_orders(range(3))
    assert regular_genus(g, eps) == Fraction(1, 2)


def test_regular_genus_validates():
    with pytest.raises(ColorRangeError):
        regular_genus(k2(2), (0, 1, 1))


def test_genus_nonnegative_random(rng):
    for _ in range(50):
        g = random_graph(rng.choice([2, 3, 4]), rng.choice([4, 6, 8]), rng)
        for eps in cyclic_orders(tuple(g.colors)):
            assert regular_genus(g, eps) >= 0


# ============================================================
# G-degree
# ============================================================


def test_g_degree_k2():
    report = g_degree(k2(4))
    assert report.omega_int == 0
    assert report.omega_reduced == 0


def test_g_degree_torus(t6):
    # for surfaces the degree is the genus itself
    assert g_degree(t6).omega == 1


def test_g_degree_q4():
    report = g_degree(q4())
    assert report.omega_int == 6
    assert report.omega_reduced == 2
    assert report.checks.multiple_of_three
    assert report.checks.closed_form
    assert report.checks.subdegree
    assert all(report.checks.pair_relation.values())


def test_g_degree_order4_nonbipartite():
    assert g_degree(order4_nonbipartite(0)).omega_reduced == 3
    assert g_degree(order4_nonbipartite(1)).omega_reduced == 4


def test_g_degree_identities_random(rng):
    for _ in range(60):
        g = random_graph(4, rng.choice([2, 4, 6, 8]), rng)
        report = g_degree(g)
        assert report.omega_int % 3 == 0
        checks = report.checks
        assert checks.multiple_of_three
        assert checks.closed_form
        assert checks.subdegree
        assert all(checks.pair_relation.values())


def test_supercontracted_degree_lower_bound(rng):
    """Reduced degree is at least half the order minus one when every color
    complement stays connected."""
    from gemkit.census import CensusParams, enumerate_census

    for order in (2, 4, 6):
        cat = enumerate_census(CensusParams(n=4, order=order, supercontracted=True))
        for g in cat.graphs():
            assert g_degree(g).omega_reduced >= g.p - 1


# ============================================================
# Fundamental group wrappers
# ============================================================


def test_pi1_rp3():
    pres = pi1_presentation(rp3(), 0, "m")
    assert str(homology_h1(pres)) == "Z/2"


def test_pi1_order4_nonbipartite():
    for variant in (0, 1):
        g = order4_nonbipartite(variant)
        c = next(
            c for c in g.colors
            if not _color_singular(g, c)
        )
        pres = pi1_presentation(g, c, "m")
        assert str(homology_h1(pres)) == "Z/2"


def _color_singular(g, c):
    from gemkit import classify_graph

    return classify_graph(g).color_is_ordinary(c) is not True


def test_pi1_hypothesis_violation():
    g = torus_disk()
    # colors 1..4 are singular: asking for target m there must fail
    with pytest.raises(HypothesisViolatedError):
        pi1_presentation(g, 1, "m")
    # two singular colors: no c makes the cone-space shortcut valid
    with pytest.raises(HypothesisViolatedError):
        pi1_presentation(g, 0, "hatm")


def test_pi1_hatm_on_closed_graph():
    pres = pi1_presentation(rp3(), 0, "hatm")
    assert str(homology_h1(pres)) == "Z/2"


def test_pi1_cgroup_untested():
    pres = pi1_presentation(torus_disk(), 1, "cgroup")
    assert len(pres.generators) == 3


def test_pi1_f_tb():
    pres = pi1_presentation(torus_disk(), 0, "m")
    assert str(homology_h1(pres)) == "Z+Z"


# ============================================================
# Fingerprints and classification table
# ============================================================


def test_fingerprint_fields():
    fp = fingerprint(torus_disk())
    assert fp.n == 4 and fp.order == 6
    assert fp.bipartite
    assert fp.chi_m == 0
    assert fp.boundary_components == 1
    assert fp.singular_shape == ((1, 0),)
    assert str(fp.h1) == "Z+Z"
    assert fp.omega_reduced is not None


def test_classify_spheres():
    assert classify_small(k2(1)) == "S1"
    assert classify_small(k2(2)) == "S2"
    assert classify_small(k2(4)) == "S4"
    assert classify_small(q4()) == "S4"


def test_classify_order4_nonbipartite():
    assert classify_small(order4_nonbipartite(0)) == "RP2xB2"
    assert classify_small(order4_nonbipartite(1)) == "RP2xB2"


def test_classify_surfaces(t6):
    assert classify_small(t6) == "T2"
    from gemkit import ColoredGraph

    rp2 = ColoredGraph(((1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)))
    assert classify_small(rp2) == "RP2"


def test_classify_torus_pieces():
    assert classify_small(torus_interval()) == "S1xS1xI"
    assert classify_small(torus_disk()) == "S1xS1xB2"


def test_order6_ball_entry_homology():
    """The one bipartite order-6 class naming a ball is simply connected at
    the homology level and carries a single spherical-boundary marker: its
    singular set is one point."""
    from gemkit import h1_manifold, singular_summary
    from gemkit.census import CensusParams, enumerate_census

    cat = enumerate_census(CensusParams(n=4, order=6, bipartite=True))
    balls = [g for g in cat.graphs() if classify_small(g) == "B4"]
    assert len(balls) == 1
    (ball,) = balls
    assert h1_manifold(ball).trivial
    summary = singular_summary(ball)
    assert len(summary.components) == 1
    assert summary.dimension in (0, 1)


def test_classify_out_of_range():
    with pytest.raises(OutOfTableRangeError):
        classify_small(rp3())  # order 8
    with pytest.raises(OutOfTableRangeError):
        classify_small(k2(5))  # six colors
