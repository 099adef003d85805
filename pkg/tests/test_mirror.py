from fractions import Fraction as F

import pytest

from toricdisp.errors import InputError, NotEmbedded
from toricdisp.mirror import (CHECKS, MirrorDescriptor, QuotientMap, check_functoriality, check_product,
                              product, product_candidates, pushforward_delta, pushforward_eps, quotient,
                              restrict)
from toricdisp.scenarios import get
from toricdisp.toric import FacetSpec, ToricData, validate

X = QuotientMap(((1, 0),))


def test_products():
    dd = product(get("disk").data, get("disk").data)
    assert dd.facets == (FacetSpec((1, 0), 0), FacetSpec((-1, 0), -1, True),
                         FacetSpec((0, 1), 0), FacetSpec((0, -1), -1, True))
    sq = product(get("p1").data, get("p1").data)
    assert validate(sq).is_compact() and len(sq.facets) == 4
    bd = product(get("ball2").data, get("disk").data)
    assert bd.dim == 3 and validate(bd).is_interior((F(1, 4), F(1, 4), F(1, 2)))
    assert product_candidates([(-1, -1)], [(-1,)], 2, 1) == [(-1, -1, 0), (0, 0, -1)]


def test_product_region_is_product_of_regions():
    b, d = get("ball2"), get("disk")
    report = check_product(b.data, b.candidates, d.data, d.candidates)
    assert report["passed"] and report["exact_constraint_equality"]


def test_restrict_ellipsoid_in_quadrant():
    w = restrict(get("quadrant").data, get("ellipsoid12").data)
    assert w.facet_map == ((0, 0), (1, 1))
    pairs = w.candidate_map([(-2, -1), (-1, 0)])
    assert pairs == []  # both directions are unbounded below on the quadrant
    assert w.candidate_map([(1, 1)])[0]["direction"] == [1, 1]


def test_restrict_identity_and_failure():
    disk = get("disk").data
    assert restrict(disk, disk).facet_map == ((0, 0),)
    closed = ToricData.build("segment", [((1,), 0), ((-1,), -1)])
    with pytest.raises(NotEmbedded) as err:
        restrict(disk, closed)
    assert err.value.witness == (1,)
    square = ToricData.build("square", [((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)])
    with pytest.raises(NotEmbedded) as err:
        restrict(get("ball2").data, square)
    assert err.value.witness in {(0, 1), (1, 0), (1, 1)}


def test_charts_and_composition():
    p112 = get("p112")
    big = p112.data
    from toricdisp.toric import canonical_cover
    chart = canonical_cover(p112.model)[0]
    w = restrict(big, chart)
    assert w.facet_map == ((0, 0), (1, 1), (2, None))
    assert w.pulled_back([(-1, 0)]) == [(-1, 0), (-2, -1)]
    # a smaller open piece of the chart
    smaller = ToricData(chart.name + "-cut", 2, chart.facets + (FacetSpec((-1, 0), F(-1, 2), True),))
    inner = restrict(chart, smaller)
    direct = restrict(big, smaller)
    assert w.then(inner).facet_map == direct.facet_map
    with pytest.raises(InputError):
        inner.then(w)


def test_pushforward_eps_examples():
    assert pushforward_eps(X, {(1, 0): 0, (1, 1): -1}) == {(1,): -1}
    assert pushforward_eps(X, {(1, 1): F(2, 3)}) == {(1,): F(2, 3)}
    assert pushforward_eps(X, {(0, 1): 2}) == {(0,): 2}
    assert pushforward_eps(X, {(0, 1): None, (0, 2): 1}) == {(0,): 1}
    assert pushforward_eps(X, {(0, 1): None}) == {(0,): None}


def test_pushforward_delta_examples():
    eps = {(1, 0): 0, (1, 1): -1}
    assert pushforward_delta(X, eps, {(1, 0): 5, (1, 1): 7}) == {(1,): 7}
    assert pushforward_delta(X, {(1, 1): 0}, {(1, 1): 5}) == {(1,): 5}
    assert pushforward_delta(X, {(1, 0): -1, (1, 1): -1}, {(1, 0): 5, (1, 1): 7}) == {(1,): 12}
    with pytest.raises(InputError):
        pushforward_delta(X, {}, {(1, 0): 1})


def test_quotient_maps():
    with pytest.raises(InputError):
        QuotientMap(((2, 0),))
    with pytest.raises(InputError):
        QuotientMap(((1, 1), (2, 2)))
    pi = QuotientMap(((1, 1),))
    assert pi((1, -1)) == (0,)
    assert pi.dual((F(1, 2),)) == (F(1, 2), F(1, 2))
    Q = quotient(get("p1xp1").data, pi)
    assert sorted((f.normal, f.offset) for f in Q.facets) == [((-1,), -1), ((1,), -1)]
    assert pi.then(QuotientMap(((1,),))).matrix == ((1, 1),)


def test_mirror_descriptor_region():
    d = MirrorDescriptor(get("ball2").data, ((-1, -1),))
    assert d.region().polyhedra == get("ball2").expected_nd.polyhedra


@pytest.mark.parametrize("name", CHECKS)
def test_functoriality_checks(name):
    report = check_functoriality(name)
    assert report["passed"]
    for r in report["checks"]:
        assert r["passed"] in (True, None)
        if r["kind"] == "restriction":
            assert r["points_checked"] > 0


def test_unknown_check():
    with pytest.raises(InputError):
        check_functoriality("nope")
