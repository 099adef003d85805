from fractions import Fraction as F

import pytest

from toricdisp.errors import (EmptyInterior, Inadmissible, InputError, NonIntegralNormal, NotCompact,
                              NotSimple, SemipositivityViolation)
from toricdisp.scenarios import get
from toricdisp.toric import (FacetSpec, ToricData, aut_order, canonical_cover, candidates_for,
                             enumerate_spurious, epsilon_max, facet_defining, validate)

BALL = ToricData.build("ball", [((1, 0), 0), ((0, 1), 0), ((-1, -1), -1, True)])
ELLIPSOID = ToricData.build("e", [((1, 0), 0), ((0, 1), 0), ((-2, -1), -2, True)])


def _vertex(model, point):
    return next(f for f in model.vertices() if f.sample == tuple(F(x) for x in point))


def test_validate_ball():
    m = validate(BALL)
    assert m.facet_indices == (0, 1)
    assert m.is_interior((F(1, 4), F(1, 4)))
    assert not m.is_interior((F(1, 2), F(1, 2)))


def test_empty_interior():
    seg = ToricData.build("seg", [((1, 0), 0), ((-1, 0), 0), ((0, 1), 0), ((0, -1), -1, True)])
    with pytest.raises(EmptyInterior):
        validate(seg)


def test_vertex_crossing_constraint_is_not_simple():
    # y >= 0 becomes redundant but stays active at the smooth corner (0, 0)
    sq = ToricData.build("sq", [((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1), ((-1, 1), 0)])
    with pytest.raises(NotSimple) as err:
        validate(sq)
    assert isinstance(err.value, SemipositivityViolation)
    assert err.value.face.sample == (0, 0)


def test_non_simple_apex():
    pyramid = ToricData.build("pyr", [((-1, 0, -1), -1), ((1, 0, -1), -1), ((0, -1, -1), -1),
                                      ((0, 1, -1), -1), ((0, 0, 1), 0)])
    with pytest.raises(NotSimple) as err:
        validate(pyramid)
    assert err.value.face.sample == (0, 0, 1)


def test_non_integral_normal():
    with pytest.raises(NonIntegralNormal):
        validate(ToricData.build("x", [((F(1, 2), 0), 0), ((0, 1), 0)]))


def test_facet_defining_examples():
    e = get("ellipsoid12").model
    assert [facet_defining(e, i) for i in range(4)] == [True, True, True, False]
    assert facet_defining(validate(BALL), 0)
    hat = get("c2z2hat").model
    assert not facet_defining(hat, 2)
    (cand,) = hat.redundant_candidates
    assert (cand.direction, cand.bound, cand.equality_allowed) == ((0, 1), 0, True)


def test_aut_order_examples():
    assert aut_order(get("c2z2").model, _vertex(get("c2z2").model, (0, 0))) == 2
    p112 = get("p112").model
    assert aut_order(p112, _vertex(p112, (1, 0))) == 2
    assert aut_order(p112, _vertex(p112, (0, 0))) == 1
    p135 = get("p135").model
    assert aut_order(p135, _vertex(p135, (3, 0))) == 5
    assert aut_order(p135, _vertex(p135, (0, 5))) == 3
    edge = next(f for f in p135.faces if f.dimension == 1 and f.active == frozenset({0}))
    assert aut_order(p135, edge) == 1


def test_epsilon_max_examples():
    p112 = get("p112").model
    c = epsilon_max(p112, (-1, 0))
    assert (c.bound, c.equality_allowed) == (-1, True)
    c = epsilon_max(p112, (0, -1))
    assert (c.bound, c.equality_allowed) == (-2, False)
    c = epsilon_max(validate(ELLIPSOID), (-2, -1))
    assert (c.bound, c.equality_allowed) == (-2, True)
    with pytest.raises(Inadmissible):
        epsilon_max(validate(ToricData.build("h", [((1, 0), 0)])), (-1, 0))
    with pytest.raises(InputError):
        epsilon_max(p112, (1, 0))


def _find(cands, d):
    return next(c for c in cands if c.direction == d)


def test_enumerate_spurious_examples():
    c = _find(enumerate_spurious(validate(BALL), 1), (-1, -1))
    assert (c.bound, c.equality_allowed) == (-1, True)
    c = _find(enumerate_spurious(get("c2z2").model, 1), (0, 1))
    assert (c.bound, c.equality_allowed) == (0, True)
    cands = enumerate_spurious(get("p135").model, 2)
    assert (_find(cands, (-1, 0)).bound, _find(cands, (-1, 0)).equality_allowed) == (-3, True)
    assert (_find(cands, (-2, -1)).bound, _find(cands, (-2, -1)).equality_allowed) == (-6, True)
    assert all(c.direction not in get("p135").model.facet_normals for c in cands)


def test_candidates_for_drops_inadmissible():
    q = get("quadrant").model
    assert candidates_for(q, [(-1, 0), (1, 1)])[0].direction == (1, 1)
    assert len(candidates_for(q, [(-1, 0)])) == 0


def test_canonical_cover_examples():
    p1 = canonical_cover(get("p1").model)
    assert [[f.strict for f in c.facets] for c in p1] == [[False, True], [True, False]]
    charts = canonical_cover(get("p112").model)
    assert len(charts) == 3
    assert charts[0].facets == (FacetSpec((1, 0), 0), FacetSpec((0, 1), 0), FacetSpec((-2, -1), -2, True))
    assert len(canonical_cover(get("p1xp1").model)) == 4
    with pytest.raises(NotCompact):
        canonical_cover(get("quadrant").model)


def test_data_json_roundtrip():
    d = get("ellipsoid12").data
    assert ToricData.from_json(d.to_json()) == d
    with pytest.raises(InputError):
        ToricData.from_json({"dimension": 2, "facets": [{"normal": [1], "offset": 0}]})
