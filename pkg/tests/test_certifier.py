from dataclasses import replace
from fractions import Fraction as F

import pytest

from toricdisp.certifier import (Column, NonDispCertificate, Unknown, ValuationProblem, certify_point,
                                 certify_region, criterion, kernel_flats, maximal_flags, recheck,
                                 region_for_problem, supports, synthesize_witness)
from toricdisp.errors import ExteriorPoint, InputError, SynthesisFailed
from toricdisp.novikov import q
from toricdisp.regions import RegionSet
from toricdisp.scenarios import SCENARIOS, get
from toricdisp.toric import ToricData, candidates_for, validate


def problem(name, dirs=None):
    s = get(name)
    return ValuationProblem.from_model(s.model, s.spurious(dirs))


def test_criterion_ball():
    p = problem("ball2")
    assert criterion(p, (F(5, 12), F(5, 12))) == (F(5, 12),) * 3
    assert criterion(p, (F(1, 4), F(1, 4))) is None


def test_criterion_ellipsoid():
    e = validate(ToricData.build("e", [((1, 0), 0), ((0, 1), 0), ((-2, -1), -2, True)]))
    p = ValuationProblem.from_model(e, candidates_for(e, [(-2, -1), (-1, 0)]))
    assert criterion(p, (F(11, 20), F(7, 10))) == (F(11, 20), F(7, 10), F(7, 10), F(11, 20))


def test_synthesis_examples():
    third = F(1, 3)
    assert synthesize_witness(problem("ball2"), (third, third), (third,) * 3) == (q(third),) * 3
    w = (F(3, 4), F(1, 4), F(1, 4), F(1, 4))
    z = synthesize_witness(problem("p112"), (F(3, 4), F(1, 4)), w)
    assert z == (q(F(3, 4)), q(F(1, 4)), q(F(1, 4)), -2 * q(F(1, 4)) + q(F(3, 4)))
    assert synthesize_witness(problem("c2z2"), (0, 3), (3, 3, 3)) == (q(3), q(3), -2 * q(3))


def test_synthesis_rejects_unrealisable():
    with pytest.raises(SynthesisFailed):
        synthesize_witness(problem("ball2"), (F(1, 4), F(1, 4)), (F(1, 4),) * 3)


def test_problem_validation():
    with pytest.raises(InputError):
        ValuationProblem(2, [Column((1, 0), 0, True), Column((0, 1), 0)])
    with pytest.raises(InputError):
        ValuationProblem(2, [Column((1, 0), 0), Column((0, 0), 0)])
    with pytest.raises(InputError):
        ValuationProblem(2, [Column((1, 0), 0), Column((0, 1), 0, True), Column((0, 1), 1, True)])


def test_certify_point_p135():
    p135 = get("p135")
    cert = certify_point(p135.model, [], (F(5, 3), F(5, 3)))
    assert isinstance(cert, NonDispCertificate)
    assert cert.support == ()
    assert cert.valuations == (F(5, 3),) * 3
    assert [str(z) for z in cert.witness] == ["5*q^(5/3)", "3*q^(5/3)", "q^(5/3)"]
    u = certify_point(p135.model, [], (2, F(1, 2)))
    assert isinstance(u, Unknown) and not isinstance(u, NonDispCertificate)
    cert = certify_point(p135.model, p135.spurious(), (F(11, 4), F(3, 10)))
    assert cert.support == ((-1, 0), (-2, -1))
    assert cert.valuations == (F(11, 4), F(3, 10), F(7, 20), F(3, 10), F(3, 10))
    assert cert.verify()
    assert recheck(cert, p135.model, p135.spurious())


def test_certify_point_errors():
    m = get("ball2").model
    with pytest.raises(ExteriorPoint):
        certify_point(m, [], (F(1, 2), F(1, 2)))
    with pytest.raises(InputError):
        certify_point(m, [], (F(1, 4),))


def test_cone_leading_coefficient():
    c = get("c2z2")
    cert = certify_point(c.model, c.spurious(), (0, 3))
    assert cert.leading_coefficients()[-1] == -2


def test_certificate_tampering_detected():
    s = get("p112")
    cert = certify_point(s.model, s.spurious(), (F(3, 4), F(1, 4)))
    assert cert.verify()
    bad = replace(cert, witness=cert.witness[:3] + (-2 * q(F(1, 4)),))
    assert not bad.verify()
    moved = replace(cert, point=(F(7, 8), F(1, 8)))
    assert not recheck(moved, s.model, s.spurious())
    # an offset beyond the admissible bound is caught against the model
    looser = replace(cert, columns=cert.columns[:3] + (Column((-1, 0), 0, True),))
    assert not recheck(looser, s.model, s.spurious())


def test_certificate_json_roundtrip():
    s = get("ellipsoid12")
    cert = certify_point(s.model, s.spurious(), (F(11, 20), F(7, 10)))
    again = NonDispCertificate.from_json(cert.to_json())
    assert again == cert and again.verify()


def test_supports_order():
    s = get("p135")
    sups = [tuple(c.direction for c in sup) for sup in supports(s.spurious(), 2)]
    assert sups == [(), ((-1, 0),), ((-2, -1),), ((-1, 0), (-2, -1))]
    assert len(list(supports(s.spurious(), 0))) == 1


def test_flags_of_ball():
    p = problem("ball2")
    flats = kernel_flats(p)
    assert flats[frozenset()] == 0 and flats[frozenset({0, 1, 2})] == 1
    assert maximal_flags(p) == [(frozenset(), frozenset({0, 1, 2}))]


@pytest.mark.parametrize("name", ["disk", "p1", "c2z2", "c2z2hat", "ball2", "p112", "ellipsoid12"])
def test_region_golden(name):
    s = SCENARIOS[name]
    region = certify_region(s.model, s.spurious())
    assert region.polyhedra == s.expected_nd.polyhedra


@pytest.mark.parametrize("name", ["disk", "c2z2", "ball2", "p112", "ellipsoid12"])
def test_flag_and_cocircuit_methods_agree(name):
    s = SCENARIOS[name]
    for sup in supports(s.spurious(), 3):
        p = ValuationProblem.from_model(s.model, sup)
        a = region_for_problem(p, s.model.interior, "flags")
        b = region_for_problem(p, s.model.interior, "cocircuits")
        assert RegionSet(s.dim, tuple(a)).same_set(RegionSet(s.dim, tuple(b)))


def test_region_points_certify():
    """Every rational point of a certified piece gets a point certificate."""
    s = get("ellipsoid12")
    region = certify_region(s.model, s.spurious())
    for pt in [(F(1, 2), F(1, 2)), (F(3, 4), F(1, 4)), (F(9, 10), F(1, 10)), (F(1, 2), F(19, 20))]:
        assert region.contains(pt)
        assert isinstance(certify_point(s.model, s.spurious(), pt), NonDispCertificate)
    for pt in [(F(1, 4), F(1, 2)), (F(1, 2), F(1, 4)), (F(9, 10), F(1, 20))]:
        assert not region.contains(pt)
        assert not isinstance(certify_point(s.model, s.spurious(), pt), NonDispCertificate)
