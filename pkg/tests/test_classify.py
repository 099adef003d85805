from fractions import Fraction as F

import pytest

from toricdisp.classify import (DISPLACEABLE, NON_DISPLACEABLE, UNKNOWN, Settings, classify, region,
                                sweep)
from toricdisp.errors import ConsistencyViolation, ExteriorPoint, InputError, UnsupportedDimension
from toricdisp.scenarios import SCENARIOS, from_file, get, resolve
from toricdisp.svg import render_svg


@pytest.mark.parametrize("name, point, kind", [
    ("ball2", (F(5, 12), F(5, 12)), NON_DISPLACEABLE),
    ("ball2", (F(1, 4), F(1, 3)), DISPLACEABLE),
    ("c2z2", (0, 2), NON_DISPLACEABLE),
    ("c2z2", (1, 3), DISPLACEABLE),
    ("p135", (F(4, 3), 2), UNKNOWN),
])
def test_classify_examples(name, point, kind):
    v = classify(get(name), point, cross_check=True)
    assert v.kind == kind
    assert v.to_json()["verdict"] == kind


def test_classify_exterior():
    with pytest.raises(ExteriorPoint):
        classify(get("disk"), (1,))


def test_unknown_records_bounds():
    v = classify(get("p135"), (F(4, 3), 2), Settings(search_bound=1))
    assert v.evidence.search_bound == 1 and v.evidence.support_cap == 3
    assert v.certificate is None


def test_region_examples():
    r = region(get("disk"))
    assert r.nd.polyhedra == get("disk").expected_nd.polyhedra
    assert r.d.polyhedra == get("disk").expected_d.polyhedra
    for name in ("ellipsoid12", "p112"):
        assert region(get(name)).nd.polyhedra == get(name).expected_nd.polyhedra


def test_settings_candidates_override():
    s = get("ball2")
    assert region(s, Settings(candidates=())).nd.is_empty()
    assert classify(s, (F(5, 12), F(5, 12)), Settings(norm_bound=1)).kind == NON_DISPLACEABLE
    with pytest.raises(InputError):
        Settings(support_cap=-1)


def test_sweep_examples():
    rep = sweep(get("c2z2"), F(1, 4))
    assert rep["counts"][UNKNOWN] == 0
    assert all(p[0] == "0" for p in rep["non_displaceable_points"])
    assert rep["counts"][NON_DISPLACEABLE] == 12
    rep = sweep(get("ball2"), F(1, 12))
    assert rep["non_displaceable_points"] == [["1/3", "1/3"], ["5/12", "5/12"]]
    rep = sweep(get("p135"), F(1, 6), Settings(candidates=()))
    assert rep["non_displaceable_points"] == [["5/3", "5/3"]]
    rep = sweep(get("p135"), F(1, 4), Settings(candidates=()))
    assert rep["non_displaceable_points"] == []
    with pytest.raises(InputError):
        sweep(get("disk"), 0)


def test_sweep_detects_inconsistency():
    s = get("ball2")
    fake = region(s)
    fake = type(fake)(fake.d, fake.nd)  # swapped regions must be caught
    with pytest.raises(ConsistencyViolation):
        sweep(s, F(1, 4), regions=fake)


def test_svg_is_deterministic():
    s = get("ball2")
    r = region(s)
    a = render_svg(s.model, r.nd, r.d, s.view_box(), s.name)
    b = render_svg(s.model, r.nd, r.d, s.view_box(), s.name)
    assert a == b
    assert a.startswith("<svg") and "#1f2d5c" in a and "(1/3, 1/3)" in a
    disk = get("disk")
    rd = region(disk)
    bar = render_svg(disk.model, rd.nd, rd.d, disk.view_box(), "disk")
    assert "<rect" in bar and ">1/2<" in bar


def test_svg_rejects_three_dimensions():
    from toricdisp.mirror import product
    from toricdisp.regions import RegionSet
    from toricdisp.toric import validate
    m = validate(product(get("ball2").data, get("disk").data))
    with pytest.raises(UnsupportedDimension):
        render_svg(m, RegionSet(3), RegionSet(3), ((0, 1),) * 3)


def test_scenario_files(tmp_path):
    path = tmp_path / "tri.json"
    path.write_text('{"name": "tri", "dimension": 2, "facets": ['
                    '{"normal": [1, 0], "offset": "0"}, {"normal": [0, 1], "offset": "0"},'
                    '{"normal": [-1, -1], "offset": "-1", "strict": true}],'
                    '"candidates": [[-1, -1]]}')
    s = resolve(str(path))
    assert s.name == "tri" and s.candidates == ((-1, -1),)
    assert region(s).nd.polyhedra == get("ball2").expected_nd.polyhedra
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(InputError):
        from_file(bad)
    with pytest.raises(InputError):
        resolve("missing.json")
    with pytest.raises(InputError):
        resolve("nonesuch")


def test_library_verdicts_disjoint():
    for s in SCENARIOS.values():
        if s.name == "p135":
            continue  # covered by the acceptance suite
        region(s)  # raises on overlap
