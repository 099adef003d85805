import json

import pytest

from toricdisp.cli import main, parse_candidates, parse_point
from toricdisp.errors import InputError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "ball2", "--point", "5/12,5/12", "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "NonDisplaceable"


def test_classify_text_and_probe(capsys):
    code, out, _ = run(capsys, "classify", "c2z2", "--point", "1,3")
    assert code == 0 and "Displaceable" in out
    code, out, _ = run(capsys, "probe", "disk", "--point", "1/4")
    assert code == 0 and "facet 0" in out


def test_region_and_sweep(capsys):
    code, out, _ = run(capsys, "region", "disk", "--json")
    assert code == 0 and json.loads(out)["scenario"] == "disk"
    code, out, _ = run(capsys, "sweep", "ball2", "--step", "1/12")
    assert code == 0 and "(1/3,1/3) (5/12,5/12)" in out


def test_candidates_flag(capsys):
    code, out, _ = run(capsys, "classify", "ball2", "--point", "5/12,5/12", "--candidates", "")
    assert code == 0 and "Unknown" in out


def test_bad_inputs_exit_2(capsys):
    assert run(capsys, "classify", "ball2", "--point", "1/2,1/2")[0] == 2  # exterior
    assert run(capsys, "classify", "ball2", "--point", "x")[0] == 2
    assert run(capsys, "classify", "nonesuch", "--point", "0")[0] == 2
    code, _, err = run(capsys, "mirror", "check", "ball2>p1xp1")
    assert code == 2 and "witness" in err
    assert run(capsys, "render", "ball2", "--out", "/nonexistent/dir/x.svg")[0] == 2


def test_mirror_checks(capsys):
    code, out, _ = run(capsys, "mirror", "check", "product")
    assert code == 0 and out.startswith("pass")
    code, out, _ = run(capsys, "mirror", "check", "disk*p1", "--json")
    assert code == 0 and json.loads(out)["passed"]


def test_render(tmp_path, capsys):
    out = tmp_path / "e.svg"
    assert run(capsys, "render", "ellipsoid12", "--out", str(out))[0] == 0
    assert out.read_text().startswith("<svg")


def test_scenarios_list(capsys):
    code, out, _ = run(capsys, "scenarios", "list", "--json")
    names = [s["name"] for s in json.loads(out)["scenarios"]]
    assert code == 0 and "p135" in names


def test_parsers():
    assert parse_candidates("-1,0;-2,-1") == ((-1, 0), (-2, -1))
    assert parse_candidates("") == ()
    assert parse_point("1/2, 3") == (0.5, 3)
    with pytest.raises(InputError):
        parse_candidates("a,b")
