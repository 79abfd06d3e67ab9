import io
import json
import subprocess
import sys

import pytest

from charslope.census import builtin_census, census_to_dict, load_census
from charslope.cli import run
from charslope.pipeline import Region, Verdict


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_check_characterizing():
    code, out, _ = call("check", "12n242", "441/1")
    assert code == 0
    assert out.splitlines()[0] == "441/1: Characterizing (ii)"
    assert "p >= pos_p_min: 441 >= 441" in out


def test_check_unknown_is_success():
    code, out, _ = call("check", "12n242", "7/2")
    assert code == 0 and "Unknown" in out


def test_check_negative_slope_argument():
    code, out, _ = call("check", "12n242", "-441/2")
    assert code == 0 and "Characterizing (iii)" in out


def test_torus_delta():
    code, out, _ = call("torus-delta", "2", "3")
    assert code == 0
    assert out.splitlines()[-1] == "second_derivative: 2"
    assert call("torus-delta", "4", "6")[0] == 2


def test_usage_errors():
    assert call("frobnicate")[0] == 2
    assert call("check", "12n242", "abc")[0] == 2
    assert call("check", "3_1", "1/1")[0] == 2
    assert call("twist-slope", "1", "0")[0] == 2
    assert call("certificate", "0")[0] == 2
    assert call("dsum", "0/1", "--v", "1")[0] == 2
    assert call("dsum", "3/1", "--v", "1,2")[0] == 2


def test_pipeline_failure_exit_code(tmp_path):
    doc = census_to_dict(builtin_census())
    doc["knots"][1]["alexander"] = [[-2, 12], [0, -23], [2, 12]]
    path = tmp_path / "census.json"
    path.write_text(json.dumps(doc))
    code, _, err = call("region", "12n242", "--census", str(path))
    assert code == 3
    assert "5_2" in err


def test_bad_census_file(tmp_path):
    path = tmp_path / "census.json"
    path.write_text('{"volume_threshold": "3.07", "knots": []}')
    assert call("census", "--census", str(path))[0] == 2
    assert call("census", "--census", str(tmp_path / "missing.json"))[0] == 2


def test_census_json_round_trip():
    code, out, _ = call("census", "--json")
    assert code == 0
    assert load_census(out) == builtin_census()


def test_region_json_round_trip():
    code, out, _ = call("region", "12n242", "--json")
    r = Region.from_dict(json.loads(out))
    assert (r.q_min, r.pos_slope_coeff, r.pos_p_min, r.neg_quadratic) == (49, 24, 441, (4, -2, 12))
    code, out, _ = call("region", "12n242", "--paper-constants")
    assert code == 0 and "p >= max{24q, 441}" in out


def test_check_json_round_trip():
    code, out, _ = call("check", "12n242", "1/49", "--json")
    v = Verdict.from_dict(json.loads(out))
    assert v.condition == "i" and v.replay()


def test_cable_obstruction():
    code, out, _ = call("cable-obstruction", "24", "4")
    assert code == 0 and "solutions: none" in out and "complete: yes" in out
    code, out, _ = call("cable-obstruction", "2", "0", "--s-max", "5", "--json")
    data = json.loads(out)
    assert sorted(map(tuple, data["solutions"])) == [(2, 3), (3, 2)]
    assert data["complete"] is False


def test_twist_and_certificate():
    assert call("twist-slope", "3", "2")[1].strip() == "37/2"
    assert call("twist-slope", "1", "-1")[1].strip() == "-2"
    code, out, _ = call("certificate", "7", "--json")
    data = json.loads(out)
    assert data["slope"] == "1/7" and data["knot_genus"] == 2 and data["companion_genus_cap"] == 1
    assert data["citations"]


def test_dsum():
    assert call("dsum", "2/3", "--v", "2,1")[1].strip() == "4"
    assert call("dsum", "3", "--v", "1")[1].strip() == "1"


def test_exclusions():
    code, out, _ = call("exclusions", "12n242", "--json")
    data = json.loads(out)
    assert [d["context"] for d in data] == ["HyperbolicAlternative", "CableCompanionQge2", "LSpaceCompanion"]


def test_verify_constants():
    code, out, _ = call("verify-constants")
    assert code == 0
    assert "FAIL" not in out
    assert "2.0988" in out and "does NOT" in out
    code, out, _ = call("verify-constants", "--json")
    assert json.loads(out)["ok"] is True


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "charslope", "check", "12n242", "441/1"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "Characterizing (ii)" in proc.stdout
