import json

import jsonschema
import pytest

from ncsphere.cli import main
from ncsphere.report import load_schema

SCHEMA = load_schema()


def run(capsys, *argv):
    code = main(["--json", *argv])
    out = capsys.readouterr().out
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


@pytest.mark.parametrize("target", ["sphere2", "sphere4", "sphere4_star", "projector_e", "projector_f",
                                    "projector_etilde", "all"])
def test_verify_targets_pass(capsys, target):
    code, data = run(capsys, "verify", target)
    assert code == 0 and data["status"] == "pass"


def test_verify_block_pass_and_fail(capsys):
    code, _ = run(capsys, "verify", "block", "--t", "[[0]]", "--ttilde", "[[0]]", "--z", "1",
                  "--presentation", "sphere4")
    assert code == 0
    code, data = run(capsys, "verify", "block", "--t", "[[zeta]]", "--ttilde", "[[zeta]]", "--z", "0",
                     "--presentation", "sphere4")
    assert code == 1
    assert any(c["witness"] for c in data["checks"] if c["status"] == "fail")


def test_chern_reports_proportionality(capsys):
    code, data = run(capsys, "chern", "--projector", "e", "--degree", "1")
    assert code == 0
    assert data["output"]["proportionality"] == "1"
    assert len(data["output"]["tensor"]) == 6
    code, data = run(capsys, "chern", "--projector", "e", "--degree", "1", "--specialize", "q=-1",
                     "--expect-zero")
    assert code == 0 and data["output"]["zero"] is True


def test_chern_degree_cap(capsys):
    assert main(["chern", "--projector", "e", "--degree", "3"]) == 2


def test_frt(capsys):
    code, data = run(capsys, "frt", "--n", "2")
    assert code == 0
    assert data["output"]["D"] == "-q*t12*t21 + t11*t22"
    code, data = run(capsys, "frt", "--n", "3", "--check", "ybe,relations,det")
    assert code == 0


def test_frt_rmatrix_file(capsys, tmp_path):
    from ncsphere.exprio import format_rmatrix
    from ncsphere.frt import standard_R

    path = tmp_path / "r.txt"
    path.write_text(format_rmatrix(standard_R(2)))
    code, _ = run(capsys, "frt", "--rmatrix", str(path), "--check", "ybe,det")
    assert code == 0
    path.write_text("2\n" + ", ".join(str(k) for k in range(16)))
    code, data = run(capsys, "frt", "--rmatrix", str(path), "--check", "ybe")
    assert code == 1


def test_repr_and_domain_error(capsys):
    code, data = run(capsys, "repr", "--K", "10", "--L", "3")
    assert code == 0
    assert main(["repr", "--c-re", "1.5"]) == 2
    assert "need |c| <= s" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert main(["frt", "--check", "nonsense"]) == 2
    assert main(["verify", "block", "--t", "[[x +]]", "--presentation", "sphere2"]) == 2
    assert main(["export", "nope"]) == 2
    with pytest.raises(SystemExit) as err:
        main(["verify", "nowhere"])
    assert err.value.code == 2


def test_catalog_and_export(capsys):
    code, data = run(capsys, "catalog")
    assert code == 0 and len(data["checks"]) == 4
    assert main(["export", "sphere2"]) == 0
    assert json.loads(capsys.readouterr().out)["generators"] == ["x", "y", "z"]
