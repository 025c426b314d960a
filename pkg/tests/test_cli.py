import json

import pytest

from lffc.cli import EXIT_CHECK, EXIT_INPUT, EXIT_OK, InputError, RunConfig, exact_from_json, exact_to_json, main
from lffc.coeffield import CycloElem

ZETA = ["zeta", "--q", "3", "--hyperelliptic", "t^7 - t + 1"]
ELL = ["ell", "--q", "7", "--a1", "t", "--a6", "t^2 + 2"]
DIR = [
    "dirichlet", "--q", "3",
    "--component", "t^2 - t - 1:t:zeta8",
    "--component", "t^2 + 1:t + 1:i",
    "--component", "t^2 + t - 1:t:-1",
]


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_zeta_fixture(capsys):
    code, data, _ = run_json(capsys, ZETA)
    assert code == EXIT_OK
    assert data["N"] == ["1", "3", "6", "12", "18", "27", "27"]
    assert data["epsilon"] == "9"
    assert data["backend"]["places_by_degree"] == [7, 3, 10]
    assert all(c["passed"] for c in data["checks"].values())


def test_ell_epsilon_routes_agree(capsys):
    code, table, _ = run_json(capsys, ELL + ["--epsilon", "table"])
    code2, computed, _ = run_json(capsys, ELL + ["--epsilon", "compute"])
    assert code == code2 == EXIT_OK
    assert table["N"] == computed["N"] == ["1", "0", "49", "343", "0", "16807"]
    assert table["epsilon"] == computed["epsilon"] == "16807"
    assert (table["epsilon_route"], computed["epsilon_route"]) == ("table", "compute")


def test_dirichlet_epsilon_serialisation(capsys):
    code, data, _ = run_json(capsys, DIR)
    assert code == EXIT_OK
    assert data["epsilon"] == {"m": 8, "coords": ["0/1", "-9/1", "-9/1", "9/1"]}
    assert data["n"] == 5 and data["c"] == "cc"


@pytest.mark.parametrize("argv", [ZETA, ELL, DIR])
def test_full_product_route_matches(capsys, argv):
    _, a, _ = run_json(capsys, argv)
    _, b, _ = run_json(capsys, argv + ["--full-product"])
    assert a["N"] == b["N"] and b["N_route"] == "full-product"


@pytest.mark.parametrize("argv", [ZETA, ELL, DIR])
def test_json_round_trip_is_byte_identical(capsys, argv):
    _, data, out = run_json(capsys, argv)
    assert json.dumps(data, indent=2) + "\n" == out


def test_exit_code_for_failed_check(capsys):
    code, data, _ = run_json(capsys, ZETA + ["--epsilon", "3"])
    assert code == EXIT_CHECK
    assert not data["checks"]["funceq"]["passed"]
    assert data["epsilon_route"] == "known"


@pytest.mark.parametrize(
    "argv",
    [
        ["zeta", "--q", "3", "--hyperelliptic", "t^3 + 2*t^2 + t"],
        ["zeta", "--q", "6", "--rational"],
        ["ell", "--q", "7", "--a6", "1"],
        ["ell", "--q", "7", "--a6", "t^^2"],
        ["dirichlet", "--q", "3", "--component", "t^2 + 1:t:i"],
        ["zeta", "--q", "3", "--rational", "--epsilon", "table"],
        ["zeta", "--q", "3", "--rational", "--epsilon", "{bad"],
    ],
)
def test_exit_code_for_input_errors(capsys, argv):
    assert main(argv) == EXIT_INPUT
    assert "lffc: error" in capsys.readouterr().err


def test_constant_curve_error_mentions_denominator(capsys):
    main(["ell", "--q", "7", "--a6", "1"])
    assert "constant_curve_denominator" in capsys.readouterr().err


def test_table_output(capsys):
    assert main(ELL + ["--format", "table", "--show-places", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "16807" in out and "(t + 3)" in out and "nonsplit-multiplicative" in out


def test_show_places_in_json(capsys):
    _, data, _ = run_json(capsys, DIR + ["--show-places", "1"])
    first = data["places"][0]
    assert first["place"] == "(1/t)" and first["values"] == ["0", "1", "1"]


def test_checks_can_be_disabled(capsys):
    _, data, _ = run_json(capsys, ZETA + ["--checks", "none"])
    assert data["checks"] == {}
    _, data, _ = run_json(capsys, ZETA + ["--checks", "rh"])
    assert list(data["checks"]) == ["rh"] and data["checks"]["rh"]["tol"] == 1e-8


def test_generic_input(tmp_path, capsys):
    data = {
        "q": 3, "w": 0, "c": "id", "n": 6, "genus": 3, "dim": 1, "conductor_degree": 0,
        "D": ["1", "-4", "3"],
        "places": [{"degree": 1, "euler": ["1", "-1"]}] * 7
        + [{"degree": 2, "euler": ["1", "0", "-1"]}] * 3
        + [{"degree": 3, "euler": ["1", "0", "0", "-1"]}] * 10,
    }
    path = tmp_path / "zeta.json"
    path.write_text(json.dumps(data))
    code, data, _ = run_json(capsys, ["generic", "--input", str(path)])
    assert code == EXIT_OK
    assert data["N"] == ["1", "3", "6", "12", "18", "27", "27"] and data["epsilon"] == "9"
    data["places"] = [{"degree": 2, "euler": ["1", "1"]}]
    path.write_text(json.dumps(data))
    assert main(["generic", "--input", str(path)]) == EXIT_INPUT
    assert main(["generic", "--input", str(tmp_path / "missing.json")]) == EXIT_INPUT


def test_exact_json_helpers():
    z8 = CycloElem.zeta(8)
    for x in (CycloElem.rational(9), CycloElem.rational(-1) / 3, 9 * z8**3 - 9 * z8):
        assert exact_from_json(exact_to_json(x)) == x
    assert exact_to_json(CycloElem.rational(1) / 3) == "1/3"
    with pytest.raises(InputError):
        exact_from_json("zeta")


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig(command="ell", epsilon_mode="known", epsilon_value=None)
    with pytest.raises(InputError):
        RunConfig(command="zeta", checks=("funceq", "speed"))
