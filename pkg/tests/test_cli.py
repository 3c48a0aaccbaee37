import json

import pytest

from siegelcov.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_base_json(capsys):
    code, out, _ = run(capsys, "base", "--form", "chi5", "--prec", "3")
    obj = json.loads(out)
    assert code == 0
    assert obj["coeffs"]["1,1,1"] == ["1"]


def test_construct_chi12(capsys):
    code, out, _ = run(capsys, "construct", "--name", "chi12_2", "--prec", "4")
    assert code == 0
    obj = json.loads(out)
    assert obj["coeffs"]["1,1,1"] == ["0", "0", "0", "2", "9", "12", "0", "-12", "-9", "-2", "0", "0", "0"]


def test_hecke(capsys):
    code, out, _ = run(capsys, "hecke", "--name", "chi12_2", "--p", "3")
    assert code == 0 and json.loads(out) == {"lambda": "-600"}


def test_mu_csv_and_pretty(capsys):
    code, out, _ = run(capsys, "mu", "--expr", "C_{2,0}", "--prec", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("n")
    code, out, _ = run(capsys, "mu", "--expr", "C_{2,0}", "--prec", "3", "--format", "pretty")
    assert code == 0 and out.strip()


def test_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("SIEGELCOV_PREC", "3")
    _, a, _ = run(capsys, "base", "--form", "chi10")
    _, b, _ = run(capsys, "base", "--form", "chi10", "--prec", "3")
    assert a == b
    monkeypatch.setenv("SIEGELCOV_PREC", "x")
    assert run(capsys, "base", "--form", "chi10")[0] == 2


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--table", "conjecture", "--jmax", "24")
    rows = json.loads(out)
    assert code == 0
    assert rows[-1] == {"j": 24, "[1,1,1,1,1,1]": 2, "[2,1,1,1,1]": 1, "[2,2,2]": 1}
    assert run(capsys, "dims", "--table", "series", "--jmax", "30")[0] == 0


def test_restrict(capsys):
    code, out, _ = run(capsys, "restrict", "--name", "chi14_7", "--decompose", "--format", "pretty")
    assert code == 0 and "-56/225" in out


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    assert run(capsys, "base", "--form", "psi4", "--prec", "2", "-o", str(path))[0] == 0
    assert json.loads(path.read_text())["k"] == 4


@pytest.mark.parametrize("argv", [
    ("base", "--form", "chi5", "--prec", "1"),
    ("hecke", "--name", "chi12_2", "--p", "4"),
    ("construct", "--name", "chi36_3"),
    ("mu", "--expr", "C_{2,0} +"),
    ("nonsense",),
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_arithmetic_failure_exit(capsys):
    code, _, err = run(capsys, "hecke", "--name", "chi24_2_1", "--p", "3", "--stretch", "--prec", "3")
    assert code == 1 and "NotEigenform" in err


def test_deterministic(capsys):
    a = run(capsys, "construct", "--name", "chi14_7", "--prec", "3")[1]
    b = run(capsys, "construct", "--name", "chi14_7", "--prec", "3")[1]
    assert a == b
