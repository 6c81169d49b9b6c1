import json

import pytest

from superwp.cli import load_export, main
from superwp.tau import kappa_polynomials
from superwp.volumes import solve_volumes


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_volume_latex(capsys):
    code, out, _ = run(capsys, "volume", "--genus", "0", "--ns", "1", "--s-order", "4", "--latex")
    assert code == 0 and out.strip() == r"6\pi^2+\frac12L_1^2"


def test_volume_base_value(capsys):
    assert run(capsys, "volume", "--genus", "1", "--ns", "1", "--s-order", "0")[1].strip() == "1/8"


def test_volume_unstable(capsys):
    code, out, err = run(capsys, "volume", "--genus", "0", "--ns", "2", "--s-order", "0")
    assert code == 0 and out.strip() == "0" and "unstable" in err


def test_volume_json(capsys):
    code, out, _ = run(capsys, "volume", "--genus", "0", "--ns", "2", "--s-order", "2", "--json")
    assert json.loads(out) == {"n": 2, "terms": [{"c": "1", "l": [0, 0], "p": 0}]}


@pytest.mark.parametrize("argv", [
    ("volume", "--genus", "0", "--ns", "3", "--s-order", "6"),
    ("volume", "--genus", "0", "--ns", "3", "--s-order", "3"),
    ("volume", "--genus", "1"),
    ("tau", "check"),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_extended_order(capsys):
    code, out, err = run(capsys, "volume", "--genus", "0", "--ns", "2", "--s-order", "4",
                         "--extended")
    assert code == 0 and "unverified" in err
    assert out.strip() == "24*p + 3/2*l1 + 3/2*l2"


def test_disk_routes_identical(capsys):
    a = run(capsys, "disk", "--s-max", "10", "--route", "laplace", "--json")[1]
    b = run(capsys, "disk", "--s-max", "10", "--route", "direct", "--json")[1]
    assert json.loads(a)["volumes"] == json.loads(b)["volumes"]


def test_moments_check(capsys):
    code, out, _ = run(capsys, "moments", "--kernel", "D", "--i", "1", "--j", "0", "--check")
    data = json.loads(out)
    assert code == 0 and all(r["ok"] for r in data["check"])
    assert data["moment"]["terms"][0] == {"c": "20", "l": [1], "p": 2}


def test_tau_solve_and_check(capsys):
    code, out, _ = run(capsys, "tau", "solve", "--which", "zbar", "--genus-max", "1",
                       "--t-max", "3", "--n-max", "3", "--json")
    assert code == 0 and json.loads(out)["terms"]
    code, out, _ = run(capsys, "tau", "solve", "--which", "z", "--genus-max", "1",
                       "--t-max", "3", "--n-max", "2")
    assert code == 0 and "pi^2" in out
    code, out, _ = run(capsys, "tau", "check", "--bridge", "--residual", "--t-max", "3",
                       "--n-max", "4")
    assert code == 0 and "FAIL" not in out


def test_verify_json(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--suite", "disk", "--json", "--report", str(report))
    assert code == 0
    assert json.loads(out) == json.loads(report.read_text())


def test_export_round_trip(capsys, tmp_path):
    path = tmp_path / "t.json"
    assert run(capsys, "export", "volumes", "--genus-max", "1", "--n-max", "3",
               "--out", str(path))[0] == 0
    assert load_export(path).entries == solve_volumes(1, 3).entries
    path = tmp_path / "k.json"
    run(capsys, "export", "kappa", "--out", str(path))
    assert load_export(path) == kappa_polynomials(4)
    path = tmp_path / "z.json"
    run(capsys, "export", "tau", "--genus-max", "1", "--t-max", "3", "--n-max", "3",
        "--out", str(path))
    assert load_export(path).terms


def test_export_is_byte_stable(capsys):
    a = run(capsys, "export", "volumes", "--genus-max", "1", "--n-max", "3")[1]
    b = run(capsys, "export", "volumes", "--genus-max", "1", "--n-max", "3")[1]
    assert a == b


def test_export_v2_family_csv(capsys):
    out = run(capsys, "export", "volumes", "--genus", "0", "--genus-max", "0", "--s-orders", "2",
              "--n-max", "8", "--format", "csv")[1]
    rows = out.strip().splitlines()[1:]
    assert [r.split(",")[-1] for r in rows] == ["1", "1", "2", "6", "24", "120", "720", "5040"]


def test_export_kappa_latex(capsys):
    out = run(capsys, "export", "kappa", "--format", "latex")[1]
    assert r"K_2 = \frac32(3\kappa_1^2-7\kappa_2)" in out.splitlines()
