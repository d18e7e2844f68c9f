from __future__ import annotations

import json
import subprocess
import sys

import pytest

from friendship_turan.canon import is_isomorphic
from friendship_turan.cli import main
from friendship_turan.graph import clique_union, friendship_graph
from friendship_turan.graph6 import decode, encode, write_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fval(capsys):
    assert run(capsys, "fval", "--nu", "2", "--delta", "2") == (0, "6\n", "")
    code, out, _ = run(capsys, "fval", "--nu", "2", "--delta", "3", "--bruteforce", "--emit", "json")
    assert code == 0 and json.loads(out)["bruteforce"] == json.loads(out)["value"] == 7


def test_fval_over_cap_exits_1(capsys):
    code, _, err = run(capsys, "fval", "--nu", "3", "--delta", "3", "--bruteforce")
    assert code == 1 and "caps" in err


def test_pk(capsys):
    code, out, _ = run(capsys, "pk", "--k", "3")
    assert code == 0 and len(out.split()) == 1
    assert is_isomorphic(decode(out.split()[0]), clique_union(2, 3))
    code, out, _ = run(capsys, "pk", "--k", "4", "--emit", "json")
    assert code == 0 and json.loads(out)["member_count"] == 7


def test_cstar_construct_verify_round_trip(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    assert run(capsys, "cstar", "--k", "3", "--t", "1", "--out", str(cert))[0] == 0
    data = json.loads(cert.read_text())
    assert data["value"] == -80 and data["exhaustive"]

    code, out, _ = run(capsys, "verify", "certificate", "--in", str(cert), "--n", "40")
    assert code == 0 and "FAIL" not in out and "PASS g-identity" in out

    code, out, _ = run(capsys, "construct", "--in", str(cert), "--n", "30")
    H = decode(out.strip())
    assert code == 0 and H.n == 30

    code, out, _ = run(capsys, "construct", "--in", str(cert), "--n", "30", "--kind", "extremal", "--emit", "json")
    assert code == 0 and json.loads(out)["n"] == 30

    g6 = tmp_path / "h.g6"
    g6.write_text(encode(H) + "\n")
    code, out, _ = run(capsys, "verify", "free", "--k", "3", "--in", str(g6))
    assert code == 0 and "free" in out

    data["value"] += 1
    cert.write_text(json.dumps(data))
    code, out, err = run(capsys, "verify", "certificate", "--in", str(cert), "--n", "40")
    assert code == 2 and "FAIL phi-value" in out and "phi-value" in err


def test_cstar_text(capsys):
    code, out, _ = run(capsys, "cstar", "--k", "3", "--t", "2")
    assert code == 0 and "c_3*(2) = -92 (exact; 3 optimizer classes)" in out


def test_bowtie_exit_codes(capsys, tmp_path):
    path = tmp_path / "bowtie.g6"
    path.write_text(write_graph6([friendship_graph(2)]))
    code, out, _ = run(capsys, "verify", "free", "--k", "2", "--in", str(path))
    assert code == 2 and "center 0" in out
    assert run(capsys, "verify", "free", "--k", "3", "--in", str(path))[0] == 0


def test_packing(capsys, tmp_path):
    path = tmp_path / "two.g6"
    path.write_text(write_graph6([clique_union(2, 5)]))
    code, out, _ = run(capsys, "verify", "packing", "--k", "2", "--in", str(path), "--emit", "json")
    assert code == 0 and json.loads(out)[0]["details"]["count"] == 2


def test_formulas(capsys):
    assert run(capsys, "formula", "ex", "--k", "3", "--t", "1", "--n", "60", "--cstar", "-80")[1] == "1144\n"
    assert run(capsys, "formula", "g", "--k", "3", "--t", "1", "--n", "60")[1] == str(900 + 360 - 80) + "\n"
    assert run(capsys, "formula", "f", "--k", "6")[1] == "27\n"
    assert run(capsys, "formula", "erdos-gallai", "--k", "3", "--n", "7")[1] == "11\n"
    assert run(capsys, "formula", "zhu-chen", "--k", "3", "--n", "108")[1] == "614\n"
    code, out, _ = run(capsys, "formula", "mixed", "--ell", "5,3", "--t", "1", "--n", "60", "--cstar", "-80")
    assert (code, out) == (0, "1144\n")
    code, out, _ = run(capsys, "formula", "mixed", "--ell", "5,3,3", "--t", "1", "--n", "60", "--cstar", "-80")
    assert code == 1
    code, out, _ = run(capsys, "formula", "mixed", "--ell", "5,3", "--t", "1", "--n", "60")
    assert (code, out) == (0, "1144\n")
    assert run(capsys, "formula", "mixed", "--t", "1", "--n", "60")[0] == 1


def test_explore(capsys):
    code, out, err = run(capsys, "explore", "--k", "3", "--t", "1", "--n", "4", "--emit", "json")
    assert code == 0 and json.loads(out)["value"] == 10 and "large n" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["fval", "--nu", "2"],
        ["verify", "free", "--k", "3", "--in", "/nonexistent.g6"],
        ["construct", "--n", "30", "--in", "/nonexistent.json"],
        ["cstar", "--k", "3", "--t", "0"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse rejects before dispatch
        code = exc.code
    assert code == 1


def test_malformed_graph6_exits_1(capsys, tmp_path):
    path = tmp_path / "bad.g6"
    path.write_text("B\n")
    assert run(capsys, "verify", "free", "--k", "3", "--in", str(path))[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "friendship_turan", "fval", "--nu", "3", "--delta", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "10"
