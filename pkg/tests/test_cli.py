import json
import subprocess
import sys

import pytest

from clique_measure import cli
from clique_measure.formulas import from_dimacs


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_bclique_is_deterministic(tmp_path, capsys):
    args = ["gen", "bclique", "--enc", "unary", "-n", "4", "-k", "3", "-p", "1/2", "--seed", "7"]
    assert run(capsys, *args, "--out", str(tmp_path / "a"))[0] == 0
    assert run(capsys, *args, "--out", str(tmp_path / "b"))[0] == 0
    for suffix in (".cnf", ".json"):
        name = "bclique_unary_n4_k3_s7" + suffix
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    manifest = json.loads((tmp_path / "a" / "bclique_unary_n4_k3_s7.json").read_text())
    for key in ("family", "encoding", "n", "k", "c", "p", "seed", "sat", "clause_count", "var_count", "config"):
        assert key in manifest
    assert manifest["p"] == "1/2" and manifest["var_count"] == 12


def test_gen_tseitin_flags_unsat(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "tseitin", "--graph", "triangle", "--charge", "100", "--out", str(tmp_path))
    assert code == 0
    manifest = json.loads((tmp_path / "tseitin_triangle_100.json").read_text())
    assert manifest["sat"] is False


def test_gen_cary_var_count(tmp_path, capsys):
    assert run(capsys, "gen", "bclique", "--enc", "cary", "--c", "2", "-n", "4", "-k", "2", "--out", str(tmp_path))[0] == 0
    f = from_dimacs((tmp_path / "bclique_cary2_n4_k2_s0.cnf").read_text())
    assert f.num_vars == 8


def test_measure_d0_is_one(tmp_path, capsys):
    code, out, _ = run(capsys, "measure", "-n", "3", "-k", "3", "--d", "0", "--samples", "2", "--out", str(tmp_path))
    assert code == 0 and "mu(T) = 1/1" in out


def test_measure_epsilon_sets_d(tmp_path, capsys):
    code, _, _ = run(
        capsys, "measure", "-n", "3", "-k", "3", "--D", "4", "--epsilon", "1/2", "--samples", "1", "--out", str(tmp_path)
    )
    assert code == 0
    report = json.loads((tmp_path / "measure_n3_k3_d2_s0.json").read_text())
    assert report["config"]["d"] == 2 and report["config"]["epsilon"] == "1/2"


def test_measure_exhaustive(capsys):
    code, out, _ = run(capsys, "measure", "-n", "2", "-k", "2", "--d", "1", "--exhaustive")
    assert code == 0 and out.strip().endswith("ok")


def test_good_reports_fractions(tmp_path, capsys):
    code, out, _ = run(
        capsys, "good", "-n", "6", "-k", "3", "--D", "2", "--delta", "1/2", "--samples", "20", "--out", str(tmp_path)
    )
    assert code == 0 and "fraction_good_graphs" in out


def test_certify_end_to_end(tmp_path, capsys):
    assert run(capsys, "gen", "php", "--holes", "1", "--proof", "--out", str(tmp_path))[0] == 0
    code, out, _ = run(
        capsys, "certify", str(tmp_path / "php_m1.proof.json"), "--cnf", str(tmp_path / "php_m1.cnf"),
        "-n", "1", "-k", "2", "--out", str(tmp_path),
    )
    assert code == 0
    cert = json.loads((tmp_path / "php_m1.proof.certificate.json").read_text())
    assert cert["bound"] is None or cert["bound"] <= cert["num_leaves"]


def test_certify_corrupted_proof(tmp_path, capsys):
    run(capsys, "gen", "php", "--holes", "2", "--proof", "--out", str(tmp_path))
    proof = json.loads((tmp_path / "php_m2.proof.json").read_text())
    leaf = next(n for n in proof["nodes"] if n["kind"] == "axiom")
    leaf["line"] = "0x0"
    (tmp_path / "bad.json").write_text(json.dumps(proof))
    code, _, err = run(capsys, "certify", str(tmp_path / "bad.json"), "--cnf", str(tmp_path / "php_m2.cnf"), "-n", "2", "-k", "2")
    assert code == 2 and "node" in err


def test_certify_graph_file(tmp_path, capsys):
    common = ["-n", "2", "-k", "3", "-p", "1/3", "--seed", "5", "--out", str(tmp_path)]
    run(capsys, "sample", *common)
    run(capsys, "gen", "bclique", "--proof", *common)
    code, out, _ = run(
        capsys, "certify", str(tmp_path / "bclique_unary_n2_k3_s5.proof.json"),
        "--cnf", str(tmp_path / "bclique_unary_n2_k3_s5.cnf"),
        "--graph-file", str(tmp_path / "graph_n2_k3_s5.json"), "-p", "1/3", "--d", "2", "--out", str(tmp_path),
    )
    assert code == 0 and "actual leaf count" in out


def test_vc_command(tmp_path, capsys):
    code, out, _ = run(capsys, "vc", "--subfamilies", "20", "--out", str(tmp_path))
    assert code == 0
    lines = (tmp_path / "vc_report.csv").read_text().splitlines()
    assert lines[0] == "kind,dim,family_size,vc,sauer_ok"
    assert any(l.startswith('"halfspace(2,4)",2,14,3') for l in lines)


def test_selftest(capsys):
    assert run(capsys, "selftest")[0] == 0


def test_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["nope"])
    assert exc.value.code == 1
    capsys.readouterr()
    assert run(capsys, "measure", "-n", "3", "-k", "3", "--epsilon", "1/2")[0] == 1  # epsilon needs D
    assert run(capsys, "sample", "-n", "3", "-k", "3", "-p", "0", "--out", str(tmp_path))[0] == 1
    assert run(capsys, "measure", "-n", "3", "-k", "3", "--samples", "1", "--budget", "4", "--out", str(tmp_path))[0] == 3


def test_timestamp_only_on_request(tmp_path, capsys):
    run(capsys, "sample", "-n", "2", "-k", "2", "--out", str(tmp_path / "a"))
    run(capsys, "sample", "-n", "2", "-k", "2", "--timestamp", "--out", str(tmp_path / "b"))
    assert "timestamp" not in json.loads((tmp_path / "a" / "graph_n2_k2_s0.json").read_text())
    assert "timestamp" in json.loads((tmp_path / "b" / "graph_n2_k2_s0.json").read_text())


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "clique_measure", "sample", "-n", "2", "-k", "2", "--out", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and (tmp_path / "graph_n2_k2_s0.json").exists()
