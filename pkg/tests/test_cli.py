import json

import pytest

from teag_lab.cli import main
from teag_lab.io import load_graph


@pytest.fixture(autouse=True)
def work_in_tmp_dir(tmp_path, monkeypatch):
    # suite commands write default report files into the working directory
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_writes_pair_files(tmp_path, capsys):
    out = tmp_path / "pair"
    code, stdout, _ = run(capsys, "gen", "--pair", "k2r", "--r", "3", "--out", str(out))
    assert code == 0
    loaded = load_graph(out / "g1.json")
    assert loaded.graph.n_edges == 12 and loaded.ports is not None
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["r"] == 3 and manifest["expected_labels"] == [1, 0]


def test_oracle_command_on_generated_file(tmp_path, capsys):
    out = tmp_path / "pair"
    run(capsys, "gen", "--pair", "k21-simple", "--out", str(out))
    code, stdout, _ = run(
        capsys,
        "oracle",
        "--graph",
        str(out / "g1.json"),
        "--predicate",
        "dup",
        "--node",
        "0",
        "--r",
        "1",
        "--format",
        "json",
    )
    assert code == 0
    assert json.loads(stdout)["value"] == 1


def test_oracle_validate_reports_simplicity(tmp_path, capsys):
    out = tmp_path / "pair"
    run(capsys, "gen", "--pair", "k21-multigraph", "--out", str(out))
    code, stdout, _ = run(
        capsys, "oracle", "--graph", str(out / "g2.json"), "--predicate", "validate",
        "--format", "json",
    )
    assert code == 0
    value = json.loads(stdout)["value"]
    assert value["valid"] is True and value["simple"] is False


def test_construct_command_with_state_dump(tmp_path, capsys):
    out = tmp_path / "pair"
    run(capsys, "gen", "--pair", "k2r", "--r", "2", "--out", str(out))
    code, stdout, _ = run(
        capsys,
        "construct",
        "--graph",
        str(out / "g1.json"),
        "--op",
        "dupr-ego",
        "--ego",
        "0",
        "--r",
        "2",
        "--dump-state",
        "--format",
        "json",
    )
    assert code == 0
    obj = json.loads(stdout)
    assert obj["output"] == 1
    assert obj["state"]["ego_overlap"]["1"] == 2


def test_construct_refuses_simple_op_on_multigraph(tmp_path, capsys):
    out = tmp_path / "pair"
    run(capsys, "gen", "--pair", "k21-multigraph", "--out", str(out))
    code, _, stderr = run(
        capsys, "construct", "--graph", str(out / "g2.json"), "--op", "dup1-simple"
    )
    assert code == 2
    assert "multigraph variant" in stderr


def test_necessity_smoke_run_and_determinism(tmp_path, capsys):
    args = [
        "necessity",
        "--row",
        "k21-simple",
        "--seeds",
        "3",
        "--hidden-dim",
        "8",
    ]
    path1 = tmp_path / "a.json"
    path2 = tmp_path / "b.json"
    code, stdout, _ = run(capsys, *args, "--out", str(path1))
    assert code == 0
    assert "PASS" in stdout
    run(capsys, *args, "--out", str(path2))
    assert path1.read_bytes() == path2.read_bytes()
    report = json.loads(path1.read_text())
    assert report["seeds"] == 3 and len(report["trials"]) == 6  # 3 seeds x 2 depths
    assert report["max_distance"] == 0.0


def test_necessity_single_seed_smoke(capsys):
    code, stdout, _ = run(
        capsys, "necessity", "--row", "cycle", "--seeds", "1", "--hidden-dim", "4",
        "--format", "json",
    )
    assert code == 0
    report = json.loads(stdout)
    assert report["verdict"] == "PASS" and len(report["trials"]) == 2


def test_necessity_parallel_jobs_match_sequential(tmp_path, capsys):
    base = ["necessity", "--row", "k2r", "--seeds", "4", "--hidden-dim", "8"]
    p1, p2 = tmp_path / "seq.json", tmp_path / "par.json"
    assert run(capsys, *base, "--jobs", "1", "--out", str(p1))[0] == 0
    assert run(capsys, *base, "--jobs", "2", "--out", str(p2))[0] == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_seed_env_var_overrides_master_seed(tmp_path, capsys, monkeypatch):
    args = ["necessity", "--row", "k21-simple", "--seeds", "2", "--hidden-dim", "4"]
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, *args, "--master-seed", "5", "--out", str(p1))
    monkeypatch.setenv("TEAG_LAB_SEED", "5")
    run(capsys, *args, "--master-seed", "0", "--out", str(p2))
    assert json.loads(p1.read_text()) == json.loads(p2.read_text())


def test_sufficiency_all_rows(capsys):
    code, stdout, _ = run(capsys, "sufficiency", "--format", "json")
    assert code == 0
    report = json.loads(stdout)
    assert len(report["rows"]) == 8
    assert all(r["verdict"] == "PASS" for r in report["rows"])


def test_certify_smoke(tmp_path, capsys):
    code, stdout, _ = run(capsys, "certify", "--depth-bound", "6", "--format", "json")
    assert code == 0
    report = json.loads(stdout)
    assert report["verdict"] == "PASS"
    assert len(report["certificates"]) == 10
    # suite commands also write their report file by default
    on_disk = json.loads((tmp_path / "certify_report.json").read_text())
    assert on_disk == report


def test_fuzz_zero_graphs_is_empty_pass(capsys):
    code, stdout, _ = run(
        capsys,
        "fuzz",
        "--graphs",
        "0",
        "--multigraphs",
        "0",
        "--walk-graphs",
        "0",
        "--format",
        "json",
    )
    assert code == 0
    report = json.loads(stdout)
    assert report["verdict"] == "PASS" and report["counterexamples"] == []


def test_fuzz_bound_violation_refused(capsys):
    code, _, stderr = run(capsys, "fuzz", "--max-entities", "50", "--graphs", "1")
    assert code == 2
    assert "refusing" in stderr and "tractability" in stderr


def test_fuzz_small_run(capsys):
    code, stdout, _ = run(
        capsys,
        "fuzz",
        "--graphs",
        "10",
        "--multigraphs",
        "5",
        "--walk-graphs",
        "5",
        "--format",
        "json",
    )
    assert code == 0
    assert json.loads(stdout)["verdict"] == "PASS"


def test_report_merges_files_and_sets_exit_code(tmp_path, capsys):
    suff = tmp_path / "suff.json"
    cert = tmp_path / "cert.json"
    run(capsys, "sufficiency", "--row", "k2r", "--r", "2", "--out", str(suff))
    run(capsys, "certify", "--depth-bound", "4", "--out", str(cert))
    code, stdout, _ = run(capsys, "report", str(suff), str(cert))
    assert code == 0
    assert "overall: PASS" in stdout

    broken = tmp_path / "broken.json"
    obj = json.loads(suff.read_text())
    obj["verdict"] = "FAIL"
    broken.write_text(json.dumps(obj))
    code, stdout, _ = run(capsys, "report", str(suff), str(broken))
    assert code == 1
    assert "overall: FAIL" in stdout


def test_unknown_graph_file_is_a_clean_error(capsys):
    code, _, stderr = run(
        capsys, "oracle", "--graph", "missing.json", "--predicate", "dup"
    )
    assert code == 2
    assert "error:" in stderr
