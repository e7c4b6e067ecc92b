"""Command-line interface: every subcommand, exit codes, error paths."""

import pytest

from qsaf.cli import main

RATINGS = "2,1\n2,1\n1,2\n"


@pytest.fixture
def grover_file(tmp_path, grover_manifest_text):
    path = tmp_path / "grover.qsaf"
    path.write_text(grover_manifest_text)
    return str(path)


@pytest.fixture
def vqe_file(tmp_path, vqe_manifest_text):
    path = tmp_path / "vqe.qsaf"
    path.write_text(vqe_manifest_text)
    return str(path)


def test_catalog_list_prints_all_rows(capsys):
    assert main(["catalog", "list"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 34
    assert lines[0].split() == ["1", "BasisStates", "state_preparation"]


def test_catalog_list_filters(capsys):
    assert main(["catalog", "list", "--category", "auxiliary"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 5
    assert main(["catalog", "list", "--algorithm", "grover",
                 "--min-usage", "ES"]) == 0
    ids = [int(line.split()[0])
           for line in capsys.readouterr().out.splitlines()]
    assert ids == [1, 2, 3, 4, 11, 12, 13, 18, 19, 21, 31, 32, 33]


def test_catalog_show_by_id_and_name(capsys):
    assert main(["catalog", "show", "15"]) == 0
    out = capsys.readouterr().out
    assert "[StandardQFT]" in out
    assert "id = 15" in out
    assert "usage.shor = ES" in out
    assert "reuse_tier = algorithm_specific" in out
    assert "tier_note = " in out
    assert main(["catalog", "show", "StandardQFT"]) == 0


def test_catalog_show_requires_a_primitive():
    with pytest.raises(SystemExit):
        main(["catalog", "show"])


def test_unknown_primitive_exits_2(capsys):
    assert main(["catalog", "show", "Flurbinator"]) == 2
    assert "error:" in capsys.readouterr().err


def test_heatmap(capsys):
    assert main(["heatmap"]) == 0
    out = capsys.readouterr().out
    assert "[auxiliary]" in out
    assert "[state_preparation]" in out


def test_classify(capsys):
    assert main(["classify", "15"]) == 0
    assert capsys.readouterr().out.strip() \
        == "StandardQFT: basis_transformation"
    assert main(["classify", "SwapGates"]) == 0
    assert "auxiliary (no classification flags)" in capsys.readouterr().out


def test_mece(capsys):
    assert main(["mece"]) == 0
    assert "mece check clean" in capsys.readouterr().out


def test_kappa(tmp_path, capsys):
    csv = tmp_path / "ratings.csv"
    csv.write_text(RATINGS)
    assert main(["kappa", str(csv)]) == 0
    out = capsys.readouterr().out
    assert "fleiss_kappa = -0.350000" in out
    assert "items = 3" in out
    assert "raters = 3" in out


def test_kappa_missing_file(tmp_path, capsys):
    assert main(["kappa", str(tmp_path / "nope.csv")]) == 2
    assert "error:" in capsys.readouterr().err


def test_validate_clean(grover_file, capsys):
    assert main(["validate", grover_file]) == 0
    assert capsys.readouterr().out.strip() == "validation clean"


def test_validate_blocking(tmp_path, capsys):
    path = tmp_path / "broken.qsaf"
    path.write_text("component qft = StandardQFT(n=2)\n")
    assert main(["validate", str(path)]) == 1
    out = capsys.readouterr().out
    assert "unwired_input" in out
    assert "1 finding(s), 1 blocking" in out


def test_validate_contract_strictness(tmp_path, capsys):
    path = tmp_path / "advice.qsaf"
    path.write_text("component a = Superposition(n=1)\n"
                    "component b = Superposition(n=1)\n"
                    "contract {0, 1}\n")
    assert main(["validate", str(path)]) == 0
    assert "1 finding(s), 0 blocking" in capsys.readouterr().out
    assert main(["validate", str(path), "--strict-contracts"]) == 1
    assert "1 finding(s), 1 blocking" in capsys.readouterr().out


def test_export_to_stdout_and_file(grover_file, tmp_path, capsys):
    assert main(["export", grover_file]) == 0
    out = capsys.readouterr().out
    assert out.startswith("OPENQASM 2.0;")
    assert "creg c[2];" in out

    target = tmp_path / "out.qasm"
    assert main(["export", grover_file, "-o", str(target)]) == 0
    assert f"wrote {target}" in capsys.readouterr().out
    assert target.read_text() == out


def test_export_rejects_invalid_graphs(tmp_path, capsys):
    path = tmp_path / "broken.qsaf"
    path.write_text("component qft = StandardQFT(n=2)\n")
    assert main(["export", str(path)]) == 2
    assert "blocking" in capsys.readouterr().err


def test_simulate_is_seed_deterministic(tmp_path, capsys):
    path = tmp_path / "bell.qsaf"
    path.write_text("component bell = BellStates()\n")
    assert main(["simulate", str(path), "--shots", "256",
                 "--seed", "11"]) == 0
    out = capsys.readouterr().out
    assert "counts[00] = 139" in out
    assert "counts[11] = 117" in out


def test_simulate_reads_the_seed_environment(tmp_path, capsys,
                                             monkeypatch):
    path = tmp_path / "bell.qsaf"
    path.write_text("component bell = BellStates()\n")
    monkeypatch.setenv("QSAF_SEED", "11")
    assert main(["simulate", str(path), "--shots", "256"]) == 0
    out = capsys.readouterr().out
    assert "counts[00] = 139" in out


def test_simulate_projects_measured_registers(grover_file, capsys):
    assert main(["simulate", grover_file, "--shots", "16"]) == 0
    out = capsys.readouterr().out
    assert "register = classical (2 bits)" in out
    assert "counts[11] = 16" in out


def test_run_executes_directives(grover_file, capsys):
    assert main(["run", grover_file]) == 0
    out = capsys.readouterr().out
    assert "[simulate]" in out
    assert "counts[11] = 512" in out


def test_run_minimize(vqe_file, capsys):
    assert main(["run", vqe_file]) == 0
    out = capsys.readouterr().out
    assert "[minimize]" in out
    assert "converged = true" in out


def test_run_without_directives(tmp_path, capsys):
    path = tmp_path / "quiet.qsaf"
    path.write_text("component bell = BellStates()\n")
    assert main(["run", str(path)]) == 1
    assert "no run directives" in capsys.readouterr().err


def test_entanglement_groups(grover_file, capsys):
    assert main(["entanglement", grover_file]) == 0
    assert capsys.readouterr().out.strip() == "{0, 1}"


def test_analyze_profile_and_budget(capsys):
    assert main(["analyze", "25"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("[profile HardwareEfficientAnsatz]")
    assert "nisq_suitable = true" in out
    assert main(["analyze", "25", "--nisq-budget", "10"]) == 0
    assert "nisq_suitable = false" in capsys.readouterr().out


def test_tier_single_and_table(capsys):
    assert main(["tier", "30"]) == 0
    out = capsys.readouterr().out
    assert "SwapGates: algorithm_specific" in out
    assert "note:" in out
    assert main(["tier"]) == 0
    out = capsys.readouterr().out
    assert "[universal]" in out
    assert "[cross_algorithm]" in out
    assert "[algorithm_specific]" in out


def test_complexity_check_command(capsys):
    assert main(["complexity", "15"]) == 0
    out = capsys.readouterr().out
    assert "passed = true" in out
    assert main(["complexity", "15", "--sizes", "4,8"]) == 0
    assert "sizes = 4, 8" in capsys.readouterr().out


def test_complexity_failures_and_errors(capsys):
    # the square-root model is a poor fit at the smallest sizes
    assert main(["complexity", "11", "--sizes", "2,3"]) == 1
    assert "passed = false" in capsys.readouterr().out
    assert main(["complexity", "14"]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["complexity", "15", "--sizes", "8,4"]) == 2
    assert "error:" in capsys.readouterr().err


def test_compare_regimes(capsys):
    assert main(["compare"]) == 0
    assert "recommendation = hardware_efficient" in capsys.readouterr().out
    assert main(["compare", "--regime", "fault_tolerant"]) == 0
    assert "recommendation = problem_inspired_uccsd" \
        in capsys.readouterr().out


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
