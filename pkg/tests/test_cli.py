import json
import os
import subprocess
import sys


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "twoxor.cli", *args],
                          capture_output=True, text=True, env=env)


def payload(proc):
    rec = json.loads(proc.stdout)
    rec.pop("timestamp")
    return rec


def test_sat_prob_exact():
    proc = run_cli("sat-prob", "--n", "2", "--m", "1", "--method", "exact")
    assert proc.returncode == 0
    rec = payload(proc)
    assert rec["results"]["prob_sat"]["rational"] == "3/4"
    assert rec["provenance"]["method"] == "exact"


def test_sat_prob_limit_value():
    proc = run_cli("sat-prob", "--n", "1000", "--m", "375", "--method", "limit")
    rec = payload(proc)
    assert abs(rec["results"]["prob_sat"]["float"] - 0.25 ** 0.25) < 1e-12


def test_usage_error_exit_code():
    proc = run_cli("sat-prob", "--n", "0", "--m", "1")
    assert proc.returncode == 2


def test_unsupported_regime_exit_code():
    proc = run_cli("sat-prob", "--n", "100", "--m", "70", "--method", "limit")
    assert proc.returncode == 3
    assert "unsupported regime" in proc.stderr


def test_budget_exit_code():
    proc = run_cli("oracle", "--n", "3", "--m", "6", "--cap", "1000")
    assert proc.returncode == 4
    err = json.loads(proc.stderr)
    assert err["required"] == 36 ** 6


def test_enum_cap_env(tmp_path):
    proc = run_cli("oracle", "--n", "2", "--m", "3",
                   env_extra={"TWOXOR_ENUM_CAP": "10"})
    assert proc.returncode == 4


def test_config_file(tmp_path):
    cfg = tmp_path / "twoxor.conf"
    cfg.write_text("enum_cap = 10  # tiny\n")
    proc = run_cli("--config", str(cfg), "oracle", "--n", "2", "--m", "3")
    assert proc.returncode == 4


def test_func_prob_exact_and_asympt():
    proc = run_cli("func-prob", "--partition", "2", "--m", "1")
    rec = payload(proc)
    assert rec["results"]["prob_function"]["rational"] == "1/4"
    proc = run_cli("func-prob", "--partition", "3", "--m", "2")
    assert payload(proc)["results"]["prob_function"]["rational"] == "2/27"
    proc = run_cli("func-prob", "--partition", "2+2", "--m", "1")
    assert payload(proc)["results"]["prob_function"]["rational"] == "0"
    proc = run_cli("func-prob", "--partition", "40", "--m", "39",
                   "--method", "asympt")
    rec = payload(proc)
    assert rec["provenance"]["regime"].startswith("single block")
    proc = run_cli("func-prob", "--partition", "7+5+4", "--m", "20",
                   "--method", "asympt")
    assert proc.returncode == 3  # not covered: no silent guess


def test_census_commands():
    proc = run_cli("census", "--kind", "connected", "--n", "3", "--m", "2")
    assert payload(proc)["results"]["count"]["rational"] == "3"
    proc = run_cli("census", "--kind", "multigraphs", "--n", "1", "--m", "1")
    assert payload(proc)["results"]["count"]["rational"] == "1/2"
    proc = run_cli("census", "--kind", "cubic", "--r", "1")
    assert payload(proc)["results"]["count"]["rational"] == "5/12"
    proc = run_cli("census", "--kind", "weighted", "--n", "1", "--m", "1",
                   "--sigma", "1/2")
    assert payload(proc)["results"]["count"]["rational"] == "1/4"


def test_oracle_command():
    proc = run_cli("oracle", "--n", "2", "--m", "2")
    rec = payload(proc)
    assert rec["results"]["total"] == 256
    totals = sum(c["total_count"] for c in rec["results"]["classes"].values())
    assert totals + rec["results"]["false_count"] == 256


def test_distribution_rows_sum_to_one():
    proc = run_cli("distribution", "--n", "3", "--m", "2", "--format", "csv")
    rows = proc.stdout.strip().splitlines()[1:]
    total = sum(float(r.split(",")[-1]) for r in rows)
    assert abs(total - 1.0) < 1e-12


def test_reduce_command():
    proc = run_cli("reduce", "--expr", "1 3, -6 5, 7 -7, 2 -3", "--n", "7")
    rec = payload(proc)
    assert rec["results"]["partition"] == "3+2+1+1"
    assert rec["results"]["components"] == 4
    assert rec["results"]["essential_variables"] == 5


def test_plot_data():
    proc = run_cli("plot-data", "--n", "8", "--m-min", "0", "--m-max", "3",
                   "--method", "exact")
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == "alpha,value"
    assert len(lines) == 5


def test_simulate_reproducible_across_parallelism():
    a = run_cli("simulate", "--n", "3", "--m", "2", "--trials", "4000",
                "--seed", "9", "--parallel", "1", "--compare", "exact")
    b = run_cli("simulate", "--n", "3", "--m", "2", "--trials", "4000",
                "--seed", "9", "--parallel", "4", "--compare", "exact")
    ra, rb = payload(a), payload(b)
    ra["inputs"].pop("parallel")
    rb["inputs"].pop("parallel")
    assert ra == rb
