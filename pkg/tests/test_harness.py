"""Generators, experiment runner determinism, bound verification, CLI."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fragility import cli, generators
from fragility.errors import ConfigError, InfeasibleTarget
from fragility.harness import (
    ALGORITHMS,
    BOUND_SETS,
    ExperimentSpec,
    Report,
    aggregate_reports,
    child_seed,
    default_bound_sets,
    run_experiment,
    verify,
    _measured_disorder,
)

# ---------------------------------------------------------------------------
# generators


@settings(max_examples=80, deadline=None)
@given(n=st.integers(1, 300), runs=st.integers(1, 300), seed=st.integers(0, 2**32 - 1))
def test_controlled_runs_hits_target_exactly(n, runs, seed):
    runs = min(runs, n)
    vals = generators.gen_controlled_runs(n, runs, np.random.default_rng(seed))
    assert sorted(vals) == list(range(n))
    assert _measured_disorder(vals)[0] == runs


@settings(max_examples=80, deadline=None)
@given(n=st.integers(1, 200), inv=st.integers(0, 20000), seed=st.integers(0, 2**32 - 1))
def test_controlled_inv_hits_target_exactly(n, inv, seed):
    inv = min(inv, n * (n - 1) // 2)
    vals = generators.gen_controlled_inv(n, inv, np.random.default_rng(seed))
    assert sorted(vals) == list(range(n))
    assert _measured_disorder(vals)[1] == inv


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 200), split=st.integers(0, 200), seed=st.integers(0, 2**32 - 1))
def test_two_runs_generator(n, split, seed):
    split = min(split, n)
    vals = generators.gen_two_runs(n, split, np.random.default_rng(seed))
    assert sorted(vals) == list(range(n))
    assert _measured_disorder(vals)[0] <= 2


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 500), seed=st.integers(0, 2**32 - 1))
def test_adversarial_run_plus_one(n, seed):
    vals = generators.gen_adversarial_run_plus_one(n, np.random.default_rng(seed))
    assert _measured_disorder(vals)[0] == 2
    assert vals[-1] % 2 == 1 and all(v % 2 == 0 for v in vals[:-1])


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 200), k=st.integers(0, 5000), seed=st.integers(0, 2**32 - 1))
def test_lower_bound_instance_inv_at_most_k(n, k, seed):
    k = min(k, n * n)
    vals = generators.gen_lower_bound_instance(n, k, np.random.default_rng(seed))
    assert _measured_disorder(vals)[1] <= max(k, 0)


def test_with_duplicates_halves_values():
    assert generators.with_duplicates([0, 1, 2, 3]) == [0, 0, 1, 1]


def test_generator_infeasible_targets():
    rng = np.random.default_rng(0)
    with pytest.raises(InfeasibleTarget):
        generators.gen_controlled_runs(4, 5, rng)
    with pytest.raises(InfeasibleTarget):
        generators.gen_controlled_inv(4, 7, rng)
    with pytest.raises(InfeasibleTarget):
        generators.gen_two_runs(4, 5, rng)
    with pytest.raises(InfeasibleTarget):
        generators.gen_adversarial_run_plus_one(1, rng)
    with pytest.raises(InfeasibleTarget):
        generators.gen_random(0, rng)


# ---------------------------------------------------------------------------
# spec parsing and validation


def test_child_seed_is_deterministic_and_distinct():
    assert child_seed(0, 0) != child_seed(0, 1) != child_seed(1, 0)
    assert child_seed(5, 3) == child_seed(5, 3)
    assert 0 <= child_seed(2**63, 9) < 2**64


def test_spec_validation_errors():
    with pytest.raises(ConfigError):
        ExperimentSpec(algorithm="nope").validate()
    with pytest.raises(ConfigError):
        ExperimentSpec(algorithm="network_sort", generator="nope").validate()
    with pytest.raises(ConfigError):
        ExperimentSpec(algorithm="network_sort", trials=0).validate()
    with pytest.raises(ConfigError):
        ExperimentSpec(algorithm="network_sort", backend="nope").validate()
    with pytest.raises(ConfigError):
        ExperimentSpec(algorithm="min_by_runs", n=8, runs=9).validate()
    with pytest.raises(ConfigError):
        ExperimentSpec(algorithm="sort_by_inv", n=4, inv=7).validate()


def test_spec_from_mapping_coerces_strings():
    spec = ExperimentSpec.from_mapping(
        {"algorithm": "network_sort", "n": "64", "trials": "3", "epsilon": "0.5",
         "duplicates": "true", "inv": "12"}
    )
    assert spec.n == 64 and spec.trials == 3 and spec.epsilon == 0.5
    assert spec.duplicates is True and spec.inv == 12
    with pytest.raises(ConfigError):
        ExperimentSpec.from_mapping({"algorithm": "network_sort", "bogus": "1"})
    with pytest.raises(ConfigError):
        ExperimentSpec.from_mapping({"n": "64"})


def test_spec_from_file(tmp_path):
    path = tmp_path / "exp.spec"
    path.write_text(
        "# comment\nalgorithm = min_by_runs\ngenerator=controlled_runs\n"
        "n = 256\nruns = 4\ntrials=2\n\n",
        encoding="utf-8",
    )
    spec = ExperimentSpec.from_file(str(path))
    assert spec.algorithm == "min_by_runs" and spec.runs == 4 and spec.n == 256
    bad = tmp_path / "bad.spec"
    bad.write_text("algorithm min_by_runs\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        ExperimentSpec.from_file(str(bad))


# ---------------------------------------------------------------------------
# runner and report


def test_run_experiment_is_byte_identical():
    spec = ExperimentSpec(algorithm="min_by_runs", generator="controlled_runs",
                          n=256, runs=8, trials=5, seed=42)
    a = run_experiment(spec).to_json()
    b = run_experiment(spec).to_json()
    assert a == b
    payload = json.loads(a)
    assert len(payload["rows"]) == 5
    assert payload["aggregates"]["correct_fraction"] == 1.0
    assert [row["trial"] for row in payload["rows"]] == list(range(5))


def test_report_round_trip_and_csv():
    spec = ExperimentSpec(algorithm="tournament_min", n=64, trials=3, seed=1)
    report = run_experiment(spec)
    again = Report.from_json(report.to_json())
    assert again.spec == report.spec and again.rows == report.rows
    csv_text = report.to_csv()
    header = csv_text.splitlines()[0].split(",")
    assert "frag_max" in header and len(csv_text.splitlines()) == 4
    jsonl = report.to_jsonl()
    assert len(jsonl.splitlines()) == 5  # spec + 3 rows + aggregates


SMOKE_SPECS = [
    ExperimentSpec(algorithm="exp_search", generator="uniform_ranks", n=128, searches=200, trials=3),
    ExperimentSpec(algorithm="offset_search", generator="skewed_ranks", n=128, searches=200, trials=3),
    ExperimentSpec(algorithm="randomized_search", generator="uniform_ranks", n=128, searches=200, trials=3),
    ExperimentSpec(algorithm="select_kth", n=512, k=2, epsilon=0.25, trials=3),
    ExperimentSpec(algorithm="min_by_runs", generator="controlled_runs", n=256, runs=8, trials=3),
    ExperimentSpec(algorithm="min_by_inv", generator="controlled_inv", n=256, inv=40, trials=3),
    ExperimentSpec(algorithm="extract_sorted_run", generator="controlled_inv", n=256, inv=40, trials=3),
    ExperimentSpec(algorithm="median_by_runs", generator="controlled_runs", n=2048, runs=4, trials=3),
    ExperimentSpec(algorithm="median_by_inv", generator="controlled_inv", n=512, inv=64, trials=3),
    ExperimentSpec(algorithm="median_two_runs", generator="two_runs", n=256, split=100, trials=3),
    ExperimentSpec(algorithm="sort_by_inv", generator="controlled_inv", n=512, inv=64, trials=3),
    ExperimentSpec(algorithm="network_sort", n=256, trials=3),
    ExperimentSpec(algorithm="tournament_min", n=256, trials=3),
    ExperimentSpec(algorithm="mom_select", n=256, trials=3),
    ExperimentSpec(algorithm="small_median", n=256, trials=3),
]


@pytest.mark.parametrize("spec", SMOKE_SPECS, ids=lambda s: s.algorithm + "-" + s.generator)
def test_every_algorithm_passes_its_default_bounds(spec):
    report = run_experiment(spec)
    names = default_bound_sets(spec.algorithm)
    assert names, spec.algorithm
    for name in names:
        ok, verdicts = verify(report, name)
        assert ok, (name, [v for v in verdicts if not v["passed"]])


def test_algorithm_registry_is_covered_by_smoke_specs():
    assert {s.algorithm for s in SMOKE_SPECS} == set(ALGORITHMS)


def test_verify_rejects_mismatched_bound_set():
    report = run_experiment(ExperimentSpec(algorithm="network_sort", n=32, trials=1))
    with pytest.raises(ConfigError):
        verify(report, "min-runs")
    with pytest.raises(ConfigError):
        verify(report, "no-such-set")


def test_verify_fails_on_corrupted_report():
    spec = ExperimentSpec(algorithm="min_by_runs", generator="controlled_runs",
                          n=256, runs=8, trials=3)
    report = run_experiment(spec)
    report.rows[1]["frag_max"] = 10_000
    ok, verdicts = verify(report, "min-runs")
    assert not ok
    assert any(v["slack"] < 0 for v in verdicts)


def test_aggregate_reports_summary():
    reports = [
        run_experiment(ExperimentSpec(algorithm="tournament_min", n=64, trials=2)),
        run_experiment(ExperimentSpec(algorithm="network_sort", n=64, trials=2)),
    ]
    summary = aggregate_reports(reports)
    assert [r["algorithm"] for r in summary["runs"]] == ["tournament_min", "network_sort"]
    assert all(r["trials"] == 2 for r in summary["runs"])


def test_bound_set_registry_names_known_algorithms():
    for name, (allowed, _) in BOUND_SETS.items():
        for algo in allowed:
            assert algo in ALGORITHMS, (name, algo)


# ---------------------------------------------------------------------------
# CLI


def test_cli_generate_writes_values(tmp_path, capsys):
    out = tmp_path / "input.txt"
    rc = cli.main(["generate", "--generator", "controlled_runs", "--n", "32",
                   "--runs", "4", "--out", str(out)])
    assert rc == 0
    vals = [int(line) for line in out.read_text().splitlines()]
    assert sorted(vals) == list(range(32))
    assert _measured_disorder(vals)[0] == 4


def test_cli_run_verify_round_trip(tmp_path):
    report_path = tmp_path / "report.json"
    rc = cli.main(["run", "--algo", "min_by_runs", "--generator", "controlled_runs",
                   "--n", "256", "--runs", "8", "--trials", "3", "--out", str(report_path)])
    assert rc == 0
    rc = cli.main(["verify", "--report", str(report_path)])
    assert rc == 0
    verdict_path = tmp_path / "verdicts.txt"
    rc = cli.main(["verify", "--report", str(report_path),
                   "--bounds", "min-runs", "--out", str(verdict_path)])
    assert rc == 0
    lines = verdict_path.read_text().splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)


def test_cli_verify_fails_on_corrupted_report(tmp_path):
    report_path = tmp_path / "report.json"
    assert cli.main(["run", "--algo", "min_by_runs", "--generator", "controlled_runs",
                     "--n", "256", "--runs", "8", "--trials", "3",
                     "--out", str(report_path)]) == 0
    payload = json.loads(report_path.read_text())
    payload["rows"][0]["frag_max"] = 10_000
    report_path.write_text(json.dumps(payload))
    assert cli.main(["verify", "--report", str(report_path)]) == 1


def test_cli_config_errors_exit_2(tmp_path, capsys):
    assert cli.main(["run", "--algo", "no_such_algorithm"]) == 2
    assert cli.main(["run"]) == 2  # neither --spec nor --algo
    assert cli.main(["verify", "--report", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_cli_run_csv_format(tmp_path):
    out = tmp_path / "report.csv"
    rc = cli.main(["run", "--algo", "tournament_min", "--n", "64", "--trials", "2",
                   "--format", "csv", "--out", str(out)])
    assert rc == 0
    assert out.read_text().splitlines()[0].split(",")[0] == "correct"


def test_cli_run_with_spec_file(tmp_path):
    spec_path = tmp_path / "exp.spec"
    spec_path.write_text("algorithm=network_sort\nn=64\ntrials=2\n", encoding="utf-8")
    out = tmp_path / "report.json"
    assert cli.main(["run", "--spec", str(spec_path), "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["spec"]["algorithm"] == "network_sort"


def test_cli_report_aggregates(tmp_path, capsys):
    paths = []
    for algo in ("tournament_min", "network_sort"):
        p = tmp_path / f"{algo}.json"
        assert cli.main(["run", "--algo", algo, "--n", "64", "--trials", "2",
                         "--out", str(p)]) == 0
        paths.append(str(p))
    assert cli.main(["report", *paths]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert len(summary["runs"]) == 2
