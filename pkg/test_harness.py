#!/usr/bin/env python3
"""
Experiment harness tests - generator, brute-force oracle, runs and summaries
"""
import csv
import io
import json

import pytest

from conftest import PSI_PRIME_MODELS
from experiments.harness import (
    ExperimentRecord, HarnessError, brute_force_models, format_records, format_summary,
    random_2cnf, run_experiment, summarize,
)
from twosat.compressed import CubeCount, count_models
from twosat.formula import Cnf2


def test_random_2cnf_shape():
    formula = random_2cnf(20, 20, seed=3)
    assert formula.num_vars == 20
    assert len(formula.clauses) == 20
    for clause in formula.clauses:
        assert clause.first.variable != clause.second.variable


def test_random_2cnf_is_deterministic():
    assert random_2cnf(30, 40, seed=9) == random_2cnf(30, 40, seed=9)
    assert random_2cnf(30, 40, seed=9) != random_2cnf(30, 40, seed=10)


@pytest.mark.parametrize("n, t", [(1, 5), (5, 0)])
def test_random_2cnf_rejects_parameters(n, t):
    with pytest.raises(HarnessError):
        random_2cnf(n, t, seed=1)


def test_brute_force(psi, psi_prime):
    assert len(list(brute_force_models(psi))) == 30
    assert {a.to_bits() for a in brute_force_models(psi_prime)} == PSI_PRIME_MODELS
    assert len(list(brute_force_models(Cnf2(3)))) == 8


def test_brute_force_guard():
    with pytest.raises(HarnessError):
        list(brute_force_models(Cnf2(30)))
    with pytest.raises(HarnessError):
        list(brute_force_models(Cnf2(5), limit=4))


def test_run_experiment_records():
    records = run_experiment(12, 12, 5, seed=4)
    assert [r.index for r in records] == list(range(5))
    for record in records:
        formula = random_2cnf(12, 12, 4 + record.index)
        assert record.count == len(list(brute_force_models(formula)))
        if record.satisfiable:
            assert record.poset_size - 2 * record.halfcore_size == record.rigid_size
            assert record.ti_count <= record.halfcore_size
            assert record.cubes >= 1
        else:
            assert record.count == 0
        assert record.peak_rss_mb > 0


def test_run_experiment_verifies_small_instances():
    records = run_experiment(10, 10, 3, seed=6, verify_limit=10)
    assert all(r.verified for r in records)
    assert not any(r.verified for r in run_experiment(10, 10, 3, seed=6, verify_limit=9))


def test_run_experiment_reports_count_mismatch(monkeypatch):
    def off_by_one(formula):
        result = count_models(formula)
        result.count += 1
        return result

    monkeypatch.setattr("experiments.harness.count_models", off_by_one)
    with pytest.raises(HarnessError, match="brute force found"):
        run_experiment(8, 8, 1, seed=3, verify_limit=8)


def test_run_experiment_reports_broken_partition(monkeypatch):
    def bad_halfcore(formula):
        return CubeCount(satisfiable=True, count=1, cubes=1, poset_size=6, halfcore_size=1)

    monkeypatch.setattr("experiments.harness.count_models", bad_halfcore)
    with pytest.raises(HarnessError, match="do not partition"):
        run_experiment(8, 8, 1, seed=3)


def test_run_experiment_in_process_pool():
    serial = run_experiment(10, 10, 4, seed=2)
    pooled = run_experiment(10, 10, 4, seed=2, workers=2)
    assert [r.count for r in pooled] == [r.count for r in serial]
    assert [r.index for r in pooled] == [0, 1, 2, 3]


def test_run_experiment_rejects_parameters():
    with pytest.raises(HarnessError):
        run_experiment(10, 10, 0)
    with pytest.raises(HarnessError):
        run_experiment(1, 10, 3)


def test_some_dense_instances_are_unsatisfiable():
    records = run_experiment(20, 40, 10, seed=1)
    assert not all(r.satisfiable for r in records)


def make_record(index, time_ms, count, satisfiable=True):
    return ExperimentRecord(n=5, t=5, seed=1, index=index, time_ms=time_ms, count=count,
                            satisfiable=satisfiable)


def test_summarize():
    records = [make_record(0, 5.0, 10), make_record(1, 1.0, 40), make_record(2, 9.0, 3),
               make_record(3, 0.1, 0, satisfiable=False)]
    summary = summarize(records)
    assert summary["sat"] == 3 and summary["total"] == 4
    assert summary["min_time"].index == 1
    assert summary["max_time"].index == 2
    assert summary["min_count"].index == 2
    assert summary["max_count"].index == 1
    assert format_summary(summary).startswith("sat 3/4")


def test_summarize_all_unsat():
    summary = summarize([make_record(0, 1.0, 0, satisfiable=False)])
    assert summary["sat"] == 0
    assert summary["max_count"] is None
    assert format_summary(summary) == "sat 0/1"


def test_format_records():
    records = [make_record(0, 1.5, 7), make_record(1, 2.5, 0, satisfiable=False)]
    rows = list(csv.DictReader(io.StringIO(format_records(records, "csv"))))
    assert [row["N"] for row in rows] == ["7", "0"]
    assert "count" not in rows[0] and "R" in rows[0] and "HC" in rows[0]
    lines = format_records(records, "json").splitlines()
    assert json.loads(lines[0])["N"] == 7
    with pytest.raises(HarnessError):
        format_records(records, "xml")


@pytest.mark.slow
def test_dense_hundred_variable_instance_counts():
    for seed in range(1, 50):
        formula = random_2cnf(100, 140, seed)
        result = count_models(formula)
        if result.satisfiable:
            assert result.count >= 1
            assert result.poset_size - 2 * result.halfcore_size == result.rigid_size
            return
    pytest.fail("no satisfiable (100, 140) instance among 49 seeds")


@pytest.mark.slow
def test_sparse_hundred_variable_instances_have_huge_counts():
    records = run_experiment(100, 100, 10, seed=1)
    assert any(r.satisfiable for r in records)
    assert max(r.count for r in records) >= 10 ** 12
