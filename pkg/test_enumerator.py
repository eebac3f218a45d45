#!/usr/bin/env python3
"""
Working-stack enumeration tests - full, constrained and partial model streams
"""
import logging
import random

import pytest

from conftest import PSI_PRIME_MODELS, brute_bits, lits, model_bits, random_corpus
from experiments.harness import brute_force_models
from twosat.bitset import popcount
from twosat.enumerator import (
    ConstraintError, ModelStream, Status, TernaryRow, enumerate_constrained, enumerate_models,
    enumerate_partial, initial_row, prepare, split_row,
)
from twosat.formula import Cnf2, Literal


def test_psi_has_thirty_models(psi):
    models = model_bits(enumerate_models(psi))
    assert len(models) == 30
    assert models == brute_bits(psi)
    assert "001001000" in models


def test_psi_prime_models(psi_prime):
    assert model_bits(enumerate_models(psi_prime)) == PSI_PRIME_MODELS


@pytest.mark.parametrize("strategy", ["max_closure", "lowest_id"])
def test_strategies_agree(psi, strategy):
    assert model_bits(enumerate_models(psi, strategy)) == brute_bits(psi)


def test_unknown_strategy(psi):
    with pytest.raises(ValueError):
        enumerate_models(psi, "random")


def test_unsat_is_a_status(unsat_formula):
    stream = enumerate_models(unsat_formula)
    assert stream.status is Status.UNSATISFIABLE
    assert list(stream) == []


def test_unit_clash_is_unsat():
    formula = Cnf2.from_dimacs_clauses(2, [(1, 2)], units=[1, -1])
    stream = enumerate_models(formula)
    assert not stream.satisfiable
    assert stream.prepared.contradiction.variable == 1


def test_formula_without_clauses():
    assert model_bits(enumerate_models(Cnf2(3))) == {format(i, "03b") for i in range(8)}


def test_units_restrict_models(psi_prime):
    with_unit = Cnf2(7, psi_prime.clauses, frozenset(lits(2)))
    assert model_bits(enumerate_models(with_unit)) == {"1110110"}


def test_split_row_sons(psi_prime):
    prepared = prepare(psi_prime)
    poset, split = prepared.poset, prepared.split
    root = initial_row(split, poset)
    x2 = prepared.component(Literal(2))
    r1, r0 = split_row(root, x2, poset)
    assert r1.value(x2) == 1 and r0.value(x2) == 0
    # pinning x2 to 1 pins its up set inside the core
    for lit in lits(1, 6):
        assert r1.value(prepared.component(lit)) == 1
    with pytest.raises(ValueError):
        split_row(r1, x2, poset)


def test_initial_row_with_forced_false(psi_prime):
    prepared = prepare(psi_prime)
    poset, split = prepared.poset, prepared.split
    force_false = 1 << prepared.component(Literal(1))
    row = initial_row(split, poset, force_false=force_false)
    for lit, value in zip(lits(1, 2, -6, 6, -1, -2), (0, 0, 0, 1, 1, 1)):
        assert row.value(prepared.component(lit)) == value


def test_initial_row_clash(psi_prime):
    prepared = prepare(psi_prime)
    x1 = 1 << prepared.component(Literal(1))
    assert initial_row(prepared.split, prepared.poset, force_true=x1, force_false=x1) is None


def test_ternary_row_value_outside_positions():
    row = TernaryRow(positions=0b011, ones=0b001)
    assert row.values([0, 1]) == (1, 2)
    with pytest.raises(KeyError):
        row.value(2)


def test_stream_logs_summary(psi, caplog):
    with caplog.at_level(logging.INFO, logger="all2sat.enumerator"):
        list(enumerate_models(psi))
    assert "Enumerated 30 models" in caplog.text


def check_tree_shape(corpus):
    for formula in corpus:
        stream = enumerate_models(formula)
        models = model_bits(stream)
        assert models == brute_bits(formula)
        if not stream.satisfiable:
            continue
        assert stream.stats.final_rows == len(models)
        assert stream.stats.nonfinal_rows == len(models) - 1
        assert stream.stats.peak_stack <= 2 * stream.prepared.poset.size + 1
        assert stream.stats.peak_stack <= stream.prepared.split.h + 1


def test_row_tree_shape_on_random_corpus():
    check_tree_shape(random_corpus(150, 12, seed=5))


@pytest.mark.slow
def test_row_tree_shape_on_full_corpus():
    check_tree_shape(random_corpus(500, 14, seed=6))


def test_stats_restart_on_every_pass(psi_prime):
    stream = enumerate_models(psi_prime)
    for _ in range(2):
        assert model_bits(stream) == PSI_PRIME_MODELS
        assert stream.stats.final_rows == 4
        assert stream.stats.nonfinal_rows == 3


def test_constrained_psi_prime(psi_prime):
    assert model_bits(enumerate_constrained(psi_prime, [], lits(1))) == {"0001110"}
    assert model_bits(enumerate_constrained(psi_prime, lits(7), [])) == set()
    assert model_bits(enumerate_constrained(psi_prime, lits(-7), [])) == PSI_PRIME_MODELS


def test_constrained_overlap_is_an_error(psi_prime):
    with pytest.raises(ConstraintError):
        enumerate_constrained(psi_prime, lits(1), lits(-1))


def test_constrained_out_of_range(psi_prime):
    with pytest.raises(ConstraintError):
        enumerate_constrained(psi_prime, lits(8), [])


def test_constrained_matches_filtered_brute_force():
    rng = random.Random(11)
    for formula in random_corpus(200, 12, seed=6):
        n = formula.num_vars
        variables = rng.sample(range(1, n + 1), rng.randint(0, min(3, n)))
        cut = rng.randint(0, len(variables))
        force_true = [Literal(v, rng.random() < 0.5) for v in variables[:cut]]
        force_false = [Literal(v, rng.random() < 0.5) for v in variables[cut:]]
        expected = {
            a.to_bits() for a in brute_force_models(formula)
            if all(lit.is_true_under(a) for lit in force_true)
            and not any(lit.is_true_under(a) for lit in force_false)
        }
        assert model_bits(enumerate_constrained(formula, force_true, force_false)) == expected


def test_partial_psi_prime(psi_prime):
    partials = [p.values for p in enumerate_partial(psi_prime, lits(1, 2))]
    assert sorted(partials) == sorted([(1, 1), (1, 0), (0, 0)])
    assert len(partials) == len(set(partials))


def test_partial_on_rigid_literals(psi_prime):
    partials = [p.values for p in enumerate_partial(psi_prime, lits(5, 7))]
    assert partials == [(1, 0)]


def test_partial_needs_literals(psi_prime):
    with pytest.raises(ConstraintError):
        enumerate_partial(psi_prime, [])


def test_partial_matches_projected_brute_force():
    rng = random.Random(12)
    for formula in random_corpus(200, 12, seed=7):
        n = formula.num_vars
        vstar = [Literal(v, rng.random() < 0.5)
                 for v in rng.sample(range(1, n + 1), rng.randint(1, n))]
        expected = {tuple(a.value(lit) for lit in vstar) for a in brute_force_models(formula)}
        produced = [p.values for p in enumerate_partial(formula, vstar)]
        assert len(produced) == len(set(produced))
        assert set(produced) == expected


def test_model_stream_reuses_prepared(psi):
    prepared = prepare(psi)
    stream = ModelStream(psi, prepared=prepared)
    assert stream.prepared is prepared
    assert popcount(stream.root.positions) == 16
