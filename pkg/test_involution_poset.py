#!/usr/bin/env python3
"""
Involution poset tests - order, rigid parts, bisections and shelling
"""
import pytest

from conftest import lits
from twosat.bitset import iter_bits, popcount
from twosat.formula import Assignment
from twosat.implication_graph import build_digraph, strong_components
from twosat.involution_poset import (
    PosetError, UnknownElementError, build_poset, cover_relation, elements_of_literals,
    export_poset, is_bisection, lift_assignment, rigid_split, shell_one_bisection,
)


def poset_of(formula):
    partition = strong_components(build_digraph(formula))
    return partition, build_poset(partition)


def test_omega_reverses_order(psi):
    _, poset = poset_of(psi)
    for c in range(poset.size):
        assert poset.omega[poset.omega[c]] == c
        for d in iter_bits(poset.up[c]):
            assert poset.leq(poset.omega[d], poset.omega[c])


def test_up_and_down_are_transposes(psi_prime):
    _, poset = poset_of(psi_prime)
    for c in range(poset.size):
        for d in range(poset.size):
            assert (d in poset.up_set(c)) == (c in poset.down_set(d))


def test_unknown_element(psi_prime):
    _, poset = poset_of(psi_prime)
    with pytest.raises(UnknownElementError):
        poset.up_set(poset.size)


def test_unsat_partition_has_no_poset(unsat_formula):
    partition = strong_components(build_digraph(unsat_formula))
    with pytest.raises(PosetError):
        build_poset(partition)


def test_rigid_parts_of_psi_prime(psi_prime):
    partition, poset = poset_of(psi_prime)
    split = rigid_split(poset)
    assert split.rigid_filter == elements_of_literals(poset, lits(5, -7))
    assert split.rigid_ideal == elements_of_literals(poset, lits(-5, 7))
    assert split.h == 3


def test_rigid_parts_of_psi(psi):
    _, poset = poset_of(psi)
    split = rigid_split(poset)
    assert split.rigid_filter == elements_of_literals(poset, lits(3))
    assert split.rigid_ideal == elements_of_literals(poset, lits(-3))
    assert popcount(split.core) == 16


def test_up_set_inside_core(psi_prime):
    partition, poset = poset_of(psi_prime)
    split = rigid_split(poset)
    x2 = partition.component_of_literal(lits(2)[0])
    assert poset.up[x2] & split.core == elements_of_literals(poset, lits(2, 1, 6))


def test_shelling_with_preference(psi_prime):
    partition, poset = poset_of(psi_prime)
    preference = [partition.component_of_literal(lit) for lit in lits(-2, -7, 5, 1, 6)]
    bisection = shell_one_bisection(poset, preference)
    assert bisection.filter_part == elements_of_literals(poset, lits(-2, -7, 5, 1, 6))
    assert is_bisection(poset, bisection.filter_part, bisection.ideal_part)


def test_default_shelling_gives_a_bisection(psi):
    _, poset = poset_of(psi)
    bisection = shell_one_bisection(poset)
    assert is_bisection(poset, bisection.filter_part, bisection.ideal_part)


def test_lift_assignment_of_model_is_bisection(psi_prime):
    _, poset = poset_of(psi_prime)
    model = lift_assignment(poset, Assignment.from_bits("0001110"))
    assert is_bisection(poset, model.filter_part, model.ideal_part)
    non_model = lift_assignment(poset, Assignment.from_bits("1111111"))
    assert not is_bisection(poset, non_model.filter_part, non_model.ideal_part)


def test_covers_generate_the_order(psi):
    _, poset = poset_of(psi)
    covers = cover_relation(poset)
    for c, d in covers:
        assert poset.leq(c, d) and c != d
    text = export_poset(poset)
    assert text.count("omega") == poset.size
