"""
Shared fixtures: the worked example formulas, the Horn example clause set
and seeded random-instance factories
"""
import logging
import random

import pytest

from experiments.harness import brute_force_models, random_2cnf
from twosat.formula import Cnf2, Literal
from twosat.horn import ClauseSet

PSI_CLAUSES = [
    (-7, -6), (-9, -8), (-8, -7), (-8, 6), (-6, 3), (-5, 3), (3, 6), (-2, 1),
    (-1, 6), (-5, -2), (-9, -1), (-9, -2), (-9, 4), (-9, -7), (-2, 4),
]

PSI_PRIME_CLAUSES = [
    (1, -3), (-1, -4), (4, 3), (-2, -4), (-3, 5), (1, 5), (1, 6), (-5, -7), (-6, -7), (-2, 6),
]

PSI_PRIME_MODELS = {"1110110", "1010110", "1010100", "0001110"}

HORN_CLAUSES = [(1, -2, -4), (3, 4), (1, -3, -4), (1, 2)]


def lits(*values):
    return [Literal.from_dimacs(v) for v in values]


def model_bits(models):
    return {model.bits() for model in models}


def brute_bits(formula):
    return {assignment.to_bits() for assignment in brute_force_models(formula)}


def random_corpus(count, max_n, seed):
    """Seeded 2-CNFs with 2 <= n <= max_n and n/2 <= t <= 2n"""
    rng = random.Random(seed)
    corpus = []
    for i in range(count):
        n = rng.randint(2, max_n)
        t = rng.randint(max(1, n // 2), 2 * n)
        corpus.append(random_2cnf(n, t, seed * 100003 + i))
    return corpus


def random_clause_sets(count, max_n, seed):
    """Seeded clause sets of width 1 to 4 without complementary literals"""
    rng = random.Random(seed)
    sets = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        clauses = []
        for _ in range(rng.randint(1, 2 * n)):
            width = rng.randint(1, min(4, n))
            variables = rng.sample(range(1, n + 1), width)
            clauses.append(tuple(Literal(v, rng.random() < 0.5) for v in variables))
        sets.append(ClauseSet(n, tuple(clauses)))
    return sets


@pytest.fixture
def psi():
    return Cnf2.from_dimacs_clauses(9, PSI_CLAUSES)


@pytest.fixture
def psi_prime():
    return Cnf2.from_dimacs_clauses(7, PSI_PRIME_CLAUSES)


@pytest.fixture
def unsat_formula():
    return Cnf2.from_dimacs_clauses(2, [(-1, 2), (-2, 1), (-1, -2), (1, 2)])


@pytest.fixture
def horn_example():
    return ClauseSet(4, tuple(tuple(lits(*clause)) for clause in HORN_CLAUSES))


@pytest.fixture
def cnf_file(tmp_path):
    """Write DIMACS text to a file and return its path"""
    def write(text, name="input.cnf"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


@pytest.fixture(autouse=True)
def reset_cli_logger():
    """The CLI attaches handlers to the 'all2sat' logger; drop them between tests"""
    yield
    root = logging.getLogger("all2sat")
    root.handlers.clear()
    root.setLevel(logging.NOTSET)
