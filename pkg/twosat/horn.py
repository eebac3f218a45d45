"""
Horn renamings of an arbitrary clause set.

A renaming flips the polarity of a set of variables. It makes every clause
Horn iff no two literals of one clause both end up positive. Reading
g_i = 0 as "rename x_i", a literal u ends up positive iff g makes u true,
so the renamings are exactly the models of the 2-CNF sigma holding
(~u | ~w) for every pair of distinct literals u, w sharing a clause.
Width-1 clauses have no such pair and contribute nothing.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterator, Tuple, Union

from twosat.compressed import count_models
from twosat.enumerator import ModelStream, Status
from twosat.formula import Clause2, Cnf2, Literal, parse_clause_set

logger = logging.getLogger("all2sat.horn")


@dataclass(frozen=True)
class ClauseSet:
    num_vars: int
    clauses: Tuple[Tuple[Literal, ...], ...]

    def __post_init__(self):
        # repeated literals collapse, so (x | x) is the unit x
        clauses = tuple(tuple(dict.fromkeys(clause)) for clause in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for clause in clauses:
            if not clause:
                raise ValueError("empty clause")
            literals = set(clause)
            for literal in clause:
                if literal.variable > self.num_vars:
                    raise ValueError(f"{literal} exceeds {self.num_vars} variables")
                if literal.neg() in literals:
                    raise ValueError(f"clause contains {literal} and its negation")

    @classmethod
    def from_dimacs(cls, text: Union[str, bytes]) -> "ClauseSet":
        num_vars, clauses = parse_clause_set(text)
        return cls(num_vars, tuple(clauses))


@dataclass(frozen=True)
class RenamingSet:
    negated_variables: FrozenSet[int] = frozenset()

    def __str__(self):
        return " ".join(str(-v) for v in sorted(self.negated_variables))

    def as_list(self):
        return [-v for v in sorted(self.negated_variables)]


def build_sigma(clause_set: ClauseSet) -> Cnf2:
    seen = set()
    clauses = []
    for clause in clause_set.clauses:
        for u, w in combinations(clause, 2):
            arc = Clause2(u.neg(), w.neg())
            if arc not in seen:
                seen.add(arc)
                clauses.append(arc)
    return Cnf2(clause_set.num_vars, tuple(clauses))


def apply_renaming(clause_set: ClauseSet, renaming: RenamingSet) -> ClauseSet:
    flipped = renaming.negated_variables
    return ClauseSet(clause_set.num_vars, tuple(
        tuple(lit.neg() if lit.variable in flipped else lit for lit in clause)
        for clause in clause_set.clauses
    ))


def is_horn(clause_set: ClauseSet) -> bool:
    return all(sum(lit.positive for lit in clause) <= 1 for clause in clause_set.clauses)


class RenamingStream:
    """Horn renamings in the order the underlying model enumeration produces them"""

    def __init__(self, clause_set: ClauseSet, strategy: str = "max_closure"):
        self.sigma = build_sigma(clause_set)
        logger.debug(f"sigma has {len(self.sigma.clauses)} 2-clauses over {self.sigma.num_vars} variables")
        self.models = ModelStream(self.sigma, strategy=strategy)
        self.status = self.models.status

    @property
    def renamable(self) -> bool:
        return self.status is Status.SATISFIABLE

    def __iter__(self) -> Iterator[RenamingSet]:
        for model in self.models:
            yield RenamingSet(frozenset(
                i for i, v in enumerate(model.assignment.values, start=1) if v == 0))


def enumerate_renamings(clause_set: ClauseSet, strategy: str = "max_closure") -> RenamingStream:
    return RenamingStream(clause_set, strategy)


def is_horn_renamable(clause_set: ClauseSet) -> bool:
    return RenamingStream(clause_set).renamable


def count_renamings(clause_set: ClauseSet) -> int:
    return count_models(build_sigma(clause_set)).count
