"""
ALL 2-SAT working-stack enumeration.

A ternary row fixes some poset positions to 0 or 1 and leaves the rest as
don't-cares (2). Rows live on a LIFO stack: the top row is either final (no
2 left, one model) or replaced by its two sons, obtained by pinning one 2 to
1 (its up set goes to 1, the omega image to 0) and to 0 (its down set goes
to 0, the omega image to 1). Every leaf of the resulting binary tree is a
model and every model is a leaf exactly once.
"""
import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from twosat.bitset import iter_bits, popcount
from twosat.formula import Assignment, Cnf2, Contradiction, Literal, normalize
from twosat.implication_graph import (
    ComponentPartition, ImplicationDigraph, SatStatus, build_digraph,
    check_condition4, strong_components,
)
from twosat.involution_poset import InvolutionPoset, RigidSplit, build_poset, rigid_split

logger = logging.getLogger("all2sat.enumerator")

BRANCHING_STRATEGIES = ("max_closure", "lowest_id")


class ConstraintError(ValueError):
    pass


class Status(str, Enum):
    SATISFIABLE = "sat"
    UNSATISFIABLE = "unsat"


@dataclass(frozen=True)
class TernaryRow:
    """ones/zeros are bitsets inside ``positions``; every other position is a 2"""
    positions: int
    ones: int = 0
    zeros: int = 0

    @property
    def twos(self) -> int:
        return self.positions & ~(self.ones | self.zeros)

    @property
    def is_final(self) -> bool:
        return self.twos == 0

    def value(self, c: int) -> int:
        bit = 1 << c
        if not self.positions & bit:
            raise KeyError(c)
        if self.ones & bit:
            return 1
        if self.zeros & bit:
            return 0
        return 2

    def values(self, order: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.value(c) for c in order)


@dataclass(frozen=True)
class Model:
    assignment: Assignment

    def bits(self) -> str:
        return self.assignment.to_bits()

    def __str__(self):
        return self.bits()


@dataclass(frozen=True)
class PartialModel:
    literal_set: Tuple[Literal, ...]
    values: Tuple[int, ...]

    def as_dict(self) -> Dict[Literal, int]:
        return dict(zip(self.literal_set, self.values))

    def __str__(self):
        return " ".join(f"{lit}={v}" for lit, v in zip(self.literal_set, self.values))


@dataclass
class EnumerationStats:
    final_rows: int = 0
    nonfinal_rows: int = 0
    peak_stack: int = 0

    def reset(self):
        self.final_rows = self.nonfinal_rows = self.peak_stack = 0


@dataclass(frozen=True)
class Prepared:
    """Everything computed from a formula before the first row is split"""
    formula: Cnf2
    status: Status
    digraph: Optional[ImplicationDigraph] = None
    partition: Optional[ComponentPartition] = None
    sat_status: Optional[SatStatus] = None
    poset: Optional[InvolutionPoset] = None
    split: Optional[RigidSplit] = None
    contradiction: Optional[Contradiction] = None

    def component(self, literal: Literal) -> int:
        return self.partition.component_of_literal(literal)

    def unpack(self, ones: int) -> Assignment:
        """Model whose true literals are the members of the components in ``ones``"""
        component_of = self.partition.component_of
        return Assignment(tuple(
            (ones >> component_of[2 * i]) & 1 for i in range(self.formula.num_vars)
        ))


def prepare(formula: Cnf2) -> Prepared:
    normal = normalize(formula)
    if isinstance(normal, Contradiction):
        logger.debug(f"Unit clauses clash on x{normal.variable}")
        return Prepared(formula, Status.UNSATISFIABLE, contradiction=normal)

    digraph = build_digraph(normal)
    partition = strong_components(digraph)
    sat_status = check_condition4(partition)
    if not sat_status.satisfiable:
        logger.debug(f"x{sat_status.witness_conflict} shares a component with its negation")
        return Prepared(normal, Status.UNSATISFIABLE, digraph, partition, sat_status)

    poset = build_poset(partition)
    split = rigid_split(poset)
    return Prepared(normal, Status.SATISFIABLE, digraph, partition, sat_status, poset, split)


def initial_row(split: RigidSplit, poset: InvolutionPoset, force_true: int = 0,
                force_false: int = 0, positions: Optional[int] = None) -> Optional[TernaryRow]:
    """
    Saturated starter row with the elements of ``force_true`` at 1 and those of
    ``force_false`` at 0 (bitsets over the whole poset). Returns None on a 0/1
    clash, i.e. when no model meets the constraints.
    """
    if positions is None:
        positions = split.core
    ones = split.rigid_filter
    for c in iter_bits(force_true):
        ones |= poset.up[c]
    for c in iter_bits(force_false):
        ones |= poset.up[poset.omega[c]]
    zeros = poset.omega_mask(ones)
    if ones & zeros:
        return None
    return TernaryRow(positions, ones & positions, zeros & positions)


def split_row(row: TernaryRow, c: int, poset: InvolutionPoset) -> Tuple[TernaryRow, TernaryRow]:
    """Sons of ``row`` with position ``c`` pinned to 1 and to 0"""
    if not row.twos >> c & 1:
        raise ValueError(f"position {c} is not a 2 in this row")
    pos = row.positions
    bar = poset.omega[c]
    r1 = TernaryRow(pos, row.ones | poset.up[c] & pos, row.zeros | poset.down[bar] & pos)
    r0 = TernaryRow(pos, row.ones | poset.up[bar] & pos, row.zeros | poset.down[c] & pos)
    return r1, r0


def choose_split(twos: int, poset: InvolutionPoset, strategy: str = "max_closure") -> int:
    """Pick the 2 whose up and down sets cover the most remaining 2's, ties by lowest id"""
    if strategy == "lowest_id":
        return (twos & -twos).bit_length() - 1
    best, best_score = -1, -1
    up, down = poset.up, poset.down
    for c in iter_bits(twos):
        score = popcount((up[c] | down[c]) & twos)
        if score > best_score:
            best, best_score = c, score
    return best


def literal_mask(prepared: Prepared, literals: Iterable[Literal]) -> int:
    mask = 0
    for literal in literals:
        if literal.variable > prepared.formula.num_vars:
            raise ConstraintError(f"{literal} is not a variable of the formula")
        mask |= 1 << prepared.component(literal)
    return mask


class RowWalk:
    """LIFO traversal of the row tree below a starter row"""

    def __init__(self, poset: InvolutionPoset, root: TernaryRow, strategy: str = "max_closure"):
        if strategy not in BRANCHING_STRATEGIES:
            raise ValueError(f"unknown branching strategy {strategy!r}")
        self.poset = poset
        self.root = root
        self.strategy = strategy
        self.stats = EnumerationStats()

    def __iter__(self) -> Iterator[TernaryRow]:
        poset = self.poset
        up, down, omega = poset.up, poset.down, poset.omega
        stats = self.stats
        pos = self.root.positions
        stack: List[Tuple[int, int]] = [(self.root.ones, self.root.zeros)]
        stats.reset()
        stats.peak_stack = 1

        while stack:
            ones, zeros = stack.pop()
            twos = pos & ~(ones | zeros)
            if not twos:
                stats.final_rows += 1
                yield TernaryRow(pos, ones, zeros)
                continue
            stats.nonfinal_rows += 1
            c = choose_split(twos, poset, self.strategy)
            bar = omega[c]
            stack.append((ones | up[bar] & pos, zeros | down[c] & pos))
            stack.append((ones | up[c] & pos, zeros | down[bar] & pos))
            if len(stack) > stats.peak_stack:
                stats.peak_stack = len(stack)


class ModelStream:
    """
    Lazily produced models. ``status`` is decided on construction, before any
    model is produced; ``stats`` fill in while iterating.
    """

    def __init__(self, formula: Cnf2, force_true: Iterable[Literal] = (),
                 force_false: Iterable[Literal] = (), strategy: str = "max_closure",
                 prepared: Optional[Prepared] = None):
        self.prepared = prepared or prepare(formula)
        self.stats = EnumerationStats()
        self.root: Optional[TernaryRow] = None
        self.status = self.prepared.status
        if self.status is Status.UNSATISFIABLE:
            return

        prepared = self.prepared
        true_mask = literal_mask(prepared, prepared.formula.units) | literal_mask(prepared, force_true)
        false_mask = literal_mask(prepared, force_false)
        self.root = initial_row(prepared.split, prepared.poset, true_mask, false_mask)
        if self.root is None:
            self.status = Status.UNSATISFIABLE
            return
        self._walk = RowWalk(prepared.poset, self.root, strategy)
        self.stats = self._walk.stats

    @property
    def satisfiable(self) -> bool:
        return self.status is Status.SATISFIABLE

    def rows(self) -> Iterator[TernaryRow]:
        if self.root is not None:
            yield from self._walk

    def __iter__(self) -> Iterator[Model]:
        if self.root is None:
            return
        started = time.perf_counter()
        rigid = self.prepared.split.rigid_filter
        for row in self._walk:
            yield Model(self.prepared.unpack(row.ones | rigid))
        logger.info(f"Enumerated {self.stats.final_rows} models in "
                    f"{time.perf_counter() - started:.3f}s, peak stack {self.stats.peak_stack}")


class PartialStream:
    """Restrictions of the models to a literal set, each produced once"""

    def __init__(self, formula: Cnf2, vstar: Iterable[Literal], strategy: str = "max_closure",
                 prepared: Optional[Prepared] = None):
        self.literal_set = tuple(dict.fromkeys(vstar))
        if not self.literal_set:
            raise ConstraintError("partial models need a nonempty literal set")
        self.prepared = prepared or prepare(formula)
        self.stats = EnumerationStats()
        self.status = self.prepared.status
        self.root: Optional[TernaryRow] = None
        if self.status is Status.UNSATISFIABLE:
            return

        prepared = self.prepared
        selected = literal_mask(prepared, self.literal_set)
        units = literal_mask(prepared, prepared.formula.units)
        self.root = initial_row(prepared.split, prepared.poset, units,
                                positions=selected & prepared.split.core)
        if self.root is None:
            self.status = Status.UNSATISFIABLE
            return
        self._walk = RowWalk(prepared.poset, self.root, strategy)
        self.stats = self._walk.stats
        self._components = tuple(prepared.component(lit) for lit in self.literal_set)

    @property
    def satisfiable(self) -> bool:
        return self.status is Status.SATISFIABLE

    def __iter__(self) -> Iterator[PartialModel]:
        if self.root is None:
            return
        rigid = self.prepared.split.rigid_filter
        for row in self._walk:
            ones = row.ones | rigid
            yield PartialModel(self.literal_set,
                               tuple((ones >> c) & 1 for c in self._components))
        logger.info(f"Enumerated {self.stats.final_rows} partial models "
                    f"over {len(self.literal_set)} literals")


def enumerate_models(formula: Cnf2, strategy: str = "max_closure") -> ModelStream:
    return ModelStream(formula, strategy=strategy)


def enumerate_constrained(formula: Cnf2, force_true: Iterable[Literal],
                          force_false: Iterable[Literal], strategy: str = "max_closure") -> ModelStream:
    """Models with every literal of ``force_true`` true and every literal of ``force_false`` false"""
    force_true, force_false = list(force_true), list(force_false)
    overlap = {lit.variable for lit in force_true} & {lit.variable for lit in force_false}
    if overlap:
        raise ConstraintError(f"variables {sorted(overlap)} are both forced true and false")
    return ModelStream(formula, force_true, force_false, strategy)


def enumerate_partial(formula: Cnf2, vstar: Iterable[Literal],
                      strategy: str = "max_closure") -> PartialStream:
    return PartialStream(formula, vstar, strategy)
