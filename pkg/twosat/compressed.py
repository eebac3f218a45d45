"""
Compressed model output: disjoint {0,1,2}-cubes over a halfcore.

Rows are indexed by a halfcore HC (one element of every omega pair of the
core). A 2 at position s is *special* when every conclusion of s is already
decided in the row (Conc00/Conc10 at 0, Conc11/Conc01 at 1); such a 2 never
needs pinning. Nonspecial 2's get split as in ``twosat.enumerator``; a row
whose 2's are all special is emitted as a cube of 2^#twos models.
"""
import json
import logging
import time
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from twosat.bitset import iter_bits, popcount
from twosat.enumerator import (
    ConstraintError, EnumerationStats, Model, Prepared, Status, TernaryRow,
    literal_mask, initial_row, prepare,
)
from twosat.formula import Cnf2, Literal
from twosat.involution_poset import InvolutionPoset, RigidSplit

logger = logging.getLogger("all2sat.compressed")

SPLIT_ORDERS = ("conc_size", "lowest_id")


@dataclass(frozen=True)
class Halfcore:
    members: int
    companions: int

    def elements(self) -> List[int]:
        return list(iter_bits(self.members))

    @property
    def size(self) -> int:
        return popcount(self.members)


@dataclass(frozen=True)
class ConcTables:
    halfcore: Halfcore
    conc11: Dict[int, int]
    conc10: Dict[int, int]
    conc00: Dict[int, int]
    conc01: Dict[int, int]

    def total(self, c: int) -> int:
        return self.conc11[c] | self.conc10[c] | self.conc00[c] | self.conc01[c]

    def is_special(self, s: int, ones: int, zeros: int) -> bool:
        return ((self.conc00[s] | self.conc10[s]) & ~zeros == 0
                and (self.conc11[s] | self.conc01[s]) & ~ones == 0)


@dataclass(frozen=True)
class ModelCube:
    row: TernaryRow

    @property
    def num_twos(self) -> int:
        return popcount(self.row.twos)

    @property
    def weight(self) -> int:
        return 1 << self.num_twos


@dataclass
class CubeCount:
    count: int = 0
    cubes: int = 0
    twos_total: int = 0
    satisfiable: bool = False
    poset_size: int = 0
    largest_component_size: int = 0
    rigid_size: int = 0
    halfcore_size: int = 0
    ti_count: int = 0

    @property
    def av2(self) -> float:
        """Plain mean of #twos over the cubes"""
        return self.twos_total / self.cubes if self.cubes else 0.0


def choose_halfcore(split: RigidSplit, poset: InvolutionPoset) -> Halfcore:
    """From every omega pair of the core keep the element with the smaller id"""
    members = 0
    for c in iter_bits(split.core):
        if c < poset.omega[c]:
            members |= 1 << c
    return Halfcore(members, poset.omega_mask(members))


def halfcore_from_literals(prepared: Prepared, literals: Iterable[Literal]) -> Halfcore:
    poset, core = prepared.poset, prepared.split.core
    members = literal_mask(prepared, literals)
    companions = poset.omega_mask(members)
    if members & ~core or members & companions or members | companions != core:
        raise ConstraintError("literals do not pick exactly one element of each core pair")
    return Halfcore(members, companions)


def conclusion_tables(halfcore: Halfcore, poset: InvolutionPoset) -> ConcTables:
    hc = halfcore.members
    up, down, omega = poset.up, poset.down, poset.omega
    conc11, conc10, conc00, conc01 = {}, {}, {}, {}
    for c in iter_bits(hc):
        bit = 1 << c
        conc11[c] = up[c] & ~bit & hc
        # omega(c↑) = omega(c)↓ and omega(c↓) = omega(c)↑
        conc10[c] = down[omega[c]] & hc
        conc00[c] = down[c] & ~bit & hc
        conc01[c] = up[omega[c]] & hc
    return ConcTables(halfcore, conc11, conc10, conc00, conc01)


def isolated_elements(tables: ConcTables) -> int:
    """Singleton components of the subposet (HC, <=)"""
    mask = 0
    for c in tables.halfcore.elements():
        if not tables.conc11[c] | tables.conc00[c]:
            mask |= 1 << c
    return mask


def totally_isolated(tables: ConcTables) -> int:
    mask = 0
    for c in tables.halfcore.elements():
        if not tables.total(c):
            mask |= 1 << c
    return mask


def special_twos(row: TernaryRow, tables: ConcTables) -> int:
    return sum(1 << s for s in iter_bits(row.twos)
               if tables.is_special(s, row.ones, row.zeros))


def _split_priority(tables: ConcTables, split_order: str) -> List[int]:
    elements = tables.halfcore.elements()
    if split_order == "lowest_id":
        return elements
    return sorted(elements, key=lambda c: (-popcount(tables.conc11[c]) - popcount(tables.conc10[c])
                                           - popcount(tables.conc00[c]) - popcount(tables.conc01[c]), c))


class CubeStream:
    """
    Disjoint cubes whose union is the model set, projected to the halfcore.
    ``status`` is known on construction; ``stats`` fill in while iterating.
    """

    def __init__(self, formula: Cnf2, force_true: Iterable[Literal] = (),
                 force_false: Iterable[Literal] = (), split_order="conc_size",
                 halfcore: Optional[Iterable[Literal]] = None, check_invariants: bool = False,
                 prepared: Optional[Prepared] = None):
        self.prepared = prepared or prepare(formula)
        self.stats = EnumerationStats()
        self.check_invariants = check_invariants
        self.root: Optional[TernaryRow] = None
        self.status = self.prepared.status
        self.halfcore: Optional[Halfcore] = None
        self.tables: Optional[ConcTables] = None
        if self.status is Status.UNSATISFIABLE:
            return

        prepared = self.prepared
        poset, split = prepared.poset, prepared.split
        if halfcore is None:
            self.halfcore = choose_halfcore(split, poset)
        else:
            self.halfcore = halfcore_from_literals(prepared, halfcore)
        self.tables = conclusion_tables(self.halfcore, poset)

        if isinstance(split_order, str):
            if split_order not in SPLIT_ORDERS:
                raise ValueError(f"unknown split order {split_order!r}")
            self.priority = _split_priority(self.tables, split_order)
        else:
            listed = [prepared.component(lit) for lit in split_order]
            listed = [c for c in dict.fromkeys(listed) if self.halfcore.members >> c & 1]
            seen = set(listed)
            rest = [c for c in _split_priority(self.tables, "conc_size") if c not in seen]
            self.priority = listed + rest

        force_true, force_false = list(force_true), list(force_false)
        true_mask = (literal_mask(prepared, prepared.formula.units)
                     | literal_mask(prepared, force_true))
        false_mask = literal_mask(prepared, force_false)
        self.root = initial_row(split, poset, true_mask, false_mask, positions=self.halfcore.members)
        if self.root is None:
            self.status = Status.UNSATISFIABLE
        logger.debug(f"|HC|={self.halfcore.size}, "
                     f"ti(HC)={popcount(totally_isolated(self.tables))}")

    @property
    def satisfiable(self) -> bool:
        return self.status is Status.SATISFIABLE

    def final_rows(self) -> Iterator[Tuple[int, int, int]]:
        """(ones, zeros, twos) of every cube, without building row objects"""
        if self.root is None:
            return
        tables, stats, check = self.tables, self.stats, self.check_invariants
        conc11, conc10, conc00, conc01 = tables.conc11, tables.conc10, tables.conc00, tables.conc01
        priority = self.priority
        hc = self.halfcore.members

        # stack entries carry the parent's special 2's, which stay special below it
        stack = [(self.root.ones, self.root.zeros, 0)]
        stats.reset()
        stats.peak_stack = 1
        while stack:
            ones, zeros, special = stack.pop()
            twos = hc & ~(ones | zeros)
            if check:
                assert special & ~twos == 0, "a special 2 got pinned"
            candidates = twos & ~special
            for s in iter_bits(candidates):
                if ((conc00[s] | conc10[s]) & ~zeros == 0
                        and (conc11[s] | conc01[s]) & ~ones == 0):
                    special |= 1 << s
            if check:
                assert special == special_twos(TernaryRow(hc, ones, zeros), tables)

            nonspecial = twos & ~special
            if not nonspecial:
                stats.final_rows += 1
                yield ones, zeros, twos
                continue

            stats.nonfinal_rows += 1
            for c in priority:
                if nonspecial >> c & 1:
                    break
            if check:
                reach = conc11[c] | conc10[c] | conc00[c] | conc01[c]
                assert reach & special == 0, "conclusions of a nonspecial 2 meet a special 2"
            bit = 1 << c
            stack.append((ones | conc01[c], zeros | bit | conc00[c], special))
            stack.append((ones | bit | conc11[c], zeros | conc10[c], special))
            if len(stack) > stats.peak_stack:
                stats.peak_stack = len(stack)

    def __iter__(self) -> Iterator[ModelCube]:
        hc = self.halfcore.members if self.halfcore else 0
        started = time.perf_counter()
        for ones, zeros, _ in self.final_rows():
            yield ModelCube(TernaryRow(hc, ones, zeros))
        if self.root is not None:
            logger.info(f"Enumerated {self.stats.final_rows} cubes in "
                        f"{time.perf_counter() - started:.3f}s")


def enumerate_cubes(formula: Cnf2, force_true: Iterable[Literal] = (),
                    force_false: Iterable[Literal] = (), **options) -> CubeStream:
    return CubeStream(formula, force_true, force_false, **options)


def count_models(formula: Cnf2, split_order: str = "conc_size",
                 prepared: Optional[Prepared] = None) -> CubeCount:
    """Exact model count N as the sum of cube weights, plus cube statistics"""
    stream = CubeStream(formula, split_order=split_order, prepared=prepared)
    result = CubeCount(satisfiable=stream.satisfiable)
    prep = stream.prepared
    if prep.partition is not None and prep.poset is not None:
        result.poset_size = prep.poset.size
        result.largest_component_size = prep.partition.largest_component_size
        result.rigid_size = popcount(prep.split.rigid_filter | prep.split.rigid_ideal)
        result.halfcore_size = stream.halfcore.size
        result.ti_count = popcount(totally_isolated(stream.tables))

    count = cubes = twos_total = 0
    for _, _, twos in stream.final_rows():
        k = popcount(twos)
        count += 1 << k
        twos_total += k
        cubes += 1
    result.count, result.cubes, result.twos_total = count, cubes, twos_total
    return result


def cube_models(cube: ModelCube, prepared: Prepared, halfcore: Halfcore) -> Iterator[int]:
    """All bisection filters (as bitsets) of the cube: HC bits, their complements on omega(HC), and F1"""
    poset = prepared.poset
    row = cube.row
    twos = list(iter_bits(row.twos))
    rigid = prepared.split.rigid_filter
    for pattern in range(1 << len(twos)):
        ones = row.ones
        for i, c in enumerate(twos):
            if pattern >> i & 1:
                ones |= 1 << c
        zeros = halfcore.members & ~ones
        yield rigid | ones | poset.omega_mask(zeros)


def expand_cube(cube: ModelCube, prepared: Prepared, halfcore: Halfcore) -> Iterator[Model]:
    for ones in cube_models(cube, prepared, halfcore):
        yield Model(prepared.unpack(ones))


def cube_to_bits(cube: ModelCube, prepared: Prepared, halfcore: Halfcore) -> str:
    """
    Variable-order rendering with 0/1/2. Variables sharing a component (or
    sitting in complementary components) are linked, so the number of 2's
    can exceed log2 of the weight.
    """
    split, poset, row = prepared.split, prepared.poset, cube.row
    chars = []
    for i in range(1, prepared.formula.num_vars + 1):
        c = prepared.component(Literal(i))
        if split.rigid_filter >> c & 1:
            chars.append("1")
        elif split.rigid_ideal >> c & 1:
            chars.append("0")
        elif halfcore.members >> c & 1:
            chars.append(str(row.value(c)))
        else:
            value = row.value(poset.omega[c])
            chars.append("2" if value == 2 else str(1 - value))
    return "".join(chars)


def format_cube(cube: ModelCube, prepared: Prepared, halfcore: Halfcore, fmt: str = "text") -> str:
    bits = cube_to_bits(cube, prepared, halfcore)
    if fmt == "json":
        return json.dumps({"bits": bits, "weight": cube.weight})
    return f"{bits} #{cube.weight}"
