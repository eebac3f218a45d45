"""
Involution poset of a satisfiable 2-CNF.

Elements are strong components, ordered by reachability, with the
anti-automorphism omega sending a component to the component of its negated
literals. Up and down sets are integer bitsets (see ``twosat.bitset``).
"""
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from twosat.bitset import iter_bits, popcount, to_mask
from twosat.formula import Assignment, Literal
from twosat.implication_graph import ComponentPartition, check_condition4

logger = logging.getLogger("all2sat.involution_poset")


class PosetError(ValueError):
    pass


class UnknownElementError(KeyError):
    pass


@dataclass(frozen=True)
class InvolutionPoset:
    partition: ComponentPartition
    omega: Tuple[int, ...]
    up: Tuple[int, ...]
    down: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.omega)

    @property
    def all_elements(self) -> int:
        return (1 << self.size) - 1

    def _check(self, c: int):
        if not 0 <= c < self.size:
            raise UnknownElementError(c)

    def leq(self, c: int, d: int) -> bool:
        return bool(self.up[c] >> d & 1)

    def up_set(self, c: int) -> FrozenSet[int]:
        """c↑ = {d : c <= d}, including c"""
        self._check(c)
        return frozenset(iter_bits(self.up[c]))

    def down_set(self, c: int) -> FrozenSet[int]:
        """c↓ = {d : d <= c}, including c"""
        self._check(c)
        return frozenset(iter_bits(self.down[c]))

    def omega_mask(self, mask: int) -> int:
        image = 0
        for c in iter_bits(mask):
            image |= 1 << self.omega[c]
        return image

    def is_filter(self, mask: int) -> bool:
        return all(self.up[c] & ~mask == 0 for c in iter_bits(mask))

    def is_ideal(self, mask: int) -> bool:
        return all(self.down[c] & ~mask == 0 for c in iter_bits(mask))


@dataclass(frozen=True)
class RigidSplit:
    rigid_filter: int
    rigid_ideal: int
    core: int

    @property
    def h(self) -> int:
        return popcount(self.core) // 2

    def core_elements(self) -> List[int]:
        return list(iter_bits(self.core))


@dataclass(frozen=True)
class Bisection:
    filter_part: int
    ideal_part: int


def build_poset(partition: ComponentPartition) -> InvolutionPoset:
    status = check_condition4(partition)
    if not status.satisfiable:
        raise PosetError(
            f"x{status.witness_conflict} and its negation share a strong component")

    size = partition.num_components
    up = [0] * size
    # arcs run from larger to smaller ids, so successors are closed first
    for c in range(size):
        mask = 1 << c
        for d in partition.condensation_arcs[c]:
            mask |= up[d]
        up[c] = mask

    down = [0] * size
    for c in range(size):
        bit = 1 << c
        for d in iter_bits(up[c]):
            down[d] |= bit

    omega = tuple(partition.mirror(c) for c in range(size))
    poset = InvolutionPoset(partition, omega, tuple(up), tuple(down))
    logger.debug(f"Involution poset with {size} elements")
    return poset


def rigid_split(poset: InvolutionPoset) -> RigidSplit:
    """Low elements (c < omega(c)) form J1, their images F1, the rest is the core"""
    low = 0
    for c in range(poset.size):
        if poset.up[c] >> poset.omega[c] & 1:
            low |= 1 << c
    high = poset.omega_mask(low)
    core = poset.all_elements & ~(low | high)

    # core configuration property: no d, omega(d) both below (or above) a core element
    for c in iter_bits(core):
        below = poset.down[c] & core
        above = poset.up[c] & core
        assert below & poset.omega_mask(below) == 0, f"core element {c} sits above a complementary pair"
        assert above & poset.omega_mask(above) == 0, f"core element {c} sits below a complementary pair"

    split = RigidSplit(rigid_filter=high, rigid_ideal=low, core=core)
    logger.debug(f"|F1|=|J1|={popcount(low)}, |C|={popcount(core)}")
    return split


def is_bisection(poset: InvolutionPoset, filter_part: int, ideal_part: int) -> bool:
    return (
        filter_part | ideal_part == poset.all_elements
        and filter_part & ideal_part == 0
        and poset.omega_mask(filter_part) == ideal_part
        and poset.is_filter(filter_part)
        and poset.is_ideal(ideal_part)
    )


def shell_one_bisection(poset: InvolutionPoset,
                        preference: Optional[Sequence[int]] = None) -> Bisection:
    """
    Shell the poset from above: take a maximal remaining element into the
    filter part and its omega image into the ideal part until nothing is left.
    ``preference`` lists elements in the order they should be tried, the
    default being ascending id.
    """
    order = list(preference) if preference is not None else []
    listed = set(order)
    order += [c for c in range(poset.size) if c not in listed]

    remaining = poset.all_elements
    filter_part = ideal_part = 0
    while remaining:
        for c in order:
            bit = 1 << c
            if remaining & bit and poset.up[c] & remaining == bit:
                break
        else:
            raise PosetError("no maximal element left to shell")
        image = 1 << poset.omega[c]
        filter_part |= bit
        ideal_part |= image
        remaining &= ~(bit | image)
    return Bisection(filter_part, ideal_part)


def lift_assignment(poset: InvolutionPoset, assignment: Assignment) -> Bisection:
    """The bisection g([u]) = f(u) of a model f"""
    filter_part = 0
    for c in range(poset.size):
        literal = Literal.from_vertex(poset.partition.members[c][0])
        if literal.is_true_under(assignment):
            filter_part |= 1 << c
    return Bisection(filter_part, poset.all_elements & ~filter_part)


def cover_relation(poset: InvolutionPoset) -> List[Tuple[int, int]]:
    """Hasse covers c < d with nothing strictly between"""
    covers = []
    for c in range(poset.size):
        strictly_above = poset.up[c] & ~(1 << c)
        for d in iter_bits(strictly_above):
            between = strictly_above & poset.down[d] & ~(1 << d)
            if not between:
                covers.append((c, d))
    return covers


def export_poset(poset: InvolutionPoset) -> str:
    """Cover pairs ``c d`` followed by the omega permutation as ``omega c d`` lines"""
    lines = [f"{c} {d}" for c, d in cover_relation(poset)]
    lines += [f"omega {c} {d}" for c, d in enumerate(poset.omega)]
    return "\n".join(lines) + "\n"


def elements_of_literals(poset: InvolutionPoset, literals: Iterable) -> int:
    return to_mask(poset.partition.component_of_literal(lit) for lit in literals)
