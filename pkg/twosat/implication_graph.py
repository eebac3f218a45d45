"""
Implication digraph of a 2-CNF and its strong components.

Every clause (a | b) contributes the arcs ~a -> b and ~b -> a. Vertices are
literals numbered by ``Literal.vertex`` so that ``v ^ 1`` is the negation of
vertex ``v``.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from twosat.formula import Cnf2, Literal

logger = logging.getLogger("all2sat.implication_graph")


@dataclass(frozen=True)
class ImplicationDigraph:
    num_vars: int
    successors: Tuple[Tuple[int, ...], ...]

    @property
    def num_vertices(self) -> int:
        return 2 * self.num_vars

    def arcs(self) -> Iterator[Tuple[int, int]]:
        for u, targets in enumerate(self.successors):
            for v in targets:
                yield u, v

    @property
    def arc_count(self) -> int:
        return sum(len(targets) for targets in self.successors)


@dataclass(frozen=True)
class ComponentPartition:
    """
    Strong components of an implication digraph.

    Component ids follow the order in which Tarjan's algorithm closes them,
    which is a reverse topological order of the condensation: every
    condensation arc goes from a larger id to a smaller one.
    """
    num_vars: int
    component_of: Tuple[int, ...]
    members: Tuple[Tuple[int, ...], ...]
    condensation_arcs: Tuple[Tuple[int, ...], ...]

    @property
    def num_components(self) -> int:
        return len(self.members)

    @property
    def largest_component_size(self) -> int:
        return max((len(m) for m in self.members), default=0)

    def component_of_literal(self, literal: Literal) -> int:
        return self.component_of[literal.vertex]

    def mirror(self, component: int) -> int:
        """Component holding the negations of ``component``'s members"""
        return self.component_of[self.members[component][0] ^ 1]

    def literals_of(self, component: int) -> List[Literal]:
        return [Literal.from_vertex(v) for v in self.members[component]]


@dataclass(frozen=True)
class SatStatus:
    satisfiable: bool
    witness_conflict: Optional[int] = None


def build_digraph(formula: Cnf2) -> ImplicationDigraph:
    adjacency: List[List[int]] = [[] for _ in range(2 * formula.num_vars)]
    for clause in formula.clauses:
        a, b = clause.first.vertex, clause.second.vertex
        adjacency[a ^ 1].append(b)
        adjacency[b ^ 1].append(a)
    return ImplicationDigraph(formula.num_vars, tuple(tuple(t) for t in adjacency))


def strong_components(graph: ImplicationDigraph) -> ComponentPartition:
    """Tarjan's algorithm, iterative so deep implication chains do not hit the recursion limit"""
    size = graph.num_vertices
    successors = graph.successors
    index = [-1] * size
    lowlink = [0] * size
    on_stack = [False] * size
    component_of = [-1] * size
    stack: List[int] = []
    members: List[Tuple[int, ...]] = []
    counter = 0

    for root in range(size):
        if index[root] != -1:
            continue
        # (vertex, position in its successor list)
        work = [(root, 0)]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True

        while work:
            v, pos = work[-1]
            targets = successors[v]
            if pos < len(targets):
                work[-1] = (v, pos + 1)
                w = targets[pos]
                if index[w] == -1:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
                continue

            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                component = len(members)
                scc = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component_of[w] = component
                    scc.append(w)
                    if w == v:
                        break
                members.append(tuple(sorted(scc)))

    condensation = [set() for _ in members]
    for u, v in graph.arcs():
        cu, cv = component_of[u], component_of[v]
        if cu != cv:
            condensation[cu].add(cv)

    partition = ComponentPartition(
        graph.num_vars,
        tuple(component_of),
        tuple(members),
        tuple(tuple(sorted(targets)) for targets in condensation),
    )
    logger.debug(f"{partition.num_components} strong components, "
                 f"largest has {partition.largest_component_size} literals")
    return partition


def check_condition4(partition: ComponentPartition) -> SatStatus:
    """Satisfiable iff no component holds both x_i and ~x_i"""
    for variable in range(1, partition.num_vars + 1):
        positive = 2 * variable - 2
        if partition.component_of[positive] == partition.component_of[positive + 1]:
            return SatStatus(False, variable)
    return SatStatus(True)


def export_edges(graph: ImplicationDigraph) -> str:
    """One arc per line as signed DIMACS literals"""
    return "".join(
        f"{Literal.from_vertex(u).to_dimacs()} {Literal.from_vertex(v).to_dimacs()}\n"
        for u, v in graph.arcs()
    )


def export_condensation(partition: ComponentPartition) -> str:
    return "".join(
        f"{c} {d}\n"
        for c, targets in enumerate(partition.condensation_arcs)
        for d in targets
    )
