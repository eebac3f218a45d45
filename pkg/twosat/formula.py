"""
2-CNF formulas: literals, two-literal clauses, DIMACS reading and writing,
normalization and evaluation.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger("all2sat.formula")


class DimacsError(ValueError):
    """Malformed DIMACS input"""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True, order=True)
class Literal:
    """Variable ``x_i`` (positive) or its negation"""
    variable: int
    positive: bool = True

    def __post_init__(self):
        if self.variable < 1:
            raise ValueError(f"Variable index must be >= 1, got {self.variable}")

    def neg(self) -> "Literal":
        return Literal(self.variable, not self.positive)

    @property
    def polarity(self) -> str:
        return "positive" if self.positive else "negative"

    @property
    def vertex(self) -> int:
        """Implication digraph vertex: x_i -> 2i-2, ~x_i -> 2i-1"""
        return 2 * self.variable - (2 if self.positive else 1)

    @classmethod
    def from_vertex(cls, vertex: int) -> "Literal":
        return cls(vertex // 2 + 1, vertex % 2 == 0)

    @classmethod
    def from_dimacs(cls, value: int) -> "Literal":
        if value == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(value), value > 0)

    def to_dimacs(self) -> int:
        return self.variable if self.positive else -self.variable

    def is_true_under(self, assignment: "Assignment") -> bool:
        value = assignment.values[self.variable - 1]
        return value == 1 if self.positive else value == 0

    def __str__(self):
        return f"x{self.variable}" if self.positive else f"~x{self.variable}"


@dataclass(frozen=True, eq=False)
class Clause2:
    """Disjunction of two literals, equal up to order of its literals"""
    first: Literal
    second: Literal

    @property
    def literals(self) -> frozenset:
        return frozenset((self.first, self.second))

    def is_tautology(self) -> bool:
        return self.first == self.second.neg()

    def is_degenerate(self) -> bool:
        return self.first == self.second

    def __eq__(self, other):
        if not isinstance(other, Clause2):
            return NotImplemented
        return self.literals == other.literals

    def __hash__(self):
        return hash(self.literals)

    def __str__(self):
        return f"({self.first} | {self.second})"


@dataclass(frozen=True)
class Assignment:
    """0/1 values of x_1..x_n, ``values[i-1]`` belongs to ``x_i``"""
    values: Tuple[int, ...]

    @property
    def num_vars(self) -> int:
        return len(self.values)

    def value(self, literal: Literal) -> int:
        return 1 if literal.is_true_under(self) else 0

    @classmethod
    def from_bits(cls, bits: str) -> "Assignment":
        return cls(tuple(int(ch) for ch in bits))

    def to_bits(self) -> str:
        return "".join(str(v) for v in self.values)

    def to_literals(self) -> List[int]:
        return [i if v else -i for i, v in enumerate(self.values, start=1)]


@dataclass(frozen=True)
class Contradiction:
    """Unit clauses force both polarities of ``variable``"""
    variable: int


@dataclass(frozen=True)
class Cnf2:
    num_vars: int
    clauses: Tuple[Clause2, ...] = ()
    units: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        object.__setattr__(self, "units", frozenset(self.units))
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for literal in self._all_literals():
            if literal.variable > self.num_vars:
                raise ValueError(
                    f"Literal {literal} exceeds declared variable count {self.num_vars}")

    def _all_literals(self):
        for clause in self.clauses:
            yield clause.first
            yield clause.second
        yield from self.units

    @classmethod
    def from_dimacs_clauses(cls, num_vars: int, clauses: Iterable[Sequence[int]],
                            units: Iterable[int] = ()) -> "Cnf2":
        return cls(
            num_vars,
            tuple(Clause2(Literal.from_dimacs(a), Literal.from_dimacs(b)) for a, b in clauses),
            frozenset(Literal.from_dimacs(u) for u in units),
        )


def _read_dimacs(text: Union[str, bytes]) -> Tuple[int, List[Tuple[int, List[int]]]]:
    """Tokenize DIMACS CNF into the declared n and (line_no, literals) per clause"""
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as err:
            raise DimacsError(f"non-ASCII byte {text[err.start]:#04x}",
                              text.count(b"\n", 0, err.start) + 1) from None

    num_vars = None
    declared = 0
    clauses = []
    current: List[int] = []
    start_line = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise DimacsError("duplicate header", line_no)
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", line_no)
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", line_no) from None
            if num_vars < 0 or declared < 0:
                raise DimacsError("negative counts in header", line_no)
            continue
        if num_vars is None:
            raise DimacsError("clause before 'p cnf' header", line_no)

        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise DimacsError(f"invalid token {token!r}", line_no) from None
            if start_line is None:
                start_line = line_no
            if value == 0:
                if not current:
                    raise DimacsError("empty clause", line_no)
                clauses.append((start_line, current))
                current, start_line = [], None
                continue
            if abs(value) > num_vars:
                raise DimacsError(
                    f"literal {value} out of range for {num_vars} variables", line_no)
            current.append(value)

    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        logger.warning("Last clause is not terminated by 0, accepting it")
        clauses.append((start_line, current))
    if declared != len(clauses):
        logger.warning(f"Header declares {declared} clauses, found {len(clauses)}")
    return num_vars, clauses


def parse_dimacs(text: Union[str, bytes]) -> Cnf2:
    """Read a 2-CNF; width-1 clauses become units, wider clauses are rejected"""
    num_vars, raw_clauses = _read_dimacs(text)
    clauses = []
    units = set()
    for line_no, lits in raw_clauses:
        if len(lits) >= 3:
            raise DimacsError(f"clause of width {len(lits)}, only 2-CNF is supported", line_no)
        if len(lits) == 1:
            units.add(Literal.from_dimacs(lits[0]))
        else:
            clauses.append(Clause2(Literal.from_dimacs(lits[0]), Literal.from_dimacs(lits[1])))
    logger.debug(f"Parsed 2-CNF: n={num_vars}, {len(clauses)} clauses, {len(units)} units")
    return Cnf2(num_vars, tuple(clauses), frozenset(units))


def parse_clause_set(text: Union[str, bytes]) -> Tuple[int, List[Tuple[Literal, ...]]]:
    """Read a CNF of any clause width"""
    num_vars, raw_clauses = _read_dimacs(text)
    return num_vars, [tuple(Literal.from_dimacs(v) for v in lits) for _, lits in raw_clauses]


def serialize_dimacs(formula: Cnf2) -> str:
    units = sorted(formula.units, key=lambda lit: (lit.variable, not lit.positive))
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses) + len(units)}"]
    for clause in formula.clauses:
        lines.append(f"{clause.first.to_dimacs()} {clause.second.to_dimacs()} 0")
    for unit in units:
        lines.append(f"{unit.to_dimacs()} 0")
    return "\n".join(lines) + "\n"


def normalize(formula: Cnf2) -> Union[Cnf2, Contradiction]:
    """Drop duplicate and tautological clauses, turn {u,u} into unit u"""
    seen = set()
    clauses = []
    units = set(formula.units)
    for clause in formula.clauses:
        if clause.is_tautology():
            continue
        if clause.is_degenerate():
            units.add(clause.first)
            continue
        if clause in seen:
            continue
        seen.add(clause)
        clauses.append(clause)

    clashes = sorted(u.variable for u in units if u.positive and u.neg() in units)
    if clashes:
        return Contradiction(clashes[0])
    return Cnf2(formula.num_vars, tuple(clauses), frozenset(units))


def evaluate(formula: Cnf2, assignment: Assignment) -> bool:
    if assignment.num_vars != formula.num_vars:
        raise ValueError(
            f"Assignment covers {assignment.num_vars} variables, formula has {formula.num_vars}")
    for clause in formula.clauses:
        if not (clause.first.is_true_under(assignment) or clause.second.is_true_under(assignment)):
            return False
    return all(unit.is_true_under(assignment) for unit in formula.units)
