"""
all2sat - enumerate every model of a 2-CNF in output-linear time.
"""
from twosat.compressed import (
    ConcTables, CubeCount, CubeStream, Halfcore, ModelCube, choose_halfcore,
    conclusion_tables, count_models, enumerate_cubes, expand_cube, special_twos,
)
from twosat.enumerator import (
    ConstraintError, Model, ModelStream, PartialModel, PartialStream, Status, TernaryRow,
    enumerate_constrained, enumerate_models, enumerate_partial, initial_row, prepare, split_row,
)
from twosat.formula import (
    Assignment, Clause2, Cnf2, Contradiction, DimacsError, Literal, evaluate, normalize,
    parse_dimacs, serialize_dimacs,
)
from twosat.horn import (
    ClauseSet, RenamingSet, apply_renaming, build_sigma, enumerate_renamings, is_horn,
    is_horn_renamable,
)
from twosat.implication_graph import build_digraph, check_condition4, strong_components
from twosat.involution_poset import build_poset, rigid_split, shell_one_bisection

__version__ = "1.0.0"
