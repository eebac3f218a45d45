"""
Random-instance experiments for all2sat
Generates seeded random 2-CNFs, counts their models with the cube counter
and reports per-instance statistics plus min/max summaries
"""
import csv
import io
import json
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from itertools import product
from typing import Dict, Iterator, List, Optional

import psutil

from twosat.compressed import count_models
from twosat.formula import Assignment, Clause2, Cnf2, Literal, evaluate

logger = logging.getLogger("all2sat.harness")


class HarnessError(ValueError):
    pass


@dataclass
class ExperimentRecord:
    n: int
    t: int
    seed: int
    index: int
    time_ms: float
    count: int
    satisfiable: bool
    poset_size: int = 0
    largest_component_size: int = 0
    halfcore_size: int = 0
    ti_count: int = 0
    av2: float = 0.0
    cubes: int = 0
    rigid_size: int = 0
    peak_rss_mb: float = 0.0
    verified: bool = False


# record field -> column name shared with the `count` subcommand output
COLUMN_NAMES = {
    "count": "N",
    "cubes": "R",
    "poset_size": "W",
    "halfcore_size": "HC",
    "ti_count": "ti",
    "largest_component_size": "largest_component",
}


def random_2cnf(n: int, t: int, seed: int) -> Cnf2:
    """t clauses over distinct variable pairs with uniform polarities; duplicates allowed"""
    if n < 2:
        raise HarnessError(f"need at least 2 variables, got {n}")
    if t < 1:
        raise HarnessError(f"need at least 1 clause, got {t}")
    rng = random.Random(seed)
    clauses = []
    for _ in range(t):
        a, b = rng.sample(range(1, n + 1), 2)
        clauses.append(Clause2(Literal(a, rng.random() < 0.5), Literal(b, rng.random() < 0.5)))
    return Cnf2(n, tuple(clauses))


def brute_force_models(formula: Cnf2, limit: int = 24) -> Iterator[Assignment]:
    """Every model by exhaustive scan, in lexicographic bit order"""
    if formula.num_vars > limit:
        raise HarnessError(f"brute force refused: {formula.num_vars} variables exceed limit {limit}")
    for values in product((0, 1), repeat=formula.num_vars):
        assignment = Assignment(values)
        if evaluate(formula, assignment):
            yield assignment


def _rss_mb() -> float:
    return psutil.Process(os.getpid()).memory_info().rss / (1024 * 1024)


def _run_instance(n: int, t: int, seed: int, index: int, verify_limit: int = 0) -> ExperimentRecord:
    formula = random_2cnf(n, t, seed + index)
    started = time.perf_counter()
    result = count_models(formula)
    elapsed = (time.perf_counter() - started) * 1000

    if result.satisfiable:
        if result.poset_size - 2 * result.halfcore_size != result.rigid_size:
            raise HarnessError(
                f"instance {index}: rigid parts and halfcore do not partition the poset")
        if result.ti_count > result.halfcore_size:
            raise HarnessError(f"instance {index}: ti(HC) larger than the halfcore")

    verified = n <= verify_limit
    if verified:
        expected = sum(1 for _ in brute_force_models(formula, verify_limit))
        if expected != result.count:
            raise HarnessError(
                f"instance {index}: counted {result.count} models, brute force found {expected}")

    return ExperimentRecord(
        n=n, t=t, seed=seed, index=index, time_ms=round(elapsed, 3),
        count=result.count, satisfiable=result.satisfiable,
        poset_size=result.poset_size,
        largest_component_size=result.largest_component_size,
        halfcore_size=result.halfcore_size, ti_count=result.ti_count,
        av2=round(result.av2, 3), cubes=result.cubes, rigid_size=result.rigid_size,
        peak_rss_mb=round(_rss_mb(), 1), verified=verified,
    )


def run_experiment(n: int, t: int, num_instances: int, seed: int = 1,
                   workers: int = 1, verify_limit: int = 0) -> List[ExperimentRecord]:
    """
    Instance i uses seed + i; cubes are counted and dropped, never kept.
    With n <= verify_limit every count is checked against brute force.
    """
    if num_instances < 1:
        raise HarnessError(f"need at least 1 instance, got {num_instances}")
    if workers < 1:
        raise HarnessError(f"need at least 1 worker, got {workers}")
    # fail fast on bad parameters before spawning workers
    random_2cnf(n, t, seed)

    logger.info(f"Running {num_instances} instances with n={n}, t={t}, seed={seed}")
    if workers == 1:
        records = [_run_instance(n, t, seed, i, verify_limit) for i in range(num_instances)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_instance, n, t, seed, i, verify_limit)
                       for i in range(num_instances)]
            records = [future.result() for future in futures]

    records.sort(key=lambda r: (r.seed, r.index))
    for record in records:
        logger.debug(f"instance {record.index}: N={record.count} |W|={record.poset_size} "
                     f"|HC|={record.halfcore_size} R={record.cubes} in {record.time_ms}ms")
    return records


def summarize(records: List[ExperimentRecord]) -> Dict[str, Optional[ExperimentRecord]]:
    """Satisfiable count plus the extreme instances by time and by model count"""
    sat = [r for r in records if r.satisfiable]
    summary: Dict[str, Optional[ExperimentRecord]] = {
        "min_time": None, "max_time": None, "min_count": None, "max_count": None,
    }
    if sat:
        summary["min_time"] = min(sat, key=lambda r: r.time_ms)
        summary["max_time"] = max(sat, key=lambda r: r.time_ms)
        summary["min_count"] = min(sat, key=lambda r: r.count)
        summary["max_count"] = max(sat, key=lambda r: r.count)
    summary["sat"] = len(sat)
    summary["total"] = len(records)
    return summary


def _row(record: ExperimentRecord) -> Dict:
    return {COLUMN_NAMES.get(key, key): value for key, value in asdict(record).items()}


def format_records(records: List[ExperimentRecord], fmt: str = "csv") -> str:
    if fmt == "json":
        return "\n".join(json.dumps(_row(record)) for record in records)
    if fmt != "csv":
        raise HarnessError(f"unknown record format {fmt!r}")
    buffer = io.StringIO()
    columns = [COLUMN_NAMES.get(f.name, f.name) for f in fields(ExperimentRecord)]
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow(_row(record))
    return buffer.getvalue().rstrip("\n")


def format_summary(summary: Dict) -> str:
    lines = [f"sat {summary['sat']}/{summary['total']}"]
    for key in ("min_time", "max_time", "min_count", "max_count"):
        record = summary[key]
        if record is None:
            continue
        lines.append(f"{key}: N={record.count} |W|={record.poset_size} |HC|={record.halfcore_size} "
                     f"ti={record.ti_count} av2={record.av2} R={record.cubes} "
                     f"time={record.time_ms}ms")
    return "\n".join(lines)
