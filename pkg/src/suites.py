"""
Verification suites and zero tables.

Each suite is a list of independent tasks; tasks run in order or on a
process pool and their records are merged in task order, so reports do not
depend on the parallelism setting.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Sequence
import logging
import sys
import time

import pandas as pd
from tqdm import tqdm

from src.config import (
    IDENTITY_INDEX_CAP,
    MEIXNER_POLLACZEK_DEGREE_CAP,
    ORTHOGONALITY_INDEX_CAP,
    PFAFF_DEGREE_CAP,
    QUAD_INDEX_CAP,
    RECIPROCITY_DEGREE_CAP,
    TRANSFORM_SERIES_ORDER_CAP,
)
from src.critline import certificate_records, certify, interlacing_records, meixner_pollaczek_records
from src.identities import polynomial_identity_suite
from src.mellin import (
    closed_form_check,
    difference_equation_records,
    functional_equation_records,
    genfn_transform_check,
    hermite_reduction_check,
    pfaff_half_check,
    reciprocity_check,
    recursion_check,
)
from src.oracle_numerics import critical_zeros, decimal_roots, log_series_records, quadrature_records
from src.orthopoly import f20_form_check, genfun_check, hermite_structure_check, orthogonality_records
from src.reports import CheckRecord, RunConfig, VerificationReport, ZerosRecord, check_true, render_rational

logger = logging.getLogger(__name__)

SUITES = ("orthopoly", "mellin", "critline", "oracle", "all")
# "all" covers the exact suites; the oracle suite is numeric and slow
EXACT_SUITES = ("orthopoly", "mellin", "critline")

TABLE_COLUMNS = ["n", "mu", "t", "digits"]


@dataclass(frozen=True)
class Task:
    suite: str
    label: str
    func: Callable[..., List[CheckRecord]]
    kwargs: Dict[str, Any] = field(default_factory=dict)


def run_task(task: Task) -> List[CheckRecord]:
    try:
        return list(task.func(**task.kwargs))
    except Exception as e:
        logger.error(f"Task {task.suite}/{task.label} raised: {e}")
        params = {k: v for k, v in task.kwargs.items() if isinstance(v, (int, Fraction))}
        return [check_true(task.suite, task.label, False, f"{type(e).__name__}: {e}", **params)]


def _parallel_map(func: Callable, items: Sequence, parallelism: int, desc: str, show_progress: bool) -> List:
    with tqdm(total=len(items), desc=desc, file=sys.stderr, disable=not show_progress) as bar:
        if parallelism <= 1 or len(items) <= 1:
            results = []
            for item in items:
                results.append(func(item))
                bar.update(1)
            return results
        results = []
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            # map yields in submission order
            for result in pool.map(func, items):
                results.append(result)
                bar.update(1)
        return results


def orthopoly_tasks(config: RunConfig) -> List[Task]:
    tasks = []
    for mu in config.mu_list:
        tasks.append(Task("orthopoly", "hermite structure", hermite_structure_check, {"n_max": config.n_max, "mu": mu}))
        tasks.append(Task("orthopoly", "hermite generating function", genfun_check,
                          {"mu": mu, "N": config.series_order}))
        tasks.append(Task("orthopoly", "orthogonality", orthogonality_records,
                          {"n_max": min(config.n_max, ORTHOGONALITY_INDEX_CAP), "mu": mu}))
    tasks.append(Task("orthopoly", "2F0 form", f20_form_check, {"n_max": config.n_max, "mu_grid": config.mu_list}))
    tasks.append(Task("orthopoly", "polynomial identities", polynomial_identity_suite,
                      {"mu_grid": config.mu_list, "n_max": min(config.n_max, IDENTITY_INDEX_CAP),
                       "N": config.series_order}))
    return tasks


def mellin_tasks(config: RunConfig) -> List[Task]:
    n_max = config.n_max
    order = max(1, min(config.series_order, TRANSFORM_SERIES_ORDER_CAP, n_max))
    half = min(n_max // 2, RECIPROCITY_DEGREE_CAP)
    tasks = []
    for mu in config.mu_list:
        tasks.extend([
            Task("mellin", "closed form", closed_form_check, {"m_max": n_max, "mu": mu}),
            Task("mellin", "functional equation", functional_equation_records, {"m_max": n_max, "mu": mu}),
            Task("mellin", "transform recursion", recursion_check, {"m_max": n_max, "mu": mu}),
            Task("mellin", "transform generating function", genfn_transform_check, {"mu": mu, "N": order}),
            Task("mellin", "reciprocity", reciprocity_check, {"n_max": half, "m_max": half, "mu": mu}),
            Task("mellin", "difference equations", difference_equation_records, {"m_max": n_max, "mu": mu}),
            Task("mellin", "2F1 transformations", pfaff_half_check,
                 {"n_max": min(n_max // 2, PFAFF_DEGREE_CAP), "mu": mu}),
        ])
    tasks.append(Task("mellin", "classical reduction", hermite_reduction_check,
                      {"n_max": n_max, "mu_grid": config.mu_list}))
    return tasks


def critline_tasks(config: RunConfig) -> List[Task]:
    tasks = []
    for mu in config.mu_list:
        tasks.extend([
            Task("critline", "certificates", certificate_records, {"m_max": config.n_max, "mu": mu}),
            Task("critline", "interlacing", interlacing_records,
                 {"m_max": config.n_max, "mu": mu}),
            Task("critline", "Meixner-Pollaczek", meixner_pollaczek_records,
                 {"n_max": min(config.n_max // 2, MEIXNER_POLLACZEK_DEGREE_CAP), "mu": mu}),
        ])
    return tasks


def oracle_tasks(config: RunConfig) -> List[Task]:
    tasks = [
        Task("oracle", "quadrature", quadrature_records,
             {"m_max": min(config.n_max, QUAD_INDEX_CAP), "mu": mu, "precision_bits": config.quad_precision_bits})
        for mu in config.mu_list
    ]
    tasks.append(Task("oracle", "log series", log_series_records, {"precision_bits": config.quad_precision_bits}))
    return tasks


_BUILDERS = {
    "orthopoly": orthopoly_tasks,
    "mellin": mellin_tasks,
    "critline": critline_tasks,
    "oracle": oracle_tasks,
}


def build_tasks(suite: str, config: RunConfig) -> List[Task]:
    if suite not in SUITES:
        raise ValueError(f"Unknown suite '{suite}', expected one of {', '.join(SUITES)}")
    names = EXACT_SUITES if suite == "all" else (suite,)
    tasks = []
    for name in names:
        tasks.extend(_BUILDERS[name](config))
    return tasks


def run_suite(suite: str, config: RunConfig, show_progress: bool = False) -> VerificationReport:
    tasks = build_tasks(suite, config)
    logger.info(f"Running suite '{suite}': {len(tasks)} tasks, parallelism {config.parallelism}")
    start = time.perf_counter()
    results = _parallel_map(run_task, tasks, config.parallelism, f"verify {suite}", show_progress)
    records = [record for batch in results for record in batch]
    report = VerificationReport(
        suite=suite,
        config=config.echo(),
        records=records,
        wall_clock_seconds=round(time.perf_counter() - start, 3),
    ).summarize()
    logger.info(
        f"Suite '{suite}' finished: {report.summary.passed} passed, {report.summary.failed} failed, "
        f"{report.summary.skipped} skipped, {report.summary.informational} informational"
    )
    return report


def zeros_record(n: int, mu, digits: int) -> ZerosRecord:
    cert = certify(n, mu)
    zeros_t, zeros_s = critical_zeros(cert, digits)
    return ZerosRecord(
        index=n,
        mu=render_rational(cert.mu),
        degree=cert.degree,
        certified=cert.certified,
        squarefree=cert.squarefree,
        real_root_count=cert.real_root_count,
        symmetric=cert.symmetric,
        digits=digits,
        zeros_t=zeros_t,
        zeros_s=zeros_s,
    )


@dataclass(frozen=True)
class TableJob:
    n: int
    mu: Fraction
    digits: int


def _table_job(job: TableJob) -> Dict[str, Any]:
    cert = certify(job.n, job.mu)
    return {
        "n": job.n,
        "mu": render_rational(cert.mu),
        "certified": cert.certified,
        "t": decimal_roots(cert, job.digits),
    }


def table_jobs(n_max: int, mu_list: Iterable, digits: int) -> List[TableJob]:
    """Jobs ordered by (n, mu)."""
    mus = sorted(set(Fraction(mu) for mu in mu_list))
    return [TableJob(n, mu, digits) for n in range(n_max + 1) for mu in mus]


def zeros_table(config: RunConfig, show_progress: bool = False):
    """
    One row per certified root (t may be negative) for every n <= n_max and mu.

    Returns the DataFrame and the list of (n, mu) instances that failed to certify.
    """
    jobs = table_jobs(config.n_max, config.mu_list, config.root_digits)
    results = _parallel_map(_table_job, jobs, config.parallelism, "table", show_progress)
    rows, failed = [], []
    for result in results:
        if not result["certified"]:
            failed.append((result["n"], result["mu"]))
        for t in result["t"]:
            rows.append({"n": result["n"], "mu": result["mu"], "t": t, "digits": config.root_digits})
    logger.info(f"Zeros table: {len(rows)} rows from {len(jobs)} instances")
    return pd.DataFrame(rows, columns=TABLE_COLUMNS), failed
