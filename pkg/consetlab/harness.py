"""Graph sources, scan orchestration and report rendering."""
from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

import click

from .consets import BudgetExceeded, connected_set_stats
from .graphcore import (
    Graph,
    Graph6Error,
    GraphError,
    is_connected,
    is_path_graph,
    make_generator,
    parse_graph6,
    random_graphs,
    to_graph6,
    vertex_connectivity,
)
from .models import (
    CSV_COLUMNS,
    STATUS_BUDGET,
    ExtremalLedger,
    ScanRecord,
    SweepReport,
    VerdictSummary,
)
from .verifier import CheckId, verify_all

logger = logging.getLogger(__name__)


class InputError(click.ClickException):
    exit_code = 2


@dataclass(frozen=True)
class ScanSettings:
    budget: Optional[int] = 2**28
    jobs: int = 1
    chunksize: int = 64
    decimals: int = 6
    anchor_parallel: bool = False

    @classmethod
    def from_config(cls, config, **flags) -> "ScanSettings":
        """Config values, overridden by any flag that was actually given."""
        values = {
            "budget": config["BUDGET"],
            "jobs": config["JOBS"],
            "chunksize": config["CHUNKSIZE"],
            "decimals": config["DECIMALS"],
            "anchor_parallel": False,
        }
        values.update({key: value for key, value in flags.items() if value is not None})
        if values["jobs"] < 1:
            raise InputError(f"--jobs must be >= 1, got {values['jobs']}")
        if values["budget"] is not None and values["budget"] < 1:
            raise InputError(f"--budget must be >= 1, got {values['budget']}")
        return cls(**values)


# ============================================================
# SOURCES
# ============================================================
def read_graph6_stream(lines: Iterable[str | bytes]) -> list[Graph]:
    """Parse a whole graph6 stream up front; header (>>) and blank lines are skipped."""
    graphs = []
    for lineno, line in enumerate(lines, start=1):
        if isinstance(line, bytes):
            try:
                line = line.decode("ascii")
            except UnicodeDecodeError as e:
                raise InputError(f"line {lineno}: byte 0x{line[e.start]:02x} is not graph6 text") from e
        text = line.strip()
        if not text or text.startswith(">>"):
            continue
        try:
            graphs.append(parse_graph6(text))
        except Graph6Error as e:
            raise InputError(f"line {lineno}: {e}") from e
    return graphs


def parse_generator_spec(spec: str) -> tuple[str, list[int]]:
    parts = spec.split()
    if not parts:
        raise InputError("empty generator spec")
    try:
        params = [int(p) for p in parts[1:]]
    except ValueError:
        raise InputError(f"generator parameters must be integers: {spec!r}") from None
    return parts[0], params


def generate(kind: str, params: Sequence[int], count: int = 1) -> list[Graph]:
    """Graphs for a generator spec; ``random N PCT SEED`` honours ``count``."""
    try:
        if kind == "random":
            if len(params) != 3:
                raise GraphError(f"random takes 3 parameters (n, percent, seed), got {len(params)}")
            n, percent, seed = params
            return list(random_graphs(n, percent, seed, count))
        if count != 1:
            raise GraphError(f"{kind} is deterministic; --count must be 1")
        return [make_generator(kind, params)]
    except GraphError as e:
        raise InputError(str(e)) from e


def generator_source(spec: str, count: int = 1) -> list[Graph]:
    kind, params = parse_generator_spec(spec)
    return generate(kind, params, count)


# ============================================================
# SCANNING
# ============================================================
def scan_graph(index: int, g: Graph, settings: ScanSettings, verify: bool = True) -> ScanRecord:
    code = to_graph6(g)
    connected = is_connected(g)
    kappa = vertex_connectivity(g)
    base = dict(index=index, graph6=code, n=g.n, m=g.m, kappa=kappa, connected=connected)
    stats_jobs = settings.jobs if settings.anchor_parallel else 1
    try:
        st = connected_set_stats(g, settings.budget, stats_jobs)
        verdicts = verify_all(g, st, kappa, settings.budget) if verify else []
    except BudgetExceeded:
        logger.warning("graph %d (%s) skipped: more than %d connected sets", index, code, settings.budget)
        return ScanRecord(**base, status=STATUS_BUDGET)
    return ScanRecord(
        **base,
        N=st.N,
        S=st.S,
        Q=st.Q,
        verdicts=tuple(VerdictSummary.from_verdict(v) for v in verdicts),
    )


def _scan_task(settings: ScanSettings, verify: bool, item: tuple[int, Graph]) -> ScanRecord:
    index, g = item
    return scan_graph(index, g, settings, verify)


def ordered_map(task, items: Sequence, jobs: int, chunksize: int) -> Iterator:
    """``map`` over a process pool when jobs > 1; results keep input order."""
    if jobs > 1 and len(items) > 1:
        logger.debug("running %d tasks on %d workers", len(items), jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(task, items, chunksize=chunksize)
    else:
        yield from map(task, items)


def scan_stream(graphs: Sequence[Graph], settings: ScanSettings, verify: bool = True) -> Iterator[ScanRecord]:
    """Records in input order (1-based index) for any worker count."""
    items = list(enumerate(graphs, start=1))
    task = partial(_scan_task, settings, verify)
    # anchor-parallel mode spends the workers inside each graph instead
    jobs = 1 if settings.anchor_parallel else settings.jobs
    yield from ordered_map(task, items, jobs, settings.chunksize)


def fold_ledger(records: Iterable[ScanRecord], ledger: Optional[ExtremalLedger] = None) -> ExtremalLedger:
    ledger = ExtremalLedger() if ledger is None else ledger
    for record in records:
        ledger.fold(record)
    return ledger


# ============================================================
# RENDERING
# ============================================================
def render_csv(records: Iterable[ScanRecord], decimals: int = 6) -> Iterator[str]:
    """Header line, then one line per record."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    yield buffer.getvalue()
    for record in records:
        buffer.seek(0)
        buffer.truncate()
        writer.writerow(record.csv_row(decimals))
        yield buffer.getvalue()


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def render_json(records: Iterable[ScanRecord], decimals: int = 6) -> Iterator[str]:
    """JSON lines: one object per record."""
    for record in records:
        yield dump_json(record.to_dict(decimals)) + "\n"


def render_records(records: Iterable[ScanRecord], fmt: str, decimals: int = 6) -> Iterator[str]:
    if fmt == "csv":
        return render_csv(records, decimals)
    if fmt == "json":
        return render_json(records, decimals)
    raise InputError(f"unknown format {fmt!r}")


def load_json_records(lines: Iterable[str]) -> list[ScanRecord]:
    return [ScanRecord.from_dict(json.loads(line)) for line in lines if line.strip()]


def load_ledger(path) -> Optional[ExtremalLedger]:
    """The ledger saved at ``path``, or None when there is none yet."""
    try:
        with open(path) as fh:
            text = fh.read()
    except FileNotFoundError:
        return None
    if not text.strip():
        return None
    try:
        return ExtremalLedger.from_dict(json.loads(text))
    except (ValueError, KeyError, TypeError, AttributeError) as e:
        raise InputError(f"{path}: not an extremal ledger ({e})") from e


# ============================================================
# EXHAUSTIVE SWEEP
# ============================================================
def _sweep_task(n: int, connected_only: bool, settings: ScanSettings, mask: int) -> Optional[ScanRecord]:
    g = Graph.from_edge_mask(n, mask)
    if connected_only and not is_connected(g):
        return None
    return scan_graph(mask, g, settings, verify=True)


def exhaustive_sweep(n: int, connected_only: bool, settings: ScanSettings, max_order: int = 6) -> SweepReport:
    """Verify every labeled graph on n vertices (edge masks 0 .. 2^C(n,2) - 1).

    Record indices are the edge masks.
    """
    if not 1 <= n <= max_order:
        raise InputError(f"exhaustive sweeps need 1 <= n <= {max_order}, got {n}")
    total = 1 << comb(n, 2)
    report = SweepReport(order=n, connected_only=connected_only, graphs=total)
    task = partial(_sweep_task, n, connected_only, settings)

    minimizers: list[ScanRecord] = []
    for record in ordered_map(task, range(total), settings.jobs, settings.chunksize):
        if record is None:
            continue
        _tally(report, record)
        if record.status != STATUS_BUDGET and record.connected:
            best = minimizers[0].A if minimizers else None
            if best is None or record.A < best:
                minimizers = [record]
            elif record.A == best:
                minimizers.append(record)

    report.minimizers = len(minimizers)
    report.minimizer_witnesses = [r.graph6 for r in minimizers]
    report.minimizers_all_paths = all(is_path_graph(parse_graph6(r.graph6)) for r in minimizers)
    logger.info(
        "n=%d: %d graphs, %d connected, %d violations, %d thm2 equalities on %d paths",
        n, report.graphs, report.connected, report.violations, report.thm2_equalities, report.paths,
    )
    return report


def _tally(report: SweepReport, record: ScanRecord) -> None:
    report.scanned += 1
    if record.connected:
        report.connected += 1
    if record.status == STATUS_BUDGET:
        report.skipped += 1
        return
    if not record.passed:
        report.violations += 1
        logger.error("violation on %s", record.graph6)
    if record.connected and is_path_graph(parse_graph6(record.graph6)):
        report.paths += 1
    thm2 = record.verdict(CheckId.THM2)
    if thm2 is not None and thm2.applicable:
        if thm2.equality:
            report.thm2_equalities += 1
        if thm2.flag:
            report.equality_mismatches += 1
    report.conj2_candidates += len(record.candidates)
    report.ledger.fold(record)
