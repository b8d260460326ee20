import functools
import logging

import click
from flask import Blueprint, current_app

from .graphcore import to_graph6
from .harness import (
    InputError,
    ScanSettings,
    dump_json,
    exhaustive_sweep,
    fold_ledger,
    generate,
    generator_source,
    load_ledger,
    read_graph6_stream,
    render_records,
    scan_stream,
)
from .models import STATUS_OK, ExtremalLedger

scan_bp = Blueprint("scan", __name__, cli_group=None)


# ============================================================
# SHARED OPTIONS
# ============================================================
def source_options(f):
    @click.option("--input", "source", type=click.File("rb"), default="-", show_default=True,
                  help="graph6 file, one graph per line ('-' for stdin).")
    @click.option("--gen", "gen_spec", default=None, metavar="'KIND P1 P2 ...'",
                  help="Use a generated graph instead of --input, e.g. 'cycle 6'.")
    @click.option("--count", type=int, default=1, show_default=True,
                  help="Graphs drawn by --gen 'random N PCT SEED'.")
    @functools.wraps(f)
    def wrapper(source, gen_spec, count, **kwargs):
        if gen_spec is not None:
            graphs = generator_source(gen_spec, count)
        else:
            graphs = read_graph6_stream(source)
        current_app.logger.info("read %d graph(s)", len(graphs))
        return f(graphs=graphs, **kwargs)

    return wrapper


def format_option(f):
    @click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None,
                  help="Report format (default from config).")
    @functools.wraps(f)
    def wrapper(fmt, **kwargs):
        return f(fmt=fmt or current_app.config["OUTPUT_FORMAT"], **kwargs)

    return wrapper


def run_options(f):
    @click.option("--budget", type=int, default=None, help="Maximum connected sets per graph.")
    @click.option("--jobs", type=int, default=None, help="Worker processes.")
    @click.option("--anchor-parallel", is_flag=True, default=False,
                  help="Spend --jobs inside each graph (split by anchor vertex) instead of across graphs.")
    @click.option("--decimals", type=click.IntRange(0, 30), default=None, help="Places in decimal renderings.")
    @click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output.")
    @functools.wraps(f)
    def wrapper(budget, jobs, anchor_parallel, decimals, verbose, **kwargs):
        if verbose:
            current_app.logger.setLevel(logging.DEBUG if verbose > 1 else logging.INFO)
        settings = ScanSettings.from_config(
            current_app.config,
            budget=budget,
            jobs=jobs,
            decimals=decimals,
            anchor_parallel=anchor_parallel or None,
        )
        return f(settings=settings, **kwargs)

    return wrapper


def _emit(chunks):
    for chunk in chunks:
        click.echo(chunk, nl=False)


# ============================================================
# COMMANDS
# ============================================================
@scan_bp.cli.command("stats")
@source_options
@format_option
@run_options
def stats(graphs, settings, fmt):
    """N, S, Q, A and D for every input graph."""
    records = scan_stream(graphs, settings, verify=False)
    _emit(render_records(records, fmt, settings.decimals))


@scan_bp.cli.command("verify")
@source_options
@format_option
@run_options
@click.pass_context
def verify(ctx, graphs, settings, fmt):
    """Run every bound and identity check on every input graph."""
    failed = []

    def watch(records):
        for record in records:
            if not record.passed:
                failed.append(record.index)
            yield record

    _emit(render_records(watch(scan_stream(graphs, settings)), fmt, settings.decimals))
    if failed:
        current_app.logger.error("theorem checks failed on graph(s) %s", ", ".join(map(str, failed)))
        ctx.exit(1)


@scan_bp.cli.command("scan")
@source_options
@format_option
@run_options
@click.option("--ledger", "ledger_path", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Extremal ledger JSON file; an existing ledger is merged with this run's minima.")
@click.pass_context
def scan(ctx, graphs, settings, fmt, ledger_path):
    """verify, plus extremal minima and a counterexample-candidate summary."""
    previous = load_ledger(ledger_path) if ledger_path else None
    ledger = ExtremalLedger()
    failed, candidates, skipped = [], [], 0

    def watch(records):
        nonlocal skipped
        for record in records:
            ledger.fold(record)
            if record.status != STATUS_OK:
                skipped += 1
            if not record.passed:
                failed.append(record.index)
            if record.candidates:
                candidates.append(record.graph6)
            yield record

    _emit(render_records(watch(scan_stream(graphs, settings)), fmt, settings.decimals))

    if ledger_path:
        if previous is not None:
            ledger = previous.merge(ledger)
        with open(ledger_path, "w") as fh:
            fh.write(dump_json(ledger.to_dict(settings.decimals)) + "\n")
    current_app.logger.info("scanned %d graph(s), %d skipped for budget", len(graphs), skipped)
    if candidates:
        current_app.logger.warning("%d counterexample candidate(s): %s", len(candidates), " ".join(candidates))
    if failed:
        current_app.logger.error("theorem checks failed on graph(s) %s", ", ".join(map(str, failed)))
        ctx.exit(1)


@scan_bp.cli.command("exhaustive")
@click.argument("n", type=int)
@click.option("--connected-only", is_flag=True, help="Skip disconnected labeled graphs.")
@run_options
@click.pass_context
def exhaustive(ctx, n, connected_only, settings):
    """Verify all labeled graphs on N vertices (N <= 6)."""
    report = exhaustive_sweep(n, connected_only, settings, current_app.config["EXHAUSTIVE_MAX_ORDER"])
    click.echo(dump_json(report.to_dict(settings.decimals)))
    if not report.passed:
        ctx.exit(1)


@scan_bp.cli.command("extremal")
@source_options
@run_options
def extremal(graphs, settings):
    """Minimum A per order and minimum D per (order, kappa), with witnesses."""
    ledger = fold_ledger(scan_stream(graphs, settings, verify=False))
    click.echo(dump_json(ledger.to_dict(settings.decimals)))


@scan_bp.cli.command("gen")
@click.argument("kind")
@click.argument("params", nargs=-1, type=int)
@click.option("--count", type=int, default=None, help="Number of graphs (random only).")
def gen(kind, params, count):
    """Print graph6 lines for a generator: path, cycle, complete, ..., random N PCT SEED."""
    if count is None:
        count = current_app.config["RANDOM_COUNT"]
    if count < 0:
        raise InputError(f"--count must be >= 0, got {count}")
    for g in generate(kind, params, count):
        click.echo(to_graph6(g))
