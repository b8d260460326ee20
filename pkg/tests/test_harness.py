import json
from fractions import Fraction

import pytest

from consetlab.graphcore import (
    complete_graph,
    cycle_graph,
    is_path_graph,
    parse_graph6,
    path_graph,
    star_graph,
    to_graph6,
)
from consetlab.consets import average_order, connected_set_stats, density
from consetlab.harness import (
    InputError,
    ScanSettings,
    dump_json,
    exhaustive_sweep,
    fold_ledger,
    generator_source,
    load_json_records,
    read_graph6_stream,
    render_csv,
    render_json,
    scan_graph,
    scan_stream,
)
from consetlab.models import CSV_COLUMNS, STATUS_BUDGET, ExtremalLedger, format_ratio, render_decimal
from consetlab.verifier import CheckId

SETTINGS = ScanSettings(budget=2**20)


# ============================================================
# SOURCES
# ============================================================
def test_stream_skips_headers_and_blank_lines():
    graphs = read_graph6_stream([">>graph6<<\n", "Bw\n", "\n", "@\n"])
    assert [g.n for g in graphs] == [3, 1]


def test_stream_error_names_the_line():
    with pytest.raises(InputError) as info:
        read_graph6_stream(["Bw\n", "@\n", "B!\n"])
    assert "line 3" in info.value.message
    assert info.value.exit_code == 2


def test_stream_rejects_bytes_outside_graph6():
    with pytest.raises(InputError) as info:
        read_graph6_stream([b"Bw\n", b"\xff\xfe\n"])
    assert "line 2" in info.value.message
    assert read_graph6_stream([b">>graph6<<\n", b"Bw\n"]) == [complete_graph(3)]


def test_generator_source():
    assert generator_source("path 3") == [path_graph(3)]
    assert len(generator_source("random 7 30 1", count=5)) == 5
    for bad in ("cycle 2", "path x", "", "path 3 4", "random 5 30"):
        with pytest.raises(InputError):
            generator_source(bad)
    with pytest.raises(InputError):
        generator_source("path 3", count=2)


def test_settings_from_config_prefers_flags():
    config = {"BUDGET": 10, "JOBS": 1, "CHUNKSIZE": 4, "DECIMALS": 6}
    settings = ScanSettings.from_config(config, budget=None, jobs=3, decimals=None, anchor_parallel=None)
    assert (settings.budget, settings.jobs, settings.decimals) == (10, 3, 6)
    with pytest.raises(InputError):
        ScanSettings.from_config(config, jobs=0)


# ============================================================
# RECORDS
# ============================================================
def test_scan_graph_path_three():
    record = scan_graph(1, path_graph(3), SETTINGS)
    assert (record.N, record.S, record.Q) == (6, 10, 20)
    assert record.A == Fraction(5, 3)
    assert record.kappa == 1 and record.passed
    row = dict(zip(CSV_COLUMNS, record.csv_row()))
    assert row["A_exact"] == "5/3" and row["A_dec"] == "1.666667"
    assert row["thm2"] == "PASS" and row["thm2_eq"] == "EQ"
    assert row["cor1"] == "EQ" and row["conj2"] == "NA"
    assert row["status"] == "ok"


def test_scan_graph_without_verdicts():
    record = scan_graph(1, complete_graph(3), SETTINGS, verify=False)
    assert record.D == Fraction(4, 7) and record.verdicts == ()
    row = dict(zip(CSV_COLUMNS, record.csv_row()))
    assert row["D_exact"] == "4/7" and row["thm3"] == ""


def test_scan_graph_skips_on_budget():
    record = scan_graph(4, complete_graph(10), ScanSettings(budget=50))
    assert record.status == STATUS_BUDGET
    assert record.N is None and record.passed
    row = dict(zip(CSV_COLUMNS, record.csv_row()))
    assert row["status"] == STATUS_BUDGET and row["A_exact"] == ""


def test_json_round_trip():
    graphs = [path_graph(5), cycle_graph(4), star_graph(3), parse_graph6("C?")]
    records = list(scan_stream(graphs, SETTINGS)) + [scan_graph(5, complete_graph(10), ScanSettings(budget=50))]
    lines = list(render_json(records))
    again = load_json_records(lines)
    assert again == records
    assert list(render_json(again)) == lines


def test_csv_and_json_carry_the_same_records():
    records = list(scan_stream([path_graph(4), complete_graph(4)], SETTINGS))
    csv_lines = list(render_csv(records))
    assert csv_lines[0].rstrip("\n").split(",") == CSV_COLUMNS
    for line, record in zip(csv_lines[1:], load_json_records(render_json(records))):
        assert line.rstrip("\n").split(",") == record.csv_row()


def test_scan_stream_keeps_input_order_across_workers():
    graphs = generator_source("random 7 35 11", count=40)
    serial = list(scan_stream(graphs, SETTINGS))
    pooled = list(scan_stream(graphs, ScanSettings(budget=2**20, jobs=4, chunksize=3)))
    assert serial == pooled
    assert [r.index for r in serial] == list(range(1, 41))


def test_anchor_parallel_scan_matches():
    graphs = [cycle_graph(8), complete_graph(6)]
    assert list(scan_stream(graphs, ScanSettings(jobs=2, anchor_parallel=True))) == list(scan_stream(graphs, SETTINGS))


def test_render_decimal():
    assert render_decimal(Fraction(5, 3)) == "1.666667"
    assert render_decimal(Fraction(1)) == "1.000000"
    assert render_decimal(Fraction(-1, 8), 2) == "-0.13"
    assert render_decimal(Fraction(7, 2), 0) == "4"
    assert format_ratio(Fraction(2)) == "2/1"


# ============================================================
# LEDGER
# ============================================================
def test_ledger_keeps_the_path():
    records = list(scan_stream([path_graph(4), cycle_graph(4), complete_graph(4)], SETTINGS, verify=False))
    ledger = fold_ledger(records).to_dict()
    assert ledger["min_average"]["4"]["witness"] == to_graph6(path_graph(4))
    assert ledger["min_average"]["4"]["value"] == "2/1"
    assert set(ledger["min_density"]) == {"4:1", "4:2", "4:3"}


def test_ledger_empty_and_first_seen_ties():
    assert fold_ledger([]).to_dict() == {"min_average": {}, "min_density": {}}
    # two labelings of P_3 tie; the first one stays
    first, second = parse_graph6("Bg"), parse_graph6("BW")
    records = list(scan_stream([first, second], SETTINGS, verify=False))
    assert records[0].A == records[1].A
    assert fold_ledger(records).min_average[3].witness == "Bg"


def test_ledger_merge_is_order_sensitive_only_on_ties():
    records = list(scan_stream(generator_source("random 6 40 2", count=30), SETTINGS, verify=False))
    whole = fold_ledger(records)
    left, right = fold_ledger(records[:12]), fold_ledger(records[12:])
    assert left.merge(right).to_dict() == whole.to_dict()
    assert left.merge(ExtremalLedger()).to_dict() == left.to_dict()


def test_ledger_survives_its_json_form():
    records = list(scan_stream(generator_source("random 6 40 3", count=20), SETTINGS, verify=False))
    ledger = fold_ledger(records)
    again = ExtremalLedger.from_dict(json.loads(dump_json(ledger.to_dict())))
    assert again.to_dict() == ledger.to_dict()
    assert again.merge(ledger).to_dict() == ledger.to_dict()


def test_ledger_witnesses_reproduce_their_values():
    records = list(scan_stream(generator_source("random 7 30 4", count=25), SETTINGS, verify=False))
    ledger = fold_ledger(records)
    for entry in ledger.min_average.values():
        assert average_order(connected_set_stats(parse_graph6(entry.witness))) == entry.value
    for entry in ledger.min_density.values():
        assert density(connected_set_stats(parse_graph6(entry.witness))) == entry.value


def test_ledger_ignores_skipped_and_disconnected_records():
    skipped = scan_graph(1, complete_graph(10), ScanSettings(budget=50))
    apart = scan_graph(2, parse_graph6("C?"), SETTINGS)
    assert fold_ledger([skipped, apart]).to_dict() == {"min_average": {}, "min_density": {}}


# ============================================================
# EXHAUSTIVE SWEEPS
# ============================================================
@pytest.mark.parametrize("n, connected", [(1, 1), (2, 1), (3, 4), (4, 38), (5, 728)])
def test_connected_labeled_counts(n, connected):
    report = exhaustive_sweep(n, True, SETTINGS)
    assert report.scanned == report.connected == connected
    assert report.violations == 0 and report.equality_mismatches == 0
    assert report.thm2_equalities == report.paths
    assert report.conj2_candidates == 0


def test_sweep_minimum_is_attained_by_paths_only():
    report = exhaustive_sweep(5, True, SETTINGS)
    assert report.ledger.min_average[5].value == Fraction(7, 3)
    assert report.minimizers == report.paths == 60
    assert report.minimizers_all_paths
    assert len(report.minimizer_witnesses) == 60
    assert all(is_path_graph(parse_graph6(code)) for code in report.minimizer_witnesses)


def test_single_vertex_sweep():
    report = exhaustive_sweep(1, False, SETTINGS)
    assert report.graphs == 1 and report.ledger.min_average[1].value == 1


def test_sweep_with_disconnected_graphs():
    report = exhaustive_sweep(3, False, SETTINGS)
    assert (report.graphs, report.scanned, report.connected) == (8, 8, 4)
    assert report.passed


def test_sweep_rejects_large_orders():
    with pytest.raises(InputError):
        exhaustive_sweep(7, True, SETTINGS)


@pytest.mark.slow
def test_full_six_vertex_sweep():
    report = exhaustive_sweep(6, True, ScanSettings(budget=2**20, jobs=4, chunksize=256))
    assert report.connected == 26704
    assert report.passed
    assert report.thm2_equalities == report.paths == 360
    assert report.minimizers_all_paths
    assert report.ledger.min_average[6].value == Fraction(8, 3)


def test_deletion_identity_across_the_five_vertex_sweep():
    report = exhaustive_sweep(5, True, SETTINGS)
    assert report.violations == 0
    records = [scan_graph(1, path_graph(5), SETTINGS)]
    assert records[0].verdict(CheckId.DELETION).cell == "EQ"
