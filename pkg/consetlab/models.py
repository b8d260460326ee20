from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .verifier import COUNTEREXAMPLE, EQUALITY_MISMATCH, CheckId, Verdict, overall_passed


def format_ratio(value: Fraction) -> str:
    """Exact "p/q" text; integers keep their "/1"."""
    return f"{value.numerator}/{value.denominator}"


def parse_ratio(text: str) -> Fraction:
    return Fraction(text)


def render_decimal(value: Fraction, places: int = 6) -> str:
    """Decimal rendering rounded half away from zero."""
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**places
    units = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    whole, frac = divmod(units, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


# ============================================================
# VERDICT SUMMARY
# ============================================================
@dataclass(frozen=True)
class VerdictSummary:
    check: str
    cell: str
    equality: bool
    applicable: bool
    lhs: str
    rhs: str
    detail: str
    flag: Optional[str] = None

    @classmethod
    def from_verdict(cls, verdict: Verdict) -> "VerdictSummary":
        return cls(
            check=verdict.check_id.value,
            cell=verdict.cell,
            equality=verdict.equality,
            applicable=verdict.applicable,
            lhs=format_ratio(verdict.lhs),
            rhs=format_ratio(verdict.rhs),
            detail=verdict.detail,
            flag=verdict.flag,
        )

    def to_verdict(self) -> Verdict:
        return Verdict(
            check_id=CheckId(self.check),
            lhs=parse_ratio(self.lhs),
            rhs=parse_ratio(self.rhs),
            passed=self.cell != "FAIL",
            equality=self.equality,
            applicable=self.applicable,
            detail=self.detail,
            flag=self.flag,
        )

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "cell": self.cell,
            "equality": self.equality,
            "applicable": self.applicable,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "detail": self.detail,
            "flag": self.flag,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VerdictSummary":
        return cls(**data)


# ============================================================
# SCAN RECORD
# ============================================================
STATUS_OK = "ok"
STATUS_BUDGET = "skipped: budget"

CSV_COLUMNS = [
    "index", "graph6", "n", "m", "kappa", "N", "S", "Q",
    "A_exact", "A_dec", "D_exact", "D_dec",
    "thm2", "thm2_eq", "thm3", "thm4", "cor1", "identities", "conj2", "tree_band",
    "deletion_identity", "induction_step", "status",
]

_CELL_COLUMNS = {
    "thm3": CheckId.THM3,
    "thm4": CheckId.THM4,
    "cor1": CheckId.COR1,
    "identities": CheckId.IDENTITIES,
    "conj2": CheckId.CONJ2,
    "tree_band": CheckId.TREE_BAND,
    "deletion_identity": CheckId.DELETION,
    "induction_step": CheckId.INDUCTION,
}


@dataclass(frozen=True)
class ScanRecord:
    index: int
    graph6: str
    n: int
    m: int
    kappa: int
    connected: bool
    N: Optional[int] = None
    S: Optional[int] = None
    Q: Optional[int] = None
    verdicts: tuple[VerdictSummary, ...] = ()
    status: str = STATUS_OK

    def __repr__(self):
        return f"<ScanRecord {self.index} {self.graph6} {self.status}>"

    @property
    def A(self) -> Optional[Fraction]:
        return Fraction(self.S, self.N) if self.N else None

    @property
    def D(self) -> Optional[Fraction]:
        return Fraction(self.S, self.n * self.N) if self.N else None

    @property
    def passed(self) -> bool:
        return overall_passed([v.to_verdict() for v in self.verdicts])

    def verdict(self, check: CheckId) -> Optional[VerdictSummary]:
        for summary in self.verdicts:
            if summary.check == check.value:
                return summary
        return None

    @property
    def candidates(self) -> list[VerdictSummary]:
        return [v for v in self.verdicts if v.flag == COUNTEREXAMPLE]

    def _cell(self, check: CheckId) -> str:
        summary = self.verdict(check)
        return summary.cell if summary else ""

    def _thm2_cells(self) -> tuple[str, str]:
        summary = self.verdict(CheckId.THM2)
        if summary is None:
            return "", ""
        if not summary.applicable:
            return "NA", "NA"
        bound = "FAIL" if summary.cell == "FAIL" else "PASS"
        if summary.flag == EQUALITY_MISMATCH:
            return bound, "FAIL"
        return bound, "EQ" if summary.equality else "PASS"

    def csv_row(self, decimals: int = 6) -> list[str]:
        def exact(value):
            return format_ratio(value) if value is not None else ""

        def dec(value):
            return render_decimal(value, decimals) if value is not None else ""

        thm2, thm2_eq = self._thm2_cells()
        row = {
            "index": str(self.index),
            "graph6": self.graph6,
            "n": str(self.n),
            "m": str(self.m),
            "kappa": str(self.kappa),
            "N": "" if self.N is None else str(self.N),
            "S": "" if self.S is None else str(self.S),
            "Q": "" if self.Q is None else str(self.Q),
            "A_exact": exact(self.A),
            "A_dec": dec(self.A),
            "D_exact": exact(self.D),
            "D_dec": dec(self.D),
            "thm2": thm2,
            "thm2_eq": thm2_eq,
            "status": self.status,
        }
        for column, check in _CELL_COLUMNS.items():
            row[column] = self._cell(check)
        return [row[column] for column in CSV_COLUMNS]

    def to_dict(self, decimals: int = 6) -> dict:
        data = {
            "index": self.index,
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "kappa": self.kappa,
            "connected": self.connected,
            "N": None if self.N is None else str(self.N),
            "S": None if self.S is None else str(self.S),
            "Q": None if self.Q is None else str(self.Q),
            "A": None,
            "D": None,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "status": self.status,
        }
        if self.N:
            data["A"] = {"exact": format_ratio(self.A), "decimal": render_decimal(self.A, decimals)}
            data["D"] = {"exact": format_ratio(self.D), "decimal": render_decimal(self.D, decimals)}
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ScanRecord":
        def big(value):
            return None if value is None else int(value)

        return cls(
            index=data["index"],
            graph6=data["graph6"],
            n=data["n"],
            m=data["m"],
            kappa=data["kappa"],
            connected=data["connected"],
            N=big(data["N"]),
            S=big(data["S"]),
            Q=big(data["Q"]),
            verdicts=tuple(VerdictSummary.from_dict(v) for v in data["verdicts"]),
            status=data["status"],
        )


# ============================================================
# EXTREMAL LEDGER
# ============================================================
@dataclass
class Extremum:
    value: Fraction
    witness: str

    def to_dict(self, decimals: int = 6) -> dict:
        return {
            "value": format_ratio(self.value),
            "decimal": render_decimal(self.value, decimals),
            "witness": self.witness,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Extremum":
        return cls(parse_ratio(data["value"]), data["witness"])


@dataclass
class ExtremalLedger:
    """Smallest A per order and smallest D per (order, kappa) seen so far."""

    min_average: dict[int, Extremum] = field(default_factory=dict)
    min_density: dict[tuple[int, int], Extremum] = field(default_factory=dict)

    @staticmethod
    def _offer(table: dict, key, value: Fraction, witness: str) -> None:
        # strict improvement only: the first witness of a tied minimum stays
        current = table.get(key)
        if current is None or value < current.value:
            table[key] = Extremum(value, witness)

    def fold(self, record: ScanRecord) -> "ExtremalLedger":
        if record.status != STATUS_OK or not record.connected or not record.N:
            return self
        self._offer(self.min_average, record.n, record.A, record.graph6)
        self._offer(self.min_density, (record.n, record.kappa), record.D, record.graph6)
        return self

    def merge(self, other: "ExtremalLedger") -> "ExtremalLedger":
        merged = ExtremalLedger(dict(self.min_average), dict(self.min_density))
        for key, entry in sorted(other.min_average.items()):
            merged._offer(merged.min_average, key, entry.value, entry.witness)
        for key, entry in sorted(other.min_density.items()):
            merged._offer(merged.min_density, key, entry.value, entry.witness)
        return merged

    def to_dict(self, decimals: int = 6) -> dict:
        return {
            "min_average": {
                str(n): entry.to_dict(decimals) for n, entry in sorted(self.min_average.items())
            },
            "min_density": {
                f"{n}:{k}": entry.to_dict(decimals) for (n, k), entry in sorted(self.min_density.items())
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExtremalLedger":
        min_density = {}
        for key, entry in data["min_density"].items():
            n, k = key.split(":")
            min_density[(int(n), int(k))] = Extremum.from_dict(entry)
        return cls(
            {int(n): Extremum.from_dict(entry) for n, entry in data["min_average"].items()},
            min_density,
        )


# ============================================================
# SWEEP REPORT
# ============================================================
@dataclass
class SweepReport:
    order: int
    connected_only: bool
    graphs: int = 0
    connected: int = 0
    scanned: int = 0
    violations: int = 0
    thm2_equalities: int = 0
    paths: int = 0
    equality_mismatches: int = 0
    conj2_candidates: int = 0
    skipped: int = 0
    minimizers: int = 0
    minimizers_all_paths: bool = True
    minimizer_witnesses: list[str] = field(default_factory=list)
    ledger: ExtremalLedger = field(default_factory=ExtremalLedger)

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.equality_mismatches == 0

    def to_dict(self, decimals: int = 6) -> dict:
        ledger = self.ledger.to_dict(decimals)
        return {
            "order": self.order,
            "connected_only": self.connected_only,
            "graphs": self.graphs,
            "connected": self.connected,
            "scanned": self.scanned,
            "skipped": self.skipped,
            "violations": self.violations,
            "thm2_equalities": self.thm2_equalities,
            "paths": self.paths,
            "equality_mismatches": self.equality_mismatches,
            "conj2_candidates": self.conj2_candidates,
            "min_average": ledger["min_average"].get(str(self.order)),
            "minimizers": self.minimizers,
            "minimizers_all_paths": self.minimizers_all_paths,
            "minimizer_witnesses": list(self.minimizer_witnesses),
            "ledger": ledger,
        }
