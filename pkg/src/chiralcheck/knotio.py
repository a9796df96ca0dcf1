"""Reading Seifert matrices and knot tables, writing reports.

Table CSV columns::

    name,seifert_matrix,alexander_polynomial,amphichiral
    6_1,"[[1,0],[1,-2]]","2,-5,2",false

``alexander_polynomial`` (ascending coefficients) and ``amphichiral`` may
be blank or absent.

Report JSON schema (every integer is written as a decimal string so that
no consumer has to care about integer width)::

    {
      "label": str,
      "determinant": str,
      "group": {"invariant_factors": [str, ...]},
      "primes": [
        {"p": str, "mod4": str, "valuation": str, "exponents": [str, ...],
         "theorem1": bool, "goeritz": bool, "goeritz_strong": bool,
         "oracle": bool | null}
      ],
      "verdict": "OBSTRUCTED" | "INCONCLUSIVE",
      "obstructing_primes": [str, ...]
    }

``oracle`` is the brute-force answer to "is the form on the cyclic
p-primary part isometric to its negative", ``null`` when not computed.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .errors import ChiralCheckError, ParseError
from .forms import DEFAULT_ORACLE_BOUND
from .groups import AbelianGroup
from .linalg import IntMatrix, determinant
from .obstruction import (
    ChiralityReport,
    PrimeEvidence,
    Verdict,
    determinant_from_alexander,
    full_report,
)

__all__ = [
    "SeifertMatrixRecord",
    "KnotTable",
    "parse_seifert_text",
    "render_matrix",
    "parse_alexander",
    "parse_table_csv",
    "load_table",
    "bundled_table",
    "scan_table",
    "report_to_dict",
    "report_from_dict",
    "emit_report",
    "emit_reports",
    "report_from_json",
]

log = logging.getLogger(__name__)

BUNDLED_TABLES = ("knots", "amphichiral")


@dataclass(frozen=True)
class SeifertMatrixRecord:
    label: str
    matrix: IntMatrix
    alexander_coeffs: Optional[Tuple[int, ...]] = None
    amphichiral_flag: Optional[bool] = None

    def report(self, oracle_bound: int = DEFAULT_ORACLE_BOUND) -> ChiralityReport:
        return full_report(self.label, self.matrix, self.alexander_coeffs, oracle_bound=oracle_bound)


@dataclass(frozen=True)
class KnotTable:
    records: Tuple[SeifertMatrixRecord, ...] = ()
    skipped: Tuple[Tuple[int, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        seen = set()
        for r in self.records:
            if r.label in seen:
                raise ValueError(f"duplicate label {r.label!r}")
            seen.add(r.label)

    def __iter__(self) -> Iterator[SeifertMatrixRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(r.label for r in self.records)

    def get(self, label: str) -> SeifertMatrixRecord:
        for r in self.records:
            if r.label == label:
                return r
        raise KeyError(label)


def _parse_int_token(tok: str, line: int, column: int) -> int:
    if not re.fullmatch(r"[+-]?\d+", tok):
        raise ParseError(f"not an integer: {tok!r}", line, column)
    return int(tok)


def _parse_bracketed(text: str) -> IntMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed bracketed matrix: {e.msg}", e.lineno, e.colno) from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("bracketed matrix must be a list of rows")
    for i, row in enumerate(data, 1):
        for j, x in enumerate(row, 1):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"not an integer: {x!r} (row {i}, entry {j})", 1, None)
        if len(row) != len(data[0]):
            raise ParseError(f"ragged rows: row {i} has {len(row)} entries, row 1 has {len(data[0])}")
    return IntMatrix(data, shape=(len(data), len(data[0]) if data else 0))


def _parse_rows(text: str) -> IntMatrix:
    rows: List[List[int]] = []
    first_len = None
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        row = [
            _parse_int_token(m.group(), lineno, m.start() + 1) for m in re.finditer(r"\S+", body)
        ]
        if first_len is None:
            first_len = len(row)
        elif len(row) != first_len:
            raise ParseError(f"ragged rows: {len(row)} entries, expected {first_len}", lineno, None)
        rows.append(row)
    return IntMatrix(rows, shape=(len(rows), first_len or 0))


def parse_seifert_text(text: str) -> IntMatrix:
    """Parse a square integer matrix.

    Accepts whitespace-separated rows, one per line (``#`` starts a
    comment), or the bracketed form ``[[a,b],[c,d]]``.  Empty input and
    ``[]`` give the 0x0 matrix of the unknot.
    """
    stripped = text.strip()
    M = _parse_bracketed(stripped) if stripped.startswith("[") else _parse_rows(text)
    if not M.is_square:
        raise ParseError(f"Seifert matrix must be square, got {M.nrows}x{M.ncols}")
    return M


def render_matrix(M, style: str = "rows") -> str:
    """Inverse of :func:`parse_seifert_text` for either input style."""
    M = IntMatrix.coerce(M)
    if style == "brackets":
        return json.dumps(M.tolist(), separators=(",", ":"))
    if style == "rows":
        return "\n".join(" ".join(str(x) for x in row) for row in M.rows())
    raise ValueError(f"unknown style {style!r}")


def parse_alexander(text: str) -> Tuple[int, ...]:
    """``"2,-5,2"``, ``"2 -5 2"`` or ``"[2,-5,2]"`` -> ``(2, -5, 2)``."""
    body = text.strip().strip("[]")
    toks = [t for t in re.split(r"[\s,]+", body) if t]
    if not toks:
        raise ParseError("empty Alexander polynomial")
    out = []
    for t in toks:
        if not re.fullmatch(r"[+-]?\d+", t):
            raise ParseError(f"not an integer coefficient: {t!r}")
        out.append(int(t))
    return tuple(out)


_TRUE = {"true", "yes", "1", "y", "t"}
_FALSE = {"false", "no", "0", "n", "f"}


def _parse_flag(text: str) -> Optional[bool]:
    t = text.strip().lower()
    if not t:
        return None
    if t in _TRUE:
        return True
    if t in _FALSE:
        return False
    raise ParseError(f"amphichiral must be true/false, got {text!r}")


def _record_from_row(row: dict) -> SeifertMatrixRecord:
    label = (row.get("name") or "").strip()
    if not label:
        raise ParseError("missing knot name")
    cell = row.get("seifert_matrix")
    if cell is None or not cell.strip():
        raise ParseError(f"{label}: missing seifert_matrix")
    try:
        M = parse_seifert_text(cell)
    except ParseError as e:
        raise ParseError(f"{label}: {e.message}") from None
    alex_cell = (row.get("alexander_polynomial") or "").strip()
    alex = parse_alexander(alex_cell) if alex_cell else None
    flag = _parse_flag(row.get("amphichiral") or "")

    d = abs(determinant(M + M.T))
    if d % 2 == 0:
        raise ParseError(f"{label}: |det(A + A^T)| = {d} is even, not a knot's Seifert matrix")
    if alex is not None:
        try:
            alex_det = determinant_from_alexander(alex)
        except ChiralCheckError as e:
            raise ParseError(f"{label}: {e}") from None
        if alex_det != d:
            raise ParseError(f"{label}: |Delta(-1)| = {alex_det} but |det(A + A^T)| = {d}")
    return SeifertMatrixRecord(label, M, alex, flag)


def parse_table_csv(text: str, strict: bool = False) -> KnotTable:
    """Parse a knot table.

    Malformed rows are logged and skipped (and listed in ``KnotTable.skipped``
    with their line numbers); with ``strict=True`` the first one raises
    :class:`ParseError` instead.  Duplicate labels count as malformed.
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        return KnotTable()
    fields = [f.strip() for f in reader.fieldnames]
    reader.fieldnames = fields
    for required in ("name", "seifert_matrix"):
        if required not in fields:
            raise ParseError(f"table header lacks required column {required!r}", 1, None)

    records: List[SeifertMatrixRecord] = []
    skipped: List[Tuple[int, str]] = []
    seen = set()
    for row in reader:
        line = reader.line_num
        try:
            if None in row:
                raise ParseError("too many fields")
            rec = _record_from_row(row)
            if rec.label in seen:
                raise ParseError(f"duplicate label {rec.label!r}")
        except ParseError as e:
            if strict:
                raise ParseError(e.message, line, None) from None
            log.warning("skipping table row at line %d: %s", line, e.message)
            skipped.append((line, e.message))
            continue
        seen.add(rec.label)
        records.append(rec)
    return KnotTable(tuple(records), tuple(skipped))


def load_table(source: Union[str, Path], strict: bool = False) -> KnotTable:
    """Load a CSV table from a path, or a bundled one via ``builtin:<name>``."""
    s = str(source)
    if s.startswith("builtin:"):
        return bundled_table(s.split(":", 1)[1], strict=strict)
    return parse_table_csv(Path(s).read_text(), strict=strict)


def bundled_table(name: str, strict: bool = True) -> KnotTable:
    """One of the tables shipped with the package (see ``BUNDLED_TABLES``)."""
    if name not in BUNDLED_TABLES:
        raise ValueError(f"no bundled table {name!r}; choose from {BUNDLED_TABLES}")
    text = resources.files("chiralcheck").joinpath("data", f"{name}.csv").read_text()
    return parse_table_csv(text, strict=strict)


def _report_job(args):
    record, bound = args
    return record.report(bound)


def scan_table(table: KnotTable, jobs: int = 1, oracle_bound: int = DEFAULT_ORACLE_BOUND) -> List[ChiralityReport]:
    """Reports for every record, in table order regardless of ``jobs``."""
    work = [(r, oracle_bound) for r in table.records]
    if jobs <= 1 or len(work) < 2:
        return [_report_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_report_job, work, chunksize=max(1, len(work) // (4 * jobs))))


def report_to_dict(r: ChiralityReport) -> dict:
    return {
        "label": r.knot_label,
        "determinant": str(r.determinant),
        "group": {"invariant_factors": [str(f) for f in r.group.invariant_factors]},
        "primes": [
            {
                "p": str(e.prime),
                "mod4": str(e.mod4),
                "valuation": str(e.valuation),
                "exponents": [str(x) for x in e.primary_exponents],
                "theorem1": e.theorem1_fires,
                "goeritz": e.goeritz_fires,
                "goeritz_strong": e.goeritz_strong_fires,
                "oracle": e.oracle_self_isometric,
            }
            for e in r.per_prime
        ],
        "verdict": r.verdict.value,
        "obstructing_primes": [str(p) for p in r.obstructing_primes],
    }


def report_from_dict(d: dict) -> ChiralityReport:
    return ChiralityReport(
        knot_label=d["label"],
        determinant=int(d["determinant"]),
        group=AbelianGroup(tuple(int(f) for f in d["group"]["invariant_factors"])),
        per_prime=tuple(
            PrimeEvidence(
                prime=int(e["p"]),
                mod4=int(e["mod4"]),
                valuation=int(e["valuation"]),
                primary_exponents=tuple(int(x) for x in e["exponents"]),
                theorem1_fires=e["theorem1"],
                goeritz_fires=e["goeritz"],
                goeritz_strong_fires=e["goeritz_strong"],
                oracle_self_isometric=e.get("oracle"),
            )
            for e in d["primes"]
        ),
        verdict=Verdict(d["verdict"]),
        obstructing_primes=tuple(int(p) for p in d["obstructing_primes"]),
    )


def report_from_json(text: str) -> ChiralityReport:
    return report_from_dict(json.loads(text))


def _group_text(G: AbelianGroup) -> str:
    return "0 (trivial)" if G.is_trivial else " + ".join(f"Z/{f}" for f in G.invariant_factors)


def _prime_lines(e: PrimeEvidence, det: int) -> List[str]:
    p = e.prime
    part = " + ".join(f"Z/{p}^{x}" if x > 1 else f"Z/{p}" for x in e.primary_exponents)
    shape = "cyclic" if len(e.primary_exponents) == 1 else "not cyclic"
    lines = [f"  p = {p} (p = {e.mod4} mod 4): {p}^{e.valuation} || det, {p}-primary part {part} ({shape})"]
    if e.mod4 == 1:
        lines.append("    no test applies: -1 is a square mod p, so lambda ~ -lambda is possible")
    else:
        if e.theorem1_fires:
            lines.append(f"    theorem1: FIRES, nonzero cyclic {p}-primary part with p = 3 mod 4")
        else:
            lines.append(f"    theorem1: no, the {p}-primary part is not cyclic")
        if e.goeritz_fires:
            lines.append(f"    Goeritz: FIRES, {p} divides {det} but {p}^2 does not")
        else:
            lines.append(f"    Goeritz: no, {p}^2 divides {det}")
        if e.goeritz_strong_fires:
            lines.append(f"    Goeritz (odd power): FIRES, {p} divides {det} to the odd power {e.valuation}")
        else:
            lines.append(f"    Goeritz (odd power): no, {p} divides {det} to the even power {e.valuation}")
    if e.oracle_self_isometric is not None:
        found = "exists" if e.oracle_self_isometric else "does not exist"
        lines.append(f"    oracle: an isometry lambda_{p} ~ -lambda_{p} {found} (exhaustive search over units)")
    return lines


def _report_text(r: ChiralityReport) -> str:
    head = (
        f"{r.knot_label}: OBSTRUCTED, provably not amphichiral"
        if r.obstructed
        else f"{r.knot_label}: INCONCLUSIVE, no obstruction to amphichirality found"
    )
    lines = [head, f"  det = {r.determinant}, H_1(double branched cover) = {_group_text(r.group)}"]
    for e in r.per_prime:
        lines.extend(_prime_lines(e, r.determinant))
    if r.obstructed:
        fired = []
        if any(e.theorem1_fires for e in r.per_prime):
            fired.append("theorem1")
        if any(e.goeritz_fires or e.goeritz_strong_fires for e in r.per_prime):
            fired.append("Goeritz")
        lines.append(
            "  obstructing primes: " + ", ".join(map(str, r.obstructing_primes))
            + " (by " + " and ".join(fired) + ")"
        )
    return "\n".join(lines)


def emit_report(r: ChiralityReport, format: str = "json") -> str:
    if format == "json":
        return json.dumps(report_to_dict(r), indent=2)
    if format == "text":
        return _report_text(r)
    raise ValueError(f"unknown format {format!r}")


def emit_reports(reports: Sequence[ChiralityReport], format: str = "json") -> str:
    if format == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2)
    return "\n\n".join(emit_report(r, format) for r in reports)
