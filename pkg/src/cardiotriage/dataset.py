"""Binary symptom matrices: parsing, validation and the builtin reference table."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

TABLE1_FEATURES = (
    "BP",
    "HB",
    "PR",
    "ECG",
    "left-shoulder-pain",
    "sweating",
    "vomiting",
    "over-weight",
    "chest-pain",
    "breathlessness",
)

# rows P1..P10, columns in TABLE1_FEATURES order
TABLE1_ROWS = (
    ("P1", (1, 0, 1, 0, 1, 1, 0, 0, 0, 0)),
    ("P2", (0, 0, 1, 1, 1, 1, 0, 0, 0, 0)),
    ("P3", (0, 0, 1, 0, 0, 0, 0, 1, 0, 0)),
    ("P4", (0, 0, 0, 0, 0, 0, 0, 0, 0, 0)),
    ("P5", (0, 1, 1, 1, 1, 1, 1, 1, 1, 0)),
    ("P6", (1, 1, 1, 1, 1, 1, 1, 1, 1, 1)),
    ("P7", (0, 0, 0, 0, 0, 0, 0, 0, 1, 0)),
    ("P8", (0, 0, 1, 1, 1, 0, 0, 0, 0, 0)),
    ("P9", (0, 0, 0, 0, 1, 0, 0, 0, 1, 0)),
    ("P10", (0, 1, 0, 1, 0, 1, 0, 1, 0, 1)),
)


class DatasetError(ValueError):
    """Malformed dataset input. ``row``/``column`` are 1-based file positions."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


@dataclass(frozen=True)
class FeatureSchema:
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def arity(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class PatientRecord:
    id: str
    features: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))


@dataclass(frozen=True)
class Dataset:
    """Ordered patient records over one schema.

    Record order matters: clustering seeds from the first ``k`` records.
    Construction does not validate; use :func:`validate` or :func:`parse_dataset`.
    """

    schema: FeatureSchema
    records: tuple[PatientRecord, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))

    @property
    def n(self) -> int:
        return len(self.records)

    @property
    def arity(self) -> int:
        return self.schema.arity

    @property
    def ids(self) -> list[str]:
        return [r.id for r in self.records]

    def rows(self) -> list[tuple[int, ...]]:
        return [r.features for r in self.records]

    def index_of(self, patient_id: str) -> int:
        for i, r in enumerate(self.records):
            if r.id == patient_id:
                return i
        raise KeyError(patient_id)

    def __getitem__(self, patient_id: str) -> PatientRecord:
        return self.records[self.index_of(patient_id)]


def make_dataset(names: Sequence[str], rows: Sequence[tuple[str, Sequence[int]]]) -> Dataset:
    return Dataset(FeatureSchema(tuple(names)), tuple(PatientRecord(i, tuple(v)) for i, v in rows))


def builtin_table1() -> Dataset:
    """The ten-patient, ten-symptom reference matrix."""
    return make_dataset(TABLE1_FEATURES, TABLE1_ROWS)


def _parse_bit(cell: str, row: int, column: int) -> int:
    cell = cell.strip()
    if cell == "1":
        return 1
    if cell == "0":
        return 0
    if cell == "":
        raise DatasetError("missing value", row, column)
    raise DatasetError(f"non-binary value {cell!r}", row, column)


def parse_dataset(text: str) -> Dataset:
    """Parse ``id,<feature1>,...`` CSV text into a :class:`Dataset`.

    Raises :class:`DatasetError` naming the offending row/column for empty
    input, ragged rows, non-binary cells and duplicate ids.
    """
    lines = [ln for ln in csv.reader(io.StringIO(text))]
    # a trailing newline or blank separator lines are not data
    numbered = [(i + 1, ln) for i, ln in enumerate(lines) if any(c.strip() for c in ln)]
    if not numbered:
        raise DatasetError("empty file")
    header_row, header = numbered[0]
    header = [h.strip() for h in header]
    if len(header) < 2:
        raise DatasetError("header needs an id column and at least one feature", header_row)
    names = header[1:]
    for col, name in enumerate(names, start=2):
        if not name:
            raise DatasetError("empty feature label", header_row, col)
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise DatasetError(f"duplicate feature label {dup!r}", header_row)

    records = []
    seen: dict[str, int] = {}
    for rowno, cells in numbered[1:]:
        if len(cells) != len(header):
            raise DatasetError(
                f"expected {len(header)} fields, found {len(cells)}", rowno
            )
        pid = cells[0].strip()
        if not pid:
            raise DatasetError("empty id", rowno, 1)
        if pid in seen:
            raise DatasetError(f"duplicate id {pid!r} (first seen on row {seen[pid]})", rowno, 1)
        seen[pid] = rowno
        bits = tuple(_parse_bit(c, rowno, col) for col, c in enumerate(cells[1:], start=2))
        records.append(PatientRecord(pid, bits))
    return Dataset(FeatureSchema(tuple(names)), tuple(records))


def serialize_dataset(d: Dataset) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", *d.schema.names])
    for r in d.records:
        writer.writerow([r.id, *r.features])
    return out.getvalue()


def load_dataset(path) -> Dataset:
    with open(path, encoding="utf-8") as fh:
        return parse_dataset(fh.read())


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(d: Dataset) -> ValidationReport:
    violations = []
    warnings = []
    names = d.schema.names
    if len(names) < 1:
        violations.append("schema has no features")
    for name in names:
        if not isinstance(name, str) or not name:
            violations.append("empty feature label")
    dup_names = sorted({n for n in names if names.count(n) > 1})
    for name in dup_names:
        violations.append(f"duplicate feature label {name!r}")

    if d.n == 0:
        warnings.append("no records")
    counts: dict[str, int] = {}
    for r in d.records:
        counts[r.id] = counts.get(r.id, 0) + 1
    for pid, c in counts.items():
        if c > 1:
            violations.append(f"duplicate id {pid!r} ({c} records)")
    for pos, r in enumerate(d.records, start=1):
        if not isinstance(r.id, str) or not r.id:
            violations.append(f"record {pos}: empty id")
        if len(r.features) != d.arity:
            violations.append(
                f"record {r.id!r}: length {len(r.features)} != arity {d.arity}"
            )
        for j, v in enumerate(r.features):
            if type(v) is not int or v not in (0, 1):
                violations.append(f"record {r.id!r}: non-binary value {v!r} at feature {j + 1}")
    return ValidationReport(tuple(violations), tuple(warnings))
