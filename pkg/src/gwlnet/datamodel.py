"""Core domain types and text-format I/O for daily circulation-pattern data.

The seven-class scheme keeps the six anticyclonic circulation types
(BM, HNA, HFA, NEA, SEA, HNFA) and folds everything else into a residual
class RES.  Gridded inputs are two-channel daily fields (sea level pressure
in hPa, geopotential height at 500 hPa in m) on a 16 x 29 grid.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date, timedelta
from enum import IntEnum
from typing import IO, Iterable, Mapping, Sequence

import numpy as np

N_CLASSES = 7
GRID_CHANNELS = 2
GRID_ROWS = 16
GRID_COLS = 29
GRID_SHAPE = (GRID_CHANNELS, GRID_ROWS, GRID_COLS)
FIELD_MAGIC = "GWLGRID"

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


class ParseError(ValueError):
    """Malformed input text; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ClassId(IntEnum):
    """The seven-class scheme with stable integer indices.

    Index order matches the reporting convention used throughout the
    package (confusion-matrix rows/columns, probability vectors).
    """

    BM = 0
    HNA = 1
    HFA = 2
    NEA = 3
    SEA = 4
    HNFA = 5
    RES = 6


ANTICYCLONIC = (
    ClassId.BM,
    ClassId.HNA,
    ClassId.HFA,
    ClassId.NEA,
    ClassId.SEA,
    ClassId.HNFA,
)

CLASS_NAMES = tuple(c.name for c in ClassId)


def default_type_map() -> dict[str, ClassId]:
    """Folding table for raw catalog codes: the six kept anticyclonic types
    map to themselves, every other code maps to RES."""
    return {c.name: c for c in ANTICYCLONIC}


def load_type_map(text: str | Iterable[str]) -> dict[str, ClassId]:
    """Parse a ``RAW,TARGET`` mapping file (one pair per line, ``#`` comments).

    Targets must be codes from the seven-class scheme.
    """
    mapping: dict[str, ClassId] = {}
    for lineno, raw in enumerate(_iter_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected 'RAW,TARGET', got {line!r}", lineno)
        src, dst = parts[0].strip(), parts[1].strip()
        if dst not in ClassId.__members__:
            raise ParseError(f"unknown target code {dst!r}", lineno)
        mapping[src] = ClassId[dst]
    return mapping


def _iter_lines(text: str | IO[str] | Iterable[str]) -> Iterable[str]:
    if isinstance(text, str):
        return text.splitlines()
    return text


def _parse_date(token: str, lineno: int) -> date:
    if not _DATE_RE.match(token):
        raise ParseError(f"malformed date {token!r}", lineno)
    try:
        return date.fromisoformat(token)
    except ValueError as exc:
        raise ParseError(f"malformed date {token!r}: {exc}", lineno) from None


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GridField:
    """One day's 2 x 16 x 29 array of atmospheric values.

    Channel 0 is sea level pressure [hPa], channel 1 is geopotential height
    at 500 hPa [m].  Values are validated finite at construction.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.shape != GRID_SHAPE:
            raise ValueError(f"grid shape must be {GRID_SHAPE}, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("grid contains non-finite values")
        object.__setattr__(self, "values", _readonly(v))


@dataclass(frozen=True)
class DailySample:
    date: date
    field: GridField


@dataclass(frozen=True)
class Dataset:
    """Ordered daily samples over strictly consecutive calendar days."""

    samples: tuple[DailySample, ...]

    def __post_init__(self):
        samples = tuple(self.samples)
        if not samples:
            raise ValueError("dataset is empty")
        for prev, cur in zip(samples, samples[1:]):
            if cur.date != prev.date + timedelta(days=1):
                raise ValueError(
                    f"dates not consecutive: {prev.date} followed by {cur.date}"
                )
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def start_date(self) -> date:
        return self.samples[0].date

    def dates(self) -> list[date]:
        return [s.date for s in self.samples]

    def years(self) -> list[int]:
        return sorted({s.date.year for s in self.samples})

    def to_array(self) -> np.ndarray:
        """Stack all fields into a (T, 2, 16, 29) float64 array."""
        return np.stack([s.field.values for s in self.samples])


@dataclass(frozen=True)
class LabelSeries:
    """Date-indexed sequence of class identifiers, one per consecutive day."""

    start_date: date
    labels: np.ndarray

    def __post_init__(self):
        lab = np.ascontiguousarray(self.labels, dtype=np.int64)
        if lab.ndim != 1 or lab.size == 0:
            raise ValueError("labels must be a nonempty 1-d sequence")
        if lab.min() < 0 or lab.max() >= N_CLASSES:
            raise ValueError("label indices must be in 0..6")
        object.__setattr__(self, "labels", _readonly(lab))

    def __len__(self) -> int:
        return len(self.labels)

    def dates(self) -> list[date]:
        return [self.start_date + timedelta(days=i) for i in range(len(self))]

    def years(self) -> list[int]:
        return sorted({d.year for d in self.dates()})

    def codes(self) -> list[str]:
        return [CLASS_NAMES[i] for i in self.labels]


@dataclass(frozen=True)
class Run:
    """A maximal constant-class segment of a label sequence."""

    cls: ClassId
    start_index: int
    length: int


def runs(labels: LabelSeries | np.ndarray) -> list[Run]:
    """Decompose a label sequence into maximal runs.

    The runs tile the sequence exactly: concatenating them reproduces the
    input, and adjacent runs always have distinct classes.
    """
    lab = labels.labels if isinstance(labels, LabelSeries) else np.asarray(labels)
    if lab.size == 0:
        raise ValueError("empty label sequence")
    out: list[Run] = []
    start = 0
    for i in range(1, len(lab)):
        if lab[i] != lab[start]:
            out.append(Run(ClassId(int(lab[start])), start, i - start))
            start = i
    out.append(Run(ClassId(int(lab[start])), start, len(lab) - start))
    return out


def boundary_mask(labels: LabelSeries | np.ndarray) -> np.ndarray:
    """Boolean vector marking the first and last day of every maximal run.

    A length-1 run contributes a single marked position.
    """
    lab = labels.labels if isinstance(labels, LabelSeries) else np.asarray(labels)
    mask = np.zeros(len(lab), dtype=bool)
    for r in runs(lab):
        mask[r.start_index] = True
        mask[r.start_index + r.length - 1] = True
    return mask


def class_frequencies(labels: LabelSeries | np.ndarray) -> np.ndarray:
    """Relative class frequencies, indexed by ClassId, summing to 1."""
    lab = labels.labels if isinstance(labels, LabelSeries) else np.asarray(labels)
    if lab.size == 0:
        raise ValueError("empty label sequence")
    counts = np.bincount(lab, minlength=N_CLASSES).astype(np.float64)
    return counts / counts.sum()


def parse_labels(
    text: str | IO[str] | Iterable[str],
    fold_raw_types: bool = False,
    type_map: Mapping[str, ClassId] | None = None,
) -> LabelSeries:
    """Parse a ``YYYY-MM-DD,CODE`` label file into a LabelSeries.

    With ``fold_raw_types`` the codes may come from the raw catalog; they are
    folded through ``type_map`` (default: the six anticyclonic types map to
    themselves, everything else to RES).  Without it only the seven scheme
    codes are accepted.  Dates must be consecutive calendar days.
    """
    if fold_raw_types and type_map is None:
        type_map = default_type_map()
    start: date | None = None
    expected: date | None = None
    labels: list[int] = []
    for lineno, raw in enumerate(_iter_lines(text), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected 'YYYY-MM-DD,CODE', got {line!r}", lineno)
        d = _parse_date(parts[0].strip(), lineno)
        code = parts[1].strip()
        if fold_raw_types:
            if not code:
                raise ParseError("empty code", lineno)
            cls = type_map.get(code, ClassId.RES)
        else:
            if code not in ClassId.__members__:
                raise ParseError(f"unknown code {code!r}", lineno)
            cls = ClassId[code]
        if start is None:
            start = d
        elif d == expected - timedelta(days=1):
            raise ParseError(f"duplicate date {d.isoformat()}", lineno)
        elif d != expected:
            raise ParseError(
                f"date gap or disorder: expected {expected.isoformat()}, "
                f"got {d.isoformat()}",
                lineno,
            )
        expected = d + timedelta(days=1)
        labels.append(int(cls))
    if start is None:
        raise ParseError("no label records found")
    return LabelSeries(start_date=start, labels=np.array(labels))


def write_labels(series: LabelSeries) -> str:
    """Render a LabelSeries in the label-file format (LF endings, no header)."""
    lines = [
        f"{d.isoformat()},{code}" for d, code in zip(series.dates(), series.codes())
    ]
    return "\n".join(lines) + "\n"


def _format_real(v: float) -> str:
    # repr() of a Python float is the shortest decimal that round-trips the
    # underlying 64-bit value exactly.
    return repr(float(v))


def parse_fields(text: str | IO[str] | Iterable[str]) -> Dataset:
    """Parse a field file into a Dataset.

    Format: first line ``GWLGRID 2 16 29``; then, per day, one date line
    followed by one line per channel of 464 space-separated reals in
    row-major order.  ``#`` comment lines are permitted after the header.
    """
    lines = list(_iter_lines(text))
    if not lines:
        raise ParseError("empty field file")
    header = lines[0].split()
    if len(header) != 4 or header[0] != FIELD_MAGIC:
        raise ParseError(f"expected header '{FIELD_MAGIC} 2 16 29'", 1)
    dims = header[1:]
    if dims != [str(GRID_CHANNELS), str(GRID_ROWS), str(GRID_COLS)]:
        raise ParseError(
            f"dimension mismatch: expected 2 16 29, got {' '.join(dims)}", 1
        )

    samples: list[DailySample] = []
    expected_date: date | None = None
    i = 1
    n = len(lines)
    while i < n:
        line = lines[i].strip()
        if not line or line.startswith("#"):
            i += 1
            continue
        d = _parse_date(line, i + 1)
        if expected_date is not None and d != expected_date:
            raise ParseError(
                f"date gap or disorder: expected {expected_date.isoformat()}, "
                f"got {d.isoformat()}",
                i + 1,
            )
        channels = np.empty(GRID_SHAPE, dtype=np.float64)
        for ch in range(GRID_CHANNELS):
            j = i + 1 + ch
            if j >= n or not lines[j].strip() or lines[j].lstrip().startswith("#"):
                raise ParseError(
                    f"missing channel {ch} for {d.isoformat()}", min(j, n - 1) + 1
                )
            tokens = lines[j].split()
            if len(tokens) != GRID_ROWS * GRID_COLS:
                raise ParseError(
                    f"dimension mismatch: expected {GRID_ROWS * GRID_COLS} values "
                    f"for {d.isoformat()} channel {ch}, got {len(tokens)}",
                    j + 1,
                )
            try:
                vals = np.array([float(t) for t in tokens], dtype=np.float64)
            except ValueError:
                raise ParseError(
                    f"unparseable value for {d.isoformat()} channel {ch}", j + 1
                ) from None
            if not np.all(np.isfinite(vals)):
                raise ParseError(
                    f"non-finite value for {d.isoformat()} channel {ch}", j + 1
                )
            channels[ch] = vals.reshape(GRID_ROWS, GRID_COLS)
        samples.append(DailySample(date=d, field=GridField(channels)))
        expected_date = d + timedelta(days=1)
        i += 1 + GRID_CHANNELS
    if not samples:
        raise ParseError("no field records found")
    return Dataset(samples=tuple(samples))


def write_fields(dataset: Dataset, comments: Sequence[str] = ()) -> str:
    """Render a Dataset in the field-file format.

    Values use the shortest round-trip decimal representation, so
    ``parse_fields(write_fields(ds))`` reproduces ``ds`` bit-exactly.
    Optional comment lines are embedded after the header.
    """
    out = [f"{FIELD_MAGIC} {GRID_CHANNELS} {GRID_ROWS} {GRID_COLS}"]
    out.extend(f"# {c}" for c in comments)
    for s in dataset.samples:
        out.append(s.date.isoformat())
        flat = s.field.values.reshape(GRID_CHANNELS, -1)
        for ch in range(GRID_CHANNELS):
            out.append(" ".join(_format_real(v) for v in flat[ch]))
    return "\n".join(out) + "\n"
