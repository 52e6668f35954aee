"""Signal CSV files: header ``t,re,im``, one row per support index."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from shift_denoise.global_data.exceptions import DataError
from shift_denoise.signal_core.sequences import Signal

if TYPE_CHECKING:
    from typing import TextIO

HEADER = ("t", "re", "im")


def parse_signal_csv(stream: TextIO, source: str = "<stream>") -> Signal:
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        msg = f"{source}: empty file"
        raise DataError(msg) from None
    if tuple(cell.strip() for cell in header) != HEADER:
        msg = f"{source}, line 1: expected header 't,re,im', got {','.join(header)!r}"
        raise DataError(msg)

    rows: dict[int, complex] = {}
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(HEADER):
            msg = f"{source}, line {line}: expected 3 fields, got {len(row)}"
            raise DataError(msg)
        try:
            t = int(row[0])
            value = complex(float(row[1]), float(row[2]))
        except ValueError:
            msg = f"{source}, line {line}: cannot parse {','.join(row)!r}"
            raise DataError(msg) from None
        if t in rows:
            msg = f"{source}, line {line}: duplicate index {t}"
            raise DataError(msg)
        rows[t] = value

    if not rows:
        msg = f"{source}: no samples"
        raise DataError(msg)
    first, last = min(rows), max(rows)
    if last - first + 1 != len(rows):
        missing = next(t for t in range(first, last + 1) if t not in rows)
        msg = f"{source}: support must be contiguous, index {missing} is missing"
        raise DataError(msg)
    values = np.array([rows[t] for t in range(first, last + 1)], dtype=np.complex128)
    return Signal(first, values)


def read_signal_csv(path: str | Path) -> Signal:
    path = Path(path)
    try:
        with path.open(encoding="utf-8", newline="") as stream:
            return parse_signal_csv(stream, source=str(path))
    except OSError as exc:
        msg = f"cannot read signal file {path}: {exc.strerror}"
        raise DataError(msg) from exc


def write_signal_csv(x: Signal, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(HEADER)
    for t, value in zip(x.domain.indices, x.values, strict=True):
        writer.writerow((int(t), repr(float(value.real)), repr(float(value.imag))))
