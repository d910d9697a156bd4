"""Reader for the czlab CSV schema (version 1).

A report file is a comma-separated header row, one data row per index and a
trailing block of '# key = value' metadata lines.  The reader never
recomputes any mathematics; it only parses what the producer wrote.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path


class CsvFormatError(ValueError):
    """The file does not conform to the report schema."""


class MissingColumnError(KeyError):
    """A required column is absent from the report."""


class EmptyDataError(ValueError):
    """The report carries no data rows."""


def _cell(text):
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return float(text)
    except ValueError:
        return text


@dataclass
class Report:
    columns: list
    rows: list          # list of dicts
    metadata: dict

    def column(self, name):
        if name not in self.columns:
            raise MissingColumnError(
                f"column {name!r} not in report (has {self.columns})")
        return [row[name] for row in self.rows]


def read_report(path) -> Report:
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CsvFormatError(f"{path}: empty file")
    header = lines[0]
    if "#" in header or "," not in header:
        raise CsvFormatError(f"{path}: first line is not a CSV header")
    columns = header.split(",")
    rows = []
    metadata = {}
    for ln in lines[1:]:
        if ln.startswith("#"):
            body = ln[1:].strip()
            key, _, val = body.partition("=")
            if not _:
                raise CsvFormatError(f"{path}: malformed metadata line {ln!r}")
            metadata[key.strip()] = _cell(val.strip())
            continue
        cells = ln.split(",")
        if len(cells) != len(columns):
            raise CsvFormatError(
                f"{path}: row has {len(cells)} cells, expected {len(columns)}")
        rows.append(dict(zip(columns, (_cell(c) for c in cells))))
    if metadata.get("schema_version") not in (None, 1.0):
        raise CsvFormatError(
            f"{path}: unsupported schema version {metadata['schema_version']}")
    return Report(columns, rows, metadata)
