"""Readers for the ecmoments output formats.

Inputs must carry the generator's metadata block (comment header in CSV,
"meta" key in JSON); files without it are refused so stale or foreign data
cannot be plotted by accident.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass


class InputError(Exception):
    pass


@dataclass
class CsvReport:
    meta: dict[str, str]  # raw '# key: value' comment lines
    columns: list[str]
    rows: list[dict[str, str]]

    def floats(self, column: str) -> list[float]:
        try:
            return [float(r[column]) for r in self.rows]
        except KeyError:
            raise InputError(f"missing column {column!r}") from None

    def ints(self, column: str) -> list[int]:
        try:
            return [int(r[column]) for r in self.rows]
        except KeyError:
            raise InputError(f"missing column {column!r}") from None


def _parse_meta_lines(lines: list[str]) -> dict[str, str]:
    meta = {}
    for line in lines:
        body = line[1:].strip()
        key, sep, value = body.partition(":")
        if sep:
            meta[key.strip()] = value.strip()
        else:
            meta.setdefault("banner", body)
    return meta


def read_csv_report(path: str) -> CsvReport:
    with open(path) as fh:
        text = fh.read()
    lines = text.splitlines()
    header = [l for l in lines if l.startswith("#")]
    if not any(l.startswith("# ecmoments") for l in header):
        raise InputError(f"{path}: missing ecmoments metadata header, refusing to plot")
    data = "\n".join(l for l in lines if l and not l.startswith("#"))
    reader = csv.DictReader(io.StringIO(data))
    rows = list(reader)
    if not rows:
        raise InputError(f"{path}: no data rows")
    return CsvReport(meta=_parse_meta_lines(header), columns=reader.fieldnames, rows=rows)


def read_json_summary(path: str) -> dict:
    with open(path) as fh:
        payload = json.load(fh)
    meta = payload.get("meta")
    if not isinstance(meta, dict) or meta.get("tool") != "ecmoments":
        raise InputError(f"{path}: missing ecmoments meta block, refusing to plot")
    return payload


def values_checksum(values) -> str:
    """sha256 over the canonical repr of every value consumed by a figure."""
    blob = "\n".join(repr(v) for v in values).encode()
    return hashlib.sha256(blob).hexdigest()
