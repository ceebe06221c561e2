"""Bit-stable JSON and CSV serialisation of matrices, tensors and reports.

Indices are written 1-based, entries as canonical Surd strings, rows in
sorted index order, and every file ends with a newline.
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .matrix import SurdMatrix, SurdTensor
from .report import CheckReport
from .scalar import Surd

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "tensor_to_json",
    "tensor_from_json",
    "tensor_rows",
    "matrix_rows",
    "report_rows",
    "dumps_json",
    "csv_text",
    "write_text",
    "REPORT_HEADER",
    "load_schema",
]

REPORT_HEADER = ("identity", "name", "relation", "pass", "max_residual")


def matrix_to_json(m: SurdMatrix) -> dict:
    return {
        "shape": list(m.shape),
        "entries": [[r + 1, c + 1, str(v)] for r, c, v in m.iter_entries()],
    }


def matrix_from_json(obj: dict) -> SurdMatrix:
    shape = tuple(obj["shape"])
    return SurdMatrix.from_entries(shape, {(r - 1, c - 1): Surd.parse(v) for r, c, v in obj["entries"]})


def tensor_to_json(t: SurdTensor) -> dict:
    return {
        "dims": list(t.dims),
        "entries": [[*(i + 1 for i in idx), str(v)] for idx, v in t.nonzero()],
    }


def tensor_from_json(obj: dict) -> SurdTensor:
    dims = tuple(obj["dims"])
    entries = {tuple(i - 1 for i in row[:-1]): Surd.parse(row[-1]) for row in obj["entries"]}
    return SurdTensor.from_entries(dims, entries)


def tensor_rows(t: SurdTensor, prefix: Sequence = ()) -> list[list]:
    return [[*prefix, *(i + 1 for i in idx), str(v)] for idx, v in t.nonzero()]


def matrix_rows(m: SurdMatrix, prefix: Sequence = ()) -> list[list]:
    return [[*prefix, r + 1, c + 1, str(v)] for r, c, v in m.iter_entries()]


def report_rows(reports: Iterable[CheckReport]) -> list[list]:
    rows = []
    for rep in reports:
        for chk in rep.checks:
            rows.append([chk.get("group", rep.tag), rep.name, chk["relation"], str(chk["pass"]).lower(), chk["max_residual"]])
    return rows


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def write_text(text: str, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


_SCHEMAS = {
    "gen-rep": "generators.schema.json",
    "gen-tensors": "tensors.schema.json",
    "osc-rep": "oscillator.schema.json",
    "spectrum": "spectrum.schema.json",
}


def load_schema(command: str) -> dict:
    """JSON schema describing the JSON output of a CLI command."""
    name = _SCHEMAS.get(command, "report.schema.json")
    return json.loads(resources.files("lieosc").joinpath("schemas", name).read_text(encoding="utf-8"))
