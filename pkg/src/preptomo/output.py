"""CSV / JSON serialization of sweeps, maps and diagnostics."""
from __future__ import annotations

import io
import json
import sys
from typing import TextIO

import numpy as np

from .scenarios import SweepResult, SweepRow
from .tomography import DiagnosticsReport, ProcessMap

CSV_HEADER = "two_omega_t,eig1,eig2,eig3,eig4,min_eig,is_cp,tp_residual"


def fmt(x: float) -> str:
    return f"{x:.12g}"


def row_to_csv(row: SweepRow) -> str:
    fields = [row.two_omega_t, *row.eigenvalues, row.min_eig]
    return ",".join([*(fmt(x) for x in fields), "1" if row.is_cp else "0", fmt(row.tp_residual)])


def row_to_dict(row: SweepRow) -> dict:
    return {
        "two_omega_t": row.two_omega_t,
        "eigenvalues": list(row.eigenvalues),
        "min_eig": row.min_eig,
        "is_cp": row.is_cp,
        "tp_residual": row.tp_residual,
    }


def map_to_json(process_map: ProcessMap) -> list[list[dict]]:
    return [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in process_map.b_form]


def map_from_json(data: list[list[dict]]) -> np.ndarray:
    return np.array([[complex(z["re"], z["im"]) for z in row] for row in data])


def to_csv(result: SweepResult) -> str:
    lines = [CSV_HEADER, *(row_to_csv(r) for r in result.rows)]
    return "\n".join(lines) + "\n"


def to_json(result: SweepResult, process_map: ProcessMap | None = None,
            diagnostics: DiagnosticsReport | None = None) -> str:
    doc = {"config": result.config.as_dict(), "rows": [row_to_dict(r) for r in result.rows]}
    if process_map is not None:
        doc["map"] = map_to_json(process_map)
    if diagnostics is not None:
        doc["diagnostics"] = diagnostics.as_dict()
    return json.dumps(doc, indent=2) + "\n"


def emit(result: SweepResult, format: str = "csv", destination: str | TextIO | None = None,
         process_map: ProcessMap | None = None, diagnostics: DiagnosticsReport | None = None) -> None:
    """Write ``result`` as CSV or JSON to a path, an open stream, or stdout (``None`` or ``"-"``)."""
    if format == "csv":
        text = to_csv(result)
    elif format == "json":
        text = to_json(result, process_map, diagnostics)
    else:
        raise ValueError(f"unknown output format {format!r}")
    if destination is None or destination == "-":
        sys.stdout.write(text)
    elif isinstance(destination, io.IOBase) or hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", newline="") as fh:
            fh.write(text)
