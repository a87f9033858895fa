"""JSON/CSV payload construction and parsing for the command-line tools.

Complex matrices serialize as row-major nested lists of [re, im] pairs;
Python's float repr round-trips exactly, so a dumped POM reloads bit-for-bit.
"""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .core import BasisLabel, HermitianOperator, POM

#: Exact column order of simulation result rows.
REPORT_CSV_HEADER = "N,K,strategy,score_analytic,score_quadrature,score_mc,score_mc_stderr,seed"

#: Exact column order of score-curve rows.
CURVE_CSV_HEADER = "N,K,score_semiclassical,score_universal,score_k_infinity"


def load_schema() -> dict:
    """The shipped JSON schema covering every document the CLI emits."""
    text = resources.files("qmatch.schemas").joinpath("output.schema.json").read_text()
    return json.loads(text)


def complex_matrix_payload(matrix: np.ndarray) -> list:
    mat = np.asarray(matrix, dtype=np.complex128)
    return [[[float(v.real), float(v.imag)] for v in row] for row in mat]


def complex_matrix_from_payload(payload) -> np.ndarray:
    rows = [[complex(entry[0], entry[1]) for entry in row] for row in payload]
    return np.array(rows, dtype=np.complex128)


def basis_payload(basis: BasisLabel) -> dict:
    doc = {"kind": basis.kind, "dimension": basis.dimension}
    if basis.factors:
        doc["factors"] = [basis_payload(f) for f in basis.factors]
    return doc


def basis_from_payload(payload) -> BasisLabel:
    factors = tuple(basis_from_payload(f) for f in payload.get("factors", ()))
    if factors:
        return BasisLabel(payload["dimension"], factors)
    return BasisLabel(payload["dimension"])


def pom_payload(pom: POM, which: str, parameters: dict, metadata: dict | None = None) -> dict:
    return {
        "kind": "pom_dump",
        "which": which,
        "parameters": parameters,
        "basis": basis_payload(pom.basis),
        "elements": [
            {"label": label, "matrix": complex_matrix_payload(op.entries)}
            for label, op in pom.elements
        ],
        "metadata": metadata or {},
    }


def pom_from_payload(payload) -> POM:
    basis = basis_from_payload(payload["basis"])
    elements = tuple(
        (item["label"], HermitianOperator(basis, complex_matrix_from_payload(item["matrix"])))
        for item in payload["elements"]
    )
    return POM(elements)


def report_row(report) -> dict:
    """Flatten a ScoreReport into one output row (dict keyed like the CSV header)."""
    config = report.config
    return {
        "N": config.n_inputs,
        "K": config.k_copies,
        "strategy": config.strategy,
        "score_analytic": report.score_analytic,
        "score_quadrature": report.score_quadrature,
        "score_mc": report.score_mc,
        "score_mc_stderr": report.score_mc_stderr,
        "seed": config.seed,
    }


def curve_row(row) -> dict:
    return {
        "N": row.n_inputs,
        "K": row.k_copies,
        "score_semiclassical": row.score_semiclassical,
        "score_universal": row.score_universal,
        "score_k_infinity": row.score_k_infinity,
    }


def report_document(reports) -> dict:
    return {"kind": "score_report", "rows": [report_row(r) for r in reports]}


def curve_document(rows) -> dict:
    return {
        "kind": "score_curve",
        "baseline_note": "score_k_infinity is a reconstructed known-template limit",
        "rows": [curve_row(r) for r in rows],
    }


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(header: str, rows: list[dict]) -> str:
    columns = header.split(",")
    lines = [header]
    for row in rows:
        lines.append(",".join(_csv_cell(row[c]) for c in columns))
    return "\n".join(lines) + "\n"
