"""
Output Formatters

JSON and CSV encodings of the command payloads, plus a reader that parses
emitted matrix tables back into arrays.

JSON documents have the shape {schema_version, model, params, payload};
every complex number is an object {"re": …, "im": …} and every matrix a
row-major list of rows of such objects.

JSON floats are written by `json` as the shortest repr that reads back to
the same double. CSV floats are written with FLOAT_DIGITS (17) significant
digits, which also reads back exactly. Both encodings round-trip bit for bit.
"""

import csv
import io
import json
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.config.settings import app_config
from src.numerics.matpoly import MatrixPolynomial
from src.services.report import Report

TableKey = Tuple[str, int, Optional[int]]

MATRIX_COLUMNS = ['series', 'index', 'power', 'row', 'col', 're', 'im']
REPORT_COLUMNS = ['kind', 'name', 'status', 'max_residual', 'tolerance', 'text']


def _complex(value) -> Dict[str, float]:
    value = complex(value)
    return {'re': to_jsonable(value.real), 'im': to_jsonable(value.imag)}


def to_jsonable(value: Any) -> Any:
    """Recursively turn numpy and complex values into JSON-ready objects."""
    if isinstance(value, np.ndarray):
        if value.ndim == 0:
            return to_jsonable(value.item())
        if np.iscomplexobj(value) or not np.all(np.isfinite(value)):
            return [to_jsonable(item) for item in value]
        return value.tolist()
    if isinstance(value, (complex, np.complexfloating)):
        return _complex(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        # JSON has no NaN or infinity
        return float(value) if math.isfinite(value) else None
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    return value


def _document(model: str, params: Dict[str, Any], payload: Any) -> str:
    document = {
        'schema_version': app_config.SCHEMA_VERSION,
        'model': model,
        'params': to_jsonable(params),
        'payload': to_jsonable(payload),
    }
    return json.dumps(document, indent=2, ensure_ascii=False, allow_nan=False) + '\n'


def _float(value: float) -> str:
    return format(float(value), f".{app_config.FLOAT_DIGITS}g")


def _matrix_rows(key: TableKey, matrix: np.ndarray) -> List[List[str]]:
    series, index, power = key
    return [
        [series, str(index), '' if power is None else str(power), str(i), str(j),
         _float(matrix[i, j].real), _float(matrix[i, j].imag)]
        for i in range(matrix.shape[0])
        for j in range(matrix.shape[1])
    ]


def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def format_polynomials(model: str, params: Dict[str, Any], qs: Sequence[MatrixPolynomial], fmt: str) -> str:
    """Coefficient table of Q_0 … Q_w, ascending powers."""
    if fmt == 'json':
        payload = {
            'polynomials': [
                {'w': w, 'degree': q.degree, 'coefficients': [c for c in q.coeffs]}
                for w, q in enumerate(qs)
            ]
        }
        return _document(model, params, payload)
    rows = []
    for w, q in enumerate(qs):
        for power, coefficient in enumerate(q.coeffs):
            rows.extend(_matrix_rows(('Q', w, power), coefficient))
    return _csv(MATRIX_COLUMNS, rows)


def format_moments(model: str, params: Dict[str, Any], moments: Dict[str, Sequence[np.ndarray]], fmt: str) -> str:
    """Moment table: one matrix per weight and order."""
    if fmt == 'json':
        payload = {
            label: [{'order': k, 'matrix': np.asarray(matrix, dtype=complex)} for k, matrix in enumerate(matrices)]
            for label, matrices in moments.items()
        }
        return _document(model, params, payload)
    rows = []
    for label, matrices in moments.items():
        for k, matrix in enumerate(matrices):
            rows.extend(_matrix_rows((label, k, None), matrix))
    return _csv(MATRIX_COLUMNS, rows)


def format_report(report: Report, fmt: str) -> str:
    if fmt == 'json':
        return _document(report.model, report.params, report.to_dict())
    rows = [
        ['check', check.name, check.status,
         '' if check.max_residual is None else _float(check.max_residual),
         '' if check.tolerance is None else _float(check.tolerance), '']
        for check in report.checks
    ]
    rows.extend(['note', '', '', '', '', note] for note in report.notes)
    return _csv(REPORT_COLUMNS, rows)


def _parse_complex_matrix(rows) -> np.ndarray:
    return np.array([[complex(entry['re'], entry['im']) for entry in row] for row in rows], dtype=complex)


def read_matrix_table(text: str, fmt: str) -> Dict[TableKey, np.ndarray]:
    """
    Parse a `generate` or `moments` output back into matrices.

    Keys are (series, index, power): ('Q', w, k) for polynomial coefficients
    and (label, k, None) for moments.
    """
    table: Dict[TableKey, np.ndarray] = {}
    if fmt == 'json':
        payload = json.loads(text)['payload']
        if 'polynomials' in payload:
            for entry in payload['polynomials']:
                for power, rows in enumerate(entry['coefficients']):
                    table[('Q', entry['w'], power)] = _parse_complex_matrix(rows)
        else:
            for label, entries in payload.items():
                for entry in entries:
                    table[(label, entry['order'], None)] = _parse_complex_matrix(entry['matrix'])
        return table

    cells: Dict[TableKey, Dict[Tuple[int, int], complex]] = {}
    for record in csv.DictReader(io.StringIO(text)):
        key = (record['series'], int(record['index']), int(record['power']) if record['power'] else None)
        cells.setdefault(key, {})[(int(record['row']), int(record['col']))] = complex(
            float(record['re']), float(record['im'])
        )
    for key, entries in cells.items():
        size = max(i for i, _ in entries) + 1
        matrix = np.zeros((size, size), dtype=complex)
        for (i, j), value in entries.items():
            matrix[i, j] = value
        table[key] = matrix
    return table
