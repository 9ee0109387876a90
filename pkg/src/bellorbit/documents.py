"""JSON documents for states, witnesses and reports.

Complex entries are stored as ``[re, im]`` pairs. Floats go through Python's
shortest round-trip repr, so every double survives a write/read unchanged.
"""

import hashlib
import json

import numpy as np

from .chsh import WitnessKind, WitnessOperator
from .errors import DocumentError, InvalidDimension
from .states import _mat, validate_state

FORMAT_VERSION = "1"


def matrix_to_json(m):
    a = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def matrix_from_json(obj, dim=4):
    try:
        a = np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"matrix is not a numeric array: {exc}") from None
    if a.ndim != 3 or a.shape[2] != 2:
        raise DocumentError(f"matrix entries must be [re, im] pairs, got array of shape {a.shape}")
    if a.shape[:2] != (dim, dim):
        raise InvalidDimension(f"expected a {dim}x{dim} matrix, got {a.shape[0]}x{a.shape[1]}")
    return a[..., 0] + 1j * a[..., 1]


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def digest(data):
    if isinstance(data, str):
        data = data.encode()
    return "sha256:" + hashlib.sha256(data).hexdigest()


def state_document(rho, metadata=None):
    doc = {"format_version": FORMAT_VERSION, "matrix": matrix_to_json(_mat(rho))}
    if metadata:
        doc["metadata"] = metadata
    return doc


def write_state(path, rho, metadata=None):
    with open(path, "w") as fh:
        fh.write(dumps(state_document(rho, metadata)))


def parse_state(text):
    """Parse and validate a state document. Returns (DensityMatrix, metadata)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise DocumentError("state document needs a 'matrix' field")
    return validate_state(matrix_from_json(doc["matrix"])), doc.get("metadata", {})


def read_state(path):
    """Returns (DensityMatrix, metadata, digest of the file bytes)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode()
    except UnicodeDecodeError:
        raise DocumentError("state document is not UTF-8 text") from None
    rho, meta = parse_state(text)
    return rho, meta, digest(raw)


def witness_document(w, value_on_input=None):
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": w.kind.value,
        "bound": float(w.bound),
        "matrix": matrix_to_json(w.op),
        "certifying_unitary": None if w.certifying_unitary is None else matrix_to_json(w.certifying_unitary),
    }
    if value_on_input is not None:
        doc["value_on_input"] = float(value_on_input)
    return doc


def write_witness(path, w, value_on_input=None):
    with open(path, "w") as fh:
        fh.write(dumps(witness_document(w, value_on_input)))


def read_witness(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not valid JSON: {exc}") from None
    try:
        kind = WitnessKind(doc["kind"])
        cert = doc.get("certifying_unitary")
        return WitnessOperator(
            matrix_from_json(doc["matrix"]),
            kind,
            float(doc["bound"]),
            None if cert is None else matrix_from_json(cert),
        )
    except (KeyError, ValueError) as exc:
        if isinstance(exc, InvalidDimension):
            raise
        raise DocumentError(f"malformed witness document: {exc}") from None
