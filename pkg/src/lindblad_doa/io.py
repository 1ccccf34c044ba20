"""JSON model and state files.

Complex numbers are ``[re, im]`` pairs; a dense matrix is a list of rows of
such pairs. An operator in a model file is either a dense matrix or a list of
Pauli terms ``{"coeff": [re, im], "string": "Z+-I"}``.

Example model::

    {"sites": 1,
     "hamiltonian": [{"coeff": [1, 0], "string": "Z"}],
     "lindblad_ops": [[[[0, 0], [1, 0]], [[0, 0], [0, 0]]]]}

or a preset::

    {"preset": "xxz", "n_sites": 4}
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .liouvillian import LindbladSystem
from .models import PauliTerm, XxzSpec, build_xxz, pauli_sum
from .operators import HilbertDim


class ModelFormatError(ValueError):
    """Malformed file contents (bad JSON or wrong structure)."""


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_matrix(a) -> list:
    a = np.asarray(a, dtype=complex)
    return [[encode_complex(z) for z in row] for row in a]


def encode_vector(v) -> list:
    return [encode_complex(z) for z in np.asarray(v, dtype=complex).ravel()]


def _decode_complex(x, where: str) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if (isinstance(x, list) and len(x) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)):
        return complex(x[0], x[1])
    raise ModelFormatError(f"{where}: expected [re, im], got {x!r}")


def decode_matrix(data, where: str = "matrix") -> np.ndarray:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ModelFormatError(f"{where}: expected a list of rows")
    n = len(data)
    if any(len(r) != n for r in data):
        raise ModelFormatError(f"{where}: matrix must be square")
    return np.array([[_decode_complex(x, where) for x in row] for row in data], dtype=complex)


def _is_pauli_list(data) -> bool:
    return isinstance(data, list) and all(isinstance(t, dict) for t in data)


def decode_operator(data, n_sites: int | None, where: str) -> np.ndarray:
    """Dense matrix, Pauli-term list, or ``{"dense": ...}`` / ``{"pauli": ...}``."""
    if isinstance(data, dict):
        keys = {"dense", "pauli"} & set(data)
        if len(keys) != 1:
            raise ModelFormatError(f"{where}: give exactly one of 'dense' or 'pauli'")
        data = data[keys.pop()]
    if _is_pauli_list(data):
        terms = []
        for k, t in enumerate(data):
            if set(t) != {"coeff", "string"}:
                raise ModelFormatError(f"{where}[{k}]: Pauli term needs exactly 'coeff' and 'string'")
            if not isinstance(t["string"], str):
                raise ModelFormatError(f"{where}[{k}]: 'string' must be a string")
            try:
                terms.append(PauliTerm(_decode_complex(t["coeff"], f"{where}[{k}]"), t["string"]))
            except ValueError as exc:
                raise ModelFormatError(f"{where}[{k}]: {exc}") from None
        try:
            return pauli_sum(terms, n_sites)
        except ValueError as exc:
            raise ModelFormatError(f"{where}: {exc}") from None
    return decode_matrix(data, where)


def _parse_preset(doc: dict) -> LindbladSystem:
    name = doc.get("preset", doc.get("model"))
    if name != "xxz":
        raise ModelFormatError(f"unknown preset {name!r}")
    params = {k: doc[k] for k in ("n_sites", "g_minus", "g_plus") if k in doc}
    return build_xxz(XxzSpec(**params))


def system_from_dict(doc: Any) -> LindbladSystem:
    """Build a system from a parsed model document.

    Structural problems raise :class:`ModelFormatError`; physically invalid
    content (non-Hermitian Hamiltonian, dimension mismatch) raises plain
    :class:`ValueError`.
    """
    if not isinstance(doc, dict):
        raise ModelFormatError("model file must hold a JSON object")
    if "preset" in doc or "model" in doc:
        return _parse_preset(doc)
    n_sites = doc.get("sites")
    if n_sites is not None:
        dim = HilbertDim.qubits(int(n_sites))
    elif "dim" in doc:
        dim = HilbertDim(int(doc["dim"]))
    else:
        dim = None
    if "hamiltonian" not in doc:
        raise ModelFormatError("model needs a 'hamiltonian'")
    h_raw = doc["hamiltonian"]
    if h_raw == [] and dim is not None:
        h = np.zeros((dim.n, dim.n), dtype=complex)
    else:
        h = decode_operator(h_raw, n_sites, "hamiltonian")
    ops = doc.get("lindblad_ops", [])
    if not isinstance(ops, list):
        raise ModelFormatError("'lindblad_ops' must be a list")
    couplings = tuple(decode_operator(op, n_sites, f"lindblad_ops[{k}]") for k, op in enumerate(ops))
    return LindbladSystem(h, couplings, dim)


def system_to_dict(sys: LindbladSystem) -> dict:
    """Dense-form model document; re-parses to an identical system."""
    doc: dict[str, Any] = {}
    if sys.dim.factors and set(sys.dim.factors) == {2}:
        doc["sites"] = len(sys.dim.factors)
    else:
        doc["dim"] = sys.n
    doc["hamiltonian"] = encode_matrix(sys.hamiltonian)
    doc["lindblad_ops"] = [encode_matrix(c) for c in sys.couplings]
    return doc


def _load_json(path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_model(path) -> LindbladSystem:
    return system_from_dict(_load_json(path))


def save_model(sys: LindbladSystem, path) -> None:
    Path(path).write_text(json.dumps(system_to_dict(sys)))


def load_state(path) -> np.ndarray:
    doc = _load_json(path)
    if isinstance(doc, dict):
        if "matrix" not in doc:
            raise ModelFormatError(f"{path}: state object needs a 'matrix'")
        doc = doc["matrix"]
    return decode_matrix(doc, str(path))


def save_state(rho, path) -> None:
    Path(path).write_text(json.dumps(encode_matrix(rho)))


def dumps(doc: Any) -> str:
    """JSON text; floats use the shortest repr that round-trips exactly."""

    def clean(x):
        if isinstance(x, float) and not math.isfinite(x):
            return None
        if isinstance(x, dict):
            return {k: clean(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [clean(v) for v in x]
        return x

    return json.dumps(clean(doc), indent=1)
