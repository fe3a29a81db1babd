"""JSON state files: [re, im] pair encoding for pure vectors and densities.

The format is human-diffable and language-neutral:

    {
      "dims": [2, 2],
      "kind": "pure",
      "data": [[0.7071067811865476, 0.0], [0.0, 0.0], [0.0, 0.0],
               [0.7071067811865476, 0.0]],
      "label": "bell"
    }

Density files carry a row-major square matrix of [re, im] pairs instead of
a vector. Doubles survive a write/parse round trip bit-exactly (shortest
round-trip float repr on write, exact parse on read).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    MalformedFileError,
    SchemaViolationError,
    ValidationError,
    ValidationFailureError,
)
from .linalg import BipartiteDims
from .states import DensityMatrix, PureState, validate_density


@dataclass(frozen=True)
class StateFile:
    dims: tuple[int, int]
    kind: str  # "pure" | "density"
    data: np.ndarray
    label: str | None = None

    @classmethod
    def from_pure(cls, psi: PureState, label: str | None = None) -> "StateFile":
        return cls((psi.dims.dim_a, psi.dims.dim_b), "pure", psi.amplitudes, label)

    @classmethod
    def from_density(cls, rho: DensityMatrix, label: str | None = None) -> "StateFile":
        return cls((rho.dims.dim_a, rho.dims.dim_b), "density", rho.matrix, label)

    def bipartite_dims(self) -> BipartiteDims:
        return BipartiteDims(*self.dims)

    def as_pure(self) -> PureState:
        if self.kind != "pure":
            raise ValidationFailureError("kind", "expected a pure state file")
        return PureState(self.bipartite_dims(), self.data)

    def as_density(self) -> DensityMatrix:
        if self.kind != "density":
            raise ValidationFailureError("kind", "expected a density state file")
        return validate_density(self.data, self.bipartite_dims())

    def to_density(self) -> DensityMatrix:
        """Promote pure files to their projector; pass densities through."""
        if self.kind == "pure":
            return self.as_pure().to_density()
        return self.as_density()


def _pair(value) -> complex:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise SchemaViolationError(f"expected an [re, im] pair, got {value!r}")
    return complex(float(value[0]), float(value[1]))


def _encode(array: np.ndarray):
    if array.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in array]
    return [[[float(z.real), float(z.imag)] for z in row] for row in array]


def parse_state(path: str | Path) -> StateFile:
    """Parse and validate a state file.

    Raises MalformedFileError for unreadable JSON, SchemaViolationError for
    structural problems, and ValidationFailureError (with the offending
    field named) when the parsed state fails physical validation.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
        raw = json.loads(text)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedFileError(f"{path}: {exc}") from exc

    if not isinstance(raw, dict):
        raise SchemaViolationError("top-level value must be an object")
    unknown = set(raw) - {"dims", "kind", "data", "label"}
    if unknown:
        raise SchemaViolationError(f"unknown fields: {sorted(unknown)}")
    for key in ("dims", "kind", "data"):
        if key not in raw:
            raise SchemaViolationError(f"missing required field {key!r}")

    dims = raw["dims"]
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims)
    ):
        raise SchemaViolationError(f"dims must be two integers >= 1, got {dims!r}")
    kind = raw["kind"]
    if kind not in ("pure", "density"):
        raise SchemaViolationError(f"kind must be 'pure' or 'density', got {kind!r}")
    label = raw.get("label")
    if label is not None and not isinstance(label, str):
        raise SchemaViolationError(f"label must be a string, got {label!r}")

    total = dims[0] * dims[1]
    data = raw["data"]
    if not isinstance(data, list):
        raise SchemaViolationError("data must be an array")
    if kind == "pure":
        if len(data) != total:
            raise SchemaViolationError(f"data has {len(data)} amplitudes, expected {total}")
        array = np.array([_pair(entry) for entry in data])
    else:
        if len(data) != total or not all(
            isinstance(row, list) and len(row) == total for row in data
        ):
            raise SchemaViolationError(f"data must be a {total}x{total} matrix of pairs")
        array = np.array([[_pair(entry) for entry in row] for row in data])

    state = StateFile((dims[0], dims[1]), kind, array, label)
    try:
        if kind == "pure":
            state.as_pure()
        else:
            state.as_density()
    except ValidationError as exc:
        raise ValidationFailureError(type(exc).__name__.removesuffix("Error"), str(exc)) from exc
    array.flags.writeable = False
    return state


def write_state(path: str | Path, state: StateFile) -> None:
    """Write a state file; parse_state(write_state(x)) == x on values."""
    doc = {
        "dims": list(state.dims),
        "kind": state.kind,
        "data": _encode(np.asarray(state.data)),
    }
    if state.label is not None:
        doc["label"] = state.label
    Path(path).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
