"""Numerical tolerances shared by every module."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

TOL_ENV_VAR = "LINDBLAD_DOA_TOL"


@dataclass(frozen=True)
class ToleranceSet:
    """Thresholds used to turn exact conditions into numerical tests.

    Attributes
    ----------
    herm, trace, psd : float
        Absolute tolerances for density-matrix validation.
    perif : float
        Relative threshold on ``|Re λ|`` (scaled by ``max(1, spectral radius)``)
        below which an eigenvalue counts as peripheral.
    member : float
        Absolute tolerance on identification-vector deltas.
    rank : float
        Relative singular-value cut for numerical kernels.
    cluster : float
        Radius used to group degenerate peripheral eigenvalues.
    prune : float
        Drop tolerance for Hermitianized candidate observables.
    biorth : float
        Maximum allowed deviation from bi-orthogonality.
    traj_psd : float
        Relaxed PSD tolerance for propagated states.
    """

    herm: float = 1e-10
    trace: float = 1e-10
    psd: float = 1e-9
    perif: float = 1e-9
    member: float = 1e-7
    rank: float = 1e-10
    cluster: float = 1e-8
    prune: float = 1e-8
    biorth: float = 1e-8
    traj_psd: float = 1e-7

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if not (isinstance(value, (int, float)) and value > 0):
                raise ValueError(f"tolerance {f.name!r} must be a positive number, got {value!r}")

    def replace(self, **changes) -> "ToleranceSet":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_mapping(cls, mapping: dict) -> "ToleranceSet":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(mapping) - names
        if unknown:
            raise ValueError(f"unknown tolerance field(s): {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in mapping.items()})

    @classmethod
    def from_env(cls, environ=None) -> "ToleranceSet":
        """Defaults overridden by the JSON object in ``$LINDBLAD_DOA_TOL``."""
        environ = os.environ if environ is None else environ
        raw = environ.get(TOL_ENV_VAR)
        if not raw:
            return cls()
        data = json.loads(raw)
        if not isinstance(data, dict):
            raise ValueError(f"{TOL_ENV_VAR} must hold a JSON object")
        return cls.from_mapping(data)


DEFAULT_TOL = ToleranceSet()
