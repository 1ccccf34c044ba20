"""Time propagation ``rho(t) = exp(G t) rho0`` with the dense matrix exponential.

This is deliberately independent of the spectral machinery so it can serve as
an oracle for the membership test.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from .liouvillian import Superoperator
from .operators import devectorize, hs_norm, vectorize

T_LONG_FACTOR = 40.0


class PropagationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: tuple[np.ndarray, ...]
    distances: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.times)

    def trace_errors(self) -> np.ndarray:
        return np.array([abs(np.trace(s) - 1.0) for s in self.states])

    def min_eigs(self) -> np.ndarray:
        return np.array([np.linalg.eigvalsh(0.5 * (s + s.conj().T))[0] for s in self.states])

    def to_csv(self, path, ref=None) -> None:
        """Write columns ``t, distance, trace_error, min_eig``."""
        dist = self.distances if ref is None else distance_curve(self, ref)
        if dist is None:
            dist = np.full(len(self), np.nan)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "distance", "trace_error", "min_eig"])
            for row in zip(self.times, dist, self.trace_errors(), self.min_eigs()):
                writer.writerow([repr(float(v)) for v in row])


def _is_uniform(times: np.ndarray) -> bool:
    if times.size < 3:
        return True
    steps = np.diff(times)
    return bool(np.allclose(steps, steps[0], rtol=1e-12, atol=0.0))


def _expm(m: np.ndarray) -> np.ndarray:
    out = scipy.linalg.expm(m)
    if not np.all(np.isfinite(out)):
        raise PropagationError("matrix exponential overflowed; generator is not a valid Lindbladian")
    return out


def propagate(gen: Superoperator, rho0, times: Sequence[float], ref=None) -> Trajectory:
    """States on the given time grid.

    A uniform grid reuses a single step propagator; otherwise one exponential
    is computed per distinct increment.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1-d sequence")
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ValueError("times must be nonnegative and sorted")
    g = np.asarray(gen.matrix, dtype=complex)
    v = vectorize(rho0)
    states = []
    t_prev = 0.0
    cache: dict[float, np.ndarray] = {}
    step = _expm(g * (times[1] - times[0])) if times.size > 1 and _is_uniform(times) else None
    for i, t in enumerate(times):
        if i == 0:
            if t > 0:
                v = _expm(g * t) @ v
        elif step is not None:
            v = step @ v
        else:
            dt = float(t - t_prev)
            if dt not in cache:
                cache[dt] = _expm(g * dt)
            v = cache[dt] @ v
        t_prev = t
        states.append(devectorize(v.copy()))
    traj = Trajectory(times, tuple(states))
    if ref is not None:
        traj = Trajectory(times, traj.states, distance_curve(traj, ref))
    return traj


def evolve(gen: Superoperator, rho0, t: float) -> np.ndarray:
    """Single state ``exp(G t) rho0``."""
    return devectorize(_expm(np.asarray(gen.matrix) * t) @ vectorize(rho0))


def distance_curve(traj: Trajectory, ref) -> np.ndarray:
    ref = np.asarray(ref, dtype=complex)
    if traj.states and traj.states[0].shape != ref.shape:
        raise ValueError(f"reference shape {ref.shape} does not match states {traj.states[0].shape}")
    return np.array([hs_norm(s - ref) for s in traj.states])


@dataclass(frozen=True)
class ConvergenceResult:
    converged: bool
    state: Optional[np.ndarray]
    t_final: float
    probe_distances: tuple[float, ...]


def converged_limit(
    gen: Superoperator,
    rho0,
    gap: Optional[float],
    tol: float = 1e-9,
    max_doublings: int = 12,
) -> ConvergenceResult:
    """Long-time limit found by propagation alone.

    Starts at ``t = 40 / gap`` and doubles ``t`` until successive probes differ
    by less than ``tol``. If the probe distance fails to decrease over three
    doublings the trajectory is declared to have no limit. ``gap=None``
    (nothing decays) uses ``t = 40``.
    """
    if gap is not None and gap <= 0:
        raise ValueError("gap must be positive")
    t = T_LONG_FACTOR / gap if gap else T_LONG_FACTOR
    g = np.asarray(gen.matrix, dtype=complex)
    prop = _expm(g * t)
    state = prop @ vectorize(rho0)
    dists: list[float] = []
    for _ in range(max_doublings):
        # prop currently advances by t; applying it doubles the elapsed time
        nxt = prop @ state
        d = float(np.linalg.norm(nxt - state))
        dists.append(d)
        state = nxt
        if d < tol:
            return ConvergenceResult(True, devectorize(state), 2 * t, tuple(dists))
        if len(dists) > 3 and d >= dists[-4]:
            break
        prop = prop @ prop
        t *= 2
    return ConvergenceResult(False, None, 2 * t, tuple(dists))
