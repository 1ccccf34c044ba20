"""Attraction-domain membership for steady states of Lindblad dynamics.

A state ``rho0`` flows to the steady state ``rho_ss`` exactly when every
non-decaying observable has the same expectation value in both states. The
vector of those expectation values is the state's *identification vector*.
Equivalently, ``rho0 - rho_ss`` must lie in the span of the decaying
(generalized) eigen-operators of the generator, which is the affine
description implemented by :class:`AffineDoA`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, ToleranceSet
from .liouvillian import LindbladSystem, Superoperator, build_generator, is_steady_state, kernel_basis
from .operators import InvalidStateError, devectorize, hs_norm, require_density, validate_density, vectorize
from .spectral import ConservedSet, DefectivePeripheralError, SpectralData, identification_vector

# deltas inside [tol / MARGIN, tol * MARGIN] are flagged as marginal
MARGIN = 10.0


class NotSteadyError(ValueError):
    def __init__(self, residual: float, tol: float):
        super().__init__(f"state is not steady: ||L(rho)|| = {residual:.3e} > {tol:.1e}")
        self.residual = residual


def as_generator(sys_or_gen: LindbladSystem | Superoperator) -> Superoperator:
    if isinstance(sys_or_gen, Superoperator):
        return sys_or_gen
    return build_generator(sys_or_gen)


def steady_tol(sd: SpectralData, tol: ToleranceSet) -> float:
    """Residual bound for ``||L(rho)||`` used when accepting a steady state."""
    # scaled like the peripheral threshold: rounding in G rho grows with ||G||
    return 10 * tol.perif * max(1.0, float(np.max(np.abs(sd.eigenvalues), initial=0.0)))


@dataclass(frozen=True)
class AttractionCertificate:
    steady_state: np.ndarray
    candidate: np.ndarray
    deltas: np.ndarray
    tol_used: float
    id_steady: np.ndarray
    id_candidate: np.ndarray
    steady_residual: float

    @property
    def max_delta(self) -> float:
        return float(np.max(self.deltas, initial=0.0))

    @property
    def member(self) -> bool:
        return self.max_delta <= self.tol_used

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non-member"

    @property
    def marginal(self) -> bool:
        return self.tol_used / MARGIN <= self.max_delta <= self.tol_used * MARGIN

    @property
    def marginal_flags(self) -> np.ndarray:
        return (self.deltas >= self.tol_used / MARGIN) & (self.deltas <= self.tol_used * MARGIN)


def membership(
    sys_or_gen: LindbladSystem | Superoperator,
    sd: SpectralData,
    cs: ConservedSet,
    rho_ss,
    rho0,
    tol: ToleranceSet = DEFAULT_TOL,
) -> AttractionCertificate:
    """Decide whether ``rho0`` converges to the steady state ``rho_ss``.

    Raises :class:`NotSteadyError` if ``rho_ss`` is not annihilated by the
    generator and :class:`~lindblad_doa.operators.InvalidStateError` if either
    input is not a density matrix.
    """
    if sd.defect_flag:
        raise DefectivePeripheralError(sd.defect_reason)
    gen = as_generator(sys_or_gen)
    rho_ss = require_density(rho_ss, tol, "steady state")
    rho0 = require_density(rho0, tol, "initial state")
    check = is_steady_state(gen, rho_ss, steady_tol(sd, tol))
    if not check.steady:
        raise NotSteadyError(check.residual, steady_tol(sd, tol))
    id_ss = identification_vector(cs, rho_ss)
    id_0 = identification_vector(cs, rho0)
    return AttractionCertificate(
        steady_state=rho_ss,
        candidate=rho0,
        deltas=np.abs(id_0 - id_ss),
        tol_used=tol.member,
        id_steady=id_ss,
        id_candidate=id_0,
        steady_residual=check.residual,
    )


@dataclass(frozen=True)
class AffineDoA:
    """``rho_ss`` plus the span of decaying modes, intersected with the states.

    ``constraints`` are the Hermitian non-decaying observables with
    ``targets = tr(constraint rho_ss)``; ``decaying_basis`` is an orthonormal
    basis (as ``N**2``-vectors) of the directions a member may deviate in.
    """

    base: np.ndarray
    constraints: tuple[np.ndarray, ...]
    targets: np.ndarray
    decaying_basis: np.ndarray
    tol: ToleranceSet = field(default=DEFAULT_TOL, repr=False)

    @property
    def decaying_span_dim(self) -> int:
        return self.decaying_basis.shape[1]

    def offset_residual(self, rho) -> float:
        """Distance from ``rho - base`` to the decaying subspace."""
        diff = vectorize(rho) - vectorize(self.base)
        q = self.decaying_basis
        return float(np.linalg.norm(diff - q @ (q.conj().T @ diff)))

    def constraint_residuals(self, rho) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        vals = np.array([np.vdot(c, rho).real for c in self.constraints])
        return np.abs(vals - self.targets)

    def contains(self, rho) -> bool:
        """Membership via the affine description (independent of identification vectors)."""
        if not validate_density(rho, self.tol).ok:
            return False
        return self.offset_residual(rho) <= self.tol.member


def affine_doa(
    sys_or_gen: LindbladSystem | Superoperator, sd: SpectralData, cs: ConservedSet, rho_ss, tol: ToleranceSet = DEFAULT_TOL
) -> AffineDoA:
    if sd.defect_flag:
        raise DefectivePeripheralError(sd.defect_reason)
    gen = as_generator(sys_or_gen)
    rho_ss = require_density(rho_ss, tol, "steady state")
    check = is_steady_state(gen, rho_ss, steady_tol(sd, tol))
    if not check.steady:
        raise NotSteadyError(check.residual, steady_tol(sd, tol))
    return AffineDoA(
        base=rho_ss,
        constraints=cs.observables,
        targets=identification_vector(cs, rho_ss),
        decaying_basis=sd.decaying_basis,
        tol=tol,
    )


@dataclass(frozen=True)
class Limit:
    state: np.ndarray


@dataclass(frozen=True)
class Oscillatory:
    """No limit: the trajectory keeps rotating at these angular frequencies."""

    frequencies: np.ndarray
    magnitudes: np.ndarray
    time_average: np.ndarray


def ergodic_average(sd: SpectralData, rho0) -> np.ndarray:
    """Projection of ``rho0`` onto the zero modes (the long-time average)."""
    c = sd.coefficients(rho0)[: sd.J0]
    return devectorize(sd.right_ops[:, : sd.J0] @ c)


def asymptotic_state(sd: SpectralData, rho0, tol: ToleranceSet = DEFAULT_TOL) -> Limit | Oscillatory:
    """Long-time behaviour of ``exp(Gt) rho0`` read off the peripheral expansion."""
    if sd.defect_flag:
        raise DefectivePeripheralError(sd.defect_reason)
    coeffs = sd.coefficients(rho0)
    osc = coeffs[sd.J0:]
    average = ergodic_average(sd, rho0)
    active = np.abs(osc) > tol.member
    if np.any(active):
        return Oscillatory(
            frequencies=sd.peripheral_values[sd.J0:][active].imag.copy(),
            magnitudes=np.abs(osc[active]),
            time_average=average,
        )
    report = validate_density(average, tol)
    if not report.ok:
        raise InvalidStateError(report, "computed limit")
    return Limit(average)


@dataclass(frozen=True)
class SteadyStateReport:
    kernel_dim: int
    J0: int
    J: int
    representatives: tuple[np.ndarray, ...]
    unique: bool
    residuals: tuple[float, ...]

    @property
    def doa_measure_zero(self) -> bool:
        # non-unique steady states have attraction domains of measure zero
        return not self.unique


def steady_report(
    sys_or_gen: LindbladSystem | Superoperator,
    sd: SpectralData,
    tol: ToleranceSet = DEFAULT_TOL,
    dedup: float = 1e-8,
) -> SteadyStateReport:
    """Kernel dimension, sampled steady states and the uniqueness verdict.

    Representatives are long-time averages of the maximally mixed state and
    of every computational basis state, deduplicated at HS distance
    ``dedup``. Uniqueness is decided by ``J0 == 1``.
    """
    gen = as_generator(sys_or_gen)
    n = gen.n
    kernel_dim = len(kernel_basis(gen, tol))
    seeds = [np.eye(n, dtype=complex) / n]
    for k in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[k, k] = 1.0
        seeds.append(e)
    reps, residuals = [], []
    bound = steady_tol(sd, tol)
    for seed in seeds:
        cand = ergodic_average(sd, seed)
        if any(hs_norm(cand - r) <= dedup for r in reps):
            continue
        check = is_steady_state(gen, cand, bound)
        if not check.steady or not validate_density(cand, tol).ok:
            raise DefectivePeripheralError(
                f"sampled steady state failed validation (residual {check.residual:.3e})"
            )
        reps.append(cand)
        residuals.append(check.residual)
    return SteadyStateReport(
        kernel_dim=kernel_dim,
        J0=sd.J0,
        J=sd.J,
        representatives=tuple(reps),
        unique=sd.J0 == 1,
        residuals=tuple(residuals),
    )


def translate_identification(cs: ConservedSet, rho0, rho_a, rho_b, ps) -> np.ndarray:
    """Identification vectors of ``rho0 + p (rho_b - rho_a)`` for each ``p``."""
    rho0 = np.asarray(rho0, dtype=complex)
    shift = np.asarray(rho_b, dtype=complex) - np.asarray(rho_a, dtype=complex)
    return np.array([identification_vector(cs, rho0 + p * shift) for p in ps])
