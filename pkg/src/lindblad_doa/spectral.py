"""Peripheral spectrum of a Lindblad generator.

The generator of a valid Lindblad equation has no eigenvalues in the open
right half plane and is diagonalizable on the imaginary axis. The modes on the
axis (the *peripheral* block) never decay; everything else dies out
exponentially. This module extracts the peripheral right eigen-operators, a
bi-orthogonal dual family of left eigen-operators, and Hermitian observables
spanning the same real space as those left eigen-operators.

Degenerate eigenvalues are handled per cluster: for a cluster centred at
``mu`` a single SVD of ``G - mu I`` yields both the right null space (from
``V``) and the left null space (from ``U``), so only the pairing of
subspaces, never of individual eigenvectors, is relied upon.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .config import DEFAULT_TOL, ToleranceSet
from .liouvillian import Superoperator
from .operators import HilbertDim, devectorize, vectorize

# Gram blocks worse conditioned than this mean left and right null spaces are
# (numerically) orthogonal, i.e. a Jordan block sits on the imaginary axis.
_MAX_GRAM_CONDITION = 1e8


class SpectralDefectWarning(UserWarning):
    """Peripheral block looks defective or unstable; results are unreliable."""


class DefectivePeripheralError(RuntimeError):
    pass


@dataclass(frozen=True)
class Cluster:
    value: complex
    size: int  # algebraic multiplicity (eigenvalues grouped)
    geometric: int


@dataclass(frozen=True)
class SpectralData:
    """Eigen-structure of a generator, split into peripheral and decaying parts.

    ``right_ops`` and ``left_ops`` are ``N**2 x J`` arrays of vectorized
    operators (zero modes first, then oscillating modes ordered by frequency)
    with ``left_ops^dagger @ right_ops == I``. Column ``i`` of ``right_ops``
    satisfies ``G sigma_i = lambda_i sigma_i`` with
    ``lambda_i = peripheral_values[i]``; the matching left operator satisfies
    ``G^dagger omega_i = conj(lambda_i) omega_i``.
    """

    dim: HilbertDim
    eigenvalues: np.ndarray
    peripheral_idx: np.ndarray
    zero_idx: np.ndarray
    peripheral_values: np.ndarray
    right_ops: np.ndarray
    left_ops: np.ndarray
    decaying_basis: np.ndarray
    clusters: tuple[Cluster, ...]
    tau_perif: float
    gap: Optional[float]
    defect_flag: bool = False
    defect_reason: str = ""
    biorth_error: float = 0.0
    max_real: float = 0.0

    @property
    def J(self) -> int:
        return self.right_ops.shape[1]

    @property
    def J0(self) -> int:
        return int(np.sum(self.peripheral_values == 0))

    @property
    def n(self) -> int:
        return self.dim.n

    def right_op(self, i: int) -> np.ndarray:
        return devectorize(self.right_ops[:, i])

    def left_op(self, i: int) -> np.ndarray:
        return devectorize(self.left_ops[:, i])

    def coefficients(self, rho) -> np.ndarray:
        """Expansion coefficients ``tr(omega_i^dagger rho)`` on the peripheral modes."""
        return self.left_ops.conj().T @ vectorize(rho)

    def peripheral_projector(self) -> np.ndarray:
        """Spectral projector onto the peripheral invariant subspace."""
        return self.right_ops @ self.left_ops.conj().T


def _cluster_values(values: np.ndarray, radius: float) -> list[np.ndarray]:
    """Single-linkage grouping of peripheral eigenvalues along the imaginary axis."""
    if values.size == 0:
        return []
    order = np.argsort(values.imag, kind="stable")
    groups, current = [], [order[0]]
    for a, b in zip(order[:-1], order[1:]):
        if abs(values[b] - values[a]) <= radius:
            current.append(b)
        else:
            groups.append(np.array(current))
            current = [b]
    groups.append(np.array(current))
    return groups


def full_spectrum(gen: Superoperator, tol: ToleranceSet = DEFAULT_TOL) -> SpectralData:
    """Eigen-analysis of a generator matrix.

    Emits :class:`SpectralDefectWarning` (and sets ``defect_flag``) when an
    eigenvalue lies to the right of the imaginary axis, when a peripheral
    eigenvalue has deficient geometric multiplicity, or when the computed
    dual family fails the bi-orthogonality check.
    """
    if gen.kind != "generator":
        raise ValueError(f"full_spectrum expects a generator, got kind={gen.kind!r}")
    g = np.asarray(gen.matrix, dtype=complex)
    d = g.shape[0]
    raw = scipy.linalg.eigvals(g)
    order = np.lexsort((np.arange(d), raw.imag, raw.real))
    eigenvalues = raw[order]

    radius = float(np.max(np.abs(eigenvalues), initial=0.0))
    scale = max(1.0, radius)
    tau = tol.perif * scale
    peripheral_idx = np.flatnonzero(np.abs(eigenvalues.real) <= tau)
    zero_idx = np.flatnonzero(np.abs(eigenvalues) <= tau)
    decaying = np.flatnonzero(np.abs(eigenvalues.real) > tau)
    gap = float(np.min(np.abs(eigenvalues.real[decaying]))) if decaying.size else None
    max_real = float(np.max(eigenvalues.real, initial=-np.inf))

    reasons = []
    if max_real > tau:
        reasons.append(f"eigenvalue with positive real part {max_real:.3e}")

    # zero modes form one cluster, the rest are grouped along the axis
    nonzero_periph = np.setdiff1d(peripheral_idx, zero_idx)
    groups = []
    if zero_idx.size:
        groups.append((0j, zero_idx.size))
    for grp in _cluster_values(eigenvalues[nonzero_periph], tol.cluster * scale):
        beta = float(np.mean(eigenvalues[nonzero_periph][grp].imag))
        groups.append((1j * beta, grp.size))

    null_tol = tol.cluster * scale
    rights, lefts, values, clusters = [], [], [], []
    eye = np.eye(d)
    for mu, k in groups:
        u, s, vh = scipy.linalg.svd(g - mu * eye)
        geometric = int(np.sum(s <= null_tol))
        clusters.append(Cluster(mu, k, geometric))
        if geometric != k:
            reasons.append(
                f"eigenvalue {mu:.6g}: algebraic multiplicity {k}, geometric {geometric}"
            )
        right = vh[d - k:].conj().T
        left = u[:, d - k:]
        gram = left.conj().T @ right
        if np.linalg.cond(gram) > _MAX_GRAM_CONDITION:
            reasons.append(f"eigenvalue {mu:.6g}: left/right eigenspaces nearly orthogonal")
            dual = left
        else:
            dual = left @ np.linalg.inv(gram).conj().T
        rights.append(right)
        lefts.append(dual)
        values.extend([mu] * k)

    if rights:
        right_ops = np.hstack(rights)
        left_ops = np.hstack(lefts)
    else:
        right_ops = np.zeros((d, 0), dtype=complex)
        left_ops = np.zeros((d, 0), dtype=complex)
    peripheral_values = np.array(values, dtype=complex)

    biorth_error = float(
        np.max(np.abs(left_ops.conj().T @ right_ops - np.eye(right_ops.shape[1])), initial=0.0)
    )
    if biorth_error > tol.biorth:
        reasons.append(f"bi-orthogonality error {biorth_error:.3e}")

    if right_ops.shape[1]:
        decaying_basis = scipy.linalg.null_space(left_ops.conj().T, rcond=tol.rank)
    else:
        decaying_basis = np.eye(d, dtype=complex)

    defect = bool(reasons)
    reason = "; ".join(reasons)
    if defect:
        warnings.warn(f"peripheral spectrum is defective: {reason}", SpectralDefectWarning, stacklevel=2)

    return SpectralData(
        dim=gen.dim,
        eigenvalues=eigenvalues,
        peripheral_idx=peripheral_idx,
        zero_idx=zero_idx,
        peripheral_values=peripheral_values,
        right_ops=right_ops,
        left_ops=left_ops,
        decaying_basis=decaying_basis,
        clusters=tuple(clusters),
        tau_perif=tau,
        gap=gap,
        defect_flag=defect,
        defect_reason=reason,
        biorth_error=biorth_error,
        max_real=max_real,
    )


@dataclass(frozen=True)
class OscillatingPair:
    """Two Hermitian observables rotating into each other at angular frequency ``beta``.

    Under the adjoint generator ``x -> beta * y`` and ``y -> -beta * x``, so
    ``tr(x rho(t)) = A cos(beta t) + B sin(beta t)``.
    """

    x: np.ndarray
    y: np.ndarray
    beta: float


@dataclass(frozen=True)
class ConservedSet:
    """Hermitian observables spanning the non-decaying Heisenberg-picture modes.

    ``observables`` lists the conserved quantities first (``n_conserved`` of
    them, HS-orthonormal) followed by the ``x, y`` members of each oscillating
    pair. ``frequencies[k]`` is 0 for conserved quantities and ``beta`` for
    oscillating ones.
    """

    observables: tuple[np.ndarray, ...]
    frequencies: np.ndarray
    n_conserved: int
    oscillating_pairs: tuple[OscillatingPair, ...] = field(default=())

    def __len__(self):
        return len(self.observables)

    @property
    def conserved(self) -> tuple[np.ndarray, ...]:
        return self.observables[: self.n_conserved]

    def stacked(self) -> np.ndarray:
        """``J x N**2`` matrix whose rows are the vectorized observables."""
        if not self.observables:
            return np.zeros((0, 0), dtype=complex)
        return np.array([vectorize(o) for o in self.observables])


def _hermitian_span(candidates: np.ndarray, drop_tol: float) -> list[np.ndarray]:
    """HS-orthonormal Hermitian basis for the real span of Hermitian parts.

    ``candidates`` is an ``N**2 x k`` array of vectorized operators; it is
    orthonormalized first so the drop tolerance acts on unit-scale data.
    """
    if candidates.shape[1] == 0:
        return []
    q, _ = np.linalg.qr(candidates)
    herm = []
    for col in q.T:
        w = devectorize(col)
        herm += [0.5 * (w + w.conj().T), (w - w.conj().T) / 2j]
    # Hermitian matrices form a real vector space; embed as real vectors
    real_rows = np.array([np.concatenate([h.real.ravel(), h.imag.ravel()]) for h in herm])
    _, s, vh = np.linalg.svd(real_rows, full_matrices=False)
    size = q.shape[0]
    n = herm[0].shape[0]
    basis = []
    for row in vh[s > drop_tol]:
        h = (row[:size] + 1j * row[size:]).reshape(n, n)
        basis.append(0.5 * (h + h.conj().T))  # Hermitian already, up to rounding
    return basis


def peripheral_observables(sd: SpectralData, tol: ToleranceSet = DEFAULT_TOL) -> ConservedSet:
    """Hermitian observables whose real span equals that of the peripheral left modes."""
    if sd.defect_flag:
        raise DefectivePeripheralError(f"refusing to build observables: {sd.defect_reason}")

    j0 = sd.J0
    conserved = _hermitian_span(sd.left_ops[:, :j0], tol.prune)
    if len(conserved) != j0:
        raise DefectivePeripheralError(
            f"Hermitianization produced {len(conserved)} conserved observables, expected {j0}"
        )

    pairs = []
    values = sd.peripheral_values
    positive = sorted({v.imag for v in values[j0:] if v.imag > 0})
    negative_count = int(np.sum(values[j0:].imag < 0))
    positive_count = int(np.sum(values[j0:].imag > 0))
    if negative_count != positive_count:
        raise DefectivePeripheralError("oscillating eigenvalues are not closed under conjugation")
    for beta in positive:
        cols = [i for i in range(j0, sd.J) if values[i].imag == beta]
        q, _ = np.linalg.qr(sd.left_ops[:, cols])
        for c in range(q.shape[1]):
            # left mode satisfies G^dag w = -i beta w
            w = devectorize(q[:, c])
            x = 0.5 * (w + w.conj().T)
            y = (w - w.conj().T) / 2j
            pairs.append(OscillatingPair(x, y, float(beta)))

    observables = list(conserved)
    freqs = [0.0] * len(conserved)
    for p in pairs:
        observables += [p.x, p.y]
        freqs += [p.beta, p.beta]
    return ConservedSet(tuple(observables), np.array(freqs), len(conserved), tuple(pairs))


def identification_vector(cs: ConservedSet, rho) -> np.ndarray:
    """Expectation values ``tr(obs_k rho)`` in the order of ``cs.observables``."""
    rho = np.asarray(rho, dtype=complex)
    if not cs.observables:
        return np.zeros(0)
    if cs.observables[0].shape != rho.shape:
        raise ValueError(f"state shape {rho.shape} does not match observables {cs.observables[0].shape}")
    vals = cs.stacked().conj() @ vectorize(rho)  # tr(A^dag rho) with A Hermitian
    return vals.real


def analyze(gen: Superoperator, tol: ToleranceSet = DEFAULT_TOL) -> tuple[SpectralData, ConservedSet]:
    """Convenience wrapper: spectrum plus observables."""
    sd = full_spectrum(gen, tol)
    return sd, peripheral_observables(sd, tol)
