"""Lindblad generator and its Heisenberg-picture adjoint as dense matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np
import scipy.linalg

from .config import DEFAULT_TOL, ToleranceSet
from .operators import DimensionError, HilbertDim, as_operator, devectorize, hs_norm, vectorize

# Maximum entrywise disagreement between the adjoint built from its own formula
# and the conjugate transpose of the generator.
ADJOINT_CROSSCHECK_TOL = 1e-10


class InternalConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class LindbladSystem:
    """Hamiltonian ``H`` (hbar = 1) and coupling operators ``L_k``.

    Couplings carry the square root of their rate, so ``L = sqrt(g) * A``.
    """

    hamiltonian: np.ndarray
    couplings: tuple[np.ndarray, ...] = ()
    dim: HilbertDim = None
    herm_tol: float = field(default=DEFAULT_TOL.herm, repr=False, compare=False)

    def __post_init__(self):
        h = as_operator(self.hamiltonian, "hamiltonian")
        n = h.shape[0]
        couplings = tuple(as_operator(c, f"coupling {k}") for k, c in enumerate(self.couplings))
        for k, c in enumerate(couplings):
            if c.shape != h.shape:
                raise DimensionError(f"coupling {k} has shape {c.shape}, hamiltonian {h.shape}")
        herm_err = float(np.max(np.abs(h - h.conj().T)))
        if herm_err > self.herm_tol:
            raise ValueError(f"hamiltonian is not Hermitian (max deviation {herm_err:.3e})")
        dim = self.dim if self.dim is not None else HilbertDim(n)
        if dim.n != n:
            raise DimensionError(f"declared dimension {dim.n} but operators are {n}x{n}")
        object.__setattr__(self, "hamiltonian", h)
        object.__setattr__(self, "couplings", couplings)
        object.__setattr__(self, "dim", dim)

    @property
    def n(self) -> int:
        return self.dim.n

    def rhs(self, rho) -> np.ndarray:
        """Right side of the master equation evaluated by matrix products."""
        h = self.hamiltonian
        rho = np.asarray(rho, dtype=complex)
        out = -1j * (h @ rho - rho @ h)
        for c in self.couplings:
            cdc = c.conj().T @ c
            out = out + c @ rho @ c.conj().T - 0.5 * (cdc @ rho + rho @ cdc)
        return out

    def heisenberg_rhs(self, x) -> np.ndarray:
        """Adjoint generator applied to an observable by matrix products."""
        h = self.hamiltonian
        x = np.asarray(x, dtype=complex)
        out = 1j * (h @ x - x @ h)
        for c in self.couplings:
            cdc = c.conj().T @ c
            out = out + c.conj().T @ x @ c - 0.5 * (cdc @ x + x @ cdc)
        return out


@dataclass(frozen=True)
class Superoperator:
    """Linear map on operators as an ``N**2 x N**2`` matrix (column stacking)."""

    matrix: np.ndarray
    dim: HilbertDim
    kind: Literal["generator", "adjoint-generator", "other"] = "generator"

    @property
    def n(self) -> int:
        return self.dim.n


def _dissipator_terms(couplings: Sequence[np.ndarray], n: int, adjoint: bool) -> np.ndarray:
    eye = np.eye(n)
    out = np.zeros((n * n, n * n), dtype=complex)
    for c in couplings:  # fixed k-ascending order
        cdc = c.conj().T @ c
        jump = np.kron(c.T, c.conj().T) if adjoint else np.kron(c.conj(), c)
        out += jump - 0.5 * np.kron(eye, cdc) - 0.5 * np.kron(cdc.T, eye)
    return out


def build_generator(sys: LindbladSystem) -> Superoperator:
    """Matrix ``G`` with ``G vec(rho) = vec(L(rho))``.

    ``G = -i(I x H - H^T x I) + sum_k [conj(L_k) x L_k - (I x L_k^dag L_k)/2
    - ((L_k^dag L_k)^T x I)/2]``.
    """
    n, h = sys.n, sys.hamiltonian
    eye = np.eye(n)
    g = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    g += _dissipator_terms(sys.couplings, n, adjoint=False)
    return Superoperator(g, sys.dim, "generator")


def build_adjoint(sys: LindbladSystem, crosscheck: bool = True) -> Superoperator:
    """Heisenberg-picture generator, assembled from its own formula.

    With ``crosscheck`` the result is compared against the conjugate transpose
    of :func:`build_generator`; a mismatch raises
    :class:`InternalConsistencyError`.
    """
    n, h = sys.n, sys.hamiltonian
    eye = np.eye(n)
    a = 1j * (np.kron(eye, h) - np.kron(h.T, eye))
    a += _dissipator_terms(sys.couplings, n, adjoint=True)
    if crosscheck:
        g = build_generator(sys).matrix
        err = float(np.max(np.abs(a - g.conj().T), initial=0.0))
        if err > ADJOINT_CROSSCHECK_TOL:
            raise InternalConsistencyError(f"adjoint disagrees with generator^dagger by {err:.3e}")
    return Superoperator(a, sys.dim, "adjoint-generator")


def apply(superop: Superoperator, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (superop.n, superop.n):
        raise DimensionError(f"operator shape {x.shape} does not match superoperator on N={superop.n}")
    return devectorize(superop.matrix @ vectorize(x))


@dataclass(frozen=True)
class SteadyCheck:
    steady: bool
    residual: float


def is_steady_state(sys_or_gen, rho, tol: float = 1e-9) -> SteadyCheck:
    """``||L(rho)||_HS <= tol``. Accepts a system or a prebuilt generator."""
    gen = sys_or_gen if isinstance(sys_or_gen, Superoperator) else build_generator(sys_or_gen)
    residual = hs_norm(apply(gen, rho))
    return SteadyCheck(residual <= tol, residual)


def kernel_basis(superop: Superoperator, tol: ToleranceSet | float = DEFAULT_TOL) -> list[np.ndarray]:
    """HS-orthonormal basis of the numerical null space (via SVD).

    Singular values at or below ``tol.rank * sigma_max`` count as zero.
    """
    rank_tol = tol.rank if isinstance(tol, ToleranceSet) else float(tol)
    _, s, vh = scipy.linalg.svd(superop.matrix)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        null = np.eye(superop.matrix.shape[1], dtype=complex)
    else:
        null = vh[s <= rank_tol * smax].conj().T
    return [devectorize(null[:, k]) for k in range(null.shape[1])]
