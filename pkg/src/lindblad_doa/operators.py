"""Operator algebra on finite-dimensional Hilbert spaces.

Operators are plain complex ``numpy`` arrays of shape ``(N, N)``. Qubit basis
ordering follows ``|1> = (1, 0)^T`` and ``|0> = (0, 1)^T``; in multi-qubit
kets the leftmost symbol is the leftmost tensor factor, so ``|0110>`` is
indexed exactly as written.

Vectorization is column stacking, ``vec(A)[i + N*j] = A[i, j]``, and every
superoperator in the package is built for that convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence

import numpy as np

from .config import DEFAULT_TOL, ToleranceSet

# Single-qubit operators in the |1>=(1,0), |0>=(0,1) basis.
SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |1><0|
SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)  # |0><1|
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_X = SIGMA_PLUS + SIGMA_MINUS
SIGMA_Y = 1j * (SIGMA_PLUS - SIGMA_MINUS)
IDENTITY_2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class HilbertDim:
    """Dimension of a Hilbert space, optionally with its tensor factors."""

    n: int
    factors: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.n!r}")
        if self.factors is not None:
            factors = tuple(int(f) for f in self.factors)
            if any(f < 1 for f in factors):
                raise ValueError(f"factor dimensions must be positive, got {factors}")
            if math.prod(factors) != self.n:
                raise ValueError(f"factors {factors} do not multiply to n={self.n}")
            object.__setattr__(self, "factors", factors)

    @classmethod
    def qubits(cls, n_sites: int) -> "HilbertDim":
        return cls(2**n_sites, (2,) * n_sites)

    def tensor(self, other: "HilbertDim") -> "HilbertDim":
        mine = self.factors or (self.n,)
        theirs = other.factors or (other.n,)
        return HilbertDim(self.n * other.n, mine + theirs)


class DimensionError(ValueError):
    """Operators of incompatible shapes were combined."""


def as_operator(a, name: str = "operator") -> np.ndarray:
    """Return ``a`` as a finite square complex array (copying only if needed)."""
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``tr(a^dagger b)``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    _same_shape(a, b)
    return complex(np.vdot(a, b))


def hs_norm(a) -> float:
    """Norm induced by :func:`hs_inner` (the Frobenius norm)."""
    return float(np.linalg.norm(np.asarray(a, dtype=complex)))


def kron(*ops) -> np.ndarray:
    """Kronecker product of one or more operators, leftmost factor first."""
    if not ops:
        raise ValueError("kron needs at least one operator")
    return reduce(np.kron, (np.asarray(o, dtype=complex) for o in ops))


def embed_site(op, site: int, chain: HilbertDim) -> np.ndarray:
    """Place ``op`` on tensor factor ``site`` (0-based), identities elsewhere."""
    if chain.factors is None:
        raise ValueError("embed_site needs a HilbertDim with tensor factors")
    if not 0 <= site < len(chain.factors):
        raise IndexError(f"site {site} out of range for {len(chain.factors)} factors")
    op = as_operator(op)
    if op.shape[0] != chain.factors[site]:
        raise DimensionError(
            f"operator of dimension {op.shape[0]} cannot act on factor of dimension "
            f"{chain.factors[site]}"
        )
    left = math.prod(chain.factors[:site])
    right = math.prod(chain.factors[site + 1:])
    return np.kron(np.kron(np.eye(left), op), np.eye(right))


def vectorize(a) -> np.ndarray:
    """Column-stack an operator into a length ``N**2`` vector."""
    return np.asarray(a, dtype=complex).reshape(-1, order="F")


def devectorize(v) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    n = math.isqrt(v.size)
    if n * n != v.size:
        raise DimensionError(f"vector of length {v.size} is not a vectorized square matrix")
    return v.reshape((n, n), order="F")


def basis_ket(bits: str) -> np.ndarray:
    """Column vector for a qubit basis string such as ``"0110"``."""
    index = 0
    for ch in bits:
        if ch not in "01":
            raise ValueError(f"basis strings use only '0' and '1', got {bits!r}")
        index = 2 * index + (ch == "0")
    ket = np.zeros(2 ** len(bits), dtype=complex)
    ket[index] = 1.0
    return ket


def basis_index(bits: str) -> int:
    return int(np.flatnonzero(basis_ket(bits))[0])


def ket_bra(ket, bra=None) -> np.ndarray:
    ket = np.asarray(ket, dtype=complex).reshape(-1)
    bra = ket if bra is None else np.asarray(bra, dtype=complex).reshape(-1)
    return np.outer(ket, bra.conj())


@dataclass(frozen=True)
class DensityReport:
    """Outcome of :func:`validate_density`.

    ``violation`` names the first invariant that failed (``"hermiticity"``,
    ``"trace"`` or ``"psd"``) and ``magnitude`` how far it is off. Both are
    ``None`` when the operator is a valid density matrix.
    """

    herm_error: float
    trace_error: float
    min_eig: float
    violation: Optional[str] = None
    magnitude: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def __str__(self):
        if self.ok:
            return "valid density matrix"
        return f"{self.violation} violated by {self.magnitude:.3e}"


class InvalidStateError(ValueError):
    """Raised when an operator required to be a density matrix is not one."""

    def __init__(self, report: DensityReport, name: str = "state"):
        super().__init__(f"{name}: {report}")
        self.report = report


def validate_density(op, tol: ToleranceSet = DEFAULT_TOL, psd_tol: Optional[float] = None) -> DensityReport:
    """Check Hermiticity, unit trace and positivity without modifying ``op``."""
    op = as_operator(op, "density matrix")
    psd_tol = tol.psd if psd_tol is None else psd_tol
    herm_error = float(np.max(np.abs(op - op.conj().T)))
    trace_error = float(abs(np.trace(op) - 1.0))
    # eigvalsh reads one triangle only; it is meaningful once Hermiticity passed
    min_eig = float(np.linalg.eigvalsh(0.5 * (op + op.conj().T))[0])
    if herm_error > tol.herm:
        return DensityReport(herm_error, trace_error, min_eig, "hermiticity", herm_error)
    if trace_error > tol.trace:
        return DensityReport(herm_error, trace_error, min_eig, "trace", trace_error)
    if min_eig < -psd_tol:
        return DensityReport(herm_error, trace_error, min_eig, "psd", -min_eig)
    return DensityReport(herm_error, trace_error, min_eig)


def require_density(op, tol: ToleranceSet = DEFAULT_TOL, name: str = "state") -> np.ndarray:
    """Return ``op`` as an array, raising :class:`InvalidStateError` if invalid."""
    report = validate_density(op, tol)
    if not report.ok:
        raise InvalidStateError(report, name)
    return as_operator(op)


def is_hermitian(op, atol: float = DEFAULT_TOL.herm) -> bool:
    op = np.asarray(op)
    return bool(np.max(np.abs(op - op.conj().T), initial=0.0) <= atol)


def random_density(n: int, rng: np.random.Generator, rank: Optional[int] = None) -> np.ndarray:
    """Random density matrix of the given rank (Ginibre construction)."""
    rank = n if rank is None else rank
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * 0.5 * (a + a.conj().T)


def supported_on(states: Sequence[np.ndarray], rng: np.random.Generator) -> np.ndarray:
    """Random density matrix supported on the span of the given kets."""
    basis = np.column_stack([np.asarray(s, dtype=complex).reshape(-1) for s in states])
    inner = random_density(basis.shape[1], rng)
    return basis @ inner @ basis.conj().T
