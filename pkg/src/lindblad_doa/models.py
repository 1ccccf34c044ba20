"""Model builders: weighted Pauli strings and the boundary-driven XXZ chain."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .liouvillian import LindbladSystem, build_generator
from .operators import (
    IDENTITY_2,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    HilbertDim,
    basis_ket,
    embed_site,
    kron,
    ket_bra,
)

PAULI_SYMBOLS = {
    "I": IDENTITY_2,
    "X": SIGMA_X,
    "Y": SIGMA_Y,
    "Z": SIGMA_Z,
    "+": SIGMA_PLUS,
    "-": SIGMA_MINUS,
    "−": SIGMA_MINUS,  # unicode minus sign
}


@dataclass(frozen=True)
class PauliTerm:
    """``coefficient * P_1 (x) P_2 (x) ...`` with symbols from ``IXYZ+-``.

    ``+`` and ``-`` are the raising/lowering operators of the package's
    qubit convention: ``- = |1><0|`` and ``+ = |0><1|``.
    """

    coefficient: complex
    string: str

    def __post_init__(self):
        bad = set(self.string) - set(PAULI_SYMBOLS)
        if bad or not self.string:
            raise ValueError(f"invalid Pauli string {self.string!r}")

    def to_matrix(self) -> np.ndarray:
        return self.coefficient * kron(*(PAULI_SYMBOLS[c] for c in self.string))


def pauli_sum(terms: Iterable[PauliTerm], n_sites: int | None = None) -> np.ndarray:
    terms = list(terms)
    if not terms:
        if n_sites is None:
            raise ValueError("empty Pauli sum needs n_sites")
        return np.zeros((2**n_sites, 2**n_sites), dtype=complex)
    lengths = {len(t.string) for t in terms}
    if len(lengths) != 1 or (n_sites is not None and lengths != {n_sites}):
        raise ValueError(f"Pauli strings have inconsistent lengths {sorted(lengths)}")
    return sum(t.to_matrix() for t in terms)


@dataclass(frozen=True)
class XxzSpec:
    """Open XXZ chain with nonlocal source/sink couplings on the two ends.

    The couplings are ``g_minus * s1^- sN^+`` and ``g_plus * s1^+ sN^-``.
    """

    n_sites: int = 4
    g_minus: float = 2.0
    g_plus: float = 1.0

    def __post_init__(self):
        if int(self.n_sites) != self.n_sites or self.n_sites < 2:
            raise ValueError(f"n_sites must be an integer >= 2, got {self.n_sites!r}")


def site_op(op, site: int, n_sites: int) -> np.ndarray:
    return embed_site(op, site, HilbertDim.qubits(n_sites))


def xxz_hamiltonian(n_sites: int) -> np.ndarray:
    chain = HilbertDim.qubits(n_sites)
    sm = [embed_site(SIGMA_MINUS, j, chain) for j in range(n_sites)]
    sp = [embed_site(SIGMA_PLUS, j, chain) for j in range(n_sites)]
    sz = [embed_site(SIGMA_Z, j, chain) for j in range(n_sites)]
    h = np.zeros((chain.n, chain.n), dtype=complex)
    for j in range(n_sites - 1):
        h += 2 * (sm[j] @ sp[j + 1] + sp[j] @ sm[j + 1]) + sz[j] @ sz[j + 1]
    return h


def build_xxz(spec: XxzSpec = XxzSpec()) -> LindbladSystem:
    n = spec.n_sites
    chain = HilbertDim.qubits(n)
    first, last = 0, n - 1
    l1 = spec.g_minus * embed_site(SIGMA_MINUS, first, chain) @ embed_site(SIGMA_PLUS, last, chain)
    l2 = spec.g_plus * embed_site(SIGMA_PLUS, first, chain) @ embed_site(SIGMA_MINUS, last, chain)
    return LindbladSystem(xxz_hamiltonian(n), (l1, l2), chain)


def spin_current_op(n_sites: int, i: int) -> np.ndarray:
    """``J_i = X_i Y_{i+1} - Y_i X_{i+1}`` with 1-based ``2 <= i <= n_sites - 1``."""
    if not 2 <= i <= n_sites - 1:
        raise IndexError(f"spin current site must satisfy 2 <= i <= {n_sites - 1}, got {i}")
    a, b = i - 1, i  # 0-based sites i and i+1
    return (site_op(SIGMA_X, a, n_sites) @ site_op(SIGMA_Y, b, n_sites)
            - site_op(SIGMA_Y, a, n_sites) @ site_op(SIGMA_X, b, n_sites))


def total_magnetization(n_sites: int) -> np.ndarray:
    return sum(site_op(SIGMA_Z, j, n_sites) for j in range(n_sites))


def sector_projectors(n_sites: int) -> list[np.ndarray]:
    """Projectors onto total-``sigma^z`` sectors, ordered from ``m = n`` down to ``-n``."""
    diag = np.real(np.diag(total_magnetization(n_sites)))
    out = []
    for m in range(n_sites, -n_sites - 1, -2):
        out.append(np.diag((np.abs(diag - m) < 0.5).astype(complex)))
    return out


def sector_kets(n_sites: int, magnetization: int) -> list[np.ndarray]:
    """Basis kets of a sector in lexicographic order of their ``1``/``0`` strings."""
    strings = []
    for k in range(2**n_sites):
        bits = format(k, f"0{n_sites}b").replace("0", "x").replace("1", "0").replace("x", "1")
        if bits.count("1") - bits.count("0") == magnetization:
            strings.append(bits)
    return [basis_ket(s) for s in strings]


# States of the four-site example.
E_KETS = {1: "0111", 2: "1011", 3: "1101", 4: "1110"}


def psi_singlet() -> np.ndarray:
    return (basis_ket("0110") - basis_ket("1001")) / np.sqrt(2)


def rho_ss1() -> np.ndarray:
    return ket_bra(psi_singlet())


def initial_states() -> dict[str, np.ndarray]:
    """The three single-excitation-sector initial states used for the decay curves."""
    k = basis_ket
    sup = (k("1110") + k("1011"))
    return {
        "rho01": ket_bra(k("1101")),
        "rho02": 0.5 * ket_bra(sup),
        "rho03": ket_bra(k("0111")) / 2 + ket_bra(k("1011")) / 3 + ket_bra(k("1110")) / 6,
    }


def reference_states(spec: XxzSpec = XxzSpec()):
    """``(rho_ss1, rho_ss2)`` for the four-site chain.

    ``rho_ss2`` is computed as the long-time limit of the uniform mixture on
    the ``m = 2`` sector, never transcribed.
    """
    from .attraction import Limit, asymptotic_state
    from .spectral import full_spectrum

    if spec.n_sites != 4:
        raise ValueError("reference states are defined for the four-site chain")
    sys = build_xxz(spec)
    sd = full_spectrum(build_generator(sys))
    proj = sector_projectors(4)[1]
    outcome = asymptotic_state(sd, proj / np.trace(proj).real)
    if not isinstance(outcome, Limit):
        raise RuntimeError("uniform sector mixture has no limit")
    return rho_ss1(), outcome.state


def e_basis_block(rho) -> np.ndarray:
    """Matrix elements ``<e_i|rho|e_j>`` for ``i, j = 1..4`` (returned 0-based)."""
    kets = [basis_ket(E_KETS[i]) for i in range(1, 5)]
    return np.array([[np.vdot(a, rho @ b) for b in kets] for a in kets])
