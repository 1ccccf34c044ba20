"""Random Lindblad systems with controlled steady-state structure.

Each family comes with *seed states*: states known, by construction, to have a
long-time limit. They let the propagation oracle produce steady states
without going through the spectral code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .liouvillian import LindbladSystem
from .operators import random_density, random_hermitian, random_unitary

FAMILIES = ("generic", "block", "shifted", "commuting", "hamiltonian")


@dataclass(frozen=True)
class SampledSystem:
    system: LindbladSystem
    family: str
    blocks: tuple[np.ndarray, ...]  # isometries (N x k) onto invariant blocks
    seeds: tuple[np.ndarray, ...]


def _random_op(k: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))) / np.sqrt(2 * k)


def _partition(n: int, rng: np.random.Generator) -> list[int]:
    cuts = sorted(rng.choice(np.arange(1, n), size=rng.integers(1, n), replace=False))
    edges = [0, *cuts, n]
    return [b - a for a, b in zip(edges[:-1], edges[1:])]


def _block_diag(mats) -> np.ndarray:
    return scipy.linalg.block_diag(*mats).astype(complex)


def _isometries(sizes, u) -> list[np.ndarray]:
    out, start = [], 0
    for k in sizes:
        out.append(u[:, start:start + k])
        start += k
    return out


def _block_seeds(blocks, rng, count=3) -> list[np.ndarray]:
    seeds = []
    for _ in range(count):
        v = blocks[rng.integers(len(blocks))]
        seeds.append(v @ random_density(v.shape[1], rng) @ v.conj().T)
    return seeds


def random_system(n: int, family: str, rng: np.random.Generator) -> SampledSystem:
    """Draw an ``n``-level system from ``family`` (see :data:`FAMILIES`)."""
    u = random_unitary(n, rng)
    rot = lambda a: u @ a @ u.conj().T  # noqa: E731

    if family == "generic":
        h = random_hermitian(n, rng)
        ls = [_random_op(n, rng, 1.5) for _ in range(rng.integers(1, 3))]
        sys = LindbladSystem(h, tuple(ls))
        return SampledSystem(sys, family, (np.eye(n, dtype=complex),), tuple(random_density(n, rng) for _ in range(3)))

    if family == "block":
        sizes = _partition(n, rng)
        h = _block_diag([random_hermitian(k, rng) for k in sizes])
        ls = [_block_diag([_random_op(k, rng, 1.5) for k in sizes]) for _ in range(rng.integers(1, 3))]
        blocks = _isometries(sizes, u)
        sys = LindbladSystem(rot(h), tuple(rot(c) for c in ls))
        return SampledSystem(sys, family, tuple(blocks), tuple(_block_seeds(blocks, rng)))

    if family == "shifted":
        # two copies of one dissipative block, energies offset: inter-block coherences oscillate
        k = n // 2
        shift = rng.uniform(0.5, 2.0)
        h1 = random_hermitian(k, rng)
        l1 = [_random_op(k, rng, 1.5) for _ in range(rng.integers(1, 3))]
        sizes = [k, k] + ([n - 2 * k] if n - 2 * k else [])
        extra_h = [random_hermitian(n - 2 * k, rng)] if n - 2 * k else []
        h = _block_diag([h1, h1 + shift * np.eye(k)] + extra_h)
        ls = [_block_diag([c, c] + ([_random_op(n - 2 * k, rng)] if n - 2 * k else [])) for c in l1]
        blocks = _isometries(sizes, u)
        sys = LindbladSystem(rot(h), tuple(rot(c) for c in ls))
        return SampledSystem(sys, family, tuple(blocks), tuple(_block_seeds(blocks, rng)))

    if family == "commuting":
        # H and all couplings diagonal in one basis: populations conserved, coherences decay or rotate
        h = np.diag(rng.normal(size=n)).astype(complex)
        ls = [np.diag(rng.normal(size=n) + 1j * rng.normal(size=n)) for _ in range(rng.integers(1, 3))]
        blocks = _isometries([1] * n, u)
        sys = LindbladSystem(rot(h), tuple(rot(c) for c in ls))
        seeds = [rot(np.diag(rng.dirichlet(np.ones(n))).astype(complex)) for _ in range(3)]
        return SampledSystem(sys, family, tuple(blocks), tuple(seeds))

    if family == "hamiltonian":
        h = random_hermitian(n, rng)
        _, vecs = np.linalg.eigh(h)
        seeds = [vecs @ np.diag(rng.dirichlet(np.ones(n))) @ vecs.conj().T for _ in range(3)]
        blocks = tuple(vecs[:, [j]] for j in range(n))
        return SampledSystem(LindbladSystem(h, ()), family, blocks, tuple(seeds))

    raise ValueError(f"unknown family {family!r}")
