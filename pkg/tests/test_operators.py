import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lindblad_doa.config import ToleranceSet
from lindblad_doa.operators import (
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_Z,
    DimensionError,
    HilbertDim,
    InvalidStateError,
    basis_ket,
    devectorize,
    embed_site,
    hs_inner,
    hs_norm,
    ket_bra,
    kron,
    random_density,
    require_density,
    validate_density,
    vectorize,
)

I2 = np.eye(2)


def random_matrix(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


seeds = st.integers(0, 2**32 - 1)


def test_hilbert_dim_invariants():
    assert HilbertDim.qubits(3) == HilbertDim(8, (2, 2, 2))
    with pytest.raises(ValueError):
        HilbertDim(0)
    with pytest.raises(ValueError):
        HilbertDim(6, (2, 2))
    assert HilbertDim(2, (2,)).tensor(HilbertDim(3)) == HilbertDim(6, (2, 3))


def test_hs_inner_examples(rng):
    assert hs_inner(I2, I2) == 2
    assert hs_inner(SIGMA_Z, SIGMA_Z) == 2
    a, b = random_matrix(rng, 3), random_matrix(rng, 3)
    brute = sum(np.conj(a[i, j]) * b[i, j] for i in range(3) for j in range(3))
    assert hs_inner(a, b) == pytest.approx(brute, abs=1e-12)
    assert hs_inner(a, b) == pytest.approx(np.conj(hs_inner(b, a)), abs=1e-12)
    with pytest.raises(DimensionError):
        hs_inner(I2, np.eye(3))


def test_hs_norm_examples():
    assert hs_norm(np.zeros((2, 2))) == 0
    assert hs_norm(I2 / 2) == pytest.approx(1 / np.sqrt(2))
    psi = basis_ket("0110") - basis_ket("1001")
    assert hs_norm(ket_bra(psi / np.linalg.norm(psi))) == pytest.approx(1.0)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_hs_inner_sesquilinear_and_triangle(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_matrix(rng, 3) for _ in range(3))
    alpha, beta = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
    assert hs_inner(a, alpha * b + beta * c) == pytest.approx(alpha * hs_inner(a, b) + beta * hs_inner(a, c))
    assert hs_inner(alpha * a, b) == pytest.approx(np.conj(alpha) * hs_inner(a, b))
    assert hs_norm(a + b) <= hs_norm(a) + hs_norm(b) + 1e-12


def test_kron_examples(rng):
    np.testing.assert_array_equal(kron(I2, I2), np.eye(4))
    expected = np.zeros((4, 4))
    expected[0, 2] = expected[1, 3] = 1
    # sigma^- = |1><0| maps index 1 to 0 on the first factor
    np.testing.assert_array_equal(kron(SIGMA_MINUS, I2), expected)
    a, b, c, d = (random_matrix(rng, 2) for _ in range(4))
    np.testing.assert_allclose(kron(a, b) @ kron(c, d), kron(a @ c, b @ d), atol=1e-12)


def test_kron_associative_integers(rng):
    a, b, c = (rng.integers(-5, 5, size=(2, 2)) for _ in range(3))
    np.testing.assert_array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_embed_site():
    chain2 = HilbertDim.qubits(2)
    np.testing.assert_array_equal(embed_site(SIGMA_Z, 0, chain2), np.kron(SIGMA_Z, I2))
    chain4 = HilbertDim.qubits(4)
    np.testing.assert_array_equal(embed_site(SIGMA_MINUS, 0, chain4), np.kron(SIGMA_MINUS, np.eye(8)))
    with pytest.raises(IndexError):
        embed_site(SIGMA_Z, 4, chain4)
    with pytest.raises(ValueError):
        embed_site(SIGMA_Z, 0, HilbertDim(4))


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(0, 2), st.integers(0, 2))
def test_embedded_ops_at_distinct_sites_commute(seed, i, j):
    rng = np.random.default_rng(seed)
    chain = HilbertDim.qubits(3)
    a = embed_site(random_matrix(rng, 2), i, chain)
    b = embed_site(random_matrix(rng, 2), j, chain)
    if i != j:
        np.testing.assert_allclose(a @ b, b @ a, atol=1e-12)


def test_vectorize_examples():
    np.testing.assert_array_equal(vectorize(I2), [1, 0, 0, 1])
    # |1><0| with |1> = (1,0): entry at row 0, column 1
    np.testing.assert_array_equal(vectorize(SIGMA_MINUS), [0, 0, 1, 0])
    a = np.arange(9).reshape(3, 3)
    assert all(vectorize(a)[i + 3 * j] == a[i, j] for i in range(3) for j in range(3))
    with pytest.raises(DimensionError):
        devectorize(np.ones(5))


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 5))
def test_vectorize_roundtrip_and_inner(seed, n):
    rng = np.random.default_rng(seed)
    a, b = random_matrix(rng, n), random_matrix(rng, n)
    np.testing.assert_array_equal(devectorize(vectorize(a)), a)
    assert np.vdot(vectorize(a), vectorize(b)) == pytest.approx(hs_inner(a, b), abs=1e-10)


def test_validate_density_examples():
    assert validate_density(I2 / 2).ok
    rep = validate_density(np.diag([1.5, -0.5]))
    assert rep.violation == "psd"
    assert rep.magnitude == pytest.approx(0.5)
    psi = (basis_ket("0110") - basis_ket("1001")) / np.sqrt(2)
    assert validate_density(ket_bra(psi)).ok
    assert validate_density(np.array([[0.5, 1], [0, 0.5]])).violation == "hermiticity"
    assert validate_density(np.eye(2)).violation == "trace"


def test_validate_density_does_not_mutate():
    a = np.diag([1.5, -0.5]).astype(complex)
    before = a.copy()
    validate_density(a)
    with pytest.raises(InvalidStateError) as info:
        require_density(a)
    assert info.value.report.violation == "psd"
    np.testing.assert_array_equal(a, before)


def test_validate_density_tolerances():
    tol = ToleranceSet(psd=1e-3)
    assert validate_density(np.diag([1 + 1e-4, -1e-4]), tol).ok
    assert not validate_density(np.diag([1 + 1e-4, -1e-4])).ok


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 6))
def test_random_density_is_valid(seed, n):
    rng = np.random.default_rng(seed)
    assert validate_density(random_density(n, rng)).ok


def test_basis_convention():
    np.testing.assert_array_equal(basis_ket("1"), [1, 0])
    np.testing.assert_array_equal(basis_ket("0"), [0, 1])
    assert np.flatnonzero(basis_ket("1111"))[0] == 0
    assert np.flatnonzero(basis_ket("0000"))[0] == 15
    np.testing.assert_array_equal(SIGMA_PLUS @ basis_ket("1"), basis_ket("0"))
