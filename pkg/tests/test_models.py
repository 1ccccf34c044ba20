import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import lindblad_doa as ld
from lindblad_doa.models import (
    E_KETS,
    PauliTerm,
    XxzSpec,
    build_xxz,
    e_basis_block,
    initial_states,
    pauli_sum,
    reference_states,
    sector_kets,
    sector_projectors,
    spin_current_op,
    total_magnetization,
    xxz_hamiltonian,
)
from lindblad_doa.operators import SIGMA_MINUS, SIGMA_PLUS, SIGMA_X, SIGMA_Z, basis_ket, kron

# Four-significant-digit reference values of the current-carrying steady state, keyed by (row, col) of e_basis_block.
REFERENCE_RHO_SS2 = {
    (3, 3): 0.3401, (2, 2): 0.2770, (1, 1): 0.2308, (0, 0): 0.1521,
    (3, 2): 0.0833 + 0.0671j, (3, 1): 0.0370 + 0.0463j, (3, 0): 0.0370j,
    (2, 1): 0.0347 + 0.0671j, (2, 0): -0.0093 + 0.0463j, (1, 0): -0.0208 + 0.0671j,
}


def test_two_site_hamiltonian_by_hand():
    h = xxz_hamiltonian(2)
    expected = 2 * (kron(SIGMA_MINUS, SIGMA_PLUS) + kron(SIGMA_PLUS, SIGMA_MINUS)) + kron(SIGMA_Z, SIGMA_Z)
    assert np.array_equal(h, expected)
    assert np.array_equal(h, h.conj().T)
    # XX + YY = 2(+- + -+), so this is the isotropic-in-plane form
    np.testing.assert_allclose(h, kron(SIGMA_X, SIGMA_X) + kron(ld.operators.SIGMA_Y, ld.operators.SIGMA_Y)
                               + kron(SIGMA_Z, SIGMA_Z), atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hamiltonian_conserves_magnetization(n):
    h = xxz_hamiltonian(n)
    assert np.array_equal(h, h.conj().T)
    m = total_magnetization(n)
    assert np.max(np.abs(h @ m - m @ h)) < 1e-12
    projs = sector_projectors(n)
    np.testing.assert_allclose(sum(projs), np.eye(2**n))
    for p in projs:
        assert np.max(np.abs(h @ p - p @ h)) < 1e-12


def test_sector_projectors_four_sites():
    projs = sector_projectors(4)
    assert [int(round(np.trace(p).real)) for p in projs] == [1, 4, 6, 4, 1]
    for i, p in enumerate(projs):
        np.testing.assert_allclose(p @ p, p)
        np.testing.assert_allclose(p, p.conj().T)
        for q in projs[i + 1:]:
            assert np.max(np.abs(p @ q)) == 0
    kets = sector_kets(4, 2)
    assert len(kets) == 4
    np.testing.assert_allclose(sum(np.outer(k, k) for k in kets), projs[1])
    assert all(projs[1] @ basis_ket(s) @ basis_ket(s) == 1 for s in E_KETS.values())


def test_xxz_spectral_counts(xxz):
    assert len(ld.kernel_basis(xxz["gen"])) == 10
    assert xxz["sd"].J == 14 and xxz["sd"].J0 == 10


def test_couplings():
    sys = build_xxz()
    l1, l2 = sys.couplings
    assert np.array_equal(l1, 2 * kron(SIGMA_MINUS, np.eye(2), np.eye(2), SIGMA_PLUS))
    assert np.array_equal(l2, kron(SIGMA_PLUS, np.eye(2), np.eye(2), SIGMA_MINUS))
    custom = build_xxz(XxzSpec(3, g_minus=0.5, g_plus=0.0))
    assert np.max(np.abs(custom.couplings[1])) == 0
    with pytest.raises(ValueError):
        XxzSpec(n_sites=1)


def test_spin_current_operator():
    for n in (3, 4, 5):
        for i in range(2, n):
            j = spin_current_op(n, i)
            np.testing.assert_allclose(j, j.conj().T)
            assert abs(np.trace(j)) < 1e-12
    for bad in (1, 4):
        with pytest.raises(IndexError):
            spin_current_op(4, bad)


def test_steady_states_and_currents(xxz):
    rho1, rho2 = xxz["rho_ss1"], xxz["rho_ss2"]
    assert ld.is_steady_state(xxz["gen"], rho1).residual < 1e-10
    assert ld.is_steady_state(xxz["gen"], rho2).residual < 1e-9
    assert ld.validate_density(rho2).ok
    for i in (2, 3):
        j = spin_current_op(4, i)
        assert abs(np.trace(rho1 @ j)) < 1e-12
        assert abs(np.trace(rho2 @ j).real - 0.2684) < 5e-5


def test_rho_ss2_matches_four_digit_reference(xxz):
    block = e_basis_block(xxz["rho_ss2"])
    for (r, c), value in REFERENCE_RHO_SS2.items():
        assert abs(block[r, c] - value) < 5e-4, (r, c)
    # all weight lives in the m = 2 sector
    p = sector_projectors(4)[1]
    np.testing.assert_allclose(p @ xxz["rho_ss2"] @ p, xxz["rho_ss2"], atol=1e-12)


def test_reference_states_guard():
    with pytest.raises(ValueError):
        reference_states(XxzSpec(n_sites=3))


def test_initial_states_are_densities():
    p = sector_projectors(4)[1]
    for rho in initial_states().values():
        assert ld.validate_density(rho).ok
        np.testing.assert_allclose(p @ rho @ p, rho)


def test_pauli_terms():
    assert np.array_equal(PauliTerm(1, "-").to_matrix(), SIGMA_MINUS)
    assert np.array_equal(PauliTerm(1, "−").to_matrix(), SIGMA_MINUS)
    np.testing.assert_allclose(PauliTerm(0.5j, "XZ").to_matrix(), 0.5j * kron(SIGMA_X, SIGMA_Z))
    with pytest.raises(ValueError):
        PauliTerm(1, "XQ")
    with pytest.raises(ValueError):
        PauliTerm(1, "")
    with pytest.raises(ValueError):
        pauli_sum([PauliTerm(1, "X"), PauliTerm(1, "XX")])
    with pytest.raises(ValueError):
        pauli_sum([])
    assert pauli_sum([], 2).shape == (4, 4)


@given(st.integers(2, 4))
def test_hamiltonian_from_pauli_strings(n):
    terms = []
    for j in range(n - 1):
        for a, b, c in (("-", "+", 2), ("+", "-", 2), ("Z", "Z", 1)):
            s = ["I"] * n
            s[j], s[j + 1] = a, b
            terms.append(PauliTerm(c, "".join(s)))
    np.testing.assert_allclose(pauli_sum(terms, n), xxz_hamiltonian(n), atol=1e-14)
