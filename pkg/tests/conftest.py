import numpy as np
import pytest

import lindblad_doa as ld
from lindblad_doa.models import build_xxz


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def xxz():
    """Four-site chain: system, generator, spectrum, observables, reference states."""
    sys = build_xxz()
    gen = ld.build_generator(sys)
    sd = ld.full_spectrum(gen)
    cs = ld.peripheral_observables(sd)
    rho1, rho2 = ld.reference_states()
    return dict(sys=sys, gen=gen, sd=sd, cs=cs, rho_ss1=rho1, rho_ss2=rho2)


def dephasing():
    return ld.LindbladSystem(np.zeros((2, 2)), (np.diag([1.0, -1.0]),))


def amplitude_damping():
    return ld.LindbladSystem(np.zeros((2, 2)), (np.array([[0, 1], [0, 0]]),))


def precession():
    return ld.LindbladSystem(np.diag([1.0, -1.0]), ())


PLUS = np.full((2, 2), 0.5, dtype=complex)  # (|0>+|1>)(<0|+<1|)/2


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
