"""Independent checks shared by several test modules."""

import numpy as np

from lindblad_doa.operators import basis_ket, ket_bra


def real_vec(h):
    h = np.asarray(h, dtype=complex)
    return np.concatenate([h.real.ravel(), h.imag.ravel()])


def real_span_residual(basis, target):
    """Distance (relative) from ``target`` to the real span of ``basis``."""
    a = np.column_stack([real_vec(b) for b in basis])
    t = real_vec(target)
    coef, *_ = np.linalg.lstsq(a, t, rcond=None)
    return np.linalg.norm(a @ coef - t) / max(np.linalg.norm(t), 1e-300)


def expectation_from_id(cs, op, id_vec):
    """tr(op rho) recovered from an identification vector, for op in the span of cs."""
    a = np.column_stack([real_vec(o) for o in cs.observables])
    coef, *_ = np.linalg.lstsq(a, real_vec(op), rcond=None)
    return float(coef @ id_vec)


def handwritten_observables(corrected=True):
    """The fourteen non-decaying observables of the four-site chain, written out by hand."""
    k = basis_ket
    kb = lambda a, b: ket_bra(k(a), k(b))  # noqa: E731
    psi = k("0110") - k("1001")
    from lindblad_doa.models import sector_projectors

    obs = list(sector_projectors(4))
    obs.append(kb("1111", "0000") + kb("0000", "1111"))
    obs.append(1j * (kb("1111", "0000") - kb("0000", "1111")))
    pairs = [("1110", "1000"), ("1101", "0100"), ("1011", "0010"), ("0111", "0001")]
    w8 = sum(kb(a, b) + kb(b, a) for a, b in pairs)
    w9 = sum(1j * (kb(a, b) - kb(b, a)) for a, b in pairs)
    if not corrected:
        # transcribed literally, with "|0010><1101|" where "|0010><1011|" is meant
        w8 = w8 - kb("0010", "1011") + kb("0010", "1101")
        w9 = w9 + 1j * kb("0010", "1011") - 1j * kb("0010", "1101")
    obs += [w8, w9, ket_bra(psi)]
    for end in ("1111", "0000"):
        e = k(end)
        obs.append(np.outer(e, psi.conj()) + np.outer(psi, e.conj()))
        obs.append(1j * (np.outer(e, psi.conj()) - np.outer(psi, e.conj())))
    return obs


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> bool:
    """Store and print one acceptance outcome; returns ``ok`` for asserting."""
    ACCEPTANCE[criterion] = (bool(ok), detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    return bool(ok)
