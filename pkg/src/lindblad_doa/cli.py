"""Command-line front end.

Exit codes: 0 success (or "member"), 1 "non-member", 2 unreadable input or bad
arguments, 3 invalid model or state, 4 defective peripheral spectrum.
"""

from __future__ import annotations

import argparse
import logging
import sys
import warnings
from pathlib import Path

import numpy as np

from . import io
from .attraction import NotSteadyError, affine_doa, membership, steady_report
from .config import ToleranceSet
from .evolution import distance_curve, propagate
from .liouvillian import build_generator, kernel_basis
from .operators import InvalidStateError, require_density
from .spectral import DefectivePeripheralError, SpectralDefectWarning, full_spectrum, peripheral_observables

log = logging.getLogger("lindblad_doa")

EXIT_MEMBER = 0
EXIT_NON_MEMBER = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_DEFECT = 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_PARSE, message)


def _emit(doc, out: str | None) -> None:
    text = io.dumps(doc)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _load_system(path):
    try:
        return io.load_model(path)
    except (io.ModelFormatError, OSError) as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    except (ValueError, TypeError) as exc:
        raise CliError(EXIT_INVALID, f"invalid model: {exc}") from None


def _load_state(path, tol, name):
    try:
        rho = io.load_state(path)
    except (io.ModelFormatError, OSError) as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    try:
        return require_density(rho, tol, name)
    except InvalidStateError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from None


def _spectrum(gen, tol):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SpectralDefectWarning)
        sd = full_spectrum(gen, tol)
    if sd.defect_flag:
        log.warning("defective peripheral block: %s", sd.defect_reason)
    return sd


def _observables(sd, tol):
    try:
        return peripheral_observables(sd, tol)
    except DefectivePeripheralError as exc:
        raise CliError(EXIT_DEFECT, str(exc)) from None


def cmd_spectrum(args, tol) -> int:
    system = _load_system(args.model)
    gen = build_generator(system)
    sd = _spectrum(gen, tol)
    doc = {
        "dim": system.n,
        "eigenvalues": io.encode_vector(sd.eigenvalues),
        "peripheral_eigenvalues": io.encode_vector(sd.peripheral_values),
        "J": sd.J,
        "J0": sd.J0,
        "kernel_dim": len(kernel_basis(gen, tol)),
        "gap": sd.gap,
        "max_real": sd.max_real,
        "defect_flag": sd.defect_flag,
        "defect_reason": sd.defect_reason,
    }
    if sd.defect_flag:
        _emit(doc, args.json)
        return EXIT_DEFECT
    cs = _observables(sd, tol)
    doc["conserved_observables"] = [io.encode_matrix(o) for o in cs.observables]
    doc["observable_frequencies"] = [float(f) for f in cs.frequencies]
    _emit(doc, args.json)
    return 0


def cmd_membership(args, tol) -> int:
    if args.tol is not None:
        tol = tol.replace(member=args.tol)
    system = _load_system(args.model)
    rho_ss = _load_state(args.steady, tol, "steady state")
    rho0 = _load_state(args.initial, tol, "initial state")
    gen = build_generator(system)
    sd = _spectrum(gen, tol)
    cs = _observables(sd, tol)
    try:
        cert = membership(gen, sd, cs, rho_ss, rho0, tol)
    except NotSteadyError as exc:
        raise CliError(EXIT_INVALID, f"{exc} (residual {exc.residual:.6e})") from None
    doa = affine_doa(gen, sd, cs, rho_ss, tol)
    doc = {
        "verdict": cert.verdict,
        "member": cert.member,
        "deltas": [float(d) for d in cert.deltas],
        "max_delta": cert.max_delta,
        "tol": cert.tol_used,
        "marginal": cert.marginal,
        "marginal_flags": [bool(f) for f in cert.marginal_flags],
        "id_steady": [float(x) for x in cert.id_steady],
        "id_initial": [float(x) for x in cert.id_candidate],
        "observable_frequencies": [float(f) for f in cs.frequencies],
        "steady_residual": cert.steady_residual,
        "affine_offset_residual": doa.offset_residual(rho0),
        "J": sd.J,
        "J0": sd.J0,
    }
    _emit(doc, args.json)
    return EXIT_MEMBER if cert.member else EXIT_NON_MEMBER


def cmd_evolve(args, tol) -> int:
    if not args.tmax > 0:
        raise CliError(EXIT_PARSE, f"--tmax must be positive, got {args.tmax}")
    if args.steps < 2:
        raise CliError(EXIT_PARSE, f"--steps must be at least 2, got {args.steps}")
    system = _load_system(args.model)
    rho0 = _load_state(args.initial, tol, "initial state")
    ref = _load_state(args.ref, tol, "reference state") if args.ref else rho0
    gen = build_generator(system)
    times = np.linspace(0.0, args.tmax, args.steps)
    traj = propagate(gen, rho0, times)
    dist = distance_curve(traj, ref)
    if args.csv:
        traj.to_csv(args.csv, ref)
    else:
        print("t,distance,trace_error,min_eig")
        for row in zip(times, dist, traj.trace_errors(), traj.min_eigs()):
            print(",".join(repr(float(v)) for v in row))
    return 0


def cmd_report(args, tol) -> int:
    system = _load_system(args.model)
    gen = build_generator(system)
    sd = _spectrum(gen, tol)
    if sd.defect_flag:
        raise CliError(EXIT_DEFECT, sd.defect_reason)
    try:
        rep = steady_report(gen, sd, tol)
    except DefectivePeripheralError as exc:
        raise CliError(EXIT_DEFECT, str(exc)) from None
    doc = {
        "kernel_dim": rep.kernel_dim,
        "J0": rep.J0,
        "J": rep.J,
        "unique": rep.unique,
        "doa_measure_zero": rep.doa_measure_zero,
        "representatives": [io.encode_matrix(r) for r in rep.representatives],
        "residuals": list(rep.residuals),
    }
    _emit(doc, args.json)
    return 0


def cmd_export(args, tol) -> int:
    system = _load_system(args.model)
    doc = io.system_to_dict(system)
    if args.out:
        Path(args.out).write_text(io.dumps(doc) + "\n")
    else:
        print(io.dumps(doc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lindblad-doa", description="Attraction domains of Lindblad steady states.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="peripheral spectrum and conserved observables")
    sp.add_argument("model")
    sp.add_argument("--json", help="write report here instead of stdout")
    sp.set_defaults(func=cmd_spectrum)

    mp = sub.add_parser("membership", help="attraction-domain membership test")
    mp.add_argument("model")
    mp.add_argument("--steady", required=True)
    mp.add_argument("--initial", required=True)
    mp.add_argument("--tol", type=float, help="tolerance on identification-vector deltas")
    mp.add_argument("--json")
    mp.set_defaults(func=cmd_membership)

    ep = sub.add_parser("evolve", help="propagate a state and write a distance curve")
    ep.add_argument("model")
    ep.add_argument("--initial", required=True)
    ep.add_argument("--ref")
    ep.add_argument("--tmax", type=float, required=True)
    ep.add_argument("--steps", type=int, required=True, help="number of grid points (>= 2)")
    ep.add_argument("--csv")
    ep.set_defaults(func=cmd_evolve)

    rp = sub.add_parser("report", help="steady-state report")
    rp.add_argument("model")
    rp.add_argument("--json")
    rp.set_defaults(func=cmd_report)

    xp = sub.add_parser("export-model", help="write the model in dense form")
    xp.add_argument("model")
    xp.add_argument("--out")
    xp.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s: %(message)s")
        try:
            tol = ToleranceSet.from_env()
        except ValueError as exc:
            raise CliError(EXIT_PARSE, f"bad tolerance override: {exc}") from None
        return args.func(args, tol)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
