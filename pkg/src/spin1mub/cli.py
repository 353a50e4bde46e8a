"""Command-line front end.

Exit status: 0 on success, 2 on usage errors, 1 when an input or result fails
numerical validation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import mub, protocol, squeezing
from . import serialization as ser
from .spin import Direction, X, Y, Z, equal_up_to_phase, quadratic_evolution, rotation, spin_from_dim, spin_operators


class ValidationError(Exception):
    pass


def _direction(text: str) -> Direction:
    named = {"x": X, "y": Y, "z": Z}
    if text.lower() in named:
        return named[text.lower()]
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad axis {text!r}") from None
    try:
        if len(parts) == 3:
            return Direction.normalized(parts)
        if len(parts) == 2:
            return Direction.from_angles(*parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    raise argparse.ArgumentTypeError("axis is x|y|z, 'nx,ny,nz' or 'theta,phi'")


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _basis_choice(text: str):
    if text == "all":
        return text
    if text in ("0", "1", "2", "3"):
        return int(text)
    raise argparse.ArgumentTypeError("basis must be 0, 1, 2, 3 or 'all'")


def _load_state(path, dim=None):
    try:
        return ser.load_state(path, dim)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read state file {path}: {exc}") from None
    except ValueError as exc:
        raise ValidationError(f"invalid state in {path}: {exc}") from None


def _state_arg(args, dim=None):
    if args.state is not None:
        return _load_state(args.state, dim)
    if args.alpha is None:
        raise ValidationError("give --state FILE or --alpha A")
    return squeezing.alpha_state(args.kind, args.alpha)


def _mub_set(name: str, phi: float) -> mub.MubSet:
    return mub.standard_mubs3() if name == "standard" else protocol.generated_mub_set(phi)


def cmd_mubs(args):
    s = _mub_set(args.set, args.phi)
    if args.action == "show":
        return ser.mubset_to_json(s), 0
    report = mub.mub_set_valid(s, args.tol)
    return {
        "set": args.set,
        "phi": args.phi if args.set == "generated" else None,
        "max_deviation": report.max_deviation,
        "worst_pair": list(report.worst_pair),
        "max_orthonormality_error": report.max_orthonormality_error,
        "tol": report.tol,
        "pass": report.passed,
    }, 0 if report.passed else 1


def cmd_stats(args):
    psi = _state_arg(args)
    st = squeezing.spin_stats(psi, directions={"x": X, "y": Y, "z": Z})
    return {
        "spin": spin_from_dim(psi.size),
        "mean": st.mean,
        "length": st.length,
        "variances": st.variances,
        "covariance": st.covariance,
    }, 0


def cmd_squeeze(args):
    psi = _state_arg(args)
    return squeezing.squeezing_report(psi), 0


def cmd_evolve(args):
    psi = _load_state(args.state) if args.state else None
    d = psi.size if psi is not None else 3
    ops = spin_operators(spin_from_dim(d))
    if args.kind == "rot":
        u = rotation(ops, args.axis, args.t)
    else:
        u = quadratic_evolution(ops, args.axis, args.t)
    if psi is None:
        return {"operator": u}, 0
    return {"state": u @ psi}, 0


def cmd_hadamard(args):
    h = protocol.twisting_hadamard(args.phi)
    synth = equal_up_to_phase(h, protocol.twisting_unitary(args.phi))
    completion = protocol.fourier_completion(args.phi)
    return {
        "phi": args.phi,
        "matrix": h,
        "complex_hadamard": protocol.is_complex_hadamard(h),
        "twisting_axis": squeezing.null_direction(args.phi),
        "synthesis_overlap": synth.overlap,
        "synthesis_phase": synth.phase,
        "fourier_completion": completion,
    }, 0


def cmd_prepare(args):
    circuit, psi = protocol.prepare(args.basis, args.index, args.phi)
    return {"basis": args.basis, "index": args.index, "phi": args.phi,
            "circuit": circuit, "state": psi}, 0


def cmd_measure(args):
    psi = _load_state(args.state, 3)
    if args.basis == "all":
        counts = protocol.measure_all(psi, args.phi, args.shots, args.seed)
    else:
        counts = [protocol.measure(psi, args.basis, args.phi, args.shots, args.seed)]
    return ser.counts_to_json(counts, phi=args.phi), 0


def cmd_tomography(args):
    phi = args.phi
    if args.counts:
        try:
            counts, file_phi = ser.load_counts(args.counts)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read counts file: {exc}") from None
        if phi is None:
            phi = file_phi
        if [c.basis for c in counts] != [0, 1, 2, 3]:
            raise ValidationError("counts must cover basis_0 .. basis_3")
        p = protocol.probabilities_from_counts(counts)
    else:
        try:
            with open(args.probabilities) as fh:
                p = ser.probabilities_from_csv(fh.read())
        except OSError as exc:
            raise ValidationError(f"cannot read probability table: {exc}") from None
    rec = protocol.tomography(p, _mub_set(args.set, phi or 0.0))
    return {"set": args.set, "phi": phi or 0.0, "probabilities": p, "rho": rec.raw,
            "min_eigenvalue": rec.min_eigenvalue, "physical": rec.physical,
            "projected": rec.projected}, 0


def cmd_qkd(args):
    r = protocol.qkd_sift(args.rounds, args.bases, args.phi, args.seed, args.noise)
    out = ser.to_jsonable(r)
    out.update(sifted_fraction=r.sifted_fraction, qber=r.qber)
    return out, 0


def cmd_higher_spin(args):
    rows = []
    for d in args.d:
        if d < 2:
            raise ValidationError(f"need d >= 2, got {d}")
        rows.append(squeezing.fourier_state_stats(d))
    return rows if len(rows) > 1 else rows[0], 0


def fig1_rows() -> list[dict]:
    """Mean spin and transverse squeezing of every non-computational textbook MUB vector."""
    rows = []
    for b, basis in enumerate(mub.standard_mubs3()):
        if b == 0:
            continue
        for k, v in enumerate(basis):
            rep = squeezing.squeezing_report(v)
            e1, e2 = squeezing.transverse_frame(rep.mean)
            dvec = rep.min_direction.vector
            tilt = float(np.arctan2(dvec @ e2, dvec @ e1))
            if tilt > np.pi / 2:
                tilt -= np.pi
            elif tilt <= -np.pi / 2:
                tilt += np.pi
            rows.append({
                "basis": b, "index": k,
                "mean_x": float(rep.mean[0]), "mean_y": float(rep.mean[1]),
                "length": float(np.linalg.norm(rep.mean)),
                "azimuth": float(np.arctan2(rep.mean[1], rep.mean[0])),
                "var_min": rep.min_variance, "var_max": rep.max_variance,
                "tilt": tilt,
                "dir_x": float(dvec[0]), "dir_y": float(dvec[1]), "dir_z": float(dvec[2]),
            })
    return rows


def cmd_fig1(args):
    return fig1_rows(), 0


CSV_COMMANDS = {"fig1-data", "higher-spin"}


def _rows_to_csv(rows) -> str:
    rows = [ser.to_jsonable(r) for r in (rows if isinstance(rows, list) else [rows])]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spin1mub", description="Spin-1 mutually unbiased bases toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["json", "pretty", "csv"], default=None)

    state_src = argparse.ArgumentParser(add_help=False)
    state_src.add_argument("--state", help="JSON array of [re, im] amplitudes, m = s..-s")
    state_src.add_argument("--alpha", type=float)
    state_src.add_argument("--kind", choices=["polarized", "unpolarized"], default="polarized")

    p = sub.add_parser("mubs", parents=[fmt], help="show or verify a spin-1 MUB quadruple")
    p.add_argument("action", choices=["show", "verify"])
    p.add_argument("--set", choices=["standard", "generated"], default="standard")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_mubs)

    p = sub.add_parser("stats", parents=[fmt, state_src], help="mean spin and covariance")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("squeeze", parents=[fmt, state_src], help="transverse squeezing report")
    p.set_defaults(func=cmd_squeeze)

    p = sub.add_parser("evolve", parents=[fmt], help="rotate or twist a state")
    p.add_argument("--axis", type=_direction, required=True)
    p.add_argument("--kind", choices=["rot", "twist"], required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--state")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("hadamard", parents=[fmt], help="complex Hadamard from tetrahedral twisting")
    p.add_argument("--phi", type=float, default=0.0)
    p.set_defaults(func=cmd_hadamard)

    p = sub.add_parser("measure", parents=[fmt], help="sample a generated-basis measurement")
    p.add_argument("--basis", type=_basis_choice, required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--shots", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("prepare", parents=[fmt], help="pulse sequence preparing a generated-basis state")
    p.add_argument("--basis", type=int, choices=range(4), required=True)
    p.add_argument("--index", type=int, choices=range(3), required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("tomography", parents=[fmt], help="reconstruct a qutrit state from MUB statistics")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--counts")
    src.add_argument("--probabilities", help="CSV, 4 rows x 3 columns")
    p.add_argument("--set", choices=["standard", "generated"], default="generated")
    p.add_argument("--phi", type=float, default=None)
    p.set_defaults(func=cmd_tomography)

    p = sub.add_parser("qkd", parents=[fmt], help="qutrit key sifting simulation")
    p.add_argument("--rounds", type=_positive_int, required=True)
    p.add_argument("--bases", type=int, choices=[2, 4], default=2)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--noise", type=float, default=0.0)
    p.set_defaults(func=cmd_qkd)

    p = sub.add_parser("higher-spin", parents=[fmt], help="flat-state statistics for d = 2s+1")
    p.add_argument("--d", type=int, nargs="+", required=True)
    p.set_defaults(func=cmd_higher_spin)

    p = sub.add_parser("fig1-data", parents=[fmt], help="mean-spin and squeezing data for bases 1-3")
    p.set_defaults(func=cmd_fig1)
    return parser


def run(argv, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format or ("csv" if args.command == "fig1-data" else "json")
    if fmt == "csv" and args.command not in CSV_COMMANDS:
        print(f"spin1mub: --format csv is not available for {args.command}", file=stderr)
        return 2
    try:
        result, code = args.func(args)
    except (ValidationError, ValueError, IndexError) as exc:
        print(f"spin1mub: error: {exc}", file=stderr)
        return 1
    if fmt == "csv":
        stdout.write(_rows_to_csv(result))
    else:
        text = json.dumps(ser.to_jsonable(result), indent=2 if fmt == "pretty" else None)
        stdout.write(text + "\n")
    return code


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
