"""Command-line surface: fidelity computation, reconstruction, map
classification, and the theorem harness, with JSON in and JSON out.

Matrix files: {"dim": d, "re": [[...]], "im": [[...]]} (row-major, entry
(i,j) = re[i][j] + i*im[i][j]). Map specs: {"kind": ..., "dim": ...,
"params": {...}}. Reports record the tool version, seed, and tolerances so a
rerun reproduces them byte for byte.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Any

import numpy as np

from . import __version__, charact, mapzoo, matcore, wigner
from .fidelity import BadM, fidelity as fidelity_value, partial_fidelity
from .matcore import DensityOperator, MatcoreError, validate_density
from .mapzoo import AssertionFailure, BadSpec, ClassificationReport, MapSpec
from .wigner import ReconstructionReport

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_REJECTED = 2


class InputError(ValueError):
    """Malformed file or command-line input."""


def load_matrix(path: str) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    try:
        dim = int(data["dim"])
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros((dim, dim))), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad matrix file: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise InputError(f"{path}: grids do not match dim {dim}")
    return re + 1j * im


def matrix_to_dict(m: np.ndarray) -> dict[str, Any]:
    return {
        "dim": m.shape[0],
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def load_density(path: str) -> DensityOperator:
    try:
        return validate_density(load_matrix(path))
    except MatcoreError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_map_spec(path: str) -> MapSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    try:
        return MapSpec(
            kind=str(data["kind"]),
            dim=int(data["dim"]),
            params=dict(data.get("params", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad map spec: {exc}") from exc


def tolerances_in_effect() -> dict[str, float]:
    return {
        "psd_tol": matcore.PSD_TOL,
        "eig_tol": matcore.EIG_TOL,
        "trace_tol": matcore.TRACE_TOL,
        "rank_tol": charact.RANK_TOL,
        "probe_tol": wigner.PROBE_TOL,
        "phase_fix_tol": wigner.PHASE_FIX_TOL,
        "certify_tol": wigner.CERTIFY_TOL,
        "unitary_tol": wigner.UNITARY_TOL,
        "classify_tol": mapzoo.CLASSIFY_TOL,
    }


def reconstruction_to_dict(report: ReconstructionReport) -> dict[str, Any]:
    out: dict[str, Any] = {
        "status": report.status,
        "residual_max": report.residual_max,
        "probes_used": report.probes_used,
        "verification_trials": report.verification_trials,
        "parity_margin": report.parity_margin,
    }
    if report.symmetry is not None:
        out["parity"] = report.symmetry.parity
        out["unitary"] = matrix_to_dict(report.symmetry.u)
    return out


def classification_to_dict(report: ClassificationReport) -> dict[str, Any]:
    out: dict[str, Any] = {
        "preserving": report.preserving,
        "worst_violation": report.worst_violation,
        "trials": report.trials,
        "seed": report.seed,
    }
    if report.witness_pair is not None:
        a, b = report.witness_pair
        out["witness_pair"] = {"a": matrix_to_dict(a.matrix), "b": matrix_to_dict(b.matrix)}
    if report.reconstruction is not None:
        out["reconstruction"] = reconstruction_to_dict(report.reconstruction)
    return out


def write_report(path: str, payload: dict[str, Any]) -> None:
    """Write JSON atomically (temp file then rename) so a crash never leaves
    a half-written report."""
    payload = {"tool_version": __version__, "tolerances": tolerances_in_effect(), **payload}
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_fidelity(args: argparse.Namespace) -> int:
    a = load_density(args.a)
    b = load_density(args.b)
    if args.m is not None:
        value = partial_fidelity(a, b, args.m)
    else:
        value = fidelity_value(a, b)
    print(f"{value:.{args.digits}f}")
    return EXIT_OK


def cmd_reconstruct(args: argparse.Namespace) -> int:
    spec = load_map_spec(args.map)
    oracle = mapzoo.make_map(spec, seed=args.seed)
    report = wigner.reconstruct(
        oracle,
        verification_trials=args.trials,
        certify_tol=args.tol,
        seed=args.seed,
    )
    write_report(args.out, {"seed": args.seed, "map": {"kind": spec.kind, "dim": spec.dim},
                            "report": reconstruction_to_dict(report)})
    return EXIT_OK if report.certified else EXIT_REJECTED


def cmd_classify(args: argparse.Namespace) -> int:
    spec = load_map_spec(args.map)
    oracle = mapzoo.make_map(spec, seed=args.seed)
    report = mapzoo.classify_map(oracle, trials=args.trials, seed=args.seed)
    write_report(args.out, {"seed": args.seed, "map": {"kind": spec.kind, "dim": spec.dim},
                            "report": classification_to_dict(report)})
    return EXIT_OK if report.preserving else EXIT_REJECTED


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        summary = mapzoo.verify_theorem(args.dim, trials=args.trials, seed=args.seed)
        code = EXIT_OK
    except AssertionFailure as exc:
        summary = {"dim": args.dim, "trials": args.trials, "seed": args.seed,
                   "failure": str(exc)}
        code = EXIT_REJECTED
    if args.out:
        write_report(args.out, {"seed": args.seed, "summary": summary})
    else:
        print(json.dumps(summary, indent=2, sort_keys=True))
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fidsym")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fidelity", help="fidelity (or partial fidelity) of two density operators")
    p.add_argument("--a", required=True, help="matrix JSON file")
    p.add_argument("--b", required=True, help="matrix JSON file")
    p.add_argument("--m", type=int, default=None, help="partial fidelity index")
    p.add_argument("--digits", type=int, default=12)
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("reconstruct", help="reconstruct the symmetry behind a map spec")
    p.add_argument("--map", required=True, help="map spec JSON file")
    p.add_argument("--tol", type=float, default=wigner.CERTIFY_TOL)
    p.add_argument("--trials", type=int, default=64, help="verification trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="report JSON output path")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("classify", help="test a map spec for fidelity preservation")
    p.add_argument("--map", required=True, help="map spec JSON file")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="report JSON output path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run the preserving/non-preserving dichotomy over the map zoo")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="summary JSON output path (default: stdout)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, BadSpec, MatcoreError, BadM, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
