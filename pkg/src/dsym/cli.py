"""Command-line interface: classify states from JSON spec files and emit a
single JSON report on stdout (diagnostics go to stderr).

Spec file format: {"N": int, "d": int, "p": [number or exact-rational string
like "1/9", ...]}.  Rational strings are parsed exactly and converted to
floating point once, at parse time.

Exit codes: 0 positive verdict (ppt / separable), 1 negative verdict,
2 marginal, 3 error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .decompose import NotSeparableError, SeparableEnsemble, separable_ensemble
from .moment import (
    DEFAULT_RESIDUAL_TOL,
    RecoveryError,
    SeparabilityVerdict,
    is_separable,
)
from .oracle import dense_ppt_check
from .ppt import DEFAULT_PSD_TOL, PPTReport, is_m_ppt
from .states import StateSpec, build_state
from .witnesses import WitnessSpec

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_MARGINAL = 2
EXIT_ERROR = 3


def parse_spec_file(path: str) -> StateSpec:
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    return parse_spec_dict(data)


def parse_spec_dict(data: dict) -> StateSpec:
    if not isinstance(data, dict):
        raise ValueError("spec file must contain a JSON object")
    for key in ("N", "d", "p"):
        if key not in data:
            raise ValueError(f"spec file is missing required key {key!r}")
    N = int(data["N"])
    d = int(data["d"])
    p = []
    for entry in data["p"]:
        if isinstance(entry, str):
            p.append(float(Fraction(entry)))
        elif isinstance(entry, (int, float)):
            p.append(float(entry))
        else:
            raise ValueError(f"coefficient entries must be numbers or strings, got {entry!r}")
    return StateSpec(N=N, d=d, p=tuple(p))


def _complex_pairs(values) -> list[list[float]]:
    return [[float(np.real(v)), float(np.imag(v))] for v in values]


def _witness_json(w: WitnessSpec) -> dict:
    return {
        "type": "witness",
        "family": w.family,
        "coeffs": _complex_pairs(w.coeffs),
        "witness_value": w.witness_value,
    }


def _ensemble_json(e: SeparableEnsemble) -> dict:
    terms = []
    for weight, phi in e.terms:
        if isinstance(phi, str):
            terms.append({"weight": weight, "vector": "top"})
        else:
            terms.append({"weight": weight, "vector": _complex_pairs(phi)})
    return {
        "type": "ensemble",
        "terms": terms,
        "reconstruction_error": e.reconstruction_error,
    }


def _separability_json(v: SeparabilityVerdict) -> dict:
    out = {
        "verdict": v.verdict,
        "basis": v.basis,
        "even_hankel_min_eigenvalue": v.even.lam_min,
        "odd_hankel_min_eigenvalue": v.odd.lam_min,
    }
    if v.atoms is not None:
        out["measure"] = {
            "atoms": [[t, w] for t, w in v.atoms.atoms],
            "top_mass": v.atoms.top_mass,
            "moment_residual": v.atoms.moment_residual,
        }
    return out


def _ppt_json(report: PPTReport) -> dict:
    return {
        "m": report.m,
        "verdict": report.verdict,
        "checked_offsets": list(report.checked),
        "blocks": [
            {
                "s": b.s,
                "size": b.size,
                "lam_min": b.lam_min,
                "lam_max": b.lam_max,
                "margin": b.margin,
                "status": b.status,
            }
            for b in report.blocks
        ],
    }


def _base_report(command: str, spec: StateSpec, psd_tol: float, residual_tol: float) -> dict:
    return {
        "tool": "dsym",
        "version": __version__,
        "command": command,
        "input": {"N": spec.N, "d": spec.d, "p": list(spec.p)},
        "tolerances": {"psd_band": psd_tol, "residual": residual_tol},
    }


def _emit(report: dict, started: float) -> None:
    report["timings"] = {"total_s": time.perf_counter() - started}
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")


_VERDICT_EXIT = {
    "ppt": EXIT_POSITIVE,
    "separable": EXIT_POSITIVE,
    "psd": EXIT_POSITIVE,
    "not-ppt": EXIT_NEGATIVE,
    "entangled": EXIT_NEGATIVE,
    "not-psd": EXIT_NEGATIVE,
    "marginal": EXIT_MARGINAL,
}


def cmd_check_ppt(args, psd_tol: float, residual_tol: float) -> int:
    started = time.perf_counter()
    spec = parse_spec_file(args.spec_file)
    report = _base_report("check-ppt", spec, psd_tol, residual_tol)
    ppt_report = is_m_ppt(spec, args.m, psd_tol)
    report["ppt"] = _ppt_json(ppt_report)
    _emit(report, started)
    return _VERDICT_EXIT[ppt_report.verdict]


def cmd_check_separable(args, psd_tol: float, residual_tol: float) -> int:
    started = time.perf_counter()
    spec = parse_spec_file(args.spec_file)
    report = _base_report("check-separable", spec, psd_tol, residual_tol)
    verdict = is_separable(spec, residual_tol, psd_tol)
    report["separability"] = _separability_json(verdict)
    certificate = None
    if args.certificate:
        if verdict.verdict == "separable":
            try:
                ensemble = separable_ensemble(spec, residual_tol)
                if args.normalize:
                    ensemble = ensemble.normalized()
                certificate = _ensemble_json(ensemble)
            except RecoveryError as exc:
                print(f"certificate unavailable: {exc}", file=sys.stderr)
        elif verdict.witness is not None:
            certificate = _witness_json(verdict.witness)
    report["certificate"] = certificate
    _emit(report, started)
    return _VERDICT_EXIT[verdict.verdict]


def cmd_oracle_verify(args, psd_tol: float, residual_tol: float) -> int:
    started = time.perf_counter()
    spec = parse_spec_file(args.spec_file)
    report = _base_report("oracle-verify", spec, psd_tol, residual_tol)
    mask = tuple(int(c) for c in args.mask)
    rho = build_state(spec)
    status, lam_min, lam_max = dense_ppt_check(rho, mask, spec.d, psd_tol)
    oracle = {
        "mask": list(mask),
        "lam_min": lam_min,
        "lam_max": lam_max,
        "status": status,
    }
    m = sum(mask)
    first_m = tuple([1] * m + [0] * (spec.N - m))
    if mask == first_m and 1 <= m <= spec.N // 2:
        fast = is_m_ppt(spec, m, psd_tol)
        oracle["fast_path_verdict"] = fast.verdict
        oracle["agreement"] = (
            None
            if "marginal" in (fast.verdict, status)
            else (fast.verdict == "ppt") == (status == "psd")
        )
    report["oracle"] = oracle
    _emit(report, started)
    return _VERDICT_EXIT[status]


def cmd_decompose(args, psd_tol: float, residual_tol: float) -> int:
    started = time.perf_counter()
    spec = parse_spec_file(args.spec_file)
    report = _base_report("decompose", spec, psd_tol, residual_tol)
    verdict = is_separable(spec, residual_tol, psd_tol)
    report["separability"] = _separability_json(verdict)
    if verdict.verdict != "separable":
        report["certificate"] = None
        _emit(report, started)
        return _VERDICT_EXIT[verdict.verdict]
    ensemble = separable_ensemble(spec, residual_tol)
    if args.normalize:
        ensemble = ensemble.normalized()
    report["certificate"] = _ensemble_json(ensemble)
    _emit(report, started)
    return EXIT_POSITIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsym",
        description=(
            "Classify diagonal restricted-Dicke multipartite states "
            "(PPT / separability) and emit certificates."
        ),
    )
    parser.add_argument("--version", action="version", version=f"dsym {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("spec_file", help="JSON file with keys N, d, p")
        p.add_argument(
            "--tol",
            type=float,
            default=None,
            help="override both the PSD band and the residual tolerance",
        )
        p.add_argument(
            "--residual-tol",
            type=float,
            default=None,
            help="override only the measure-recovery residual tolerance",
        )
        p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("check-ppt", help="decide m-PPT via Hankel blocks")
    common(p)
    p.add_argument("--m", type=int, required=True, help="number of transposed parties")
    p.set_defaults(func=cmd_check_ppt)

    p = sub.add_parser("check-separable", help="decide full separability")
    common(p)
    p.add_argument(
        "--certificate",
        action="store_true",
        help="attach a separable ensemble or a detecting witness",
    )
    p.add_argument(
        "--normalize",
        action="store_true",
        help="emit ensemble certificates as convex combinations of unit-trace products",
    )
    p.set_defaults(func=cmd_check_separable)

    p = sub.add_parser(
        "oracle-verify", help="dense partial-transpose eigenvalue check"
    )
    common(p)
    p.add_argument(
        "--mask",
        required=True,
        help="0/1 string, one bit per party, 1 = transpose that party",
    )
    p.set_defaults(func=cmd_oracle_verify)

    p = sub.add_parser("decompose", help="emit a separable decomposition")
    common(p)
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(func=cmd_decompose)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 means "marginal" here, so remap
        return EXIT_POSITIVE if exc.code in (0, None) else EXIT_ERROR
    psd_tol = DEFAULT_PSD_TOL
    residual_tol = DEFAULT_RESIDUAL_TOL
    if args.tol is not None:
        psd_tol = args.tol
        residual_tol = args.tol
    if args.residual_tol is not None:
        residual_tol = args.residual_tol
    try:
        return args.func(args, psd_tol, residual_tol)
    except NotSeparableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (OSError, json.JSONDecodeError, ValueError, RecoveryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
