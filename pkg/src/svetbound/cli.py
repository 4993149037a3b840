"""Command-line interface: bound, optimize, threshold, scan, certify and gme subcommands.

Output contract: one JSON report per invocation on stdout, floats printed with
17 significant digits; scan additionally writes a CSV (9 significant digits,
UTF-8, LF line endings). Identical inputs and seed produce byte-identical
output. Exit codes: 0 success, 1 usage error, 2 state validation failure,
3 numerical or I/O failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys

import numpy as np

from . import __version__
from .bounds import quantum_bound, tightness_certificate
from .correlation import correlation_tensor, singular_spectrum, unfold
from .families import (
    BILOCAL_BOUND_LITERATURE,
    BISECTION,
    CLOSED_FORM,
    GHZ_COLOR,
    GHZ_WHITE,
    GME_THRESHOLD_LITERATURE,
    FamilySpec,
    GhzClassParams,
    gme_lower_bound,
    realize,
    scan,
    violation_threshold,
)
from .qcore import StateValidationError, validate_density
from .seesaw import OptimizerConfig, maximize
from .svetlichny import MeasurementSettings

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class StateFormatError(ValueError):
    """Raised when a state file does not match the documented JSON schema."""


def _fmt17(value: float) -> str:
    return format(float(value), ".17g")


def _fmt9(value: float) -> str:
    return format(float(value), ".9g")


def _to_json(value) -> str:
    # Hand-rolled emitter so floats are always rendered with 17 significant digits.
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt17(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_to_json(item) for item in value) + "]"
    if isinstance(value, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{_to_json(v)}" for k, v in value.items()) + "}"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _digest(payload) -> str:
    return "sha256:" + hashlib.sha256(_to_json(payload).encode("utf-8")).hexdigest()


def state_payload(rho) -> dict:
    """Canonical JSON payload for a density matrix: keys dim and matrix of [re, im] pairs."""
    rho = np.asarray(rho, dtype=complex)
    matrix = [[[float(entry.real), float(entry.imag)] for entry in row] for row in rho]
    return {"dim": 8, "matrix": matrix}


def state_from_payload(payload) -> np.ndarray:
    """Parse and validate a StateFile payload into a density matrix."""
    if not isinstance(payload, dict):
        raise StateFormatError("state file must contain a JSON object")
    if payload.get("dim") != 8:
        raise StateFormatError("state file field 'dim' must be 8")
    if "matrix" not in payload:
        raise StateFormatError("state file is missing the 'matrix' field")
    try:
        arr = np.asarray(payload["matrix"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise StateFormatError(f"state file matrix is not numeric: {exc}") from None
    if arr.shape != (8, 8, 2):
        raise StateFormatError(
            f"state file matrix must be 8x8 entries of [re, im] pairs, got shape {arr.shape}"
        )
    return validate_density(arr[..., 0] + 1j * arr[..., 1])


def write_state_file(path: str, rho) -> None:
    """Canonical state writer; written files re-parse to a bit-identical matrix."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(_to_json(state_payload(rho)) + "\n")


def read_state_file(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise StateFormatError(f"state file is not valid JSON: {exc}") from None
    return state_from_payload(payload)


def _settings_payload(settings: MeasurementSettings) -> dict:
    return {
        "a": [float(x) for x in settings.a],
        "a_prime": [float(x) for x in settings.a_prime],
        "b": [float(x) for x in settings.b],
        "b_prime": [float(x) for x in settings.b_prime],
        "c": [float(x) for x in settings.c],
        "c_prime": [float(x) for x in settings.c_prime],
    }


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the documented contract is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _angles(args) -> tuple[float | None, float | None]:
    theta = args.theta
    theta3 = args.theta3
    if getattr(args, "degrees", False):
        theta = math.radians(theta) if theta is not None else None
        theta3 = math.radians(theta3) if theta3 is not None else None
    return theta, theta3


def _resolve_state(args, parser: _Parser):
    """Returns (rho, digest, family spec or None) from --state or --family flags."""
    if args.state is not None and args.family is not None:
        parser.error("give either --state or --family, not both")
    if args.state is not None:
        for flag in ("theta", "theta3", "p"):
            if getattr(args, flag) is not None:
                parser.error(f"--{flag} only applies to --family input")
        rho = read_state_file(args.state)
        return rho, _digest(state_payload(rho)), None
    if args.family is None:
        parser.error("a state source is required: --state FILE or --family KIND")
    if args.p is None:
        parser.error("--family requires --p")
    theta, theta3 = _angles(args)
    if args.family == GHZ_WHITE:
        if theta is None or theta3 is None:
            parser.error("ghz-white requires --theta and --theta3")
        try:
            spec = FamilySpec(GHZ_WHITE, args.p, GhzClassParams(theta, theta3))
        except ValueError as exc:
            parser.error(str(exc))
        payload = {"family": GHZ_WHITE, "theta": theta, "theta3": theta3, "p": args.p}
    else:
        if theta is not None or theta3 is not None:
            parser.error("ghz-color takes no --theta/--theta3")
        try:
            spec = FamilySpec(GHZ_COLOR, args.p)
        except ValueError as exc:
            parser.error(str(exc))
        payload = {"family": GHZ_COLOR, "p": args.p}
    return realize(spec), _digest(payload), spec


def _report(args, digest: str, result: dict) -> dict:
    return {
        "command": list(args.argv),
        "input_digest": digest,
        "seed": int(args.seed),
        "version": __version__,
        "result": result,
    }


def _emit(report: dict) -> int:
    sys.stdout.write(_to_json(report) + "\n")
    return EXIT_OK


def _cmd_bound(args, parser):
    rho, digest, _ = _resolve_state(args, parser)
    cfg = OptimizerConfig(starts=args.starts, seed=args.seed)
    report = quantum_bound(rho, cfg, certify=args.certify)
    result = {
        "lambda": [report.spectrum.lambda1, report.spectrum.lambda2, report.spectrum.lambda3],
        "q_bound": report.q_bound,
        "classification": report.classification,
    }
    if report.optimizer_value is not None:
        result["optimizer_value"] = report.optimizer_value
    if report.certificate is not None:
        result["certificate"] = {
            "settings": _settings_payload(report.certificate.settings),
            "achieved": report.certificate.achieved,
            "residual": report.certificate.residual,
        }
    return _emit(_report(args, digest, result))


def _cmd_optimize(args, parser):
    rho, digest, _ = _resolve_state(args, parser)
    cfg = OptimizerConfig(starts=args.starts, seed=args.seed, convergence_tol=args.tol)
    result = maximize(rho, cfg)
    payload = {
        "best_value": result.best_value,
        "best_settings": _settings_payload(result.best_settings),
        "iterations_used": result.iterations_used,
        "converged": result.converged,
        "per_start_values": list(result.per_start_values),
    }
    return _emit(_report(args, digest, payload))


def _cmd_threshold(args, parser):
    theta, theta3 = _angles(args)
    method = CLOSED_FORM if args.method == "closed-form" else BISECTION
    if args.family == GHZ_WHITE:
        if theta is None or theta3 is None:
            parser.error("ghz-white requires --theta and --theta3")
        try:
            params = GhzClassParams(theta, theta3)
        except ValueError as exc:
            parser.error(str(exc))
        digest = _digest({"family": GHZ_WHITE, "theta": theta, "theta3": theta3})
    else:
        if theta is not None or theta3 is not None:
            parser.error("ghz-color takes no --theta/--theta3")
        params = None
        digest = _digest({"family": GHZ_COLOR})
    report = violation_threshold(args.family, params, method=method)
    return _emit(_report(args, digest, {"p_star": report.p_star, "method": report.method}))


def _parse_grid(text: str, parser: _Parser, flag: str) -> list[float]:
    try:
        if ":" in text:
            lo, hi, count = text.split(":")
            lo, hi, count = float(lo), float(hi), int(count)
            if count < 1:
                raise ValueError("count must be at least 1")
            return [float(v) for v in np.linspace(lo, hi, count)]
        return [float(token) for token in text.split(",") if token.strip()]
    except ValueError as exc:
        parser.error(f"bad grid for {flag}: {exc}")


def _cmd_scan(args, parser):
    ps = _parse_grid(args.ps, parser, "--ps")
    thetas = theta3s = None
    if args.family == GHZ_WHITE:
        if args.thetas is None or args.theta3s is None:
            parser.error("ghz-white requires --thetas and --theta3s")
        thetas = _parse_grid(args.thetas, parser, "--thetas")
        theta3s = _parse_grid(args.theta3s, parser, "--theta3s")
        if args.degrees:
            thetas = [math.radians(v) for v in thetas]
            theta3s = [math.radians(v) for v in theta3s]
        digest = _digest({"family": args.family, "thetas": thetas, "theta3s": theta3s, "ps": ps})
        annotations = {"gme_threshold_literature": GME_THRESHOLD_LITERATURE}
    else:
        if args.thetas is not None or args.theta3s is not None:
            parser.error("ghz-color takes no --thetas/--theta3s")
        digest = _digest({"family": args.family, "ps": ps})
        annotations = {"bilocal_model_bound_literature": BILOCAL_BOUND_LITERATURE}
    try:
        rows = scan(args.family, thetas, theta3s, ps)
    except ValueError as exc:
        parser.error(str(exc))
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        handle.write("theta,theta3,p,lambda1,q_bound,violates,gme_lb\n")
        for row in rows:
            handle.write(
                ",".join(
                    [
                        _fmt9(row.theta),
                        _fmt9(row.theta3),
                        _fmt9(row.p),
                        _fmt9(row.lambda1),
                        _fmt9(row.q_bound),
                        "true" if row.violates else "false",
                        _fmt9(row.gme_lb),
                    ]
                )
                + "\n"
            )
    result = {
        "out": args.out,
        "rows": len(rows),
        "annotations": annotations,
        "annotations_note": "cited literature values, quoted not computed",
    }
    return _emit(_report(args, digest, result))


def _cmd_certify(args, parser):
    rho, digest, _ = _resolve_state(args, parser)
    if args.tol <= 0:
        parser.error("--tol must be positive")
    cfg = OptimizerConfig(starts=args.starts, seed=args.seed)
    certificate = tightness_certificate(rho, tol=args.tol, config=cfg)
    spectrum = singular_spectrum(unfold(correlation_tensor(rho)))
    q_bound = 4.0 * spectrum.lambda1
    if certificate is not None:
        result = {
            "q_bound": q_bound,
            "certificate": {
                "settings": _settings_payload(certificate.settings),
                "achieved": certificate.achieved,
                "residual": certificate.residual,
            },
        }
    else:
        best = maximize(rho, cfg).best_value
        result = {"q_bound": q_bound, "certificate": None, "gap": q_bound - best}
    return _emit(_report(args, digest, result))


def _cmd_gme(args, parser):
    rho, digest, _ = _resolve_state(args, parser)
    report = gme_lower_bound(rho)
    result = {
        "hs_norm_sq": report.hs_norm_sq,
        "lb_value": report.lb_value,
        "chain_value": report.chain_value,
        "clamped_lb": report.clamped_lb,
    }
    return _emit(_report(args, digest, result))


def _add_state_source(sub: _Parser) -> None:
    sub.add_argument("--state", metavar="FILE", help="density matrix JSON file")
    sub.add_argument("--family", choices=[GHZ_WHITE, GHZ_COLOR], help="parameterized family")
    sub.add_argument("--theta", type=float, help="family angle theta (radians)")
    sub.add_argument("--theta3", type=float, help="family angle theta3 (radians)")
    sub.add_argument("--p", type=float, help="family mixing weight in [0, 1]")
    sub.add_argument("--degrees", action="store_true", help="interpret angles in degrees")


def build_parser() -> _Parser:
    parser = _Parser(prog="svetbound", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"svetbound {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    bound = subs.add_parser("bound", help="singular-value bound 4*lambda1 and classification")
    _add_state_source(bound)
    bound.add_argument("--starts", type=int, default=50)
    bound.add_argument("--seed", type=int, default=0)
    bound.add_argument("--certify", action="store_true", help="also search for a tightness certificate")
    bound.set_defaults(func=_cmd_bound)

    optimize = subs.add_parser("optimize", help="multistart see-saw maximal value")
    _add_state_source(optimize)
    optimize.add_argument("--starts", type=int, default=50)
    optimize.add_argument("--seed", type=int, default=0)
    optimize.add_argument("--tol", type=float, default=1e-10, help="per-sweep convergence tolerance")
    optimize.set_defaults(func=_cmd_optimize)

    threshold = subs.add_parser("threshold", help="critical mixing weight p*")
    threshold.add_argument("--family", choices=[GHZ_WHITE, GHZ_COLOR], required=True)
    threshold.add_argument("--theta", type=float)
    threshold.add_argument("--theta3", type=float)
    threshold.add_argument("--degrees", action="store_true")
    threshold.add_argument("--method", choices=["closed-form", "bisection"], default="closed-form")
    threshold.add_argument("--seed", type=int, default=0)
    threshold.set_defaults(func=_cmd_threshold)

    scan_cmd = subs.add_parser("scan", help="grid scan to CSV")
    scan_cmd.add_argument("--family", choices=[GHZ_WHITE, GHZ_COLOR], required=True)
    scan_cmd.add_argument("--thetas", help="grid: comma list or lo:hi:count")
    scan_cmd.add_argument("--theta3s", help="grid: comma list or lo:hi:count")
    scan_cmd.add_argument("--ps", required=True, help="grid: comma list or lo:hi:count")
    scan_cmd.add_argument("--degrees", action="store_true")
    scan_cmd.add_argument("--out", required=True, metavar="FILE", help="CSV output path")
    scan_cmd.add_argument("--seed", type=int, default=0)
    scan_cmd.set_defaults(func=_cmd_scan)

    certify = subs.add_parser("certify", help="settings attaining 4*lambda1, if any")
    _add_state_source(certify)
    certify.add_argument("--tol", type=float, default=1e-6, help="certificate tolerance")
    certify.add_argument("--starts", type=int, default=50)
    certify.add_argument("--seed", type=int, default=0)
    certify.set_defaults(func=_cmd_certify)

    gme = subs.add_parser("gme", help="entanglement concurrence lower bounds")
    _add_state_source(gme)
    gme.add_argument("--seed", type=int, default=0)
    gme.set_defaults(func=_cmd_gme)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    try:
        return args.func(args, parser)
    except StateValidationError as exc:
        print(f"svetbound: state validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except StateFormatError as exc:
        print(f"svetbound: bad state file: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"svetbound: i/o failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except np.linalg.LinAlgError as exc:
        print(f"svetbound: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"svetbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
