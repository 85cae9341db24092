"""Command-line front end.

Subcommands:
    incompat   bound for a direction set (--dirs FILE) or an angle triple
    table      grid of bounds over (theta1, theta2) at fixed theta3
    verify     three-path agreement: closed form vs eigensolver vs oracle
    witness    entanglement test on a two-qubit state
    steer      EPR-steering test on a two-qubit state

Exit codes: 0 success, 1 input/validation error, 3 verify failure,
4 --assert-violation failed.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from .criteria import entanglement_witness, steering_test
from .incompat import (
    directions_from_angles,
    incompatibility,
    incompatibility_from_angles,
)
from .linalg3 import sym3_eigen_jacobi
from .oracle import mixed_sample_floor, sphere_grid_min
from .states import TwoQubitState, product_state, singlet, werner

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY_FAIL = 3
EXIT_ASSERTION = 4

_DEFAULT_GRID = ["pi/9", "2*pi/9", "pi/3", "4*pi/9", "5*pi/9"]

_ANGLE_RE = re.compile(r"^\s*(?:(\d+)\s*\*\s*)?pi\s*(?:/\s*(\d+))?\s*$")


class InputError(Exception):
    pass


def parse_angle(text: str) -> float:
    """Parse an angle: `k*pi/m`, `pi/m`, `k*pi`, `pi`, or a decimal literal."""
    m = _ANGLE_RE.match(text)
    if m:
        k = int(m.group(1)) if m.group(1) else 1
        d = int(m.group(2)) if m.group(2) else 1
        if d == 0:
            raise InputError(f"zero denominator in angle {text!r}")
        return k * math.pi / d
    try:
        return float(text)
    except ValueError:
        raise InputError(
            f"malformed angle {text!r}: expected k*pi/m, pi/m, k*pi, pi, "
            f"or a decimal literal"
        ) from None


def round5(x: float) -> float:
    """Round to 5 decimals, half away from zero (display convention)."""
    return math.copysign(math.floor(abs(x) * 1e5 + 0.5) / 1e5, x)


def load_directions(path: str) -> list[np.ndarray]:
    """Read `{"directions": [[x,y,z], ...]}` from a JSON file."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read direction file {path}: {exc}") from exc
    dirs = data.get("directions")
    if not isinstance(dirs, list) or not dirs:
        raise InputError(f"{path}: expected a non-empty 'directions' list")
    try:
        return [np.asarray(d, dtype=float) for d in dirs]
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed direction entry: {exc}") from exc


def load_state(spec: str) -> TwoQubitState:
    """Load a two-qubit state from a builtin spec or a JSON file.

    Builtins: `singlet`, `werner:p`, `product:ax,ay,az:bx,by,bz`. Anything
    else is treated as a path to `{"dim": 4, "re": [...], "im": [...]}`.
    """
    if spec == "singlet":
        return singlet()
    if spec.startswith("werner:"):
        try:
            return werner(float(spec.split(":", 1)[1]))
        except ValueError as exc:
            raise InputError(f"bad werner parameter in {spec!r}: {exc}") from exc
    if spec.startswith("product:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise InputError("product state spec is product:ax,ay,az:bx,by,bz")
        try:
            r_a = [float(t) for t in parts[1].split(",")]
            r_b = [float(t) for t in parts[2].split(",")]
            return product_state(r_a, r_b)
        except ValueError as exc:
            raise InputError(f"bad product state spec {spec!r}: {exc}") from exc
    try:
        with open(spec) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read state file {spec}: {exc}") from exc
    if data.get("dim") != 4:
        raise InputError(f"{spec}: only dim=4 states are accepted here")
    try:
        rho = np.asarray(data["re"], dtype=float) + 1j * np.asarray(
            data["im"], dtype=float
        )
        return TwoQubitState(rho)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{spec}: invalid state: {exc}") from exc


def load_settings(path: str) -> list[tuple[np.ndarray, np.ndarray]]:
    """Read `{"settings": [{"alice": [...], "bob": [...]}, ...]}`."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read settings file {path}: {exc}") from exc
    raw = data.get("settings")
    if not isinstance(raw, list) or not raw:
        raise InputError(f"{path}: expected a non-empty 'settings' list")
    try:
        return [
            (
                np.asarray(entry["alice"], dtype=float),
                np.asarray(entry["bob"], dtype=float),
            )
            for entry in raw
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed setting entry: {exc}") from exc


def _result_payload(res) -> dict:
    return {
        "value": res.value,
        "lambda_max": res.lambda_max,
        "optimizer": list(res.optimizer),
        "alpha": res.coefficients.alpha,
        "beta": res.coefficients.beta,
        "traces": list(res.traces),
        "method": res.method,
    }


def cmd_incompat(args) -> int:
    if (args.dirs is None) == (args.angles is None):
        raise InputError("provide exactly one of --dirs or --angles")
    if args.dirs is not None:
        dirs = load_directions(args.dirs)
    else:
        t1, t2, t3 = (parse_angle(t) for t in args.angles)
        # materialize vectors so the full result (optimizer etc.) is available
        incompatibility_from_angles(t1, t2, t3)
        dirs = directions_from_angles(t1, t2, t3)
    res = incompatibility(dirs)
    if args.json:
        print(json.dumps(_result_payload(res)))
    else:
        print(f"incompatibility: {round5(res.value):.5f}")
        print(f"lambda_max:      {round5(res.lambda_max):.5f}")
        print(f"alpha:           {round5(res.coefficients.alpha):.5f}")
        print(f"beta:            {round5(res.coefficients.beta):.5f}")
        ox, oy, oz = res.optimizer
        print(f"optimizer bloch: ({ox:.6f}, {oy:.6f}, {oz:.6f})")
    return EXIT_OK


def cmd_table(args) -> int:
    theta3 = parse_angle(args.theta3)
    labels = args.grid.split(",") if args.grid else _DEFAULT_GRID
    angles = [parse_angle(t) for t in labels]
    rows = []
    footnotes = []
    for t2_label, t2 in zip(labels, angles):
        row = []
        for t1_label, t1 in zip(labels, angles):
            try:
                row.append(f"{round5(incompatibility_from_angles(t1, t2, theta3)):.5f}")
            except ValueError as exc:
                row.append("n/a")
                footnotes.append(f"({t1_label.strip()}, {t2_label.strip()}): {exc}")
        rows.append(row)
    if args.csv:
        print("theta2\\theta1," + ",".join(t.strip() for t in labels))
        for label, row in zip(labels, rows):
            print(label.strip() + "," + ",".join(row))
    else:
        width = max(9, max(len(t.strip()) for t in labels) + 2)
        header = "".join(t.strip().rjust(width) for t in labels)
        print(" " * 12 + header)
        for label, row in zip(labels, rows):
            print(label.strip().ljust(12) + "".join(c.rjust(width) for c in row))
    for note in footnotes:
        print(f"n/a {note}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    dirs = load_directions(args.dirs)
    res = incompatibility(dirs)
    a = np.zeros((3, 3))
    for v in dirs:
        a += np.outer(v, v)
    w, _ = sym3_eigen_jacobi(a)
    jacobi_value = res.traces[0] - w[0]
    oracle = sphere_grid_min(dirs, args.grid_points)
    floor = mixed_sample_floor(dirs, args.samples, args.seed)

    d_jacobi = abs(res.value - jacobi_value)
    d_oracle = abs(res.value - oracle.value)
    ok = (
        d_jacobi <= 1e-9
        and d_oracle <= 1e-5
        and floor >= res.value - 1e-10
    )
    payload = {
        "closed_form": res.value,
        "jacobi": jacobi_value,
        "oracle": oracle.value,
        "delta_jacobi": d_jacobi,
        "delta_oracle": d_oracle,
        "mixed_floor": floor,
        "pass": ok,
    }
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"closed form: {res.value:.10f}")
        print(f"jacobi:      {jacobi_value:.10f}  (delta {d_jacobi:.3e})")
        print(f"oracle:      {oracle.value:.10f}  (delta {d_oracle:.3e})")
        print(f"mixed floor: {floor:.10f}")
        print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def cmd_witness(args) -> int:
    state = load_state(args.state)
    alice = load_directions(args.alice)
    bob = load_directions(args.bob)
    report = entanglement_witness(state, alice, bob)
    payload = {
        "variance_sum": report.variance_sum,
        "bound": report.bound,
        "margin": report.margin,
        "violated": report.violated,
    }
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"variance sum: {report.variance_sum:.10f}")
        print(f"bound:        {report.bound:.10f}")
        print(f"margin:       {report.margin:.10f}")
        print("ENTANGLED (bound violated)" if report.violated else "no violation")
    if args.assert_violation and not report.violated:
        return EXIT_ASSERTION
    return EXIT_OK


def cmd_steer(args) -> int:
    state = load_state(args.state)
    settings = load_settings(args.settings)
    report = steering_test(state, settings)
    payload = {
        "inference_variances": list(report.inference_variances),
        "total": report.total,
        "bound": report.bound,
        "margin": report.margin,
        "violated": report.violated,
    }
    if args.json:
        print(json.dumps(payload))
    else:
        for i, v in enumerate(report.inference_variances):
            print(f"setting {i}: inference variance {v:.10f}")
        print(f"total: {report.total:.10f}")
        print(f"bound: {report.bound:.10f}")
        print("STEERING (bound violated)" if report.violated else "no violation")
    if args.assert_violation and not report.violated:
        return EXIT_ASSERTION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinbounds",
        description="State-independent variance bounds for qubit spin observables",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("incompat", help="bound for a direction set or angle triple")
    p.add_argument("--dirs", help="JSON direction file")
    p.add_argument("--angles", nargs=3, metavar="THETA", help="three pairwise angles")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_incompat)

    p = sub.add_parser("table", help="grid of bounds over (theta1, theta2)")
    p.add_argument("--theta3", default="pi/3")
    p.add_argument("--grid", help="comma-separated angles (default pi/9..5*pi/9)")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="closed form vs eigensolver vs oracle")
    p.add_argument("--dirs", required=True)
    p.add_argument("--grid-points", type=int, default=20_000)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="entanglement test")
    p.add_argument("--state", required=True, help="file or singlet|werner:p|product:..")
    p.add_argument("--alice", required=True, help="JSON direction file")
    p.add_argument("--bob", required=True, help="JSON direction file")
    p.add_argument("--assert-violation", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("steer", help="EPR-steering test")
    p.add_argument("--state", required=True, help="file or singlet|werner:p|product:..")
    p.add_argument("--settings", required=True, help="JSON settings file")
    p.add_argument("--assert-violation", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_steer)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
