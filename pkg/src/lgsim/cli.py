"""Command-line front end: orchestration and result serialization.

Subcommands
    sweep              K over a uniform theta grid, with the closed-form
                       prediction and the per-point absolute error
    correlations       the three two-time correlators over the same grid
    noninvasive-check  max trace distance between the post-circuit reduced
                       system state and its input, for I/2 and for |0><0|
    tomography         the 16 Pauli coefficients of the input state and the
                       deviation-matrix fidelity against the ideal
    noise-check        K at theta = pi/3 with and without T2 dephasing

Values flow defaults -> config file (--config, a flat JSON object mirroring
flag names) -> LGSIM_SEED (for the seed only) -> command-line flags, later
sources winning.  Output is CSV (default), JSON or SVG, written to --output
or stdout; identical configuration and seed produce byte-identical files.

Exit codes: 0 success, 1 internal invariant failure, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from .leggett_garg import Evolution, LGResult, analytic_k, find_violations, sweep
from .linalg import overlap_fidelity, partial_trace, trace_distance
from .nmr import (
    PAULI_LABELS,
    ReadoutNoise,
    T2Config,
    k_attenuation_check,
    reconstruct,
    tomograph,
)
from .circuit import build_scattering_circuit, run
from .leggett_garg import observable_from_state
from .states import (
    KET0,
    classical_mixture,
    deviation,
    maximally_mixed,
    pseudo_pure,
    pure_density,
)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_IO = 3

TWO_PI = 2.0 * math.pi

COMMANDS = ("sweep", "correlations", "noninvasive-check", "tomography", "noise-check")

_DEFAULTS = {
    "theta_min": 0.0,
    "theta_max": TWO_PI,
    "steps": 721,
    "epsilon": 1.0,
    "populations": (0.5, 0.5),
    "t2_probe": 3.0,
    "t2_system": 0.8,
    "duration": 0.01,
    "noise_sigma": 0.0,
    "seed": 42,
    "output": None,
    "format": "csv",
    "degrees": False,
}


class UsageError(Exception):
    """Bad flag or config value; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    theta_min: float
    theta_max: float
    steps: int
    epsilon: float
    populations: tuple[float, float]
    t2_probe: float
    t2_system: float
    duration: float
    noise_sigma: float
    seed: int
    output: str | None
    format: str
    degrees: bool


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lgsim",
        description=(
            "Simulate the probe-qubit scattering circuit, evaluate the "
            "Leggett-Garg quantity K = C12 + C23 - C13, and serialize the "
            "results."
        ),
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", metavar="PATH",
                        help="flat JSON file mirroring the flag names")
    parser.add_argument("--theta-min", type=float, dest="theta_min")
    parser.add_argument("--theta-max", type=float, dest="theta_max")
    parser.add_argument("--steps", type=int)
    parser.add_argument("--epsilon", type=float,
                        help="probe pseudo-pure polarization, in (0, 1]")
    parser.add_argument("--populations", metavar="P0,P1",
                        help="system diagonal mixture, e.g. 0.5,0.5")
    parser.add_argument("--t2-probe", type=float, dest="t2_probe", metavar="SECONDS")
    parser.add_argument("--t2-system", type=float, dest="t2_system", metavar="SECONDS")
    parser.add_argument("--duration", type=float, metavar="SECONDS")
    parser.add_argument("--noise-sigma", type=float, dest="noise_sigma")
    parser.add_argument("--seed", type=int,
                        help="readout-noise seed; LGSIM_SEED is the fallback")
    parser.add_argument("--output", "-o", metavar="PATH")
    parser.add_argument("--format", choices=("csv", "json", "svg"))
    parser.add_argument("--degrees", action="store_true", default=None,
                        help="interpret supplied theta bounds as degrees")
    return parser


def _parse_populations(raw, flag: str) -> tuple[float, float]:
    if isinstance(raw, str):
        parts = raw.split(",")
    elif isinstance(raw, (list, tuple)):
        parts = list(raw)
    else:
        raise UsageError(f"{flag}: expected two comma-separated numbers")
    if len(parts) != 2:
        raise UsageError(f"{flag}: expected exactly two populations")
    try:
        p0, p1 = float(parts[0]), float(parts[1])
    except (TypeError, ValueError):
        raise UsageError(f"{flag}: populations must be numbers") from None
    if p0 < 0.0 or p1 < 0.0 or abs(p0 + p1 - 1.0) > 1e-12:
        raise UsageError(f"{flag}: populations must be >= 0 and sum to 1")
    return p0, p1


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"--config: {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"--config: {path} must hold a flat JSON object")
    normalized = {}
    for key, value in data.items():
        dest = str(key).replace("-", "_")
        if dest not in _DEFAULTS:
            raise UsageError(f"--config: unknown key {key!r}")
        normalized[dest] = value
    return normalized


def parse_config(argv: list[str], environ=None) -> RunConfig:
    """Resolve flags, config file, environment and defaults into a RunConfig."""
    environ = os.environ if environ is None else environ
    ns = _build_parser().parse_args(argv)
    file_values = _load_config_file(ns.config) if ns.config else {}

    def pick(name):
        flag = getattr(ns, name)
        if flag is not None:
            return flag, True
        if name == "seed" and "LGSIM_SEED" in environ:
            raw = environ["LGSIM_SEED"]
            try:
                return int(raw), True
            except ValueError:
                raise UsageError(
                    f"LGSIM_SEED: expected an integer, got {raw!r}"
                ) from None
        if name in file_values:
            return file_values[name], True
        return _DEFAULTS[name], False

    values = {}
    supplied = {}
    for name in _DEFAULTS:
        values[name], supplied[name] = pick(name)

    try:
        degrees = bool(values["degrees"])
        theta_min = float(values["theta_min"])
        theta_max = float(values["theta_max"])
        steps = int(values["steps"])
        epsilon = float(values["epsilon"])
        t2_probe = float(values["t2_probe"])
        t2_system = float(values["t2_system"])
        duration = float(values["duration"])
        noise_sigma = float(values["noise_sigma"])
        seed = int(values["seed"])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad numeric value in configuration: {exc}") from None
    populations = _parse_populations(values["populations"], "--populations")

    # --degrees converts user-supplied angles only; the defaults are radians.
    if degrees:
        if supplied["theta_min"]:
            theta_min = math.radians(theta_min)
        if supplied["theta_max"]:
            theta_max = math.radians(theta_max)

    if steps < 2:
        raise UsageError(f"--steps: must be >= 2, got {steps}")
    if not 0.0 < epsilon <= 1.0:
        raise UsageError(f"--epsilon: must be in (0, 1], got {epsilon}")
    if theta_min < 0.0:
        raise UsageError(f"--theta-min: must be >= 0, got {theta_min}")
    if not theta_min < theta_max:
        raise UsageError(
            f"--theta-min/--theta-max: need min < max, got ({theta_min}, {theta_max})"
        )
    if t2_probe <= 0.0:
        raise UsageError(f"--t2-probe: must be > 0, got {t2_probe}")
    if t2_system <= 0.0:
        raise UsageError(f"--t2-system: must be > 0, got {t2_system}")
    if duration < 0.0:
        raise UsageError(f"--duration: must be >= 0, got {duration}")
    if noise_sigma < 0.0:
        raise UsageError(f"--noise-sigma: must be >= 0, got {noise_sigma}")
    if seed < 0:
        raise UsageError(f"--seed: must be >= 0, got {seed}")
    fmt = str(values["format"])
    if fmt not in ("csv", "json", "svg"):
        raise UsageError(f"--format: must be csv, json or svg, got {fmt!r}")
    output = values["output"]
    if output is not None:
        output = str(output)
    if fmt == "svg" and output is None:
        raise UsageError("--output: required when --format svg")
    if fmt == "svg" and ns.command not in ("sweep", "correlations"):
        raise UsageError(f"--format: svg is not defined for {ns.command!r}")

    return RunConfig(
        command=ns.command,
        theta_min=theta_min,
        theta_max=theta_max,
        steps=steps,
        epsilon=epsilon,
        populations=populations,
        t2_probe=t2_probe,
        t2_system=t2_system,
        duration=duration,
        noise_sigma=noise_sigma,
        seed=seed,
        output=output,
        format=fmt,
        degrees=degrees,
    )


# --------------------------------------------------------------------------
# command implementations


def _sweep_results(cfg: RunConfig) -> list[LGResult]:
    rho_sys = classical_mixture(*cfg.populations)
    return sweep(
        Evolution(omega=1.0),
        rho_sys,
        cfg.epsilon,
        cfg.theta_min,
        cfg.theta_max,
        cfg.steps,
    )


def _compute(cfg: RunConfig):
    """Return (header, rows, sweep_results_or_None) for the command."""
    if cfg.command == "sweep":
        results = _sweep_results(cfg)
        header = ["theta", "c12", "c23", "c13", "k", "k_analytic", "abs_error"]
        rows = [
            [r.theta, r.c12, r.c23, r.c13, r.k, analytic_k(r.theta),
             abs(r.k - analytic_k(r.theta))]
            for r in results
        ]
        return header, rows, results

    if cfg.command == "correlations":
        results = _sweep_results(cfg)
        header = ["theta", "c12", "c23", "c13"]
        rows = [[r.theta, r.c12, r.c23, r.c13] for r in results]
        return header, rows, results

    if cfg.command == "noninvasive-check":
        header = ["state", "max_trace_distance"]
        rows = [
            ["mixed", _max_disturbance(cfg, maximally_mixed())],
            ["pure_zero", _max_disturbance(cfg, pure_density(KET0))],
        ]
        return header, rows, None

    if cfg.command == "tomography":
        rho = np.kron(pseudo_pure(cfg.epsilon, KET0), maximally_mixed())
        record = tomograph(rho, ReadoutNoise(sigma=cfg.noise_sigma, seed=cfg.seed))
        header = ["name", "value"]
        rows = [
            [f"c_{PAULI_LABELS[i]}{PAULI_LABELS[j]}", float(record.coefficients[i, j])]
            for i in range(4)
            for j in range(4)
        ]
        fidelity = overlap_fidelity(
            deviation(reconstruct(record)), deviation(rho)
        )
        rows.append(["fidelity", fidelity])
        return header, rows, None

    if cfg.command == "noise-check":
        t2 = T2Config(t2_probe=cfg.t2_probe, t2_system=cfg.t2_system,
                      duration=cfg.duration)
        k_ideal, k_noisy = k_attenuation_check(t2, math.pi / 3.0, cfg.epsilon)
        header = ["theta", "k_ideal", "k_noisy", "ratio"]
        rows = [[math.pi / 3.0, k_ideal, k_noisy, k_noisy / k_ideal]]
        return header, rows, None

    raise UsageError(f"unknown command {cfg.command!r}")


def _max_disturbance(cfg: RunConfig, rho_sys: np.ndarray) -> float:
    """Worst-case change of the system state over a 5x5 grid of time pairs."""
    evo = Evolution(omega=1.0)
    obs = observable_from_state(KET0)
    probe = pseudo_pure(cfg.epsilon, KET0)
    rho_in = np.kron(probe, rho_sys)
    phases = np.linspace(cfg.theta_min / 2.0, cfg.theta_max / 2.0, 5)
    worst = 0.0
    for a in phases:
        for b in phases:
            lo, hi = (float(a), float(b)) if a <= b else (float(b), float(a))
            circ = build_scattering_circuit(evo.hamiltonian, obs, lo, hi)
            reduced = partial_trace(run(circ, rho_in), "system")
            worst = max(worst, trace_distance(reduced, rho_sys))
    return worst


# --------------------------------------------------------------------------
# serialization


def _clean(value: float) -> float:
    # normalize -0.0 so formatting is sign-stable
    return value + 0.0


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return f"{_clean(float(value)):.9f}"


def emit_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def emit_json(cfg: RunConfig, header: list[str], rows: list[list]) -> str:
    def jsonable(value):
        if isinstance(value, str):
            return value
        return round(_clean(float(value)), 9)

    payload = {
        "config": asdict(cfg),
        "rows": [dict(zip(header, (jsonable(v) for v in row))) for row in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


# SVG geometry: fixed canvas, margins around the plot area.
_SVG_W, _SVG_H = 900, 520
_SVG_ML, _SVG_MR, _SVG_MT, _SVG_MB = 70, 24, 28, 52

_CURVE_COLORS = ("#1f77b4", "#d62728", "#2ca02c")


def _svg_scales(theta_lo, theta_hi, y_lo, y_hi):
    pad = 0.08 * (y_hi - y_lo or 1.0)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    plot_w = _SVG_W - _SVG_ML - _SVG_MR
    plot_h = _SVG_H - _SVG_MT - _SVG_MB

    def sx(theta):
        return _SVG_ML + plot_w * (theta - theta_lo) / (theta_hi - theta_lo)

    def sy(value):
        return _SVG_MT + plot_h * (y_hi - value) / (y_hi - y_lo)

    return sx, sy, y_lo, y_hi


def emit_svg(cfg: RunConfig, results: list[LGResult]) -> str:
    """Self-contained SVG of the swept curves.

    For ``sweep``: the K(theta) polyline, the dashed classical bound K = 1,
    and one shaded band per violation interval.  For ``correlations``: the
    three correlator polylines.  No external references of any kind.
    """
    thetas = [r.theta for r in results]
    if cfg.command == "sweep":
        series = [("K", [r.k for r in results])]
        bands = find_violations(results)
    else:
        series = [
            ("C12", [r.c12 for r in results]),
            ("C23", [r.c23 for r in results]),
            ("C13", [r.c13 for r in results]),
        ]
        bands = []
    y_all = [v for _, ys in series for v in ys] + [1.0]
    sx, sy, y_lo, y_hi = _svg_scales(thetas[0], thetas[-1], min(y_all), max(y_all))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" '
        f'height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="#ffffff"/>',
    ]
    for lo, hi in bands:
        x0, x1 = sx(lo), sx(hi)
        parts.append(
            f'<rect class="violation" x="{x0:.2f}" y="{_SVG_MT}" '
            f'width="{max(x1 - x0, 0.0):.2f}" '
            f'height="{_SVG_H - _SVG_MT - _SVG_MB}" '
            f'fill="#f4a7a3" fill-opacity="0.45"/>'
        )
    # axes
    x_axis_y = sy(0.0) if y_lo <= 0.0 <= y_hi else _SVG_H - _SVG_MB
    parts.append(
        f'<line x1="{_SVG_ML}" y1="{x_axis_y:.2f}" x2="{_SVG_W - _SVG_MR}" '
        f'y2="{x_axis_y:.2f}" stroke="#444444" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_SVG_ML}" y1="{_SVG_MT}" x2="{_SVG_ML}" '
        f'y2="{_SVG_H - _SVG_MB}" stroke="#444444" stroke-width="1"/>'
    )
    # classical bound K = 1
    parts.append(
        f'<line class="bound" x1="{_SVG_ML}" y1="{sy(1.0):.2f}" '
        f'x2="{_SVG_W - _SVG_MR}" y2="{sy(1.0):.2f}" stroke="#888888" '
        f'stroke-width="1" stroke-dasharray="6,4"/>'
    )
    for (label, values), color in zip(series, _CURVE_COLORS):
        points = " ".join(
            f"{sx(t):.2f},{sy(v):.2f}" for t, v in zip(thetas, values)
        )
        parts.append(
            f'<polyline class="curve" fill="none" stroke="{color}" '
            f'stroke-width="1.5" points="{points}"/>'
        )
        parts.append(
            f'<text x="{_SVG_W - _SVG_MR - 40}" '
            f'y="{sy(values[-1]) - 6:.2f}" font-size="13" '
            f'fill="{color}" font-family="sans-serif">{label}</text>'
        )
    # tick labels at the theta endpoints and the y extremes
    for theta in (thetas[0], thetas[-1]):
        parts.append(
            f'<text x="{sx(theta):.2f}" y="{_SVG_H - _SVG_MB + 18}" '
            f'font-size="12" text-anchor="middle" fill="#444444" '
            f'font-family="sans-serif">{theta:.3f}</text>'
        )
    for value in (y_lo, 1.0, y_hi):
        parts.append(
            f'<text x="{_SVG_ML - 8}" y="{sy(value) + 4:.2f}" font-size="12" '
            f'text-anchor="end" fill="#444444" '
            f'font-family="sans-serif">{value:.2f}</text>'
        )
    parts.append(
        f'<text x="{(_SVG_ML + _SVG_W - _SVG_MR) // 2}" '
        f'y="{_SVG_H - 14}" font-size="13" text-anchor="middle" '
        f'fill="#222222" font-family="sans-serif">theta = energy gap x '
        f'measurement spacing (rad)</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _write_output(path: str | None, payload: str) -> None:
    data = payload.encode("utf-8")
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as fh:
        fh.write(data)


def run_command(cfg: RunConfig) -> int:
    try:
        header, rows, results = _compute(cfg)
    except (ValueError, ArithmeticError) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if cfg.format == "csv":
        payload = emit_csv(header, rows)
    elif cfg.format == "json":
        payload = emit_json(cfg, header, rows)
    else:
        payload = emit_svg(cfg, results)
    try:
        _write_output(cfg.output, payload)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse --help or malformed flags
        return int(exc.code or 0)
    return run_command(cfg)


if __name__ == "__main__":
    sys.exit(main())
