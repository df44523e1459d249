"""Command-line front end.

Regenerates the reference tables and figure datasets and exposes the
evaluators for scripted use. Five subcommands:

* ``lambda0``   -- concentration eigenvalue along c values or a range;
* ``bounds``    -- every bound at one confidence pair, or the landscape
  of the tight interval bound on an interior grid;
* ``compare``   -- Gaussian versus saturating-state products at equal
  confidences;
* ``verify``    -- self-check suites with machine-readable pass/fail;
* ``state``     -- sample states with position/momentum density columns
  for external plotting.

Output is CSV with one header row (default) or a JSON array of the same
records. Numbers carry 6 significant digits; eigenvalue tables also
report 1 - lambda0 in scientific notation so near-unity values stay
resolvable. Exit codes: 0 success, 1 a verification check failed,
2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bounds import (
    BoundDivergenceError,
    ConfidencePair,
    Region,
    angular_target,
    classify_region,
    donoho_stark_bound,
    elementary_bound,
    gaussian_interval_product,
    lp_measurable_bound,
    report,
)
from .errors import ConfuncError, DomainError
from .numerics import largest_eigenpair
from .slepian import (
    DEFAULT_ORDER,
    a_matrix,
    lambda0,
    lambda0_inverse_batch,
    lambda0_large_c,
    lambda0_small_c,
)
from .states import (
    Grid,
    differential_entropy,
    fourier_transform,
    gaussian_state,
    probability_in_interval,
    random_smooth_state,
    rect_sinc_prediction,
    rect_sinc_state,
    slepian_state,
    verify_lenard,
)

__all__ = ["RunConfig", "main"]

_ENV_ORDER = "CONFUNC_ORDER"
_COMPARE_DEFAULT = (0.55, 0.60, 0.70, 0.80, 0.90, 0.95, 0.99)


@dataclass(frozen=True)
class RunConfig:
    """Resolved global options shared by all subcommands."""

    hbar: float = 1.0
    quadrature_order: int = DEFAULT_ORDER
    grid_points: int = 4096
    output_format: str = "csv"
    output_path: str | None = None
    seed: int = 42

    def __post_init__(self) -> None:
        if not (math.isfinite(self.hbar) and self.hbar > 0):
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        if self.quadrature_order < 2:
            raise DomainError(f"order must be at least 2, got {self.quadrature_order}")
        if self.grid_points < 16:
            raise DomainError(f"grid_points must be at least 16, got {self.grid_points}")
        if self.output_format not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.output_format}")


# --------------------------------------------------------------------
# Emission
# --------------------------------------------------------------------


def _fmt(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.6g}"


def _json_value(value: object) -> object:
    if value is None or isinstance(value, (str, bool)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    v = float(value)
    if math.isinf(v) or math.isnan(v):
        return _fmt(v)
    # keep the JSON mirror at the same printed precision as the CSV
    return float(f"{v:.6g}")


def _emit(rows: list[dict], config: RunConfig) -> None:
    if not rows:
        return
    fields = list(rows[0].keys())
    if config.output_format == "csv":
        text_rows = [{k: _fmt(r[k]) for k in fields} for r in rows]
        target = (
            open(config.output_path, "w", newline="", encoding="ascii")
            if config.output_path
            else sys.stdout
        )
        try:
            writer = csv.DictWriter(target, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            writer.writerows(text_rows)
        finally:
            if config.output_path:
                target.close()
    else:
        payload = [{k: _json_value(r[k]) for k in fields} for r in rows]
        text = json.dumps(payload, indent=1)
        if config.output_path:
            Path(config.output_path).write_text(text + "\n", encoding="ascii")
        else:
            sys.stdout.write(text + "\n")


def _note(message: str) -> None:
    print(message, file=sys.stderr)


# --------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------


def _parse_range(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise DomainError(f"range must be start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise DomainError(f"range must be numeric, got {spec!r}") from exc
    if step <= 0 or stop < start:
        raise DomainError(f"range requires start <= stop and step > 0, got {spec!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def _cmd_lambda0(args: argparse.Namespace, config: RunConfig) -> tuple[list[dict], int]:
    values: list[float] = list(args.c or [])
    if args.range:
        values.extend(_parse_range(args.range))
    if not values:
        raise DomainError("lambda0 needs --c or --range")
    rows = []
    for c in values:
        lam = lambda0(c, order=config.quadrature_order)
        rows.append(
            {
                "c": c,
                "lambda0": lam,
                "one_minus_lambda0": f"{1.0 - lam:.6e}",
                "small_c_approx": lambda0_small_c(c),
                "large_c_approx": lambda0_large_c(c),
            }
        )
    return rows, 0


def _interval_cell(pair: ConfidencePair, hbar: float, c_over_t: float | None) -> object:
    """Landscape cell value: 0 in the trivial region, 'divergent' at (1,1)."""
    if classify_region(pair) is Region.TRIVIAL:
        return 0.0
    if c_over_t is None:
        return "divergent"
    return 4.0 * hbar * c_over_t


def _bounds_points(
    pairs: list[ConfidencePair], config: RunConfig
) -> tuple[list[float | None], list[float]]:
    """Inverse eigenvalues for every bounded nondivergent pair, batched."""
    targets = [angular_target(p) for p in pairs]
    solvable = [
        i
        for i, (p, t) in enumerate(zip(pairs, targets))
        if classify_region(p) is Region.BOUNDED and t < 1.0
    ]
    inverses: list[float | None] = [None] * len(pairs)
    if solvable:
        solved = lambda0_inverse_batch(
            np.array([targets[i] for i in solvable]), order=config.quadrature_order
        )
        for i, c in zip(solvable, solved):
            inverses[i] = float(c)
    return inverses, targets


def _cmd_bounds(args: argparse.Namespace, config: RunConfig) -> tuple[list[dict], int]:
    if args.grid is not None:
        if args.grid < 1:
            raise DomainError(f"--grid must be a positive cell count, got {args.grid}")
        levels = [i / (args.grid + 1) for i in range(1, args.grid + 1)]
        pairs = [ConfidencePair(tx, tp) for tx in levels for tp in levels]
        inverses, _ = _bounds_points(pairs, config)
        rows = [
            {
                "theta_x": p.theta_x,
                "theta_p": p.theta_p,
                "lp_interval": _interval_cell(p, config.hbar, inv),
            }
            for p, inv in zip(pairs, inverses)
        ]
        return rows, 0
    if args.tx is None or args.tp is None:
        raise DomainError("bounds needs --tx and --tp, or --grid")
    pair = ConfidencePair(args.tx, args.tp)
    try:
        rep = report(pair, hbar=config.hbar, order=config.quadrature_order)
        interval: object = 0.0 if rep.lp_interval is None else rep.lp_interval
        row = {
            "theta_x": pair.theta_x,
            "theta_p": pair.theta_p,
            "region": rep.region.value,
            "angular_target": rep.angular_target,
            "lp_measurable": rep.lp_measurable,
            "lp_interval": interval,
            "donoho_stark": rep.donoho_stark,
            "elementary": rep.elementary,
            "gaussian_product": rep.gaussian_product,
        }
    except BoundDivergenceError:
        row = {
            "theta_x": pair.theta_x,
            "theta_p": pair.theta_p,
            "region": classify_region(pair).value,
            "angular_target": angular_target(pair),
            "lp_measurable": lp_measurable_bound(pair, hbar=config.hbar),
            "lp_interval": "divergent",
            "donoho_stark": donoho_stark_bound(pair, hbar=config.hbar),
            "elementary": elementary_bound(pair),
            "gaussian_product": math.inf,
        }
    return [row], 0


def _cmd_compare(args: argparse.Namespace, config: RunConfig) -> tuple[list[dict], int]:
    thetas = list(args.theta) if args.theta else list(_COMPARE_DEFAULT)
    for theta in thetas:
        if not 0.0 < theta < 1.0:
            raise DomainError(f"compare requires 0 < theta < 1, got {theta}")
    targets = np.array([(2.0 * t - 1.0) ** 2 for t in thetas])
    positive = targets > 0.0
    slepian = np.zeros(len(thetas))
    if np.any(positive):
        slepian[positive] = 4.0 * config.hbar * lambda0_inverse_batch(
            targets[positive], order=config.quadrature_order
        )
    rows = []
    for theta, product in zip(thetas, slepian):
        gaussian = gaussian_interval_product(theta, hbar=config.hbar)
        rows.append(
            {
                "theta": theta,
                "gaussian": gaussian,
                "slepian": product,
                "ratio": gaussian / product if product > 0 else math.inf,
            }
        )
    return rows, 0


# ---- verify suites --------------------------------------------------


def _check(suite: str, name: str, measured: float, threshold: float, ok: bool) -> dict:
    return {
        "suite": suite,
        "check": name,
        "measured": measured,
        "threshold": threshold,
        "status": "pass" if ok else "fail",
    }


def _suite_strictness(config: RunConfig) -> list[dict]:
    rows = []
    h = config.hbar
    # the band width carries a factor hbar so the suite probes the same
    # concentration parameter c = L*W/(4*hbar) whatever --hbar says
    for length, n, half in ((0.1, 1 << 20, 6553.6), (0.01, 1 << 22, 10485.76)):
        grid = Grid.symmetric(half, n)
        width = length * h
        state = rect_sinc_state(grid, length, width, 0.5, hbar=h)
        mass_x = probability_in_interval(state, -0.5 * length, 0.5 * length)
        momentum = fourier_transform(state)
        mass_p = probability_in_interval(momentum, -0.5 * width, 0.5 * width)
        tag = f"L_W_{length}"
        rows.append(_check("strictness", f"position_mass_{tag}", mass_x, 0.5, mass_x > 0.5))
        rows.append(_check("strictness", f"momentum_mass_{tag}", mass_p, 0.5, mass_p > 0.5))
    return rows


def _suite_two_route(config: RunConfig) -> list[dict]:
    rows = []
    for c in (0.5, 1.0, 1.5, 2.0):
        norm, _ = largest_eigenpair(a_matrix(4.0 * c))
        diff = abs(norm / math.pi - lambda0(c, order=config.quadrature_order))
        rows.append(_check("two-route", f"a_matrix_vs_eigenvalue_c_{c}", diff, 1e-6, diff <= 1e-6))
    return rows


def _suite_dominance(config: RunConfig) -> list[dict]:
    rows = []
    levels = [i / 100.0 for i in range(1, 100)]
    worst = math.inf
    for tx in levels:
        for tp in levels:
            pair = ConfidencePair(tx, tp)
            if classify_region(pair) is Region.TRIVIAL:
                continue
            diff = lp_measurable_bound(pair, config.hbar) - donoho_stark_bound(
                pair, config.hbar
            )
            worst = min(worst, diff)
    rows.append(
        _check("dominance", "measurable_minus_donoho_stark_grid99", worst, 0.0, worst > 0.0)
    )
    spots = [i / 20.0 for i in range(11, 20)]
    pairs = [
        ConfidencePair(tx, tp)
        for tx in spots
        for tp in spots
        if tx + tp > 1.0
    ]
    inverses, targets = _bounds_points(pairs, config)
    worst = math.inf
    for pair, inv, target in zip(pairs, inverses, targets):
        diff = 4.0 * config.hbar * inv - 2.0 * math.pi * config.hbar * target
        worst = min(worst, diff)
    rows.append(
        _check("dominance", "interval_minus_measurable_spot_grid", worst, 0.0, worst > 0.0)
    )
    return rows


def _suite_lenard(config: RunConfig) -> list[dict]:
    rows = []
    grid = Grid.symmetric(20.0, config.grid_points)
    slack = 1e-6
    for k in range(50):
        seed = config.seed + k
        state = random_smooth_state(grid, seed, hbar=config.hbar)
        rng = np.random.default_rng(seed + 1_000_003)
        worst = math.inf
        for _ in range(20):
            xc = rng.uniform(-5.0, 5.0)
            xw = rng.uniform(0.2, 5.0)
            pc = rng.uniform(-20.0, 20.0) * config.hbar
            pw = rng.uniform(0.2, 5.0) * config.hbar
            witness = verify_lenard(
                state,
                (xc - 0.5 * xw, xc + 0.5 * xw),
                (pc - 0.5 * pw, pc + 0.5 * pw),
                slack=slack,
                order=config.quadrature_order,
            )
            worst = min(worst, witness.margin)
        rows.append(
            _check("lenard", f"min_margin_seed_{seed}", worst, -slack, worst >= -slack)
        )
    return rows


_SUITES = {
    "strictness": _suite_strictness,
    "lenard": _suite_lenard,
    "two-route": _suite_two_route,
    "dominance": _suite_dominance,
}


def _cmd_verify(args: argparse.Namespace, config: RunConfig) -> tuple[list[dict], int]:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    rows: list[dict] = []
    for name in names:
        rows.extend(_SUITES[name](config))
    failed = [r for r in rows if r["status"] != "pass"]
    return rows, 1 if failed else 0


# ---- state emission -------------------------------------------------


def _auto_rect_sinc_grid(length: float, width: float, hbar: float) -> Grid:
    """Power-of-two grid resolving the window (dx = L/8) and holding the
    sinc tail below the default tolerance."""
    dx = length / 8.0
    reach = 2.0 * hbar / (math.pi * width * 1e-2)
    n = 16
    while n * dx < 2.0 * reach:
        n *= 2
        if n > (1 << 24):
            raise DomainError(
                "rect-sinc grid would exceed 2^24 cells; "
                "increase L*W or accept a wider tail"
            )
    return Grid.symmetric(0.5 * n * dx, n)


def _cmd_state(args: argparse.Namespace, config: RunConfig) -> tuple[list[dict], int]:
    h = config.hbar
    if args.kind == "gaussian":
        sigma = args.sigma if args.sigma is not None else 1.0
        grid = Grid.symmetric(16.0 * sigma, config.grid_points)
        state = gaussian_state(grid, sigma, hbar=h)
        momentum = fourier_transform(state)
        hx = differential_entropy(state)
        hp = differential_entropy(momentum)
        _note(
            f"gaussian sigma={sigma}: h(x)={hx:.6f}, h(p)={hp:.6f}, "
            f"sum={hx + hp:.6f}, entropic floor={math.log(math.pi * math.e * h):.6f}"
        )
    elif args.kind == "slepian":
        if args.c is None:
            raise DomainError("state slepian needs --c")
        length = args.L if args.L is not None else 2.0
        # a wide domain keeps the momentum grid fine enough to resolve
        # the in-band fraction: dp = 2*pi*hbar/(n*dx) shrinks with n*dx
        grid = Grid.symmetric(48.0 * length, 1 << 15)
        state = slepian_state(
            args.c, length, hbar=h, grid=grid, order=config.quadrature_order
        )
        momentum = fourier_transform(state)
        width = 4.0 * h * args.c / length
        in_band = probability_in_interval(momentum, -0.5 * width, 0.5 * width)
        _note(
            f"slepian c={args.c}, L={length}, W={width:.6g}: "
            f"in-band momentum mass={in_band:.6f}, "
            f"lambda0={lambda0(args.c, order=config.quadrature_order):.6f}"
        )
    elif args.kind == "rect-sinc":
        if args.L is None or args.W is None:
            raise DomainError("state rect-sinc needs --L and --W")
        weight = args.P if args.P is not None else 0.5
        grid = _auto_rect_sinc_grid(args.L, args.W, h)
        state = rect_sinc_state(grid, args.L, args.W, weight, hbar=h)
        momentum = fourier_transform(state)
        mass_x = probability_in_interval(state, -0.5 * args.L, 0.5 * args.L)
        mass_p = probability_in_interval(momentum, -0.5 * args.W, 0.5 * args.W)
        predicted = rect_sinc_prediction(args.L, args.W, weight, hbar=h)
        _note(
            f"rect-sinc L={args.L}, W={args.W}, P={weight}: "
            f"position mass={mass_x:.6f} (continuum {predicted.position_mass:.6f}), "
            f"momentum mass={mass_p:.6f} (continuum {predicted.momentum_mass:.6f})"
        )
    else:  # pragma: no cover - argparse choices guard this
        raise DomainError(f"unknown state kind {args.kind!r}")

    momentum_grid = momentum.grid
    density_x = state.density
    density_p = momentum.density
    rows = [
        {
            "x": x,
            "re_psi": a.real,
            "im_psi": a.imag,
            "density_x": dx_,
            "p": p,
            "density_p": dp_,
        }
        for x, a, dx_, p, dp_ in zip(
            state.grid.centers,
            state.amplitudes,
            density_x,
            momentum_grid.centers,
            density_p,
        )
    ]
    return rows, 0


# --------------------------------------------------------------------
# Parser and entry point
# --------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confunc",
        description="Confidence-uncertainty bounds for position and momentum.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hbar", type=float, default=1.0, help="value of hbar (default 1)")
    common.add_argument(
        "--order",
        type=int,
        default=None,
        help=f"quadrature order (default {DEFAULT_ORDER}; env {_ENV_ORDER} overrides)",
    )
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--seed", type=int, default=42, help="corpus seed (verify)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda0", parents=[common], help="concentration eigenvalue table")
    p.add_argument("--c", type=float, action="append", help="a c value (repeatable)")
    p.add_argument("--range", default=None, help="c range start:stop:step, inclusive")
    p.set_defaults(handler=_cmd_lambda0)

    p = sub.add_parser("bounds", parents=[common], help="bound report or landscape grid")
    p.add_argument("--tx", type=float, default=None, help="position confidence")
    p.add_argument("--tp", type=float, default=None, help="momentum confidence")
    p.add_argument(
        "--grid",
        type=int,
        default=None,
        help="emit the tight-bound landscape on an N x N interior grid",
    )
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("compare", parents=[common], help="Gaussian vs saturating state")
    p.add_argument(
        "--theta",
        type=float,
        action="append",
        help="equal-confidence level (repeatable; default Table-style list)",
    )
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("verify", parents=[common], help="self-check suites")
    p.add_argument("suite", choices=(*_SUITES, "all"))
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("state", parents=[common], help="sample state with densities")
    p.add_argument("kind", choices=("slepian", "rect-sinc", "gaussian"))
    p.add_argument("--c", type=float, default=None, help="concentration (slepian)")
    p.add_argument("--L", type=float, default=None, help="window length")
    p.add_argument("--W", type=float, default=None, help="band width (rect-sinc)")
    p.add_argument("--P", type=float, default=None, help="rectangle weight (rect-sinc)")
    p.add_argument("--sigma", type=float, default=None, help="deviation (gaussian)")
    p.set_defaults(handler=_cmd_state)
    return parser


def _resolve_order(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(_ENV_ORDER)
    if env is None:
        return DEFAULT_ORDER
    try:
        return int(env)
    except ValueError as exc:
        raise DomainError(f"{_ENV_ORDER} must be an integer, got {env!r}") from exc


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        config = RunConfig(
            hbar=args.hbar,
            quadrature_order=_resolve_order(args.order),
            grid_points=4096,
            output_format=args.format,
            output_path=args.out,
            seed=args.seed,
        )
        rows, code = args.handler(args, config)
        _emit(rows, config)
        return code
    except ConfuncError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
