"""Command-line surface: reproduce profiles, oracles and scale reports.

Subcommands
    figure       profile CSV series + SVG overlay (fig2 | fig3 | fig4)
    oracle       iterated vs closed-form path sum fidelity table
    schrodinger  coarse-grained equation-of-motion residuals + commutator
    uncertainty  minimum-uncertainty angle and variance report
    scales       SI-unit scale estimates (meson / nature coupling)
    peaks        analytic vs numeric peak table over a set of N

Every command writes its data files plus manifest.json (schema
chronopath/1) listing each emitted file with a sha256 digest.  A config
file of key=value lines mirrors every flag; explicit flags win.

CSV column orders:
    figure  n, x_scaled | t_c_scaled, magnitude_normalized, phase
    oracle  n_steps, fidelity, one_minus_fidelity
    schrodinger  h, residual, ratio_vs_half_h
    peaks   n_steps, theta_over_pi, n_plus, n_hat_plus, n_minus,
            n_hat_minus, t_c_peak_scaled, t_c_hat_scaled, spacing,
            bound_ok
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from .errors import ChronopathError
from .amplitude import interference_profile, perturb_theta, theta_on_pole
from .figures import FIGURE_IDS, default_figure_spec, render_figure
from .manifest import write_manifest
from .operators import (
    build_realization,
    path_sum_compare,
    phenomenological_commutator,
    schrodinger_residual,
)
from .params import ModelParams
from .peaks import analytic_peaks, numeric_peaks, peak_spacing_bound
from .uncertainty import (
    ScalesInput,
    physical_scales,
    solve_min_uncertainty_theta,
    truncated_gaussian_moments,
    variance_bounds,
)

ORACLE_FIDELITY_FLOOR = 1.0 - 1e-8


def _parse_config(path: Path) -> dict:
    """key=value lines; '#' comments; lists are comma separated."""
    values: dict = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ChronopathError(f"config line {raw!r} is not key=value")
        key, _, val = line.partition("=")
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _coerce(text: str, like):
    if isinstance(like, bool):
        return text.lower() in ("1", "true", "yes", "on")
    if isinstance(like, int):
        return int(text)
    if isinstance(like, float):
        return float(text)
    if isinstance(like, list):
        return [int(tok) for tok in text.split(",") if tok.strip()]
    return text


# config coercion prototypes for options whose built-in default is None
_NONE_PROTOTYPES = {"n_steps": [0], "lambda_override": 0.0}


def _effective(args: argparse.Namespace, defaults: dict) -> dict:
    """Layer built-in defaults <- config file <- explicit flags."""
    config = _parse_config(args.config) if args.config else {}
    out = {}
    for key, default in defaults.items():
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            out[key] = cli_val
        elif key in config:
            proto = default if default is not None else _NONE_PROTOTYPES.get(key, "")
            out[key] = _coerce(config[key], proto)
        else:
            out[key] = default
    return out


def _write_rows(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_figure(args) -> int:
    opts = _effective(
        args,
        {
            "theta_over_pi": 2.23,
            "n_steps": None,
            "normalization": "max",
            "seed": 0,
            "perturb_theta_on_pole": False,
        },
    )
    spec = default_figure_spec(
        args.id,
        theta=opts["theta_over_pi"] * math.pi,
        n_list=opts["n_steps"],
        normalization=opts["normalization"],
    )
    out_dir = Path(args.out)
    files, extra = render_figure(spec, out_dir, perturb_on_pole=opts["perturb_theta_on_pole"])
    params = {"figure_id": args.id, **opts, **extra}
    params["n_steps"] = [s.n_steps for s in spec.series]
    write_manifest(out_dir, "figure", params, files)
    return 0


def _cmd_oracle(args) -> int:
    opts = _effective(args, {"n_max": 12, "dim": 64, "theta_over_pi": 2.23, "seed": 0})
    if opts["n_max"] > 14:
        raise ChronopathError("n_max must be <= 14 (cost grows with the chain length)")
    if opts["dim"] > 256:
        raise ChronopathError("dim must be <= 256")
    theta = opts["theta_over_pi"] * math.pi
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    worst = 1.0
    for n in range(1, opts["n_max"] + 1):
        lam = theta / n  # delta_t = 1, so z = theta / n
        real = build_realization(opts["dim"], lam, evolution_span=float(n))
        result = path_sum_compare(real, n, 1.0)
        rows.append([n, result.fidelity, 1.0 - result.fidelity])
        worst = min(worst, result.fidelity)
    table = out_dir / "oracle.csv"
    _write_rows(table, ["n_steps", "fidelity", "one_minus_fidelity"], rows)
    write_manifest(out_dir, "oracle", opts, [table])
    if worst < ORACLE_FIDELITY_FLOOR:
        print(
            f"oracle FAILED: worst fidelity {worst!r} below {ORACLE_FIDELITY_FLOOR!r}",
            file=sys.stderr,
        )
        return 1
    return 0


def _cmd_schrodinger(args) -> int:
    opts = _effective(
        args,
        {"dim": 128, "theta_over_pi": 2.23, "n_steps": None, "h0": 1e-3, "levels": 5, "seed": 0},
    )
    n_steps = opts["n_steps"][0] if isinstance(opts["n_steps"], list) else (opts["n_steps"] or 16)
    theta = opts["theta_over_pi"] * math.pi
    params = ModelParams(1.0, theta, n_steps)
    real = build_realization(
        opts["dim"], params.lam, evolution_span=n_steps * params.delta_t
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    residuals = []
    h = opts["h0"]
    for _ in range(opts["levels"]):
        residuals.append(schrodinger_residual(real, params, h))
        h /= 2.0
    h = opts["h0"]
    for i, res in enumerate(residuals):
        ratio = residuals[i] / residuals[i + 1] if i + 1 < len(residuals) else math.nan
        rows.append([h, res, ratio])
        h /= 2.0
    table = out_dir / "residuals.csv"
    _write_rows(table, ["h", "residual", "ratio_vs_half_h"], rows)
    scalar = phenomenological_commutator(real, params)
    target = -1j * (theta / (2.0 * math.pi)) * params.lam
    report = out_dir / "commutator.json"
    _write_json(
        report,
        {
            "commutator_scalar": [scalar.real, scalar.imag],
            "target": [target.real, target.imag],
            "relative_error": abs(scalar - target) / abs(target),
            "theta_over_pi": opts["theta_over_pi"],
            "lambda": params.lam,
        },
    )
    write_manifest(out_dir, "schrodinger", {**opts, "n_steps": n_steps}, [table, report])
    return 0


def _cmd_uncertainty(args) -> int:
    opts = _effective(args, {"n_grid": 4001, "seed": 0})
    theta_star = solve_min_uncertainty_theta()
    rep = variance_bounds(theta_star, 1.0)
    mean, var = truncated_gaussian_moments(1.0, opts["n_grid"])
    closed = (1.0 - 2.0 / math.pi) / 4.0
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = out_dir / "uncertainty.json"
    _write_json(
        report,
        {
            "theta_star": theta_star,
            "theta_star_over_pi": theta_star / math.pi,
            "tan_quarter_theta_star": math.tan(theta_star / 4.0),
            "var_tc_bound_at_lambda1": rep.var_tc_bound,
            "var_tc_energy_time_at_lambda1": rep.var_tc_energy_time,
            "var_h_at_lambda1": rep.var_h,
            "energy_time_product": math.sqrt(rep.var_h * rep.var_tc_energy_time),
            "half_normal_variance_quadrature": var,
            "half_normal_variance_closed_form": closed,
            "half_normal_mean_quadrature": mean,
        },
    )
    write_manifest(out_dir, "uncertainty", opts, [report])
    return 0


def _cmd_scales(args) -> int:
    opts = _effective(
        args,
        {"f": 1.0, "delta_t_min": 5.4e-44, "mode": "meson", "lambda_override": None, "seed": 0},
    )
    inp = ScalesInput(
        f=opts["f"],
        delta_t_min=opts["delta_t_min"],
        lambda_override=opts["lambda_override"],
    )
    report = physical_scales(inp, mode=opts["mode"])
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "scales.json"
    _write_json(path, report.as_dict())
    write_manifest(out_dir, "scales", opts, [path])
    return 0


def _cmd_peaks(args) -> int:
    opts = _effective(
        args,
        {
            "theta_over_pi": 2.23,
            "n_steps": [300, 1200, 2600, 4600],
            "sigma_t": 1.0,
            "delta_t_min": 0.0,
            "perturb_theta_on_pole": False,
            "seed": 0,
        },
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for n in opts["n_steps"]:
        theta = opts["theta_over_pi"] * math.pi
        if opts["perturb_theta_on_pole"] and theta_on_pole(theta, n):
            theta = perturb_theta(theta, n)
        params = ModelParams(opts["sigma_t"], theta, n, opts["delta_t_min"])
        analysis = analytic_peaks(params)
        n_hat_plus, n_hat_minus = numeric_peaks(interference_profile(params))
        t_c_hat = params.clock_time(n_hat_plus) / params.sigma_t
        if opts["delta_t_min"] > 0.0:
            spacing, bound_ok = peak_spacing_bound(params)
        else:
            spacing, bound_ok = analysis.spacing, ""
        rows.append(
            [
                n,
                theta / math.pi,
                analysis.n_plus,
                n_hat_plus,
                analysis.n_minus,
                n_hat_minus,
                analysis.t_c_peak / params.sigma_t,
                t_c_hat,
                spacing,
                bound_ok,
            ]
        )
    table = out_dir / "peaks.csv"
    _write_rows(
        table,
        [
            "n_steps",
            "theta_over_pi",
            "n_plus",
            "n_hat_plus",
            "n_minus",
            "n_hat_minus",
            "t_c_peak_scaled",
            "t_c_hat_scaled",
            "spacing",
            "bound_ok",
        ],
        rows,
    )
    write_manifest(out_dir, "peaks", opts, [table])
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(sub) -> None:
    sub.add_argument("--out", required=True, help="output directory")
    sub.add_argument("--config", default=None, help="key=value file mirroring the flags")
    sub.add_argument("--seed", type=int, default=None, help="reserved; runs are deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chronopath",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subs = parser.add_subparsers(dest="command", required=True)

    fig = subs.add_parser("figure", help="profile CSV series + SVG overlay")
    fig.add_argument("--id", required=True, choices=FIGURE_IDS)
    fig.add_argument("--theta-over-pi", type=float, default=None)
    fig.add_argument("--n-steps", type=int, action="append", default=None)
    fig.add_argument("--normalization", choices=("max", "l2"), default=None)
    fig.add_argument("--perturb-theta-on-pole", action="store_const", const=True, default=None)
    _add_common(fig)
    fig.set_defaults(func=_cmd_figure)

    orc = subs.add_parser("oracle", help="path-sum equivalence fidelity table")
    orc.add_argument("--n-max", type=int, default=None)
    orc.add_argument("--dim", type=int, default=None)
    orc.add_argument("--theta-over-pi", type=float, default=None)
    _add_common(orc)
    orc.set_defaults(func=_cmd_oracle)

    sch = subs.add_parser("schrodinger", help="coarse-grained equation residuals")
    sch.add_argument("--dim", type=int, default=None)
    sch.add_argument("--theta-over-pi", type=float, default=None)
    sch.add_argument("--n-steps", type=int, default=None)
    sch.add_argument("--h0", type=float, default=None)
    sch.add_argument("--levels", type=int, default=None)
    _add_common(sch)
    sch.set_defaults(func=_cmd_schrodinger)

    unc = subs.add_parser("uncertainty", help="minimum-uncertainty report")
    unc.add_argument("--n-grid", type=int, default=None)
    _add_common(unc)
    unc.set_defaults(func=_cmd_uncertainty)

    sca = subs.add_parser("scales", help="SI-unit scale estimates")
    sca.add_argument("--f", type=float, default=None)
    sca.add_argument("--delta-t-min", type=float, default=None)
    sca.add_argument("--mode", choices=("meson", "nature"), default=None)
    sca.add_argument("--lambda-override", type=float, default=None)
    _add_common(sca)
    sca.set_defaults(func=_cmd_scales)

    pks = subs.add_parser("peaks", help="analytic vs numeric peak table")
    pks.add_argument("--theta-over-pi", type=float, default=None)
    pks.add_argument("--n-steps", type=int, action="append", default=None)
    pks.add_argument("--sigma-t", type=float, default=None)
    pks.add_argument("--delta-t-min", type=float, default=None)
    pks.add_argument("--perturb-theta-on-pole", action="store_const", const=True, default=None)
    _add_common(pks)
    pks.set_defaults(func=_cmd_peaks)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ChronopathError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"invalid value: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"io error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
