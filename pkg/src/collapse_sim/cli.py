"""Command-line front end: simulate, spectrum, qsl, and sweep subcommands.

Exit codes: 0 success, 1 configuration or usage error, 2 numerical failure.
``COLLAPSE_SIM_THREADS`` caps sweep concurrency.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .analysis import diag_generator_matrix, gamma_sweep, generator_spectrum, qsl_lower_bound
from .config import RunConfig, load_run_config
from .csvio import write_qsl_csv, write_spectrum_csv, write_sweep_csv, write_trajectory_csv
from .dissipator import lindblad_jump_family
from .errors import IntegrationError, ValidationError
from .evolution import Trajectory, alignment_time, master_rhs, simulate_model
from .svgplot import write_line_plot


class _Parser(argparse.ArgumentParser):
    # usage problems are configuration errors: exit 1, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="collapse-sim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_mode=True):
        p.add_argument("--config", required=True, help="path to a JSON run configuration")
        p.add_argument("--out", default=None, help="output directory (default from config)")
        if with_mode:
            p.add_argument("--mode", choices=("full", "fast"), default=None,
                           help="override the configured integration mode")

    p_sim = sub.add_parser("simulate", help="integrate a scenario and write trajectory.csv")
    add_common(p_sim)
    p_sim.add_argument("--plot", action="store_true", default=None,
                       help="also write fig1.svg and fig2.svg")

    p_spec = sub.add_parser("spectrum", help="eigenvalues and stationary vector of the diagonal generator")
    add_common(p_spec, with_mode=False)

    p_qsl = sub.add_parser("qsl", help="speed-limit bound against the measured alignment time")
    add_common(p_qsl)

    p_sweep = sub.add_parser("sweep", help="alignment times over a list of coupling strengths")
    add_common(p_sweep)
    p_sweep.add_argument("--gammas", default=None,
                         help="comma-separated coupling strengths, e.g. 2.5,5,10,20")
    return parser


def _ensure_outdir(cfg: RunConfig) -> str:
    os.makedirs(cfg.out_dir, exist_ok=True)
    return cfg.out_dir


def _write_figures(cfg: RunConfig, traj: Trajectory) -> None:
    out = cfg.out_dir
    probs = cfg.model.probabilities()
    corr = cfg.model.correspondence
    series = []
    for i, (group, weights) in enumerate(zip(corr.assignment, corr.weights)):
        for j, w in zip(group, weights):
            weight = probs[i] * w
            if weight <= 0:
                continue
            flat = i * corr.readings + j
            series.append(
                (f"diag_{flat} / {weight:.4g}", traj.times, traj.diagonals[:, flat] / weight)
            )
    aligned = [i * corr.readings + j for i, g in enumerate(corr.assignment) for j in g]
    pair = (min(aligned), max(aligned)) if len(aligned) >= 2 else traj.offdiag_pairs[0]
    if pair in traj.offdiag_pairs:
        k = traj.offdiag_pairs.index(pair)
        series.append((f"re_{pair[0]}_{pair[1]}", traj.times, traj.offdiag_re[:, k]))
    write_line_plot(
        os.path.join(out, "fig1.svg"),
        series,
        title="Aligned diagonals (normalized) and a decaying off-diagonal",
        xlabel="t [1/omega]",
        ylabel="value",
    )
    write_line_plot(
        os.path.join(out, "fig2.svg"),
        [("entropy", traj.times, traj.entropy)],
        title="Spectral entropy of the combined state",
        xlabel="t [1/omega]",
        ylabel="entropy [nats]",
    )


def _cmd_simulate(args) -> int:
    cfg = load_run_config(args.config, mode=args.mode, out_dir=args.out, plot=args.plot)
    out = _ensure_outdir(cfg)
    traj = simulate_model(cfg.model, cfg.integrator, mode=cfg.mode)
    write_trajectory_csv(os.path.join(out, "trajectory.csv"), traj)
    if cfg.plot:
        _write_figures(cfg, traj)
    return 0


def _cmd_spectrum(args) -> int:
    cfg = load_run_config(args.config, out_dir=args.out)
    out = _ensure_outdir(cfg)
    model = cfg.model
    p_all = model.rate_table().flat_probabilities()
    generator = diag_generator_matrix(p_all, model.gamma, model.omega)
    spectrum = generator_spectrum(generator, rate_scale=model.gamma * model.omega)
    write_spectrum_csv(os.path.join(out, "spectrum.csv"), spectrum)
    return 0


def _cmd_qsl(args) -> int:
    cfg = load_run_config(args.config, mode=args.mode, out_dir=args.out)
    out = _ensure_outdir(cfg)
    model = cfg.model
    traj = simulate_model(model, cfg.integrator, mode=cfg.mode)
    target = model.aligned_target()
    measured = alignment_time(traj, target, tol=cfg.alignment_tol)
    spec = lindblad_jump_family(model.rate_table(), model.gamma, model.omega)
    hamiltonian = model.hamiltonian if cfg.mode == "full" else None
    initial_rhs = master_rhs(hamiltonian, spec, model.initial_dm())
    report = qsl_lower_bound(model.initial_dm(), target, initial_rhs,
                             measured_alignment_time=measured)
    write_qsl_csv(os.path.join(out, "qsl.csv"), report)
    return 0


def _max_workers() -> int | None:
    raw = os.environ.get("COLLAPSE_SIM_THREADS")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValidationError(f"COLLAPSE_SIM_THREADS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValidationError(f"COLLAPSE_SIM_THREADS must be at least 1, got {value}")
    return value


def _cmd_sweep(args) -> int:
    gammas = None
    if args.gammas is not None:
        text = args.gammas.strip()
        if not text:
            raise ValidationError("--gammas needs at least one value")
        try:
            gammas = tuple(float(x) for x in text.split(","))
        except ValueError as exc:
            raise ValidationError(f"--gammas must be a comma-separated number list, got {args.gammas!r}") from exc
    cfg = load_run_config(args.config, mode=args.mode, out_dir=args.out, gammas=gammas)
    if not cfg.gammas:
        raise ValidationError("sweep needs coupling strengths via --gammas or the config's 'gammas'")
    out = _ensure_outdir(cfg)
    rows = gamma_sweep(cfg.model, cfg.gammas, cfg.integrator, mode=cfg.mode,
                       tol=cfg.alignment_tol, max_workers=_max_workers())
    write_sweep_csv(os.path.join(out, "sweep.csv"), rows)
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "spectrum": _cmd_spectrum,
    "qsl": _cmd_qsl,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (IntegrationError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
