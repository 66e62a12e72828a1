"""Command-line interface.

Subcommands: ``design``, ``simulate``, ``dissipative`` (simulate with decay
and dephasing) and ``scan``.  All computation runs in natural units
(omega_b = 1, times in 1/omega_b); with ``--units ps`` the biexciton shift
is read in 1/ps, decay/dephasing rates in 1/ns, and all reported times are
converted to ps at the boundary.  ``--omega0`` is always the dimensionless
ratio omega0/omega_b.

Exit codes: 0 success, 2 domain error (infeasible or invalid parameters),
3 numerical failure (non-convergence, trace drift, no feasible duration).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .design import (
    ConstantDesign,
    OnOffOnDesign,
    SechDesign,
    design_constant,
    design_on_off_on,
    design_sech,
)
from .dynamics import (
    DensityState,
    RateParams,
    propagate_density,
    propagate_three_level,
)
from .envelopes import Piecewise, Sech
from .errors import DomainError, NumericalError
from .model import SystemParams, ThreeLevelState

UNITS_HELP = (
    "unit system: 'natural' works in units of omega_b (times in 1/omega_b); "
    "'ps' reads --omega-b in 1/ps, rates in 1/ns, and reports times in ps"
)
OMEGA0_HELP = "maximum Rabi amplitude as the dimensionless ratio omega0/omega_b"


@dataclass(frozen=True)
class UnitContext:
    """Conversion between internal natural units and the report units."""

    units: str
    omega_b: float  # physical omega_b in 1/ps when units == 'ps', else 1.0

    @classmethod
    def from_args(cls, args) -> "UnitContext":
        if args.units == "natural":
            if args.omega_b != 1.0:
                raise DomainError(
                    "--omega-b must be 1 in natural units; use --units ps for "
                    "a physical biexciton shift"
                )
            return cls("natural", 1.0)
        if args.omega_b <= 0:
            raise DomainError(f"--omega-b must be positive, got {args.omega_b}")
        return cls("ps", args.omega_b)

    @property
    def time_label(self) -> str:
        return "ps" if self.units == "ps" else "1/omega_b"

    def time_out(self, t_natural: float) -> float:
        return t_natural / self.omega_b

    def time_in(self, t: float) -> float:
        return t * self.omega_b

    def rate_in(self, per_ns: float) -> float:
        """Rate in natural units; input is 1/ns (ps mode) or omega_b units."""
        if self.units == "ps":
            return (per_ns / 1000.0) / self.omega_b
        return per_ns

    def comment(self) -> str:
        return (
            f"units={self.units} time_unit={self.time_label} "
            f"omega_b={self.omega_b!r}"
        )


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega-b", type=float, default=1.0, metavar="W",
                   help="biexciton frequency shift; 1 in natural units, "
                        "in 1/ps with --units ps (default: 1.0)")
    p.add_argument("--units", choices=("natural", "ps"), default="natural",
                   help=UNITS_HELP)


def _design_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega0", type=float, metavar="R", help=OMEGA0_HELP)
    p.add_argument("--n", type=int, default=2,
                   help="sech family index; amplitude*width = sqrt(2)*n "
                        "(default: 2)")
    p.add_argument("--k", type=int, default=2,
                   help="constant-pulse branch (even); amplitude "
                        "sqrt(2(k^2-1))*omega_b (default: 2)")
    p.add_argument("--variant", choices=("lower", "upper"), default="lower",
                   help="on-off-on sign variant: 'lower' puts the long "
                        "on-segment first (default: lower)")


def _build_design(kind: str, args):
    """Run the requested designer; returns (design, sequence-or-None, window)."""
    if kind == "constant":
        params = SystemParams(1.0, 0.0)
        design = design_constant(params, k=args.k)
        return design, design.to_sequence(), (0.0, design.total_T)
    if kind == "sech":
        params = SystemParams(1.0, 0.0)
        design = design_sech(params, n=args.n)
        half = design.truncation_halfwidth
        return design, None, (-half, half)
    if kind == "onoffon":
        if args.omega0 is None:
            raise DomainError("design 'onoffon' requires --omega0")
        params = SystemParams(1.0, args.omega0)
        lower, upper = design_on_off_on(params)
        design = lower if args.variant == "lower" else upper
        return design, design.to_sequence(), (0.0, design.total_T)
    raise DomainError(f"unknown design kind {kind!r}")


def _design_record(design, ctx: UnitContext) -> dict:
    scale = 1.0 / ctx.omega_b
    if isinstance(design, OnOffOnDesign):
        from .model import phase_condition_residual
        from .propagators import sequence_propagator

        params = SystemParams(1.0, design.omega0)
        residual = phase_condition_residual(
            sequence_propagator(params, design.to_sequence()),
            design.total_T, params,
        )
        return {
            "schema": 1,
            "kind": "onoffon",
            "omega_b": ctx.omega_b,
            "omega0": design.omega0 * ctx.omega_b,
            "segments": [
                {"amplitude": seg.amplitude * ctx.omega_b,
                 "duration": seg.duration * scale}
                for seg in design.to_sequence()
            ],
            "total_T": design.total_T * scale,
            "metadata": {
                "units": ctx.units,
                "root_tau2": design.tau2 * scale,
                "sign_variant": design.sign_variant.value,
                "residual": residual,
                "all_roots": [r * scale for r in design.all_roots],
            },
        }
    if isinstance(design, ConstantDesign):
        return {
            "schema": 1,
            "kind": "constant",
            "omega_b": ctx.omega_b,
            "omega0": design.omega0 * ctx.omega_b,
            "segments": [{"amplitude": design.omega0 * ctx.omega_b,
                          "duration": design.total_T * scale}],
            "total_T": design.total_T * scale,
            "metadata": {"units": ctx.units},
        }
    if isinstance(design, SechDesign):
        return {
            "schema": 1,
            "kind": "sech",
            "omega_b": ctx.omega_b,
            "omega0": design.omega0 * ctx.omega_b,
            "segments": [],
            "total_T": 2.0 * design.truncation_halfwidth * scale,
            "metadata": {
                "units": ctx.units,
                "n": design.n,
                "pulse_width": design.t_p * scale,
                "truncation_halfwidth": design.truncation_halfwidth * scale,
            },
        }
    raise DomainError(f"unknown design type {type(design).__name__}")


def _print_design_summary(kind: str, design, ctx: UnitContext) -> None:
    unit = ctx.time_label
    print(f"{kind} design (times in 1/omega_b"
          + (f", converted values in {unit}" if ctx.units == "ps" else "")
          + ")")

    def line(name: str, natural: float, is_time: bool = True) -> None:
        if ctx.units == "ps":
            conv = natural / ctx.omega_b if is_time else natural * ctx.omega_b
            print(f"  {name} = {natural!r}  [{conv!r} "
                  f"{'ps' if is_time else '1/ps'}]")
        else:
            print(f"  {name} = {natural!r}")

    if isinstance(design, OnOffOnDesign):
        line("omega0/omega_b", design.omega0, is_time=False)
        line("tau1", design.tau1)
        line("tau2", design.tau2)
        line("tau3", design.tau3)
        line("total_T", design.total_T)
        print(f"  sign_variant = {design.sign_variant.value}")
        print(f"  roots_found = {len(design.all_roots)}")
    elif isinstance(design, ConstantDesign):
        line("omega0/omega_b", design.omega0, is_time=False)
        line("total_T", design.total_T)
    elif isinstance(design, SechDesign):
        line("omega0/omega_b", design.omega0, is_time=False)
        line("pulse_width", design.t_p)
        line("truncation_halfwidth", design.truncation_halfwidth)
        print(f"  n = {design.n}")


def cmd_design(args) -> int:
    ctx = UnitContext.from_args(args)
    design, _, _ = _build_design(args.kind, args)
    record = _design_record(design, ctx)
    if args.format == "json":
        print(json.dumps(record, indent=2))
    else:
        _print_design_summary(args.kind, design, ctx)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(record, fh, indent=2)
            fh.write("\n")
        print(f"design record written to {args.out}")
    return 0


def _simulate(args, rates: RateParams | None) -> int:
    ctx = UnitContext.from_args(args)
    design, sequence, window = _build_design(args.kind, args)
    omega0 = design.omega0
    params = SystemParams(1.0, omega0)
    if sequence is not None:
        env = Piecewise(sequence)
    else:
        env = Sech(design.omega0, design.t_p)
    dt = ctx.time_in(args.dt) if args.dt is not None else None

    if rates is None:
        traj = propagate_three_level(params, env, window,
                                     ThreeLevelState.ground(), dt=dt)
        fidelity = float(abs(traj.final_state().c2) ** 2)
    else:
        traj = propagate_density(params, rates, env, window,
                                 DensityState.ground(), dt=dt)
        fidelity = float(traj.final_density().s22)

    if args.out:
        with open(args.out, "w", newline="") as fh:
            if args.format == "json":
                _trajectory_json(fh, traj, ctx)
            else:
                traj.to_csv(fh, comment=ctx.comment(),
                            time_scale=1.0 / ctx.omega_b)
        print(f"trajectory written to {args.out}")
    print(f"fidelity={fidelity!r}")
    return 0


def _trajectory_json(fh, traj, ctx: UnitContext) -> None:
    if hasattr(traj, "final_density"):
        columns = ["t", "s00", "s11", "s22", "re_s01", "im_s01",
                   "re_s02", "im_s02", "re_s12", "im_s12"]
        rows = [
            [float(v) for v in
             (t / ctx.omega_b, row[0].real, row[1].real, row[2].real,
              row[3].real, row[3].imag, row[4].real, row[4].imag,
              row[5].real, row[5].imag)]
            for t, row in zip(traj.times, traj.states)
        ]
    else:
        columns = ["t", "re_c0", "im_c0", "re_c1", "im_c1",
                   "re_c2", "im_c2", "pop2"]
        rows = [
            [float(v) for v in
             (t / ctx.omega_b, row[0].real, row[0].imag, row[1].real,
              row[1].imag, row[2].real, row[2].imag, abs(row[2]) ** 2)]
            for t, row in zip(traj.times, traj.states)
        ]
    json.dump({"schema": 1, "comment": ctx.comment(), "columns": columns,
               "rows": rows}, fh)
    fh.write("\n")


def cmd_simulate(args) -> int:
    return _simulate(args, rates=None)


def cmd_dissipative(args) -> int:
    ctx = UnitContext.from_args(args)
    rates = RateParams.uniform(
        ctx.rate_in(args.gamma_diss), ctx.rate_in(args.gamma_deph)
    )
    return _simulate(args, rates=rates)


def cmd_scan(args) -> int:
    from .optcontrol import (
        coincidence_report,
        scan_min_time,
        write_coincidence_csv,
        write_scan_csv,
    )

    ctx = UnitContext.from_args(args)
    if not args.omega0:
        raise DomainError("scan requires at least one --omega0")
    dt_grid = args.dt_grid if args.dt_grid is not None else (
        0.05 if args.quick else 0.01)
    restarts = args.restarts if args.restarts is not None else (
        1 if args.quick else 4)
    grid_below = 2 if args.quick else 5
    grid_above = 1 if args.quick else 3

    all_points = []
    rows = []
    for omega0 in args.omega0:
        params = SystemParams(1.0, omega0)
        t_star = design_on_off_on(params)[0].total_T
        if args.t_min is not None and args.t_max is not None:
            t_range = (ctx.time_in(args.t_min), ctx.time_in(args.t_max))
        else:
            t_range = (t_star - grid_below * dt_grid,
                       t_star + grid_above * dt_grid)
        scan = scan_min_time(
            params, t_range, dt_grid=dt_grid,
            error_threshold=args.threshold, n_slices=args.slices,
            restarts=restarts, seed=args.seed,
        )
        all_points.append((omega0, scan.points))
        rows.append((omega0, t_star, scan.t_min))
        print(f"omega0={omega0!r} T_min={ctx.time_out(scan.t_min)!r} "
              f"{ctx.time_label} (analytic {ctx.time_out(t_star)!r})")

    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write("omega0,T,Pe,converged,restarts\n")
            for omega0, points in all_points:
                for p in points:
                    fh.write(f"{omega0!r},{ctx.time_out(p.T)!r},"
                             f"{p.best_error!r},{int(p.converged)},"
                             f"{p.restarts_used}\n")
        print(f"scan curve written to {args.out}")
    if args.coincidence_out:
        from .optcontrol import CoincidenceRow
        co = [CoincidenceRow(omega0, ctx.time_out(ta), ctx.time_out(tn),
                             abs(ctx.time_out(tn) - ctx.time_out(ta)))
              for omega0, ta, tn in rows]
        with open(args.coincidence_out, "w", newline="") as fh:
            write_coincidence_csv(fh, co)
        print(f"coincidence report written to {args.coincidence_out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdpulse",
        description="Design and simulate pulse sequences for complete "
                    "biexciton preparation in a quantum dot.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "design",
        help="compute a pulse design and print/write its record",
        description="Compute a constant, sech or on-off-on design. Times "
                    "are reported in 1/omega_b (natural) or ps.",
    )
    p.add_argument("kind", choices=("constant", "sech", "onoffon"))
    _common_flags(p)
    _design_flags(p)
    p.add_argument("--out", metavar="FILE", help="write JSON design record")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="stdout format (default: text summary)")
    p.set_defaults(func=cmd_design)

    for name, func, extra_rates in (
        ("simulate", cmd_simulate, False),
        ("dissipative", cmd_dissipative, True),
    ):
        p = sub.add_parser(
            name,
            help=("simulate a design including decay and dephasing"
                  if extra_rates else "simulate a design and report fidelity"),
            description=(
                "Integrate the three-level dynamics under the chosen design "
                "and print the final fidelity. Times are in 1/omega_b "
                "(natural) or ps; --dt follows the same unit."
            ),
        )
        p.add_argument("kind", choices=("constant", "sech", "onoffon"))
        _common_flags(p)
        _design_flags(p)
        p.add_argument("--dt", type=float, default=None,
                       help="integration step in the active time unit "
                            "(default: min(1e-3/omega_b, span/50))")
        p.add_argument("--out", metavar="FILE", help="write trajectory file")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="trajectory file format (default: csv)")
        if extra_rates:
            p.add_argument("--gamma-diss", type=float, required=True,
                           metavar="G",
                           help="population decay rate of both excited "
                                "levels; 1/ns with --units ps, else in "
                                "units of omega_b")
            p.add_argument("--gamma-deph", type=float, required=True,
                           metavar="G",
                           help="dephasing rate of all coherences; 1/ns "
                                "with --units ps, else in units of omega_b")
        p.set_defaults(func=func)

    p = sub.add_parser(
        "scan",
        help="numerical minimum-time scan via bounded optimal control",
        description=(
            "Optimize bounded piecewise-constant controls over a grid of "
            "durations and locate the smallest duration with error below "
            "the threshold. Durations are in 1/omega_b (natural) or ps."
        ),
    )
    _common_flags(p)
    p.add_argument("--omega0", type=float, action="append", metavar="R",
                   help=OMEGA0_HELP + " (repeatable)")
    p.add_argument("--t-min", type=float, default=None,
                   help="scan start in the active time unit (default: "
                        "bracket the analytic design)")
    p.add_argument("--t-max", type=float, default=None,
                   help="scan end in the active time unit")
    p.add_argument("--dt-grid", type=float, default=None,
                   help="duration grid step in 1/omega_b (default: 0.01, "
                        "quick: 0.05)")
    p.add_argument("--threshold", type=float, default=1e-4,
                   help="feasibility threshold on the final error "
                        "(default: 1e-4)")
    p.add_argument("--slices", type=int, default=200,
                   help="control slices per duration (default: 200)")
    p.add_argument("--restarts", type=int, default=None,
                   help="random restarts per duration (default: 4, quick: 1)")
    p.add_argument("--seed", type=int, default=None,
                   help="extra seed mixed into the per-point RNG hash")
    p.add_argument("--quick", action="store_true",
                   help="coarser grid and fewer restarts for CI")
    p.add_argument("--out", metavar="FILE", help="write scan curve CSV")
    p.add_argument("--coincidence-out", metavar="FILE",
                   help="write analytic-vs-numeric CSV")
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
