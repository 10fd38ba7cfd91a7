"""Command-line front end: scatter, sweep, figure2, selftest.

All output uses natural units (hbar = c = 1); every CSV carries that note and
the tool version in `#` header comments, and repeated runs with identical
flags produce byte-identical CSV.

Exit codes: 0 success, 1 selftest failure, 2 flag validation, 3 numerical
failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, analytic, model, oracle, selftest, specfun

_NUM = "{:.16e}".format  # 17 significant digits, scientific

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_FLAGS = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

_NUMERICAL_ERRORS = (
    analytic.ParameterRangeError,
    analytic.ChartDomainError,
    specfun.DomainError,
    specfun.GammaPoleError,
    oracle.OracleError,
    ArithmeticError,  # covers series convergence and singular matching
)


def _fail(code: int, message: str) -> int:
    print(f"diracstep: error: {message}", file=sys.stderr)
    return code


def _add_physics_flags(p: argparse.ArgumentParser, with_tau: bool = True):
    p.add_argument("--m", type=float, default=1.0, help="rest mass (default 1)")
    p.add_argument("--q", type=float, default=1.0, help="signed coupling (default 1)")
    p.add_argument("--p", type=float, default=None, help="conserved momentum")
    p.add_argument("--a1", type=float, default=0.0, help="early potential (default 0)")
    p.add_argument("--a2", type=float, default=None, help="late potential")
    p.add_argument("--t0", type=float, default=0.0, help="transition time (default 0)")
    if with_tau:
        p.add_argument("--tau", type=float, default=None, help="transition time parameter")


def _params_from(args, tau=None) -> model.StepParameters:
    return model.StepParameters(
        m=args.m, q=args.q, p=args.p, a1=args.a1, a2=args.a2,
        tau=args.tau if tau is None else tau, t0=args.t0,
    )


def _header_lines(fixed: dict) -> list[str]:
    lines = [
        f"# diracstep {__version__}",
        "# natural units, hbar=c=1",
    ]
    if fixed:
        lines.append("# " + " ".join(f"{k}={_NUM(v)}" for k, v in fixed.items()))
    return lines


def _record_dict(params: model.StepParameters, res: analytic.ScatteringResult,
                 tau_override: float | None = None) -> dict:
    modes = model.asymptotic_modes(params)
    return {
        "m": params.m,
        "q": params.q,
        "p": params.p,
        "a1": params.a1,
        "a2": params.a2,
        "t0": params.t0,
        "tau": params.tau if tau_override is None else tau_override,
        "e1": modes.e1,
        "e2": modes.e2,
        "f": res.f,
        "b": res.b,
        "F": res.F,
        "B": res.B,
        "F_u": res.F_u,
        "B_u": res.B_u,
    }


def _guard_probabilities(res: analytic.ScatteringResult) -> None:
    if abs(res.F + res.B - 1.0) > 1e-12:
        raise ArithmeticError(
            f"probability identity violated: F + B - 1 = {res.F + res.B - 1.0:.3e}"
        )


# ----------------------------------------------------------------- scatter


def cmd_scatter(args) -> int:
    if args.p is None or args.a2 is None:
        return _fail(EXIT_FLAGS, "--p and --a2 are required")
    if args.sharp:
        if args.tau is not None and args.tau <= 0:
            return _fail(EXIT_FLAGS, "tau must be positive; --sharp already selects the Heaviside limit")
        res = analytic.sharp_step(m=args.m, q=args.q, p=args.p, a1=args.a1, a2=args.a2)
        # tau = 0 in the emitted record marks the Heaviside limit
        params = model.StepParameters(m=args.m, q=args.q, p=args.p, a1=args.a1,
                                      a2=args.a2, tau=1.0, t0=args.t0)
        tau_out = 0.0
    else:
        if args.tau is None:
            return _fail(EXIT_FLAGS, "--tau is required (or pass --sharp)")
        if args.tau <= 0:
            return _fail(EXIT_FLAGS, "tau must be positive; use `scatter --sharp` for the Heaviside limit")
        params = _params_from(args)
        res = analytic.scatter(params)
        tau_out = None
    _guard_probabilities(res)
    record = _record_dict(params, res, tau_override=tau_out)
    if args.oracle and not args.sharp:
        report = oracle.compare(params)
        record["oracle_dev_f"] = report.deviations["f"]
        record["oracle_dev_b"] = report.deviations["b"]
    if args.format == "json":
        print(json.dumps(record))
    elif args.format == "csv":
        keys = list(record)
        for line in _header_lines({}):
            print(line)
        print(",".join(keys))
        print(",".join(_NUM(record[k]) for k in keys))
    else:
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        print(f"diracstep {__version__} ({stamp}), natural units hbar=c=1")
        width = max(len(k) for k in record)
        for k, v in record.items():
            print(f"{k:<{width}}  {_NUM(v)}")
    return EXIT_OK


# ------------------------------------------------------------------- sweep


def _sweep_values(args) -> list[float]:
    if args.log:
        if args.start <= 0 or args.stop <= 0:
            raise ValueError("--log requires positive start/stop")
        la, lb = math.log(args.start), math.log(args.stop)
        return [math.exp(la + (lb - la) * i / (args.count - 1)) for i in range(args.count)]
    return [args.start + (args.stop - args.start) * i / (args.count - 1)
            for i in range(args.count)]


def _params_for_sweep_point(args, value: float) -> model.StepParameters:
    kw = dict(m=args.m, q=args.q, p=args.p, a1=args.a1, a2=args.a2,
              tau=args.tau, t0=args.t0)
    if args.sweep_var == "p":
        kw["p"] = value
    elif args.sweep_var == "a2":
        kw["a2"] = value
    elif args.sweep_var == "tau":
        kw["tau"] = value
    else:  # energy_ratio: E1/m = value fixes |pi1|; branch picks the sign
        if value < 1.0:
            raise ValueError(f"energy ratio must be >= 1, got {value}")
        pi1 = args.m * math.sqrt(value * value - 1.0)
        if args.branch == "minus":
            pi1 = -pi1
        kw["p"] = args.q * args.a1 + pi1
    return model.StepParameters(**kw)


def cmd_sweep(args) -> int:
    needed = {"p": ("a2", "tau"), "a2": ("p", "tau"), "tau": ("p", "a2"),
              "energy_ratio": ("a2", "tau")}[args.sweep_var]
    for name in needed:
        if getattr(args, name) is None:
            return _fail(EXIT_FLAGS, f"--{name} is required for a {args.sweep_var} sweep")
    if args.count < 2:
        return _fail(EXIT_FLAGS, "--count must be >= 2")
    if args.oracle_every < 0:
        return _fail(EXIT_FLAGS, "--oracle-every must be >= 0")
    if args.start == args.stop:
        return _fail(EXIT_FLAGS, "--start and --stop must differ")
    if args.sweep_var != "tau" and (args.tau is not None and args.tau <= 0):
        return _fail(EXIT_FLAGS, "tau must be positive; use `scatter --sharp` for the Heaviside limit")
    try:
        values = _sweep_values(args)
    except ValueError as exc:
        return _fail(EXIT_FLAGS, str(exc))

    fixed = {k: getattr(args, k) for k in ("m", "q", "p", "a1", "a2", "t0", "tau")
             if getattr(args, k) is not None}
    fixed.pop(args.sweep_var, None)
    header_cols = [args.sweep_var, "e1", "e2", "f", "b", "F", "B", "F_u", "B_u"]
    if args.oracle_every:
        header_cols += ["oracle_dev_f", "oracle_dev_b"]
    header_cols.append("status")

    lines = _header_lines(fixed)
    lines.append(",".join(header_cols))
    failures = 0
    for i, value in enumerate(values):
        try:
            params = _params_for_sweep_point(args, value)
            res = analytic.scatter(params)
            _guard_probabilities(res)
            modes = model.asymptotic_modes(params)
            cells = [_NUM(value), _NUM(modes.e1), _NUM(modes.e2), _NUM(res.f),
                     _NUM(res.b), _NUM(res.F), _NUM(res.B), _NUM(res.F_u), _NUM(res.B_u)]
            if args.oracle_every:
                if i % args.oracle_every == 0:
                    report = oracle.compare(params)
                    cells += [_NUM(report.deviations["f"]), _NUM(report.deviations["b"])]
                else:
                    cells += ["", ""]
            cells.append("ok")
        except Exception as exc:
            failures += 1
            n_out = len(header_cols) - 2
            cells = [_NUM(value)] + [""] * n_out + [f"{type(exc).__name__}: {exc}".replace(",", ";")]
        lines.append(",".join(cells))
    print("\n".join(lines))
    if failures == len(values):
        return _fail(EXIT_NUMERICAL, "all sweep points failed")
    return EXIT_OK


# ----------------------------------------------------------------- figure2


def _figure2_panel(path: Path, tau: float, args) -> None:
    """One panel: step-strength sweep at fixed incident E1/m, with the
    Heaviside reference columns."""
    pi1 = args.m * math.sqrt(args.energy_ratio ** 2 - 1.0)
    p = args.q * args.a1 + pi1
    values = [args.start + (args.stop - args.start) * i / (args.count - 1)
              for i in range(args.count)]
    fixed = {"m": args.m, "q": args.q, "p": p, "a1": args.a1, "t0": args.t0, "tau": tau}
    cols = ["qa2", "e1", "e2", "f", "b", "F", "B", "F_u", "B_u",
            "F_sharp", "B_sharp", "F_u_sharp", "B_u_sharp"]
    lines = _header_lines(fixed)
    lines.append("# sweep of step strength q*A2 at fixed incident energy ratio "
                 f"E1/m={_NUM(args.energy_ratio)}")
    lines.append(",".join(cols))
    for qa2 in values:
        a2 = qa2 / args.q
        params = model.StepParameters(m=args.m, q=args.q, p=p, a1=args.a1,
                                      a2=a2, tau=tau, t0=args.t0)
        res = analytic.scatter(params)
        _guard_probabilities(res)
        hard = analytic.sharp_step(m=args.m, q=args.q, p=p, a1=args.a1, a2=a2)
        modes = model.asymptotic_modes(params)
        lines.append(",".join([
            _NUM(qa2), _NUM(modes.e1), _NUM(modes.e2), _NUM(res.f), _NUM(res.b),
            _NUM(res.F), _NUM(res.B), _NUM(res.F_u), _NUM(res.B_u),
            _NUM(hard.F), _NUM(hard.B), _NUM(hard.F_u), _NUM(hard.B_u),
        ]))
    path.write_text("\n".join(lines) + "\n")


_GNUPLOT_TEMPLATE = """# gnuplot script: scattering probabilities vs step strength
set datafile separator ','
set datafile commentschars '#'
set xlabel 'q A_2 (natural units)'
set ylabel 'probability'
set yrange [0:1]
set key outside
set term pngcairo size 1200,500
set output 'figure2.png'
set multiplot layout 1,2
set title 'fast transition (tau = {tau_a})'
plot 'panel_a.csv' using 1:6 with lines lw 2 title 'F', \\
     'panel_a.csv' using 1:7 with lines lw 2 title 'B', \\
     'panel_a.csv' using 1:10 with lines dt 2 title 'F sharp', \\
     'panel_a.csv' using 1:11 with lines dt 2 title 'B sharp'
set title 'slow transition (tau = {tau_b})'
plot 'panel_b.csv' using 1:6 with lines lw 2 title 'F', \\
     'panel_b.csv' using 1:7 with lines lw 2 title 'B', \\
     'panel_b.csv' using 1:10 with lines dt 2 title 'F sharp', \\
     'panel_b.csv' using 1:11 with lines dt 2 title 'B sharp'
unset multiplot
"""


def cmd_figure2(args) -> int:
    if args.count < 2:
        return _fail(EXIT_FLAGS, "--count must be >= 2")
    if args.energy_ratio < 1.0:
        return _fail(EXIT_FLAGS, "--energy-ratio must be >= 1")
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        _figure2_panel(out_dir / "panel_a.csv", args.tau_fast, args)
        _figure2_panel(out_dir / "panel_b.csv", args.tau_slow, args)
        script = _GNUPLOT_TEMPLATE.format(tau_a=f"{args.tau_fast:g}", tau_b=f"{args.tau_slow:g}")
        (out_dir / "figure2.gp").write_text(script)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write outputs: {exc}")
    print(f"wrote {out_dir / 'panel_a.csv'}")
    print(f"wrote {out_dir / 'panel_b.csv'}")
    print(f"wrote {out_dir / 'figure2.gp'}")
    return EXIT_OK


# ---------------------------------------------------------------- selftest


def cmd_selftest(args) -> int:
    results = selftest.run_all(break_tolerance=args.break_tolerance)
    if args.json:
        print(json.dumps([
            {"name": r.name, "passed": r.passed, "detail": r.detail,
             "seconds": round(r.seconds, 3)}
            for r in results
        ]))
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"[{mark}] {r.name} ({r.seconds:.2f}s): {r.detail}")
        n_bad = sum(not r.passed for r in results)
        print(f"{len(results) - n_bad}/{len(results)} checks passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_SELFTEST


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracstep",
        description="Electron scattering at a smooth temporal potential step "
                    "(natural units, hbar=c=1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sc = sub.add_parser("scatter", help="single-point scattering computation")
    _add_physics_flags(p_sc)
    p_sc.add_argument("--sharp", action="store_true", help="Heaviside (sharp-step) limit")
    p_sc.add_argument("--format", choices=("json", "csv", "human"), default="human")
    p_sc.add_argument("--oracle", action="store_true",
                      help="attach integrator deviations to the record")
    p_sc.set_defaults(func=cmd_scatter)

    p_sw = sub.add_parser("sweep", help="parameter sweep, CSV on stdout")
    _add_physics_flags(p_sw)
    p_sw.add_argument("--sweep-var", choices=("p", "a2", "tau", "energy_ratio"), required=True)
    p_sw.add_argument("--start", type=float, required=True)
    p_sw.add_argument("--stop", type=float, required=True)
    p_sw.add_argument("--count", type=int, required=True)
    p_sw.add_argument("--log", action="store_true", help="log-spaced sweep values")
    p_sw.add_argument("--branch", choices=("plus", "minus"), default="plus",
                      help="sign branch for the energy_ratio sweep")
    p_sw.add_argument("--oracle-every", type=int, default=0, metavar="K",
                      help="attach integrator deviations every K-th row")
    p_sw.set_defaults(func=cmd_sweep)

    p_f2 = sub.add_parser("figure2", help="step-strength sweeps at fast/slow tau, CSV + gnuplot")
    p_f2.add_argument("--out-dir", default="figure2_out")
    p_f2.add_argument("--m", type=float, default=1.0)
    p_f2.add_argument("--q", type=float, default=1.0)
    p_f2.add_argument("--a1", type=float, default=0.0)
    p_f2.add_argument("--t0", type=float, default=0.0)
    p_f2.add_argument("--energy-ratio", type=float, default=2.0, dest="energy_ratio",
                      help="incident E1/m (default 2)")
    p_f2.add_argument("--tau-fast", type=float, default=1e-4, dest="tau_fast")
    p_f2.add_argument("--tau-slow", type=float, default=0.5, dest="tau_slow")
    p_f2.add_argument("--start", type=float, default=0.0, help="first q*A2 value")
    p_f2.add_argument("--stop", type=float, default=8.0, help="last q*A2 value")
    p_f2.add_argument("--count", type=int, default=81)
    p_f2.set_defaults(func=cmd_figure2)

    p_st = sub.add_parser("selftest", help="run the verification battery")
    p_st.add_argument("--json", action="store_true", help="machine-readable report")
    p_st.add_argument("--break-tolerance", action="store_true",
                      help="debug: corrupt the first check's tolerance to force a failure")
    p_st.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _NUMERICAL_ERRORS as exc:
        return _fail(EXIT_NUMERICAL, str(exc))
    except ValueError as exc:
        return _fail(EXIT_FLAGS, str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))


if __name__ == "__main__":
    sys.exit(main())
