"""Command-line front end: deterministic CSV/JSON experiment runs.

Every data file is written atomically (temp file + rename), floats are
serialized with 17 significant digits, and nothing timestamped goes
into data files, so identical invocations produce byte-identical
outputs.  Exit codes: 0 success, 2 validation/usage error, 1 runtime
failure.

Output formats
--------------
simulate / baseline   CSV  header t,m1,m2,b (baselines map their
                           monolingual pools to m1/m2 and the bilingual
                           pool to b)
equilibria            JSON list of {kind, coords, eigenvalues, stability}
stability             JSON stability report incl. trace conditions
threshold             JSON list of {s_b, d, bracket, found}
sweep                 CSV  one row per record: axes then per-kind classes
basin                 CSV  header m1,m2,label
locus                 CSV  header s_b,m1,m2,b
portrait grids        CSV  header m1,m2,dm1,dm2 (written by reproduce)

``reproduce`` bundles named experiment presets (trajectory + portrait
grid + equilibria, plus locus/basin files where the preset calls for
them) into a directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import analysis
from .baselines import MPParams, MWParams, VazParams, integrate_baseline
from .competency import CompetencyProfile, bilingual_status, mutuality
from .dynamics import IntegratorOptions, converge, integrate
from .equilibria import (
    boundary_conditions,
    delta_exponent,
    e7_trace_condition,
    equilibria_all,
)
from .model import ModelParams, PopulationState, read_params, rhs_reduced

THREADS_ENV = "LANGCOMP_THREADS"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_text(path: str, text: str) -> None:
    """Atomic write: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-langcomp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        _write_text(path, text)


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) if not isinstance(v, str) else v for v in row)
                 for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _workers(args) -> int | None:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise SystemExit(f"{THREADS_ENV} must be an integer, got {raw!r}")
    return max(1, n)


def _params_from_args(args) -> ModelParams:
    """Parameter file first, inline flags override."""
    fields = {}
    if args.params:
        p = read_params(args.params)
        fields = dict(s_m1=p.s_m1, s_m2=p.s_m2, s_b=p.s_b,
                      lam=p.lam, alpha=p.alpha, beta=p.beta)
    for name in ("s_m1", "s_m2", "s_b", "lam", "alpha", "beta"):
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    missing = {"s_m1", "s_m2", "s_b", "lam", "alpha", "beta"} - set(fields)
    if missing:
        raise ValueError(
            f"missing parameters {sorted(missing)}: pass --params or inline flags"
        )
    return ModelParams(**fields)


def _parse_ic(text: str) -> PopulationState:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"initial condition needs three components, got {text!r}")
    return PopulationState(*(float(v) for v in parts))


def _opts_from_args(args) -> IntegratorOptions:
    kw = {}
    for attr, name in (("method", "method"), ("rtol", "rtol"), ("atol", "atol"),
                       ("step", "step"), ("max_time", "max_time"),
                       ("epsilon", "convergence_epsilon")):
        value = getattr(args, attr, None)
        if value is not None:
            kw[name] = value
    return IntegratorOptions(**kw)


def _add_param_flags(sp):
    sp.add_argument("--params", help="flat key-value parameter file")
    sp.add_argument("--s-m1", dest="s_m1", type=float)
    sp.add_argument("--s-m2", dest="s_m2", type=float)
    sp.add_argument("--s-b", dest="s_b", type=float)
    sp.add_argument("--lambda", dest="lam", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--beta", type=float)


def _add_integrator_flags(sp):
    sp.add_argument("--method", choices=["rk45-adaptive", "rk4-fixed"])
    sp.add_argument("--rtol", type=float)
    sp.add_argument("--atol", type=float)
    sp.add_argument("--step", type=float)
    sp.add_argument("--max-time", dest="max_time", type=float)
    sp.add_argument("--epsilon", type=float,
                    help="convergence threshold on the field's sup norm")


def _trajectory_csv(times, states) -> str:
    rows = ((t, s[0], s[1], s[2]) for t, s in zip(times, states))
    return _csv("t,m1,m2,b", rows)


def _equilibria_payload(p: ModelParams):
    payload = []
    for e in equilibria_all(p):
        payload.append({
            "kind": e.kind.value,
            "coords": {"m1": e.coords.m1, "m2": e.coords.m2, "b": e.coords.b},
            "eigenvalues": [[z.real, z.imag] for z in e.eigenvalues],
            "stability": e.stability.value,
        })
    return payload


def _portrait_csv(p: ModelParams, grid_n: int = 21) -> str:
    """Sampled direction field of the reduced system for plotting layers."""
    step = 1.0 / (grid_n - 1)
    rows = []
    for i in range(grid_n):
        for j in range(grid_n):
            m1, m2 = i * step, j * step
            if m1 + m2 > 1.0 + 1e-12:
                continue
            dm1, dm2 = rhs_reduced(p, min(m1, 1.0), min(m2, 1.0 - min(m1, 1.0)))
            rows.append((m1, m2, dm1, dm2))
    return _csv("m1,m2,dm1,dm2", rows)


# --- subcommand handlers ----------------------------------------------------

def _cmd_status(args) -> int:
    p1 = CompetencyProfile(args.c_p1_m1, args.c_p1_m2)
    p2 = CompetencyProfile(args.c_p2_m1, args.c_p2_m2)
    m = mutuality(p1, p2)
    s_b = bilingual_status(m, args.s_m1, args.s_m2)
    _emit(args.output, _json_text({"x_m1": m.x_m1, "x_m2": m.x_m2, "s_b": s_b}))
    return 0


def _cmd_simulate(args) -> int:
    p = _params_from_args(args)
    traj = integrate(p, _parse_ic(args.ic), _opts_from_args(args))
    _emit(args.output, _trajectory_csv(traj.times, traj.states))
    return 0


def _cmd_equilibria(args) -> int:
    p = _params_from_args(args)
    _emit(args.output, _json_text(_equilibria_payload(p)))
    return 0


def _cmd_stability(args) -> int:
    p = _params_from_args(args)
    delta = delta_exponent(p.alpha, p.beta)
    report = {
        "delta": None if delta.degenerate else delta.value,
        "degenerate": delta.degenerate,
        "equilibria": _equilibria_payload(p) if not delta.degenerate else [],
    }
    if not delta.degenerate:
        tc = e7_trace_condition(p)
        report["e7_trace_condition"] = {
            "satisfied": tc.satisfied,
            "leading": tc.leading,
            "product": tc.product,
        }
        for kind in ("E5", "E6"):
            bc = boundary_conditions(p, kind)
            report[f"{kind.lower()}_conditions"] = {
                "trace_expression": bc.trace_expression,
                "trace_negative": bc.trace_negative,
                "factor_positive": bc.factor_positive,
                "sum_positive": bc.sum_positive,
            }
    _emit(args.output, _json_text(report))
    return 0


def _cmd_threshold(args) -> int:
    s_b_values = [float(v) for v in args.s_b_values.split(",")]
    estimates = []
    for s_b in s_b_values:
        est = analysis.threshold_d(
            args.s_m1, args.s_m2, args.lam, s_b,
            resolution=args.resolution, beta=args.beta,
        )
        estimates.append({
            "s_b": est.s_b,
            "d": est.d,
            "bracket": [est.bracket_low, est.bracket_high],
            "found": est.found,
        })
    _emit(args.output, _json_text(estimates))
    return 0


def _cmd_sweep(args) -> int:
    base = _params_from_args(args)
    axes = {}
    if args.alpha_beta:
        axes["alpha_beta"] = [float(v) for v in args.alpha_beta.split(",")]
    if args.s_b_values:
        axes["s_b"] = [float(v) for v in args.s_b_values.split(",")]
    records = analysis.sweep(axes, base, ic_grid_n=args.ic_grid,
                             workers=_workers(args))
    kinds = ["E1", "E2", "E3", "E4", "E5", "E6", "E7"]
    rows = []
    for rec in records:
        row = [rec.params.alpha - rec.params.beta, rec.params.s_b]
        row.extend(rec.stability.get(k, "degenerate-delta") for k in kinds)
        if rec.attractors is not None:
            labels = sorted(set(rec.attractors.values()))
            row.append("|".join(labels))
        rows.append(tuple(row))
    header = "alpha_beta,s_b," + ",".join(f"stability_{k}" for k in kinds)
    if args.ic_grid:
        header += ",attractors"
    _emit(args.output, _csv(header, rows))
    return 0


def _cmd_basin(args) -> int:
    p = _params_from_args(args)
    opts = None
    if args.max_time is not None or args.epsilon is not None:
        kw = {"max_time": args.max_time or analysis.BASIN_OPTS.max_time}
        if args.epsilon is not None:
            kw["convergence_epsilon"] = args.epsilon
        opts = IntegratorOptions(**kw)
    bm = analysis.basin_map(p, args.grid_n, opts=opts, workers=_workers(args))
    _emit(args.output, _csv("m1,m2,label", bm.cells))
    return 0


def _cmd_locus(args) -> int:
    p = _params_from_args(args)
    s_b_values = [float(v) for v in args.s_b_values.split(",")]
    rows = [
        (s_b, pt.m1, pt.m2, pt.b)
        for s_b, pt in analysis.e7_locus(p, s_b_values)
    ]
    _emit(args.output, _csv("s_b,m1,m2,b", rows))
    return 0


def _cmd_baseline(args) -> int:
    if args.model == "mw":
        params = MWParams(s_x=args.s_x, c_zx=args.c_zx, c_zy=args.c_zy,
                          c_xz=args.c_xz, c_yz=args.c_yz, a=args.a, mu=args.mu)
    elif args.model == "mp":
        params = MPParams(s_x=args.s_x, c=args.c, k=args.k, a=args.a)
    else:
        params = VazParams(S=args.s_x, a=args.a)
    ic = [float(v) for v in args.ic.split(",")]
    times, states = integrate_baseline(args.model, params, ic,
                                       _opts_from_args(args))
    _emit(args.output, _trajectory_csv(times, states))
    return 0


# --- reproduce presets -------------------------------------------------------

REFERENCE_STATUSES = dict(s_m1=0.3, s_m2=0.7, lam=400.0)

PRESETS = {
    "E7_1": dict(kind="trajectory", s_b=0.1, alpha=1.1, beta=3.6,
                 ic=(0.5, 0.3, 0.2), max_time=50.0),
    "E2_sB_0.6": dict(kind="trajectory", s_b=0.6, alpha=2.0, beta=1.1,
                      ic=(0.6, 0.25, 0.15), max_time=10000.0),
    "E4_sB_0.1": dict(kind="trajectory", s_b=0.1, alpha=2.0, beta=1.1,
                      ic=(0.5, 0.1, 0.4), max_time=10000.0),
    "E4_sB_0.5": dict(kind="trajectory", s_b=0.5, alpha=2.0999, beta=1.1,
                      ic=(0.8, 0.15, 0.05), max_time=10000.0),
    "E7_sB_0.99": dict(kind="trajectory", s_b=0.9, alpha=2.0999, beta=1.1,
                       ic=(0.45, 0.45, 0.1), max_time=10000.0),
    "E7_diff": dict(kind="locus", alpha=1.1, beta=3.6, ic=(0.5, 0.3, 0.2),
                    s_b_values=tuple(round(0.1 * k, 1) for k in range(1, 11)),
                    max_time=50.0),
    "E7E4": dict(kind="basin", alpha=4.0, beta=1.1, s_b_values=(0.1, 0.9),
                 grid_n=5),
}


def _reproduce_trajectory(outdir, preset, params):
    from .model import write_params
    write_params(os.path.join(outdir, "params.txt"), params)
    traj = integrate(params, PopulationState(*preset["ic"]),
                     IntegratorOptions(max_time=preset["max_time"]))
    _write_text(os.path.join(outdir, "trajectory.csv"),
                _trajectory_csv(traj.times, traj.states))
    _write_text(os.path.join(outdir, "portrait.csv"), _portrait_csv(params))
    _write_text(os.path.join(outdir, "equilibria.json"),
                _json_text(_equilibria_payload(params)))
    return ["params.txt", "trajectory.csv", "portrait.csv", "equilibria.json"]


def _reproduce_locus(outdir, preset):
    base = ModelParams(s_b=0.1, alpha=preset["alpha"], beta=preset["beta"],
                       **REFERENCE_STATUSES)
    rows = [
        (s_b, pt.m1, pt.m2, pt.b)
        for s_b, pt in analysis.e7_locus(base, preset["s_b_values"])
    ]
    _write_text(os.path.join(outdir, "locus.csv"), _csv("s_b,m1,m2,b", rows))
    files = ["locus.csv"]
    for s_b in preset["s_b_values"]:
        p = base.replace(s_b=s_b)
        traj = integrate(p, PopulationState(*preset["ic"]),
                         IntegratorOptions(max_time=preset["max_time"]))
        name = f"trajectory_sb_{s_b:g}.csv"
        _write_text(os.path.join(outdir, name),
                    _trajectory_csv(traj.times, traj.states))
        files.append(name)
    return files


def _reproduce_basin(outdir, preset, workers):
    files = []
    for s_b in preset["s_b_values"]:
        p = ModelParams(s_b=s_b, alpha=preset["alpha"], beta=preset["beta"],
                        **REFERENCE_STATUSES)
        bm = analysis.basin_map(p, preset["grid_n"], workers=workers)
        name = f"basin_sb_{s_b:g}.csv"
        _write_text(os.path.join(outdir, name), _csv("m1,m2,label", bm.cells))
        files.append(name)
        pname = f"portrait_sb_{s_b:g}.csv"
        _write_text(os.path.join(outdir, pname), _portrait_csv(p))
        files.append(pname)
        ename = f"equilibria_sb_{s_b:g}.json"
        _write_text(os.path.join(outdir, ename),
                    _json_text(_equilibria_payload(p)))
        files.append(ename)
    return files


def _cmd_reproduce(args) -> int:
    if args.figure not in PRESETS:
        raise ValueError(
            f"unknown experiment id {args.figure!r}; known: {', '.join(PRESETS)}"
        )
    preset = PRESETS[args.figure]
    outdir = args.outdir or f"reproduce_{args.figure}"
    os.makedirs(outdir, exist_ok=True)
    if preset["kind"] == "trajectory":
        params = ModelParams(s_b=preset["s_b"], alpha=preset["alpha"],
                             beta=preset["beta"], **REFERENCE_STATUSES)
        files = _reproduce_trajectory(outdir, preset, params)
    elif preset["kind"] == "locus":
        files = _reproduce_locus(outdir, preset)
    else:
        files = _reproduce_basin(outdir, preset, _workers(args))
    _write_text(os.path.join(outdir, "manifest.json"),
                _json_text({"experiment": args.figure, "files": sorted(files)}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="langcomp",
        description="three-group language-competition experiments",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("status", help="pairwise mutuality and bilingual status")
    for name in ("c_p1_m1", "c_p1_m2", "c_p2_m1", "c_p2_m2", "s_m1", "s_m2"):
        sp.add_argument(name, type=float)
    sp.add_argument("--output")
    sp.set_defaults(handler=_cmd_status)

    sp = sub.add_parser("simulate", help="integrate one trajectory to CSV")
    _add_param_flags(sp)
    _add_integrator_flags(sp)
    sp.add_argument("--ic", required=True, help="m1,m2,b")
    sp.add_argument("--output")
    sp.set_defaults(handler=_cmd_simulate)

    sp = sub.add_parser("equilibria", help="closed-form equilibria as JSON")
    _add_param_flags(sp)
    sp.add_argument("--output")
    sp.set_defaults(handler=_cmd_equilibria)

    sp = sub.add_parser("stability", help="stability report incl. trace conditions")
    _add_param_flags(sp)
    sp.add_argument("--output")
    sp.set_defaults(handler=_cmd_stability)

    sp = sub.add_parser("threshold", help="coexistence threshold estimates")
    sp.add_argument("--s-m1", dest="s_m1", type=float, default=0.3)
    sp.add_argument("--s-m2", dest="s_m2", type=float, default=0.7)
    sp.add_argument("--lambda", dest="lam", type=float, default=400.0)
    sp.add_argument("--beta", type=float, default=1.1)
    sp.add_argument("--s-b-values", dest="s_b_values", required=True)
    sp.add_argument("--resolution", type=float, default=0.02)
    sp.add_argument("--output")
    sp.set_defaults(handler=_cmd_threshold)

    sp = sub.add_parser("sweep", help="stability classes over a parameter grid")
    _add_param_flags(sp)
    sp.add_argument("--alpha-beta", dest="alpha_beta",
                    help="comma list of alpha-beta values")
    sp.add_argument("--s-b-values", dest="s_b_values")
    sp.add_argument("--ic-grid", dest="ic_grid", type=int, default=0,
                    help="attractor-match each record on an NxN interior grid")
    sp.add_argument("--output")
    sp.set_defaults(handler=_cmd_sweep)

    sp = sub.add_parser("basin", help="attractor label per interior IC cell")
    _add_param_flags(sp)
    sp.add_argument("--grid-n", dest="grid_n", type=int, required=True)
    sp.add_argument("--max-time", dest="max_time", type=float)
    sp.add_argument("--epsilon", type=float)
    sp.add_argument("--output")
    sp.set_defaults(handler=_cmd_basin)

    sp = sub.add_parser("locus", help="interior equilibrium vs bilingual status")
    _add_param_flags(sp)
    sp.add_argument("--s-b-values", dest="s_b_values", required=True)
    sp.add_argument("--output")
    sp.set_defaults(handler=_cmd_locus)

    sp = sub.add_parser("baseline", help="integrate a comparison model")
    sp.add_argument("--model", choices=["mw", "mp", "vaz"], required=True)
    sp.add_argument("--ic", required=True)
    sp.add_argument("--s-x", dest="s_x", type=float, default=0.6,
                    help="status/prestige of language X")
    sp.add_argument("--a", type=float, default=1.31)
    sp.add_argument("--mu", type=float, default=0.05)
    sp.add_argument("--c-zx", dest="c_zx", type=float, default=1.0)
    sp.add_argument("--c-zy", dest="c_zy", type=float, default=1.0)
    sp.add_argument("--c-xz", dest="c_xz", type=float, default=1.0)
    sp.add_argument("--c-yz", dest="c_yz", type=float, default=1.0)
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--k", type=float, default=0.5)
    _add_integrator_flags(sp)
    sp.add_argument("--output")
    sp.set_defaults(handler=_cmd_baseline)

    sp = sub.add_parser("reproduce", help="run a named experiment preset")
    sp.add_argument("figure", help="one of: " + ", ".join(PRESETS))
    sp.add_argument("--outdir")
    sp.set_defaults(handler=_cmd_reproduce)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
