"""Command-line front end.

Verbs:
    run <config>        one scenario -> trace CSV + one-row summary CSV
    sweep <config>      gain sweep over the configured start(s) -> summary CSV
    compare <config>    tanh law vs gain-matched arcsine baseline
    tables              built-in benchmark suites with pass/fail columns
    sixdof <config>     full 6DOF quadrotor run -> trace CSV

Exit codes: 0 success, 2 configuration error, 3 simulation error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Iterable, List, Optional

import numpy as np

from . import benchmarks
from .arcsine import match_arcsine_gain
from .config import ScenarioConfig, load_quad, load_scenario, with_gain
from .errors import ConfigError, GlasskitError, InvalidGeometry
from .glass import tube_entry_time
from .planar import SimTrace, max_turn_rate, run_scenario
from .quadrotor import final_lap_slice, run_6dof_inspection

SUMMARY_COLUMNS = ("scenario", "law", "k_G", "e0", "T_ana", "T_sim",
                   "rel_err", "max_chidot", "max_kappa")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path, header: Iterable[str], rows: Iterable[Iterable]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _summary_row(cfg: ScenarioConfig, trace: SimTrace) -> list:
    e0 = float(trace.e[0])
    if cfg.law == "glass":
        t_ana = tube_entry_time(e0, cfg.guidance)
    else:
        t_ana = None  # no closed form for the baseline
    t_sim = trace.tube_entry_time_measured
    rel = None
    if t_ana is not None and t_sim is not None:
        rel = abs(t_sim - t_ana) / t_ana if t_ana > 0.0 else 0.0
    return [cfg.name, cfg.law, cfg.guidance.k_g, e0, t_ana, t_sim, rel,
            max_turn_rate(trace), float(np.max(np.abs(trace.kappa)))]


def _run_one(cfg: ScenarioConfig):
    trace = run_scenario(cfg)
    return cfg.name, _summary_row(cfg, trace)


def _run_many(cfgs: List[ScenarioConfig], workers: int):
    """Fan scenarios out to a worker pool; assembly is keyed, so the report
    is identical regardless of scheduling."""
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(_run_one, cfgs))
    else:
        results = dict(map(_run_one, cfgs))
    return [results[cfg.name] for cfg in cfgs]


def _ensure_out(args) -> str:
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _apply_dt(cfg: ScenarioConfig, args) -> ScenarioConfig:
    if getattr(args, "dt", None) is not None:
        if not args.dt > 0.0:
            raise ConfigError(f"--dt must be > 0 (got {args.dt})")
        cfg = replace(cfg, dt=args.dt)
    return cfg


def _cmd_run(args) -> int:
    cfg = _apply_dt(load_scenario(args.config), args)
    out = _ensure_out(args)
    trace = run_scenario(cfg)
    trace_path = os.path.join(out, f"{cfg.name}_trace.csv")
    trace.to_csv(trace_path)
    row = _summary_row(cfg, trace)
    _write_csv(os.path.join(out, f"{cfg.name}_summary.csv"), SUMMARY_COLUMNS, [row])
    t_sim = trace.tube_entry_time_measured
    entry = f"{t_sim:.3f} s" if t_sim is not None else "not reached"
    print(f"{cfg.name}: law={cfg.law} tube entry {entry}; trace -> {trace_path}")
    return 0


def _cmd_sweep(args) -> int:
    base = _apply_dt(load_scenario(args.config), args)
    try:
        gains = [float(tok) for tok in args.gains.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"--gains: cannot parse {args.gains!r}") from exc
    if not gains:
        raise ConfigError("--gains: need at least one gain")
    starts = [(base.x0, base.y0)]
    if base.alt_start is not None:
        starts.append(base.alt_start)
    cfgs = []
    for x0, y0 in starts:
        for gain in gains:
            cfg = replace(with_gain(base, gain), x0=x0, y0=y0, alt_start=None)
            side = "outside" if benchmarks.initial_error(cfg) >= 0.0 else "inside"
            cfgs.append(replace(cfg, name=f"{base.name}_{side}_kG{gain:g}"))
    rows = _run_many(cfgs, args.workers)
    out = _ensure_out(args)
    path = os.path.join(out, f"{base.name}_sweep.csv")
    _write_csv(path, SUMMARY_COLUMNS, rows)
    print(f"swept {len(cfgs)} scenarios -> {path}")
    return 0


def _cmd_compare(args) -> int:
    cfg = _apply_dt(load_scenario(args.config), args)
    r_d = cfg.curve.radius  # parse guarantees a circle for arcsine use
    d0 = math.hypot(cfg.x0, cfg.y0)
    if d0 <= r_d:
        raise InvalidGeometry(
            f"comparison needs an outside start (d0 = {d0:.2f} m, r_d = {r_d:.2f} m)")
    k_d = match_arcsine_gain(d0, r_d, cfg.guidance.k_g)

    glass_cfg = replace(cfg, law="glass", name=f"{cfg.name}_glass")
    glass_trace = run_scenario(glass_cfg)
    chi0_deg = math.degrees(float(glass_trace.chi[0]))
    arcsine_cfg = replace(cfg, law="arcsine", k_d=k_d, normalized=True,
                          chi0_deg=chi0_deg, name=f"{cfg.name}_arcsine")
    arcsine_trace = run_scenario(arcsine_cfg)

    out = _ensure_out(args)
    rows = []
    for c, tr in ((glass_cfg, glass_trace), (arcsine_cfg, arcsine_trace)):
        tr.to_csv(os.path.join(out, f"{c.name}_trace.csv"))
        rows.append(_summary_row(c, tr))
    path = os.path.join(out, f"{cfg.name}_compare.csv")
    _write_csv(path, SUMMARY_COLUMNS, rows)

    t_glass = glass_trace.tube_entry_time_measured
    t_arc = arcsine_trace.tube_entry_time_measured
    print(f"matched arcsine gain k_D = {k_d:.4f}")
    print(f"tube entry: glass {t_glass if t_glass is not None else 'n/a'} s, "
          f"arcsine {t_arc if t_arc is not None else 'n/a'} s")
    print(f"report -> {path}")
    return 0


def _cmd_tables(args) -> int:
    out = _ensure_out(args)

    ideal_cfgs = [benchmarks.ideal_scenario(side, g)
                  for side in ("outside", "inside") for g in benchmarks.GAINS]
    ideal_rows = dict(_run_many(ideal_cfgs, args.workers))
    table1 = []
    ok = True
    for cfg in ideal_cfgs:
        side = "outside" if cfg.x0 == benchmarks.OUTSIDE_XY[0] else "inside"
        gain = cfg.guidance.k_g
        e0 = benchmarks.E0_OUTSIDE if side == "outside" else benchmarks.E0_INSIDE
        t_ref = benchmarks.IDEAL_SETTLING_REF[side][gain]
        t_ana = tube_entry_time(e0, cfg.guidance)
        t_sim = ideal_rows[cfg.name][5]
        ana_pass = abs(t_ana - t_ref) <= 1e-3
        sim_pass = t_sim is not None and abs(t_sim - t_ana) / t_ana <= 0.02
        ok = ok and ana_pass and sim_pass
        table1.append([side, gain, e0, t_ref, t_ana, t_sim,
                       "pass" if ana_pass else "FAIL",
                       "pass" if sim_pass else "FAIL"])
        print(f"ideal {side} k_G={gain:g}: T_ana={t_ana:.3f} (ref {t_ref}) "
              f"T_sim={t_sim:.3f} [{table1[-1][-2]}/{table1[-1][-1]}]")
    _write_csv(os.path.join(out, "ideal_settling.csv"),
               ("side", "k_G", "e0", "T_ref", "T_ana", "T_sim", "ana", "sim"),
               table1)

    mismatch_cfgs = [benchmarks.mismatch_scenario(c) for c in benchmarks.HEADING_MISMATCH_CASES]
    mismatch_rows = dict(_run_many(mismatch_cfgs, args.workers))
    table2 = []
    for case, cfg in zip(benchmarks.HEADING_MISMATCH_CASES, mismatch_cfgs):
        e0 = benchmarks.initial_error(cfg)
        t_ana = tube_entry_time(e0, cfg.guidance)
        t_sim = mismatch_rows[cfg.name][5]
        ana_pass = abs(t_ana - case.t_ana_ref) <= 1e-3
        sim_pass = t_sim is not None and abs(t_sim - case.t_sim_ref) / case.t_sim_ref <= 0.05
        ok = ok and ana_pass and sim_pass
        table2.append([case.case, case.x0, case.y0, case.chi0_deg,
                       case.t_ana_ref, case.t_sim_ref, t_ana, t_sim,
                       "pass" if ana_pass else "FAIL",
                       "pass" if sim_pass else "FAIL"])
        print(f"mismatch {case.case} chi0={case.chi0_deg}deg: "
              f"T_ana={t_ana:.3f} (ref {case.t_ana_ref}) "
              f"T_sim={t_sim:.3f} (ref {case.t_sim_ref}) "
              f"[{table2[-1][-2]}/{table2[-1][-1]}]")
    _write_csv(os.path.join(out, "heading_mismatch.csv"),
               ("case", "x0", "y0", "chi0_deg", "T_ana_ref", "T_sim_ref",
                "T_ana", "T_sim", "ana", "sim"),
               table2)

    print(f"benchmark tables -> {out} ({'all pass' if ok else 'FAILURES PRESENT'})")
    return 0


def _cmd_sixdof(args) -> int:
    cfg = load_quad(args.config)
    trace = run_6dof_inspection(cfg)
    out = _ensure_out(args)
    name = os.path.splitext(os.path.basename(args.config))[0]
    path = os.path.join(out, f"{name}_quadtrace.csv")
    trace.to_csv(path)
    lap = final_lap_slice(trace)
    mean_r = float(np.mean(trace.d[lap]))
    max_dz = float(np.max(np.abs(trace.z[lap] - cfg.outer.z_d)))
    print(f"steady orbit: mean radius {mean_r:.2f} m (target {cfg.outer.r_d} m), "
          f"max |z - z_d| {max_dz:.3f} m over the final lap")
    print(f"trace -> {path}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glasskit",
        description="Standoff-inspection guidance toolkit: scenario runner, "
                    "gain sweeps, baseline comparison and benchmark tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default="out", help="output directory (default: out)")
        p.add_argument("--dt", type=float, default=None, help="override the integrator step")
        p.add_argument("--seed", type=int, default=None,
                       help="reserved; the dynamics are deterministic")

    p_run = sub.add_parser("run", help="run one scenario")
    p_run.add_argument("config")
    common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="sweep shaping gains")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--gains", required=True,
                         help="comma-separated gains, e.g. 0.02,0.04,0.06")
    p_sweep.add_argument("--workers", type=int, default=1)
    common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_cmp = sub.add_parser("compare", help="tanh law vs matched arcsine baseline")
    p_cmp.add_argument("config")
    common(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_tab = sub.add_parser("tables", help="regenerate the built-in benchmark tables")
    p_tab.add_argument("--workers", type=int, default=1)
    common(p_tab)
    p_tab.set_defaults(func=_cmd_tables)

    p_six = sub.add_parser("sixdof", help="run the 6DOF quadrotor embedding")
    p_six.add_argument("config")
    common(p_six)
    p_six.set_defaults(func=_cmd_sixdof)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except GlasskitError as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
