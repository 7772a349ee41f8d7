"""Command-line interface: ``neutralstab analyze | sweep | simulate``.

Exit codes: 0 success (for ``analyze``: delay-independent stable), 1 not
stable (``analyze`` only), 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import report
from .ddesim import SimConfig, classify, simulate
from .errors import NeutralStabError
from .polycore import rat
from .stability import TOL_RES, analyze, sweep
from .systemfile import load_template

EXIT_STABLE = 0
EXIT_UNSTABLE = 1
EXIT_INPUT = 2


def _assignments(items: list[str]) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise NeutralStabError(f"--set expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = rat(v.strip())
    return out


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_analyze(args) -> int:
    tpl = load_template(args.path)
    system = tpl.instantiate(**_assignments(args.set))
    tol_root = rat(args.tol_root)
    verdict = analyze(system, tol_res=args.tol_res, tol_root=tol_root)
    tolerances = {"tol_res": args.tol_res, "tol_root": args.tol_root}
    if args.json:
        _write(args.json, report.dumps(report.verdict_to_json(system, verdict, tolerances)))
    if args.json != "-":
        sys.stdout.write(report.verdict_text(system, verdict))
    return EXIT_STABLE if verdict.delay_independent_stable else EXIT_UNSTABLE


def _parse_range(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 2:
        raise NeutralStabError(f"--range expects lo:hi, got {text!r}")
    return rat(parts[0]), rat(parts[1])


def cmd_sweep(args) -> int:
    tpl = load_template(args.path)
    if args.set:
        tpl = type(tpl)(tpl.n, tpl.N, tpl.A0, tpl.A, tpl.B, {**tpl.params, **_assignments(args.set)}, tpl.label)
    result = sweep(tpl, args.param, _parse_range(args.range), args.steps, workers=args.workers)
    if args.json:
        _write(args.json, report.dumps(report.sweep_to_json(result)))
    if args.json != "-":
        sys.stdout.write(report.sweep_text(result))
    return EXIT_STABLE


def cmd_simulate(args) -> int:
    system = load_template(args.path).instantiate(**_assignments(args.set))
    cfg = SimConfig(args.tau, step=args.step, horizon=args.horizon)
    traj = simulate(system, cfg)
    label = "growing" if traj.overflowed else classify(traj.growth_rate)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["time", "norm"] + [f"x{i + 1}" for i in range(system.n)])
            norms = np.linalg.norm(traj.states, axis=1)
            for t, nrm, x in zip(traj.times, norms, traj.states):
                w.writerow([repr(float(t)), repr(float(nrm))] + [repr(float(v)) for v in x])
    resolved = cfg.resolved()
    print(f"tau = {resolved.tau:g}, step = {resolved.step:g}, horizon = {resolved.horizon:g}")
    print(f"growth rate = {traj.growth_rate:.6g}" + (" (stopped at overflow)" if traj.overflowed else ""))
    print(label)
    return EXIT_STABLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="neutralstab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="decide delay-independent stability")
    a.add_argument("path", help="system file, or the name of a bundled system such as ex3")
    a.add_argument("--json", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
    a.add_argument("--tol-res", type=float, default=TOL_RES, help="relative residual tolerance for common roots")
    a.add_argument("--tol-root", default="1e-12", help="root isolation interval width")
    a.add_argument("--set", action="append", metavar="NAME=VALUE", help="parameter value")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", help="scan a parameter and locate stability endpoints")
    s.add_argument("path")
    s.add_argument("--param", required=True, help="parameter name or entry such as A1[0,1]")
    s.add_argument("--range", required=True, metavar="LO:HI")
    s.add_argument("--steps", type=int, default=31)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--json", metavar="OUT")
    s.add_argument("--set", action="append", metavar="NAME=VALUE")
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("simulate", help="integrate the system at a fixed delay")
    m.add_argument("path")
    m.add_argument("--tau", type=float, required=True)
    m.add_argument("--horizon", type=float)
    m.add_argument("--step", type=float)
    m.add_argument("--out", metavar="CSV")
    m.add_argument("--set", action="append", metavar="NAME=VALUE")
    m.set_defaults(func=cmd_simulate)
    return p


def _glue_values(argv: list[str]) -> list[str]:
    # "--range -1.5:1.5" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--range", "--set"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    try:
        return args.func(args)
    except (NeutralStabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
