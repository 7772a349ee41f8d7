"""JSON and plain-text renderings of stability verdicts.

Rationals are written as exact strings (terminating decimals where
possible, ``p/q`` otherwise), so a report reloads to the exact polynomials
that produced it.  Output is deterministic for identical inputs.
"""

from __future__ import annotations

import json
from typing import Any

from .polycore import BiPoly, UniPoly, rat, rat_to_str
from .stability import NeutralSystem, StabilityVerdict, SweepResult

FORMAT = "neutralstab-report/1"


def poly_to_json(p: UniPoly | None):
    if p is None:
        return None
    return {"var": p.var, "coeffs": [rat_to_str(c) for c in p.coeffs]}


def poly_from_json(d) -> UniPoly | None:
    if d is None:
        return None
    return UniPoly([rat(c) for c in d["coeffs"]], d["var"])


def bipoly_to_json(P: BiPoly):
    return {"vars": list(P.vars), "grid": [[rat_to_str(c) for c in row] for row in P.grid]}


def bipoly_from_json(d) -> BiPoly:
    return BiPoly([[rat(c) for c in row] for row in d["grid"]], tuple(d["vars"]))


def _matrix(M):
    return [[rat_to_str(c) for c in row] for row in M]


def system_to_json(sys: NeutralSystem) -> dict:
    return {
        "label": sys.label,
        "n": sys.n,
        "N": sys.N,
        "A0": _matrix(sys.A0),
        "A": [_matrix(m) for m in sys.A],
        "B": [_matrix(m) for m in sys.B],
    }


def verdict_to_json(sys: NeutralSystem, v: StabilityVerdict, tolerances: dict | None = None) -> dict:
    r1, r2, r3 = v.condition_reports
    return {
        "format": FORMAT,
        "system": system_to_json(sys),
        "verdict": {
            "status": v.status,
            "delay_independent_stable": v.delay_independent_stable,
            "failing_conditions": list(v.failing),
            "delay_bound_T": v.delay_bound_T,
            "bound_applicable": v.bound_applicable,
        },
        "condition_i": {
            "f": poly_to_json(r1.f),
            "g": poly_to_json(r1.g),
            "resultant": rat_to_str(r1.resultant),
            "pole_det": rat_to_str(r1.pole_det),
            "common_real_roots": list(r1.common_real_roots),
            "passed": r1.passed,
        },
        "condition_ii": {
            "char_poly": poly_to_json(r2.char_poly),
            "hurwitz_minors": [rat_to_str(m) for m in r2.hurwitz_minors],
            "passed": r2.passed,
        },
        "condition_iii": {
            "F": bipoly_to_json(r3.F),
            "G": bipoly_to_json(r3.G),
            "res_y": poly_to_json(r3.res_y),
            "res_z": poly_to_json(r3.res_z),
            "y_roots": list(r3.y_roots),
            "z_roots": list(r3.z_roots),
            "witnesses": [[z, y] for z, y in r3.witnesses],
            "pole_witnesses": list(r3.pole_witnesses),
            "common_component": r3.common_component,
            "passed": r3.passed,
        },
        "tolerances": dict(sorted((tolerances or {}).items())),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_report(text: str) -> dict[str, Any]:
    """Parse a JSON report and rebuild its polynomials exactly.

    Returns the document with polynomial entries replaced by
    :class:`UniPoly` / :class:`BiPoly` values.
    """
    doc = json.loads(text)
    c1, c2, c3 = doc["condition_i"], doc["condition_ii"], doc["condition_iii"]
    c1["f"], c1["g"] = poly_from_json(c1["f"]), poly_from_json(c1["g"])
    c1["resultant"], c1["pole_det"] = rat(c1["resultant"]), rat(c1["pole_det"])
    c2["char_poly"] = poly_from_json(c2["char_poly"])
    c2["hurwitz_minors"] = [rat(m) for m in c2["hurwitz_minors"]]
    c3["F"], c3["G"] = bipoly_from_json(c3["F"]), bipoly_from_json(c3["G"])
    c3["res_y"], c3["res_z"] = poly_from_json(c3["res_y"]), poly_from_json(c3["res_z"])
    return doc


def _fmt_float(x: float) -> str:
    return f"{x:.6g}"


def verdict_text(sys: NeutralSystem, v: StabilityVerdict) -> str:
    r1, r2, r3 = v.condition_reports
    lines = []
    if sys.label:
        lines.append(sys.label)
    lines.append(f"n = {sys.n}, N = {sys.N}")
    lines.append("")
    lines.append(f"condition (i)   {'pass' if r1.passed else 'FAIL'}")
    lines.append(f"  f(z) = {r1.f}")
    lines.append(f"  g(z) = {r1.g}")
    if r1.common_real_roots:
        lines.append("  common real roots: " + ", ".join(_fmt_float(z) for z in r1.common_real_roots))
    if not r1.pole_det:
        lines.append("  det(I - sum (-1)^k B_k) = 0: root of the difference operator at -1")
    lines.append(f"condition (ii)  {'pass' if r2.passed else 'FAIL'}")
    lines.append(f"  {r2.char_poly}")
    lines.append(f"condition (iii) {'pass' if r3.passed else 'FAIL'}")
    if r3.res_y is not None:
        lines.append(f"  R(F,G)(y): degree {r3.res_y.degree}, {len(r3.y_roots)} nonzero real roots")
        lines.append(f"  R~(F,G)(z): degree {r3.res_z.degree}, {len(r3.z_roots)} real roots checked")
    if r3.common_component:
        lines.append("  F and G share a common component")
    for z, y in r3.witnesses:
        lines.append(f"  common root z = {_fmt_float(z)}, y = {_fmt_float(y)}")
    for y in r3.pole_witnesses:
        lines.append(f"  common root at z = inf (theta = pi), y = {_fmt_float(y)}")
    lines.append("")
    if v.delay_independent_stable:
        lines.append("verdict: delay-independent stable")
    elif v.status == "boundary":
        lines.append("verdict: not delay-independent stable (marginal)")
    else:
        lines.append("verdict: not delay-independent stable")
    if v.delay_bound_T is not None:
        lines.append(f"maximal delay bound T = {v.delay_bound_T:.6g}")
    return "\n".join(lines) + "\n"


def sweep_to_json(result: SweepResult) -> dict:
    return {
        "format": FORMAT,
        "param": result.param,
        "points": [{"value": rat_to_str(p.value), "status": p.status} for p in result.points],
        "transitions": [
            {"left": rat_to_str(t.left), "right": rat_to_str(t.right), "estimate": t.estimate,
             "stable_side": t.stable_side}
            for t in result.transitions
        ],
        "stable_regions": [list(r) for r in result.regions],
    }


def sweep_text(result: SweepResult) -> str:
    lines = [f"sweep over {result.param}: {len(result.points)} grid points"]
    for p in result.points:
        lines.append(f"  {rat_to_str(p.value):>12}  {p.status}")
    if result.transitions:
        lines.append("endpoints:")
        for t in result.transitions:
            lines.append(f"  {t.estimate:.5f}  (stable on the {t.stable_side})")
    if result.regions:
        lines.append("stable regions:")
        for lo, hi in result.regions:
            lines.append(f"  ({lo:.5f}, {hi:.5f})")
    else:
        lines.append("no stable region found")
    return "\n".join(lines) + "\n"
