"""Batch runner: load a scenario file, run its tasks in order, emit a report.

Exit status is 0 on success, 1 if any task failed and 2 for input errors
(unreadable or malformed scenario, unknown preset, task or name).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import dioph, monoid, rings, toric
from .errors import AdjringError, FanError, ScenarioError
from .exact import Q, QuadScalar, fmt
from .polytope import RationalCone, RationalPolytope

TASKS = ("validate-fan", "h0", "fix", "base-locus", "stable-base-locus", "positivity",
         "sigma", "nsigma", "adjoint-polytopes", "phi", "hilbert-basis", "diophantine",
         "ring-generators", "verify-generation", "fix-function", "veronese", "cox-descent")

_TERM = re.compile(r"\s*([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_]*)\s*")


class Context:
    """Resolved scenario objects shared by all tasks."""

    def __init__(self, scenario: dict, seed: int = 0, kmax: int = 120):
        if not isinstance(scenario, dict):
            raise ScenarioError("scenario must be a JSON object")
        self.seed = seed
        self.kmax = kmax
        self.field = int(scenario.get("field", 2))
        fan_obj = scenario.get("fan")
        if fan_obj is None:
            raise ScenarioError("scenario has no fan")
        try:
            self.fan = toric.Fan.from_json(fan_obj)
        except FanError as exc:
            raise ScenarioError(str(exc)) from exc
        self.divisors = {"K": toric.canonical_divisor(self.fan)}
        for name, coeffs in scenario.get("divisors", {}).items():
            if not isinstance(coeffs, list) or len(coeffs) != self.fan.n_rays:
                raise ScenarioError(f"divisor {name!r} needs {self.fan.n_rays} coefficients")
            try:
                self.divisors[name] = self.fan.divisor([Q(c) for c in coeffs])
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise ScenarioError(f"divisor {name!r}: {exc}") from exc

    def divisor(self, ref) -> toric.TorusDivisor:
        """A name, a linear expression such as ``K+5/2*H`` or a coefficient list."""
        if isinstance(ref, list):
            return self.fan.divisor([Q(c) for c in ref])
        if not isinstance(ref, str):
            raise ScenarioError(f"bad divisor reference {ref!r}")
        out = self.fan.zero()
        pos = 0
        text = ref.strip()
        if not text:
            raise ScenarioError("empty divisor expression")
        while pos < len(text):
            mt = _TERM.match(text, pos)
            if not mt or mt.end() == pos:
                raise ScenarioError(f"cannot parse divisor expression {ref!r} at position {pos}")
            sign, coef, name = mt.groups()
            if name not in self.divisors:
                raise ScenarioError(f"unknown divisor {name!r}")
            c = Q(coef) if coef else Fraction(1)
            out = out + self.divisors[name] * (-c if sign == "-" else c)
            pos = mt.end()
        return out


def _ints(rows):
    return [[int(x) for x in r] for r in rows]


def _quad_point(ctx: Context, coords):
    out = []
    for c in coords:
        if isinstance(c, dict):
            out.append(QuadScalar(Q(c.get("a", 0)), Q(c.get("b", 0)), int(c.get("d", ctx.field))))
        else:
            out.append(Q(c))
    return out


def _scenario(ctx, t):
    a = ctx.divisor(t["A"])
    return toric.AdjointScenario(ctx.fan, int(t["S"]), tuple(int(i) for i in t["V"]), a)


def _ring(ctx, t):
    return rings.SectionRing([ctx.divisor(d) for d in t["divisors"]])


def run_task(ctx: Context, t: dict) -> dict:
    name = t["task"]
    if name == "validate-fan":
        return toric.validate_fan(ctx.fan, seed=ctx.seed).to_json()
    if name == "h0":
        d = ctx.divisor(t["divisor"])
        return {"h0": toric.h0(d)}
    if name == "fix":
        ls = toric.global_sections(ctx.divisor(t["divisor"]).floor())
        return ls.to_json()
    if name == "base-locus":
        return {"cones": [list(c) for c in toric.base_locus(ctx.divisor(t["divisor"]))]}
    if name == "stable-base-locus":
        return toric.stable_base_locus(ctx.divisor(t["divisor"])).to_json()
    if name == "positivity":
        return toric.positivity(ctx.divisor(t["divisor"])).to_json()
    if name in ("sigma", "nsigma"):
        a = ctx.divisor(t["ample"]) if "ample" in t else None
        z = toric.sigma(ctx.divisor(t["divisor"]), a)
        if name == "sigma":
            return {"sigma": [fmt(s) for s in z.sigma]}
        return {"n_sigma": z.n_sigma.to_json(), "positive_part": z.positive_part.to_json()}
    if name == "adjoint-polytopes":
        return toric.adjoint_polytopes(_scenario(ctx, t)).to_json()
    if name == "phi":
        m = t.get("m", "asymptotic")
        return toric.phi(_scenario(ctx, t), [Q(b) for b in t["b"]], m).to_json()
    if name == "hilbert-basis":
        cone = RationalCone.from_generators(_ints(t["rays"]))
        hb = monoid.hilbert_basis(cone, t.get("grading"), t.get("lattice"))
        return {"elements": hb.to_json()}
    if name == "diophantine":
        p = RationalPolytope.from_json(t["polytope"])
        res = dioph.approximate_in_polytope(p, _quad_point(ctx, t["x"]), int(t["k"]), Q(t["eps"]))
        return res.to_json()
    if name == "ring-generators":
        r = _ring(ctx, t)
        bound = int(t.get("bound", 4))
        g = rings.minimal_generators(r, bound)
        gens = set(g.elements)
        rows = [{"multidegree": list(m), "point": list(u), "is_generator": (m, u) in gens}
                for m, u in r.monomials(bound)]
        return {"verdict": g.verdict, "rows": rows}
    if name == "verify-generation":
        r = _ring(ctx, t)
        bound = int(t.get("bound", 4))
        if "generators" in t:
            g = [(tuple(e["degree"]), tuple(e["point"])) for e in t["generators"]]
        else:
            g = rings.minimal_generators(r, bound)
        ok, bad = rings.verify_generation(r, g, bound)
        return {"generated": ok, "counterexample": None if bad is None else {"degree": list(bad[0]), "point": list(bad[1])}}
    if name == "fix-function":
        verts = [ctx.divisor(d) for d in t["vertices"]]
        rays = t.get("rays")
        ff = rings.fix_function(verts, rays, k_max=int(t.get("kmax", ctx.kmax)), seed=ctx.seed)
        return ff.to_json()
    if name == "veronese":
        r = _ring(ctx, t)
        v = rings.veronese_ring(r, _ints(t["lattice"]))
        g = rings.minimal_generators(v, int(t.get("bound", 3)))
        return {"divisors": [d.to_json() for d in v.divisors], "generators": g.to_json()}
    if name == "cox-descent":
        primes = [int(i) for i in t["primes"]]
        r = rings.SectionRing([ctx.fan.prime(i) for i in primes])
        pieces = [RationalCone.from_generators(_ints(g), len(primes)) for g in t["pieces"]]
        res = rings.cox_descent_generators(r, primes, pieces, int(t["M"]), int(t.get("bound", 6)))
        return res.to_json()
    raise ScenarioError(f"unknown task {name!r}")


def _check_tasks(tasks):
    if not isinstance(tasks, list):
        raise ScenarioError("tasks must be a list")
    for i, t in enumerate(tasks):
        if not isinstance(t, dict) or "task" not in t:
            raise ScenarioError(f"task {i} has no 'task' field")
        if t["task"] not in TASKS:
            raise ScenarioError(f"unknown task {t['task']!r} at index {i}")


def run_scenario(scenario: dict, seed: int = 0, kmax: int = 120, threads: int = 1):
    """Report dictionary and a flag telling whether any task failed."""
    ctx = Context(scenario, seed, kmax)
    tasks = scenario.get("tasks", [])
    _check_tasks(tasks)

    def one(item):
        i, t = item
        entry = {"index": i, "task": t["task"]}
        try:
            entry["status"] = "ok"
            entry["result"] = run_task(ctx, t)
        except (AdjringError, ValueError, KeyError, RuntimeError, ZeroDivisionError) as exc:
            entry["status"] = "error"
            entry.pop("result", None)
            entry["error"] = f"{type(exc).__name__}: {exc}"
        return entry

    items = list(enumerate(tasks))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            entries = list(pool.map(one, items))
    else:
        entries = [one(x) for x in items]
    entries.sort(key=lambda e: e["index"])
    report = {"scenario": scenario.get("name", ""), "fan": ctx.fan.to_json(), "tasks": entries}
    return report, any(e["status"] == "error" for e in entries)


def _flatten(prefix, obj, out):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list):
        if not obj:
            out.append((prefix, "[]"))
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, "" if obj is None else str(obj).lower() if isinstance(obj, bool) else str(obj)))


def emit(report: dict, fmt_: str = "json") -> bytes:
    """Serialise a report; field order is the construction order."""
    if fmt_ == "json":
        return (json.dumps(report, indent=2, ensure_ascii=False) + "\n").encode()
    if fmt_ == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "task", "status", "field", "value"])
        for e in report["tasks"]:
            rows = []
            _flatten("", e.get("result", {"error": e.get("error")}), rows)
            for path, val in rows:
                w.writerow([e["index"], e["task"], e["status"], path, val])
        return buf.getvalue().encode()
    raise ValueError(f"unknown format {fmt_!r}")


def load_scenario(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="adjring", description="Run toric adjoint-ring scenarios.")
    ap.add_argument("--scenario", required=True, help="scenario JSON file")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=("json", "csv"), default=None)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--kmax", type=int, default=120)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.scenario)
        report, failed = run_scenario(scenario, args.seed, args.kmax, args.threads)
        fmt_ = args.format or scenario.get("format", "json")
        data = emit(report, fmt_)
    except (ScenarioError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 1 if failed else 0
