"""Command-line front end: ``curvhom <subcommand> --scenario file.json``.

A scenario is a JSON object with the module payload plus optional
``trunc``, ``bar_window``, ``u_window`` and ``seed`` overrides.  Reports are
canonical JSON (sorted keys, no timestamps); wall-clock data goes to a
``<out>.meta.json`` sidecar.

Exit status: 0 pass, 2 usage error, 3 unstable result, 4 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Dict, Mapping, Optional

from . import __version__

EXIT_PASS, EXIT_USAGE, EXIT_UNSTABLE, EXIT_VIOLATION = 0, 2, 3, 4

COMMON = {"command", "trunc", "bar_window", "u_window", "seed"}


class UsageError(ValueError):
    pass


def canonical(obj):
    """JSON-ready form: Fractions as strings, tuple keys joined, sets sorted."""
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj.numerator)
    if isinstance(obj, Mapping):
        return {(k if isinstance(k, str) else ",".join(map(str, k)) if isinstance(k, tuple) else str(k)):
                canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, set):
        return sorted(canonical(v) for v in obj)
    if hasattr(obj, "to_json"):
        return canonical(obj.to_json())
    return obj


def dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2) + "\n"


def _ring_and_poly(text: str, variables=None, trunc: int = 8, param: Optional[str] = None):
    from .exprparse import ParseError, to_element, variables as used
    from .poly import Generator, TruncatedPolyAlgebra
    try:
        names = list(variables) if variables else used(text)
        if param is not None:
            names = [n for n in names if n != param]
        if not names:
            names = ["x"]
        alg = TruncatedPolyAlgebra([Generator(n) for n in names], trunc)
        return alg, to_element(text, alg)
    except ParseError as e:
        raise UsageError(str(e)) from e


# ---------------------------------------------------------------------------
# subcommands; each returns (result, checks, stable)


def cmd_ext_basic(p, s):
    from .ext_projective import ProjectiveSetup, ext_table, model_slots
    n = int(p.get("n", 4))
    t = ext_table(ProjectiveSetup(n, seed=s["seed"]))
    res = t.to_json()
    res["grid"] = t.grid()
    checks = dict(t.checks)
    if n == 4:
        checks["model_slots"] = set(t.e2) == model_slots(n)
    return res, checks, True


def _cyclic_from(p, s):
    from .dcrit import CyclicLInfinity, random_cyclic
    if "cyclic" in p:
        return CyclicLInfinity.from_json(p["cyclic"])
    r = p.get("random", {})
    return random_cyclic(int(r.get("dim", 2)), int(r.get("max_order", 4)), seed=s["seed"])


def cmd_dcrit(p, s):
    from .dcrit import dcrit_cohomology, potential_from_cyclic
    from .poly import PolyElement
    D = s["trunc"]
    if "potential" in p:
        _, f = _ring_and_poly(p["potential"], p.get("variables"), D + 4)
    else:
        f = potential_from_cyclic(_cyclic_from(p, s), D + 4)
    r = dcrit_cohomology(PolyElement(f.alg.with_trunc(D), f.terms), D)
    res = {"potential": str(f), "cohomology": r["dims"], "cohomology_next": r["dims_next"], "trunc": D}
    return res, {"stable": r["stable"]}, r["stable"]


def cmd_lemma_ax(p, s):
    from .dcrit import break_cyclicity, random_cyclic, verify_lemma_AX
    D = s["trunc"]
    rows = []
    if "cyclic" in p:
        instances = [_cyclic_from(p, s)]
    else:
        r = p.get("random", {})
        count = int(r.get("count", 10))
        instances = [random_cyclic(1 + (s["seed"] + i) % int(r.get("max_dim", 3)),
                                   int(r.get("max_order", 4)), seed=s["seed"] + i) for i in range(count)]
    for data in instances:
        v = verify_lemma_AX(data, D)
        rows.append({"dim": data.dim, "holds": v["holds"], "max_deviation": v["max_deviation"]})
    checks = {"all_hold": all(r["holds"] for r in rows)}
    if p.get("negative_control", False):
        detected = []
        for i, data in enumerate(instances):
            if data.dim < 2:
                continue
            v = verify_lemma_AX(break_cyclicity(data, seed=s["seed"] + i), D)
            detected.append(not v["holds"] and v["witness"] is not None)
        checks["negative_controls_detected"] = all(detected)
        rows_neg = len(detected)
    else:
        rows_neg = 0
    return {"instances": rows, "negative_controls": rows_neg, "trunc": D}, checks, True


def cmd_lemma_fg(p, s):
    from .dcrit import PlusModelData, random_plus_model, verify_lemma_fg
    D = s["trunc"]
    if "plus" in p:
        instances = [PlusModelData.from_json(p["plus"])]
    else:
        r = p.get("random", {})
        instances = [random_plus_model(int(r.get("dim", 1)), int(r.get("w1", 1)), int(r.get("w2", 1)),
                                       int(r.get("max_order", 3)), seed=s["seed"] + i)
                     for i in range(int(r.get("count", 3)))]
    rows = [verify_lemma_fg(d, D) for d in instances]
    out = [{"holds": r["holds"], "tables": r["tables"]} for r in rows]
    return {"instances": out, "trunc": D}, {"all_hold": all(r["holds"] for r in rows)}, True


def _mf_from(spec, s):
    from .mf import MatrixFactorization
    data = dict(spec)
    if "ring" not in data:
        from .exprparse import variables
        names = variables(data["f"])
        for row in data.get("d0", []) + data.get("d1", []):
            for e in row:
                names += [v for v in variables(str(e)) if v not in names]
        data["ring"] = names or ["x"]
    return MatrixFactorization.from_json(data, trunc=s["trunc"])


def cmd_mf_end(p, s):
    from .mf import mf_hom_cohomology, mf_shift
    a = _mf_from(p.get("source", p.get("mf")), s)
    b = _mf_from(p["target"], s) if "target" in p else a
    r = mf_hom_cohomology(a, b, s["trunc"])
    sh = mf_shift(mf_shift(a))
    res = {"even": r["even"], "odd": r["odd"], "next": r["next"], "trunc": r["trunc"]}
    checks = {"stable": r["stable"], "double_shift_is_identity": sh == a}
    return res, checks, r["stable"]


def _curved_from(p, s, trunc):
    from .hochschild import CurvedAlgebra, curved_algebra_from_json, curved_one_object
    from .poly import Generator, TruncatedPolyAlgebra
    from .exprparse import to_element
    if "algebra" in p:
        return curved_algebra_from_json(p["algebra"])
    if "potential" in p:
        _, W = _ring_and_poly(p["potential"], p.get("variables"), trunc)
        return curved_one_object(W, trunc)
    ring = p.get("ring", {"variables": []})
    odd = set(ring.get("odd", []))
    gens = [Generator(n, 1 if n in odd else 0, 1 if n in odd else 0) for n in ring.get("variables", [])]
    alg = TruncatedPolyAlgebra(gens, int(ring.get("trunc", trunc)))
    h = to_element(p["curvature"], alg) if p.get("curvature") else None
    d = {k: to_element(v, alg) for k, v in p.get("differential", {}).items()}
    return CurvedAlgebra.from_poly(alg, h, d or None, gen_weights=p.get("weights"))


def cmd_hochschild_check(p, s):
    from .hochschild import HochschildWindow, mixed_identity_check
    A = _curved_from(p, s, s["trunc"])
    r = mixed_identity_check(HochschildWindow(A, s["bar_window"]))
    checks = {k: r[k]["holds"] for k in ("b^2", "B^2", "bB+Bb")}
    return r, checks, True


def cmd_hp(p, s):
    from .hochschild import HochschildWindow, hp_dims
    A = _curved_from(p, s, s["trunc"])
    r = hp_dims(HochschildWindow(A, s["bar_window"]))
    res = {"even": r["even"], "odd": r["odd"], "total": r["total"],
           "windows": [run["windows"] for run in r["runs"]]}
    return res, {"stable": r["stable"]}, r["stable"]


def cmd_twisted_derham(p, s):
    from .twisted import TwistedDeRham, milnor_number, twisted_cohomology
    D = s["trunc"]
    _, W = _ring_and_poly(p.get("potential", "x^3"), p.get("variables"), D + 16)
    r = twisted_cohomology(TwistedDeRham(W, D))
    mu = milnor_number(W) if p.get("milnor", True) else None
    res = {"potential": str(W), "dims": r["dims"], "dims_next": r["dims_next"],
           "even": r["even"], "odd": r["odd"], "total": r["total"], "milnor": mu, "trunc": D}
    checks = {"stable": r["stable"]}
    if mu is not None:
        checks["total_equals_milnor"] = r["total"] == mu
    return res, checks, r["stable"]


def cmd_hkr_check(p, s):
    from .twisted import hkr_check
    D = s["trunc"]
    _, W = _ring_and_poly(p.get("potential", "x^2"), p.get("variables"), D + 16)
    r = hkr_check(W, D, int(p.get("max_length", 4)))
    return r, {"holds": r["holds"]}, True


def _family_from(p, s):
    from .twisted import PotentialFamily
    try:
        return PotentialFamily.parse(p.get("family", "x^3 - t*x"), p.get("param", "t"), p.get("grid", [0]))
    except ValueError as e:
        raise UsageError(str(e)) from e


def cmd_gm_check(p, s):
    from .twisted import gm_flatness_check, random_cubic_family
    fams = []
    if "family" in p or "random" not in p:
        fams.append(("family", _family_from(p, s)))
    if "random" in p:
        r = p["random"]
        for i in range(int(r.get("count", 10))):
            fams.append((f"random-{i}", random_cubic_family(1 + i % int(r.get("max_vars", 2)), seed=s["seed"] + i)))
    rows = []
    for name, fam in fams:
        r = gm_flatness_check(fam, int(p.get("degree", 3)), s["u_window"])
        rows.append({"name": name, "family": str(fam.W), "flat": r["flat"],
                     "residue": r["commutator_residue"] + r["nabla_squared_residue"],
                     "brackets": r["bracket_terms_nonzero"], "middle_terms_cancel": r["middle_terms_cancel"]})
    res = {"families": rows, "flat": all(r["flat"] for r in rows),
           "residue": sum(r["residue"] for r in rows)}
    return res, {"flat": res["flat"]}, True


def cmd_family_scan(p, s):
    from .twisted import family_scan, scan_csv
    fam = _family_from(p, s)
    r = family_scan(fam, D=s["trunc"])
    res = {"rows": r["rows"], "verdict": r["verdict"], "csv": scan_csv(r)}
    dims = {row["total"] for row in r["rows"]}
    if len(dims) == 1:
        res["dimension"] = dims.pop()
    stable = r["verdict"] != "unstable"
    return res, {"constant": r["constant"]} if stable else {}, stable


def _bar_pair(p, s):
    from .bar import AugmentedAlgebraModulePair, monomial_algebra, quotient_module, residue_module
    a = p.get("algebra", {"variables": ["x"], "trunc": 1})
    alg, _ = monomial_algebra(a.get("variables", ["x"]), int(a.get("trunc", 1)), a.get("relations", []))

    def module(spec, side):
        if spec is None:
            return residue_module(alg, side)
        return quotient_module(alg, spec, side)
    # every chain of the window has weight at most (window + 1) * trunc
    cap = p.get("degree_cap", (s["bar_window"] + 1) * int(a.get("trunc", 1)))
    return AugmentedAlgebraModulePair(alg, module(p.get("M"), "right"), module(p.get("N"), "left"),
                                      degree_cap=cap)


def cmd_bar_tor(p, s):
    from .bar import bar_tor_dims
    r = bar_tor_dims(_bar_pair(p, s), s["bar_window"])
    res = {"dims": r["dims"], "certified": r["certified"], "window": r["window"]}
    if "expect" in p:
        exp = {int(k): v for k, v in p["expect"].items()}
        return res, {"matches_expected": all(r["dims"].get(k, 0) == v for k, v in exp.items()
                                             if k in r["certified"])}, True
    return res, {}, True


def cmd_ss_demo(p, s):
    from .bar import bar_spectral_demo
    r = bar_spectral_demo(_bar_pair(p, s), s["bar_window"], int(p.get("r_max", 4)))
    pages = [pg.to_json() for pg in r["pages"]]
    res = {"pages": pages, "total_cohomology": r["total_cohomology"], "e1_rows": r["e1_rows"],
           "degenerate_at": r["degenerate_at"], "csv": r["pages"][-1].to_csv()}
    return res, {"converges": r["converges"]}, True


COMMANDS: Dict[str, tuple] = {
    "ext-basic": (cmd_ext_basic, {"n"}),
    "dcrit": (cmd_dcrit, {"potential", "variables", "cyclic", "random"}),
    "lemma-ax": (cmd_lemma_ax, {"cyclic", "random", "negative_control"}),
    "lemma-fg": (cmd_lemma_fg, {"plus", "random"}),
    "mf-end": (cmd_mf_end, {"mf", "source", "target"}),
    "hochschild-check": (cmd_hochschild_check, {"algebra", "potential", "variables", "ring", "curvature",
                                                "differential", "weights"}),
    "hp": (cmd_hp, {"algebra", "potential", "variables", "ring", "curvature", "differential", "weights"}),
    "twisted-derham": (cmd_twisted_derham, {"potential", "variables", "milnor"}),
    "hkr-check": (cmd_hkr_check, {"potential", "variables", "max_length"}),
    "gm-check": (cmd_gm_check, {"family", "param", "grid", "random", "degree"}),
    "family-scan": (cmd_family_scan, {"family", "param", "grid"}),
    "ss-demo": (cmd_ss_demo, {"algebra", "M", "N", "degree_cap", "r_max"}),
    "bar-tor": (cmd_bar_tor, {"algebra", "M", "N", "degree_cap", "expect"}),
}

DEFAULTS = {
    "trunc": {"mf-end": 6, "hochschild-check": 6, "hp": 6, "twisted-derham": 6, "hkr-check": 6,
              "family-scan": 8, "lemma-ax": 8, "lemma-fg": 4, "dcrit": 8},
    "bar_window": {"hochschild-check": 6, "hp": 4, "bar-tor": 6, "ss-demo": 3},
}


def effective_settings(command: str, scenario: Mapping, args) -> dict:
    env_trunc = os.environ.get("CURVHOM_TRUNC")
    trunc = DEFAULTS["trunc"].get(command, 8)
    if env_trunc:
        trunc = int(env_trunc)
    trunc = scenario.get("trunc", trunc)
    if args.trunc is not None:
        trunc = args.trunc
    window = scenario.get("bar_window", DEFAULTS["bar_window"].get(command, 6))
    if args.bar_window is not None:
        window = args.bar_window
    seed = scenario.get("seed", 0) if args.seed is None else args.seed
    u_window = scenario.get("u_window", 3)
    for name, v in (("trunc", trunc), ("bar_window", window), ("seed", seed), ("u_window", u_window)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise UsageError(f"{name} must be an integer")
    return {"trunc": trunc, "bar_window": window, "seed": seed, "u_window": u_window}


def run(command: str, scenario: Mapping, args) -> tuple:
    """Execute one scenario; returns (report, exit status)."""
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    if scenario.get("command", command) != command:
        raise UsageError(f"scenario is for {scenario['command']!r}, not {command!r}")
    fn, allowed = COMMANDS[command]
    unknown = set(scenario) - allowed - COMMON
    if unknown:
        raise UsageError(f"unknown scenario fields: {sorted(unknown)}")
    settings = effective_settings(command, scenario, args)
    payload = {k: v for k, v in scenario.items() if k not in COMMON}
    from .linalg import WindowOverflow
    try:
        result, checks, stable = fn(payload, settings)
    except (KeyError, TypeError) as e:
        raise UsageError(f"malformed payload: {e}") from e
    except WindowOverflow as e:
        result, checks, stable = {"error": str(e)}, {}, False
    if not stable:
        status, code = "unstable", EXIT_UNSTABLE
    elif all(checks.values()):
        status, code = "pass", EXIT_PASS
    else:
        status, code = "fail", EXIT_VIOLATION
    report = {
        "tool": "curvhom",
        "version": __version__,
        "command": command,
        "parameters": {"payload": payload, **settings},
        "result": result,
        "checks": checks,
        "status": status,
    }
    return report, code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curvhom", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"curvhom {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--scenario", help="scenario JSON file ('-' for stdin); defaults apply if omitted")
        sp.add_argument("--out", help="write the report here (stdout otherwise)")
        sp.add_argument("--csv", help="also write the tabular part of the result as CSV")
        sp.add_argument("--trunc", type=int)
        sp.add_argument("--bar-window", type=int, dest="bar_window")
        sp.add_argument("--seed", type=int)
    return ap


def _load(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read scenario: {e}") from e
    if not isinstance(data, dict):
        raise UsageError("scenario must be a JSON object")
    return data


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.time()
    try:
        report, code = run(args.command, _load(args.scenario), args)
    except UsageError as e:
        print(f"curvhom: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as e:
        print(f"curvhom: invariant violation: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except ValueError as e:
        print(f"curvhom: invalid input: {e}", file=sys.stderr)
        return EXIT_USAGE
    body = dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
        meta = {"started": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(started)),
                "elapsed_seconds": round(time.time() - started, 3), "report": os.path.basename(args.out)}
        with open(args.out + ".meta.json", "w") as fh:
            fh.write(json.dumps(meta, sort_keys=True, indent=2) + "\n")
        if "grid" in report["result"]:
            print(report["result"]["grid"], file=sys.stderr)
    else:
        sys.stdout.write(body)
    if args.csv and isinstance(report["result"], dict) and "csv" in report["result"]:
        with open(args.csv, "w") as fh:
            fh.write(report["result"]["csv"])
    return code


if __name__ == "__main__":
    sys.exit(main())
