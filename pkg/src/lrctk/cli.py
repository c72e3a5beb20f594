"""Command-line interface: construct / analyze / bound / certify / repair / simulate.

Every invocation prints exactly one JSON document (the `bound` command's
document is a single line) with a "format": 1 field.  All coordinates on
this boundary are 1-based.  Exit codes: 0 ok, 1 invalid input or
invariant violation, 2 enumeration budget exceeded.  All randomness
requires an explicit --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import codefile
from .bounds import (
    asymptotic_concat_bound,
    concat_bound,
    concat_classical_bounds,
    gopalan_bound,
    locality_bound,
)
from .codes import (
    DISTANCE_BUDGET,
    SUBSPACE_BUDGET,
    dual_code,
    min_distance,
    wei_dual_hierarchy,
    weight_hierarchy,
)
from .constructions import (
    ConstructionRecipe,
    concatenate,
    parity_split_code,
    pyramid_code,
    random_all_symbol_code,
    rs_code,
)
from .errors import BudgetExceeded, InvalidParams, LrcError, Unrecoverable
from .gf import make_field
from .locality import certify_optimality
from .repair import NoGroup, TooManyLocalErasures, global_decode, local_repair
from .simulator import FailureModel, Scenario, run_scenario

FORMAT = codefile.FORMAT_VERSION


def _emit(doc: dict):
    sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")


def _parse_modulus(text):
    return [int(c) for c in text.split(",")] if text else None


def _parse_fraction(text) -> Fraction:
    return Fraction(text)


def _cmd_construct(args) -> int:
    kind = args.kind
    profile = None
    if kind == "concat":
        if not args.inner or not args.outer:
            raise InvalidParams("concat needs --inner and --outer code files")
        inner, _, _ = codefile.load_code(args.inner)
        outer, _, _ = codefile.load_code(args.outer)
        code, recipe = concatenate(outer, inner)
    else:
        if args.q is None:
            raise InvalidParams(f"{kind} needs --q")
        F = make_field(args.q, _parse_modulus(args.modulus))
        if kind == "rs":
            if args.n is None or args.k is None:
                raise InvalidParams("rs needs --n and --k")
            code = rs_code(args.n, args.k, F)
            params = {"q": F.q, "n": args.n, "k": args.k}
            if F.modulus:
                params["modulus"] = list(F.modulus)
            recipe = ConstructionRecipe("rs", params, {"points": F.points(args.n)})
        elif kind == "pyramid":
            for name in ("k", "r", "delta", "d"):
                if getattr(args, name) is None:
                    raise InvalidParams(f"pyramid needs --{name}")
            code, profile, recipe = pyramid_code(args.k, args.r, args.delta, args.d, F)
        elif kind == "parity-split":
            for name in ("k", "r", "delta"):
                if getattr(args, name) is None:
                    raise InvalidParams(f"parity-split needs --{name}")
            code, profile, recipe = parity_split_code(args.k, args.r, args.delta, F)
        elif kind == "random":
            for name in ("k", "r", "delta", "t", "seed"):
                if getattr(args, name) is None:
                    raise InvalidParams(f"random needs --{name}")
            code, profile, recipe = random_all_symbol_code(
                args.k, args.r, args.delta, args.t, F, args.seed,
                attempts=args.attempts, threads=args.threads)
        else:  # pragma: no cover - argparse restricts choices
            raise InvalidParams(f"unknown kind {kind}")
    doc = codefile.code_to_dict(code, profile, recipe)
    if args.out:
        codefile.save_code(args.out, code, profile, recipe)
    _emit(doc)
    return 0


def _cmd_bound(args) -> int:
    which = args.which
    if which == "gopalan":
        value = gopalan_bound(args.n, args.k, args.r)
        inputs = {"n": args.n, "k": args.k, "r": args.r}
    elif which == "locality":
        value = locality_bound(args.n, args.k, args.r, args.delta)
        inputs = {"n": args.n, "k": args.k, "r": args.r, "delta": args.delta}
    elif which == "concat":
        value = concat_bound(args.n1, args.k1, args.d1, args.n2, args.k2)
        inputs = {"n1": args.n1, "k1": args.k1, "d1": args.d1, "n2": args.n2, "k2": args.k2}
    elif which == "concat-classical":
        lo, hi = concat_classical_bounds(args.n1, args.d1, args.d2)
        value = [lo, hi]
        inputs = {"n1": args.n1, "d1": args.d1, "d2": args.d2}
    elif which == "asymptotic":
        if args.rate is None or args.rate1 is None:
            raise InvalidParams("asymptotic needs --rate and --rate1")
        frac = asymptotic_concat_bound(_parse_fraction(args.rate), _parse_fraction(args.rate1))
        value = [frac.numerator, frac.denominator]
        inputs = {"rate": args.rate, "rate1": args.rate1}
    else:  # pragma: no cover
        raise InvalidParams(f"unknown bound {which}")
    for key, v in inputs.items():
        if v is None:
            raise InvalidParams(f"{which} needs --{key}")
    _emit({"format": FORMAT, "name": which, "value": value, "inputs": inputs})
    return 0


def _cmd_analyze(args) -> int:
    code, profile, recipe = codefile.load_code(args.codefile)
    n, k = code.n, code.k
    skipped = []
    report = {"format": FORMAT, "q": code.field.q, "n": n, "k": k}
    try:
        d = min_distance(code, args.budget)
    except BudgetExceeded:
        d = None
        skipped.append("d")
    direct = dual_h = None
    try:
        direct = weight_hierarchy(code, args.subspace_budget)
    except BudgetExceeded:
        skipped.append("hierarchy")
    try:
        dual_h = weight_hierarchy(dual_code(code), args.subspace_budget)
    except BudgetExceeded:
        skipped.append("dual_hierarchy")
    if direct is not None:
        report["dims"], report["gaps"], report["hierarchy_source"] = list(direct.dims), list(direct.gaps), "direct"
    elif dual_h is not None:
        mapped = wei_dual_hierarchy(dual_h, n, k)
        report["dims"], report["gaps"], report["hierarchy_source"] = list(mapped.dims), list(mapped.gaps), "dual"
    else:
        report["dims"] = report["gaps"] = report["hierarchy_source"] = None
    report["dual_dims"] = list(dual_h.dims) if dual_h else None
    report["dual_gaps"] = list(dual_h.gaps) if dual_h else None
    if direct is not None and dual_h is not None:
        mapped = wei_dual_hierarchy(dual_h, n, k)
        report["wei_duality"] = "pass" if mapped.dims == direct.dims else "fail"
    else:
        report["wei_duality"] = "skipped"
    if d is not None and dual_h is not None:
        report["largest_gap_law"] = "pass" if d == (n + 1) - dual_h.gaps[-1] else "fail"
    else:
        report["largest_gap_law"] = "skipped"
    report["d"] = d
    report["mds"] = (d == n - k + 1) if d is not None else None
    report["skipped"] = sorted(skipped)
    if args.plot:
        if report["dims"] is not None:
            from .figures import save_hierarchy_figure

            save_hierarchy_figure(report["dims"], report["gaps"], n, args.plot)
            report["figure"] = args.plot
        else:
            report["figure"] = None
    _emit(report)
    if report["wei_duality"] == "fail" or report["largest_gap_law"] == "fail":
        return 1
    return 0


def _cmd_certify(args) -> int:
    code, profile, recipe = codefile.load_code(args.codefile)
    if profile is None:
        raise InvalidParams("code file has no locality block to certify")
    t_columns = None
    if recipe is not None and recipe.kind == "pyramid":
        t_cols = recipe.provenance.get("t_columns")
        if t_cols:
            t_columns = [c - 1 for c in t_cols]
    cert = certify_optimality(code, profile, args.budget, args.subspace_budget, t_columns)
    _emit({"format": FORMAT, **cert.to_dict()})
    return 0 if (cert.profile_valid and cert.sound) else 1


def _cmd_repair(args) -> int:
    code, profile, recipe = codefile.load_code(args.codefile)
    word = json.loads(args.word)
    if not isinstance(word, list) or len(word) != code.n:
        raise InvalidParams(f"--word must be a JSON array of length n={code.n}")
    if args.erased:
        for c in args.erased.split(","):
            word[int(c) - 1] = None
    doc = {"format": FORMAT}
    if args.target is not None:
        target = args.target - 1
        report = None
        if profile is not None:
            try:
                report = local_repair(code, profile, word, target)
            except (NoGroup, TooManyLocalErasures):
                report = None
        if report is None:
            try:
                full = global_decode(code, word)
                known = [i for i, v in enumerate(word) if v is not None]
                doc.update(target=args.target, method="global",
                           symbols_read=len(known),
                           read_positions=[i + 1 for i in known],
                           group_used=None, value=int(full[target]))
            except Unrecoverable as e:
                doc.update(target=args.target, method="failed", symbols_read=0,
                           read_positions=[], group_used=None, value=None,
                           reason=e.reason)
        else:
            doc.update(target=args.target, method=report.method,
                       symbols_read=report.symbols_read,
                       read_positions=[i + 1 for i in report.read_positions],
                       group_used=[i + 1 for i in report.group_used],
                       value=report.value)
    else:
        try:
            full = global_decode(code, word)
            known = [i for i, v in enumerate(word) if v is not None]
            doc.update(target=None, method="global", symbols_read=len(known),
                       read_positions=[i + 1 for i in known], group_used=None,
                       value=[int(v) for v in full])
        except Unrecoverable as e:
            doc.update(target=None, method="failed", symbols_read=0,
                       read_positions=[], group_used=None, value=None,
                       reason=e.reason)
    _emit(doc)
    return 0


def _cmd_simulate(args) -> int:
    code, profile, recipe = codefile.load_code(args.codefile)
    if profile is None:
        raise InvalidParams("code file has no locality block to simulate")
    if args.adversarial:
        model = FailureModel("adversarial")
    elif args.fail_prob:
        model = FailureModel("bernoulli", prob=_parse_fraction(args.fail_prob),
                             constrained_per_group=args.constrained_per_group)
    elif args.fail_count is not None:
        model = FailureModel("fixed", count=args.fail_count,
                             constrained_per_group=args.constrained_per_group)
    else:
        raise InvalidParams("need one of --fail-count, --fail-prob, --adversarial")
    scenario = Scenario(code=code, profile=profile, rounds=args.rounds,
                        failures=model, seed=args.seed, repair_policy=args.policy)
    report = run_scenario(scenario)
    doc = {"format": FORMAT, **report.to_dict()}
    if args.plot:
        from .figures import save_read_degree_histogram

        save_read_degree_histogram(report.read_degree_histogram, args.plot)
        doc["figure"] = args.plot
    _emit(doc)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lrctk",
                                description="finite-field locality coding toolkit")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap for parallelizable stages (random construction)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code and emit its code file")
    c.add_argument("--kind", required=True,
                   choices=["rs", "pyramid", "parity-split", "random", "concat"])
    c.add_argument("--q", type=int)
    c.add_argument("--modulus", help="extension modulus coefficients, e.g. 1,1,1")
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--delta", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--t", type=int)
    c.add_argument("--seed", type=int)
    c.add_argument("--attempts", type=int, default=64)
    c.add_argument("--inner")
    c.add_argument("--outer")
    c.add_argument("--out")
    c.set_defaults(func=_cmd_construct)

    b = sub.add_parser("bound", help="evaluate a closed-form distance bound")
    b.add_argument("--which", required=True,
                   choices=["gopalan", "locality", "concat", "concat-classical", "asymptotic"])
    b.add_argument("--n", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--r", type=int)
    b.add_argument("--delta", type=int)
    b.add_argument("--n1", type=int)
    b.add_argument("--k1", type=int)
    b.add_argument("--d1", type=int)
    b.add_argument("--n2", type=int)
    b.add_argument("--k2", type=int)
    b.add_argument("--d2", type=int)
    b.add_argument("--rate")
    b.add_argument("--rate1")
    b.set_defaults(func=_cmd_bound)

    a = sub.add_parser("analyze", help="distance, hierarchy, gaps and duality checks")
    a.add_argument("codefile")
    a.add_argument("--budget", type=int, default=DISTANCE_BUDGET)
    a.add_argument("--subspace-budget", type=int, default=SUBSPACE_BUDGET)
    a.add_argument("--plot", help="render the hierarchy figure to this file")
    a.set_defaults(func=_cmd_analyze)

    ce = sub.add_parser("certify", help="optimality certificate for a locality profile")
    ce.add_argument("codefile")
    ce.add_argument("--budget", type=int, default=DISTANCE_BUDGET)
    ce.add_argument("--subspace-budget", type=int, default=SUBSPACE_BUDGET)
    ce.set_defaults(func=_cmd_certify)

    r = sub.add_parser("repair", help="repair erased symbols of a word")
    r.add_argument("codefile")
    r.add_argument("--word", required=True, help="JSON array, null for erased")
    r.add_argument("--erased", help="extra 1-based coordinates to erase, e.g. 1,5,9")
    r.add_argument("--target", type=int, help="1-based coordinate to repair")
    r.set_defaults(func=_cmd_repair)

    s = sub.add_parser("simulate", help="failure-injection simulation")
    s.add_argument("codefile")
    s.add_argument("--rounds", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--fail-count", type=int)
    s.add_argument("--fail-prob", help="exact rational per-node probability, e.g. 1/10")
    s.add_argument("--adversarial", action="store_true")
    s.add_argument("--constrained-per-group", action="store_true")
    s.add_argument("--policy", default="local-first", choices=["local-first", "global-only"])
    s.add_argument("--plot", help="render the read-degree histogram to this file")
    s.set_defaults(func=_cmd_simulate)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        _emit({"format": FORMAT, "error": "budget-exceeded", "message": str(e)})
        return 2
    except LrcError as e:
        _emit({"format": FORMAT, "error": type(e).__name__, "message": str(e)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
