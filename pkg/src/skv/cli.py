"""Command-line interface: assemble theta elements, run verdict suites,
emit generator sets, and validate fixtures.

Exit codes: 0 all verified, 1 any falsified, 2 inconclusive-only failures,
3 usage or fixture error.  Reports use the "skvreport/1" schema and are
byte-identical across runs with the same seed (timings are only included
on request since they are not deterministic).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from .arithdata import ExtensionFixture, PlaceSets
from .cyclotomic import fraction_from_str
from .engine import sku_prime_generators, theta_abelian, theta_monomial
from .errors import FixtureError, SkvError
from .grouprings import GroupRingElement
from .rednorm import fitting_of_presentation
from .verify import (Verdict, check_brumer, check_brumer_stark_necessary,
                     check_negative_r, check_theorem_sku_maxord,
                     check_theorem_stickelberger_int, default_sets,
                     exceptional_prime_screening, run_all)

SUITES = ("stickelberger", "sku", "brumer", "brumer-stark", "negative-r", "all")


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _split(arg: str | None) -> list[str]:
    if not arg:
        return []
    return [part.strip() for part in arg.split(",") if part.strip()]


def _default_s(fix: ExtensionFixture) -> list[str]:
    return sorted(set(fix.ramified_labels()) | set(fix.infinite_labels()))


def _report(fix_path: str, fix: ExtensionFixture, seed: int, verdicts,
            timings) -> dict:
    return {
        "schema": "skvreport/1",
        "fixture": fix.name,
        "fixtureDigest": _digest(fix_path),
        "seed": seed,
        "verdicts": [v.to_json() for v in verdicts],
        "screening": exceptional_prime_screening(fix),
        "timings": timings,
    }


def _render_text(report: dict) -> str:
    lines = [f"fixture {report['fixture']} ({report['fixtureDigest'][:12]}) "
             f"seed={report['seed']}"]
    for v in report["verdicts"]:
        lines.append(f"  {v['checkId']}: {v['status']}")
        for note in v["notes"]:
            lines.append(f"    note: {note}")
        for w in v["witnesses"]:
            lines.append(f"    witness: {json.dumps(w, sort_keys=True)}")
    for entry in report["screening"]["screened"]:
        tag = "exceptional" if entry["exceptional"] else "ordinary"
        lines.append(f"  prime {entry['p']}: {tag}")
        for flag in entry["flags"]:
            lines.append(f"    {flag}")
    if report["timings"]:
        for k, t in sorted(report["timings"].items()):
            lines.append(f"  timing {k}: {t:.3f}s")
    return "\n".join(lines) + "\n"


def _emit(payload: dict, fmt: str, out: str | None, text: str | None = None):
    if fmt == "text":
        rendered = text if text is not None else \
            json.dumps(payload, indent=1, sort_keys=True) + "\n"
    else:
        rendered = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)


def _exit_code(verdicts) -> int:
    statuses = {v.status for v in verdicts}
    if "falsified" in statuses:
        return 1
    if "inconclusive" in statuses:
        return 2
    return 0


def _theta_for(fix: ExtensionFixture, sets: PlaceSets):
    if fix.group.is_abelian() and fix.cyclotomic is not None:
        return theta_abelian(fix, sets)
    return theta_monomial(fix, sets)


def cmd_theta(args, fix: ExtensionFixture) -> int:
    S = _split(args.S) or _default_s(fix)
    sets = PlaceSets(S, _split(args.T), args.r)
    th = _theta_for(fix, sets)
    payload = th.to_json()
    text = None
    if args.format == "text":
        lines = [f"theta S={','.join(th.S)} T={','.join(th.T)} r={th.r}"]
        if "coefficients" in payload:
            for lab, c in sorted(payload["coefficients"].items()):
                lines.append(f"  {lab}: {c}")
        else:
            for i, comp in enumerate(payload["components"]):
                lines.append(f"  chi_{i}: {json.dumps(comp, sort_keys=True)}")
        text = "\n".join(lines) + "\n"
    _emit(payload, args.format, args.out, text)
    return 0


def cmd_check(args, fix: ExtensionFixture, fix_path: str) -> int:
    S = _split(args.S) or _default_s(fix)
    verdicts: list[Verdict] = []
    timings: dict[str, float] = {}

    def timed(name, thunk):
        t0 = time.perf_counter()
        verdicts.append(thunk())
        timings[name] = time.perf_counter() - t0

    if args.suite == "all":
        t0 = time.perf_counter()
        verdicts.extend(run_all(fix, bound=args.bound, r_neg=args.r
                                if args.r is not None and args.r < 0 else -1))
        timings["all"] = time.perf_counter() - t0
    elif args.suite == "stickelberger":
        r = args.r if args.r is not None else 0
        if args.T is not None:
            sets = PlaceSets(S, _split(args.T), r, args.p)
        else:
            sets = default_sets(fix, args.bound)
        if sets is None:
            verdicts.append(Verdict("theorem-stickelberger-int", "inconclusive",
                                    notes=["no admissible T in the fixture "
                                           f"pool (bound {args.bound})"]))
        else:
            timed("stickelberger",
                  lambda: check_theorem_stickelberger_int(fix, sets))
    elif args.suite == "sku":
        timed("sku", lambda: check_theorem_sku_maxord(fix, S, args.bound))
    elif args.suite == "brumer":
        timed("brumer", lambda: check_brumer(fix, S, args.bound))
    elif args.suite == "brumer-stark":
        timed("brumer-stark", lambda: check_brumer_stark_necessary(fix, S))
    elif args.suite == "negative-r":
        r = args.r if args.r is not None else -1
        timed("negative-r", lambda: check_negative_r(fix, S, r))
    report = _report(fix_path, fix, args.seed, verdicts,
                     timings if args.timings else None)
    _emit(report, args.format, args.out, _render_text(report))
    return _exit_code(verdicts)


def cmd_sku(args, fix: ExtensionFixture) -> int:
    S = _split(args.S) or _default_s(fix)
    gens = sku_prime_generators(fix, S, args.bound)
    payload = {
        "schema": "skvgens/1",
        "S": sorted(S),
        "truncated": gens.truncated,
        "notes": gens.notes,
        "generators": [
            {"tag": tag, "components": [c.to_json() for c in g.components]}
            for tag, g in gens.generators
        ],
    }
    text = None
    if args.format == "text":
        lines = [f"sku generators over S={','.join(sorted(S))} "
                 f"({len(gens.generators)} elements, truncated)"]
        lines.extend(f"  {tag}" for tag, _ in gens.generators)
        lines.extend(f"  note: {n}" for n in gens.notes)
        text = "\n".join(lines) + "\n"
    _emit(payload, args.format, args.out, text)
    return 0


def cmd_fitting(args, fix: ExtensionFixture) -> int:
    with open(args.matrix) as fh:
        data = json.load(fh)
    if "rows" not in data:
        raise FixtureError("presentation file needs a 'rows' field")
    group = fix.group
    h = [
        [GroupRingElement(group, {int(g): fraction_from_str(str(c))
                                  for g, c in entry.items()})
         for entry in row]
        for row in data["rows"]
    ]
    fitt = fitting_of_presentation(h, fix.table)
    payload = {
        "schema": "skvfitt/1",
        "quadratic": fitt.quadratic,
        "zero": fitt.zero,
        "equivalence": fitt.equivalence_tag,
        "generators": [[c.to_json() for c in g.components]
                       for g in fitt.generators],
    }
    _emit(payload, args.format, args.out)
    return 0


def cmd_fixtures_validate(args, fix: ExtensionFixture) -> int:
    payload = {
        "schema": "skvfix/1",
        "name": fix.name,
        "ok": True,
        "places": [p.label for p in fix.places],
        "classGroups": len(fix.class_groups),
        "thetaSources": len(fix.subextension_thetas),
    }
    _emit(payload, args.format, args.out,
          f"fixture {fix.name}: valid\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skv",
        description="Exact Stickelberger elements and integrality verdicts.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_fixture=True):
        p.add_argument("--fixture", required=need_fixture,
                       help="path to a skvfix/1 JSON fixture")
        p.add_argument("--out", default=None, help="write output to a file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--bound", type=int, default=2,
                       help="truncation budget for searched sets")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized suites")
        p.add_argument("--timings", action="store_true",
                       help="include (non-deterministic) timings in reports")

    p_theta = sub.add_parser("theta", help="assemble and print theta_S^T(r)")
    common(p_theta)
    p_theta.add_argument("--r", type=int, default=0)
    p_theta.add_argument("--S", default=None, help="comma-separated labels")
    p_theta.add_argument("--T", default=None, help="comma-separated labels")

    p_check = sub.add_parser("check", help="run a verdict suite")
    common(p_check)
    p_check.add_argument("suite", choices=SUITES)
    p_check.add_argument("--r", type=int, default=None)
    p_check.add_argument("--S", default=None)
    p_check.add_argument("--T", default=None)
    p_check.add_argument("--p", type=int, default=None,
                         help="p-local membership variant")

    p_sku = sub.add_parser("sku", help="emit the truncated generator set")
    common(p_sku)
    p_sku.add_argument("--S", default=None)

    p_fit = sub.add_parser("fitting",
                           help="Fitting generators of a presentation matrix")
    common(p_fit)
    p_fit.add_argument("--matrix", required=True,
                       help="JSON file with a 'rows' presentation matrix")

    p_fx = sub.add_parser("fixtures", help="fixture tools")
    fx_sub = p_fx.add_subparsers(dest="fixtures_command", required=True)
    p_val = fx_sub.add_parser("validate", help="validate a fixture file")
    common(p_val)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 3 if exc.code not in (0, None) else 0
    try:
        fix = ExtensionFixture.load(args.fixture)
    except FileNotFoundError:
        sys.stderr.write(f"error: fixture file not found: {args.fixture}\n")
        return 3
    except (FixtureError, json.JSONDecodeError, KeyError, TypeError,
            ValueError) as exc:
        sys.stderr.write(f"error: malformed fixture {args.fixture}: {exc}\n")
        return 3
    try:
        if args.command == "theta":
            return cmd_theta(args, fix)
        if args.command == "check":
            return cmd_check(args, fix, args.fixture)
        if args.command == "sku":
            return cmd_sku(args, fix)
        if args.command == "fitting":
            return cmd_fitting(args, fix)
        if args.command == "fixtures":
            return cmd_fixtures_validate(args, fix)
    except FixtureError as exc:
        sys.stderr.write(f"error: fixture: {exc}\n")
        return 3
    except SkvError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    return 3


if __name__ == "__main__":
    sys.exit(main())
