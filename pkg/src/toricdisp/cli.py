"""Command-line front end.

Exit status: 0 on success, 2 for bad input, 3 when two independent
computations disagree (or a certificate fails re-verification).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import mirror
from .certifier import DEFAULT_SEED, DEFAULT_SUPPORT_CAP
from .classify import Settings, classify, region, sweep
from .errors import ConsistencyViolation, InputError, NotEmbedded, SynthesisFailed, ToricError
from .linalg import fmt
from .probes import DEFAULT_SEARCH_BOUND, probe_displaces
from .scenarios import SCENARIOS, get, resolve
from .svg import render_svg

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 2, 3


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def parse_point(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_fraction(t) for t in text.split(","))


def parse_candidates(text: str) -> tuple[tuple[int, ...], ...]:
    """``"-1,0;-2,-1"``; the empty string means no candidates."""
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        try:
            out.append(tuple(int(t) for t in chunk.split(",")))
        except ValueError as exc:
            raise InputError(f"candidate directions are integer vectors: {chunk!r}") from exc
    return tuple(out)


def _settings(args) -> Settings:
    cands = None if args.candidates is None else parse_candidates(args.candidates)
    return Settings(support_cap=args.support_cap, seed=args.seed, search_bound=args.search_bound,
                    norm_bound=args.norm_bound, candidates=cands)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _point_for(scenario, args):
    point = parse_point(args.point)
    if len(point) != scenario.dim:
        raise InputError(f"point has dimension {len(point)}, expected {scenario.dim}")
    return point


def cmd_classify(args) -> int:
    s = resolve(args.scenario)
    v = classify(s, _point_for(s, args), _settings(args), cross_check=args.cross_check)
    lines = [f"{s.name} at ({', '.join(fmt(x) for x in v.point)}): {v.kind}"]
    ev = v.evidence
    if v.kind == "NonDisplaceable":
        lines.append("  valuations: " + ", ".join(fmt(x) for x in ev.valuations))
        lines.append("  witness:    " + ", ".join(str(z) for z in ev.witness))
    elif v.kind == "Displaceable":
        lines.append(f"  probe from facet {ev.facet} in direction {ev.direction}, "
                     f"entry ({', '.join(fmt(x) for x in ev.entry)}), t = {fmt(ev.t)}, "
                     f"length = {'inf' if ev.length is None else fmt(ev.length)}")
    else:
        lines.append(f"  {ev.reason}")
    _emit(args, v.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_probe(args) -> int:
    s = resolve(args.scenario)
    res = probe_displaces(s.model, _point_for(s, args), args.search_bound)
    if res:
        text = (f"displaced by the probe from facet {res.facet} in direction {res.direction} "
                f"(t = {fmt(res.t)}, length = {'inf' if res.length is None else fmt(res.length)})")
    else:
        text = f"no probe found with search bound {args.search_bound}"
    _emit(args, res.to_json(), text)
    return EXIT_OK


def cmd_region(args) -> int:
    s = resolve(args.scenario)
    r = region(s, _settings(args))
    text = f"{s.name}\n  nd: {r.nd.render()}\n  d:  {r.d.render()}"
    _emit(args, dict(r.to_json(), scenario=s.name), text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    s = resolve(args.scenario)
    rep = sweep(s, parse_fraction(args.step), _settings(args))
    c = rep["counts"]
    text = (f"{s.name} step {rep['step']}: " + ", ".join(f"{k} {n}" for k, n in c.items())
            + "\n  nd points: " + " ".join("(" + ",".join(p) + ")" for p in rep["non_displaceable_points"]))
    _emit(args, rep, text)
    return EXIT_OK


def _mirror_report(pair: str) -> dict:
    if pair in mirror.CHECKS or pair == "all":
        return mirror.check_functoriality(pair)
    if "*" in pair:
        a, b = (get(x) for x in pair.split("*", 1))
        results = [mirror.check_product(a.data, a.candidates, b.data, b.candidates)]
    elif ">" in pair:
        a, b = (get(x) for x in pair.split(">", 1))
        results = [mirror.check_restriction(a.data, a.candidates, b.data, b.candidates)]
    else:
        raise InputError(f"unknown check {pair!r}; use one of {', '.join(mirror.CHECKS)}, all, "
                         "A*B (product) or A>B (restriction)")
    return {"checks": results, "passed": all(r["passed"] for r in results)}


def cmd_mirror(args) -> int:
    rep = _mirror_report(args.pair)
    lines = []
    for r in rep["checks"]:
        status = {True: "pass", False: "FAIL", None: "info"}[r["passed"]]
        detail = f" ({r['points_checked']} grid points)" if "points_checked" in r else ""
        lines.append(f"{status}  {r['name']}{detail}")
        for w in r.get("witnesses", []):
            lines.append(f"      counterexample at ({', '.join(w)})")
    _emit(args, rep, "\n".join(lines))
    return EXIT_OK if rep["passed"] else EXIT_CONSISTENCY


def cmd_render(args) -> int:
    s = resolve(args.scenario)
    r = region(s, _settings(args))
    svg = render_svg(s.model, r.nd, r.d, s.view_box(), s.name)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    _emit(args, {"scenario": s.name, "out": args.out}, f"wrote {args.out}")
    return EXIT_OK


def cmd_scenarios(args) -> int:
    rows = [s.to_json() for s in SCENARIOS.values()]
    text = "\n".join(f"{s.name:<12} dim {s.dim}  {s.description}" for s in SCENARIOS.values())
    _emit(args, {"scenarios": rows}, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--support-cap", type=int, default=DEFAULT_SUPPORT_CAP,
                        help="largest number of spurious terms per support")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="witness synthesis seed")
    common.add_argument("--search-bound", type=int, default=DEFAULT_SEARCH_BOUND,
                        help="sup-norm bound on probe directions")
    common.add_argument("--norm-bound", type=int, default=None,
                        help="use every admissible direction of this sup-norm instead of the defaults")
    common.add_argument("--candidates", default=None,
                        help='spurious directions, e.g. "-1,0;-2,-1" ("" for none)')

    p = argparse.ArgumentParser(prog="toricdisp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="verdict for one moment point")
    c.add_argument("scenario")
    c.add_argument("--point", required=True)
    c.add_argument("--cross-check", action="store_true", help="also run probes on certified points")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("probe", parents=[common], help="search for a displacing probe")
    c.add_argument("scenario")
    c.add_argument("--point", required=True)
    c.set_defaults(func=cmd_probe)

    c = sub.add_parser("region", parents=[common], help="exact certified and probe regions")
    c.add_argument("scenario")
    c.set_defaults(func=cmd_region)

    c = sub.add_parser("sweep", parents=[common], help="grid consistency sweep")
    c.add_argument("scenario")
    c.add_argument("--step", required=True)
    c.set_defaults(func=cmd_sweep)

    m = sub.add_parser("mirror", help="functoriality checks")
    msub = m.add_subparsers(dest="action", required=True)
    c = msub.add_parser("check", parents=[common])
    c.add_argument("pair", help=f"one of {', '.join(mirror.CHECKS)}, all, A*B, A>B")
    c.set_defaults(func=cmd_mirror)

    c = sub.add_parser("render", parents=[common], help="SVG region diagram")
    c.add_argument("scenario")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_render)

    s = sub.add_parser("scenarios", help="built-in scenario library")
    ssub = s.add_subparsers(dest="action", required=True)
    c = ssub.add_parser("list", parents=[common])
    c.set_defaults(func=cmd_scenarios)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyViolation as exc:
        print(f"consistency violation: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except SynthesisFailed as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except NotEmbedded as exc:
        where = "" if exc.witness is None else f" (witness {[fmt(x) for x in exc.witness]})"
        print(f"error: {exc}{where}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ToricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
