"""Command-line front end: normal forms, circuit reports, link checks, fuzzing.

Exit status is 0 on success, 1 when any verified property is violated,
and 2 on malformed input.  JSON output is canonical (sorted keys, no
timing data), so a fixed seed yields byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import checks
from .amalgam import from_steps, parse_sided_word, sided_word_str, spell
from .circuits import (
    CircuitError,
    area_per_strip,
    check_isoperimetric,
    circuit_from_record,
)
from .hnn import (
    BallRadiusError,
    cayley_ball,
    is_parallel,
    normalize,
    pi,
)
from .links import (
    DEFAULT_SEAM,
    LinkDataError,
    Y_TRIANGLES,
    build_glued_link,
    build_y_link,
    complex_from_record,
    shortest_injective_loop,
    subdivision_vertex_report,
)
from .words import parse_word


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _print_check_results(results, as_json: bool, show_time: Optional[float] = None) -> int:
    if as_json:
        payload = {
            "checks": [c.to_record() for c in results],
            "ok": all(c.ok for c in results),
        }
        sys.stdout.write(_dump(payload))
    else:
        for c in results:
            status = "PASS" if c.ok else "FAIL"
            print(f"{status} {c.name}: cases={c.cases} violations={c.violations} [{c.tag}]")
            for w in c.witnesses:
                print(f"     witness: {json.dumps(w, sort_keys=True)}")
        if show_time is not None:
            print(f"elapsed: {show_time:.2f}s")
    return 0 if all(c.ok for c in results) else 1


def cmd_normalize(args) -> int:
    nf = normalize(parse_word(args.word))
    if args.json:
        sys.stdout.write(_dump(nf.to_record()))
    else:
        print(nf)
    return 0


def cmd_gnormalize(args) -> int:
    g = from_steps(parse_sided_word(args.word))
    if args.json:
        sys.stdout.write(_dump(g.to_record()))
    else:
        print(sided_word_str(spell(g)) or "1")
    return 0


def cmd_pi(args) -> int:
    print(pi(normalize(parse_word(args.word))))
    return 0


def cmd_parallel(args) -> int:
    u = normalize(parse_word(args.u))
    v = normalize(parse_word(args.v))
    result = is_parallel(u, v)
    print("true" if result else "false")
    return 0


def cmd_ball(args) -> int:
    try:
        ball = cayley_ball(args.radius, max_radius=args.max_radius)
    except BallRadiusError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    counts: dict = {}
    for _, d in ball.items():
        counts[d] = counts.get(d, 0) + 1
    payload = {
        "radius": args.radius,
        "total": len(ball),
        "counts": {str(d): counts[d] for d in sorted(counts)},
    }
    if args.elements:
        payload["elements"] = sorted(
            (str(h) or "1", d) for h, d in ball.items()
        )
    if args.json:
        sys.stdout.write(_dump(payload))
    else:
        print(f"|ball({args.radius})| = {len(ball)}")
        for d in sorted(counts):
            print(f"  distance {d}: {counts[d]}")
    return 0


def _load_circuit(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return circuit_from_record(json.load(fh))


def cmd_area(args) -> int:
    try:
        circuit = _load_circuit(args.file)
        report = check_isoperimetric(circuit)
        per = area_per_strip(circuit)
    except (CircuitError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {args.file}: {e}", file=sys.stderr)
        return 2
    payload = {
        "area": report.area,
        "len": report.length,
        "ok": report.ok,
        "per_strip": {str(k): v for k, v in sorted(per.items(), key=lambda kv: str(kv[0]))},
    }
    if args.json:
        sys.stdout.write(_dump(payload))
    else:
        print(f"area={report.area} len={report.length} ok={report.ok}")
        for k, v in payload["per_strip"].items():
            print(f"  {k}: {v}")
    return 0 if report.ok else 1


def cmd_check_iso(args) -> int:
    results = checks.run_area_suite(
        args.seed, args.cases, args.max_len, rect_max=32, witness_limit=args.witness_limit
    )
    return _print_check_results(results, args.json)


def cmd_check_area_lemmas(args) -> int:
    results = [
        checks.check_area_definition(args.witness_limit),
        checks.check_area_rebase(
            args.seed, args.cases, args.rebasings, args.max_len, args.witness_limit
        ),
        *checks.run_area_suite(
            args.seed, args.cases, args.max_len, rect_max=32, witness_limit=args.witness_limit
        ),
    ]
    return _print_check_results(results, args.json)


def cmd_check_coloring(args) -> int:
    results = [
        checks.check_tree_coloring(
            args.seed, args.cases, args.radius, witness_limit=args.witness_limit
        )
    ]
    return _print_check_results(results, args.json)


def cmd_check_links(args) -> int:
    if args.file:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                link = complex_from_record(json.load(fh))
        except (LinkDataError, ValueError, OSError, KeyError) as e:
            print(f"error: {args.file}: {e}", file=sys.stderr)
            return 2
        extra = None
    elif args.builtin == "y":
        link = build_y_link()
        extra = subdivision_vertex_report(Y_TRIANGLES)
    else:
        link = build_glued_link(args.seam_total, args.seam_segments)
        extra = subdivision_vertex_report(Y_TRIANGLES, cylinder_over="b")
    report = shortest_injective_loop(link)
    payload = report.to_record()
    if extra is not None:
        payload["subdivision"] = extra
    if args.json:
        sys.stdout.write(_dump(payload))
    else:
        print(f"girth_units={payload['girth_units']} ok={payload['ok']}")
        if payload["witness"]:
            print("  witness:", " - ".join(payload["witness"]))
    return 0 if report.ok else 1


def cmd_verify_all(args) -> int:
    config = checks.RunConfig(
        seed=args.seed, scale=args.scale, witness_limit=args.witness_limit
    )
    started = time.monotonic()
    report = checks.verify_all(config)
    elapsed = time.monotonic() - started
    if args.json:
        sys.stdout.write(_dump(report.to_record()))
        return 0 if report.ok else 1
    return _print_check_results(report.checks, False, show_time=elapsed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupbench",
        description=__doc__.splitlines()[0],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seeded=True):
        p.add_argument("--json", action="store_true", help="canonical JSON output")
        if seeded:
            p.add_argument("--seed", type=int, default=1)
            p.add_argument("--witness-limit", type=int, default=5)

    p = sub.add_parser("normalize", help="normal form of a word over a,b,t")
    p.add_argument("word")
    common(p, seeded=False)
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("gnormalize", help="normal form of a sided word, e.g. '0:taT 1:b'")
    p.add_argument("word")
    common(p, seeded=False)
    p.set_defaults(fn=cmd_gnormalize)

    p = sub.add_parser("pi", help="retraction of a word onto the b-exponent")
    p.add_argument("word")
    p.set_defaults(fn=cmd_pi)

    p = sub.add_parser("parallel", help="whether two cosets u<b>, v<b> are parallel")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(fn=cmd_parallel)

    p = sub.add_parser("ball", help="Cayley ball census by breadth-first search")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--max-radius", type=int, default=8)
    p.add_argument("--elements", action="store_true")
    common(p, seeded=False)
    p.set_defaults(fn=cmd_ball)

    p = sub.add_parser("area", help="area/length report for a circuit file")
    p.add_argument("file")
    common(p, seeded=False)
    p.set_defaults(fn=cmd_area)

    p = sub.add_parser("check-iso", help="fuzz the isoperimetric inequality")
    common(p)
    p.add_argument("--cases", type=int, default=300)
    p.add_argument("--max-len", type=int, default=120)
    p.set_defaults(fn=cmd_check_iso)

    p = sub.add_parser("check-area-lemmas", help="fuzz rebase, class bounds, chains")
    common(p)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--max-len", type=int, default=120)
    p.add_argument("--rebasings", type=int, default=15)
    p.set_defaults(fn=cmd_check_area_lemmas)

    p = sub.add_parser("check-coloring", help="verify tree colorings on samples")
    common(p)
    p.add_argument("--cases", type=int, default=3)
    p.add_argument("--radius", type=int, default=3)
    p.set_defaults(fn=cmd_check_coloring)

    p = sub.add_parser("check-links", help="link condition for a complex")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--builtin", choices=("y", "g"), default="y")
    p.add_argument("--seam-total", type=int, default=DEFAULT_SEAM[0])
    p.add_argument("--seam-segments", type=int, default=DEFAULT_SEAM[1])
    common(p, seeded=False)
    p.set_defaults(fn=cmd_check_links)

    p = sub.add_parser("verify-all", help="run every check and report")
    common(p)
    p.add_argument("--scale", choices=tuple(checks.SCALES), default="quick")
    p.set_defaults(fn=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
