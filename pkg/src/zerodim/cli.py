"""Command line workbench: list, analyze, verify, gallery.

``list`` enumerates systems, analyzers, and consistency checks;
``analyze`` runs one analyzer on one system and prints its verdict;
``verify`` runs a consistency config and reports per-check outcomes;
``gallery`` prints a guided tour across the bundled systems.

Exit codes: 0 when a definite result was computed (CONSISTENT for
verify), 2 when the result is inconclusive, 3 when verify found a
violation, 64 for usage errors, 66 for a missing input file, 1 for
any other workbench error.  Output is deterministic; wall-clock
timings appear only with ``--timings``.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from typing import Optional, Sequence

from .analysis import (ap_verdict, confinement_verdict, depth_ball,
                       equicontinuity_verdict, orbit_symmetry_verdict,
                       pair_type1_verdict, pointwise_period_verdict,
                       proximal_verdict, regional_proximal_check,
                       regular_ap_verdict, standard_rp_witness,
                       translate_cover_verdict, type1_verdict, type2_verdict,
                       uniform_recurrence_verdict, usc_verdict,
                       weak_rigidity_verdict)
from .config import default_config, load_config, validate_config
from .errors import DomainError, UsageError, WorkbenchError
from .flows import available_systems, get_system
from .harness import available_checks, run_config

EXIT_OK = 0
EXIT_GENERIC = 1
EXIT_INCONCLUSIVE = 2
EXIT_VIOLATION = 3
EXIT_USAGE = 64
EXIT_NOINPUT = 66


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _default_point(system) -> str:
    names = sorted(system.point_names())
    if not names:
        raise DomainError("system %r has no named points" % system.system_id)
    return "zero" if "zero" in names else names[0]


def _points(system, ns, count: Optional[int] = None) -> list:
    names = list(ns.point or [])
    if count is not None and names and len(names) != count:
        raise UsageError("analyzer %r needs exactly %d --point arguments"
                         % (ns.analyzer, count))
    if not names:
        if count is not None and count > 1:
            raise UsageError("analyzer %r needs %d --point arguments"
                             % (ns.analyzer, count))
        names = [_default_point(system)]
    return [system.point(n) for n in names]


def _need_cells(system) -> None:
    if system.scheme is None:
        raise DomainError("analyzer needs a symbol-space system, %r is not "
                          "one" % system.system_id)


def _run_ap(system, ns):
    return ap_verdict(system, _points(system, ns, 1)[0],
                      horizon=ns.horizon, depth=ns.depth)


def _run_regular(system, ns):
    return regular_ap_verdict(system, _points(system, ns, 1)[0],
                              horizon=ns.horizon, depth=ns.depth)


def _run_period(system, ns):
    return pointwise_period_verdict(system, _points(system, ns, 1)[0],
                                    period_max=ns.period_max)


def _run_type1(system, ns):
    return type1_verdict(system, _points(system, ns, 1)[0],
                         horizon=ns.horizon, depth=ns.depth)


def _run_pair(system, ns):
    x, y = _points(system, ns, 2)
    return pair_type1_verdict(system, x, y, horizon=ns.horizon,
                              depth=ns.depth)


def _run_type2(system, ns):
    return type2_verdict(system, _points(system, ns, 1)[0],
                         horizon=ns.horizon, depth=ns.depth)


def _run_rigidity(system, ns):
    names = list(ns.point or sorted(system.point_names()))
    pts = [system.point(n) for n in names]
    return weak_rigidity_verdict(system, pts, horizon=ns.horizon,
                                 depth=ns.depth)


def _run_confinement(system, ns):
    _need_cells(system)
    x = _points(system, ns, 1)[0]
    return confinement_verdict(system, x, depth_ball(x, ns.depth),
                               horizon=ns.horizon)


def _run_usc(system, ns):
    ndm = ns.neighbor_depth_max or ns.depth + 2
    return usc_verdict(system, _points(system, ns, 1)[0],
                       horizon=ns.horizon, depth=ns.depth,
                       neighbor_depth_max=ndm)


def _run_symmetry(system, ns):
    names = list(ns.point or [])
    if names:
        if len(names) != 2:
            raise UsageError("orbit-symmetry takes exactly two --point "
                             "arguments, or none for all named pairs")
        pairs = [(system.point(names[0]), system.point(names[1]))]
    else:
        pairs = [(system.point(a), system.point(b)) for a, b in
                 itertools.permutations(sorted(system.point_names()), 2)]
    return orbit_symmetry_verdict(system, pairs, horizon=ns.horizon,
                                  depth=ns.depth)


def _run_equicontinuity(system, ns):
    return equicontinuity_verdict(system, horizon=ns.horizon, depth=ns.depth)


def _run_uniform_recurrence(system, ns):
    return uniform_recurrence_verdict(system, word_length=ns.word_length,
                                      window_max=ns.window_max)


def _run_proximal(system, ns):
    x, y = _points(system, ns, 2)
    return proximal_verdict(system, x, y, horizon=ns.horizon, depth=ns.depth)


def _run_regional(system, ns):
    witness = standard_rp_witness(system, ns.depth)
    return regional_proximal_check(system, witness, depth=ns.depth)


def _run_cover(system, ns):
    return translate_cover_verdict(system, _points(system, ns, 1)[0],
                                   horizon=ns.horizon, depth=ns.depth,
                                   cover_cap=ns.cover_cap)


ANALYZERS: dict = {
    "almost-periodic": _run_ap,
    "regular-return": _run_regular,
    "pointwise-period": _run_period,
    "two-sided-recurrence": _run_type1,
    "pair-recurrence": _run_pair,
    "cone-subnet-recurrence": _run_type2,
    "weak-rigidity": _run_rigidity,
    "orbit-confinement": _run_confinement,
    "orbit-upper-semicontinuity": _run_usc,
    "orbit-symmetry": _run_symmetry,
    "equicontinuity": _run_equicontinuity,
    "uniform-recurrence": _run_uniform_recurrence,
    "proximal-pair": _run_proximal,
    "regional-proximal": _run_regional,
    "translate-cover": _run_cover,
}


def available_analyzers() -> tuple:
    return tuple(sorted(ANALYZERS))


# ---------------------------------------------------------------------------
# gallery


def _gallery_sections(seed: int) -> list:
    rng = random.Random(seed)
    sections = []

    def add(system_id: str, *lines):
        system = get_system(system_id)
        sections.append({"system": system_id,
                         "title": system.describe(),
                         "lines": [str(l) for l in lines]})
        return system

    s = get_system("full-shift")
    n = rng.randint(2, 6)
    step = s.point("step")
    add("full-shift",
        s.summary,
        "shifting the step point by %d gives %s"
        % (n, s.format_point(s.act(n, step))),
        ap_verdict(s, step, horizon=8, depth=2).render(),
        uniform_recurrence_verdict(s, word_length=1, window_max=6).render())

    s = get_system("thue-morse")
    add("thue-morse",
        s.summary,
        "words of length 3: %s" % sorted(s.language(3)),
        ap_verdict(s, s.point("reflection"), horizon=16, depth=2).render(),
        uniform_recurrence_verdict(s, word_length=1, window_max=6).render(),
        pair_type1_verdict(s, s.point("reflection"),
                           s.point("reflection-flipped"), horizon=16,
                           depth=2).render())

    s = get_system("odometer")
    add("odometer",
        s.summary,
        regular_ap_verdict(s, s.point("zero"), horizon=8, depth=2).render(),
        translate_cover_verdict(s, s.point("zero"), horizon=8, depth=2,
                                cover_cap=8).render(),
        equicontinuity_verdict(s, horizon=8, depth=2).render())

    s = get_system("successor-map")
    add("successor-map",
        s.summary,
        *[("period of %s: %s" % (name,
           pointwise_period_verdict(s, pt, period_max=8)
           .certificate.get("period")))
          for name, pt in [("zero", s.point("zero")),
                           ("unit", s.point("unit")),
                           ("unit-at(4)", s.family("unit-at", 4))]])

    for sid in ("two-copy", "mcmahon"):
        s = get_system(sid)
        w = standard_rp_witness(s, 3)
        add(sid,
            s.summary,
            proximal_verdict(s, w.x, w.y, horizon=2, depth=2).render(),
            regional_proximal_check(s, w, depth=3).render())

    s = get_system("circle-stack")
    add("circle-stack",
        s.summary,
        equicontinuity_verdict(s, horizon=8, depth=2).render(),
        usc_verdict(s, s.point("limit"), horizon=8, depth=3,
                    neighbor_depth_max=4).render())

    s = get_system("circle-stack-components")
    add("circle-stack-components",
        s.summary,
        equicontinuity_verdict(s, horizon=8, depth=2).render())

    return sections


# ---------------------------------------------------------------------------
# command implementations


def _emit(text: str, out: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _cmd_list(ns) -> int:
    systems = []
    for sid in available_systems():
        system = get_system(sid)
        systems.append({"id": sid, "kind": system.kind,
                        "summary": system.summary,
                        "points": sorted(system.point_names()),
                        "families": sorted(system.family_names())})
    if ns.json:
        _emit(_to_json({"systems": systems,
                        "analyzers": list(available_analyzers()),
                        "checks": list(available_checks())}), ns.out)
        return EXIT_OK
    lines = ["systems:"]
    for s in systems:
        lines.append("  %-25s %s" % (s["id"], s["summary"]))
        extras = []
        if s["points"]:
            extras.append("points: " + ", ".join(s["points"]))
        if s["families"]:
            extras.append("families: " + ", ".join(s["families"]))
        if extras:
            lines.append("  %-25s %s" % ("", "; ".join(extras)))
    lines.append("analyzers:")
    for a in available_analyzers():
        lines.append("  " + a)
    lines.append("checks:")
    for c in available_checks():
        lines.append("  " + c)
    _emit("\n".join(lines), ns.out)
    return EXIT_OK


def _cmd_analyze(ns) -> int:
    system = get_system(ns.system)
    if ns.analyzer not in ANALYZERS:
        raise UsageError("unknown analyzer %r (have: %s)"
                         % (ns.analyzer, ", ".join(available_analyzers())))
    verdict = ANALYZERS[ns.analyzer](system, ns)
    if ns.json:
        _emit(_to_json(verdict.to_json()), ns.out)
    else:
        _emit(verdict.render(), ns.out)
    return EXIT_INCONCLUSIVE if verdict.inconclusive else EXIT_OK


def _cmd_verify(ns) -> int:
    if ns.config:
        config = load_config(ns.config)
    else:
        config = validate_config(default_config())
    start = time.time()
    run = run_config(config)
    elapsed = time.time() - start
    if ns.json:
        payload = run.to_json()
        if ns.timings:
            payload["elapsed_seconds"] = round(elapsed, 3)
        _emit(_to_json(payload), ns.out)
    else:
        text = run.render_markdown()
        if ns.timings:
            text += "\nWall time: %.3fs\n" % elapsed
        _emit(text, ns.out)
    return {"CONSISTENT": EXIT_OK, "INCONCLUSIVE": EXIT_INCONCLUSIVE,
            "VIOLATION": EXIT_VIOLATION}[run.outcome]


def _cmd_gallery(ns) -> int:
    sections = _gallery_sections(ns.seed)
    if ns.json:
        _emit(_to_json({"seed": ns.seed, "sections": sections}), ns.out)
        return EXIT_OK
    lines = ["# System gallery", ""]
    for sec in sections:
        lines.append("## " + sec["title"])
        lines.append("")
        for l in sec["lines"]:
            lines.append("- " + l)
        lines.append("")
    _emit("\n".join(lines), ns.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> _Parser:
    parser = _Parser(prog="zerodim",
                     description="workbench for recurrence analysis on "
                                 "zero-dimensional and tower systems")
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="machine readable output")
        p.add_argument("--out", metavar="PATH",
                       help="write output to a file instead of stdout")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for sampled choices (gallery)")

    p = sub.add_parser("list", help="show systems, analyzers, and checks")
    common(p)

    p = sub.add_parser("analyze", help="run one analyzer on one system")
    common(p)
    p.add_argument("system", help="system id (see: zerodim list)")
    p.add_argument("analyzer", help="analyzer name (see: zerodim list)")
    p.add_argument("--point", action="append", metavar="NAME",
                   help="named point; repeat for pair analyzers")
    p.add_argument("--horizon", type=int, default=8)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--period-max", type=int, default=16, dest="period_max")
    p.add_argument("--neighbor-depth-max", type=int, default=None,
                   dest="neighbor_depth_max")
    p.add_argument("--word-length", type=int, default=1, dest="word_length")
    p.add_argument("--window-max", type=int, default=8, dest="window_max")
    p.add_argument("--cover-cap", type=int, default=16, dest="cover_cap")

    p = sub.add_parser("verify", help="run a consistency config")
    common(p)
    p.add_argument("--config", metavar="PATH",
                   help="config JSON (defaults to the standard battery)")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timing in the output")

    p = sub.add_parser("gallery", help="guided tour across the systems")
    common(p)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command is None:
            parser.print_help()
            return EXIT_USAGE
        handler = {"list": _cmd_list, "analyze": _cmd_analyze,
                   "verify": _cmd_verify, "gallery": _cmd_gallery}
        return handler[ns.command](ns)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print("missing file: %s" % exc, file=sys.stderr)
        return EXIT_NOINPUT
    except WorkbenchError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_GENERIC


if __name__ == "__main__":
    sys.exit(main())
