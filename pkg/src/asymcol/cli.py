"""Command-line interface.

Exit codes: 0 success, 1 verification failure or proven non-existence,
2 resource exhaustion (caps, radius, tower blocks), 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import colouring as col
from . import graphs, perm
from .errors import AsymcolError, VerificationFailed
from .infinite import engine
from .infinite.lazy import ball, parse_family


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _load_group(args) -> perm.PermGroup:
    return perm.parse_generators(_read(args.group), cap=args.cap)


def cmd_motion(args) -> int:
    g = _load_group(args)
    m = perm.motion(g)
    _emit(args, {"motion": m, "order": g.order()}, "undefined" if m is None else str(m))
    return 0


def cmd_distinguish(args) -> int:
    if args.graph:
        g = graphs.automorphism_group(graphs.parse_graph(_read(args.graph)), cap=args.cap).group
    else:
        g = _load_group(args)
    d = col.distinguishing_number(g)
    _emit(args, {"distinguishing_number": d, "order": g.order()}, str(d))
    return 0


def cmd_aut(args) -> int:
    res = graphs.automorphism_group(graphs.parse_graph(_read(args.graph)), cap=args.cap)
    g = res.group
    gens = perm.small_generating_set(g)
    payload = {
        "order": g.order(),
        "generators": [list(s.images) for s in gens],
        "orbits": [sorted(o) for o in perm.orbits(g)],
        "node_count_explored": res.node_count_explored,
    }
    text = "\n".join(
        [f"order {g.order()}"] + [f"generator {s}" for s in gens]
    )
    _emit(args, payload, text)
    return 0


def cmd_colour_group(args) -> int:
    g = _load_group(args)
    if args.random:
        c = col.random_motion_colouring(g, args.seed, args.tries)
    else:
        c = col.exact_asymmetric_colouring(g, args.k)
    _emit(args, c.to_json(), " ".join(map(str, c.colours)))
    return 0


def cmd_infinite_colour(args) -> int:
    x0 = None if args.x0 is None else [json.loads(nm) if nm[:1] in "[0123456789-" else nm for nm in args.x0]
    run = engine.colour_window(
        args.family, args.radius, args.margin, x0, args.coset_radius, args.cap
    )
    doc = engine.run_to_json(run)
    if args.seed is not None:
        doc["seed"] = args.seed
    blob = json.dumps(doc, sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(blob + "\n")
    ncoset = sum(1 for st in run.plan.steps if st.target is not None)
    summary = (
        f"coloured {run.truncation.size} vertices of {args.family} radius {args.radius}: "
        f"{ncoset} coset blocks, tower blocks {doc['plan']['I']}"
    )
    if args.json and not args.out:
        print(blob)
    elif args.json:
        print(json.dumps({"summary": summary, "out": args.out}, sort_keys=True, indent=2))
    else:
        print(summary if args.out else blob)
    return 0


def cmd_infinite_verify(args) -> int:
    data = json.loads(_read(args.colouring))
    family = args.family or data["family"]
    radius = data["radius"] if args.radius is None else args.radius
    margin = data.get("margin", engine.DEFAULT_MARGIN) if args.margin is None else args.margin
    coset_radius = (
        data.get("coset_radius", engine.DEFAULT_COSET_RADIUS)
        if args.coset_radius is None
        else args.coset_radius
    )
    if data["family"] != parse_family(family).spec or data["radius"] != radius:
        raise VerificationFailed(
            f"colouring was made for {data['family']} radius {data['radius']}, "
            f"not {family} radius {radius}"
        )
    t = ball(parse_family(family), radius, margin)
    colours = engine.load_window_colouring(data, t)
    x0 = [t.index_of(nm) for nm in data["x0"]] if "x0" in data else None
    rep = engine.verify_truncation(t, colours, x0, coset_radius, args.cap)
    payload = {
        "asymmetric": rep.asymmetric,
        "elements_checked": rep.elements_checked,
        "structural": rep.structural,
        "coset_targets": len(rep.coset_witnesses) + (rep.failed_target is not None),
        "detail": rep.detail,
    }
    _emit(args, payload, "asymmetric" if rep.asymmetric else f"NOT asymmetric: {rep.detail}")
    return 0 if rep.asymmetric else 1


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cap", type=_positive, default=perm.DEFAULT_CAP, help="enumeration cap")
    p.add_argument("--seed", type=int, default=None, help="random seed")


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asymcol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("motion", help="minimal degree of a group")
    p.add_argument("--group", required=True)
    _common(p)
    p.set_defaults(func=cmd_motion)

    p = sub.add_parser("distinguish", help="distinguishing number of a group or graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--group")
    src.add_argument("--graph")
    _common(p)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("aut", help="automorphism group of a graph")
    p.add_argument("--graph", required=True)
    _common(p)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("colour-group", help="an asymmetric colouring of a group")
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=_nonneg, default=2)
    p.add_argument("--random", action="store_true", help="seeded random 2-colourings")
    p.add_argument("--tries", type=_positive, default=64)
    _common(p)
    p.set_defaults(func=cmd_colour_group)

    inf = sub.add_parser("infinite", help="windowed construction on built-in infinite graphs")
    isub = inf.add_subparsers(dest="infinite_command", required=True)

    p = isub.add_parser("colour", help="run the construction")
    p.add_argument("--family", required=True, help="path, tree:<d> or grid:2")
    p.add_argument("--radius", type=_nonneg, required=True)
    p.add_argument("--margin", type=_nonneg, default=engine.DEFAULT_MARGIN)
    p.add_argument("--coset-radius", type=_nonneg, default=engine.DEFAULT_COSET_RADIUS)
    p.add_argument("--x0", nargs="+", help="base set as canonical vertex names")
    p.add_argument("--out")
    _common(p)
    p.set_defaults(func=cmd_infinite_colour)

    p = isub.add_parser("verify", help="verify a window colouring")
    p.add_argument("--colouring", required=True)
    p.add_argument("--family")
    p.add_argument("--radius", type=_nonneg)
    p.add_argument("--margin", type=_nonneg)
    p.add_argument("--coset-radius", type=_nonneg)
    _common(p)
    p.set_defaults(func=cmd_infinite_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 3
    if getattr(args, "random", False) and args.seed is None:
        args.seed = 0
    try:
        return args.func(args)
    except AsymcolError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except (OSError, ValueError, KeyError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
