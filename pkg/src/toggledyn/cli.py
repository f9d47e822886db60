"""Command-line surface: censuses, theorem verification suites, and timeline
traces with diagram rendering.

Exit codes: 0 = ok/verified, 1 = verification mismatch, 2 = usage error,
3 = resource bound exceeded.  All commands are deterministic given their
flags (randomness is always driven by --seed).  Named operator specs are
normalized to generator words before execution and echoed in the output, so
every result is reproducible from the word alone.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .core import Graph, labeling_from_text
from .dynamics import CensusBoundError, full_census
from .operators import (
    AcyclicOrientation,
    OperatorWord,
    broken_word,
    canonical_S,
    cyc_bro_word,
    cyc_word,
    permutoric_word,
    permutoric_word_from_orientation,
    phi_word,
    promotion_word,
    R_from_S,
    toric_word,
    unique_source_orientation,
)
from .sieving import rot_orbit
from .stones_coins import (
    Simulation,
    WindowCapError,
    build_fence,
    render_state_ascii,
    render_state_svg,
)
from . import verify as verify_mod

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BOUND = 3


class UsageError(ValueError):
    pass


def parse_graph(spec: str) -> Graph:
    if spec.startswith("path:"):
        return Graph.path(int(spec.split(":", 1)[1]))
    if spec.startswith("cycle:"):
        return Graph.cycle(int(spec.split(":", 1)[1]))
    if ";" in spec:
        return Graph.from_text(spec)
    raise UsageError(f"bad graph spec {spec!r} (want path:N, cycle:N, or 'N; a-b,...')")


def _parse_residues(text: str) -> set:
    return {int(x) for x in text.split(",") if x.strip()}


def resolve_word(args, n: int) -> OperatorWord:
    op = args.op
    if op == "pro":
        return promotion_word(n)
    if op == "tpro":
        return toric_word(n)
    if op == "cyc":
        return cyc_word(n)
    if op == "tpro-pi":
        if not args.pi:
            raise UsageError("--op tpro-pi needs --pi")
        return permutoric_word(tuple(int(x) for x in args.pi.split(",")))
    if op == "tpro-beta":
        if args.ccw:
            beta = AcyclicOrientation(n, frozenset(_parse_residues(args.ccw)))
        elif args.d:
            beta = unique_source_orientation(n, args.d)
        else:
            raise UsageError("--op tpro-beta needs --ccw or --d")
        return permutoric_word_from_orientation(beta)
    if op == "bro":
        if args.b is None:
            raise UsageError("--op bro needs --b")
        return broken_word(n, _parse_residues(args.b))
    if op == "cyc-bro":
        if args.b is None:
            raise UsageError("--op cyc-bro needs --b")
        return cyc_bro_word(n, _parse_residues(args.b))
    if op == "cyc-bro-r":
        if not args.d:
            raise UsageError("--op cyc-bro-r needs --d")
        return cyc_bro_word(n, R_from_S(n, canonical_S(n, args.d)))
    if op == "phi":
        if not args.d:
            raise UsageError("--op phi needs --d")
        return phi_word(n, args.d)
    if op == "word":
        if not args.word:
            raise UsageError("--op word needs --word")
        return OperatorWord.from_text(args.word, n)
    raise UsageError(f"unknown operator spec {op!r}")


def cmd_census(args) -> int:
    G = parse_graph(args.graph)
    word = resolve_word(args, G.n)
    census = full_census(G, word, max_n=args.max_n, force=args.force)
    if args.order_only:
        print(census.order)
        return EXIT_OK
    payload = census.to_json()
    if args.format == "table":
        print(f"n={payload['n']} word: {payload['word']}")
        print(f"order: {payload['order']}")
        for s, m in sorted(census.sizes.items()):
            print(f"  size {s}: {m} orbits")
    else:
        print(json.dumps(payload))
    return EXIT_OK


def _suite_runner(args):
    name = args.suite
    if name not in verify_mod.SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from "
                         f"{sorted(verify_mod.SUITES)}")
    if name == "thm-toric":
        return [verify_mod.thm_toric(args.n or 7)]
    if name == "thm-main":
        return [verify_mod.thm_main(args.n or 6, exhaustive_pi=args.exhaustive_pi)]
    if name == "thm-broken-1d":
        return [verify_mod.thm_broken_initial(args.n or 6)]
    if name == "thm-broken-R":
        return [verify_mod.thm_broken_R(args.n or 6)]
    if name == "prop-divisibility":
        return [verify_mod.prop_divisibility(args.n or 6)]
    if name == "prop-homomesy":
        return [verify_mod.prop_homomesy(args.count, args.n or 6, args.seed)]
    if name == "prop-tpro-bro":
        return [verify_mod.prop_tpro_bro(args.n or 6)]
    n = args.n or 6
    ds = range(1, n) if args.all_d or not args.d else [args.d]
    if name == "omega-counts":
        return [verify_mod.omega_counts(n, d) for d in ds]
    seeds = "all" if args.seeds == "all" else int(args.seeds)
    return [verify_mod.fence_laws(n, d, seeds=seeds, seed=args.seed) for d in ds]


def cmd_verify(args) -> int:
    reports = _suite_runner(args)
    ok = all(r.ok for r in reports)
    if args.format == "table":
        for r in reports:
            print(f"suite {r.suite} {r.params}")
            for c in r.checks:
                mark = "ok " if c["ok"] else "FAIL"
                detail = f"  [{c['detail']}]" if c["detail"] else ""
                print(f"  {mark} {c['name']}{detail}")
    else:
        print(json.dumps([r.to_json() for r in reports]))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_timeline(args) -> int:
    if args.seed_labeling:
        seed = labeling_from_text(args.seed_labeling)
        n = len(seed)
    elif args.n:
        n = args.n
        rng = random.Random(args.seed)
        seed = tuple(rng.sample(range(1, n + 1), n))
    else:
        raise UsageError("timeline needs --seed-labeling or --n")
    d = args.d
    if not d or not 1 <= d <= n - 1:
        raise UsageError("timeline needs --d with 1 <= d <= n-1")

    sim = Simulation(seed, d)
    period = None
    if args.until_period:
        period = sim.first_recurrence()
        t_end = period
    else:
        t_end = args.steps
        sim.extend_to_time(t_end)

    header = {"n": n, "d": d, "seed": ",".join(str(x) for x in seed)}
    if period is not None:
        header["period"] = period
    print(json.dumps(header))
    for rec in sim.records:
        print(json.dumps(rec.to_json()))

    if args.render:
        timeline_states = [seed]
        cur = Simulation(seed, d, strict=False)
        for t in range(1, t_end + 1):
            cur.extend_to_time(t)
            timeline_states.append(cur.labeling())
        for t, sigma in enumerate(timeline_states):
            directions = sim.records[t * d - 1].directions if t >= 1 else None
            if args.render == "ascii":
                print(render_state_ascii(sigma, t, d, directions))
            else:
                print(render_state_svg(sigma, t, d))

    if args.fence:
        fence = build_fence(seed, d)
        chain = fence.transversal()
        comp = fence.energy_composition(chain)
        payload = {
            "nodes": [dict(index=i, **c.to_json()) for i, c in enumerate(fence.nodes)],
            "covers": [{"lo": lo, "hi": hi, "energy": e}
                       for (lo, hi), e in sorted(fence.covers.items())],
            "transversal": chain,
            "energies": list(comp),
            "period": fence.period(),
            "rotation_orbit_size": len(rot_orbit(comp)),
        }
        print(json.dumps(payload))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="toggledyn",
        description="Exact engine for toggle-based promotion dynamics on "
                    "graph labelings: censuses, sieving checks, and the "
                    "stones/coins simulation.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="orbit census of an operator word")
    c.add_argument("--graph", required=True, help="path:N | cycle:N | 'N; a-b,...'")
    c.add_argument("--op", required=True,
                   help="pro|tpro|tpro-pi|tpro-beta|bro|cyc-bro|cyc-bro-r|phi|cyc|word")
    c.add_argument("--pi", help="comma list, e.g. 2,1,4,3")
    c.add_argument("--d", type=int)
    c.add_argument("--ccw", help="counterclockwise edge set, comma list")
    c.add_argument("--b", help="subset of residues, comma list")
    c.add_argument("--word", help="explicit word, e.g. 't1 t2 cyc'")
    c.add_argument("--order-only", action="store_true")
    c.add_argument("--force", action="store_true")
    c.add_argument("--max-n", type=int, default=None)
    c.add_argument("--format", choices=["json", "table"], default="json")
    c.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite")
    v.add_argument("--n", type=int)
    v.add_argument("--d", type=int)
    v.add_argument("--all-d", action="store_true")
    v.add_argument("--count", type=int, default=200)
    v.add_argument("--seeds", default="all")
    v.add_argument("--seed", type=int, default=2024)
    v.add_argument("--exhaustive-pi", action="store_true", default=None)
    v.add_argument("--format", choices=["json", "table"], default="json")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("timeline", help="small-step trace of a timeline")
    t.add_argument("--n", type=int)
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--seed-labeling", help="comma list, e.g. 5,2,6,4,1,3")
    t.add_argument("--seed", type=int, default=0, help="RNG seed for a random labeling")
    t.add_argument("--steps", type=int, default=12)
    t.add_argument("--until-period", action="store_true")
    t.add_argument("--render", choices=["ascii", "svg"])
    t.add_argument("--fence", action="store_true")
    t.set_defaults(func=cmd_timeline)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CensusBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except WindowCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
