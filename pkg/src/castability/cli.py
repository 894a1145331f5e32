"""``cast``: castability reports for OFF/OBJ meshes.

Exit status is 0 when the part is castable (or the requested check passes),
1 when it is not, and 2 for unreadable input or bad usage.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence

from . import casting, oracle
from .casting import CastResult, TopFacet
from .direction_space import ConvexRegion, DirectionCone
from .errors import CastingError
from .kernel import fraction_str
from .mesh import Polyhedron, is_convex, load_mesh, prepare


class UsageError(Exception):
    pass


def _pt(pt) -> list[str]:
    return [fraction_str(c) for c in pt]


def _vec(v) -> list[int]:
    return [int(c) for c in v]


def region_json(region: ConvexRegion) -> dict:
    return {
        "kind": region.kind.value,
        "vertices": [_pt(v) for v in region.vertices],
        "constraints": sorted({hp.source for hp in region.boundary if hp.source is not None}),
    }


def cone_json(cone: DirectionCone, detail: bool = False) -> dict:
    out = region_json(cone.region)
    if detail:
        r = cone.region
        out["chart"] = {"u": _vec(cone.chart.u), "v": _vec(cone.chart.v), "w": _vec(cone.chart.w)}
        out["points"] = [_pt(v) for v in r.points]
        out["rays"] = [_pt(v) for v in r.rays]
        out["edges"] = [{"point": _pt(p), "direction": _pt(d)} for p, d in r.edges]
    return out


def entry_json(e: TopFacet, detail: bool = False) -> dict:
    d = e.direction
    f = d.to_float()
    out = {
        "facet": e.facet,
        "sample_direction_exact": _pt(d),
        "sample_direction_float": [round(x, 15) for x in (f / (f @ f) ** 0.5).tolist()],
        "rotated_direction_float": [round(x, 15) for x in e.rotated_direction().tolist()],
    }
    if e.cone is not None:
        out["cone"] = cone_json(e.cone, detail)
    return out


def result_json(res: CastResult, detail: bool = False) -> dict:
    return {
        "castable": res.castable,
        "n_facets_after_merge": res.n_facets,
        "covering_set": None if res.covering_set is None else list(res.covering_set.members),
        "top_facets": [entry_json(e, detail) for e in res.entries],
    }


def emit_directions(path: str, res: CastResult) -> None:
    """Chart regions plus unit-sphere samples of each cone, for plotting."""
    import numpy as np

    facets = []
    for e in res.entries:
        if e.cone is None:
            continue
        pts, rays = e.cone.generators()
        unit = [(np.asarray(v.to_float()) / np.linalg.norm(v.to_float())).tolist() for v in pts + rays]
        facets.append({"facet": e.facet, "cone": cone_json(e.cone, True), "sphere_generators": unit})
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"top_facets": facets}, fh, indent=2)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("CAST_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CAST_SEED must be an integer, got {env!r}") from None


def _load(args) -> Polyhedron:
    return prepare(load_mesh(args.mesh, args.format), merge=not args.no_merge)


def _workers(args) -> Optional[int]:
    if args.threads is not None and args.threads < 1:
        raise UsageError("--threads must be at least 1")
    return args.threads


def _solve(p: Polyhedron, args, full: bool) -> CastResult:
    seed, workers = _seed(args), _workers(args)
    if args.convex:
        if not is_convex(p):
            raise casting.NotConvex("--convex given but the polyhedron is not convex")
        return casting.convex_all_fad(p, workers=workers, check=False)
    if full:
        return casting.all_fad(p, seed, workers=workers)
    # one direction per facet; the cones of the (at most six) winners are cheap
    return casting.with_cones(p, casting.all_fsd(p, seed, workers=workers),
                              workers=workers, keep_directions=True)


def _oracle_facets(p: Polyhedron) -> Optional[tuple[int, ...]]:
    if p.n_facets > oracle.ORACLE_LIMIT:
        print(f"warning: oracle skipped, {p.n_facets} facets exceeds {oracle.ORACLE_LIMIT}",
              file=sys.stderr)
        return None
    return tuple(oracle.valid_facet_witnesses(p))


def cmd_report(args, full: bool):
    t0 = time.perf_counter()
    p = _load(args)
    t1 = time.perf_counter()
    res = _solve(p, args, full)
    t2 = time.perf_counter()
    out = result_json(res, detail=full)
    if args.oracle:
        truth = _oracle_facets(p)
        out["oracle_agrees"] = None if truth is None else truth == res.facets
    if args.emit_directions:
        emit_directions(args.emit_directions, res)
    if args.timings:
        out["timings_ms"] = {"load": round((t1 - t0) * 1e3, 3), "solve": round((t2 - t1) * 1e3, 3)}
    return out, 0 if res.castable else 1


def cmd_single(args):
    p = _load(args)
    p.check_facet_id(args.facet)
    seed = _seed(args)
    out: dict = {"facet": args.facet, "n_facets_after_merge": p.n_facets}
    if args.all:
        if args.convex:
            if not is_convex(p):
                raise casting.NotConvex("--convex given but the polyhedron is not convex")
            cone = casting.convex_facet_cone(p, args.facet)
        else:
            cone = casting.single_fad(p, args.facet)
        valid = not cone.is_empty
        out["valid"] = valid
        if valid:
            out.update(entry_json(TopFacet(args.facet, p.normal(args.facet), cone.sample_direction, cone), True))
        else:
            out["cone"] = cone_json(cone, True)
        if args.emit_directions:
            emit_directions(args.emit_directions, CastResult(p.n_facets, (TopFacet(
                args.facet, p.normal(args.facet), cone.sample_direction, cone),) if valid else ()))
    else:
        d = casting.single_fsd(p, args.facet, seed)
        valid = d is not None
        out["valid"] = valid
        if valid:
            out.update(entry_json(TopFacet(args.facet, p.normal(args.facet), d)))
    if args.oracle:
        truth = _oracle_facets(p)
        out["oracle_agrees"] = None if truth is None else (args.facet in truth) == valid
    return out, 0 if valid else 1


def cmd_hull_test(args):
    """Every valid pair of the part must stay valid for its convex hull."""
    p = _load(args)
    if p.n_facets > oracle.ORACLE_LIMIT:
        raise UsageError(f"hull-test uses the oracle and is limited to {oracle.ORACLE_LIMIT} facets")
    seed = _seed(args)
    hull = oracle.convex_hull(p.vertices, seed)
    pairs = [(i, d) for i, d in oracle.valid_facet_witnesses(p).items()]
    res = casting.all_fad(p, seed)
    pairs += [(e.facet, e.direction) for e in res.entries]
    violations = []
    for i, d in pairs:
        j = oracle.hull_facet_of(hull, p, i)
        if j is None or not oracle.is_valid_pair(hull, j, d):
            violations.append({"facet": i, "direction": _pt(d), "hull_facet": j})
    out = {
        "n_facets_after_merge": p.n_facets,
        "hull_facets": hull.n_facets,
        "pairs_checked": len(pairs),
        "violations": violations,
    }
    return out, 0 if not violations else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("mesh", help="input mesh file")
    common.add_argument("--format", choices=("off", "obj"), help="input format (default: by extension)")
    common.add_argument("--seed", type=int, help="random seed (default: $CAST_SEED or 0)")
    common.add_argument("--no-merge", action="store_true", help="do not merge coplanar adjacent faces")
    common.add_argument("--convex", action="store_true", help="use the linear-time convex solver")
    common.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    common.add_argument("--emit-directions", metavar="FILE", help="write chart regions for plotting")
    common.add_argument("--threads", type=int, help="worker threads for per-facet work")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")

    ap = argparse.ArgumentParser(prog="cast", description="Single-part mold castability of polyhedra.")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="valid top facets with one direction each")
    sub.add_parser("directions", parents=[common], help="valid top facets with all directions")
    sp = sub.add_parser("single", parents=[common], help="one facet")
    sp.add_argument("--facet", type=int, required=True)
    sp.add_argument("--all", action="store_true", help="report the whole direction cone")
    sub.add_parser("hull-test", parents=[common], help="check valid pairs against the convex hull")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "hull-test" and args.convex:
            raise UsageError("--convex does not apply to hull-test")
        if args.command == "check":
            out, code = cmd_report(args, full=False)
        elif args.command == "directions":
            out, code = cmd_report(args, full=True)
        elif args.command == "single":
            out, code = cmd_single(args)
        else:
            out, code = cmd_hull_test(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"cast: error: {exc}", file=sys.stderr)
        return 2
    except (CastingError, OSError, ValueError) as exc:
        print(f"cast: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
