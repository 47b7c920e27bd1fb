"""Command-line interface.

Exit codes: 0 success, 1 logical failure (a check fails, a cap or radius
is insufficient), 2 input error (unreadable file, schema violation,
dangling reference, invalid action).  Artifacts are written to the
output directory with deterministic names `<command>.<ext>`.
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys

from . import cog as cogmod
from . import construction, curvature, presentations, project, twists
from .errors import (CoxglueError, DanglingReference, GeneratorIndexError,
                     NotAnAction, SchemaError, UnknownStratum)

INPUT_ERRORS = (SchemaError, DanglingReference, NotAnAction, UnknownStratum,
                GeneratorIndexError)


def _write(outdir: str, name: str, text: str) -> str:
    path = os.path.join(outdir, name)
    with open(path, "w") as fh:
        fh.write(text)
    return path


def _write_json(outdir: str, name: str, data) -> str:
    return _write(outdir, name, json.dumps(data, indent=2, sort_keys=True) + "\n")


def _load_spec(path: str) -> project.ProjectSpec:
    return project.load(path)


def _radius(args, ps: project.ProjectSpec) -> int:
    return args.radius if args.radius is not None else ps.caps["radius"]


def _cap(args, ps: project.ProjectSpec) -> int:
    return args.cap if args.cap is not None else ps.caps["ball_cap"]


def _glued(ps: project.ProjectSpec, radius: int, cap: int):
    u = construction.build_u(ps.system, ps.mx, radius, cap)
    if ps.action:
        return construction.quotient_complex(u, ps.action)
    return u


def _cog(ps: project.ProjectSpec, radius: int, cap: int):
    if ps.groups is None:
        raise SchemaError("this command needs a 'groups' assignment", "/groups")
    glued = _glued(ps, radius, cap)
    return cogmod.from_gluing(glued, ps.groups, ps.maps or {})


# ---------------------------------------------------------------------------
# commands


def cmd_nerve(args) -> int:
    ps = _load_spec(args.spec)
    nerve = ps.system.nerve()
    data = {
        "vertices": list(nerve.vertices),
        "simplices": sorted(sorted(sx) for sx in nerve.simplices),
        "dimension": nerve.dimension(),
    }
    _write_json(args.out, "nerve.json", data)
    print(f"nerve: {len(nerve.vertices)} vertices, "
          f"{len(nerve.simplices)} simplices")
    return 0


def cmd_ball(args) -> int:
    ps = _load_spec(args.spec)
    ball = ps.system.ball(_radius(args, ps), _cap(args, ps))
    words = sorted(ball.words, key=lambda w: (len(w), w))
    data = {
        "radius": ball.radius,
        "complete": ball.complete,
        "size": len(words),
        "words": [ps.system.word_name(w) for w in words],
    }
    _write_json(args.out, "ball.json", data)
    print(f"ball: {len(words)} elements, complete={ball.complete}")
    return 0


def cmd_glue(args) -> int:
    ps = _load_spec(args.spec)
    glued = _glued(ps, _radius(args, ps), _cap(args, ps))
    _write_json(args.out, "glue.json", construction.export_poset(glued))
    print(f"chambers: {len(glued.chambers)}")
    print(f"cells: {len(glued.cells)}, complete={glued.complete}")
    return 0


def cmd_sigma(args) -> int:
    ps = _load_spec(args.spec)
    sigma = construction.davis_complex(ps.system, _radius(args, ps),
                                       _cap(args, ps))
    checks = construction.verify_sigma_properties(sigma, ps.system)
    data = construction.export_poset(sigma)
    data["checks"] = [{"name": c.name, "passed": c.passed,
                       "witnesses": [list(map(str, w)) if isinstance(w, tuple)
                                     else str(w) for w in c.witnesses]}
                      for c in checks]
    _write_json(args.out, "sigma.json", data)
    for c in checks:
        print(f"{c.name}: {'pass' if c.passed else 'FAIL'}")
    return 0 if all(c.passed for c in checks) else 1


def cmd_chambers(args) -> int:
    ps = _load_spec(args.spec)
    glued = _glued(ps, _radius(args, ps), _cap(args, ps))
    graph = construction.chamber_graph(glued)
    _write(args.out, "chambers.dot", graph.to_dot())
    data = {
        "nodes": [ps.system.word_name(w) for w in graph.nodes],
        "edge_types": list(graph.edge_types()),
        "is_tree": graph.is_tree(),
    }
    _write_json(args.out, "chambers.json", data)
    print(f"chamber graph: {len(graph.nodes)} nodes, "
          f"types {list(graph.edge_types())}, tree={graph.is_tree()}")
    return 0


def cmd_euler(args) -> int:
    ps = _load_spec(args.spec)
    glued = _glued(ps, _radius(args, ps), _cap(args, ps))
    chi = construction.euler_characteristic(glued)
    _write_json(args.out, "euler.json", {"euler_characteristic": chi})
    print(f"euler characteristic: {chi}")
    return 0


def cmd_quotient(args) -> int:
    ps = _load_spec(args.spec)
    if not ps.action:
        raise SchemaError("quotient requires an 'action' section", "/action")
    u = construction.build_u(ps.system, ps.mx, _radius(args, ps),
                             _cap(args, ps))
    q = construction.quotient_complex(u, ps.action)
    _write_json(args.out, "quotient.json", construction.export_poset(q))
    print(f"quotient: {len(q.chambers)} chambers, {len(q.cells)} cells")
    return 0


def cmd_cog_validate(args) -> int:
    ps = _load_spec(args.spec)
    cg = _cog(ps, _radius(args, ps), _cap(args, ps))
    report = cogmod.validate(cg)
    data = [{"condition": e.condition, "location": [str(x) for x in e.location],
             "status": e.status, "detail": e.detail} for e in report]
    _write_json(args.out, "cog-validate.json", data)
    counts = {}
    for e in report:
        counts[e.status] = counts.get(e.status, 0) + 1
    print("validation: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    return 0 if not any(e.status == "fail" for e in report) else 1


def cmd_pi1(args) -> int:
    ps = _load_spec(args.spec)
    cg = _cog(ps, _radius(args, ps), _cap(args, ps))
    tree = cogmod.first_spanning_tree(cg.scwol)
    pres = cogmod.pi1_presentation(cg, tree)
    if args.simplify:
        pres = presentations.tietze_simplify(pres)
    _write(args.out, "pi1.txt", pres.to_text())
    _write_json(args.out, "pi1.json", pres.to_json())
    print(f"pi1: {len(pres.generators)} generators, "
          f"{len(pres.relators)} relators")
    return 0


def cmd_abelianize(args) -> int:
    with open(args.presentation) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    try:
        pres = presentations.Presentation(
            tuple(raw["generators"]),
            tuple(presentations.word_from_string(r) for r in raw["relators"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"invalid presentation: {exc}") from exc
    inv = presentations.abelianization(pres)
    _write_json(args.out, "abelianize.json", {
        "divisors": list(inv.divisors),
        "free_rank": inv.free_rank,
        "pretty": str(inv),
    })
    print(str(inv))
    return 0


def cmd_check_npc(args) -> int:
    ps = _load_spec(args.spec)
    cg = _cog(ps, _radius(args, ps), _cap(args, ps))
    provider = curvature.coxeter_link_provider(ps.system)
    report = curvature.check_nonpositive_curvature(cg, provider)
    _write_json(args.out, "check-npc.json", report.to_json())
    print(f"verdict: {report.verdict}")
    return 0 if report.verdict == "DEVELOPABLE" else 1


def cmd_twists(args) -> int:
    ps = _load_spec(args.spec)
    radius, cap = _radius(args, ps), _cap(args, ps)
    glued = _glued(ps, radius, cap)
    cg = cogmod.from_gluing(glued, ps.groups, ps.maps or {}) \
        if ps.groups is not None else None
    if cg is None:
        raise SchemaError("twists requires a 'groups' assignment", "/groups")
    graph = construction.chamber_graph(glued)
    report = twists.twist_group_report(cg, graph)
    _write_json(args.out, "twists.json", report.to_json())
    _write(args.out, "twists.txt", report.summary())
    print(report.summary(), end="")
    return 0


def cmd_develop(args) -> int:
    with open(args.fan) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    try:
        fan = [curvature.SphericalTriangle(t["apex_angle"], t["left_side"],
                                           t["right_side"])
               for t in raw["fan"]]
        gamma = [tuple(p) for p in raw.get("gamma", [])]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"invalid fan file: {exc}") from exc
    tolerance = raw.get("tolerance", curvature.SPHERE_TOLERANCE)
    dev = curvature.develop_gallery(fan, gamma)
    _write_json(args.out, "develop.json", dev.to_json())
    worst = max(dev.segment_residuals, default=0.0)
    print(f"total angle: {dev.total_angle:.12f}, "
          f"worst segment residual: {worst:.3e}")
    if dev.exit_distance is not None:
        print(f"exit distance: {dev.exit_distance:.12f}")
    return 0 if worst <= tolerance else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxglue",
        description="Coxeter gluings: basic constructions, complexes of "
                    "groups, curvature certificates and twist groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, spec=True, radius=True, help=""):
        p = sub.add_parser(name, help=help)
        if spec:
            p.add_argument("spec", help="project JSON file")
        if radius:
            p.add_argument("--radius", type=int, default=None,
                           help="ball radius (default: spec caps)")
            p.add_argument("--cap", type=int, default=None,
                           help="ball size cap (default: spec caps)")
        p.add_argument("--out", default=".", help="output directory")
        p.set_defaults(func=func)
        return p

    add("nerve", cmd_nerve, radius=False,
        help="nerve of the Coxeter system")
    add("ball", cmd_ball, help="ball in the Coxeter group")
    add("glue", cmd_glue, help="basic construction U(W, X)")
    add("sigma", cmd_sigma, help="Davis complex and its property checks")
    add("chambers", cmd_chambers, help="chamber graph (DOT + JSON)")
    add("euler", cmd_euler, help="Euler characteristic of the gluing")
    add("quotient", cmd_quotient, help="quotient by the declared action")
    add("cog-validate", cmd_cog_validate,
        help="validate the induced complex of groups")
    p = add("pi1", cmd_pi1, help="fundamental group presentation")
    p.add_argument("--simplify", action="store_true",
                   help="apply Tietze simplification")
    p = sub.add_parser("abelianize", help="abelian invariants of a presentation")
    p.add_argument("presentation", help="presentation JSON file")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_abelianize)
    add("check-npc", cmd_check_npc,
        help="nonpositive-curvature / developability verdict")
    add("twists", cmd_twists, help="twist group report")
    p = sub.add_parser("develop", help="develop a spherical triangle fan")
    p.add_argument("fan", help="fan JSON file")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_develop)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        pointer = getattr(exc, "pointer", "")
        loc = f" at {pointer}" if pointer else ""
        print(f"error: {exc}{loc}", file=_sys.stderr)
        return 2
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2
    except CoxglueError as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=_sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
