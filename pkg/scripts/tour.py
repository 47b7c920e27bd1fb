#!/usr/bin/env python3
"""Walk the shipped project fixtures end to end: build the gluing, report
chamber counts and Euler characteristics, validate the induced complex of
groups, run the curvature certificate, and print the twist-group summary.

Usage: python3 scripts/tour.py [fixture.json ...]
"""

import glob
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from coxglue import (CoxglueError, Truncated, build_u, chamber_graph,
                     check_nonpositive_curvature, coxeter_link_provider,
                     euler_characteristic, from_gluing, project,
                     quotient_complex, twist_group_report, validate)


def tour(path: str) -> None:
    print(f"=== {os.path.basename(path)} ===")
    ps = project.load(path)
    print(f"Coxeter generators: {', '.join(ps.system.names)}")

    u = build_u(ps.system, ps.mx, ps.caps["radius"], ps.caps["ball_cap"])
    if ps.action:
        u = quotient_complex(u, ps.action)
        print("(quotient by the declared action)")
    print(f"chambers: {len(u.chambers)}, cells: {len(u.cells)}, "
          f"complete: {u.complete}")
    try:
        print(f"euler characteristic: {euler_characteristic(u)}")
    except Truncated:
        print("euler characteristic: unavailable (ball truncated)")

    graph = chamber_graph(u)
    print(f"chamber graph: {len(graph.nodes)} nodes, "
          f"edge types {list(graph.edge_types())}, tree: {graph.is_tree()}")

    if ps.groups is None:
        print("no group assignment: skipping the complex-of-groups stage\n")
        return

    cog = from_gluing(u, ps.groups, ps.maps or {})
    entries = validate(cog)
    counts = {}
    for e in entries:
        counts[e.status] = counts.get(e.status, 0) + 1
    print("validation: " + ", ".join(f"{k}={v}"
                                     for k, v in sorted(counts.items())))

    report = check_nonpositive_curvature(cog, coxeter_link_provider(ps.system))
    print(f"curvature verdict: {report.verdict}")

    tw = twist_group_report(cog, graph)
    print(tw.summary())


def main() -> int:
    paths = sys.argv[1:]
    if not paths:
        fixtures = os.path.join(os.path.dirname(__file__), "..", "fixtures")
        paths = sorted(p for p in glob.glob(os.path.join(fixtures, "*.json"))
                       if "presentation" not in p and "triangles" not in p)
    for path in paths:
        try:
            tour(path)
        except CoxglueError as exc:
            print(f"stopped: {type(exc).__name__}: {exc}\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
