"""Twist automorphisms of glued fundamental groups.

A codimension-1 stratum type e of the gluing gives edges of the chamber
graph; deleting all type-e edges splits the chambers into (e, v)-blocks.
Twisting by a central element c of the type-e edge group conjugates the
fundamental groups of the block chambers by (the image of) c and fixes
the rest, giving an outer automorphism that is nontrivial whenever the
block is proper.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .cog import ComplexOfGroups, try_equal
from .construction import ChamberGraph
from .curvature import _column_hnf
from .errors import InvalidBlock, NotCentral


@dataclass(frozen=True)
class Block:
    """Chambers reachable from `chamber` without crossing type-e edges."""

    edge_type: str
    chamber: tuple
    chambers: frozenset

    def is_proper_in(self, g: ChamberGraph) -> bool:
        return self.chambers < set(g.nodes)


def blocks(g: ChamberGraph, edge_type: str, chamber) -> Block:
    """The (e, v)-block: the connected component of the chamber in the
    chamber graph with all type-e edges removed."""
    if edge_type not in g.edge_types():
        raise ValueError(f"unknown edge type {edge_type!r}")
    if chamber not in g.graph.nodes:
        raise ValueError(f"unknown chamber {chamber!r}")
    h = nx.MultiGraph()
    h.add_nodes_from(g.graph.nodes)
    for u, v, d in g.graph.edges(data=True):
        if d["type"] != edge_type:
            h.add_edge(u, v)
    return Block(edge_type, chamber, frozenset(nx.node_connected_component(h, chamber)))


def all_blocks(g: ChamberGraph, edge_type: str) -> tuple[Block, ...]:
    """The block partition of the chamber set for a fixed edge type."""
    seen = set()
    out = []
    for v in g.nodes:
        if v in seen:
            continue
        b = blocks(g, edge_type, v)
        seen |= b.chambers
        out.append(b)
    return tuple(out)


# ---------------------------------------------------------------------------
# cog-side lookups


def _stratum_groups(cog: ComplexOfGroups) -> dict:
    """Stratum type -> local group (shared across cells of that type)."""
    if not cog.cell_info:
        raise ValueError("complex of groups carries no cell metadata")
    out = {}
    for v, cell in cog.cell_info.items():
        out.setdefault(cell.stratum, cog.groups[v])
    return out


def _chamber_vertex(cog: ComplexOfGroups) -> dict:
    """Chamber word -> scwol vertex id."""
    out = {}
    for v, cell in cog.cell_info.items():
        if cog.mx.complex.strata[cell.stratum].codim == 0:
            out[cell.rep] = v
    return out


def _boundary_homs(cog: ComplexOfGroups, edge_type: str):
    """(chamber word, scwol edge) pairs: maps from type-e cells into the
    groups of their adjacent chambers."""
    chamber_of = {v: cell.rep for v, cell in cog.cell_info.items()
                  if cog.mx.complex.strata[cell.stratum].codim == 0}
    out = []
    for a in cog.scwol.edges:
        up, lo = a[0], a[1]
        if lo in chamber_of and cog.cell_info[up].stratum == edge_type:
            out.append((chamber_of[lo], a))
    return out


def _central_status(group, c) -> bool | None:
    """Is c central? None when undecidable (formal without declaration)."""
    if group.kind == "finite":
        return group.is_central(c)
    if group.kind == "free_abelian":
        return True
    declared = {tuple(el) for _label, el in group.declared_center()}
    if tuple(c) in declared and not group.center_unverified:
        return True
    return None


# ---------------------------------------------------------------------------
# twist automorphisms


@dataclass(frozen=True)
class TwistAutomorphism:
    """Vertex-wise description of a twist: conjugation by c on the block
    chambers, identity elsewhere."""

    block: Block
    element: object           # c, an element of the edge group
    assignment: dict          # chamber word -> "conjugate" | "identity"
    checks: tuple             # (location, status) agreement checks
    is_trivial: bool
    certificate: str

    def region(self) -> frozenset:
        return frozenset(ch for ch, kind in self.assignment.items()
                         if kind == "conjugate")


def twist_automorphism(cog: ComplexOfGroups, block: Block, c) -> TwistAutomorphism:
    """Build and verify the twist determined by a block and a central
    element of its edge group."""
    groups = _stratum_groups(cog)
    if block.edge_type not in groups:
        raise InvalidBlock(f"no cells of stratum type {block.edge_type!r}")
    edge_group = groups[block.edge_type]
    chambers = set(_chamber_vertex(cog))
    if not block.chambers <= chambers or block.chamber not in block.chambers:
        raise InvalidBlock("block chambers do not match the gluing")

    central = _central_status(edge_group, c)
    if central is False:
        raise NotCentral("twist element is not central in the edge group")

    trivial_c = try_equal(edge_group, c, edge_group.identity) is True
    assignment = {ch: ("conjugate" if ch in block.chambers and not trivial_c
                       else "identity")
                  for ch in sorted(chambers)}

    # agreement on edge-group images: across every type-e cell adjacent to
    # a conjugated chamber, the image of c must commute with the images of
    # the edge-group generators (consequence of centrality, checked where
    # the chamber backend is decidable)
    checks = []
    if central is None:
        checks.append((("center", block.edge_type), "undecidable"))
    for chamber, a in _boundary_homs(cog, block.edge_type):
        if assignment.get(chamber) != "conjugate":
            continue
        hom = cog.psi[a]
        target = hom.codomain
        c_img = hom.apply(c)
        statuses = []
        for el in edge_group.generator_elements().values():
            h_img = hom.apply(el)
            statuses.append(try_equal(target,
                                      target.op(c_img, h_img),
                                      target.op(h_img, c_img)))
        if any(s is False for s in statuses):
            status = "fail"
        elif any(s is None for s in statuses):
            status = "undecidable"
        else:
            status = "pass"
        checks.append(((chamber, a), status))

    proper = block.chambers < chambers
    if trivial_c:
        trivial, certificate = True, "twist element is the identity"
    elif not proper:
        trivial, certificate = True, \
            "block is the full chamber set: conjugation by a global element, inner"
    else:
        trivial, certificate = False, \
            "block is a proper subset of the chambers: nontrivial outer class"
    return TwistAutomorphism(block, c, assignment, tuple(checks),
                             trivial, certificate)


# ---------------------------------------------------------------------------
# the twist group report


@dataclass(frozen=True)
class TwistGenerator:
    block: Block
    center_label: str
    element: object
    trivial: bool
    certificate: str


@dataclass(frozen=True)
class TwistReport:
    generators: tuple[TwistGenerator, ...]
    relations: tuple[str, ...]
    rank_lower: int
    rank_upper: int
    rank_exact: bool
    commutation: tuple   # ((gen index, gen index), status)
    banner: str

    def __post_init__(self):
        if self.rank_lower > self.rank_upper:
            raise ValueError("inconsistent rank bounds")

    def to_json(self) -> dict:
        return {
            "generators": [{
                "edge_type": g.block.edge_type,
                "block": sorted("".join(map(str, ch)) or "e"
                                for ch in g.block.chambers),
                "center_generator": g.center_label,
                "trivial": g.trivial,
                "certificate": g.certificate,
            } for g in self.generators],
            "relations": list(self.relations),
            "rank": {"lower": self.rank_lower, "upper": self.rank_upper,
                     "exact": self.rank_exact},
            "commutation": [{"pair": list(pair), "status": status}
                            for pair, status in self.commutation],
            "banner": self.banner,
        }

    def summary(self) -> str:
        lines = [self.banner,
                 f"generators: {len(self.generators)} "
                 f"({sum(1 for g in self.generators if not g.trivial)} nontrivial)"]
        if self.rank_exact:
            lines.append(f"rank T(M) = {self.rank_lower}")
        else:
            lines.append(f"rank T(M) in [{self.rank_lower}, {self.rank_upper}]")
        for rel in self.relations:
            lines.append(f"relation: {rel}")
        return "\n".join(lines) + "\n"


BANNER = ("1 -> T(M) -> Out(pi1(M)) -> A(M) -> 1   "
          "[A(M): finite, not computed]")


def _center_rank(group) -> int | None:
    """Free rank of the declared center; None when unverifiable."""
    declared = group.declared_center()
    if not declared:
        return 0
    if group.kind == "finite":
        return 0
    if group.kind == "free_abelian":
        vectors = [tuple(el) for _l, el in declared]
        pivots, _full = _column_hnf(vectors, group.rank)
        return sum(1 for p in pivots if p is not None)
    return None


def twist_group_report(cog: ComplexOfGroups, g: ChamberGraph) -> TwistReport:
    """Enumerate twist generators per edge type, center generator and
    proper block; list the global-twist-is-inner relations; bound (or, on
    tree chamber graphs, compute) the rank of the twist group."""
    groups = _stratum_groups(cog)
    generators = []
    relations = []
    rank_terms = []
    decidable = True

    for e in g.edge_types():
        if e not in groups:
            raise ValueError(f"edge type {e!r} has no assigned group")
        edge_group = groups[e]
        partition = all_blocks(g, e)
        declared = edge_group.declared_center()
        for label, c in declared:
            if try_equal(edge_group, c, edge_group.identity) is True:
                continue
            for b in partition:
                tw = twist_automorphism(cog, b, c)
                generators.append(TwistGenerator(b, label, c,
                                                 tw.is_trivial, tw.certificate))
            relations.append(
                f"product of the {len(partition)} block twists of type "
                f"{e} by {label} is inner (global conjugation)")
        rk = _center_rank(edge_group)
        if rk is None:
            decidable = False
            rk = len(declared)
        rank_terms.append(rk * (len(partition) - 1))

    total = sum(rank_terms)
    exact = g.is_tree() and decidable
    rank_lower = total if exact else 0
    rank_upper = total

    # pairwise commutation of twist data, vertex-wise, where decidable
    commutation = []
    boundary = {}
    for e in g.edge_types():
        boundary[e] = _boundary_homs(cog, e)
    for (i1, g1), (i2, g2) in combinations(enumerate(generators), 2):
        r1 = frozenset(g1.block.chambers)
        r2 = frozenset(g2.block.chambers)
        if not (r1 & r2) or g1.trivial or g2.trivial:
            commutation.append(((i1, i2), "pass"))
            continue
        statuses = []
        for chamber, a in boundary[g1.block.edge_type]:
            if chamber not in r1 & r2:
                continue
            hom1 = cog.psi[a]
            target = hom1.codomain
            c1 = hom1.apply(g1.element)
            for chamber2, a2 in boundary[g2.block.edge_type]:
                if chamber2 != chamber:
                    continue
                c2 = cog.psi[a2].apply(g2.element)
                statuses.append(try_equal(target, target.op(c1, c2),
                                          target.op(c2, c1)))
        if any(s is False for s in statuses):
            commutation.append(((i1, i2), "fail"))
        elif any(s is None for s in statuses):
            commutation.append(((i1, i2), "undecidable"))
        else:
            commutation.append(((i1, i2), "pass"))

    return TwistReport(tuple(generators), tuple(relations),
                       rank_lower, rank_upper, exact,
                       tuple(commutation), BANNER)
