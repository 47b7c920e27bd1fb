"""The basic construction U(W,X), the complex Sigma(W,S), chamber graphs,
Euler characteristics, and quotients by kernels of finite actions.

Cells are pairs (coset representative, stratum key).  Coset equality is
representative equality: representatives are the ShortLex-least elements
of their cosets, computed in the `coxeter` module.  Truncated (ball)
complexes tag boundary chambers so downstream checks can skip vertices
with incomplete stars.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations

import networkx as nx

from .coxeter import CoxeterSystem, Word
from .errors import (CapExceeded, InsufficientRadius, NotAnAction, NotNice,
                     NotWFinite, Truncated)
from .mirrored import MirroredComplex, is_nice, is_w_finite
from .simplicial import SimplicialComplex, find_isomorphism


@dataclass(frozen=True)
class Cell:
    rep: Word           # ShortLex-least coset representative
    stratum: str        # stratum id of X, or a subset key for Sigma(W,S)
    dim: int

    def key(self) -> tuple:
        return (self.stratum, self.rep)


@dataclass(frozen=True)
class GluedComplex:
    """Poset of (coset, stratum) cells over a ball in W."""

    cells: tuple[Cell, ...]
    # face relation: cell key -> keys of all strictly smaller cells
    faces: dict = field(compare=False)
    chambers: tuple[Cell, ...]
    boundary_chambers: frozenset
    complete: bool
    radius: int
    source: str                       # "u", "davis" or "quotient"
    sys: CoxeterSystem = field(compare=False)
    mx: MirroredComplex | None = field(compare=False, default=None)
    # for Sigma(W,S): generator-subset (indices) per stratum key
    subsets: dict = field(compare=False, default=None)

    def cell_by_key(self, key) -> Cell:
        return self._index()[key]

    def _index(self):
        if not hasattr(self, "_idx"):
            object.__setattr__(self, "_idx", {c.key(): c for c in self.cells})
        return self._idx

    def faces_of(self, cell: Cell) -> tuple[Cell, ...]:
        idx = self._index()
        return tuple(idx[k] for k in sorted(self.faces[cell.key()]))

    def cofaces_of(self, cell: Cell) -> tuple[Cell, ...]:
        k = cell.key()
        return tuple(c for c in self.cells if k in self.faces[c.key()])

    def without_cell(self, cell: Cell) -> "GluedComplex":
        """Copy with one cell removed (negative-control tool for tests)."""
        key = cell.key()
        cells = tuple(c for c in self.cells if c.key() != key)
        faces = {c.key(): frozenset(k for k in self.faces[c.key()] if k != key)
                 for c in cells}
        chambers = tuple(c for c in self.chambers if c.key() != key)
        return replace(self, cells=cells, faces=faces, chambers=chambers)


def build_u(sys: CoxeterSystem, mx: MirroredComplex, radius: int,
            cap: int = 100000) -> GluedComplex:
    """The basic construction over the ball of the given radius."""
    if not is_w_finite(mx, sys):
        raise NotWFinite("some stratum has a non-spherical mirror set")
    if not is_nice(mx):
        raise NotNice("a codim-2 stratum does not lie in exactly 2 walls")
    ball = sys.ball(radius, cap)
    in_ball = set(ball.words)

    strata = mx.complex
    cells = []
    faces: dict = {}
    for sid in sorted(strata.strata):
        T = mx.mirror_set(sid)
        dim = strata.strata[sid].dim
        reps = {sys.coset_min(w, T) for w in ball.words}
        for rep in sorted(reps, key=lambda u: (len(u), u)):
            cells.append(Cell(rep, sid, dim))

    key_set = {c.key() for c in cells}
    for c in cells:
        below = set()
        for sid in strata.below(c.stratum):
            if sid == c.stratum:
                continue
            T = mx.mirror_set(sid)
            fkey = (sid, sys.coset_min(c.rep, T))
            if fkey in key_set:
                below.add(fkey)
        faces[c.key()] = frozenset(below)

    chambers = tuple(c for c in cells if strata.strata[c.stratum].codim == 0)
    boundary = set()
    if not ball.complete:
        for c in chambers:
            for s in range(sys.rank):
                if sys.normal_form(c.rep + (s,)) not in in_ball:
                    boundary.add(c.key())
                    break
    cells_sorted = tuple(sorted(cells, key=lambda c: (c.stratum, len(c.rep), c.rep)))
    return GluedComplex(cells=cells_sorted, faces=faces, chambers=chambers,
                        boundary_chambers=frozenset(boundary),
                        complete=ball.complete, radius=radius, source="u",
                        sys=sys, mx=mx)


def _subset_key(sys: CoxeterSystem, T) -> str:
    names = sorted(sys.names[i] for i in T)
    return "{" + ",".join(names) + "}"


def davis_complex(sys: CoxeterSystem, radius: int,
                  cap: int = 100000) -> GluedComplex:
    """Sigma(W,S) over a ball: cells are the spherical cosets w W_T."""
    ball = sys.ball(radius, cap)
    in_ball = set(ball.words)

    spherical = [frozenset()]
    for k in range(1, sys.rank + 1):
        for T in combinations(range(sys.rank), k):
            if sys.is_spherical(T):
                spherical.append(frozenset(T))

    subsets = {}
    cells = []
    coset_members: dict = {}
    for T in spherical:
        skey = _subset_key(sys, T)
        subsets[skey] = T
        elements = sys.subgroup_elements(T) if T else ((),)
        reps = {sys.coset_min(w, T) for w in ball.words}
        for rep in sorted(reps, key=lambda u: (len(u), u)):
            members = frozenset(sys.mult(rep, u) for u in elements)
            if members <= in_ball:
                cells.append(Cell(rep, skey, len(T)))
                coset_members[(skey, rep)] = members

    key_set = {c.key() for c in cells}
    faces = {}
    for c in cells:
        T2 = subsets[c.stratum]
        below = set()
        for T1 in spherical:
            if T1 < T2:
                for rep2member in coset_members[c.key()]:
                    fkey = (_subset_key(sys, T1), sys.coset_min(rep2member, T1))
                    if fkey in key_set and \
                            coset_members[fkey] <= coset_members[c.key()]:
                        below.add(fkey)
        faces[c.key()] = frozenset(below)

    vertex_key = _subset_key(sys, frozenset())
    vertices = tuple(c for c in cells if c.stratum == vertex_key)
    boundary = set()
    if not ball.complete:
        for c in vertices:
            for T in spherical:
                if not T:
                    continue
                rep = sys.coset_min(c.rep, T)
                members = frozenset(sys.mult(rep, u)
                                    for u in sys.subgroup_elements(T))
                if not members <= in_ball:
                    boundary.add(c.key())
                    break
    cells_sorted = tuple(sorted(cells, key=lambda c: (c.dim, c.stratum, len(c.rep), c.rep)))
    return GluedComplex(cells=cells_sorted, faces=faces, chambers=vertices,
                        boundary_chambers=frozenset(boundary),
                        complete=ball.complete, radius=radius, source="davis",
                        sys=sys, subsets=subsets)


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool
    witnesses: tuple = ()
    detail: str = ""


def verify_sigma_properties(sigma: GluedComplex, sys: CoxeterSystem) -> list[PropertyCheck]:
    """Check the Cayley-graph and vertex-link properties of Sigma(W,S).

    Only vertices whose full star lies inside the ball are checked for the
    link property.  Failures are reported with witnesses, not raised.
    """
    if sigma.source != "davis":
        raise ValueError("expected a complex built by davis_complex")
    checks = []

    vertex_key = _subset_key(sys, frozenset())
    verts = [c for c in sigma.chambers]
    in_ball = {c.rep for c in verts}

    # property: 1-skeleton is the Cayley graph of (W,S) over the same ball
    cayley = nx.Graph()
    cayley.add_nodes_from(in_ball)
    for w in in_ball:
        for s in range(sys.rank):
            u = sys.normal_form(w + (s,))
            if u in in_ball:
                cayley.add_edge(w, u, gen=s)

    skeleton = nx.Graph()
    skeleton.add_nodes_from(in_ball)
    edge_cells = [c for c in sigma.cells if c.dim == 1]
    for c in edge_cells:
        T = sigma.subsets[c.stratum]
        (s,) = tuple(T)
        skeleton.add_edge(c.rep, sys.normal_form(c.rep + (s,)), gen=s)

    gm = nx.algorithms.isomorphism.GraphMatcher(
        skeleton, cayley,
        edge_match=lambda e1, e2: e1["gen"] == e2["gen"])
    cayley_ok = gm.is_isomorphic()
    checks.append(PropertyCheck(
        name="one_skeleton_is_cayley_graph", passed=cayley_ok,
        witnesses=() if cayley_ok else (("edge_count", skeleton.number_of_edges(),
                                         cayley.number_of_edges()),),
        detail="explicit isomorphism search with generator-labeled edges"))

    # property: the link of each interior vertex is isomorphic to L(W,S)
    nerve = sys.nerve()
    key_set = {c.key() for c in sigma.cells}
    failures = []
    interior = [c for c in verts if c.key() not in sigma.boundary_chambers]
    for v in interior:
        simplices = set()
        for skey, T in sigma.subsets.items():
            if not T:
                continue
            if (skey, sys.coset_min(v.rep, T)) in key_set:
                simplices.add(frozenset(sys.names[i] for i in T))
        link = SimplicialComplex(sys.names, frozenset(simplices))
        if find_isomorphism(link, nerve) is None:
            failures.append(sys.word_name(v.rep))
    checks.append(PropertyCheck(
        name="vertex_links_isomorphic_to_nerve",
        passed=not failures, witnesses=tuple(failures),
        detail=f"{len(interior)} interior vertices checked"))

    # property: every cell's vertex set is a spherical coset
    bad_cells = []
    for c in sigma.cells:
        T = sigma.subsets[c.stratum]
        expected = frozenset(sys.mult(c.rep, u) for u in
                             (sys.subgroup_elements(T) if T else ((),)))
        vertex_faces = {k[1] for k in sigma.faces[c.key()] if k[0] == vertex_key}
        if T:
            vertex_faces = vertex_faces  # vertices strictly below the cell
        else:
            vertex_faces = {c.rep}
        if vertex_faces != expected:
            bad_cells.append((c.stratum, sys.word_name(c.rep)))
    checks.append(PropertyCheck(
        name="cells_are_spherical_cosets",
        passed=not bad_cells, witnesses=tuple(bad_cells)))

    return checks


@dataclass(frozen=True)
class ChamberGraph:
    """Chambers as nodes; shared mirror cells as type-labeled edges."""

    graph: nx.MultiGraph = field(compare=False)

    @property
    def nodes(self) -> tuple:
        return tuple(sorted(self.graph.nodes, key=lambda w: (len(w), w)))

    def edge_types(self) -> tuple[str, ...]:
        return tuple(sorted({d["type"] for *_e, d in self.graph.edges(data=True)}))

    def is_tree(self) -> bool:
        g = self.graph
        return nx.is_connected(g) and g.number_of_edges() == g.number_of_nodes() - 1

    def to_dot(self) -> str:
        lines = ["graph chambers {"]
        names = {w: f'"{_wname(w)}"' for w in self.nodes}
        for w in self.nodes:
            lines.append(f"  {names[w]};")
        edges = sorted((min(names[u], names[v]), max(names[u], names[v]), d["type"])
                       for u, v, d in self.graph.edges(data=True))
        for u, v, t in edges:
            lines.append(f'  {u} -- {v} [type="{t}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _wname(w: Word) -> str:
    return ".".join(str(i) for i in w) if w else "e"


def chamber_graph(u: GluedComplex) -> ChamberGraph:
    """Nodes are chambers; every mirror cell bounding two chambers becomes
    an edge labeled by the stratum of X it projects to."""
    if u.mx is None:
        raise ValueError("chamber graph requires a complex over a mirrored space")
    g = nx.MultiGraph()
    for c in u.chambers:
        g.add_node(c.rep)
    chamber_keys = {c.key(): c for c in u.chambers}
    codim1 = [c for c in u.cells
              if u.mx.complex.strata[c.stratum].codim == 1
              and u.mx.mirror_set(c.stratum)]
    for cell in codim1:
        adj = [chamber_keys[ck.key()].rep for ck in u.cofaces_of(cell)
               if ck.key() in chamber_keys]
        if len(adj) == 2:
            g.add_edge(adj[0], adj[1], type=cell.stratum)
        elif len(adj) == 1 and u.complete:
            # both sides identified in a quotient: a loop
            g.add_edge(adj[0], adj[0], type=cell.stratum)
    return ChamberGraph(graph=g)


def euler_characteristic(u: GluedComplex) -> int:
    """Alternating cell count; refuses radius-limited complexes."""
    if not u.complete:
        raise Truncated("Euler characteristic requires an untruncated complex")
    return sum((-1) ** c.dim for c in u.cells)


def _perm_compose(p: tuple, q: tuple) -> tuple:
    """(p then q) acting on points: (q∘p)(x) = q[p[x]]."""
    return tuple(q[i] for i in p)


def quotient_complex(u: GluedComplex,
                     action: dict[str, tuple[int, ...]]) -> GluedComplex:
    """Quotient of U(W,X) by the kernel of the given finite action.

    `action` maps generator names to permutations (images as tuples).
    Chambers of the quotient are kernel-orbits; torsion-freeness of the
    kernel is NOT verified.
    """
    if u.mx is None or u.source not in ("u",):
        raise ValueError("quotient_complex expects a complex built by build_u")
    sys = u.sys
    if set(action) != set(sys.names):
        raise NotAnAction("action must assign a permutation to every generator")
    degree = len(next(iter(action.values())))
    ident = tuple(range(degree))
    perms = {}
    for name, p in action.items():
        p = tuple(p)
        if sorted(p) != list(range(degree)):
            raise NotAnAction(f"value for {name!r} is not a permutation")
        perms[sys.index[name]] = p
    # relation check: involutions and (st)^m = 1
    for i in range(sys.rank):
        if _perm_compose(perms[i], perms[i]) != ident:
            raise NotAnAction(f"generator {sys.names[i]!r} is not an involution")
    for i in range(sys.rank):
        for j in range(i + 1, sys.rank):
            m = sys.matrix.bond(i, j)
            if m == 0:
                continue
            p = ident
            for _ in range(m):
                p = _perm_compose(p, _perm_compose(perms[i], perms[j]))
            if p != ident:
                raise NotAnAction(
                    f"relation ({sys.names[i]}{sys.names[j]})^{m} = 1 violated")

    def perm_of(w: Word) -> tuple:
        p = ident
        for s in w:
            p = _perm_compose(p, perms[s])
        return p

    chamber_perms = {c.rep: perm_of(c.rep) for c in u.chambers}
    reached = set(chamber_perms.values())
    for p in reached:
        for i in range(sys.rank):
            if _perm_compose(p, perms[i]) not in reached:
                raise InsufficientRadius(
                    "ball does not cover a fundamental domain of the kernel")

    # group cells by the set of permutations of their coset
    mx = u.mx
    sub_elements = {}
    grouped: dict = {}
    for c in u.cells:
        T = mx.mirror_set(c.stratum)
        if T not in sub_elements:
            sub_elements[T] = sys.subgroup_elements(T) if T else ((),)
        base = perm_of(c.rep)
        key = frozenset(_perm_compose(perm_of(t), base)
                        for t in sub_elements[T])
        slot = grouped.setdefault((c.stratum, key), [])
        slot.append(c)

    cells = []
    faces = {}
    cell_of_group = {}
    for (sid, key), members in grouped.items():
        rep = min((c.rep for c in members), key=lambda w: (len(w), w))
        cell = Cell(rep, sid, members[0].dim)
        cells.append(cell)
        cell_of_group[(sid, key)] = cell

    group_of_ucell = {}
    for gk, members in grouped.items():
        for c in members:
            group_of_ucell[c.key()] = gk
    for gk, members in grouped.items():
        below = set()
        for c in members:
            for fk in u.faces[c.key()]:
                below.add(cell_of_group[group_of_ucell[fk]].key())
        faces[cell_of_group[gk].key()] = frozenset(below)

    chambers = tuple(sorted(
        (c for c in cells if mx.complex.strata[c.stratum].codim == 0),
        key=lambda c: (len(c.rep), c.rep)))
    cells_sorted = tuple(sorted(cells, key=lambda c: (c.stratum, len(c.rep), c.rep)))
    return GluedComplex(cells=cells_sorted, faces=faces, chambers=chambers,
                        boundary_chambers=frozenset(), complete=True,
                        radius=u.radius, source="quotient", sys=sys, mx=mx)


def export_poset(u: GluedComplex) -> dict:
    """Deterministic JSON-ready description of the cell poset."""
    cells = [{"rep": list(c.rep), "stratum": c.stratum, "dim": c.dim}
             for c in u.cells]
    index = {c.key(): i for i, c in enumerate(u.cells)}
    faces = sorted((index[fk], index[c.key()])
                   for c in u.cells for fk in u.faces[c.key()])
    return {
        "cells": cells,
        "faces": [list(p) for p in faces],
        "chambers": [index[c.key()] for c in u.chambers],
        "boundary_chambers": sorted(index[k] for k in u.boundary_chambers),
        "complete": u.complete,
        "radius": u.radius,
        "source": u.source,
    }
