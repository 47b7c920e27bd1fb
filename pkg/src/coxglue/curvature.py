"""Nonpositive-curvature certification.

Links are piecewise spherical simplicial complexes with per-edge lengths;
the link condition checked is the metric flag condition: every set of
pairwise-joined vertices whose cosine matrix is positive definite must
span a simplex.  Local developments of simple complexes of groups are
computed as flag complexes over coset posets, and galleries of spherical
triangles around a common vertex are developed isometrically onto the
unit 2-sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx
import numpy as np

from .cog import ComplexOfGroups, Edge, Hom
from .coxeter import CoxeterSystem
from .errors import EdgeTooShort, InvalidTriangle, NotEnumerable
from .simplicial import SimplicialComplex

PD_TOLERANCE = 1e-9
SPHERE_TOLERANCE = 1e-9


# ---------------------------------------------------------------------------
# metric nerves and flag conditions


@dataclass(frozen=True)
class MetricNerve:
    """Simplicial complex with spherical edge lengths in (0, pi).

    `exact_pd`, when set, decides positive definiteness of a vertex
    subset's cosine matrix exactly (used when lengths come from a Coxeter
    matrix); otherwise the decision is numeric with tolerance 1e-9.
    """

    complex: SimplicialComplex
    lengths: dict = field(default_factory=dict)  # frozenset({u,v}) -> float
    exact_pd: object = None

    def __post_init__(self):
        for e in self.complex.edges():
            if e not in self.lengths:
                raise ValueError(f"edge {set(e)} has no length")
        for e, l in self.lengths.items():
            if frozenset(e) not in self.complex.edges():
                raise ValueError(f"length given for non-edge {set(e)}")
            if not 0 < l < math.pi:
                raise ValueError(f"edge length {l} outside (0, pi)")

    def length(self, u, v) -> float:
        return self.lengths[frozenset((u, v))]

    def cosine_matrix(self, vertices) -> np.ndarray:
        vs = sorted(vertices, key=repr)
        n = len(vs)
        m = np.eye(n)
        for i in range(n):
            for j in range(i + 1, n):
                c = math.cos(self.length(vs[i], vs[j]))
                m[i, j] = m[j, i] = c
        return m

    def is_positive_definite(self, vertices) -> bool:
        if self.exact_pd is not None:
            return bool(self.exact_pd(frozenset(vertices)))
        eig = np.linalg.eigvalsh(self.cosine_matrix(vertices))
        return bool(eig.min() > PD_TOLERANCE)


def right_angled_nerve(c: SimplicialComplex) -> MetricNerve:
    """All edges of length pi/2 (the metric flag check reduces to flag)."""
    return MetricNerve(c, {e: math.pi / 2 for e in c.edges()})


def moussong_nerve(sys: CoxeterSystem) -> MetricNerve:
    """Coxeter nerve with lengths pi - pi/m(s,t) and exact positive
    definiteness via the finite-type classification."""
    nerve = sys.nerve()
    lengths = {}
    for e in nerve.edges():
        a, b = sorted(e, key=repr)
        m = sys.matrix.bond(sys.index[a], sys.index[b])
        if m == 0:
            raise ValueError("infinite bonds do not appear as nerve edges")
        lengths[e] = math.pi - math.pi / m
    return MetricNerve(nerve, lengths, exact_pd=sys.is_spherical)


def is_flag(c: SimplicialComplex) -> bool:
    """Every set of pairwise-adjacent vertices spans a simplex."""
    for k in range(3, len(c.vertices) + 1):
        for vs in combinations(sorted(c.vertices, key=repr), k):
            if all(c.adjacent(u, v) for u, v in combinations(vs, 2)):
                if frozenset(vs) not in c.simplices:
                    return False
    return True


def is_metric_flag(mn: MetricNerve) -> bool:
    """Every pairwise-joined vertex set with positive-definite cosine
    matrix spans a simplex."""
    c = mn.complex
    for e, l in mn.lengths.items():
        if l < math.pi / 2 - PD_TOLERANCE:
            raise EdgeTooShort(f"edge {set(e)} has length {l} < pi/2")
    for k in range(2, len(c.vertices) + 1):
        for vs in combinations(sorted(c.vertices, key=repr), k):
            if not all(c.adjacent(u, v) for u, v in combinations(vs, 2)):
                continue
            if mn.is_positive_definite(vs) and frozenset(vs) not in c.simplices:
                return False
    return True


# ---------------------------------------------------------------------------
# local developments


def _column_hnf(columns: list[tuple[int, ...]], n: int):
    """Triangularize an integer column lattice.

    Returns (pivot_cols, full_rank): pivot_cols[i] is the column with its
    first nonzero entry in row i (zeros above), or None.  full_rank means
    every row got a pivot, i.e. the lattice has finite index in Z^n.
    """
    cols = [list(c) for c in columns if any(c)]
    pivots: list[list[int] | None] = [None] * n
    piv = 0
    for i in range(n):
        while True:
            nz = [j for j in range(piv, len(cols)) if cols[j][i] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][i]))
            cols[piv], cols[j0] = cols[j0], cols[piv]
            clean = True
            for j in range(piv + 1, len(cols)):
                if cols[j][i] != 0:
                    q = cols[j][i] // cols[piv][i]
                    cols[j] = [x - q * y for x, y in zip(cols[j], cols[piv])]
                    if cols[j][i] != 0:
                        clean = False
            if clean:
                break
        if piv < len(cols) and cols[piv][i] != 0:
            if cols[piv][i] < 0:
                cols[piv] = [-x for x in cols[piv]]
            pivots[i] = cols[piv]
            piv += 1
    full_rank = all(p is not None for p in pivots)
    return pivots, full_rank


class _Cosets:
    """Left cosets of a subgroup image inside a local group, when finite."""

    def __init__(self, group, hom: Hom | None):
        self.group = group
        images = []
        if hom is not None:
            images = [hom.apply(el)
                      for el in hom.domain.generator_elements().values()]
        if group.is_trivial:
            self.reps = [group.identity]
            self._member = lambda el: True
        elif group.kind == "finite":
            sub = {group.identity}
            frontier = [group.identity]
            while frontier:
                nxt = []
                for p in frontier:
                    for g in images:
                        q = group.op(p, g)
                        if q not in sub:
                            sub.add(q)
                            nxt.append(q)
                frontier = nxt
            assigned = {}
            reps = []
            for el in sorted(group.elements):
                if el in assigned:
                    continue
                reps.append(el)
                for h in sub:
                    assigned[group.op(el, h)] = el
            self.reps = reps
            self._member = lambda el: el in sub
        elif group.kind == "free_abelian":
            pivots, full = _column_hnf([tuple(v) for v in images], group.rank)
            if not full:
                raise NotEnumerable(
                    "image lattice has infinite index in the local group")
            self._pivots = pivots

            def canonical(el):
                r = list(el)
                for i, col in enumerate(pivots):
                    q = r[i] // col[i]
                    r = [x - q * y for x, y in zip(r, col)]
                return tuple(r)

            self._canonical = canonical
            diag = [col[i] for i, col in enumerate(pivots)]
            reps = [()]
            for d in diag:
                reps = [r + (x,) for r in reps for x in range(d)]
            # box residues are already canonical; fix up via canonical anyway
            self.reps = sorted({canonical(r) for r in reps})
            self._member = lambda el: canonical(el) == group.identity
        else:
            raise NotEnumerable(
                f"cosets in a {group.kind} local group are not enumerable")

    def contains(self, coset_rep, el) -> bool:
        """el lies in the coset coset_rep * H."""
        return self._member(self.group.op(self.group.inv(coset_rep), el))


@dataclass
class LocalDevelopment:
    """The star of a lifted vertex in the development: the flag complex of
    the coset poset at that vertex."""

    vertex: str
    complex: SimplicialComplex
    center: str
    up_labels: dict      # label -> (edge, coset rep)
    down_labels: dict    # label -> edge

    def vertex_count(self) -> int:
        return len(self.complex.vertices)

    def collapse(self) -> SimplicialComplex:
        """Quotient by the local-group action: merge the cosets of each
        upper edge to a single vertex (recovers the star in the base)."""

        def image(v):
            if v in self.up_labels:
                return v.rsplit(":", 1)[0]
            return v

        verts = tuple(sorted({image(v) for v in self.complex.vertices}))
        simplices = {frozenset(image(v) for v in sx)
                     for sx in self.complex.simplices}
        return SimplicialComplex(verts, frozenset(simplices))


def _flag_complex(vertices, adjacency) -> SimplicialComplex:
    g = nx.Graph()
    g.add_nodes_from(vertices)
    for u, v in adjacency:
        g.add_edge(u, v)
    simplices = {frozenset(cl) for cl in nx.enumerate_all_cliques(g)}
    return SimplicialComplex(tuple(sorted(vertices)), frozenset(simplices))


def local_development(cog: ComplexOfGroups, vertex: str) -> LocalDevelopment:
    """Star of the lift of `vertex` in the development of a simple complex
    of groups: one node per coset of each upper-edge image, one node per
    lower edge, plus the lifted vertex itself."""
    if vertex not in cog.scwol.vertices:
        raise ValueError(f"unknown scwol vertex {vertex!r}")
    if not cog.is_simple():
        raise ValueError("local development implemented for simple complexes "
                         "of groups only")
    scwol = cog.scwol
    group = cog.groups[vertex]
    eindex = {a: i for i, a in enumerate(scwol.edges)}
    up_edges = [a for a in scwol.edges if a[1] == vertex]
    down_edges = [b for b in scwol.edges if b[0] == vertex]

    cosets = {a: _Cosets(group, cog.psi[a]) for a in up_edges}

    center = "center"
    up_labels, up_nodes = {}, []
    for a in up_edges:
        for k, rep in enumerate(cosets[a].reps):
            label = f"up:{eindex[a]}:{k}"
            up_labels[label] = (a, rep)
            up_nodes.append((label, a, rep))
    down_labels = {f"down:{eindex[b]}": b for b in down_edges}

    adjacency = []
    nodes = [center] + [l for l, _, _ in up_nodes] + list(down_labels)
    for v in nodes:
        if v != center:
            adjacency.append((center, v))
    # upper node above upper node: composite edge exists and coset contained
    for i1 in range(len(up_nodes)):
        for i2 in range(len(up_nodes)):
            if i1 == i2:
                continue
            l1, a1, r1 = up_nodes[i1]
            l2, a2, r2 = up_nodes[i2]
            # is a2 deeper than a1 (a2 factors through a1)?
            linked = False
            for c in scwol.edges:
                if c[0] == a2[0] and c[1] == a1[0] \
                        and scwol.compose(a1, c) == a2:
                    linked = True
                    break
            if linked and cosets[a1].contains(r1, r2):
                adjacency.append(tuple(sorted((l1, l2))))
    # upper nodes are adjacent to every lower node
    for l, _a, _r in up_nodes:
        for dl in down_labels:
            adjacency.append((l, dl))
    # lower nodes: adjacent when one edge factors through the other
    for (dl1, b1), (dl2, b2) in combinations(sorted(down_labels.items()), 2):
        linked = False
        for bx, by in ((b1, b2), (b2, b1)):
            for c in scwol.edges:
                if c[0] == bx[1] and c[1] == by[1] \
                        and scwol.compose(c, bx) == by:
                    linked = True
        if linked:
            adjacency.append((dl1, dl2))

    complex = _flag_complex(nodes, set(adjacency))
    return LocalDevelopment(vertex, complex, center, up_labels, down_labels)


def scwol_star(cog: ComplexOfGroups, vertex: str) -> SimplicialComplex:
    """Star of the vertex in the base scwol, in the labeling used by
    LocalDevelopment.collapse (upper edges collapsed to single nodes)."""
    trivial = {v: _TrivialGroupView() for v in cog.scwol.vertices}
    base = ComplexOfGroups.__new__(ComplexOfGroups)
    base.scwol = cog.scwol
    base.groups = trivial
    base.psi = {a: Hom(trivial[a[0]], trivial[a[1]], {})
                for a in cog.scwol.edges}
    base.twist = {pair: () for pair in cog.scwol.composable_pairs()}
    base.cell_info = {}
    base.mx = None
    dev = local_development(base, vertex)
    return dev.collapse()


class _TrivialGroupView:
    """Minimal trivial local group used to realize the base star."""

    kind = "formal"
    is_trivial = True
    identity = ()
    center_unverified = False

    def op(self, a, b):
        return ()

    def inv(self, a):
        return ()

    def generator_elements(self):
        return {}

    def element_to_word(self, el):
        return ()

    def presentation(self):
        from .presentations import Presentation
        return Presentation((), ())

    def declared_center(self):
        return []


# ---------------------------------------------------------------------------
# developability pipeline


@dataclass(frozen=True)
class LinkEntry:
    vertex: str
    status: str   # "pass" | "fail" | "missing"
    detail: str = ""


@dataclass(frozen=True)
class CurvatureReport:
    verdict: str  # "DEVELOPABLE" | "UNKNOWN"
    entries: tuple[LinkEntry, ...]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "links": [{"vertex": e.vertex, "status": e.status,
                       "detail": e.detail} for e in self.entries],
        }


def check_nonpositive_curvature(cog: ComplexOfGroups,
                                link_provider) -> CurvatureReport:
    """Verdict DEVELOPABLE when every vertex link satisfies the metric
    flag condition; otherwise UNKNOWN with the failing vertices listed.
    The condition is sufficient only, so failure never certifies
    non-developability.

    `link_provider(vertex)` returns the MetricNerve of the link of the
    vertex's local development, or None when unavailable.
    """
    entries = []
    for v in cog.scwol.vertices:
        nerve = link_provider(v)
        if nerve is None:
            entries.append(LinkEntry(v, "missing", "no link supplied"))
            continue
        try:
            ok = is_metric_flag(nerve)
        except EdgeTooShort as exc:
            entries.append(LinkEntry(v, "fail", str(exc)))
            continue
        if ok:
            entries.append(LinkEntry(v, "pass"))
        else:
            entries.append(LinkEntry(v, "fail", "metric flag condition fails"))
    verdict = "DEVELOPABLE" if all(e.status == "pass" for e in entries) \
        else "UNKNOWN"
    return CurvatureReport(verdict, tuple(entries))


def coxeter_link_provider(sys: CoxeterSystem):
    """Links for gluings governed by a Coxeter system: every vertex link
    embeds in the Coxeter nerve with the standard spherical lengths, whose
    demanded simplices are exactly the spherical subsets."""
    nerve = moussong_nerve(sys)

    def provider(vertex: str) -> MetricNerve:
        return nerve

    return provider


# ---------------------------------------------------------------------------
# spherical gallery development


@dataclass(frozen=True)
class SphericalTriangle:
    """Spherical triangle given by the apex angle at the shared vertex and
    the two side lengths leaving that vertex."""

    apex_angle: float
    left_side: float
    right_side: float

    def __post_init__(self):
        for name, val in (("apex_angle", self.apex_angle),
                          ("left_side", self.left_side),
                          ("right_side", self.right_side)):
            if not 0 < val < math.pi:
                raise InvalidTriangle(f"{name} = {val} outside (0, pi)")

    def base_length(self) -> float:
        """Side opposite the apex, by the spherical law of cosines."""
        c = math.cos(self.left_side) * math.cos(self.right_side) \
            + math.sin(self.left_side) * math.sin(self.right_side) \
            * math.cos(self.apex_angle)
        return math.acos(max(-1.0, min(1.0, c)))


def _sphere_point(polar: float, azimuth: float) -> np.ndarray:
    return np.array([math.sin(polar) * math.cos(azimuth),
                     math.sin(polar) * math.sin(azimuth),
                     math.cos(polar)])


def sphere_distance(p, q) -> float:
    p, q = np.asarray(p), np.asarray(q)
    return math.atan2(float(np.linalg.norm(np.cross(p, q))),
                      float(np.dot(p, q)))


@dataclass(frozen=True)
class GalleryDevelopment:
    """Isometric development of a triangle fan onto the unit 2-sphere with
    the shared vertex at the north pole."""

    apex: tuple[float, float, float]
    boundary_vertices: tuple  # developed base vertices u_0 .. u_n
    sector_starts: tuple[float, ...]
    total_angle: float
    gamma_points: tuple
    segment_residuals: tuple[float, ...]
    exit_distance: float | None

    @property
    def injective_sectors(self) -> bool:
        return self.total_angle < 2 * math.pi + SPHERE_TOLERANCE

    def to_json(self) -> dict:
        return {
            "apex": list(self.apex),
            "boundary_vertices": [list(map(float, p))
                                  for p in self.boundary_vertices],
            "sector_starts": list(self.sector_starts),
            "total_angle": self.total_angle,
            "gamma_points": [list(map(float, p)) for p in self.gamma_points],
            "segment_residuals": list(self.segment_residuals),
            "exit_distance": self.exit_distance,
            "injective_sectors": self.injective_sectors,
        }


def develop_gallery(fan: list[SphericalTriangle],
                    gamma: list[tuple[int, float, float]] = ()) \
        -> GalleryDevelopment:
    """Develop a fan of spherical triangles sharing their apex vertex.

    Consecutive triangles must agree on the shared side through the apex.
    The apex goes to the north pole; triangle k occupies the azimuth
    sector starting at the sum of the previous apex angles.  Each gamma
    point is (triangle index, polar distance from the apex, local angle
    within that triangle's sector).
    """
    if not fan:
        raise InvalidTriangle("empty fan")
    for k in range(len(fan) - 1):
        if abs(fan[k].right_side - fan[k + 1].left_side) > SPHERE_TOLERANCE:
            raise InvalidTriangle(
                f"triangles {k} and {k + 1} disagree on the shared side")
    starts = [0.0]
    for tri in fan:
        starts.append(starts[-1] + tri.apex_angle)
    total = starts[-1]

    apex = (0.0, 0.0, 1.0)
    boundary = [_sphere_point(fan[0].left_side, starts[0])]
    for k, tri in enumerate(fan):
        boundary.append(_sphere_point(tri.right_side, starts[k + 1]))

    points = []
    flat = []  # (polar, absolute azimuth) for intrinsic comparison
    for idx, polar, local in gamma:
        if not 0 <= idx < len(fan):
            raise InvalidTriangle(f"gamma references triangle {idx}")
        if not -SPHERE_TOLERANCE <= local <= fan[idx].apex_angle + SPHERE_TOLERANCE:
            raise InvalidTriangle(
                f"gamma angle {local} outside triangle {idx}'s sector")
        if not 0 <= polar <= math.pi:
            raise InvalidTriangle(f"gamma polar distance {polar} invalid")
        az = starts[idx] + local
        points.append(_sphere_point(polar, az))
        flat.append((polar, az))

    residuals = []
    for (r1, t1), (r2, t2), p, q in zip(flat, flat[1:], points, points[1:]):
        c = math.cos(r1) * math.cos(r2) \
            + math.sin(r1) * math.sin(r2) * math.cos(t2 - t1)
        intrinsic = math.acos(max(-1.0, min(1.0, c)))
        residuals.append(abs(intrinsic - sphere_distance(p, q)))

    exit_distance = sphere_distance(points[0], points[-1]) if len(points) >= 2 \
        else None
    return GalleryDevelopment(apex, tuple(map(tuple, boundary)),
                              tuple(starts), total, tuple(map(tuple, points)),
                              tuple(residuals), exit_distance)
