"""Small abstract simplicial complexes with labeled vertices."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertex labels plus a face-closed set of nonempty simplices.

    Simplices are frozensets of vertex labels.  Isolated vertices are
    allowed: a vertex need not appear in any simplex.
    """

    vertices: tuple
    simplices: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(self.vertices) != len(vs):
            raise ValueError("duplicate vertex labels")
        for sx in self.simplices:
            if not sx:
                raise ValueError("empty simplex")
            if not sx <= vs:
                raise ValueError(f"simplex {set(sx)} uses unknown vertices")

    @staticmethod
    def closure(vertices, simplices) -> "SimplicialComplex":
        """Build a complex by closing the given simplices under faces."""
        closed = set()
        for sx in simplices:
            sx = frozenset(sx)
            for k in range(1, len(sx) + 1):
                for face in combinations(sorted(sx, key=repr), k):
                    closed.add(frozenset(face))
        return SimplicialComplex(tuple(vertices), frozenset(closed))

    def is_face_closed(self) -> bool:
        for sx in self.simplices:
            if len(sx) > 1:
                for v in sx:
                    if sx - {v} not in self.simplices:
                        return False
        return True

    def edges(self) -> set[frozenset]:
        return {sx for sx in self.simplices if len(sx) == 2}

    def dimension(self) -> int:
        return max((len(sx) for sx in self.simplices), default=0) - 1

    def maximal_simplices(self) -> set[frozenset]:
        return {sx for sx in self.simplices
                if not any(sx < other for other in self.simplices)}

    def link(self, sx) -> "SimplicialComplex":
        sx = frozenset(sx)
        link_simplices = {other - sx for other in self.simplices
                          if sx < other and (other - sx)}
        verts = sorted({v for t in link_simplices for v in t}, key=repr)
        return SimplicialComplex(tuple(verts), frozenset(link_simplices))

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.simplices


def find_isomorphism(a: SimplicialComplex, b: SimplicialComplex):
    """Explicit isomorphism search: a vertex bijection carrying simplices of
    `a` exactly onto simplices of `b`, or None.  Brute force with degree
    pruning; intended for the small complexes that arise as links/nerves."""
    if len(a.vertices) != len(b.vertices) or len(a.simplices) != len(b.simplices):
        return None

    def profile(c, v):
        return tuple(sorted(
            len(sx) for sx in c.simplices if v in sx))

    prof_a = {v: profile(a, v) for v in a.vertices}
    prof_b = {v: profile(b, v) for v in b.vertices}
    if sorted(prof_a.values()) != sorted(prof_b.values()):
        return None

    b_simplices = b.simplices
    order = sorted(a.vertices, key=repr)

    def backtrack(k, mapping, used):
        if k == len(order):
            return dict(mapping)
        v = order[k]
        for w in b.vertices:
            if w in used or prof_a[v] != prof_b[w]:
                continue
            mapping[v] = w
            ok = True
            for sx in a.simplices:
                if all(x in mapping for x in sx):
                    if frozenset(mapping[x] for x in sx) not in b_simplices:
                        ok = False
                        break
            if ok:
                used.add(w)
                result = backtrack(k + 1, mapping, used)
                if result is not None:
                    return result
                used.discard(w)
            del mapping[v]
        return None

    return backtrack(0, {}, set())
