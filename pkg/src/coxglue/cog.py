"""Complexes of groups over scwols.

The scwol order convention: chamber cells are minimal, deeper strata are
larger.  An edge a = (i(a), t(a)) runs from a deeper cell to a shallower
one (t(a) < i(a)), and psi_a injects the deeper local group into the
shallower one, matching the inclusions of boundary-stratum fundamental
groups into piece fundamental groups.

Composable pairs (a, b) satisfy t(b) = i(a); the composite ab has
i(ab) = i(b), t(ab) = t(a), and the compatibility condition reads
Ad(g_{a,b}) psi_{ab} = psi_a psi_b.  The cocycle condition checked is
psi_a(g_{b,c}) g_{a,bc} = g_{a,b} g_{ab,c}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .construction import Cell, GluedComplex
from .errors import NotSpanningTree
from .presentations import (Presentation, Rword, free_reduce, invert,
                            word_from_string)

# ---------------------------------------------------------------------------
# local group backends


def _perm_compose(p, q):
    return tuple(q[i] for i in p)


def _perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


class FiniteGroup:
    """Finite group backed by permutations (possibly the regular
    representation of a multiplication table)."""

    kind = "finite"
    enumerable = True

    def __init__(self, gens: dict[str, tuple[int, ...]], degree: int | None = None,
                 relators: list[str] | None = None,
                 center: list[str] | None = None, name: str = ""):
        self.name = name
        if gens:
            degrees = {len(p) for p in gens.values()}
            if len(degrees) != 1:
                raise ValueError("generator permutations must share a degree")
            degree = degrees.pop()
        elif degree is None:
            degree = 1
        self.degree = degree
        self.identity = tuple(range(degree))
        for gname, p in gens.items():
            if sorted(p) != list(range(degree)):
                raise ValueError(f"generator {gname!r} is not a permutation")
        self.gens = {gname: tuple(p) for gname, p in gens.items()}
        self.generator_names = tuple(sorted(self.gens))
        self._close()
        self.declared_relators = tuple(relators) if relators else None
        self._center_words = tuple(center) if center else ()
        for w in self._center_words:
            el = self.evaluate(word_from_string(w))
            if not self.is_central(el):
                raise ValueError(f"declared center element {w!r} is not central")

    @classmethod
    def trivial(cls, name: str = "1") -> "FiniteGroup":
        return cls({}, degree=1, name=name)

    @classmethod
    def from_table(cls, names: list[str], table: list[list[int]],
                   generators: list[str] | None = None,
                   relators: list[str] | None = None,
                   center: list[str] | None = None,
                   name: str = "") -> "FiniteGroup":
        """Build from a multiplication table (table[i][j] = index of x_i x_j);
        associativity, identity and inverses are validated."""
        n = len(names)
        if any(len(row) != n for row in table) or len(table) != n:
            raise ValueError("table must be square over the element list")
        ident = None
        for e in range(n):
            if all(table[e][j] == j and table[j][e] == j for j in range(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("table has no identity element")
        for i in range(n):
            if not any(table[i][j] == ident for j in range(n)):
                raise ValueError(f"element {names[i]!r} has no inverse")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if table[table[i][j]][k] != table[i][table[j][k]]:
                        raise ValueError("table is not associative")
        if ident != 0:
            raise ValueError("identity must be the first element of the table")
        # right-regular representation: g acts by x -> x g
        gen_names = generators if generators is not None else \
            [names[i] for i in range(n) if i != ident]
        gens = {}
        for gname in gen_names:
            g = names.index(gname)
            gens[gname] = tuple(table[x][g] for x in range(n))
        return cls(gens, relators=relators, center=center, name=name or "table")

    def _close(self):
        elements = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.gens.values():
                    q = _perm_compose(p, g)
                    if q not in elements:
                        elements.add(q)
                        nxt.append(q)
            frontier = nxt
        self.elements = frozenset(elements)
        # BFS factorization into declared generators
        words = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for p in frontier:
                for gname in self.generator_names:
                    q = _perm_compose(p, self.gens[gname])
                    if q not in words:
                        words[q] = words[p] + ((gname, 1),)
                        nxt.append(q)
            frontier = nxt
        self._factorization = words

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def op(self, a, b):
        return _perm_compose(a, b)

    def inv(self, a):
        return _perm_inverse(a)

    def evaluate(self, word: Rword):
        out = self.identity
        for sym, e in word:
            p = self.gens[sym]
            out = _perm_compose(out, p if e == 1 else _perm_inverse(p))
        return out

    def factor(self, el) -> Rword:
        return self._factorization[el]

    def is_central(self, el) -> bool:
        return all(_perm_compose(el, g) == _perm_compose(g, el)
                   for g in self.gens.values())

    def center_elements(self) -> frozenset:
        return frozenset(el for el in self.elements if self.is_central(el))

    def declared_center(self) -> list[tuple[str, tuple]]:
        return [(w, self.evaluate(word_from_string(w))) for w in self._center_words]

    center_unverified = False

    def presentation(self) -> Presentation:
        if self.declared_relators is not None:
            rels = tuple(word_from_string(r) for r in self.declared_relators)
            return Presentation(self.generator_names, rels)
        # fallback: one symbol per non-identity element, table relators
        syms = self._element_symbols()
        rels = []
        for a in self.elements:
            for b in self.elements:
                c = self.op(a, b)
                word = []
                for el in (a, b):
                    if el != self.identity:
                        word.append((syms[el], 1))
                if c != self.identity:
                    word.append((syms[c], -1))
                rel = free_reduce(tuple(word))
                if rel:
                    rels.append(rel)
        gens = tuple(sorted(syms.values()))
        return Presentation(gens, tuple(sorted(set(rels))))

    def _element_symbols(self) -> dict:
        ordered = sorted(self.elements - {self.identity})
        return {el: f"x{i}" for i, el in enumerate(ordered)}

    def generator_elements(self) -> dict:
        """Presentation generator symbol -> group element."""
        if self.declared_relators is not None:
            return {g: self.gens[g] for g in self.generator_names}
        return {sym: el for el, sym in self._element_symbols().items()}

    def element_to_word(self, el) -> Rword:
        """Express an element as a word over the presentation generators."""
        if self.declared_relators is not None:
            return self.factor(el)
        if el == self.identity:
            return ()
        return ((self._element_symbols()[el], 1),)


class FreeAbelian:
    """Free abelian group of finite rank; elements are integer vectors."""

    kind = "free_abelian"
    enumerable = False  # infinite, but images of finite index are handled

    def __init__(self, rank: int, center: list[list[int]] | None = None,
                 name: str = ""):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        self.rank = rank
        self.name = name
        self.identity = (0,) * rank
        self._center_vectors = tuple(tuple(v) for v in (center or []))
        for v in self._center_vectors:
            if len(v) != rank:
                raise ValueError("center vector has wrong length")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    def op(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def is_central(self, el) -> bool:
        return True

    def declared_center(self) -> list[tuple[str, tuple]]:
        out = []
        for v in self._center_vectors:
            label = "(" + ",".join(str(x) for x in v) + ")"
            out.append((label, v))
        return out

    center_unverified = False

    def generator_names_list(self):
        return [f"x{i}" for i in range(self.rank)]

    def presentation(self) -> Presentation:
        gens = tuple(self.generator_names_list())
        rels = []
        for i, j in combinations(range(self.rank), 2):
            a, b = gens[i], gens[j]
            rels.append(((a, 1), (b, 1), (a, -1), (b, -1)))
        return Presentation(gens, tuple(rels))

    def generator_elements(self) -> dict:
        out = {}
        for i, g in enumerate(self.generator_names_list()):
            v = [0] * self.rank
            v[i] = 1
            out[g] = tuple(v)
        return out

    def element_to_word(self, el) -> Rword:
        word = []
        for i, k in enumerate(el):
            if k:
                word.extend([(f"x{i}", 1 if k > 0 else -1)] * abs(k))
        return tuple(word)

    def evaluate(self, word: Rword):
        v = [0] * self.rank
        for sym, e in word:
            v[int(sym[1:])] += e
        return tuple(v)


class FormalPresentation:
    """Group given by a finite presentation; no word problem is attempted."""

    kind = "formal"
    enumerable = False

    def __init__(self, generators: list[str], relators: list[str],
                 center: list[str] | None = None, name: str = ""):
        self.name = name
        rels = tuple(word_from_string(r) for r in relators)
        self._presentation = Presentation(tuple(generators), rels)
        self.identity = ()
        self._center_words = tuple(center or ())
        self.center_unverified = not all(
            self._syntactically_central(word_from_string(w))
            for w in self._center_words)

    @property
    def is_trivial(self) -> bool:
        return not self._presentation.generators and not self._center_words

    def _syntactically_central(self, word: Rword) -> bool:
        """True only for single generators with explicit commutator relators
        against every other generator."""
        word = free_reduce(word)
        if len(word) != 1:
            return False
        g = word[0][0]
        rels = {free_reduce(r) for r in self._presentation.relators}
        rels |= {invert(r) for r in rels}
        canon = set()
        for r in rels:
            for k in range(len(r)):
                canon.add(r[k:] + r[:k])
        for h in self._presentation.generators:
            if h == g:
                continue
            comm = ((g, 1), (h, 1), (g, -1), (h, -1))
            if comm not in canon:
                return False
        return True

    def op(self, a: Rword, b: Rword) -> Rword:
        return free_reduce(tuple(a) + tuple(b))

    def inv(self, a: Rword) -> Rword:
        return invert(a)

    def declared_center(self) -> list[tuple[str, Rword]]:
        return [(w, word_from_string(w)) for w in self._center_words]

    def presentation(self) -> Presentation:
        return self._presentation

    def generator_elements(self) -> dict:
        return {g: ((g, 1),) for g in self._presentation.generators}

    def element_to_word(self, el: Rword) -> Rword:
        return free_reduce(el)

    def evaluate(self, word: Rword) -> Rword:
        return free_reduce(word)


LocalGroup = FiniteGroup | FreeAbelian | FormalPresentation


def try_equal(group: LocalGroup, a, b) -> bool | None:
    """Equality in the group; None when undecidable (formal backends)."""
    if group.kind == "formal":
        return True if free_reduce(a) == free_reduce(b) else None
    return a == b


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class Hom:
    """Homomorphism given by images of the domain's declared generators."""

    domain: LocalGroup
    codomain: LocalGroup
    images: dict  # domain generator symbol -> codomain element

    def __post_init__(self):
        expected = set(self.domain.generator_elements())
        if set(self.images) != expected:
            raise ValueError(
                f"hom images must cover generators {sorted(expected)}")

    @classmethod
    def trivial(cls, domain: LocalGroup, codomain: LocalGroup) -> "Hom":
        if not domain.is_trivial:
            raise ValueError("trivial hom requires a trivial domain")
        return cls(domain, codomain, {})

    @classmethod
    def from_matrix(cls, domain: FreeAbelian, codomain: FreeAbelian,
                    matrix: list[list[int]]) -> "Hom":
        """Integer matrix with one column per domain generator."""
        if len(matrix) != codomain.rank or any(len(r) != domain.rank for r in matrix):
            raise ValueError("matrix shape must be codomain.rank x domain.rank")
        images = {}
        for j, g in enumerate(domain.generator_names_list()):
            images[g] = tuple(matrix[i][j] for i in range(codomain.rank))
        return cls(domain, codomain, images)

    def apply_word(self, word: Rword):
        """Image of a word over the domain's declared generators."""
        out = self.codomain.identity
        for sym, e in word:
            img = self.images[sym]
            out = self.codomain.op(out, img if e == 1 else self.codomain.inv(img))
        return out

    def apply(self, el):
        """Image of a domain element (domain must be factorizable)."""
        if self.domain.kind == "finite":
            return self.apply_word(self.domain.factor(el))
        if self.domain.kind == "free_abelian":
            return self.apply_word(self.domain.element_to_word(el))
        return self.apply_word(el)

    def matrix(self) -> list[list[int]]:
        if not (self.domain.kind == "free_abelian"
                and self.codomain.kind == "free_abelian"):
            raise ValueError("matrix form only for free abelian homs")
        cols = [self.images[g] for g in self.domain.generator_names_list()]
        return [[cols[j][i] for j in range(self.domain.rank)]
                for i in range(self.codomain.rank)]

    def image_elements(self) -> frozenset:
        if self.domain.kind != "finite" or self.codomain.kind != "finite":
            raise ValueError("image enumeration requires finite backends")
        out = {self.codomain.identity}
        frontier = [self.codomain.identity]
        gens = [self.images[g] for g in self.domain.generator_names]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = self.codomain.op(p, g)
                    if q not in out:
                        out.add(q)
                        nxt.append(q)
            frontier = nxt
        return frozenset(out)

    def is_injective(self) -> bool | None:
        """True/False where decidable, None otherwise."""
        if self.domain.is_trivial:
            return True
        if self.domain.kind == "finite" and self.codomain.kind == "finite":
            return len(self.image_elements()) == self.domain.order
        if self.domain.kind == "free_abelian" and self.codomain.kind == "free_abelian":
            from .presentations import smith_normal_form
            diag = smith_normal_form(self.matrix())
            return len([d for d in diag if d != 0]) == self.domain.rank
        return None

    def is_well_defined(self) -> bool | None:
        """Relators of the domain map to the identity, where decidable."""
        if self.domain.is_trivial:
            return True
        if self.codomain.kind == "formal":
            return None
        if self.domain.kind == "finite":
            # exact: check multiplicativity on all pairs via factorization
            for a in self.domain.elements:
                for b in self.domain.elements:
                    lhs = self.codomain.op(self.apply(a), self.apply(b))
                    if lhs != self.apply(self.domain.op(a, b)):
                        return False
            return True
        if self.domain.kind == "free_abelian":
            if self.codomain.kind == "free_abelian":
                return True
            # images must commute pairwise
            imgs = list(self.images.values())
            for x, y in combinations(imgs, 2):
                if self.codomain.op(x, y) != self.codomain.op(y, x):
                    return False
            return True
        return None


# ---------------------------------------------------------------------------
# scwols and complexes of groups

# An edge is (i(a), t(a), tag) with t(a) < i(a); the tag distinguishes
# parallel edges (e.g. a 1-cell attached to one 0-cell at both ends).
Edge = tuple[str, str, int]


class Scwol:
    """Vertices plus directed edges running down a strict partial order.

    Poset mode: pass `order` as strict pairs (lower, upper); edges are all
    strict pairs of the transitive closure.  Explicit mode: pass `edges`
    as (i, t) pairs, duplicates allowed; composites must exist and, when
    parallel edges make them ambiguous, be named in `composition` keyed by
    ((i_a, t_a, tag_a), (i_b, t_b, tag_b)).
    """

    def __init__(self, vertices: list[str], order=None, edges=None,
                 composition: dict | None = None):
        self.vertices = tuple(sorted(vertices))
        vs = set(self.vertices)
        if (order is None) == (edges is None):
            raise ValueError("pass exactly one of order= or edges=")
        if order is not None:
            closure = set(order)
            changed = True
            while changed:
                changed = False
                for a, b in list(closure):
                    for c, d in list(closure):
                        if b == c and (a, d) not in closure:
                            closure.add((a, d))
                            changed = True
            for a, b in closure:
                if a not in vs or b not in vs:
                    raise ValueError(f"order pair ({a}, {b}) uses unknown vertices")
                if a == b or (b, a) in closure:
                    raise ValueError("order relation is not a strict partial order")
            # edge (i, t): from the larger vertex i down to the smaller t
            edge_pairs = sorted((b, a) for a, b in closure)
        else:
            edge_pairs = [tuple(e) for e in edges]
            for i, t in edge_pairs:
                if i not in vs or t not in vs:
                    raise ValueError(f"edge ({i}, {t}) uses unknown vertices")
                if i == t:
                    raise ValueError("scwol edges cannot be loops")
            # the relation t < i must close to a strict partial order
            closure = set((t, i) for i, t in edge_pairs)
            changed = True
            while changed:
                changed = False
                for a, b in list(closure):
                    for c, d in list(closure):
                        if b == c and (a, d) not in closure:
                            closure.add((a, d))
                            changed = True
            for a, b in closure:
                if (b, a) in closure:
                    raise ValueError("edge relation has a cycle")
        self.order = frozenset(closure)
        tagged = []
        seen: dict[tuple[str, str], int] = {}
        for i, t in sorted(edge_pairs):
            k = seen.get((i, t), 0)
            seen[(i, t)] = k + 1
            tagged.append((i, t, k))
        self.edges: tuple[Edge, ...] = tuple(tagged)
        self._by_pair: dict[tuple[str, str], list[Edge]] = {}
        for e in self.edges:
            self._by_pair.setdefault((e[0], e[1]), []).append(e)
        # resolve composites for every composable pair
        composition = dict(composition or {})
        self._composites: dict[tuple[Edge, Edge], Edge] = {}
        for b in self.edges:
            for a in self.edges:
                if b[1] != a[0]:
                    continue
                candidates = self._by_pair.get((b[0], a[1]), [])
                if (a, b) in composition:
                    ab = tuple(composition[(a, b)])
                    if ab not in candidates:
                        raise ValueError(
                            f"declared composite of {a}, {b} is not an edge "
                            f"from {b[0]} to {a[1]}")
                elif len(candidates) == 1:
                    ab = candidates[0]
                elif not candidates:
                    raise ValueError(
                        f"composable pair ({a}, {b}) has no composite edge")
                else:
                    raise ValueError(
                        f"composite of ({a}, {b}) is ambiguous; declare it "
                        f"in composition=")
                self._composites[(a, b)] = ab

    def lt(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def composable_pairs(self) -> tuple[tuple[Edge, Edge], ...]:
        """Pairs (a, b) with t(b) = i(a); composite ab runs i(b) -> t(a)."""
        return tuple(sorted(self._composites))

    def compose(self, a: Edge, b: Edge) -> Edge:
        try:
            return self._composites[(a, b)]
        except KeyError:
            raise ValueError("edges are not composable") from None

    def skeleton_components(self, edges) -> int:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, t, _tag in edges:
            ri, rt = find(i), find(t)
            if ri != rt:
                parent[ri] = rt
        return len({find(v) for v in self.vertices})


@dataclass
class ValidationEntry:
    condition: str
    location: tuple
    status: str      # "pass" | "fail" | "undecidable"
    detail: str = ""


class ComplexOfGroups:
    """Scwol plus local groups, edge monomorphisms and twisting elements."""

    def __init__(self, scwol: Scwol, groups: dict[str, LocalGroup],
                 psi: dict[Edge, Hom],
                 twist: dict[tuple[Edge, Edge], object] | None = None,
                 cell_info: dict[str, Cell] | None = None,
                 mx=None):
        if set(groups) != set(scwol.vertices):
            raise ValueError("groups must cover every scwol vertex")
        if set(psi) != set(scwol.edges):
            raise ValueError("psi must cover every scwol edge")
        for a, hom in psi.items():
            if hom.domain is not groups[a[0]] or hom.codomain is not groups[a[1]]:
                raise ValueError(f"psi for edge {a} has mismatched groups")
        self.scwol = scwol
        self.groups = groups
        self.psi = psi
        self.twist = dict(twist or {})
        for pair in scwol.composable_pairs():
            if pair not in self.twist:
                a, _b = pair
                self.twist[pair] = groups[a[1]].identity
        self.cell_info = cell_info or {}
        self.mx = mx

    def is_simple(self) -> bool:
        """True iff every twisting element is the identity."""
        for (a, _b), g in self.twist.items():
            group = self.groups[a[1]]
            eq = try_equal(group, g, group.identity)
            if eq is not True:
                return False
        return True

    def chamber_vertices(self) -> tuple[str, ...]:
        if not self.cell_info or self.mx is None:
            raise ValueError("no cell metadata attached")
        return tuple(sorted(
            v for v, c in self.cell_info.items()
            if self.mx.complex.strata[c.stratum].codim == 0))


def validate(cog: ComplexOfGroups) -> list[ValidationEntry]:
    """Check injectivity, well-definedness, edge compatibility and the
    cocycle condition; logical failures become report entries."""
    report = []
    for a in cog.scwol.edges:
        hom = cog.psi[a]
        for cond, result in (("psi_injective", hom.is_injective()),
                             ("psi_well_defined", hom.is_well_defined())):
            status = "undecidable" if result is None else \
                ("pass" if result else "fail")
            report.append(ValidationEntry(cond, (a,), status))

    pairs = cog.scwol.composable_pairs()
    for a, b in pairs:
        ab = cog.scwol.compose(a, b)
        g = cog.twist[(a, b)]
        group = cog.groups[a[1]]
        hom_a, hom_b, hom_ab = cog.psi[a], cog.psi[b], cog.psi[ab]
        statuses = []
        for sym, el in cog.groups[b[0]].generator_elements().items():
            lhs = group.op(group.op(g, hom_ab.apply(el)), group.inv(g))
            rhs = hom_a.apply(hom_b.apply(el))
            statuses.append(try_equal(group, lhs, rhs))
        if cog.groups[b[0]].is_trivial:
            statuses.append(True)
        if any(s is False for s in statuses):
            status = "fail"
        elif any(s is None for s in statuses):
            status = "undecidable"
        else:
            status = "pass"
        report.append(ValidationEntry("edge_compatibility", (a, b), status))

    for a, b in pairs:
        for b2, c in pairs:
            if b2 != b:
                continue
            # chain: c then b then a
            ab = cog.scwol.compose(a, b)
            bc = cog.scwol.compose(b, c)
            group = cog.groups[a[1]]
            lhs = group.op(cog.psi[a].apply(cog.twist[(b, c)]),
                           cog.twist[(a, bc)])
            rhs = group.op(cog.twist[(a, b)], cog.twist[(ab, c)])
            eq = try_equal(group, lhs, rhs)
            status = "pass" if eq else ("undecidable" if eq is None else "fail")
            report.append(ValidationEntry("cocycle", (a, b, c), status))
    return report


def from_gluing(u: GluedComplex, assignment: dict[str, LocalGroup],
                maps: dict[tuple[str, str], Hom]) -> ComplexOfGroups:
    """Simple complex of groups over the cells of a glued complex.

    `assignment` gives a local group per stratum type of X; `maps` gives,
    for each strict face pair (deeper stratum, shallower stratum), the
    monomorphism between the assigned groups.  Trivial-domain maps may be
    omitted; all twisting elements are the identity.
    """
    if u.mx is None:
        raise ValueError("from_gluing requires a complex over a mirrored space")
    strata = u.mx.complex
    missing = set(strata.strata) - set(assignment)
    if missing:
        raise ValueError(f"assignment misses strata: {sorted(missing)}")

    def vid(cell: Cell) -> str:
        w = ".".join(str(i) for i in cell.rep) if cell.rep else "e"
        return f"{cell.stratum}|{w}"

    vertices = [vid(c) for c in u.cells]
    cell_info = {vid(c): c for c in u.cells}
    order = set()
    for c in u.cells:
        for fk in u.faces[c.key()]:
            face_cell = u.cell_by_key(fk)
            order.add((vid(c), vid(face_cell)))  # shallower < deeper
    scwol = Scwol(vertices, order)

    groups = {v: assignment[cell_info[v].stratum] for v in vertices}
    psi = {}
    for a in scwol.edges:
        up, lo = a[0], a[1]
        s_up, s_lo = cell_info[up].stratum, cell_info[lo].stratum
        key = (s_up, s_lo)
        if key in maps:
            hom = maps[key]
        elif assignment[s_up].is_trivial:
            hom = Hom.trivial(assignment[s_up], assignment[s_lo])
        else:
            raise ValueError(f"no map declared for face pair {key}")
        if hom.domain is not assignment[s_up] or hom.codomain is not assignment[s_lo]:
            raise ValueError(f"map for {key} has mismatched groups")
        inj = hom.is_injective()
        if inj is False:
            raise ValueError(f"declared map for {key} is not injective")
        psi[a] = hom
    return ComplexOfGroups(scwol, groups, psi, cell_info=cell_info, mx=u.mx)


def pi1_presentation(cog: ComplexOfGroups, tree) -> Presentation:
    """Presentation of the fundamental group: local-group generators plus
    one generator per edge, with the standard relator families and the
    spanning-tree edges killed."""
    tree = {tuple(e) for e in tree}
    edges = set(cog.scwol.edges)
    if not tree <= edges:
        raise NotSpanningTree("tree contains non-edges")
    n = len(cog.scwol.vertices)
    if len(tree) != n - 1 or cog.scwol.skeleton_components(tree) != 1:
        raise NotSpanningTree("edge set is not a spanning tree of the 1-skeleton")

    vindex = {v: i for i, v in enumerate(cog.scwol.vertices)}
    eindex = {a: i for i, a in enumerate(cog.scwol.edges)}

    def esym(a: Edge) -> str:
        return f"e{eindex[a]}"

    local_pres = {v: cog.groups[v].presentation() for v in cog.scwol.vertices}
    sym_map = {}   # (vertex, local symbol) -> global symbol
    generators = []
    for v in cog.scwol.vertices:
        for i, g in enumerate(local_pres[v].generators):
            sym = f"v{vindex[v]}_g{i}"
            sym_map[(v, g)] = sym
            generators.append(sym)
    for a in cog.scwol.edges:
        generators.append(esym(a))

    def lift(v: str, word: Rword) -> Rword:
        return tuple((sym_map[(v, s)], e) for s, e in word)

    relators = []
    # a) local relators
    for v in cog.scwol.vertices:
        for rel in local_pres[v].relators:
            relators.append(lift(v, rel))
    # b) edge conjugation: psi_a(h) = a^-1 h a
    for a in cog.scwol.edges:
        up, lo = a[0], a[1]
        hom = cog.psi[a]
        for sym, el in cog.groups[up].generator_elements().items():
            image_word = cog.groups[lo].element_to_word(hom.apply(el))
            rel = ((esym(a), -1), (sym_map[(up, sym)], 1), (esym(a), 1)) \
                + invert(lift(lo, image_word))
            relators.append(free_reduce(rel))
    # c) composition: ab = b a g_{a,b}
    for a, b in cog.scwol.composable_pairs():
        ab = cog.scwol.compose(a, b)
        gword = cog.groups[a[1]].element_to_word(cog.twist[(a, b)])
        rel = ((esym(ab), -1), (esym(b), 1), (esym(a), 1)) + lift(a[1], gword)
        relators.append(free_reduce(rel))
    # d) tree edges die
    for a in sorted(tree):
        relators.append(((esym(a), 1),))

    relators = [r for r in (free_reduce(r) for r in relators) if r]
    return Presentation(tuple(generators), tuple(relators))


def spanning_trees(scwol: Scwol):
    """All spanning trees of the 1-skeleton (small scwols only)."""
    edges = scwol.edges
    n = len(scwol.vertices)
    for subset in combinations(edges, n - 1):
        if scwol.skeleton_components(subset) == 1:
            yield subset


def first_spanning_tree(scwol: Scwol) -> tuple[Edge, ...]:
    for tree in spanning_trees(scwol):
        return tree
    raise NotSpanningTree("scwol 1-skeleton is disconnected")
