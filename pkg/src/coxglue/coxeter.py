"""Coxeter systems: matrices, the word problem, spherical subsets, nerves.

Words are tuples of generator indices.  The word problem is solved by
exhaustive braid-move search (memoized), which is exact and needs no
numeric root systems.  Finiteness of standard parabolic subgroups is
decided by matching Coxeter diagram components against the finite-type
classification; the cosine (Gram) matrix is kept as a numeric cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import CapExceeded, GeneratorIndexError
from .simplicial import SimplicialComplex

Word = tuple[int, ...]

INFINITY = 0  # file/matrix encoding of an infinite bond


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric integer matrix with m(s,s)=1 and m(s,t)>=2 or 0 (infinity)."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueError("Coxeter matrix must be square")
        for i in range(n):
            if self.entries[i][i] != 1:
                raise ValueError("diagonal entries must be 1")
            for j in range(n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if i != j and self.entries[i][j] == 1:
                    raise ValueError("off-diagonal entries must be >= 2 or 0")
                if self.entries[i][j] < 0:
                    raise ValueError("entries must be nonnegative")

    @property
    def size(self) -> int:
        return len(self.entries)

    def bond(self, i: int, j: int) -> int:
        """m(i,j); 0 encodes infinity."""
        return self.entries[i][j]


def _alternating(a: int, b: int, length: int) -> Word:
    return tuple(a if k % 2 == 0 else b for k in range(length))


class CoxeterSystem:
    """A Coxeter system (W, S) with named generators.

    Immutable after construction apart from internal memo tables, which are
    only ever appended to; all operations are pure functions of the input.
    """

    def __init__(self, matrix: CoxeterMatrix, names: list[str] | None = None):
        self.matrix = matrix
        n = matrix.size
        if names is None:
            names = [f"s{i}" for i in range(n)]
        if len(names) != n or len(set(names)) != n:
            raise ValueError("generator names must be distinct and match the matrix size")
        self.names = tuple(names)
        self.index = {name: i for i, name in enumerate(names)}
        self._nf_memo: dict[Word, Word] = {(): ()}
        # Braid moves: (pattern, replacement) pairs for each finite bond.
        self._moves = []
        for i in range(n):
            for j in range(i + 1, n):
                m = matrix.bond(i, j)
                if m != INFINITY:
                    self._moves.append((_alternating(i, j, m), _alternating(j, i, m)))
                    self._moves.append((_alternating(j, i, m), _alternating(i, j, m)))

    @property
    def rank(self) -> int:
        return self.matrix.size

    # -- word problem ------------------------------------------------------

    def check_word(self, w: Word) -> Word:
        w = tuple(w)
        for x in w:
            if not (0 <= x < self.rank):
                raise GeneratorIndexError(f"generator index {x} out of range")
        return w

    def _braid_closure(self, w: Word) -> set[Word]:
        seen = {w}
        stack = [w]
        while stack:
            u = stack.pop()
            for pattern, repl in self._moves:
                m = len(pattern)
                for p in range(len(u) - m + 1):
                    if u[p:p + m] == pattern:
                        v = u[:p] + repl + u[p + m:]
                        if v not in seen:
                            seen.add(v)
                            stack.append(v)
        return seen

    def is_reduced(self, w: Word) -> bool:
        """True iff no braid-move rewriting of w has two equal adjacent letters."""
        w = self.check_word(w)
        if w in self._nf_memo:
            return self._nf_memo[w] == w
        for u in self._braid_closure(w):
            if any(u[k] == u[k + 1] for k in range(len(u) - 1)):
                return False
        return True

    def normal_form(self, w: Word) -> Word:
        """ShortLex-least reduced word representing the same element."""
        w = self.check_word(w)
        orig = w
        while True:
            if w in self._nf_memo:
                nf = self._nf_memo[w]
                break
            closure = self._braid_closure(w)
            cancelled = None
            for u in closure:
                for k in range(len(u) - 1):
                    if u[k] == u[k + 1]:
                        cancelled = u[:k] + u[k + 2:]
                        break
                if cancelled is not None:
                    break
            if cancelled is not None:
                w = cancelled
                continue
            nf = min(closure)
            for u in closure:
                self._nf_memo[u] = nf
            break
        self._nf_memo[orig] = nf
        return nf

    def mult(self, u: Word, v: Word) -> Word:
        return self.normal_form(tuple(u) + tuple(v))

    def length(self, w: Word) -> int:
        return len(self.normal_form(w))

    def equal(self, u: Word, v: Word) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    # -- parabolic subgroups ----------------------------------------------

    def to_indices(self, T) -> frozenset[int]:
        out = set()
        for t in T:
            if isinstance(t, str):
                if t not in self.index:
                    raise GeneratorIndexError(f"unknown generator {t!r}")
                out.add(self.index[t])
            else:
                if not (0 <= t < self.rank):
                    raise GeneratorIndexError(f"generator index {t} out of range")
                out.add(t)
        return frozenset(out)

    def is_spherical(self, T) -> bool:
        """True iff the standard parabolic W_T is finite (diagram classification)."""
        return self._is_spherical(self.to_indices(T))

    def _is_spherical(self, T: frozenset[int]) -> bool:
        remaining = set(T)
        while remaining:
            comp = self._component(remaining)
            remaining -= comp
            if not self._component_finite(comp):
                return False
        return True

    def _component(self, vertices: set[int]) -> set[int]:
        start = next(iter(vertices))
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in vertices:
                if j not in comp and self.matrix.bond(i, j) != 2:
                    comp.add(j)
                    stack.append(j)
        return comp

    def _component_finite(self, comp: set[int]) -> bool:
        n = len(comp)
        edges = []
        for i, j in combinations(sorted(comp), 2):
            m = self.matrix.bond(i, j)
            if m == INFINITY:
                return False
            if m >= 3:
                edges.append((i, j, m))
        if len(edges) != n - 1:
            return False  # a connected non-tree diagram is at best affine
        degree = {i: 0 for i in comp}
        for i, j, _ in edges:
            degree[i] += 1
            degree[j] += 1
        marked = [(i, j, m) for i, j, m in edges if m > 3]
        branch = [i for i in comp if degree[i] >= 3]
        if any(degree[i] >= 4 for i in comp):
            return False
        if len(branch) >= 2 or (branch and marked):
            return False
        if branch:
            # tree with a single degree-3 vertex: D_n or E_6, E_7, E_8
            legs = sorted(self._leg_lengths(comp, edges, branch[0]))
            p, q, r = legs
            if p == 1 and q == 1:
                return True
            return p == 1 and q == 2 and r in (2, 3, 4)
        # path
        if not marked:
            return True  # A_n
        if len(marked) > 1:
            return False
        i, j, m = marked[0]
        if n == 2:
            return True  # I_2(m)
        endpoints = {v for v in comp if degree[v] == 1}
        at_end = i in endpoints or j in endpoints
        if m == 4:
            if at_end:
                return True  # B_n
            return n == 4  # F_4 has the marked edge in the middle
        if m == 5:
            return at_end and n in (3, 4)  # H_3, H_4
        return False

    def _leg_lengths(self, comp, edges, center) -> list[int]:
        adj = {i: set() for i in comp}
        for i, j, _ in edges:
            adj[i].add(j)
            adj[j].add(i)
        lengths = []
        for start in adj[center]:
            count = 0
            prev, cur = center, start
            while True:
                count += 1
                nxt = adj[cur] - {prev}
                if not nxt:
                    break
                prev, cur = cur, next(iter(nxt))
            lengths.append(count)
        return lengths

    def gram_matrix(self, T) -> np.ndarray:
        """Cosine matrix: entry -cos(pi/m(s,t)), -1 for infinite bonds."""
        idx = sorted(self.to_indices(T))
        k = len(idx)
        g = np.ones((k, k))
        for a in range(k):
            for b in range(k):
                if a == b:
                    continue
                m = self.matrix.bond(idx[a], idx[b])
                g[a, b] = -1.0 if m == INFINITY else -math.cos(math.pi / m)
        return g

    def subgroup_elements(self, T) -> tuple[Word, ...]:
        """All elements of the (finite) standard parabolic W_T, in normal form."""
        idx = self.to_indices(T)
        if not self._is_spherical(idx):
            raise ValueError("subgroup enumeration requires a spherical subset")
        return self._subgroup_elements_cached(idx)

    @lru_cache(maxsize=None)
    def _subgroup_elements_cached(self, idx: frozenset[int]) -> tuple[Word, ...]:
        seen = {()}
        frontier = [()]
        while frontier:
            nxt = []
            for w in frontier:
                for s in idx:
                    u = self.normal_form(w + (s,))
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return tuple(sorted(seen, key=lambda u: (len(u), u)))

    def coset_min(self, w: Word, T) -> Word:
        """ShortLex-least element of the coset w W_T (distinguished representative)."""
        idx = self.to_indices(T)
        w = self.normal_form(w)
        changed = True
        while changed:
            changed = False
            for s in sorted(idx):
                u = self.normal_form(w + (s,))
                if len(u) < len(w):
                    w = u
                    changed = True
        return w

    # -- global enumeration ------------------------------------------------

    def ball(self, radius: int, cap: int = 100000) -> "BallResult":
        """All elements of word length <= radius, in normal form.

        Raises CapExceeded if more than `cap` elements are found.  The
        result is flagged complete when the sphere enumeration terminated
        before the radius was reached (i.e. the whole group was seen).
        """
        if radius < 0:
            raise ValueError("radius must be >= 0")
        seen = {()}
        frontier = [()]
        depth = 0
        complete = False
        while frontier and depth < radius:
            nxt = []
            for w in frontier:
                for s in range(self.rank):
                    u = self.normal_form(w + (s,))
                    if len(u) == len(w) + 1 and u not in seen:
                        seen.add(u)
                        nxt.append(u)
                        if len(seen) > cap:
                            raise CapExceeded(
                                f"ball enumeration exceeded cap {cap}")
            frontier = nxt
            depth += 1
        if not frontier:
            complete = True
        elif depth == radius:
            # probe one more sphere so saturation at exactly `radius` is seen
            complete = not any(
                len(self.normal_form(w + (s,))) == len(w) + 1
                for w in frontier for s in range(self.rank))
        words = tuple(sorted(seen, key=lambda u: (len(u), u)))
        return BallResult(words=words, complete=complete, radius=radius)

    def enumerate_ball(self, radius: int, cap: int = 100000) -> set[Word]:
        return set(self.ball(radius, cap).words)

    def nerve(self) -> SimplicialComplex:
        """L(W,S): vertices S, simplices the nonempty spherical subsets."""
        simplices = set()
        for k in range(1, self.rank + 1):
            for T in combinations(range(self.rank), k):
                if self._is_spherical(frozenset(T)):
                    simplices.add(frozenset(self.names[i] for i in T))
        return SimplicialComplex(vertices=self.names, simplices=frozenset(simplices))

    def word_name(self, w: Word) -> str:
        return ".".join(self.names[i] for i in w) if w else "e"


@dataclass(frozen=True)
class BallResult:
    words: tuple[Word, ...]
    complete: bool
    radius: int

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: Word) -> bool:
        return w in set(self.words)
