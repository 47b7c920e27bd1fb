"""Stratified complexes with mirror structures.

Spaces are represented purely by face posets of strata; a mirror
assignment sends each generator to a set of codimension-1 strata, and the
closed mirror is the downward closure of that set in the face order
(sigma <= tau reads: sigma lies in the closure of tau).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .coxeter import CoxeterSystem
from .errors import UnknownStratum
from .simplicial import SimplicialComplex

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Stratum:
    id: str
    dim: int
    codim: int

    def __post_init__(self):
        if self.dim < 0 or self.codim < 0:
            raise ValueError("dim and codim must be >= 0")


class StratifiedComplex:
    """Face poset of a stratified space (e.g. a manifold with corners).

    `faces` lists pairs (sigma, tau) meaning sigma lies in the closure of
    tau; the stored order is the reflexive-transitive closure.
    """

    def __init__(self, strata: list[Stratum], faces: list[tuple[str, str]]):
        self.strata = {s.id: s for s in strata}
        if len(self.strata) != len(strata):
            raise ValueError("duplicate stratum ids")
        for a, b in faces:
            if a not in self.strata or b not in self.strata:
                raise UnknownStratum(f"face pair ({a}, {b}) uses unknown strata")
        below = {s.id: {s.id} for s in strata}
        for a, b in faces:
            below[b].add(a)
        # transitive closure
        changed = True
        while changed:
            changed = False
            for b in below:
                extra = set()
                for a in below[b]:
                    extra |= below[a]
                if not extra <= below[b]:
                    below[b] |= extra
                    changed = True
        self._below = {k: frozenset(v) for k, v in below.items()}
        self._validate()

    def _validate(self):
        for b, down in self._below.items():
            for a in down:
                if a != b and b in self._below[a]:
                    raise ValueError(f"face relation has a cycle through {a}, {b}")
                if a != b and self.strata[a].codim <= self.strata[b].codim:
                    raise ValueError(
                        f"codimension must strictly increase down the order "
                        f"({a} <= {b})")
        maximal = {s for s in self.strata
                   if not any(s in self._below[t] and s != t for t in self.strata)}
        codim0 = {s for s, st in self.strata.items() if st.codim == 0}
        if maximal != codim0:
            raise ValueError("exactly the codimension-0 strata must be maximal")
        if not codim0:
            raise ValueError("complex has no chamber (codimension-0 stratum)")

    def leq(self, a: str, b: str) -> bool:
        """sigma <= tau: sigma lies in the closure of tau."""
        return a in self._below[b]

    def below(self, b: str) -> frozenset[str]:
        return self._below[b]

    def above(self, a: str) -> frozenset[str]:
        return frozenset(b for b in self.strata if a in self._below[b])

    @property
    def chambers(self) -> tuple[str, ...]:
        return tuple(sorted(s for s, st in self.strata.items() if st.codim == 0))

    def by_codim(self, codim: int) -> tuple[str, ...]:
        return tuple(sorted(s for s, st in self.strata.items()
                            if st.codim == codim))

    def euler_characteristic(self) -> int:
        return sum((-1) ** st.dim for st in self.strata.values())


class MirroredComplex:
    """A stratified complex plus a mirror assignment on codimension-1 strata."""

    def __init__(self, complex: StratifiedComplex,
                 mirrors: dict[str, set[str]]):
        self.complex = complex
        owners: dict[str, str] = {}
        for gen, strata in mirrors.items():
            for sid in strata:
                if sid not in complex.strata:
                    raise UnknownStratum(f"mirror {gen!r} references unknown stratum {sid!r}")
                if complex.strata[sid].codim != 1:
                    raise ValueError(
                        f"mirror {gen!r} assigned to stratum {sid!r} of codim "
                        f"{complex.strata[sid].codim}; mirrors must be codim 1")
                if sid in owners:
                    raise ValueError(
                        f"stratum {sid!r} assigned to both {owners[sid]!r} and {gen!r}")
                owners[sid] = gen
            if len(strata) > 1:
                log.warning("generator %r is shared by %d mirror strata",
                            gen, len(strata))
        self.mirrors = {gen: frozenset(strata) for gen, strata in mirrors.items()}
        self.generators = tuple(sorted(self.mirrors))
        # closed mirror X_s: downward closure of the declared strata
        self._closed = {}
        for gen, strata in self.mirrors.items():
            closed = set()
            for sid in strata:
                closed |= complex.below(sid)
            self._closed[gen] = frozenset(closed)
        self._mirror_sets = {
            sid: frozenset(g for g in self.generators if sid in self._closed[g])
            for sid in complex.strata}

    def closed_mirror(self, gen: str) -> frozenset[str]:
        return self._closed[gen]

    def mirror_set(self, stratum: str) -> frozenset[str]:
        """S(x): the generators whose closed mirror contains the stratum."""
        if stratum not in self.complex.strata:
            raise UnknownStratum(f"unknown stratum {stratum!r}")
        return self._mirror_sets[stratum]


def is_w_finite(mx: MirroredComplex, sys: CoxeterSystem) -> bool:
    """True iff every stratum's mirror set generates a finite subgroup."""
    for gen in mx.generators:
        if gen not in sys.index:
            raise ValueError(f"mirror generator {gen!r} is not in the Coxeter system")
    return all(sys.is_spherical(mx.mirror_set(sid))
               for sid in mx.complex.strata)


def is_nice(mx: MirroredComplex) -> bool:
    """True iff every codim-2 stratum lies in the closure of exactly two
    codim-1 strata."""
    cx = mx.complex
    for sid in cx.by_codim(2):
        walls = [t for t in cx.above(sid) if cx.strata[t].codim == 1]
        if len(walls) != 2:
            return False
    return True


def nerve_of_mirrored_space(mx: MirroredComplex) -> SimplicialComplex:
    """N(X): T is a simplex iff some stratum has mirror set containing T."""
    simplices = set()
    for sid in mx.complex.strata:
        T = mx.mirror_set(sid)
        if T:
            simplices.add(T)
    return SimplicialComplex.closure(mx.generators, simplices)
