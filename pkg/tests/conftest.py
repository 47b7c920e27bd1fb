import os

import pytest

from coxglue import project

FIXTURES = os.path.normpath(
    os.path.join(os.path.dirname(__file__), "..", "fixtures"))


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


@pytest.fixture(scope="session")
def hexagon_spec():
    return project.load(fixture_path("hexagon.json"))


@pytest.fixture(scope="session")
def double_spec():
    return project.load(fixture_path("double.json"))


@pytest.fixture(scope="session")
def infinite_dihedral_spec():
    return project.load(fixture_path("infinite_dihedral.json"))


@pytest.fixture(scope="session")
def triangle_spec():
    return project.load(fixture_path("triangle333.json"))


# ---------------------------------------------------------------------------
# independent permutation oracles, frozen before the implementation was run


def _compose(p, q):
    """Apply p, then q."""
    return tuple(q[i] for i in p)


class PermOracle:
    """Finite Coxeter group realized by explicit permutations."""

    def __init__(self, gens):
        self.gens = [tuple(p) for p in gens]
        self.degree = len(self.gens[0])

    def evaluate(self, word):
        out = tuple(range(self.degree))
        for s in word:
            out = _compose(out, self.gens[s])
        return out

    def order(self):
        ident = tuple(range(self.degree))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.gens:
                    q = _compose(p, g)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        return len(seen)


def oracle_a3() -> PermOracle:
    """Symmetric group on 4 letters, adjacent transpositions."""
    return PermOracle([(1, 0, 2, 3), (0, 2, 1, 3), (0, 1, 3, 2)])


def oracle_b3() -> PermOracle:
    """Signed permutations of 3 coordinates on points
    [+1, +2, +3, -1, -2, -3]: sign change on the first coordinate, then
    the two adjacent coordinate swaps."""
    t = (3, 1, 2, 0, 4, 5)
    s1 = (1, 0, 2, 4, 3, 5)
    s2 = (0, 2, 1, 3, 5, 4)
    return PermOracle([t, s1, s2])


def oracle_i2(m: int) -> PermOracle:
    """Dihedral group of order 2m: reflections of an m-gon for m >= 3,
    two disjoint swaps for m = 2."""
    if m == 2:
        return PermOracle([(1, 0, 2, 3), (0, 1, 3, 2)])
    s = tuple((-i) % m for i in range(m))
    t = tuple((1 - i) % m for i in range(m))
    return PermOracle([s, t])
