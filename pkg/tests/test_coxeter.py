import math
import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxglue import (INFINITY, CapExceeded, CoxeterMatrix, CoxeterSystem,
                     GeneratorIndexError)
from conftest import oracle_a3, oracle_b3, oracle_i2


def dihedral(m: int) -> CoxeterSystem:
    return CoxeterSystem(CoxeterMatrix(((1, m), (m, 1))), names=["s", "t"])


def a3() -> CoxeterSystem:
    return CoxeterSystem(CoxeterMatrix((
        (1, 3, 2), (3, 1, 3), (2, 3, 1))), names=["s1", "s2", "s3"])


def b3() -> CoxeterSystem:
    return CoxeterSystem(CoxeterMatrix((
        (1, 4, 2), (4, 1, 3), (2, 3, 1))), names=["t", "s1", "s2"])


def triangle333() -> CoxeterSystem:
    return CoxeterSystem(CoxeterMatrix((
        (1, 3, 3), (3, 1, 3), (3, 3, 1))), names=["r", "s", "t"])


SYSTEMS_WITH_ORACLES = [
    (a3(), oracle_a3()),
    (b3(), oracle_b3()),
    (dihedral(2), oracle_i2(2)),
    (dihedral(3), oracle_i2(3)),
    (dihedral(5), oracle_i2(5)),
    (dihedral(7), oracle_i2(7)),
]


class TestMatrixValidation:
    def test_rejects_off_diagonal_one(self):
        with pytest.raises(ValueError):
            CoxeterMatrix(((1, 1), (1, 1)))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            CoxeterMatrix(((1, 3), (4, 1)))

    def test_rejects_bad_diagonal(self):
        with pytest.raises(ValueError):
            CoxeterMatrix(((2, 3), (3, 1)))

    def test_infinity_encoding(self):
        m = CoxeterMatrix(((1, 0), (0, 1)))
        assert m.bond(0, 1) == INFINITY


class TestWordProblemAgainstOracles:
    @pytest.mark.parametrize("sys,oracle", SYSTEMS_WITH_ORACLES,
                             ids=["A3", "B3", "I2_2", "I2_3", "I2_5", "I2_7"])
    def test_group_order(self, sys, oracle):
        ball = sys.ball(40)
        assert ball.complete
        assert len(ball.words) == oracle.order()

    @pytest.mark.parametrize("m,order", [(2, 4), (3, 6), (4, 8), (6, 12)])
    def test_dihedral_order(self, m, order):
        assert len(dihedral(m).ball(30).words) == order
        assert oracle_i2(m).order() == order

    @pytest.mark.parametrize("sys,oracle", SYSTEMS_WITH_ORACLES,
                             ids=["A3", "B3", "I2_2", "I2_3", "I2_5", "I2_7"])
    def test_random_words(self, sys, oracle):
        rng = random.Random(20240817)
        for _ in range(300):
            u = tuple(rng.randrange(sys.rank)
                      for _ in range(rng.randrange(9)))
            v = tuple(rng.randrange(sys.rank)
                      for _ in range(rng.randrange(9)))
            assert sys.equal(u, v) == (oracle.evaluate(u) == oracle.evaluate(v))
            # normal form evaluates to the same oracle element
            assert oracle.evaluate(sys.normal_form(u)) == oracle.evaluate(u)


class TestNormalForm:
    def test_identity(self):
        sys = dihedral(3)
        assert sys.normal_form(()) == ()
        assert sys.normal_form((0, 0)) == ()

    def test_braid(self):
        sys = dihedral(3)
        assert sys.normal_form((0, 1, 0)) == sys.normal_form((1, 0, 1))

    def test_longest_element(self):
        sys = dihedral(4)
        assert sys.length((0, 1, 0, 1)) == 4
        assert sys.length((0, 1, 0, 1, 0)) == 3

    def test_unknown_generator(self):
        with pytest.raises(GeneratorIndexError):
            dihedral(3).normal_form((0, 5))

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.integers(0, 2), max_size=8),
           st.lists(st.integers(0, 2), max_size=8))
    def test_normal_form_is_canonical_333(self, u, v):
        sys = triangle333()
        u, v = tuple(u), tuple(v)
        nu, nv = sys.normal_form(u), sys.normal_form(v)
        # idempotent, reduced, respects concatenation-equality
        assert sys.normal_form(nu) == nu
        assert sys.is_reduced(nu)
        if nu == nv:
            assert sys.equal(u, v)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(0, 2), max_size=8))
    def test_involution_inverse(self, w):
        sys = a3()
        w = tuple(w)
        assert sys.mult(w, tuple(reversed(w))) == ()

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(0, 2), max_size=8))
    def test_length_parity(self, w):
        sys = b3()
        w = tuple(w)
        assert (sys.length(w) - len(w)) % 2 == 0


class TestSphericalClassification:
    @pytest.mark.parametrize("sys,spherical", [
        (dihedral(3), True), (dihedral(0), False),
        (a3(), True), (b3(), True), (triangle333(), False),
    ])
    def test_full_set(self, sys, spherical):
        assert sys.is_spherical(range(sys.rank)) == spherical

    def test_subsets_of_333(self):
        sys = triangle333()
        for k in (1, 2):
            for T in combinations(range(3), k):
                assert sys.is_spherical(T)
        assert not sys.is_spherical((0, 1, 2))

    def test_h3_and_e_types(self):
        h3 = CoxeterSystem(CoxeterMatrix((
            (1, 5, 2), (5, 1, 3), (2, 3, 1))))
        assert h3.is_spherical(range(3))
        assert len(h3.ball(40).words) == 120

    def test_affine_a2_tilde_not_spherical(self):
        assert not triangle333().is_spherical((0, 1, 2))

    @pytest.mark.parametrize("sys", [a3(), b3(), dihedral(5), triangle333(),
                                     dihedral(0)],
                             ids=["A3", "B3", "I2_5", "333", "Dinf"])
    def test_classification_matches_gram_eigenvalues(self, sys):
        # dual route: diagram classification vs numeric positive definiteness
        for k in range(1, sys.rank + 1):
            for T in combinations(range(sys.rank), k):
                g = sys.gram_matrix(T)
                numeric = bool(np.linalg.eigvalsh(g).min() > 1e-9)
                assert sys.is_spherical(T) == numeric


class TestBalls:
    def test_infinite_dihedral_ball_growth(self):
        sys = dihedral(0)
        for r in range(1, 5):
            ball = sys.ball(r)
            assert not ball.complete
            assert len(ball.words) == 2 * r + 1

    def test_cap_exceeded(self):
        with pytest.raises(CapExceeded):
            triangle333().ball(30, cap=50)

    def test_saturation_detection(self):
        ball = dihedral(3).ball(17)
        assert ball.complete and len(ball.words) == 6


class TestCosetsAndNerve:
    def test_coset_min_is_minimal(self):
        sys = triangle333()
        rng = random.Random(7)
        for _ in range(50):
            w = tuple(rng.randrange(3) for _ in range(rng.randrange(7)))
            T = frozenset(rng.sample(range(3), rng.randrange(1, 3)))
            rep = sys.coset_min(w, T)
            for t in sys.subgroup_elements(T):
                assert sys.length(sys.mult(w, t)) >= len(rep)

    def test_nerve_333_is_empty_triangle(self):
        nerve = triangle333().nerve()
        sizes = sorted(len(sx) for sx in nerve.simplices)
        assert sizes == [1, 1, 1, 2, 2, 2]

    def test_nerve_a3_is_full_triangle(self):
        nerve = a3().nerve()
        assert max(len(sx) for sx in nerve.simplices) == 3

    def test_gram_matrix_values(self):
        sys = dihedral(4)
        g = sys.gram_matrix((0, 1))
        assert g[0, 0] == 1.0
        assert abs(g[0, 1] + math.cos(math.pi / 4)) < 1e-12
