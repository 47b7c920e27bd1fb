import pytest

from coxglue import (CoxeterMatrix, CoxeterSystem, MirroredComplex,
                     StratifiedComplex, Stratum, UnknownStratum,
                     find_isomorphism, is_nice, is_w_finite,
                     nerve_of_mirrored_space)


def square_two_mirrors() -> MirroredComplex:
    cx = StratifiedComplex(
        [Stratum("c", 2, 0), Stratum("es", 1, 1), Stratum("et", 1, 1),
         Stratum("v", 0, 2)],
        [("es", "c"), ("et", "c"), ("v", "es"), ("v", "et")])
    return MirroredComplex(cx, {"s": {"es"}, "t": {"et"}})


class TestStratifiedComplex:
    def test_order_closure(self):
        mx = square_two_mirrors()
        assert mx.complex.leq("v", "c")
        assert not mx.complex.leq("c", "v")

    def test_rejects_cycle(self):
        with pytest.raises(ValueError):
            StratifiedComplex(
                [Stratum("a", 1, 0), Stratum("b", 0, 1)],
                [("b", "a"), ("a", "b")])

    def test_rejects_nonincreasing_codim(self):
        with pytest.raises(ValueError):
            StratifiedComplex(
                [Stratum("a", 2, 0), Stratum("b", 2, 0)],
                [("b", "a")])

    def test_requires_chamber(self):
        with pytest.raises(ValueError):
            StratifiedComplex([Stratum("a", 1, 1)], [])

    def test_unknown_stratum_in_faces(self):
        with pytest.raises(UnknownStratum):
            StratifiedComplex([Stratum("a", 1, 0)], [("zz", "a")])

    def test_euler_characteristic(self):
        mx = square_two_mirrors()
        assert mx.complex.euler_characteristic() == 1 - 2 + 1  # == 0


class TestMirrors:
    def test_mirror_sets(self):
        mx = square_two_mirrors()
        assert mx.mirror_set("c") == frozenset()
        assert mx.mirror_set("es") == frozenset({"s"})
        assert mx.mirror_set("v") == frozenset({"s", "t"})

    def test_mirror_must_be_codim_one(self):
        cx = square_two_mirrors().complex
        with pytest.raises(ValueError):
            MirroredComplex(cx, {"s": {"v"}})

    def test_stratum_owned_by_one_generator(self):
        cx = square_two_mirrors().complex
        with pytest.raises(ValueError):
            MirroredComplex(cx, {"s": {"es"}, "t": {"es"}})

    def test_unknown_stratum(self):
        cx = square_two_mirrors().complex
        with pytest.raises(UnknownStratum):
            MirroredComplex(cx, {"s": {"nope"}})


class TestConditions:
    def test_w_finite_for_d3(self):
        sys = CoxeterSystem(CoxeterMatrix(((1, 3), (3, 1))), names=["s", "t"])
        assert is_w_finite(square_two_mirrors(), sys)

    def test_not_w_finite_for_infinite_bond(self):
        sys = CoxeterSystem(CoxeterMatrix(((1, 0), (0, 1))), names=["s", "t"])
        # the corner has mirror set {s, t} with m = infinity
        assert not is_w_finite(square_two_mirrors(), sys)

    def test_nice(self):
        assert is_nice(square_two_mirrors())

    def test_not_nice_three_walls(self):
        cx = StratifiedComplex(
            [Stratum("c", 2, 0), Stratum("e1", 1, 1), Stratum("e2", 1, 1),
             Stratum("e3", 1, 1), Stratum("v", 0, 2)],
            [("e1", "c"), ("e2", "c"), ("e3", "c"),
             ("v", "e1"), ("v", "e2"), ("v", "e3")])
        mx = MirroredComplex(cx, {"a": {"e1"}, "b": {"e2"}, "c": {"e3"}})
        assert not is_nice(mx)

    def test_nerve_matches_coxeter_nerve_for_square(self):
        sys = CoxeterSystem(CoxeterMatrix(((1, 3), (3, 1))), names=["s", "t"])
        n_space = nerve_of_mirrored_space(square_two_mirrors())
        n_sys = sys.nerve()
        assert find_isomorphism(n_space, n_sys) is not None
