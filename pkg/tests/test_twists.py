import pytest

from coxglue import (BANNER, Block, CoxeterMatrix, CoxeterSystem, FiniteGroup,
                     Hom, InvalidBlock, MirroredComplex, NotCentral,
                     TwistReport, all_blocks, blocks, build_u, chamber_graph,
                     from_gluing, quotient_complex, twist_automorphism,
                     twist_group_report)


def hexagon_setup(hexagon_spec):
    u = build_u(hexagon_spec.system, hexagon_spec.mx, 3)
    cog = from_gluing(u, hexagon_spec.groups, hexagon_spec.maps)
    return cog, chamber_graph(u)


def double_setup(double_spec):
    u = build_u(double_spec.system, double_spec.mx, 1)
    cog = from_gluing(u, double_spec.groups, double_spec.maps)
    return cog, chamber_graph(u)


class TestBlocks:
    def test_double_blocks_are_singletons(self, double_spec):
        _cog, g = double_setup(double_spec)
        parts = all_blocks(g, "b")
        assert {b.chambers for b in parts} == {frozenset({()}),
                                               frozenset({(0,)})}

    def test_hexagon_block_pairs_across_other_wall(self, hexagon_spec):
        _cog, g = hexagon_setup(hexagon_spec)
        b = blocks(g, "es", ())
        # removing the s-walls leaves the t-wall neighbor only
        assert b.chambers == frozenset({(), (1,)})
        assert b.is_proper_in(g)

    def test_blocks_partition_chambers(self, hexagon_spec):
        _cog, g = hexagon_setup(hexagon_spec)
        for e in g.edge_types():
            parts = all_blocks(g, e)
            seen = [ch for b in parts for ch in b.chambers]
            assert sorted(seen) == sorted(g.nodes)
            assert len(seen) == len(set(seen))

    def test_unknown_type_rejected(self, hexagon_spec):
        _cog, g = hexagon_setup(hexagon_spec)
        with pytest.raises(ValueError):
            blocks(g, "zz", ())
        with pytest.raises(ValueError):
            blocks(g, "es", ("nope",))


class TestTwistAutomorphism:
    def test_hexagon_twist(self, hexagon_spec):
        cog, g = hexagon_setup(hexagon_spec)
        b = blocks(g, "es", ())
        tw = twist_automorphism(cog, b, (1,))
        assert not tw.is_trivial
        assert tw.region() == b.chambers
        conj = [ch for ch, k in tw.assignment.items() if k == "conjugate"]
        assert len(conj) == 2 and len(tw.assignment) == 6
        assert tw.checks and all(s == "pass" for _loc, s in tw.checks)

    def test_identity_element_trivial(self, hexagon_spec):
        cog, g = hexagon_setup(hexagon_spec)
        b = blocks(g, "es", ())
        tw = twist_automorphism(cog, b, (0,))
        assert tw.is_trivial
        assert "identity" in tw.certificate
        assert tw.region() == frozenset()

    def test_full_block_is_inner(self, double_spec):
        cog, g = double_setup(double_spec)
        full = Block("b", (), frozenset(g.nodes))
        tw = twist_automorphism(cog, full, (1, 0))
        assert tw.is_trivial
        assert "inner" in tw.certificate

    def test_invalid_block_rejected(self, double_spec):
        cog, _g = double_setup(double_spec)
        with pytest.raises(InvalidBlock):
            twist_automorphism(cog, Block("zz", (), frozenset({()})), (1, 0))
        with pytest.raises(InvalidBlock):
            twist_automorphism(
                cog, Block("b", ("x",), frozenset({("x",)})), (1, 0))

    def test_noncentral_element_rejected(self, double_spec):
        # same interval gluing, but with S3 local groups
        sys = double_spec.system
        mx = double_spec.mx

        def s3():
            return FiniteGroup({"a": (1, 0, 2), "b": (0, 2, 1)},
                               relators=["a^2", "b^2", "a b a b a b"])

        gc, gb = s3(), s3()
        u = build_u(sys, mx, 1)
        cog = from_gluing(u, {"c": gc, "b": gb},
                          {("b", "c"): Hom(gb, gc,
                                           {"a": (1, 0, 2), "b": (0, 2, 1)})})
        g = chamber_graph(u)
        with pytest.raises(NotCentral):
            twist_automorphism(cog, blocks(g, "b", ()), (1, 0, 2))

    def test_opposite_twists_cover_all_chambers(self, double_spec):
        # the two block twists by the same central element compose to a
        # global conjugation: their regions partition the chamber set
        cog, g = double_setup(double_spec)
        tws = [twist_automorphism(cog, b, (1, 0))
               for b in all_blocks(g, "b")]
        regions = [tw.region() for tw in tws]
        assert regions[0] | regions[1] == frozenset(g.nodes)
        assert not regions[0] & regions[1]


class TestTwistReport:
    def test_double_rank_exact(self, double_spec):
        cog, g = double_setup(double_spec)
        report = twist_group_report(cog, g)
        # rank-2 center, 2 blocks on a tree: rank exactly 2
        assert report.rank_exact
        assert (report.rank_lower, report.rank_upper) == (2, 2)
        assert len(report.generators) == 4
        assert all(not gen.trivial for gen in report.generators)
        assert len(report.relations) == 2
        assert all(s == "pass" for _pair, s in report.commutation)
        assert "rank T(M) = 2" in report.summary()

    def test_hexagon_rank_bounds(self, hexagon_spec):
        cog, g = hexagon_setup(hexagon_spec)
        report = twist_group_report(cog, g)
        # 6-cycle chamber graph is not a tree: bounds only
        assert not report.rank_exact
        assert (report.rank_lower, report.rank_upper) == (0, 4)
        assert len(report.generators) == 6
        assert all(not gen.trivial for gen in report.generators)

    def test_trivial_centers_give_rank_zero(self, infinite_dihedral_spec):
        ps = infinite_dihedral_spec
        u = build_u(ps.system, ps.mx, 2)
        q = quotient_complex(u, ps.action)
        cog = from_gluing(q, ps.groups, ps.maps or {})
        report = twist_group_report(cog, chamber_graph(q))
        assert not report.generators
        assert report.rank_upper == 0

    def test_banner(self, double_spec):
        cog, g = double_setup(double_spec)
        report = twist_group_report(cog, g)
        assert report.banner == BANNER
        assert "1 -> T(M) -> Out(pi1(M)) -> A(M) -> 1" in report.banner
        assert report.summary().startswith(report.banner)

    def test_json_shape(self, hexagon_spec):
        cog, g = hexagon_setup(hexagon_spec)
        j = twist_group_report(cog, g).to_json()
        assert len(j["generators"]) == 6
        assert j["rank"] == {"lower": 0, "upper": 4, "exact": False}
        assert j["banner"] == BANNER

    def test_inconsistent_bounds_rejected(self):
        with pytest.raises(ValueError):
            TwistReport((), (), 3, 1, False, (), BANNER)
