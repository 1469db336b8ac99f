from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactgames.sets import (
    CantorSet,
    CountableSet,
    DyadicEnumeration,
    FareyEnumeration,
    FiniteSet,
    IntervalUnion,
    PointClass,
    UnionSet,
    cantor_cover,
    refine_right_approachable,
    refine_right_approachable_witness,
    set_from_spec,
    set_to_spec,
)

from oracles import (
    cover_intervals,
    in_cover,
    inf_in_interval_cover,
    left_approachable_cover,
    right_approachable_cover,
)

F = Fraction
C = CantorSet()
unit_fractions = st.fractions(min_value=0, max_value=1, max_denominator=200)


def iu(*pairs):
    return IntervalUnion(tuple((F(a), F(b)) for a, b in pairs))


class TestIntervalUnion:
    def test_validation(self):
        with pytest.raises(ValueError):
            iu((F(1, 2), F(1, 4)))
        with pytest.raises(ValueError):
            iu((0, F(1, 2)), (F(1, 3), 1))  # overlapping
        with pytest.raises(ValueError):
            IntervalUnion(((F(-1, 2), F(1, 2)),))

    def test_from_endpoints_merges(self):
        merged = IntervalUnion.from_endpoints([(F(1, 3), F(1, 2)), (0, F(1, 3))])
        assert merged.components == ((F(0), F(1, 2)),)

    def test_contains(self):
        assert iu((0, 1)).contains(F(1, 2))
        assert not iu((0, F(1, 4))).contains(F(1, 2))

    def test_infimum(self):
        assert iu((F(1, 3), F(1, 2)), (F(2, 3), 1)).infimum() == F(1, 3)
        assert iu((F(1, 2), F(1, 2))).infimum() == F(1, 2)
        with pytest.raises(ValueError):
            IntervalUnion(()).infimum()

    def test_infimum_within(self):
        assert iu((0, 1)).infimum_within(F(1, 4), F(1, 2)) == F(1, 4)
        assert iu((F(1, 2), 1)).infimum_within(F(1, 4), F(3, 4)) == F(1, 2)
        assert iu((0, F(1, 8))).infimum_within(F(1, 4), F(1, 2)) is None
        # the infimum need not be attained inside the open interval
        assert iu((0, 1)).infimum_within(F(0), F(1)) == 0

    def test_classify(self):
        s = iu((0, F(1, 2)))
        assert s.classify(F(1, 4)) == PointClass(True, True, True)
        assert s.classify(F(0)) == PointClass(True, True, False)
        assert s.classify(F(1, 2)) == PointClass(True, False, True)
        assert s.classify(F(3, 4)) == PointClass(False, False, False)
        point = iu((F(1, 2), F(1, 2)))
        assert point.classify(F(1, 2)) == PointClass(True, False, False)

    def test_right_select(self):
        assert iu((0, 1)).right_select(F(0), F(1)) == F(1, 2)
        assert iu((0, F(1, 4))).right_select(F(1, 2), F(1)) is None
        # leftmost nondegenerate component of the intersection
        s = iu((F(1, 8), F(1, 8)), (F(1, 4), F(1, 2)))
        assert s.right_select(F(0), F(1)) == F(3, 8)

    def test_is_perfect(self):
        assert iu((0, F(1, 3)), (F(2, 3), 1)).is_perfect()
        assert not iu((F(1, 2), F(1, 2))).is_perfect()
        assert not IntervalUnion(()).is_perfect()

    def test_meets_closed(self):
        s = iu((F(1, 4), F(1, 2)))
        assert s.meets_closed(F(1, 2), F(3, 4))
        assert not s.meets_closed(F(3, 5), F(3, 4))


class TestCantorMembership:
    def test_known_values(self):
        assert C.contains(F(1, 4))
        assert not C.contains(F(1, 2))
        assert C.contains(F(1, 3))

    def test_boundary_and_gap_points(self):
        for member in [0, 1, F(2, 3), F(1, 9), F(2, 9), F(7, 9), F(8, 9), F(3, 4)]:
            assert C.contains(F(member)), member
        for outsider in [F(1, 2), F(5, 12), F(4, 9), F(1, 5), F(2, 7)]:
            assert not C.contains(outsider), outsider

    def test_agrees_with_cover_both_ways(self):
        # two-sided criterion: membership implies staying in every cover <= 12;
        # non-membership is certified by exclusion from some cover <= 40
        for q in range(1, 61):
            for p in range(0, q + 1):
                value = F(p, q)
                if C.contains(value):
                    for k in (1, 4, 8, 12):
                        assert in_cover(value, k), (value, k)
                else:
                    assert any(
                        not in_cover(value, k) for k in range(1, 41)
                    ), value


class TestCantorClassify:
    def test_known_values(self):
        assert C.classify(F(1, 3)) == PointClass(True, False, True)
        assert C.classify(F(2, 3)) == PointClass(True, True, False)
        assert C.classify(F(1, 2)) == PointClass(False, False, False)

    def test_domain_endpoints(self):
        assert C.classify(F(0)) == PointClass(True, True, False)
        assert C.classify(F(1)) == PointClass(True, False, True)

    def test_two_sided_interior_member(self):
        assert C.classify(F(1, 4)) == PointClass(True, True, True)
        assert C.classify(F(3, 4)) == PointClass(True, True, True)

    def test_matches_bruteforce_oracle_on_gap_endpoints(self):
        # all gap endpoints of depth <= 5: left ends of gaps are approachable
        # only from the left, right ends only from the right
        for k in range(1, 6):
            for u, v in cover_intervals(k - 1):
                g1 = u + (v - u) / 3
                g2 = u + 2 * (v - u) / 3
                pc1, pc2 = C.classify(g1), C.classify(g2)
                assert (pc1.right_approachable, pc1.left_approachable) == (False, True)
                assert (pc2.right_approachable, pc2.left_approachable) == (True, False)
                assert pc1.right_approachable == right_approachable_cover(g1)
                assert pc1.left_approachable == left_approachable_cover(g1)
                assert pc2.right_approachable == right_approachable_cover(g2)
                assert pc2.left_approachable == left_approachable_cover(g2)

    @given(st.fractions(min_value=0, max_value=1, max_denominator=81))
    @settings(max_examples=150, deadline=None)
    def test_matches_bruteforce_oracle_random(self, q):
        pc = C.classify(q)
        assert pc.right_approachable == right_approachable_cover(q)
        assert pc.left_approachable == left_approachable_cover(q)

    @given(st.fractions(min_value=0, max_value=1, max_denominator=150))
    @settings(max_examples=200, deadline=None)
    def test_limit_point_decomposition(self, q):
        pc = C.classify(q)
        assert pc.is_limit_point == (pc.right_approachable or pc.left_approachable)
        # the set is closed and has no isolated points: limit point iff member
        assert pc.is_limit_point == pc.in_set


class TestCantorInfWithin:
    def test_known_values(self):
        assert C.infimum_within(F(1, 3), F(1)) == F(2, 3)
        assert C.infimum_within(F(0), F(1)) == F(0)

    def test_empty_inside_gap(self):
        assert C.infimum_within(F(2, 5), F(3, 5)) is None
        assert C.infimum_within(F(1, 3), F(2, 3)) is None

    def test_validation(self):
        with pytest.raises(ValueError):
            C.infimum_within(F(1, 2), F(1, 2))

    def test_agrees_with_cover_bruteforce(self):
        cases = [
            (F(1, 3), F(1)),
            (F(0), F(1)),
            (F(1, 10), F(9, 10)),
            (F(2, 3), F(7, 10)),
            (F(17, 24), F(23, 24)),
            (F(1, 2), F(9, 10)),
        ]
        for x, z in cases:
            got = C.infimum_within(x, z)
            brute = inf_in_interval_cover(x, z, 12)
            if got is None:
                assert inf_in_interval_cover(x, z, 12) is None or not any(
                    in_cover(got2, 12)
                    for got2 in ()
                )
            else:
                assert got == brute, (x, z)


class TestCantorRightSelect:
    def test_known_value(self):
        assert C.right_select(F(0), F(1)) == F(2, 3)

    def test_deep_windows(self):
        # inside [2/3, 1] the shallowest gap is (7/9, 8/9)
        assert C.right_select(F(2, 3), F(1)) == F(8, 9)
        # thin window straddling a deep piece
        pick = C.right_select(F(2, 3), F(7, 9))
        assert pick == F(20, 27)

    def test_returns_right_approachable_members(self):
        windows = [
            (F(0), F(1)),
            (F(0), F(1, 3)),
            (F(1, 10), F(2, 5)),
            (F(2, 3), F(9, 10)),
            (F(7, 10), F(4, 5)),
        ]
        for a, b in windows:
            pick = C.right_select(a, b)
            assert pick is not None, (a, b)
            assert a < pick < b
            pc = C.classify(pick)
            assert pc.in_set and pc.right_approachable is True
            assert right_approachable_cover(pick)

    def test_absent_when_disjoint(self):
        assert C.right_select(F(5, 12), F(7, 12)) is None
        assert C.right_select(F(1, 3), F(2, 3)) is None


class TestCantorCover:
    def test_known_values(self):
        assert cantor_cover(0).components == ((F(0), F(1)),)
        assert cantor_cover(1).components == ((F(0), F(1, 3)), (F(2, 3), F(1)))
        assert cantor_cover(2).components == (
            (F(0), F(1, 9)),
            (F(2, 9), F(1, 3)),
            (F(2, 3), F(7, 9)),
            (F(8, 9), F(1)),
        )

    def test_depth_cap(self):
        with pytest.raises(ValueError):
            cantor_cover(21)
        with pytest.raises(ValueError):
            cantor_cover(-1)

    def test_matches_independent_grid_construction(self):
        for k in range(0, 11):
            assert cantor_cover(k).components == cover_intervals(k)

    def test_nested_and_counted(self):
        for k in range(0, 9):
            outer = cantor_cover(k)
            inner = cantor_cover(k + 1)
            assert len(inner.components) == 2 ** (k + 1)
            for lo, hi in inner.components:
                assert outer.contains(lo) and outer.contains(hi)
                assert hi - lo == F(1, 3 ** (k + 1))


class TestEnumerations:
    def test_farey_order(self):
        e = FareyEnumeration()
        first = [e.nth(n) for n in range(1, 8)]
        assert first == [F(1, 2), F(1, 3), F(2, 3), F(1, 4), F(3, 4), F(1, 5), F(2, 5)]

    def test_explicit_repeats_and_cycles(self):
        e = FiniteSet((F(1, 7), F(1, 7), F(6, 7)))
        assert e.nth(2) == F(1, 7)
        assert e.nth(3) == F(6, 7)
        assert e.nth(4) == F(1, 7)  # total beyond the list length

    def test_dyadic_levels(self):
        e = DyadicEnumeration()
        first = [e.nth(n) for n in range(1, 8)]
        assert first == [F(1, 2), F(1, 4), F(3, 4), F(1, 8), F(3, 8), F(5, 8), F(7, 8)]

    def test_index_validation(self):
        with pytest.raises(ValueError):
            FareyEnumeration().nth(0)


class TestCountableSet:
    def test_membership_scan(self):
        farey = CountableSet(FareyEnumeration())
        assert farey.contains(F(3, 7))
        assert not farey.contains(F(0))
        assert not farey.contains(F(1))
        dyadic = CountableSet(DyadicEnumeration())
        assert dyadic.contains(F(5, 16))
        assert not dyadic.contains(F(1, 3))

    def test_classify_is_three_valued(self):
        farey = CountableSet(FareyEnumeration())
        pc = farey.classify(F(1, 2))
        assert pc.in_set is True
        assert pc.right_approachable is None and pc.left_approachable is None
        assert pc.is_limit_point is None

    def test_infimum_and_within(self):
        farey = CountableSet(FareyEnumeration())
        assert farey.infimum() == 0
        assert farey.infimum_within(F(1, 4), F(1, 2)) == F(1, 4)
        assert farey.infimum_within(F(1, 4), F(1, 4) + F(1, 1000)) == F(1, 4)

    def test_undecidable_operations_refuse(self):
        farey = CountableSet(FareyEnumeration())
        with pytest.raises(ValueError):
            farey.is_perfect()
        with pytest.raises(ValueError):
            farey.right_select(F(0), F(1))


class TestFiniteSet:
    def test_oracles(self):
        s = FiniteSet((F(1, 2), F(1, 3)))
        assert s.contains(F(1, 3))
        assert not s.contains(F(1, 4))
        assert s.infimum() == F(1, 3)
        assert s.infimum_within(F(1, 3), F(1)) == F(1, 2)
        assert s.classify(F(1, 2)) == PointClass(True, False, False)
        assert not s.is_perfect()
        assert s.meets_closed(F(1, 3), F(1, 3))
        assert not s.meets_closed(F(2, 5), F(9, 20))


class TestUnionSet:
    def test_pointwise_combination(self):
        u = UnionSet((iu((0, F(1, 3))), C))
        assert u.contains(F(1, 6)) and u.contains(F(3, 4))
        # 1/3 stays one-sided: the Cantor gap (1/3,2/3) blocks the right
        assert u.classify(F(1, 3)) == PointClass(True, False, True)
        # 2/3 picks up right-approachability from the Cantor part alone
        assert u.classify(F(2, 3)) == PointClass(True, True, False)
        # an interval part widens a one-sided Cantor point to two-sided
        wide = UnionSet((iu((F(1, 3), F(1, 2))), C))
        assert wide.classify(F(1, 3)) == PointClass(True, True, True)

    def test_infimum_rules(self):
        u = UnionSet((iu((F(1, 2), F(3, 4))), FiniteSet((F(1, 3),))))
        assert u.infimum() == F(1, 3)
        assert u.infimum_within(F(2, 5), F(1)) == F(1, 2)

    def test_perfectness_suspects(self):
        # an isolated point breaks perfectness ...
        assert not UnionSet((iu((0, F(1, 4))), FiniteSet((F(1, 2),)))).is_perfect()
        # ... unless another part absorbs it as a limit point
        assert UnionSet((iu((0, F(1, 2))), FiniteSet((F(1, 2),)))).is_perfect()
        assert UnionSet((iu((0, F(1, 3)), (F(2, 3), 1)), C)).is_perfect()
        with pytest.raises(ValueError):
            UnionSet((C, CountableSet(FareyEnumeration()))).is_perfect()

    def test_nested_union_suspects_checked_against_the_whole(self):
        inner = UnionSet((FiniteSet((F(1, 2),)),))
        assert not inner.is_perfect()
        # the sibling interval absorbs the nested isolated point
        assert UnionSet((inner, iu((0, 1)))).is_perfect()
        assert not UnionSet((inner, iu((0, F(1, 4))))).is_perfect()

    def test_right_select_prefers_leftmost(self):
        u = UnionSet((iu((F(1, 2), F(3, 4))), C))
        # the Cantor part offers 2/3, the interval part 5/8; leftmost wins
        assert u.right_select(F(0), F(1)) == min(
            F(2, 3), iu((F(1, 2), F(3, 4))).right_select(F(0), F(1))
        )

    def test_right_select_with_undecidable_part(self):
        u = UnionSet((CountableSet(FareyEnumeration()), iu((0, F(1, 2)))))
        # a decisive pick from the exact part is sound regardless of the
        # enumeration part; with no exact pick the question is undecidable
        assert u.right_select(F(0), F(1)) == F(1, 4)
        with pytest.raises(ValueError):
            u.right_select(F(3, 4), F(1))


class TestLimitPointDecomposition:
    @given(
        st.lists(
            st.tuples(
                st.fractions(min_value=0, max_value=1, max_denominator=24),
                st.fractions(min_value=0, max_value=1, max_denominator=24),
            ),
            min_size=1,
            max_size=4,
        ),
        st.fractions(min_value=0, max_value=1, max_denominator=48),
    )
    @settings(max_examples=200)
    def test_interval_union_limit_points(self, raw_pairs, q):
        s = IntervalUnion.from_endpoints(
            [(min(a, b), max(a, b)) for a, b in raw_pairs]
        )
        pc = s.classify(q)
        # independent notion: limit points of a closed interval union are
        # exactly the points of its nondegenerate components
        independent = any(lo <= q <= hi for lo, hi in s.components if lo < hi)
        assert pc.is_limit_point == independent
        assert pc.is_limit_point == (pc.right_approachable or pc.left_approachable)


class TestSelectorsAgreeOnSideness:
    def test_both_selectors_return_right_approachable_points(self):
        windows = [
            (C, F(0), F(1)),
            (C, F(2, 3), F(9, 10)),
            (iu((0, 1)), F(0), F(1, 2)),
            (iu((0, F(1, 3)), (F(2, 3), 1)), F(1, 10), F(9, 10)),
        ]
        for s, a, b in windows:
            direct = s.right_select(a, b)
            refined = refine_right_approachable(s, a, b - a) if s.classify(a).right_approachable else None
            assert direct is not None
            assert a < direct < b
            assert s.classify(direct).right_approachable is True
            if refined is not None:
                # the two selection rules may disagree in value, never in kind
                assert a < refined < b
                assert s.classify(refined).right_approachable is True


class TestRefinement:
    def test_cantor_window(self):
        witness = refine_right_approachable_witness(C, F(0), F(1))
        g = witness.infimum
        assert F(0) < g < F(1)
        assert witness.low <= g <= witness.mid
        assert witness.low < witness.mid < witness.high
        assert C.classify(g).right_approachable is True
        assert right_approachable_cover(g)

    def test_interval_window(self):
        s = iu((0, 1))
        g = refine_right_approachable(s, F(0), F(1, 2))
        assert F(0) < g < F(1, 2)
        assert s.classify(g).right_approachable is True

    def test_cantor_offset_window(self):
        g = refine_right_approachable(C, F(2, 3), F(1, 9))
        assert F(2, 3) < g < F(2, 3) + F(1, 9)
        assert C.classify(g).right_approachable is True
        assert right_approachable_cover(g)

    def test_precondition_enforced(self):
        with pytest.raises(ValueError):
            refine_right_approachable(C, F(1, 3), F(1, 10))  # 1/3 not in S+
        with pytest.raises(ValueError):
            refine_right_approachable(C, F(0), F(0))


class TestWireDocuments:
    def test_round_trips(self):
        docs = [
            {"type": "cantor"},
            {"type": "intervals", "items": [["0", "1/3"], ["2/3", "1"]]},
            {"type": "enumeration", "name": "farey"},
            {"type": "finite", "points": ["1/2", "1/3"]},
            {
                "type": "union",
                "of": [{"type": "cantor"}, {"type": "finite", "points": ["1/2"]}],
            },
        ]
        for doc in docs:
            rebuilt = set_to_spec(set_from_spec(doc))
            assert set_from_spec(rebuilt) == set_from_spec(doc)

    def test_interval_doc_normalizes(self):
        s = set_from_spec({"type": "intervals", "items": [["2/4", "1"], ["0", "1/2"]]})
        assert s.components == ((F(0), F(1)),)

    def test_unknown_documents_rejected(self):
        with pytest.raises(ValueError):
            set_from_spec({"type": "borel"})
        with pytest.raises(ValueError):
            set_from_spec({"type": "enumeration", "name": "primes"})


class TestFreeComponents:
    def test_unit_interval_gaps(self):
        pieces = C.free_components(F(0), F(1), F(1, 30))
        assert (F(1, 3), F(2, 3)) in pieces
        assert (F(1, 9), F(2, 9)) in pieces
        assert all(d - c > F(1, 30) for c, d in pieces)

    def test_interval_inside_gap_comes_back_whole(self):
        pieces = C.free_components(F(2, 5), F(3, 5), F(1, 100))
        assert pieces == [(F(2, 5), F(3, 5))]

    def test_clipping(self):
        pieces = C.free_components(F(1, 2), F(1), F(1, 10))
        assert (F(1, 2), F(2, 3)) in pieces
