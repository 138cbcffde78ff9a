"""Core matroid predicates and constructions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matoric.matroid import (
    CardinalityError,
    ElementRangeError,
    EmptyBasesError,
    ExchangeAxiomError,
    Matroid,
    MatroidError,
    TwoSumError,
    coloops,
    direct_sum,
    dual,
    elements_of,
    find_sortable_labeling,
    format_matroid,
    is_3_connected,
    is_base_sortable,
    is_isomorphic,
    loops,
    mask_of,
    parse_matroid,
    parse_matroids,
    rank_of_subset,
    relabel,
    sort_pair,
    symmetric_exchanges,
    two_sum,
    uniform,
    validate_basis_axiom,
)


def table1_matroid(mid):
    from matoric.catalog import table1_entry

    return table1_entry(mid).matroid


class TestValidateAxiom:
    def test_uniform_is_matroid(self):
        ok, witness = validate_basis_axiom(uniform(2, 4).bases, 4)
        assert ok and witness is None

    def test_two_disjoint_pairs_fail(self):
        ok, witness = validate_basis_axiom([mask_of([1, 2]), mask_of([3, 4])], 4)
        assert not ok
        assert witness == ((1, 2), (3, 4), 1)

    def test_fano_complement_is_matroid(self):
        m = table1_matroid("M_14")
        assert len(m.bases) == 28
        ok, _ = validate_basis_axiom(m.bases, 7)
        assert ok

    def test_empty_collection(self):
        with pytest.raises(EmptyBasesError):
            validate_basis_axiom([], 4)

    def test_unequal_cardinalities(self):
        with pytest.raises(CardinalityError):
            validate_basis_axiom([mask_of([1]), mask_of([1, 2])], 3)

    def test_out_of_range(self):
        with pytest.raises(ElementRangeError):
            validate_basis_axiom([mask_of([1, 5])], 4)

    def test_constructor_rejects_non_matroid(self):
        with pytest.raises(ExchangeAxiomError):
            Matroid(4, [mask_of([1, 2]), mask_of([3, 4])])


class TestRank:
    def test_uniform(self):
        assert rank_of_subset(uniform(3, 7), [1, 2]) == 2

    def test_removed_triple_has_rank_two(self):
        assert rank_of_subset(table1_matroid("M_14"), [1, 2, 3]) == 2

    def test_empty_subset(self):
        assert rank_of_subset(uniform(2, 4), []) == 0

    def test_full_set_is_rank(self):
        m = table1_matroid("M_10")
        assert rank_of_subset(m, range(1, 8)) == m.rank

    def test_out_of_range(self):
        with pytest.raises(ElementRangeError):
            rank_of_subset(uniform(2, 4), [5])

    def test_monotone_submodular_exhaustive(self):
        from itertools import combinations

        m = table1_matroid("M_14")
        subs = [
            mask_of(c)
            for size in range(8)
            for c in combinations(range(1, 8), size)
        ]
        r = {s: rank_of_subset(m, elements_of(s)) for s in subs}
        for x in subs:
            for y in subs:
                if x & ~y == 0:
                    assert r[x] <= r[y]
                assert r[x | y] + r[x & y] <= r[x] + r[y]


class TestDual:
    def test_uniform_dual(self):
        d = dual(uniform(3, 7))
        assert d.rank == 4 and len(d.bases) == 35

    def test_coloop_becomes_loop(self):
        m = Matroid.from_bases(3, [[1, 2]])
        assert coloops(m) == (1, 2)
        assert loops(dual(m)) == (1, 2)

    def test_m2_dual(self):
        from itertools import combinations

        d = dual(table1_matroid("M_2"))
        expected = {
            mask_of(c) for c in combinations(range(1, 8), 4)
        } - {mask_of([4, 5, 6, 7])}
        assert d.n == 7 and d.rank == 4
        assert set(d.bases) == expected


class TestLoopsColoops:
    def test_uniform_has_none(self):
        m = uniform(2, 4)
        assert loops(m) == () and coloops(m) == ()

    def test_single_basis(self):
        m = Matroid.from_bases(3, [[1, 2]])
        assert loops(m) == (3,)
        assert coloops(m) == (1, 2)

    def test_table1_entry_has_none(self):
        m = table1_matroid("M_14")
        assert loops(m) == () and coloops(m) == ()


class TestSums:
    def test_free_sum(self):
        s = direct_sum(uniform(1, 1), uniform(1, 1))
        assert s.basis_tuples() == ((1, 2),)

    def test_u12_pair(self):
        s = direct_sum(uniform(1, 2), uniform(1, 2))
        assert sorted(s.basis_tuples()) == [(1, 3), (1, 4), (2, 3), (2, 4)]

    def test_product_count(self):
        s = direct_sum(uniform(2, 3), uniform(1, 2))
        assert s.n == 5 and s.rank == 3 and len(s.bases) == 6

    def test_two_sum_gives_uniform(self):
        s = two_sum(uniform(2, 3), uniform(2, 3), 1)
        assert s == uniform(3, 4)

    def test_two_sum_small(self):
        s = two_sum(uniform(1, 2), uniform(1, 2), 1)
        assert s == uniform(1, 2)

    def test_two_sum_rejects_coloop(self):
        m1 = Matroid.from_bases(3, [[1, 2], [1, 3]])  # 1 is a coloop
        with pytest.raises(TwoSumError, match="coloop of m1"):
            two_sum(m1, uniform(2, 3), 1)

    def test_two_sum_rejects_loop(self):
        m2 = Matroid.from_bases(3, [[2, 3]])
        with pytest.raises(TwoSumError, match="loop of m2"):
            two_sum(uniform(2, 3), m2, 1)


class TestThreeConnectivity:
    def test_u37(self):
        ok, cert = is_3_connected(uniform(3, 7))
        assert ok and cert is None

    def test_direct_sum_disconnected(self):
        m = direct_sum(uniform(1, 1), uniform(2, 3))
        ok, cert = is_3_connected(m)
        assert not ok and cert == (1,)

    def test_u34_two_separation(self):
        ok, cert = is_3_connected(uniform(3, 4))
        assert not ok and cert == (1, 2)

    def test_self_dual_on_table1(self):
        for mid in ("M_2", "M_14", "M_15"):
            m = table1_matroid(mid)
            assert is_3_connected(m)[0] == is_3_connected(dual(m))[0]


class TestSymmetricExchanges:
    def test_uniform_all_pairs(self):
        wits = symmetric_exchanges(uniform(2, 4), [1, 2], [3, 4])
        assert len(wits) == 4

    def test_equal_bases_empty(self):
        assert symmetric_exchanges(uniform(2, 4), [1, 2], [1, 2]) == []

    def test_fano_complement_witness(self):
        # by hand against the removed-triple table: alpha=1 admits beta=3
        # ({2,3,4} and {1,5,7} are bases) and beta=5 ({2,4,5} and {1,3,7})
        m = table1_matroid("M_14")
        wits = symmetric_exchanges(m, [1, 2, 4], [3, 5, 7])
        pairs = {(w.alpha, w.beta) for w in wits}
        assert (1, 3) in pairs and (1, 5) in pairs
        for w in wits:
            assert mask_of(w.b3) in m.bases_set and mask_of(w.b4) in m.bases_set

    def test_removed_triple_is_rejected(self):
        # {3,5,6} is a removed triple, not a basis
        m = table1_matroid("M_14")
        with pytest.raises(MatroidError, match="not a basis"):
            symmetric_exchanges(m, [1, 2, 4], [3, 5, 6])

    def test_not_a_basis(self):
        with pytest.raises(MatroidError, match="not a basis"):
            symmetric_exchanges(table1_matroid("M_14"), [1, 2, 3], [4, 5, 6])

    def test_axiom_restated(self, small_pool):
        # whenever the axiom holds, every alpha admits at least one witness
        for m in small_pool[:25]:
            bases = m.basis_tuples()
            for b1 in bases[:4]:
                for b2 in bases[:4]:
                    wits = symmetric_exchanges(m, b1, b2)
                    alphas = {w.alpha for w in wits}
                    assert alphas == set(b1) - set(b2)


class TestBaseSortable:
    def test_uniform(self):
        ok, _ = is_base_sortable(uniform(2, 4))
        assert ok

    def test_failing_pair(self):
        bases = [[1, 2], [1, 4], [2, 3], [2, 4], [3, 4]]  # all pairs but {1,3}
        m = Matroid.from_bases(4, bases)
        ok, pair = is_base_sortable(m)
        assert not ok
        assert pair == ((1, 2), (3, 4))
        assert sort_pair(*pair) == ((1, 3), (2, 4))

    def test_m15(self):
        ok, _ = is_base_sortable(table1_matroid("M_15"))
        assert ok

    def test_any_labeling_search(self):
        # base-sortable already, so the search must also succeed
        m = uniform(2, 3)
        assert find_sortable_labeling(m) is not None
        ok, _ = is_base_sortable(m, any_labeling=True)
        assert ok


class TestIsomorphism:
    def test_identity(self):
        m = table1_matroid("M_7")
        ok, perm = is_isomorphic(m, m)
        assert ok and perm == (1, 2, 3, 4, 5, 6, 7)

    def test_relabeled_uniform(self):
        m = uniform(2, 4)
        ok, perm = is_isomorphic(m, relabel(m, (3, 1, 4, 2)))
        assert ok and perm is not None

    def test_distinct_counts(self):
        ok, perm = is_isomorphic(table1_matroid("M_13"), table1_matroid("M_14"))
        assert not ok and perm is None


@st.composite
def pool_member(draw):
    from matoric.catalog import closure_instances

    pool = closure_instances(5)
    return draw(st.sampled_from(pool))


class TestProperties:
    @given(pool_member())
    @settings(max_examples=40, deadline=None)
    def test_dual_involution(self, m):
        assert dual(dual(m)) == m

    @given(pool_member(), st.data())
    @settings(max_examples=40, deadline=None)
    def test_relabel_preserves_validity(self, m, data):
        import itertools

        perms = list(itertools.permutations(range(1, m.n + 1)))
        perm = data.draw(st.sampled_from(perms))
        r = relabel(m, perm)
        ok, _ = validate_basis_axiom(r.bases, r.n)
        assert ok

    def test_two_sum_outputs_are_matroids(self):
        # the constructor validates; reaching here means the axiom held
        wheels = [uniform(2, 3), uniform(2, 4), uniform(3, 4), uniform(1, 2)]
        built = 0
        for m1 in wheels:
            for m2 in wheels:
                try:
                    two_sum(m1, m2, 1)
                    built += 1
                except TwoSumError:
                    pass
        assert built > 0


class TestTextFormat:
    def test_roundtrip(self):
        m = table1_matroid("M_13")
        again = parse_matroid(format_matroid(m))
        assert again == m

    def test_comments_and_blanks(self):
        text = "# a matroid\n4 2\n\n1,2 1,3  # trailing comment\n1,4\n2,3 2,4 3,4\n"
        m = parse_matroid(text)
        assert m == uniform(2, 4)

    def test_bad_element_reports_line(self):
        with pytest.raises(ValueError, match="line 3"):
            parse_matroid("7 3\n1,2,3\n1,2,9\n")

    def test_non_increasing_basis(self):
        with pytest.raises(ValueError, match="not strictly increasing"):
            parse_matroid("4 2\n2,1\n")

    def test_wrong_rank(self):
        with pytest.raises(ValueError, match="has size 2, rank is 3"):
            parse_matroid("4 3\n1,2\n3,4\n")

    def test_multiple_records(self):
        text = "4 2\n1,2 1,3 1,4 2,3 2,4 3,4\n3 1\n1\n2\n3\n"
        ms = parse_matroids(text)
        assert len(ms) == 2
        assert ms[0] == uniform(2, 4)
        assert ms[1] == uniform(1, 3)

    def test_data_before_header(self):
        with pytest.raises(ValueError, match="before any"):
            parse_matroids("1,2 3,4\n")
