"""The Buchberger engine against hand-checked and oracle-checked values."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matoric.engine import (
    Binomial,
    EngineError,
    buchberger,
    certify_spairs,
    eliminate,
    make_binomial,
    normal_form,
    reduce_binomial,
    reduce_gb,
    s_pair,
)
from matoric.matroid import mask_of, uniform
from matoric.orders import OrderError, lex_order
from matoric.toric import build_graph_ideal


def u24_x_gb():
    """The two-element reduced basis of the U_{2,4} kernel, built by hand."""
    m = uniform(2, 4)
    order = lex_order(m, with_t=False)
    x = lambda *pairs: order.x_monomial([mask_of(p) for p in pairs])
    f = Binomial(x((1, 2), (3, 4)), x((1, 4), (2, 3)))
    g = Binomial(x((1, 3), (2, 4)), x((1, 4), (2, 3)))
    return m, order, f, g, x


class TestSPair:
    def test_equal_binomials_vanish(self):
        _, order, f, _, _ = u24_x_gb()
        assert s_pair(f, f, order) is None

    def test_u24_cross(self):
        _, order, f, g, x = u24_x_gb()
        s = s_pair(f, g, order)
        # x14*x23*(x12*x34 - x13*x24), marked with the x12 side leading
        assert s.lead == x((1, 4), (2, 3), (1, 2), (3, 4))
        assert s.trail == x((1, 4), (2, 3), (1, 3), (2, 4))

    def test_coprime_leads_formula(self):
        m = uniform(2, 4)
        order = lex_order(m, with_t=True)
        gens, _ = build_graph_ideal(m)
        f, g = gens[0], gens[5]  # t-leads of disjoint bases are coprime
        s = s_pair(f, g, order)
        k_mul = __import__("matoric._kernel", fromlist=["active"]).active(order.nvars).exp_mul
        expected = make_binomial(k_mul(g.lead, f.trail), k_mul(f.lead, g.trail))
        assert s == expected


class TestReduce:
    def test_member_reduces_to_zero(self):
        _, order, f, g, _ = u24_x_gb()
        assert reduce_binomial(f, [f, g]) is None

    def test_spair_reduces_to_zero(self):
        _, order, f, g, _ = u24_x_gb()
        s = s_pair(f, g, order)
        assert reduce_binomial(s, [f, g]) is None

    def test_irreducible_unchanged(self):
        _, order, f, g, x = u24_x_gb()
        b = Binomial(x((1, 4), (1, 4)), x((2, 3), (2, 3)))
        assert reduce_binomial(b, [f, g]) == b


class TestBuchberger:
    def test_injective_map_gives_no_x_elements(self):
        m = uniform(1, 2)
        gens, order = build_graph_ideal(m)
        gb = reduce_gb(buchberger(gens, order))
        assert set(gb.elements) == set(gens)
        t_count = order.universe.n_t
        for b in gb.elements:
            assert any(b.lead[:t_count])  # every lead uses a t-variable

    def test_u24_x_block(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = reduce_gb(buchberger(gens, order))
        only_x = eliminate(gb, range(order.universe.n_t))
        _, _, f, g, _ = u24_x_gb()
        assert set(only_x.elements) == {f, g}

    def test_gb_input_is_fixed_point(self):
        m, order, f, g, _ = u24_x_gb()
        gb = reduce_gb(buchberger([f, g], order))
        assert set(gb.elements) == {f, g}

    def test_determinism(self):
        m = uniform(3, 6)
        gens, order = build_graph_ideal(m)
        one = reduce_gb(buchberger(gens, order)).elements
        two = reduce_gb(buchberger(gens, order)).elements
        assert one == two

    def test_no_criteria_same_result(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        fast = reduce_gb(buchberger(gens, order, use_criteria=True))
        slow = reduce_gb(buchberger(gens, order, use_criteria=False))
        assert fast.elements == slow.elements

    def test_rejects_non_binomial(self):
        m = uniform(2, 4)
        _, order = build_graph_ideal(m)
        unit = order.unit()
        with pytest.raises(EngineError, match="binomial"):
            buchberger([Binomial(unit, unit)], order)

    def test_cap_requires_homogeneous(self):
        m = uniform(2, 4)
        order = lex_order(m, with_t=False)
        x12 = order.x_monomial([mask_of([1, 2])])
        sq = order.x_monomial([mask_of([3, 4])] * 2)
        with pytest.raises(EngineError, match="homogeneous"):
            buchberger([Binomial(sq, x12)], order, degree_cap=6)

    def test_capped_run_matches_truncation(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        full = reduce_gb(buchberger(gens, order))
        capped = reduce_gb(buchberger(gens, order, degree_cap=4))
        cut = lambda gb: {
            b for b in gb.elements if order.weighted_degree(b.lead) <= 4
        }
        assert cut(capped) == cut(full)
        assert capped.degree_cap == 4


class TestReduceGB:
    def test_idempotent(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = reduce_gb(buchberger(gens, order))
        assert reduce_gb(gb).elements == gb.elements

    def test_removes_redundant_element(self):
        _, order, f, g, x = u24_x_gb()
        k = __import__("matoric._kernel", fromlist=["active"]).active(order.nvars)
        bloated = Binomial(k.exp_mul(f.lead, f.lead), k.exp_mul(f.lead, f.trail))
        gb = buchberger([f, g], order)
        padded = type(gb)(gb.elements + (bloated,), order)
        assert len(reduce_gb(padded).elements) == 2

    def test_u24_reduced_size(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = eliminate(reduce_gb(buchberger(gens, order)), range(4))
        assert len(gb.elements) == 2


class TestEliminate:
    def test_drop_nothing_is_identity(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = reduce_gb(buchberger(gens, order))
        assert eliminate(gb, []) is gb

    def test_prefix_violation(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = reduce_gb(buchberger(gens, order))
        with pytest.raises(OrderError, match="greatest block"):
            eliminate(gb, [order.seq[1]])  # t2 without t1

    def test_requires_reduced(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = buchberger(gens, order)
        with pytest.raises(EngineError, match="reduced"):
            eliminate(gb, [order.seq[0]])


class TestNormalForm:
    def test_examples(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = eliminate(reduce_gb(buchberger(gens, order)), range(4))
        x = lambda *pairs: gb.order.x_monomial([mask_of(p) for p in pairs])
        assert normal_form(x((1, 2), (3, 4)), gb) == x((1, 4), (2, 3))
        assert normal_form(gb.order.unit(), gb) == gb.order.unit()
        irr = x((1, 4), (2, 3))
        assert normal_form(irr, gb) == irr

    def test_requires_reduced(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = buchberger(gens, order)
        with pytest.raises(EngineError):
            normal_form(order.unit(), gb)


class TestCertification:
    def test_certify_good_basis(self):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = reduce_gb(buchberger(gens, order))
        certify_spairs(gb)  # must not raise

    def test_certify_catches_non_gb(self):
        # the graph generators alone are not a Groebner basis
        from matoric.engine import GroebnerBasis

        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        fake = GroebnerBasis(tuple(gens), order, reduced=True)
        with pytest.raises(EngineError, match="S-pair"):
            certify_spairs(fake)


monomials4 = st.lists(st.integers(0, 3), min_size=4, max_size=4).map(bytes)


class TestHypothesisProperties:
    @given(monomials4, monomials4, monomials4, monomials4)
    @settings(max_examples=120, deadline=None)
    def test_spair_closure(self, a, b, c, d):
        """S-pairs of marked pure differences are marked pure differences
        or vanish; marking always satisfies lead > trail."""
        f = make_binomial(a, b)
        g = make_binomial(c, d)
        if f is None or g is None:
            return
        order = lex_order(uniform(1, 4), with_t=False)
        s = s_pair(f, g, order)
        if s is not None:
            assert s.lead > s.trail

    @given(monomials4, monomials4)
    @settings(max_examples=120, deadline=None)
    def test_reduce_closure_and_idempotence(self, a, b):
        f = make_binomial(a, b)
        if f is None:
            return
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = reduce_gb(buchberger(gens, order))
        xgb = eliminate(gb, range(4))
        pad = f.lead + bytes(2), f.trail + bytes(2)
        r = reduce_binomial(Binomial(*pad), xgb.elements)
        if r is not None:
            assert r.lead > r.trail
            assert reduce_binomial(r, xgb.elements) == r

    @given(monomials4)
    @settings(max_examples=80, deadline=None)
    def test_normal_form_idempotent(self, a):
        m = uniform(2, 4)
        gens, order = build_graph_ideal(m)
        gb = eliminate(reduce_gb(buchberger(gens, order)), range(4))
        mono = a + bytes(2)
        nf = normal_form(mono, gb)
        assert normal_form(nf, gb) == nf


class TestHomogeneityClosure:
    def test_all_elements_homogeneous(self, small_pool):
        # weighted degrees of lead and trail agree for every element produced
        for m in small_pool[:20]:
            gens, order = build_graph_ideal(m)
            gb = buchberger(gens, order)
            for b in gb.elements:
                assert order.weighted_degree(b.lead) == order.weighted_degree(
                    b.trail
                )
                assert b.lead != b.trail  # binomial closure
