"""Both reduction kernels must agree with each other and with brute force."""

import random

import pytest

from matoric import _kernel
from matoric._pykernel import ReducerIndex as PyIndex


def kernels():
    return sorted(_kernel.available().items())


@pytest.fixture(params=[name for name, _ in kernels()])
def kernel(request):
    return _kernel.available()[request.param]


def random_monomial(rng, nvars, max_exp=3):
    return bytes(rng.randrange(max_exp + 1) for _ in range(nvars))


class TestPrimitives:
    def test_divides(self, kernel):
        assert kernel.divides(b"\x01\x00\x02", b"\x01\x01\x02")
        assert not kernel.divides(b"\x02\x00\x00", b"\x01\x01\x02")

    def test_mul_div_lcm(self, kernel):
        a, b = b"\x01\x02\x00", b"\x00\x01\x03"
        assert kernel.exp_mul(a, b) == b"\x01\x03\x03"
        assert kernel.exp_lcm(a, b) == b"\x01\x02\x03"
        assert kernel.exp_div(b"\x01\x03\x03", a) == b
        with pytest.raises(ArithmeticError):
            kernel.exp_div(a, b)

    def test_mul_overflow(self, kernel):
        with pytest.raises(OverflowError):
            kernel.exp_mul(b"\xff", b"\x01")

    def test_support(self, kernel):
        assert kernel.support_mask(b"\x00\x02\x00\x01") == 0b1010

    def test_randomized_agreement(self, kernel):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randrange(1, 70)
            a = random_monomial(rng, n)
            b = random_monomial(rng, n)
            brute = all(x <= y for x, y in zip(a, b))
            assert kernel.divides(a, b) == brute
            assert kernel.exp_lcm(a, b) == bytes(max(x, y) for x, y in zip(a, b))


def build_marked_set(rng, nvars, count):
    """Random marked binomials, lead > trail as bytes, so reduction is a
    strictly decreasing walk in a well-order and terminates."""
    out = []
    while len(out) < count:
        u = random_monomial(rng, nvars, 2)
        v = random_monomial(rng, nvars, 2)
        if u == v:
            continue
        out.append((max(u, v), min(u, v)))
    return out


class TestReducerIndex:
    def test_find_divisor_matches_scan(self, kernel):
        rng = random.Random(13)
        for trial in range(30):
            nvars = rng.randrange(2, 50)
            marked = build_marked_set(rng, nvars, rng.randrange(1, 25))
            idx = kernel.ReducerIndex(nvars)
            for lead, trail in marked:
                idx.add(lead, trail)
            for _ in range(20):
                m = random_monomial(rng, nvars)
                brute = next(
                    (
                        i
                        for i, (lead, _) in enumerate(marked)
                        if all(x <= y for x, y in zip(lead, m))
                    ),
                    -1,
                )
                assert idx.find_divisor(m) == brute

    def test_normal_form_irreducible_fixed_point(self, kernel):
        idx = kernel.ReducerIndex(3)
        idx.add(b"\x02\x00\x00", b"\x00\x01\x00")
        m = b"\x01\x01\x01"
        assert idx.normal_form(m) == m

    def test_normal_form_reduces(self, kernel):
        idx = kernel.ReducerIndex(2)
        idx.add(b"\x01\x00", b"\x00\x01")  # a -> b
        assert idx.normal_form(b"\x03\x00") == b"\x00\x03"

    def test_budget_exhaustion_returns_none(self, kernel):
        idx = kernel.ReducerIndex(2)
        idx.add(b"\x01\x00", b"\x00\x01")
        assert idx.normal_form(b"\x05\x00", max_steps=2) is None

    def test_length_guard(self, kernel):
        idx = kernel.ReducerIndex(3)
        with pytest.raises(ValueError):
            idx.add(b"\x01\x00", b"\x00\x01")

    def test_kernels_agree_on_normal_forms(self, kernel):
        rng = random.Random(99)
        nvars = 12
        marked = build_marked_set(rng, nvars, 40)
        idx = kernel.ReducerIndex(nvars)
        ref = PyIndex(nvars)
        for lead, trail in marked:
            idx.add(lead, trail)
            ref.add(lead, trail)
        for _ in range(100):
            m = random_monomial(rng, nvars)
            assert idx.normal_form(m) == ref.normal_form(m)


@pytest.mark.skipif(not _kernel.using_speedups(), reason="extension not built")
def test_whole_run_agrees_across_kernels():
    """The same toric computation, bit for bit, on both kernels."""
    from matoric import toric_gb, uniform

    results = {}
    for name in _kernel.available():
        with _kernel.use_kernel(name):
            gb = toric_gb(uniform(3, 6))
            results[name] = gb.elements
    assert results["python"] == results["c"]
