"""Pure-Python reduction kernel.

Monomials are bytes objects of per-variable exponents, laid out so that
position 0 holds the greatest variable of the ambient order; bytes
comparison then coincides with the lexicographic term order.  The compiled
twin in _speedups.pyx implements the same interface.
"""

from __future__ import annotations

IMPLEMENTATION = "python"


def divides(a: bytes, b: bytes) -> bool:
    """True iff the monomial a divides b (componentwise <=)."""
    return all(x <= y for x, y in zip(a, b))


def exp_mul(a: bytes, b: bytes) -> bytes:
    try:
        return bytes(x + y for x, y in zip(a, b))
    except ValueError:
        raise OverflowError("exponent above 255") from None


def exp_div(a: bytes, b: bytes) -> bytes:
    """a / b; requires b | a."""
    if not divides(b, a):
        raise ArithmeticError("not divisible")
    return bytes(x - y for x, y in zip(a, b))


def exp_lcm(a: bytes, b: bytes) -> bytes:
    return bytes(max(x, y) for x, y in zip(a, b))


def support_mask(a: bytes) -> int:
    """Bitmask of positions with a nonzero exponent."""
    m = 0
    for i, x in enumerate(a):
        if x:
            m |= 1 << i
    return m


class ReducerIndex:
    """Append-only list of marked binomials with divisor lookup.

    find_divisor scans in insertion order, pre-filtering on support masks
    before the full exponent comparison; normal_form applies
    m -> m / lead * trail until no lead divides m.
    """

    __slots__ = ("nvars", "leads", "trails", "supports")

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.leads: list[bytes] = []
        self.trails: list[bytes] = []
        self.supports: list[int] = []

    def __len__(self) -> int:
        return len(self.leads)

    def add(self, lead: bytes, trail: bytes) -> None:
        if len(lead) != self.nvars or len(trail) != self.nvars:
            raise ValueError("monomial length does not match the universe")
        self.leads.append(lead)
        self.trails.append(trail)
        self.supports.append(support_mask(lead))

    def find_divisor(self, m: bytes) -> int:
        """Index of the first entry whose lead divides m, or -1."""
        msup = support_mask(m)
        supports = self.supports
        leads = self.leads
        for i in range(len(leads)):
            if supports[i] & ~msup:
                continue
            lead = leads[i]
            for j in range(self.nvars):
                if lead[j] > m[j]:
                    break
            else:
                return i
        return -1

    def normal_form(self, m: bytes, max_steps: int = 0) -> bytes | None:
        """Fully reduce one monomial; None when max_steps > 0 is exhausted."""
        steps = 0
        while True:
            i = self.find_divisor(m)
            if i < 0:
                return m
            if max_steps and steps >= max_steps:
                return None
            steps += 1
            lead = self.leads[i]
            trail = self.trails[i]
            m = bytes(x - y + z for x, y, z in zip(m, lead, trail))
