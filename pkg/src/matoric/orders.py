"""Variable universes and lexicographic term orders.

A universe holds ground-set variables t_i (one per retained ground element)
followed by basis variables x_B (one per basis, canonically sorted).  A term
order is an explicit greatest-first sequence of those variables; monomials
are bytes of exponents in that sequence, so comparing monomials is plain
bytes comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .matroid import Matroid, elements_of, mask_of

LT, EQ, GT = -1, 0, 1


class OrderError(ValueError):
    """Order/universe mismatch or malformed order data."""


@dataclass(frozen=True)
class VariableUniverse:
    """Indexed variables: t-variables first, then one x-variable per basis.

    t_labels are the ground elements that still carry a t-variable (empty
    after eliminating the ground block); bases are bitmasks over a ground
    set of size ground_n.  Variable ids are dense: 0..len(t_labels)-1 are
    t's, the rest x's in sorted basis order.
    """

    ground_n: int
    t_labels: tuple[int, ...]
    bases: tuple[int, ...]

    @classmethod
    def for_matroid(cls, m: Matroid, with_t: bool = True) -> "VariableUniverse":
        t = tuple(range(1, m.n + 1)) if with_t else ()
        return cls(m.n, t, tuple(sorted(m.bases, key=elements_of)))

    @property
    def n_t(self) -> int:
        return len(self.t_labels)

    @property
    def nvars(self) -> int:
        return len(self.t_labels) + len(self.bases)

    def is_t(self, var: int) -> bool:
        return var < self.n_t

    def t_label(self, var: int) -> int:
        return self.t_labels[var]

    def basis_mask(self, var: int) -> int:
        return self.bases[var - self.n_t]

    def x_var_of(self, mask: int) -> int:
        try:
            return self.n_t + self.bases.index(mask)
        except ValueError:
            raise OrderError(
                f"no x-variable for basis {set(elements_of(mask))}"
            ) from None

    def t_var_of(self, label: int) -> int:
        try:
            return self.t_labels.index(label)
        except ValueError:
            raise OrderError(f"no t-variable for element {label}") from None

    def var_name(self, var: int) -> str:
        if self.is_t(var):
            return f"t{self.t_label(var)}"
        elems = elements_of(self.basis_mask(var))
        if all(e <= 9 for e in elems):
            return "x" + "".join(str(e) for e in elems)
        return "x{" + ",".join(str(e) for e in elems) + "}"

    def weight(self, var: int) -> int:
        """Grading: t-variables weigh 1, x-variables their basis size."""
        if self.is_t(var):
            return 1
        return self.basis_mask(var).bit_count()


class TermOrder:
    """Pure lexicographic order from an explicit greatest-first variable list.

    Monomials under this order are exponent bytes with position 0 holding
    the greatest variable, so bytes comparison realizes the order.
    """

    __slots__ = ("universe", "seq", "pos", "weights")

    def __init__(self, universe: VariableUniverse, seq: Sequence[int]):
        seq = tuple(seq)
        if sorted(seq) != list(range(universe.nvars)):
            raise OrderError("sequence is not a permutation of the universe")
        self.universe = universe
        self.seq = seq
        pos = [0] * len(seq)
        for p, v in enumerate(seq):
            pos[v] = p
        self.pos = tuple(pos)
        self.weights = tuple(universe.weight(v) for v in seq)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TermOrder)
            and self.universe == other.universe
            and self.seq == other.seq
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.seq))

    def __repr__(self) -> str:
        names = [self.universe.var_name(v) for v in self.seq]
        if len(names) > 8:
            names = names[:8] + ["..."]
        return f"TermOrder({' > '.join(names)})"

    @property
    def nvars(self) -> int:
        return len(self.seq)

    def is_elimination_order(self) -> bool:
        """Every t-variable greater than every x-variable."""
        n_t = self.universe.n_t
        return all(self.universe.is_t(v) for v in self.seq[:n_t])

    # -- monomial construction -------------------------------------------

    def unit(self) -> bytes:
        return bytes(self.nvars)

    def monomial(self, exponents: dict[int, int] | Iterable[tuple[int, int]]) -> bytes:
        """Monomial from {variable id: exponent}."""
        exps = bytearray(self.nvars)
        items = exponents.items() if isinstance(exponents, dict) else exponents
        for var, e in items:
            if e < 0 or e > 255:
                raise OrderError(f"exponent {e} out of range")
            exps[self.pos[var]] += e
        return bytes(exps)

    def x_monomial(self, masks: Iterable[int]) -> bytes:
        """Product of x-variables given by basis bitmasks (with multiplicity)."""
        exps = bytearray(self.nvars)
        for mask in masks:
            exps[self.pos[self.universe.x_var_of(mask)]] += 1
        return bytes(exps)

    def t_monomial(self, mask_or_counts: int | Sequence[int]) -> bytes:
        """Product of t-variables: from an element bitmask or a count vector
        indexed by ground element."""
        exps = bytearray(self.nvars)
        if isinstance(mask_or_counts, int):
            for e in elements_of(mask_or_counts):
                exps[self.pos[self.universe.t_var_of(e)]] += 1
        else:
            for label, c in enumerate(mask_or_counts, start=1):
                if c:
                    exps[self.pos[self.universe.t_var_of(label)]] += c
        return bytes(exps)

    # -- queries ----------------------------------------------------------

    def factors(self, m: bytes) -> list[tuple[int, int]]:
        """(variable id, exponent) pairs, greatest variable first."""
        return [(self.seq[p], e) for p, e in enumerate(m) if e]

    def weighted_degree(self, m: bytes) -> int:
        return sum(w * e for w, e in zip(self.weights, m))

    def format_monomial(self, m: bytes) -> str:
        parts = []
        for var, e in self.factors(m):
            name = self.universe.var_name(var)
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def suffix(self, k: int) -> "TermOrder":
        """The induced order after dropping the k greatest variables."""
        dropped = self.seq[:k]
        kept = self.seq[k:]
        uni = self.universe
        keep_t = tuple(
            uni.t_label(v) for v in sorted(v for v in kept if uni.is_t(v))
        )
        keep_x = tuple(
            sorted((uni.basis_mask(v) for v in kept if not uni.is_t(v)),
                   key=elements_of)
        )
        sub = VariableUniverse(uni.ground_n, keep_t, keep_x)

        def remap(v: int) -> int:
            if uni.is_t(v):
                return sub.t_var_of(uni.t_label(v))
            return sub.x_var_of(uni.basis_mask(v))

        return TermOrder(sub, tuple(remap(v) for v in kept))


def compare(order: TermOrder, a: bytes, b: bytes) -> int:
    """LT/EQ/GT (-1/0/1) under the order; monomials in the order's layout."""
    if len(a) != order.nvars or len(b) != order.nvars:
        raise OrderError("monomial does not belong to this order's universe")
    if a == b:
        return EQ
    return GT if a > b else LT


def lex_order(
    m: Matroid,
    x_order: Sequence[int | Iterable[int]] | None = None,
    with_t: bool = True,
) -> TermOrder:
    """Elimination-ready lex order t_1 > ... > t_n > x-block.

    x_order lists bases greatest-first (masks or element iterables); it must
    cover the basis set exactly.  Default: bases sorted lexicographically,
    smallest tuple greatest.  with_t=False builds the x-only order.
    """
    uni = VariableUniverse.for_matroid(m, with_t=with_t)
    masks = _x_masks(m, x_order)
    seq = list(range(uni.n_t)) + [uni.x_var_of(mk) for mk in masks]
    return TermOrder(uni, seq)


def _x_masks(m: Matroid, x_order) -> list[int]:
    if x_order is None:
        return sorted(m.bases, key=elements_of)
    masks = [b if isinstance(b, int) else mask_of(b) for b in x_order]
    if sorted(masks) != sorted(m.bases):
        raise OrderError("x-variable order does not match the basis set")
    return masks


# -- order files: one variable name per line, greatest first ---------------


def parse_order_file(text: str, m: Matroid) -> TermOrder:
    """Load a term order for m from its text form.

    Accepts either the full universe (t's and x's) or only the x-block, in
    which case t_1 > ... > t_n is prepended.  Validates exact coverage.
    """
    names = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            names.append((lineno, line))

    t_seen: list[int] = []
    masks: list[int] = []
    for lineno, name in names:
        if name.startswith("t") and name[1:].isdigit():
            label = int(name[1:])
            if not 1 <= label <= m.n:
                raise OrderError(f"line {lineno}: {name!r} outside the ground set")
            if masks:
                raise OrderError(
                    f"line {lineno}: t-variables must precede all x-variables"
                )
            t_seen.append(label)
            continue
        if name.startswith("x"):
            body = name[1:]
            if body.startswith("{") and body.endswith("}"):
                elems = [int(s) for s in body[1:-1].split(",")]
            elif body.isdigit():
                elems = [int(c) for c in body]
            else:
                raise OrderError(f"line {lineno}: bad variable name {name!r}")
            if sorted(set(elems)) != elems:
                raise OrderError(f"line {lineno}: {name!r} not strictly increasing")
            mask = mask_of(elems)
            if mask not in m.bases_set:
                raise OrderError(
                    f"line {lineno}: {name!r} does not name a basis of the matroid"
                )
            masks.append(mask)
            continue
        raise OrderError(f"line {lineno}: bad variable name {name!r}")

    if sorted(set(masks)) != sorted(masks):
        raise OrderError("duplicate x-variable in order file")
    if sorted(masks) != sorted(m.bases):
        raise OrderError("order file does not cover the basis variables exactly")
    if t_seen and t_seen != list(range(1, m.n + 1)):
        raise OrderError("t-variables must appear once each, t1..tn, greatest first")
    return lex_order(m, masks, with_t=True)


def format_order(order: TermOrder) -> str:
    """Render an order in the order-file format."""
    return "\n".join(order.universe.var_name(v) for v in order.seq) + "\n"
