"""Matroids represented by their collections of bases.

A matroid lives on the ground set {1, ..., n} (n <= 64) and is stored as a
set of bases, each basis a bitmask over the ground set.  All predicates and
constructions used by the toric-ideal pipeline live here: the symmetric
exchange axiom, rank/duality/loops/coloops, direct sums and 2-sums,
3-connectivity, base-sortability, and brute-force isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence, TextIO

MAX_GROUND = 64


class MatroidError(Exception):
    """Base class for matroid validation failures."""


class EmptyBasesError(MatroidError):
    """The collection of bases is empty."""


class CardinalityError(MatroidError):
    """Not all bases share one cardinality."""


class ElementRangeError(MatroidError):
    """A basis contains an element outside 1..n."""


class ExchangeAxiomError(MatroidError):
    """The symmetric exchange axiom fails; carries the first witness."""

    def __init__(self, witness):
        self.witness = witness
        b1, b2, alpha = witness
        super().__init__(
            f"symmetric exchange fails for B1={set(b1)}, B2={set(b2)}, alpha={alpha}"
        )


class TwoSumError(MatroidError):
    """Preconditions of the 2-sum are violated."""


def mask_of(elements: Iterable[int]) -> int:
    """Bitmask of a set of 1-based ground elements."""
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    """Sorted tuple of 1-based elements of a bitmask."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield 1-based elements of a bitmask in increasing order."""
    e = 1
    while mask:
        if mask & 1:
            yield e
        mask >>= 1
        e += 1


@dataclass(frozen=True)
class ExchangeWitness:
    """One symmetric exchange: alpha leaves b1 for b4, beta leaves b2 for b3."""

    b1: tuple[int, ...]
    b2: tuple[int, ...]
    alpha: int
    beta: int
    b3: tuple[int, ...]
    b4: tuple[int, ...]


class Matroid:
    """Immutable matroid given by ground-set size, rank and basis bitmasks.

    Construction validates the defining data and the symmetric exchange
    axiom; use :func:`validate_basis_axiom` directly to obtain a failure
    witness instead of an exception.
    """

    __slots__ = ("n", "rank", "bases", "bases_set", "_hash")

    def __init__(self, n: int, bases: Iterable[int], _checked: bool = False):
        if not (1 <= n <= MAX_GROUND):
            raise ElementRangeError(f"ground-set size {n} outside 1..{MAX_GROUND}")
        masks = sorted(set(bases))
        if not masks:
            raise EmptyBasesError("a matroid needs at least one basis")
        full = (1 << n) - 1
        for m in masks:
            if m & ~full:
                raise ElementRangeError(
                    f"basis {set(elements_of(m))} not inside 1..{n}"
                )
        rank = masks[0].bit_count()
        if any(m.bit_count() != rank for m in masks):
            raise CardinalityError("bases of unequal cardinality")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "bases", tuple(masks))
        object.__setattr__(self, "bases_set", frozenset(masks))
        object.__setattr__(self, "_hash", hash((n, self.bases)))
        if not _checked:
            ok, witness = validate_basis_axiom(masks, n)
            if not ok:
                raise ExchangeAxiomError(witness)

    def __setattr__(self, name, value):
        raise AttributeError("Matroid is immutable")

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        """Build from explicit element collections, e.g. [[1,2],[1,3]]."""
        return cls(n, (mask_of(b) for b in bases))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matroid)
            and self.n == other.n
            and self.bases == other.bases
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank}, |bases|={len(self.bases)})"

    def __reduce__(self):
        return (Matroid, (self.n, self.bases, True))

    def basis_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(elements_of(m) for m in self.bases)

    def is_basis(self, mask: int) -> bool:
        return mask in self.bases_set


def uniform(rank: int, n: int) -> Matroid:
    """The matroid whose bases are all rank-subsets of {1..n}."""
    if not 0 <= rank <= n:
        raise ValueError(f"need 0 <= rank <= n, got rank={rank}, n={n}")
    return Matroid(
        n, (mask_of(c) for c in combinations(range(1, n + 1), rank)), _checked=True
    )


def validate_basis_axiom(
    bases: Sequence[int], n: int
) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...], int] | None]:
    """Check the symmetric exchange axiom over a basis collection.

    Returns (True, None), or (False, (b1, b2, alpha)) for the first triple in
    lexicographic scan order such that no beta in b2 - b1 exchanges
    symmetrically with alpha.  Structural defects (empty input, unequal
    cardinalities, elements outside 1..n) raise instead.
    """
    masks = sorted(set(bases))
    if not masks:
        raise EmptyBasesError("empty basis collection")
    full = (1 << n) - 1
    for m in masks:
        if m & ~full:
            raise ElementRangeError(f"basis {set(elements_of(m))} not inside 1..{n}")
    r = masks[0].bit_count()
    if any(m.bit_count() != r for m in masks):
        raise CardinalityError("bases of unequal cardinality")

    bset = frozenset(masks)
    order = sorted(masks, key=elements_of)
    for b1 in order:
        for b2 in order:
            only1 = b1 & ~b2
            if not only1:
                continue
            only2 = b2 & ~b1
            for alpha in iter_bits(only1):
                abit = 1 << (alpha - 1)
                found = False
                for beta in iter_bits(only2):
                    bbit = 1 << (beta - 1)
                    if (b1 ^ abit) | bbit in bset and (b2 ^ bbit) | abit in bset:
                        found = True
                        break
                if not found:
                    return False, (elements_of(b1), elements_of(b2), alpha)
    return True, None


def rank_of_subset(m: Matroid, x: Iterable[int]) -> int:
    """max over bases B of |B & x|; the standard rank function."""
    xm = mask_of(x)
    if xm & ~((1 << m.n) - 1):
        raise ElementRangeError(f"subset {set(elements_of(xm))} not inside 1..{m.n}")
    if not xm:
        return 0
    return max((b & xm).bit_count() for b in m.bases)


def dual(m: Matroid) -> Matroid:
    """Matroid on the same ground set whose bases are the complements."""
    full = (1 << m.n) - 1
    return Matroid(m.n, (full ^ b for b in m.bases), _checked=True)


def loops(m: Matroid) -> tuple[int, ...]:
    """Elements contained in no basis."""
    union = 0
    for b in m.bases:
        union |= b
    return elements_of(((1 << m.n) - 1) ^ union)


def coloops(m: Matroid) -> tuple[int, ...]:
    """Elements contained in every basis."""
    inter = (1 << m.n) - 1
    for b in m.bases:
        inter &= b
    return elements_of(inter)


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Disjoint union; m2's elements are relabeled to n1+1..n1+n2."""
    shift = m1.n
    bases = [b1 | (b2 << shift) for b1 in m1.bases for b2 in m2.bases]
    return Matroid(m1.n + m2.n, bases, _checked=True)


def two_sum(m1: Matroid, m2: Matroid, p: int) -> Matroid:
    """Glue m1 and m2 along the shared element p, then delete p.

    The label p must denote the identified element in both summands (relabel
    beforehand if it differs); p may not be a loop or coloop of either side.
    The output ground set lists m1's other elements first (increasing), then
    m2's, relabeled to 1..(n1+n2-2).
    """
    for side, mm in (("m1", m1), ("m2", m2)):
        if not 1 <= p <= mm.n:
            raise TwoSumError(f"p={p} outside the ground set of {side}")
        if p in loops(mm):
            raise TwoSumError(f"p={p} is a loop of {side}")
        if p in coloops(mm):
            raise TwoSumError(f"p={p} is a coloop of {side}")

    pbit = 1 << (p - 1)

    def relabel_drop(mask: int, n: int, offset: int) -> int:
        out = 0
        pos = offset
        for e in range(1, n + 1):
            if e == p:
                continue
            if mask & (1 << (e - 1)):
                out |= 1 << pos
            pos += 1
        return out

    bases = []
    for b in m1.bases:
        for d in m2.bases:
            if bool(b & pbit) == bool(d & pbit):
                continue  # need p in exactly one of the two
            bases.append(relabel_drop(b, m1.n, 0) | relabel_drop(d, m2.n, m1.n - 1))
    return Matroid(m1.n + m2.n - 2, bases)


def is_3_connected(m: Matroid) -> tuple[bool, tuple[int, ...] | None]:
    """Separation-based 3-connectivity test.

    Scans subsets X with |X| <= n/2 (sizes ascending, then lexicographic) for
    a 1-separation r(X) + r(E-X) = r(M) with both sides non-empty, or an
    exact 2-separation r(X) + r(E-X) = r(M) + 1 with both sides of size at
    least two.  Returns (False, X) for the first separating X found, else
    (True, None).
    """
    n, r = m.n, m.rank
    elems = range(1, n + 1)
    for size in range(1, n // 2 + 1):
        for xs in combinations(elems, size):
            xm = mask_of(xs)
            rx = max((b & xm).bit_count() for b in m.bases)
            ry = max((b & ~xm).bit_count() for b in m.bases)
            if rx + ry == r and size >= 1 and n - size >= 1:
                return False, xs
            if rx + ry == r + 1 and size >= 2 and n - size >= 2:
                return False, xs
    return True, None


def symmetric_exchanges(
    m: Matroid, b1: Iterable[int], b2: Iterable[int]
) -> list[ExchangeWitness]:
    """All symmetric exchanges between two bases of m.

    For each alpha in b1-b2 and beta in b2-b1 with both replacement sets in
    the basis collection, yields the witness carrying the resulting bases.
    """
    m1 = mask_of(b1)
    m2 = mask_of(b2)
    for name, mask in (("b1", m1), ("b2", m2)):
        if mask not in m.bases_set:
            raise MatroidError(f"{name}={set(elements_of(mask))} is not a basis")
    out = []
    for alpha in iter_bits(m1 & ~m2):
        abit = 1 << (alpha - 1)
        for beta in iter_bits(m2 & ~m1):
            bbit = 1 << (beta - 1)
            b3 = (m1 ^ abit) | bbit
            b4 = (m2 ^ bbit) | abit
            if b3 in m.bases_set and b4 in m.bases_set:
                out.append(
                    ExchangeWitness(
                        elements_of(m1),
                        elements_of(m2),
                        alpha,
                        beta,
                        elements_of(b3),
                        elements_of(b4),
                    )
                )
    return out


def sort_pair(
    b1: Sequence[int], b2: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Merge two equal-size element tuples, sort, and split odd/even positions."""
    merged = sorted(tuple(b1) + tuple(b2))
    return tuple(merged[0::2]), tuple(merged[1::2])


def is_base_sortable(
    m: Matroid, any_labeling: bool = False
) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Does every pair of bases sort, odd/even, into a pair of bases?

    Uses the identity labeling; with any_labeling=True a relabeling making
    the matroid base-sortable is searched over all n! permutations.  On
    failure returns the first failing pair in lexicographic scan order.
    """
    if any_labeling:
        return (find_sortable_labeling(m) is not None), None
    order = sorted(m.basis_tuples())
    for i, t1 in enumerate(order):
        for t2 in order[i:]:
            s1, s2 = sort_pair(t1, t2)
            if mask_of(s1) not in m.bases_set or mask_of(s2) not in m.bases_set:
                return False, (t1, t2)
    return True, None


def find_sortable_labeling(m: Matroid) -> tuple[int, ...] | None:
    """A permutation p (as image tuple: element e -> p[e-1]) under which m
    becomes base-sortable, or None."""
    for perm in permutations(range(1, m.n + 1)):
        relabeled = relabel(m, perm)
        ok, _ = is_base_sortable(relabeled)
        if ok:
            return perm
    return None


def relabel(m: Matroid, perm: Sequence[int]) -> Matroid:
    """Apply the ground-set bijection e -> perm[e-1]."""
    bases = [mask_of(perm[e - 1] for e in elements_of(b)) for b in m.bases]
    return Matroid(m.n, bases, _checked=True)


def is_isomorphic(m1: Matroid, m2: Matroid) -> tuple[bool, tuple[int, ...] | None]:
    """Brute-force isomorphism over all relabelings of the ground set.

    Returns (True, perm) for one witness permutation (element e of m1 maps
    to perm[e-1] in m2), or (False, None).  Cheap invariants (sizes, ranks,
    element-degree multisets) prune most non-isomorphic pairs immediately.
    """
    if m1.n != m2.n or m1.rank != m2.rank or len(m1.bases) != len(m2.bases):
        return False, None

    def degrees(m: Matroid) -> list[int]:
        return [
            sum(1 for b in m.bases if b & (1 << e)) for e in range(m.n)
        ]

    d1, d2 = degrees(m1), degrees(m2)
    if sorted(d1) != sorted(d2):
        return False, None

    target = m2.bases_set
    tuples1 = [elements_of(b) for b in m1.bases]
    for perm in permutations(range(1, m1.n + 1)):
        if any(d1[e - 1] != d2[perm[e - 1] - 1] for e in range(1, m1.n + 1)):
            continue
        if all(mask_of(perm[e - 1] for e in tup) in target for tup in tuples1):
            return True, perm
    return False, None


# ---------------------------------------------------------------------------
# text format: first line "<n> <rank>", then bases as comma-separated
# increasing element lists, one or more per line; '#' starts a comment.


def parse_matroids(stream: TextIO | str, check_axiom: bool = True) -> list[Matroid]:
    """Parse one or more matroid records from the text format.

    Every line of exactly two plain integers starts a new record (its
    header); all comma-separated tokens that follow are bases of the current
    record.  Rank-1 bases must therefore be written one per line.  Raises
    ValueError with a line number on malformed input.  check_axiom=False
    skips the exchange-axiom validation so a caller can report the witness
    itself.
    """
    if isinstance(stream, str):
        lines = stream.splitlines()
    else:
        lines = stream.read().splitlines()

    records: list[tuple[int, int, list[int], int]] = []  # n, rank, masks, header line
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 2 and all(p.isdigit() for p in parts):
            records.append((int(parts[0]), int(parts[1]), [], lineno))
            continue
        if not records:
            raise ValueError(f"line {lineno}: basis data before any '<n> <rank>' header")
        n, rank, masks, _ = records[-1]
        for token in parts:
            try:
                elems = [int(t) for t in token.split(",")]
            except ValueError:
                raise ValueError(f"line {lineno}: bad basis token {token!r}") from None
            if any(not 1 <= e <= n for e in elems):
                raise ValueError(
                    f"line {lineno}: element outside 1..{n} in basis {token!r}"
                )
            if list(sorted(set(elems))) != elems:
                raise ValueError(
                    f"line {lineno}: basis {token!r} not strictly increasing"
                )
            if len(elems) != rank:
                raise ValueError(
                    f"line {lineno}: basis {token!r} has size {len(elems)}, rank is {rank}"
                )
            masks.append(mask_of(elems))

    out = []
    for n, rank, masks, header_line in records:
        try:
            m = Matroid(n, masks, _checked=not check_axiom)
        except MatroidError as exc:
            raise ValueError(
                f"record at line {header_line}: invalid matroid: {exc}"
            ) from exc
        out.append(m)
    return out


def parse_matroid(stream: TextIO | str, check_axiom: bool = True) -> Matroid:
    """Parse exactly one matroid record."""
    ms = parse_matroids(stream, check_axiom=check_axiom)
    if len(ms) != 1:
        raise ValueError(f"expected one matroid record, found {len(ms)}")
    return ms[0]


def format_matroid(m: Matroid) -> str:
    """Render a matroid in the text format (one basis per line)."""
    lines = [f"{m.n} {m.rank}"]
    for b in sorted(m.basis_tuples()):
        lines.append(",".join(str(e) for e in b))
    return "\n".join(lines) + "\n"
