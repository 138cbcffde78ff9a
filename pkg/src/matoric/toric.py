"""Toric ideals of matroids: construction, Groebner bases, and verdicts.

The kernel ideal of the monomial map x_B -> prod_{l in B} t_l is computed
by the elimination route only: build the graph ideal generated by
x_B - prod t_l, run Buchberger under a lex order with the whole t-block
greatest, and intersect with the x-subring by dropping the t-block.

A brute-force fiber oracle (grouping degree-d monomials in the x-variables
by their t-image) provides independent evidence: collisions inside fibers
are exactly the binomials of the kernel.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from time import perf_counter
from typing import Callable, Iterable, Sequence

from .engine import (
    Binomial,
    EngineError,
    GroebnerBasis,
    ReductionBudgetError,
    buchberger,
    certify_spairs,
    eliminate,
    reduce_gb,
)
from .matroid import Matroid, elements_of, is_base_sortable, mask_of, sort_pair
from .orders import TermOrder, VariableUniverse, lex_order

WHITE_GB_OK = "WHITE_GB_OK"
NON_QUADRATIC = "NON_QUADRATIC"
QUADRATIC_NOT_EXCHANGE = "QUADRATIC_NOT_EXCHANGE"

FIBER_GUARD = 2_000_000


class FiberGuardError(ValueError):
    """Fiber enumeration would exceed the desk-scale guard."""


class CertificationError(RuntimeError):
    """A claimed Groebner basis failed its independent certification."""


@dataclass(frozen=True)
class Fiber:
    """All degree-d monomials in the x-variables sharing one t-image.

    members are sorted tuples of basis bitmasks (multisets of d bases);
    image counts each ground element, indexed 1..n.
    """

    degree: int
    image: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]


@dataclass
class GBReport:
    """Classification of a reduced Groebner basis of a matroid kernel ideal."""

    matroid: str
    order: str
    gb_size: int
    degree_histogram: dict[int, int]
    verdict: str
    non_exchange_quadrics: list[str]
    elapsed_ms: int
    quadrics: list[tuple[str, str | None]] = field(default_factory=list)

    def to_dict(self, include_timings: bool = True) -> dict:
        return {
            "matroid": self.matroid,
            "order": self.order,
            "gb_size": self.gb_size,
            "degree_histogram": {
                str(d): c for d, c in sorted(self.degree_histogram.items())
            },
            "verdict": self.verdict,
            "non_exchange_quadrics": list(self.non_exchange_quadrics),
            "elapsed_ms": self.elapsed_ms if include_timings else 0,
        }


# -- ideal construction ------------------------------------------------------


def build_graph_ideal(
    m: Matroid, x_order: Sequence[int | Iterable[int]] | None = None
) -> tuple[list[Binomial], TermOrder]:
    """Generators x_B - prod_{l in B} t_l, marked under the elimination order.

    Returns one generator per basis together with the lex order
    t_1 > ... > t_n > x-block (x-block as given, default sorted).
    """
    from .engine import make_binomial

    order = lex_order(m, x_order, with_t=True)
    gens = []
    for mask in m.bases:
        # the t-side leads except in the rank-0 corner (empty product)
        gens.append(make_binomial(order.t_monomial(mask), order.x_monomial([mask])))
    return gens, order


def toric_gb(
    m: Matroid,
    x_order: Sequence[int | Iterable[int]] | None = None,
    degree_cap: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the kernel ideal under lex on the x-block.

    Runs Buchberger on the graph ideal with the t-block greatest, reduces,
    and drops the t-block.
    """
    gens, order = build_graph_ideal(m, x_order)
    gb = buchberger(gens, order, degree_cap=degree_cap)
    gb = reduce_gb(gb)
    t_vars = [v for v in range(order.universe.n_t)]
    return eliminate(gb, t_vars)


# -- the fiber oracle --------------------------------------------------------


def t_image_of(universe: VariableUniverse, member: Sequence[int]) -> tuple[int, ...]:
    """Element-count vector of a multiset of bases (1-based elements)."""
    counts = [0] * universe.ground_n
    for mask in member:
        for e in elements_of(mask):
            counts[e - 1] += 1
    return tuple(counts)


def enumerate_fibers(m: Matroid, d: int, min_size: int = 1) -> list[Fiber]:
    """Group all degree-d monomials in the x-variables by t-image.

    Fibers with at least two members witness kernel binomials.  min_size
    filters the output (use 2 for collisions only).  Guarded against
    infeasible enumeration sizes.
    """
    if d < 1:
        raise ValueError("fiber degree must be at least 1")
    count = math.comb(len(m.bases) + d - 1, d)
    if count > FIBER_GUARD:
        raise FiberGuardError(
            f"degree-{d} enumeration needs {count} monomials (guard {FIBER_GUARD})"
        )
    uni = VariableUniverse.for_matroid(m, with_t=False)
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for member in combinations_with_replacement(sorted(uni.bases), d):
        groups.setdefault(t_image_of(uni, member), []).append(member)
    out = []
    for image, members in groups.items():
        if len(members) >= min_size:
            out.append(Fiber(d, image, tuple(sorted(members))))
    out.sort(key=lambda f: f.image)
    return out


def _exchange_related(m: Matroid, pair_a: tuple[int, int], pair_b: tuple[int, int]) -> bool:
    """Are two basis pairs with equal union related by one symmetric exchange?"""
    b1, b2 = pair_a
    target = frozenset(pair_b)
    for alpha in elements_of(b1 & ~b2):
        abit = 1 << (alpha - 1)
        for beta in elements_of(b2 & ~b1):
            bbit = 1 << (beta - 1)
            b3 = (b1 ^ abit) | bbit
            b4 = (b2 ^ bbit) | abit
            if {b3, b4} == target and b3 in m.bases_set and b4 in m.bases_set:
                return True
    return False


def fiber_graph_connected(
    m: Matroid, d: int
) -> tuple[bool, Fiber | None]:
    """Connectivity of every degree-d fiber under single-exchange moves.

    Within a fiber, two members are adjacent when one arises from the other
    by applying a symmetric exchange to one pair of factors.  Returns
    (True, None) or (False, first disconnected fiber).
    """
    for fiber in enumerate_fibers(m, d, min_size=2):
        members = fiber.members
        index = {mem: i for i, mem in enumerate(members)}
        seen = {0}
        stack = [0]
        while stack:
            cur = members[stack.pop()]
            for i, j in combinations(range(d), 2):
                b1, b2 = cur[i], cur[j]
                rest = list(cur[:i] + cur[i + 1 : j] + cur[j + 1 :])
                for alpha in elements_of(b1 & ~b2):
                    abit = 1 << (alpha - 1)
                    for beta in elements_of(b2 & ~b1):
                        bbit = 1 << (beta - 1)
                        b3 = (b1 ^ abit) | bbit
                        b4 = (b2 ^ bbit) | abit
                        if b3 not in m.bases_set or b4 not in m.bases_set:
                            continue
                        nxt = tuple(sorted(rest + [b3, b4]))
                        t = index[nxt]
                        if t not in seen:
                            seen.add(t)
                            stack.append(t)
        if len(seen) != len(members):
            return False, fiber
    return True, None


# -- classification ----------------------------------------------------------


def _x_factor_masks(gb: GroebnerBasis, mono: bytes) -> list[int]:
    """Basis masks of an x-only monomial, with multiplicity."""
    order = gb.order
    uni = order.universe
    return [
        uni.basis_mask(order.seq[p]) for p, e in enumerate(mono) for _ in range(e)
    ]


def _quadric_pairs(
    gb: GroebnerBasis, b: Binomial
) -> tuple[tuple[int, int], tuple[int, int]]:
    lead = _x_factor_masks(gb, b.lead)
    trail = _x_factor_masks(gb, b.trail)
    return (lead[0], lead[1]), (trail[0], trail[1])


def _witness_exchange(
    m: Matroid, src: tuple[int, int], dst: tuple[int, int]
) -> str | None:
    """One symmetric exchange turning the source pair into the target pair,
    rendered as text, trying both orientations."""
    for (b1, b2), target in ((src, dst), (dst, src)):
        tgt = frozenset(target)
        for alpha in elements_of(b1 & ~b2):
            abit = 1 << (alpha - 1)
            for beta in elements_of(b2 & ~b1):
                bbit = 1 << (beta - 1)
                b3 = (b1 ^ abit) | bbit
                b4 = (b2 ^ bbit) | abit
                if {b3, b4} == tgt and b3 in m.bases_set and b4 in m.bases_set:
                    return (
                        f"alpha={alpha},beta={beta}:"
                        f"({_set_str(b1)},{_set_str(b2)})->"
                        f"({_set_str(b3)},{_set_str(b4)})"
                    )
    return None


def _set_str(mask: int) -> str:
    return "{" + ",".join(str(e) for e in elements_of(mask)) + "}"


def classify_gb(
    gb: GroebnerBasis,
    m: Matroid,
    matroid_id: str = "",
    order_desc: str | None = None,
    elapsed_ms: int = 0,
) -> GBReport:
    """Verdict for a reduced x-only Groebner basis.

    WHITE_GB_OK iff every element is quadratic and every quadric is realized
    by a single symmetric exchange between its two basis pairs.
    """
    if not gb.reduced:
        raise EngineError("classify_gb needs a reduced Groebner basis")
    hist: dict[int, int] = {}
    quadrics: list[tuple[str, str | None]] = []
    non_exchange: list[str] = []
    for b in gb.elements:
        deg = b.degree()
        hist[deg] = hist.get(deg, 0) + 1
        if deg == 2:
            src, dst = _quadric_pairs(gb, b)
            witness = _witness_exchange(m, src, dst)
            text = format_binomial(gb, b)
            quadrics.append((text, witness))
            if witness is None:
                non_exchange.append(text)
    if any(d != 2 for d in hist):
        verdict = NON_QUADRATIC
    elif non_exchange:
        verdict = QUADRATIC_NOT_EXCHANGE
    else:
        verdict = WHITE_GB_OK
    if order_desc is None:
        order_desc = describe_order(gb)
    return GBReport(
        matroid=matroid_id,
        order=order_desc,
        gb_size=len(gb.elements),
        degree_histogram=hist,
        verdict=verdict,
        non_exchange_quadrics=non_exchange,
        elapsed_ms=elapsed_ms,
        quadrics=quadrics,
    )


def describe_order(gb: GroebnerBasis) -> str:
    if gb.label:
        return gb.label
    uni = gb.order.universe
    return ">".join(uni.var_name(v) for v in gb.order.seq)


def format_binomial(gb: GroebnerBasis, b: Binomial) -> str:
    return (
        f"{gb.order.format_monomial(b.lead)} - "
        f"{gb.order.format_monomial(b.trail)}"
    )


def verify_white(
    m: Matroid,
    x_order: Sequence[int | Iterable[int]] | None = None,
    matroid_id: str = "",
    order_desc: str | None = None,
) -> GBReport:
    """Compute the kernel basis under the given x-order and classify it."""
    start = perf_counter()
    gb = toric_gb(m, x_order)
    elapsed = int((perf_counter() - start) * 1000)
    return classify_gb(gb, m, matroid_id, order_desc, elapsed_ms=elapsed)


# -- sorting route ------------------------------------------------------------

SORT_REDUCTION_BUDGET = 100_000


def sorting_gb(
    m: Matroid, certify: bool = True, matroid_id: str = ""
) -> tuple[GroebnerBasis, GBReport]:
    """The pair-sorting quadratic basis of a base-sortable matroid.

    Elements are x_{B1} x_{B2} - x_{S1} x_{S2} for every unsorted basis pair,
    marked with the unsorted pair leading.  Certification (a) reduces every
    S-pair to zero and (b) checks, for degrees 2 and 3, that every monomial's
    normal form is its fiber's unique pairwise-sorted member.  Certification
    failures raise; they are never swallowed.
    """
    start = perf_counter()
    ok, witness = is_base_sortable(m)
    if not ok:
        raise EngineError(f"matroid is not base-sortable: failing pair {witness}")
    order = lex_order(m, None, with_t=False)  # layout only; marking is by sorting
    elems = []
    bases = sorted(m.basis_tuples())
    for i, t1 in enumerate(bases):
        for t2 in bases[i:]:
            s1, s2 = sort_pair(t1, t2)
            if {s1, s2} == {t1, t2}:
                continue
            lead = order.x_monomial([mask_of(t1), mask_of(t2)])
            trail = order.x_monomial([mask_of(s1), mask_of(s2)])
            elems.append(Binomial(lead, trail))
    elems.sort(key=lambda b: (b.lead, b.trail), reverse=True)
    gb = GroebnerBasis(
        tuple(elems), order, reduced=True, label="sorting", marking="sorted"
    )
    if certify:
        try:
            certify_spairs(gb, max_steps=SORT_REDUCTION_BUDGET)
        except (EngineError, ReductionBudgetError) as exc:
            raise CertificationError(f"sorting basis S-pair check failed: {exc}")
        _certify_sorted_normal_forms(m, gb)
    elapsed = int((perf_counter() - start) * 1000)
    report = classify_gb(gb, m, matroid_id, order_desc="sorting", elapsed_ms=elapsed)
    return gb, report


def sorted_member(member: Sequence[int]) -> tuple[int, ...]:
    """The fully sorted multiset of bases with the same element pool:
    merge all factors, sort, and deal elements round-robin by position."""
    d = len(member)
    pool = sorted(e for mask in member for e in elements_of(mask))
    groups = [pool[k::d] for k in range(d)]
    return tuple(sorted(mask_of(g) for g in groups))


def _pair_is_sorted(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    s1, s2 = sort_pair(a, b)
    return {s1, s2} == {a, b}


def _certify_sorted_normal_forms(m: Matroid, gb: GroebnerBasis) -> None:
    idx = gb.build_index()
    order = gb.order
    for d in (2, 3):
        for fiber in enumerate_fibers(m, d):
            target = sorted_member(fiber.members[0])
            if target not in fiber.members:
                raise CertificationError(
                    f"fiber {fiber.image} has no sorted member among its bases"
                )
            pairwise_sorted = [
                mem
                for mem in fiber.members
                if all(
                    _pair_is_sorted(elements_of(mem[i]), elements_of(mem[j]))
                    for i, j in combinations(range(d), 2)
                )
            ]
            if pairwise_sorted != [target]:
                raise CertificationError(
                    f"fiber {fiber.image} has {len(pairwise_sorted)} sorted members"
                )
            target_mono = order.x_monomial(target)
            for mem in fiber.members:
                nf = idx.normal_form(order.x_monomial(mem), SORT_REDUCTION_BUDGET)
                if nf is None:
                    raise CertificationError("sorting reduction exceeded its budget")
                if nf != target_mono:
                    raise CertificationError(
                        f"normal form of {mem} is not the sorted member"
                    )


# -- elimination chains --------------------------------------------------------


def elimination_chain(
    parent: Matroid,
    parent_order: Sequence[int | Iterable[int]],
    removed: Sequence[Iterable[int]],
    parent_id: str = "",
    child_ids: Sequence[str] | None = None,
) -> list[tuple[Matroid, GroebnerBasis, GBReport]]:
    """Derive kernels of basis-deletion children by variable elimination.

    The removed bases must form a prefix of the parent's x-order (greatest
    first, in removal order).  The parent basis is computed once; each
    elimination yields the reduced basis of the child's kernel ideal, which
    is classified against the child matroid.
    """
    masks = [b if isinstance(b, int) else mask_of(b) for b in parent_order]
    removed_masks = [b if isinstance(b, int) else mask_of(b) for b in removed]
    if masks[: len(removed_masks)] != removed_masks:
        raise EngineError(
            "removed bases must be the greatest x-variables, in removal order"
        )
    start = perf_counter()
    gb = toric_gb(parent, masks)
    out = []
    current = parent
    for k, mask in enumerate(removed_masks):
        bases = [b for b in current.bases if b != mask]
        current = Matroid(current.n, bases)  # validates the child
        var = gb.order.universe.x_var_of(mask)
        gb = eliminate(gb, [var])
        elapsed = int((perf_counter() - start) * 1000)
        cid = child_ids[k] if child_ids else f"{parent_id}-minus-{k + 1}"
        report = classify_gb(gb, current, cid, elapsed_ms=elapsed)
        out.append((current, gb, report))
    return out


# -- order search ---------------------------------------------------------------


def _objective(report: GBReport) -> tuple[int, int, int]:
    max_deg = max(report.degree_histogram, default=2)
    return (max_deg, len(report.non_exchange_quadrics), report.gb_size)


def order_search(
    m: Matroid,
    strategy: str = "hill-climb",
    budget: int = 16,
    seed: int = 0,
    start_order: Sequence[int | Iterable[int]] | None = None,
    matroid_id: str = "",
    log: Callable[[str], None] | None = None,
) -> tuple[GBReport, tuple[int, ...]]:
    """Search x-variable orders for a quadratic symmetric-exchange basis.

    Minimizes (max degree, non-exchange quadrics, basis size); deterministic
    given the seed.  The start order (the embedded one, when the matroid has
    one) is evaluated first; the search stops early on a verdict of
    WHITE_GB_OK.  Returns the best report and the achieving order.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if strategy not in ("random", "hill-climb"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    if start_order is None:
        current = sorted(m.bases, key=elements_of)
    else:
        current = [b if isinstance(b, int) else mask_of(b) for b in start_order]

    best_report = None
    best_order = tuple(current)
    best_key = None
    evals = 0

    def evaluate(masks: list[int]) -> GBReport:
        nonlocal best_report, best_order, best_key, evals
        evals += 1
        report = verify_white(m, masks, matroid_id=matroid_id)
        key = _objective(report)
        if best_key is None or key < best_key:
            best_key, best_report, best_order = key, report, tuple(masks)
        if log:
            log(f"order-search eval {evals}: {key}")
        return report

    report = evaluate(list(current))
    while evals < budget and best_report.verdict != WHITE_GB_OK:
        if strategy == "random":
            cand = list(current)
            rng.shuffle(cand)
            evaluate(cand)
        else:
            cand = list(best_order)
            i = rng.randrange(len(cand) - 1)
            cand[i], cand[i + 1] = cand[i + 1], cand[i]
            report = evaluate(cand)
    return best_report, best_order


# -- cross-cutting checks --------------------------------------------------------


def kernel_soundness(gb: GroebnerBasis) -> bool:
    """Every element maps to zero under the monomial map (equal t-images)."""
    uni = gb.order.universe
    for b in gb.elements:
        if t_image_of(uni, _x_factor_masks(gb, b.lead)) != t_image_of(
            uni, _x_factor_masks(gb, b.trail)
        ):
            return False
    return True


def duality_transport_check(m: Matroid) -> bool:
    """Complementation carries degree-2 fibers of m onto fibers of its dual,
    preserving single-exchange relatedness of member pairs."""
    from .matroid import dual

    md = dual(m)
    full = (1 << m.n) - 1
    fibers = enumerate_fibers(m, 2, min_size=2)
    dual_fibers = {f.image: set(f.members) for f in enumerate_fibers(md, 2, min_size=2)}
    seen_images = set()
    for fiber in fibers:
        image = tuple(2 - c for c in fiber.image)
        mapped = {tuple(sorted((full ^ a, full ^ b))) for a, b in fiber.members}
        if dual_fibers.get(image) != mapped:
            return False
        seen_images.add(image)
        for mem_a, mem_b in combinations(fiber.members, 2):
            rel = _exchange_related(m, (mem_a[0], mem_a[1]), (mem_b[0], mem_b[1]))
            da = tuple(sorted((full ^ mem_a[0], full ^ mem_a[1])))
            db = tuple(sorted((full ^ mem_b[0], full ^ mem_b[1])))
            rel_dual = _exchange_related(md, (da[0], da[1]), (db[0], db[1]))
            if rel != rel_dual:
                return False
    return seen_images == set(dual_fibers)
