"""Binomial-only Buchberger engine.

Every ideal element is a pure difference of monomials, marked as
(lead, trail) with lead > trail under the ambient lexicographic order.
S-polynomials and reductions of pure differences stay pure differences, so
no coefficient arithmetic exists anywhere: reduction rewrites one monomial
at a time through the kernel's ReducerIndex.

Pair management follows Gebauer-Moller (product and chain criteria), with
normal selection: minimal lcm degree first, ties by the lcm itself.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from . import _kernel
from .orders import OrderError, TermOrder


class EngineError(ValueError):
    """Invalid input to the Groebner engine."""


class ReductionBudgetError(RuntimeError):
    """A capped reduction did not reach a normal form."""


class Binomial(NamedTuple):
    """Marked pure difference lead - trail; lead > trail in the run's order."""

    lead: bytes
    trail: bytes

    def degree(self) -> int:
        return sum(self.lead)


def make_binomial(u: bytes, v: bytes) -> Binomial | None:
    """Mark the difference of two monomials; None when they coincide."""
    if u == v:
        return None
    return Binomial(u, v) if u > v else Binomial(v, u)


@dataclass(frozen=True)
class GroebnerBasis:
    """A set of marked binomials over one variable layout.

    order provides the byte layout and, when marking == "lex", the term
    order the marking follows.  marking == "sorted" flags bases whose
    leads are chosen by the pair-sorting rule instead; those support
    normal forms and S-pair certification but not elimination.
    """

    elements: tuple[Binomial, ...]
    order: TermOrder
    reduced: bool = False
    label: str = ""
    degree_cap: int | None = None
    marking: str = "lex"

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def nvars(self) -> int:
        return self.order.nvars

    def build_index(self):
        idx = _kernel.active(self.nvars).ReducerIndex(max(self.nvars, 1))
        for b in self.elements:
            idx.add(b.lead, b.trail)
        return idx


def s_pair(f: Binomial, g: Binomial, order: TermOrder) -> Binomial | None:
    """Marked S-polynomial of two marked binomials, or None when it is zero."""
    k = _kernel.active(order.nvars)
    lcm = k.exp_lcm(f.lead, g.lead)
    u = k.exp_mul(k.exp_div(lcm, f.lead), f.trail)
    v = k.exp_mul(k.exp_div(lcm, g.lead), g.trail)
    return make_binomial(u, v)


def reduce_binomial(
    b: Binomial, basis: Iterable[Binomial] | GroebnerBasis
) -> Binomial | None:
    """Normal form of a binomial modulo a marked set; None when it vanishes.

    Both monomials are rewritten until neither is divisible by any lead.
    """
    if isinstance(basis, GroebnerBasis):
        idx = basis.build_index()
    else:
        elems = list(basis)
        nv = len(elems[0].lead) if elems else len(b.lead)
        idx = _kernel.active(nv).ReducerIndex(nv)
        for e in elems:
            idx.add(e.lead, e.trail)
    return _reduce_with_index(b, idx)


def _reduce_with_index(b: Binomial, idx, max_steps: int = 0) -> Binomial | None:
    u = idx.normal_form(b.lead, max_steps)
    v = idx.normal_form(b.trail, max_steps)
    if u is None or v is None:
        raise ReductionBudgetError("reduction exceeded its step budget")
    return make_binomial(u, v)


def normal_form(m: bytes, gb: GroebnerBasis) -> bytes:
    """The unique irreducible monomial congruent to m modulo gb's ideal."""
    if not gb.reduced:
        raise EngineError("normal_form needs a reduced Groebner basis")
    if not gb.elements:
        return m
    return gb.build_index().normal_form(m)


def _check_generators(
    gens: Sequence[Binomial], order: TermOrder, degree_cap: int | None
) -> None:
    for g in gens:
        if len(g.lead) != order.nvars or len(g.trail) != order.nvars:
            raise OrderError("generator does not belong to the order's universe")
        if degree_cap is not None:
            if order.weighted_degree(g.lead) != order.weighted_degree(g.trail):
                raise EngineError("degree-capped run requires homogeneous input")


def buchberger(
    generators: Iterable[Binomial],
    order: TermOrder,
    degree_cap: int | None = None,
    use_criteria: bool = True,
) -> GroebnerBasis:
    """Groebner basis of the binomial ideal spanned by the generators.

    With degree_cap set, S-pairs whose lcm exceeds that weighted degree are
    discarded; the output is then only trustworthy up to the cap (the flag
    is recorded on the result).  use_criteria=False disables the
    Gebauer-Moller pruning for certification runs.
    """
    raw = list(generators)
    for g in raw:
        if g.lead == g.trail:
            raise EngineError("generator with equal sides is not a binomial")
    gens = sorted(make_binomial(g.lead, g.trail) for g in raw)
    _check_generators(gens, order, degree_cap)

    k = _kernel.active(order.nvars)
    idx = k.ReducerIndex(order.nvars)
    G: list[Binomial] = []
    leads: list[bytes] = []
    pairs: list[tuple[int, bytes, int, int]] = []  # heap: (wdeg, lcm, i, j)
    live: dict[tuple[int, int], bytes] = {}

    def push_pair(i: int, j: int, lcm: bytes) -> None:
        live[(i, j)] = lcm
        heapq.heappush(pairs, (order.weighted_degree(lcm), lcm, i, j))

    def update(f: Binomial) -> None:
        """Add f to the basis, maintaining the pair set."""
        t = len(G)
        lmf = f.lead
        new_lcms = [k.exp_lcm(leads[i], lmf) for i in range(t)]
        if use_criteria:
            # chain criterion against existing pairs
            for (i, j), lcm_ij in list(live.items()):
                if (
                    k.divides(lmf, lcm_ij)
                    and lcm_ij != new_lcms[i]
                    and lcm_ij != new_lcms[j]
                ):
                    del live[(i, j)]
            # group new pairs by lcm, keep minimal lcms, apply product criterion
            groups: dict[bytes, list[int]] = {}
            for i in range(t):
                groups.setdefault(new_lcms[i], []).append(i)
            minimal: list[bytes] = []
            for lcm in sorted(groups, key=lambda c: (sum(c), c)):
                if not any(k.divides(prev, lcm) for prev in minimal):
                    minimal.append(lcm)
            for lcm in minimal:
                members = groups[lcm]
                if any(lcm == k.exp_mul(leads[i], lmf) for i in members):
                    continue  # coprime leads: S-pair reduces to zero
                push_pair(min(members), t, lcm)
        else:
            for i in range(t):
                push_pair(i, t, new_lcms[i])
        G.append(f)
        leads.append(lmf)
        idx.add(f.lead, f.trail)

    for g in gens:
        r = _reduce_with_index(g, idx)
        if r is not None:
            update(r)

    while pairs:
        wdeg, lcm, i, j = heapq.heappop(pairs)
        if live.get((i, j)) != lcm:
            continue  # pruned or stale
        del live[(i, j)]
        if degree_cap is not None and wdeg > degree_cap:
            continue
        s = s_pair(G[i], G[j], order)
        if s is None:
            continue
        r = _reduce_with_index(s, idx)
        if r is not None:
            update(r)

    return GroebnerBasis(tuple(G), order, reduced=False, degree_cap=degree_cap)


def reduce_gb(gb: GroebnerBasis) -> GroebnerBasis:
    """Minimalize and inter-reduce; unique output for (ideal, order)."""
    nv = gb.nvars
    k = _kernel.active(nv)

    minimal: list[Binomial] = []
    for f in sorted(gb.elements, key=lambda b: (b.lead, b.trail)):
        if not any(k.divides(g.lead, f.lead) for g in minimal):
            minimal.append(f)

    idx = k.ReducerIndex(nv)
    for f in minimal:
        idx.add(f.lead, f.trail)
    out = []
    for f in minimal:
        trail = idx.normal_form(f.trail)
        if trail == f.lead:
            raise EngineError("inter-reduction produced a vanishing element")
        out.append(Binomial(f.lead, trail))
    out.sort(key=lambda b: (b.lead, b.trail), reverse=True)
    return GroebnerBasis(
        tuple(out),
        gb.order,
        reduced=True,
        label=gb.label,
        degree_cap=gb.degree_cap,
        marking=gb.marking,
    )


def eliminate(gb: GroebnerBasis, drop: Iterable[int]) -> GroebnerBasis:
    """Restrict a reduced basis to the subring without the dropped variables.

    drop must be the set of the k greatest variables of gb's order (a
    prefix); the surviving elements, re-marked over the retained universe,
    form a Groebner basis of the intersection ideal under the induced order.
    """
    if gb.marking != "lex":
        raise EngineError("elimination needs a lex-marked basis")
    if not gb.reduced:
        raise EngineError("eliminate expects a reduced Groebner basis")
    dropset = frozenset(drop)
    seq = gb.order.seq
    kcount = len(dropset)
    prefix = set(seq[:kcount])
    if prefix != dropset:
        keep_violation = sorted(dropset - prefix)
        retained = sorted(prefix - dropset)
        raise OrderError(
            "dropped variables are not the greatest block: "
            f"dropping {keep_violation} while retaining greater {retained}"
        )
    if kcount == 0:
        return gb
    kept = []
    for b in gb.elements:
        if any(b.lead[:kcount]) or any(b.trail[:kcount]):
            continue
        kept.append(Binomial(b.lead[kcount:], b.trail[kcount:]))
    suborder = gb.order.suffix(kcount)
    return GroebnerBasis(
        tuple(kept), suborder, reduced=True, label=gb.label, degree_cap=gb.degree_cap
    )


# -- certification ----------------------------------------------------------


def certify_spairs(gb: GroebnerBasis, max_steps: int = 0) -> None:
    """Independent no-criteria pass: every S-pair must reduce to zero.

    Raises EngineError naming the offending pair otherwise.  Works for both
    lex-marked and sorting-marked bases (the reduction only uses markings).
    """
    idx = gb.build_index()
    nv = gb.nvars
    k = _kernel.active(nv)
    elems = gb.elements
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            lcm = k.exp_lcm(elems[i].lead, elems[j].lead)
            u = k.exp_mul(k.exp_div(lcm, elems[i].lead), elems[i].trail)
            v = k.exp_mul(k.exp_div(lcm, elems[j].lead), elems[j].trail)
            nu = idx.normal_form(u, max_steps)
            nv_ = idx.normal_form(v, max_steps)
            if nu is None or nv_ is None:
                raise ReductionBudgetError(
                    f"S-pair ({i},{j}) exceeded the reduction budget"
                )
            if nu != nv_:
                raise EngineError(f"S-pair ({i},{j}) does not reduce to zero")
