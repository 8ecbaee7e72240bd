"""Elementary G-biliaison steps from a mixed ladder ideal down to a linear one.

One step takes ``(L, t)`` with some ``t_i >= 2`` to

* ``M``: the i-th lower corner moves to ``(d_i - 1, c_i + 1)`` and ``t_i`` drops by one;
* ``N``: ``L`` without the corner entry ``x[d_i, c_i]``, with ``t_i`` repeated.

``I_t(L)`` and ``I_t'(M)`` cut out divisors on the variety of ``I_tau(N)``, which
has height one less. The step checks verify the algebraic side of this:
heights, containment of ``I_tau(N)`` in both ideals, and the cross-multiplied
ratio identity between the generators through the corner and their
cofactors.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from .dimension import hilbert
from .errors import AlreadyLinear, BudgetExceeded
from .exactpoly import DEFAULT_PRIME, minor_determinant
from .groebner import (DEFAULT_BUDGET, GroebnerBasis, basis_from_candidate, initial_ideal,
                       reduce)
from .idealgen import candidate_polys, generators
from .ladder import Ladder, derived_lprime, derived_m, derived_n, validate

log = logging.getLogger(__name__)


@dataclass
class StepChecks:
    heights: dict[str, int] = field(default_factory=dict)
    heights_hilbert: dict[str, int] = field(default_factory=dict)
    containment_L: bool | None = None
    containment_M: bool | None = None
    paired_vanishing: bool | None = None
    ratio_identity: bool | None = None
    ratio_pairs: int = 0
    validate_M: list[str] = field(default_factory=list)
    validate_N: list[str] = field(default_factory=list)
    status: str = "unchecked"

    @property
    def heights_ok(self) -> bool:
        h = self.heights
        ok = h.get("L") == h.get("M") and h.get("N") == h.get("L", 0) - 1
        if self.heights_hilbert:
            ok = ok and self.heights_hilbert == h
        return ok

    @property
    def passed(self) -> bool:
        return (self.status == "verified" and self.heights_ok and bool(self.containment_L)
                and bool(self.containment_M) and bool(self.paired_vanishing)
                and bool(self.ratio_identity))

    def to_dict(self) -> dict:
        return {"status": self.status, "passed": self.passed,
                "heights": dict(self.heights), "heights_hilbert": dict(self.heights_hilbert),
                "heights_ok": self.heights_ok,
                "containment_L": self.containment_L, "containment_M": self.containment_M,
                "paired_vanishing": self.paired_vanishing,
                "ratio_identity": self.ratio_identity, "ratio_pairs": self.ratio_pairs,
                "validate_M": list(self.validate_M), "validate_N": list(self.validate_N)}


@dataclass
class BiliaisonStep:
    before: Ladder
    i_used: int
    middle: Ladder
    pivot: Ladder
    checks: StepChecks = field(default_factory=StepChecks)

    def to_dict(self) -> dict:
        return {"i_used": self.i_used, "before": self.before.to_dict(),
                "middle": self.middle.to_dict(), "pivot": self.pivot.to_dict(),
                "checks": self.checks.to_dict()}


@dataclass
class BiliaisonChain:
    initial: Ladder
    steps: list[BiliaisonStep]
    terminal: Ladder

    @property
    def expected_length(self) -> int:
        return sum(self.initial.t) - self.initial.k

    @property
    def terminal_matches_lprime(self) -> bool:
        return self.terminal.cells == derived_lprime(self.initial).cells

    @property
    def verified(self) -> bool:
        return all(s.checks.passed for s in self.steps)

    def to_dict(self) -> dict:
        return {"initial": self.initial.to_dict(), "length": len(self.steps),
                "expected_length": self.expected_length,
                "terminal": self.terminal.to_dict(),
                "terminal_cells": sorted([list(x) for x in self.terminal.cells]),
                "terminal_matches_lprime": self.terminal_matches_lprime,
                "verified": self.verified,
                "steps": [s.to_dict() for s in self.steps]}


def build_step(L: Ladder, verify: bool = True, budget: int = DEFAULT_BUDGET,
               p: int = DEFAULT_PRIME) -> BiliaisonStep:
    """One step at the smallest index with t_i >= 2 (after corner adjustment)."""
    try:
        M, i_used = derived_m(L)
    except AlreadyLinear:
        raise AlreadyLinear("chain complete") from None
    step = BiliaisonStep(L, i_used, M, derived_n(L, i_used))
    if verify:
        step.checks = verify_step(step, budget, p)
    return step


def _gb(L: Ladder, budget: int, p: int) -> GroebnerBasis:
    return basis_from_candidate(candidate_polys(L, p), budget)


def _cell_height(L: Ladder) -> int:
    return len(derived_lprime(L).cells)


def corner_minors(L: Ladder, i: int, p: int = DEFAULT_PRIME):
    """Pairs (big, small) over all (t-1)-subsets I of rows above d and J of columns right of c.

    ``big`` is the t-minor on rows I + [d] and columns [c] + J, ``small`` its
    cofactor on I, J. A minor touching an entry outside L is replaced by None.
    """
    d, c = L.lower[i - 1]
    t = L.t[i - 1]
    cells = L.cells
    out = []
    for I in combinations(range(1, d), t - 1):
        for J in combinations(range(c + 1, L.n + 1), t - 1):
            rows, cols = I + (d,), (c,) + J
            big_in = all((r, q) in cells for r in rows for q in cols)
            small_in = all((r, q) in cells for r in I for q in J)
            big = minor_determinant(rows, cols, p) if big_in else None
            small = minor_determinant(I, J, p) if small_in else None
            out.append(((I, J), big, small))
    return out


def verify_step(step: BiliaisonStep, budget: int = DEFAULT_BUDGET,
                p: int = DEFAULT_PRIME) -> StepChecks:
    L, M, N = step.before, step.middle, step.pivot
    ch = StepChecks()
    ch.heights = {"L": _cell_height(L), "M": _cell_height(M), "N": _cell_height(N)}
    ch.validate_M = sorted(validate(M).clauses())
    ch.validate_N = sorted(validate(N).clauses())
    nvars = len(L.cells)
    try:
        gL, gM, gN = _gb(L, budget, p), _gb(M, budget, p), _gb(N, budget, p)
        for name, g in (("L", gL), ("M", gM), ("N", gN)):
            ch.heights_hilbert[name] = hilbert(initial_ideal(g), nvars).height
        gens_N = generators(N, p).gens
        ch.containment_L = all(reduce(f, gL.basis).is_zero() for f in gens_N)
        ch.containment_M = all(reduce(f, gM.basis).is_zero() for f in gens_N)

        pairs = corner_minors(L, step.i_used, p)
        ch.paired_vanishing = all((big is None) == (small is None) for _, big, small in pairs)
        live = [(big, small) for _, big, small in pairs if big is not None and small is not None]
        ok = True
        count = 0
        for (b1, s1), (b2, s2) in combinations(live, 2):
            count += 1
            if count > budget:
                raise BudgetExceeded(f"budget exceeded: more than {budget} ratio pairs")
            if not reduce(b1 * s2 - b2 * s1, gN.basis).is_zero():
                ok = False
                break
        ch.ratio_identity = ok
        ch.ratio_pairs = count
        ch.status = "verified"
    except BudgetExceeded as exc:
        log.warning("step at corner %d left unverified: %s", step.i_used, exc)
        ch.status = f"unverified: {exc}"
    return ch


def build_chain(L: Ladder, verify: bool = True, budget: int = DEFAULT_BUDGET,
                p: int = DEFAULT_PRIME) -> BiliaisonChain:
    steps: list[BiliaisonStep] = []
    cur = L
    limit = sum(L.t) - L.k
    while any(x >= 2 for x in cur.t):
        if len(steps) >= limit:
            raise RuntimeError(f"chain longer than sum(t) - k = {limit}")
        step = build_step(cur, verify, budget, p)
        steps.append(step)
        cur = step.middle
    chain = BiliaisonChain(L, steps, cur)
    if len(steps) != chain.expected_length:
        raise RuntimeError(f"chain has {len(steps)} steps, expected {chain.expected_length}")
    return chain
