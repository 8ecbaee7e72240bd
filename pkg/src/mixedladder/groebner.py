"""Division, S-polynomials, Buchberger completion and Groebner basis checks."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .exactpoly import (Monomial, Polynomial, mono_coprime, mono_div, mono_divides,
                        mono_key, mono_lcm, mono_mul, mono_rkey, mono_support)

DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple[Polynomial, ...]
    verified: bool = False

    def leading_monomials(self) -> list[Monomial]:
        return [g.lm for g in self.basis]


@dataclass(frozen=True)
class MonomialIdeal:
    min_gens: tuple[Monomial, ...]

    @classmethod
    def from_monomials(cls, monos: Iterable[Monomial]) -> "MonomialIdeal":
        return cls(tuple(minimalize(monos)))

    def variables(self) -> frozenset:
        return frozenset(c for m in self.min_gens for c, _ in m)

    def is_squarefree(self) -> bool:
        return all(e == 1 for m in self.min_gens for _, e in m)

    def supports(self) -> list[frozenset]:
        return [mono_support(m) for m in self.min_gens]

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and set(self.min_gens) == set(other.min_gens)

    def __hash__(self):
        return hash(frozenset(self.min_gens))


def minimalize(monos: Iterable[Monomial]) -> list[Monomial]:
    """Minimal generators, sorted in descending monomial order."""
    uniq = sorted(set(monos), key=lambda m: (sum(e for _, e in m), mono_key(m)))
    out: list[Monomial] = []
    for m in uniq:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return sorted(out, key=mono_key, reverse=True)


def reduce(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Full normal form of f: no term of the result is divisible by a leading monomial.

    The top remaining term is reduced by the first basis element whose leading
    monomial divides it.
    """
    if f.is_zero():
        return f
    p = f.p
    leads = [(g.lm, pow(g.lc, -1, p), g) for g in basis if not g.is_zero()]
    work = dict(f.terms)
    heap = [(mono_rkey(m), m) for m in work]
    heapq.heapify(heap)
    rem: dict[Monomial, int] = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, 0)
        if not c:
            continue
        for lm, inv, g in leads:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                factor = c * inv % p
                for gm, gc in g.terms[1:]:
                    nm = q if not gm else mono_mul(gm, q)
                    old = work.get(nm)
                    new = ((old or 0) - factor * gc) % p
                    if new:
                        work[nm] = new
                        if old is None:
                            heapq.heappush(heap, (mono_rkey(nm), nm))
                    elif old is not None:
                        del work[nm]
                break
        else:
            rem[m] = c
    return Polynomial(rem, p)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of zero")
    lcm = mono_lcm(f.lm, g.lm)
    p = f.p
    a = f.mul_term(mono_div(lcm, f.lm), pow(f.lc, -1, p))
    b = g.mul_term(mono_div(lcm, g.lm), pow(g.lc, -1, p))
    return a - b


@dataclass
class Certificate:
    ok: bool
    failing_pair: tuple[int, int] | None = None
    remainder: Polynomial | None = None
    pairs_checked: int = 0
    pairs_skipped: int = 0

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "failing_pair": list(self.failing_pair) if self.failing_pair else None,
                "remainder": repr(self.remainder) if self.remainder is not None else None,
                "pairs_checked": self.pairs_checked,
                "pairs_skipped_coprime": self.pairs_skipped}


def verify_gb(candidate: Sequence[Polynomial], budget: int = DEFAULT_BUDGET) -> Certificate:
    """Buchberger's criterion: every S-pair reduces to zero against the candidate.

    Pairs with coprime leading monomials are skipped (product criterion).
    The first failing pair, in index order, is reported.
    """
    polys = [g for g in candidate if not g.is_zero()]
    cert = Certificate(ok=True)
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            f, g = polys[a], polys[b]
            if mono_coprime(f.lm, g.lm):
                cert.pairs_skipped += 1
                continue
            if cert.pairs_checked >= budget:
                raise BudgetExceeded(f"budget exceeded: more than {budget} S-pair reductions")
            cert.pairs_checked += 1
            r = reduce(s_polynomial(f, g), polys)
            if not r.is_zero():
                cert.ok = False
                cert.failing_pair = (a, b)
                cert.remainder = r
                return cert
    return cert


def _interreduce(basis: list[Polynomial]) -> list[Polynomial]:
    monic = [g.monic() for g in basis if not g.is_zero()]
    leads = [g.lm for g in monic]
    keep = []
    for idx, g in enumerate(monic):
        if any(i != idx and mono_divides(leads[i], g.lm) and (leads[i] != g.lm or i < idx)
               for i in range(len(monic))):
            continue
        keep.append(g)
    out = []
    for idx, g in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        lm_term = Polynomial._from_sorted((g.terms[0],), g.p)
        tail = reduce(g - lm_term, others)
        out.append(lm_term + tail)
    return sorted(out, key=lambda g: mono_key(g.lm))


def buchberger(gens: Iterable[Polynomial], budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm.

    Normal selection strategy (smallest lcm first) with the product and chain
    criteria. ``budget`` caps the number of S-pair reductions.
    """
    G: list[Polynomial] = []
    for f in gens:
        if not f.is_zero():
            G.append(f.monic())
    if not G:
        raise ValueError("buchberger needs at least one nonzero generator")
    # redundant elements may only be dropped once G is a basis, i.e. at the end
    G = list(dict.fromkeys(G))
    pairs: list[tuple] = []
    counter = 0

    def add_pairs(new_idx: int):
        nonlocal counter
        for i in range(new_idx):
            if G[i] is None:
                continue
            lcm = mono_lcm(G[i].lm, G[new_idx].lm)
            heapq.heappush(pairs, (mono_key(lcm), counter, i, new_idx, lcm))
            counter += 1

    for idx in range(len(G)):
        add_pairs(idx)
    done = 0
    processed: set[tuple[int, int]] = set()
    while pairs:
        _, _, i, j, lcm = heapq.heappop(pairs)
        if G[i] is None or G[j] is None:
            continue
        processed.add((i, j))
        if mono_coprime(G[i].lm, G[j].lm):
            continue
        if _chain_skip(G, i, j, lcm, processed):
            continue
        if done >= budget:
            raise BudgetExceeded(f"budget exceeded: more than {budget} S-pair reductions")
        done += 1
        r = reduce(s_polynomial(G[i], G[j]), [g for g in G if g is not None])
        if not r.is_zero():
            G.append(r.monic())
            add_pairs(len(G) - 1)
    basis = _interreduce([g for g in G if g is not None])
    return GroebnerBasis(tuple(basis), verified=verify_gb(basis, budget).ok)


def _chain_skip(G, i, j, lcm, processed) -> bool:
    # skip (i, j) if some l has lm_l | lcm and both (i, l), (j, l) already handled
    for l, g in enumerate(G):
        if g is None or l in (i, j):
            continue
        if mono_divides(g.lm, lcm):
            if (min(i, l), max(i, l)) in processed and (min(j, l), max(j, l)) in processed:
                return True
    return False


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    if not gb.verified:
        raise ValueError("initial ideal requested from an unverified basis")
    return MonomialIdeal.from_monomials(g.lm for g in gb.basis)


def basis_from_candidate(polys: Sequence[Polynomial], budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Wrap a candidate, verifying it; falls back to completion if it is not a basis."""
    polys = [g for g in polys if not g.is_zero()]
    if not polys:
        return GroebnerBasis((), verified=True)
    cert = verify_gb(polys, budget)
    if cert.ok:
        return GroebnerBasis(tuple(polys), verified=True)
    return buchberger(polys, budget)
