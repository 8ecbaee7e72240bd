"""Heights, Hilbert series and the Cohen-Macaulay test for mixed ladder ideals."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded
from .exactpoly import DEFAULT_PRIME, Monomial, mono_div, mono_divides
from .groebner import MonomialIdeal, minimalize
from .ladder import Ladder, derived_b, derived_lprime

DEFAULT_COVER_CAP = 24
DEFAULT_REISNER_CAP = 14


def height_combinatorial(L: Ladder) -> int:
    """|L'|, the cell count of the shifted ladder."""
    return len(derived_lprime(L).cells)


def height_b(L: Ladder) -> int:
    return len(L.cells) - len(derived_b(L))


# ----- minimum vertex cover ----------------------------------------------------


def min_vertex_cover(edges: Sequence[frozenset]) -> frozenset:
    """Exact minimum hitting set of a family of sets, by branch and bound."""
    edges = [frozenset(e) for e in edges]
    if any(not e for e in edges):
        raise ValueError("an empty set cannot be hit")
    best: list = [frozenset().union(*edges) if edges else frozenset()]

    def lower_bound(rest):
        # disjoint sets each need their own vertex
        lb, used = 0, set()
        for e in sorted(rest, key=len):
            if used.isdisjoint(e):
                lb += 1
                used |= e
        return lb

    def search(chosen: frozenset, rest: list):
        if not rest:
            if len(chosen) < len(best[0]):
                best[0] = chosen
            return
        if len(chosen) + lower_bound(rest) >= len(best[0]):
            return
        e = min(rest, key=lambda s: (len(s), sorted(s)))
        for v in sorted(e):
            search(chosen | {v}, [s for s in rest if v not in s])

    search(frozenset(), edges)
    return best[0]


def height_vertex_cover(I: MonomialIdeal, cap: int = DEFAULT_COVER_CAP) -> int:
    if not I.is_squarefree():
        raise ValueError("vertex cover height needs a squarefree monomial ideal")
    nv = len(I.variables())
    if nv > cap:
        raise BudgetExceeded(f"budget exceeded: {nv} variables > cover cap {cap}")
    return len(min_vertex_cover(I.supports()))


# ----- Hilbert series ------------------------------------------------------------


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple[int, ...]
    dim: int
    degree: int
    num_vars: int

    @property
    def h_vector(self) -> tuple[int, ...]:
        return self.numerator

    @property
    def height(self) -> int:
        return self.num_vars - self.dim

    def to_dict(self) -> dict:
        return {"h_vector": list(self.numerator), "dim": self.dim,
                "degree": self.degree, "num_vars": self.num_vars, "height": self.height}


def _poly_add(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


@lru_cache(maxsize=200_000)
def kpolynomial(gens: frozenset) -> tuple[int, ...]:
    """Numerator K(z) of the Hilbert series K(z)/(1-z)^N of S/I (independent of N)."""
    gens = list(gens)
    if not gens:
        return (1,)
    supports = [frozenset(c for c, _ in g) for g in gens]
    counts: dict = {}
    for s in supports:
        for v in s:
            counts[v] = counts.get(v, 0) + 1
    if all(c == 1 for c in counts.values()):
        out = [1]
        for g in gens:
            d = sum(e for _, e in g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(_trim(out))
    x = max(sorted(counts), key=lambda v: counts[v])
    xm: Monomial = ((x, 1),)
    plus = frozenset(minimalize([g for g in gens if not mono_divides(xm, g)] + [xm]))
    colon = frozenset(minimalize(mono_div(g, xm) if mono_divides(xm, g) else g for g in gens))
    a = kpolynomial(plus)
    b = kpolynomial(colon)
    return tuple(_trim(_poly_add(a, [0] + list(b))))


def hilbert(I: MonomialIdeal, num_vars: int) -> HilbertData:
    """Hilbert series of K[x_1..x_num_vars]/I as h-polynomial over (1-z)^dim."""
    if len(I.variables()) > num_vars:
        raise ValueError("ideal uses more variables than num_vars")
    num = list(kpolynomial(frozenset(I.min_gens)))
    codim = 0
    while sum(num) == 0:
        # synthetic division by (1 - z)
        q, acc = [], 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = _trim(q) if q else [0]
        codim += 1
    return HilbertData(tuple(num), num_vars - codim, sum(num), num_vars)


def hilbert_function_bruteforce(I: MonomialIdeal, variables: Sequence, degree: int) -> int:
    """Number of standard monomials of the given degree (counting check)."""
    from itertools import combinations_with_replacement
    gens = [dict(g) for g in I.min_gens]
    count = 0
    for combo in combinations_with_replacement(variables, degree):
        exps: dict = {}
        for v in combo:
            exps[v] = exps.get(v, 0) + 1
        if not any(all(exps.get(v, 0) >= e for v, e in g.items()) for g in gens):
            count += 1
    return count


# ----- Reisner's criterion ---------------------------------------------------------


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = mat.copy() % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank] = a[rank] * inv % p
        below = np.nonzero(a[rank + 1:, c])[0] + rank + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[rank])) % p
        rank += 1
    return rank


def _faces(vertices: Sequence, supports: Sequence[frozenset]) -> list[tuple]:
    out = [()]
    def grow(face, start):
        for idx in range(start, len(vertices)):
            nf = face + (vertices[idx],)
            s = frozenset(nf)
            if any(g <= s for g in supports):
                continue
            out.append(nf)
            grow(nf, idx + 1)
    grow((), 0)
    return out


def reduced_homology_ranks(faces: Iterable[tuple], p: int) -> dict[int, int]:
    """Reduced Betti numbers over GF(p) of the complex given by all its faces (incl. ())."""
    by_dim: dict[int, list[tuple]] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    if not by_dim:
        return {}
    top = max(by_dim)
    index = {d: {f: i for i, f in enumerate(sorted(fs))} for d, fs in by_dim.items()}
    ranks: dict[int, int] = {}
    for d in range(0, top + 1):
        src, dst = index.get(d, {}), index.get(d - 1, {})
        if not src or not dst:
            ranks[d] = 0
            continue
        mat = np.zeros((len(dst), len(src)), dtype=np.int64)
        for f, col in src.items():
            for pos in range(len(f)):
                mat[dst[f[:pos] + f[pos + 1:]], col] = 1 if pos % 2 == 0 else p - 1
        ranks[d] = _rank_mod_p(mat, p)
    betti = {}
    for d in range(-1, top + 1):
        nd = len(index.get(d, {}))
        betti[d] = nd - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return betti


def reisner_cm_check(I: MonomialIdeal, num_vars: int, p: int = DEFAULT_PRIME,
                     cap: int = DEFAULT_REISNER_CAP) -> bool:
    """Reisner's criterion for the Stanley-Reisner complex of a squarefree ideal.

    Variables not occurring in I are cone points and are left out; coning
    does not change Cohen-Macaulayness.
    """
    if not I.is_squarefree():
        raise ValueError("Reisner's criterion needs a squarefree monomial ideal")
    if num_vars > cap:
        raise BudgetExceeded(f"budget exceeded: {num_vars} variables > Reisner cap {cap}")
    supports = I.supports()
    vertices = sorted(I.variables())
    faces = _faces(vertices, supports)
    for F in faces:
        Fs = set(F)
        link_set = {tuple(v for v in G if v not in Fs) for G in faces if Fs.issubset(G)}
        dim = max(len(g) for g in link_set) - 1
        if dim <= 0:
            continue
        betti = reduced_homology_ranks(link_set, p)
        if any(betti.get(i, 0) for i in range(-1, dim)):
            return False
    return True


def is_pure(I: MonomialIdeal) -> bool:
    vertices = sorted(I.variables())
    faces = _faces(vertices, I.supports())
    fs = set(faces)
    facets = [f for f in faces
              if not any(v not in f and tuple(sorted(f + (v,))) in fs for v in vertices)]
    return len({len(f) for f in facets}) <= 1
