"""Minors of a mixed ladder and the skew-diagonal Groebner basis candidate."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exactpoly import DEFAULT_PRIME, Polynomial, minor_determinant
from .ladder import Ladder


@dataclass(frozen=True, order=True)
class MinorSpec:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    home_j: int

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def cells(self) -> frozenset:
        return frozenset((r, c) for r in self.rows for c in self.cols)

    def antidiagonal(self) -> tuple:
        t = len(self.rows)
        return tuple((self.rows[a], self.cols[t - 1 - a]) for a in range(t))

    def polynomial(self, p: int = DEFAULT_PRIME) -> Polynomial:
        return minor_determinant(self.rows, self.cols, p)

    def to_dict(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols), "home": self.home_j}


@dataclass(frozen=True)
class IdealGenerators:
    gens: tuple[Polynomial, ...]
    provenance: tuple[MinorSpec, ...]


def enumerate_minors(L: Ladder, j: int) -> list[MinorSpec]:
    """All t_j x t_j minors with every entry in L_j, rows lex then columns lex."""
    piece = L.pieces[j - 1]
    tj = L.t[j - 1]
    if not piece:
        return []
    rows = sorted({r for r, _ in piece})
    cols = sorted({c for _, c in piece})
    out = []
    for R in combinations(rows, tj):
        # rows are increasing, so (R[0], C[-1]) and (R[-1], C[0]) decide containment
        for C in combinations(cols, tj):
            if (R[0], C[-1]) in piece and (R[-1], C[0]) in piece:
                out.append(MinorSpec(R, C, j))
    return out


def _merged(L: Ladder) -> list[MinorSpec]:
    seen: dict[tuple, MinorSpec] = {}
    for j in range(1, L.k + 1):
        for ms in enumerate_minors(L, j):
            seen.setdefault((ms.rows, ms.cols), ms)
    return sorted(seen.values(), key=lambda ms: (ms.size, ms.rows, ms.cols))


def generators(L: Ladder, p: int = DEFAULT_PRIME) -> IdealGenerators:
    """Generators of I_t(L); a minor lying in several L_j is kept once, with the smallest j."""
    specs = _merged(L)
    return IdealGenerators(tuple(ms.polynomial(p) for ms in specs), tuple(specs))


def _excluded_by(L: Ladder, ms: MinorSpec, i: int) -> bool:
    j = ms.home_j
    piece = L.pieces[i - 1]
    ti = L.t[i - 1]
    if i < j:
        count = sum(all((r, c) in piece for c in ms.cols) for r in ms.rows)
        return count >= ti
    count = sum(all((r, c) in piece for r in ms.rows) for c in ms.cols)
    if count >= ti and ti == ms.size and count == ms.size:
        # the witness is this very minor; it stays with the smaller index
        return False
    return count >= ti


def candidate_gb(L: Ladder) -> list[MinorSpec]:
    """The minor set G = G_1 u ... u G_k.

    G_j keeps the t_j-minors of L_j having fewer than t_i rows inside L_i for
    every i < j and fewer than t_i columns inside L_i for every i > j. A row
    (column) is inside L_i when all of the minor's entries on it are.
    """
    out = []
    for j in range(1, L.k + 1):
        for ms in enumerate_minors(L, j):
            if not any(_excluded_by(L, ms, i) for i in range(1, L.k + 1) if i != j):
                out.append(ms)
    return out


def candidate_polys(L: Ladder, p: int = DEFAULT_PRIME) -> list[Polynomial]:
    return [ms.polynomial(p) for ms in candidate_gb(L)]


def all_minors(L: Ladder) -> list[MinorSpec]:
    """The family F = F_1 u ... u F_k, duplicates kept with their own j."""
    return [ms for j in range(1, L.k + 1) for ms in enumerate_minors(L, j)]


def consecutive_minors(L: Ladder) -> list[MinorSpec]:
    """Members of G on consecutive rows and consecutive columns."""
    def run(xs):
        return all(b == a + 1 for a, b in zip(xs, xs[1:]))
    return [ms for ms in candidate_gb(L) if run(ms.rows) and run(ms.cols)]
