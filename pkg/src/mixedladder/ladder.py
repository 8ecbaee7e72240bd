"""Ladders of indeterminates and the ladders derived from them.

A ladder lives inside an ``m x n`` matrix and is cut out by its upper outside
corners ``(b_i, a_i)`` and lower outside corners ``(d_j, c_j)``:

    (r, c) in L  iff  b_i <= r and c <= a_i for some i,
                 and  r <= d_j and c_j <= c for some j.

Each lower corner carries a minor size ``t_j``. All indices are 1-based,
matching the usual matrix notation; ``j`` arguments below are 1-based too.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import AlreadyLinear, DegenerateLadder, LadderError
from .exactpoly import Cell


def _pairs(seq) -> tuple[Cell, ...]:
    return tuple((int(r), int(c)) for r, c in seq)


@dataclass(frozen=True)
class Ladder:
    m: int
    n: int
    upper: tuple[Cell, ...]
    lower: tuple[Cell, ...]
    t: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "upper", _pairs(self.upper))
        object.__setattr__(self, "lower", _pairs(self.lower))
        object.__setattr__(self, "t", tuple(int(x) for x in self.t))
        if self.m < 1 or self.n < 1:
            raise LadderError(f"ambient matrix must be at least 1x1, got {self.m}x{self.n}")
        if not self.upper or not self.lower:
            raise LadderError("a ladder needs at least one upper and one lower corner")
        if len(self.t) != len(self.lower):
            raise LadderError(f"{len(self.lower)} lower corners but {len(self.t)} minor sizes")
        if any(x < 1 for x in self.t):
            raise LadderError(f"minor sizes must be positive: {self.t}")

    @classmethod
    def matrix(cls, m: int, n: int, t: int = 1) -> "Ladder":
        return cls(m, n, ((1, n),), ((m, 1),), (t,))

    @property
    def k(self) -> int:
        return len(self.lower)

    @property
    def h(self) -> int:
        return len(self.upper)

    def with_t(self, t: Iterable[int]) -> "Ladder":
        return Ladder(self.m, self.n, self.upper, self.lower, tuple(t))

    def __contains__(self, cell) -> bool:
        return membership(self, cell)

    @cached_property
    def cells(self) -> frozenset[Cell]:
        return frozenset((r, c) for r in range(1, self.m + 1)
                         for c in range(1, self.n + 1) if membership(self, (r, c)))

    def __len__(self):
        return len(self.cells)

    def piece(self, j: int) -> frozenset[Cell]:
        """Cells of the one-sided subladder L_j."""
        d, c = self.lower[j - 1]
        return frozenset(x for x in self.cells if x[0] <= d and x[1] >= c)

    @cached_property
    def pieces(self) -> tuple[frozenset[Cell], ...]:
        return tuple(self.piece(j) for j in range(1, self.k + 1))

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n,
                "upper": [list(x) for x in self.upper],
                "lower": [list(x) for x in self.lower],
                "t": list(self.t)}

    def __str__(self):
        rows = []
        for r in range(1, self.m + 1):
            rows.append("".join("x" if (r, c) in self.cells else "." for c in range(1, self.n + 1)))
        return "\n".join(rows)


def membership(L: Ladder, cell: Cell) -> bool:
    r, c = cell
    if not (1 <= r <= L.m and 1 <= c <= L.n):
        return False
    return (any(b <= r and c <= a for b, a in L.upper)
            and any(r <= d and cj <= c for d, cj in L.lower))


def subladder(L: Ladder, j: int) -> Ladder:
    """The one-sided ladder L_j, with its own upper corners."""
    if not 1 <= j <= L.k:
        raise IndexError(f"lower corner index {j} out of range 1..{L.k}")
    d, c = L.lower[j - 1]
    ups = [(b, a) for b, a in L.upper if b <= d and a >= c]
    if not ups:
        raise DegenerateLadder(f"L_{j} is empty")
    return Ladder(L.m, L.n, ups, [(d, c)], [L.t[j - 1]])


# ----- validation -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    clause: str  # "nondeg" | "corners" | "assumpt"
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self) -> set[str]:
        return {v.clause for v in self.violations}


def _in_some_minor(piece: frozenset[Cell], t: int, cell: Cell) -> bool:
    # A rectangle lies in a ladder iff its upper-right and lower-left corners do.
    r, c = cell
    rows = [x[0] for x in piece]
    cols = [x[1] for x in piece]
    rlo, rhi, clo, chi = min(rows), max(rows), min(cols), max(cols)
    for r0 in range(rlo, r + 1):
        for r1 in range(max(r, r0 + t - 1), rhi + 1):
            for c0 in range(clo, c + 1):
                if (r1, c0) not in piece:
                    continue
                for c1 in range(max(c, c0 + t - 1), chi + 1):
                    if (r0, c1) in piece:
                        return True
    return False


def has_minor(piece: frozenset[Cell], t: int) -> bool:
    """Whether a ladder-shaped cell set holds a t x t minor (a consecutive one suffices)."""
    return any((r + t - 1, c - t + 1) in piece for r, c in piece)


def used_cells(L: Ladder) -> frozenset[Cell]:
    """Cells involved in at least one t_j-minor of some L_j."""
    used = set()
    for j, piece in enumerate(L.pieces):
        if not piece:
            continue
        tj = L.t[j]
        for x in piece:
            if x not in used and (tj == 1 or _in_some_minor(piece, tj, x)):
                used.add(x)
    return frozenset(used)


def validate(L: Ladder) -> ValidationReport:
    out: list[Violation] = []
    ups, lows, t = L.upper, L.lower, L.t

    for i in range(len(ups) - 1):
        (b0, a0), (b1, a1) = ups[i], ups[i + 1]
        if not (b0 < b1 and a0 < a1):
            out.append(Violation("corners",
                                 f"upper corners {ups[i]}, {ups[i + 1]} not strictly increasing"))
    for j in range(len(lows) - 1):
        (d0, c0), (d1, c1) = lows[j], lows[j + 1]
        if (d0, c0) == (d1, c1):
            out.append(Violation("corners", f"lower corners {j + 1} and {j + 2} coincide"))
        elif not (d0 <= d1 and c0 <= c1):
            out.append(Violation("corners",
                                 f"lower corners {lows[j]}, {lows[j + 1]} not weakly increasing"))
    if len(set(lows)) != len(lows):
        out.append(Violation("corners", "lower corners are not distinct"))
    for x in ups + lows:
        if not (1 <= x[0] <= L.m and 1 <= x[1] <= L.n):
            out.append(Violation("corners", f"corner {x} outside the {L.m}x{L.n} matrix"))
        elif x not in L.cells:
            out.append(Violation("corners", f"corner {x} does not lie in the ladder"))

    for j in range(len(lows) - 1):
        (d0, c0), (d1, c1) = lows[j], lows[j + 1]
        if not d1 - d0 > t[j + 1] - t[j]:
            out.append(Violation(
                "assumpt", f"d_{j + 2}-d_{j + 1} = {d1 - d0} is not > t_{j + 2}-t_{j + 1} = {t[j + 1] - t[j]}"))
        if not c1 - c0 > t[j] - t[j + 1]:
            out.append(Violation(
                "assumpt", f"c_{j + 2}-c_{j + 1} = {c1 - c0} is not > t_{j + 1}-t_{j + 2} = {t[j] - t[j + 1]}"))

    for j, piece in enumerate(L.pieces):
        if piece and not has_minor(piece, t[j]):
            # a zero ideal sits inside every other piece's ideal
            out.append(Violation("assumpt", f"L_{j + 1} holds no {t[j]}x{t[j]} minor"))

    if not L.cells:
        out.append(Violation("nondeg", "the ladder is empty"))
    else:
        unused = sorted(L.cells - used_cells(L))
        if unused:
            out.append(Violation("nondeg", f"entries in no t_j-minor of their L_j: {unused}"))
    return ValidationReport(tuple(out))


# ----- rebuilding from cell sets -------------------------------------------------


def upper_corners_of(cells: Iterable[Cell]) -> list[Cell]:
    s = set(cells)
    out = [x for x in s
           if not any(y != x and y[0] <= x[0] and y[1] >= x[1] for y in s)]
    return sorted(out)


def lower_corners_of(cells: Iterable[Cell]) -> list[Cell]:
    s = set(cells)
    out = [x for x in s
           if not any(y != x and y[0] >= x[0] and y[1] <= x[1] for y in s)]
    return sorted(out)


def is_ladder_set(cells: Iterable[Cell]) -> bool:
    """Closure test: every rectangle spanned by an upper-right/lower-left pair is inside."""
    s = set(cells)
    for (i, j) in s:
        for (k, l) in s:
            if i <= k and j >= l:
                for u in range(i, k + 1):
                    for v in range(l, j + 1):
                        if (u, v) not in s:
                            return False
    return True


def _drop_redundant(lower: list[Cell], t: list[int]) -> tuple[list[Cell], list[int]]:
    # A piece inside another piece with no larger minor size adds no generators.
    keep = list(range(len(lower)))
    changed = True
    while changed:
        changed = False
        for a in keep:
            da, ca = lower[a]
            for b in keep:
                if a == b:
                    continue
                db, cb = lower[b]
                if da <= db and ca >= cb and t[b] <= t[a]:
                    keep.remove(a)
                    changed = True
                    break
            if changed:
                break
    return [lower[i] for i in keep], [t[i] for i in keep]


def prune(L: Ladder) -> Ladder:
    """Delete the entries that lie in no t_j-minor of their L_j."""
    used = used_cells(L)
    if not used:
        raise DegenerateLadder("degenerate ladder: no entry lies in a minor of the requested size")
    if used == L.cells:
        return L
    lower, t = [], []
    for j, piece in enumerate(L.pieces):
        kept = piece & used
        if not kept:
            continue
        d = max(x[0] for x in kept)
        c = min(x[1] for x in kept)
        lower.append((d, c))
        t.append(L.t[j])
    lower, t = _drop_redundant(lower, t)
    order = sorted(range(len(lower)), key=lambda i: (lower[i][0], lower[i][1]))
    out = Ladder(L.m, L.n, upper_corners_of(used),
                 [lower[i] for i in order], [t[i] for i in order])
    if out.cells != used:
        raise DegenerateLadder("pruned entry set is not a mixed ladder with the original corner structure")
    return out


# ----- regions and the height sets ------------------------------------------------


@dataclass(frozen=True)
class Region:
    i: int
    j: int
    cells: frozenset[Cell]
    t_ij: int


def regions(L: Ladder) -> list[Region]:
    """The regions L_{i,j} = (L_i - L_{i-1}) & (L_j - L_{j+1}), empty ones included."""
    k = L.k
    pieces = (frozenset(),) + L.pieces + (frozenset(),)
    out = []
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            cells = (pieces[i] - pieces[i - 1]) & (pieces[j] - pieces[j + 1])
            if cells:
                t_ij = min(L.t[l - 1] for l in range(1, k + 1) if cells <= pieces[l])
            else:
                t_ij = 1
            out.append(Region(i, j, cells, t_ij))
    return out


def derived_lprime(L: Ladder) -> Ladder:
    """Same upper corners; lower corners moved to (d_j - t_j + 1, c_j + t_j - 1), all sizes 1."""
    lower = [(d - tj + 1, c + tj - 1) for (d, c), tj in zip(L.lower, L.t)]
    return Ladder(L.m, L.n, L.upper, lower, [1] * L.k)


def b_with_shortfall(L: Ladder) -> tuple[frozenset[Cell], int]:
    """The deleted set B, and how many deletions did not fit.

    Each row of a region (i, j) loses its first ``t_ij - t'`` entries, where
    ``t'`` belongs to the region of the entry just right of that row (1 if it
    leaves L). Each column loses its last ``t_ij - t''`` entries, where ``t''``
    belongs to the region of the entry just above it (1 if none). When a row or
    column is shorter than its quota, the excess is counted as shortfall.
    """
    regs = [r for r in regions(L) if r.cells]
    where = {c: r.t_ij for r in regs for c in r.cells}
    out: set[Cell] = set()
    short = 0
    for reg in regs:
        rows: dict[int, list[int]] = {}
        cols: dict[int, list[int]] = {}
        for r, c in reg.cells:
            rows.setdefault(r, []).append(c)
            cols.setdefault(c, []).append(r)
        for r, cs in rows.items():
            need = reg.t_ij - where.get((r, max(cs) + 1), 1)
            short += max(0, need - len(cs))
            out.update((r, c) for c in sorted(cs)[:need])
        for c, rs in cols.items():
            need = reg.t_ij - where.get((min(rs) - 1, c), 1)
            short += max(0, need - len(rs))
            if need > 0:
                out.update((r, c) for r in sorted(rs)[-need:])
    return frozenset(out), short


def derived_b(L: Ladder) -> frozenset[Cell]:
    """The deleted set B; see ``b_with_shortfall``."""
    return b_with_shortfall(L)[0]


# ----- derived ladders ----------------------------------------------------------------


def derived_min_max(L: Ladder) -> tuple[Ladder, Ladder]:
    """L_min (strips removed, uniform t_min) and L_max (strips added, uniform t_max).

    L_max may need a larger ambient matrix; extra rows go at the bottom and
    extra columns at the left, so L_max's columns are shifted right by
    ``L_max.n - L.n``.
    """
    tmin, tmax = min(L.t), max(L.t)
    low_min = [(d - (tj - tmin), c + (tj - tmin)) for (d, c), tj in zip(L.lower, L.t)]
    for (d, c) in low_min:
        if d < 1 or c > L.n:
            raise DegenerateLadder(f"degenerate ladder: L_min corner {(d, c)} leaves the matrix")
    lmin = Ladder(L.m, L.n, L.upper, low_min, [tmin] * L.k)
    for x in low_min:
        if x not in lmin.cells:
            raise DegenerateLadder(f"degenerate ladder: L_min corner {x} leaves the ladder")

    low_max = [(d + (tmax - tj), c - (tmax - tj)) for (d, c), tj in zip(L.lower, L.t)]
    shift = max(0, 1 - min(c for _, c in low_max))
    m_new = max(L.m, max(d for d, _ in low_max))
    lmax = Ladder(m_new, L.n + shift,
                  [(b, a + shift) for b, a in L.upper],
                  [(d, c + shift) for d, c in low_max], [tmax] * L.k)
    return lmin, lmax


def _eligible_index(L: Ladder, i: int) -> int:
    k = L.k
    for _ in range(k + 1):
        if i > 1 and L.lower[i - 1][0] == L.lower[i - 2][0]:
            i -= 1
        elif i < k and L.lower[i - 1][1] == L.lower[i][1]:
            i += 1
        else:
            return i
    raise LadderError("corner adjustment did not terminate")


def derived_m(L: Ladder, i: int | None = None) -> tuple[Ladder, int]:
    """Drop the last row and first column of the i-th lower step; t_i decreases by one.

    If the i-th corner shares its row with the previous corner, or its column
    with the next one, the construction moves to that neighbour. Returns
    ``(M, i_used)``; ``M.t`` is the new size vector.
    """
    if all(x == 1 for x in L.t):
        raise AlreadyLinear("already linear")
    if i is None:
        i = next(j for j in range(1, L.k + 1) if L.t[j - 1] >= 2)
    if not 1 <= i <= L.k:
        raise IndexError(f"lower corner index {i} out of range 1..{L.k}")
    if L.t[i - 1] < 2:
        raise LadderError(f"t_{i} = {L.t[i - 1]} < 2")
    i = _eligible_index(L, i)
    d, c = L.lower[i - 1]
    lower = list(L.lower)
    lower[i - 1] = (d - 1, c + 1)
    t = list(L.t)
    t[i - 1] -= 1
    return Ladder(L.m, L.n, L.upper, lower, t), i


def derived_n(L: Ladder, i_used: int) -> Ladder:
    """Remove the corner entry x_{d_i, c_i}; the corner splits in two and t_i is repeated."""
    if not 1 <= i_used <= L.k:
        raise IndexError(f"lower corner index {i_used} out of range 1..{L.k}")
    d, c = L.lower[i_used - 1]
    lower = list(L.lower[:i_used - 1]) + [(d - 1, c), (d, c + 1)] + list(L.lower[i_used:])
    t = list(L.t[:i_used]) + [L.t[i_used - 1]] + list(L.t[i_used:])
    return Ladder(L.m, L.n, L.upper, lower, t)


def transpose(L: Ladder) -> Ladder:
    """Reflect across the anti-diagonal: (r, c) -> (n + 1 - c, m + 1 - r).

    This keeps upper corners upper and lower corners lower (in reverse order),
    maps minors to minors, and anti-diagonals to anti-diagonals.
    """
    m, n = L.m, L.n
    upper = [(n + 1 - a, m + 1 - b) for b, a in reversed(L.upper)]
    lower = [(n + 1 - c, m + 1 - d) for d, c in reversed(L.lower)]
    return Ladder(n, m, upper, lower, list(reversed(L.t)))


def reflect_cell(L: Ladder, cell: Cell) -> Cell:
    return (L.n + 1 - cell[1], L.m + 1 - cell[0])
