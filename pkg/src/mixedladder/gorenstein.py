"""The numerical Gorenstein criterion for mixed ladder rings, and an h-vector oracle.

Before the corner arithmetic applies, a ladder is cut into components:

* entries lying in no minor are free variables and are pruned;
* a piece with ``t_j = 1`` is killed outright. Modulo its entries, the later
  pieces lose whole rows and the earlier ones whole columns, so the quotient is
  again a mixed ladder ring, on ``L - L_j``;
* a disconnected ladder splits into its blocks;
* a ladder with ``b_{i+1} >= d_j - t_j + 2`` and ``a_i <= c_{j+1} + t_{j+1} - 2``
  splits into two overlapping submatrix ladders whose shared entries are
  renamed apart. The ring is then a tensor product modulo a regular sequence of
  linear forms.

Each component is re-expressed in the coordinates of its bounding box.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .dimension import HilbertData, hilbert
from .errors import LadderError
from .groebner import DEFAULT_BUDGET, initial_ideal
from .ladder import (Ladder, has_minor, prune, transpose, upper_corners_of, used_cells, validate)

MAX_REDUCTION_DEPTH = 64


@dataclass(frozen=True)
class Component:
    ladder: Ladder
    origin: tuple[int, int]  # top-left cell of the bounding box, in the parent's coordinates
    history: tuple[str, ...]

    @property
    def linear(self) -> bool:
        return all(x == 1 for x in self.ladder.t)


@dataclass
class ComponentReport:
    ladder: Ladder
    J: list[int]
    H: list[int]
    u: list[int]
    conditions: dict[str, bool]
    preconditions: dict[str, bool]
    linear: bool = False
    alt_condition2: bool | None = None  # condition (2) with t_1 in place of t_{u_1}

    @property
    def gorenstein(self) -> bool:
        return all(self.conditions.values())

    def to_dict(self) -> dict:
        return {"ladder": self.ladder.to_dict(), "J": self.J, "H": self.H, "u": self.u,
                "conditions": dict(self.conditions), "preconditions": dict(self.preconditions),
                "linear": self.linear, "gorenstein": self.gorenstein,
                "condition2_with_t1": self.alt_condition2}


@dataclass
class GorensteinReport:
    components: list[ComponentReport]
    oracle_verdict: bool | None = None
    history: list[str] = field(default_factory=list)

    @property
    def reduced_components(self) -> list[Ladder]:
        return [c.ladder for c in self.components]

    @property
    def verdict(self) -> bool:
        return all(c.gorenstein for c in self.components)

    @property
    def preconditions_met(self) -> bool:
        return all(all(c.preconditions.values()) for c in self.components)

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict, "preconditions_met": self.preconditions_met,
               "components": [c.to_dict() for c in self.components],
               "reductions": list(self.history)}
        if self.oracle_verdict is not None:
            out["oracle_verdict"] = self.oracle_verdict
            out["agree"] = self.oracle_verdict == self.verdict
        return out


# ----- reduction ----------------------------------------------------------------


def _boxed(L: Ladder, lower, t) -> tuple[Ladder, tuple[int, int]]:
    """Rebuild on L's cells inside their bounding box."""
    cells = L.cells
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    r1 = max(r for r, _ in cells)
    c1 = max(c for _, c in cells)
    shifted = {(r - r0 + 1, c - c0 + 1) for r, c in cells}
    out = Ladder(r1 - r0 + 1, c1 - c0 + 1, upper_corners_of(shifted),
                 [(d - r0 + 1, c - c0 + 1) for d, c in lower], t)
    if out.cells != shifted:
        raise LadderError("re-boxed ladder changed its entries")
    return out, (r0, c0)


def _drop_idle_corners(L: Ladder) -> Ladder:
    """Forget corners whose piece holds no t_j-minor; they add no generators."""
    keep = [j for j in range(L.k)
            if has_minor(L.pieces[j], L.t[j])]
    if len(keep) == L.k or not keep:
        return L
    return Ladder(L.m, L.n, L.upper, [L.lower[j] for j in keep], [L.t[j] for j in keep])


def _normalize(L: Ladder) -> tuple[Ladder, tuple[int, int]]:
    if used_cells(L) != L.cells:
        L = prune(L)
    L = _drop_idle_corners(L)
    return _boxed(L, L.lower, L.t)


def _strip_linear(L: Ladder) -> Ladder | None:
    """Kill the first piece with t_j = 1; None if nothing is left."""
    j = L.t.index(1)
    dead = L.pieces[j]
    rest = L.cells - dead
    keep = [l for l in range(L.k) if l != j and L.pieces[l] - dead]
    if not rest or not keep:
        return None
    return Ladder(L.m, L.n, upper_corners_of(rest),
                  [L.lower[l] for l in keep], [L.t[l] for l in keep])


def _disconnection(L: Ladder) -> int | None:
    for j in range(L.k - 1):
        if not (L.pieces[j] & L.pieces[j + 1]):
            return j + 1
    return None


def _split_disconnected(L: Ladder, j: int) -> list[Ladder]:
    first = frozenset().union(*L.pieces[:j])
    second = frozenset().union(*L.pieces[j:])
    return [Ladder(L.m, L.n, upper_corners_of(first), L.lower[:j], L.t[:j]),
            Ladder(L.m, L.n, upper_corners_of(second), L.lower[j:], L.t[j:])]


def overlap_split_points(L: Ladder) -> list[tuple[int, int]]:
    """All (i, j), 1-based, where both overlap inequalities hold."""
    out = []
    for i in range(1, L.h):
        for j in range(1, L.k):
            b_next = L.upper[i][0]
            a_i = L.upper[i - 1][1]
            d_j = L.lower[j - 1][0]
            c_next = L.lower[j][1]
            if b_next >= d_j - L.t[j - 1] + 2 and a_i <= c_next + L.t[j] - 2:
                out.append((i, j))
    return out


def _split_overlap(L: Ladder, i: int, j: int) -> list[Ladder]:
    d_j = L.lower[j - 1][0]
    a_i = L.upper[i - 1][1]
    b0 = L.upper[i][0]
    c0 = L.lower[j][1]
    first = Ladder(d_j, a_i, L.upper[:i], L.lower[:j], L.t[:j])
    second = Ladder(L.m - b0 + 1, L.n - c0 + 1,
                    [(b - b0 + 1, a - c0 + 1) for b, a in L.upper[i:]],
                    [(d - b0 + 1, c - c0 + 1) for d, c in L.lower[j:]], L.t[j:])
    for part in (first, second):
        if not validate(part).ok:
            raise LadderError(f"overlap split at ({i}, {j}) gives an invalid piece")
    return [first, second]


def reduce_components(L: Ladder) -> list[Ladder]:
    """Components whose Gorenstein property together decides that of L."""
    return [c.ladder for c in _reduce(L)]


def _reduce(L: Ladder) -> list[Component]:
    out: list[Component] = []
    stack: list[tuple[Ladder, tuple[str, ...], int]] = [(L, (), 0)]
    while stack:
        cur, hist, depth = stack.pop()
        if depth > MAX_REDUCTION_DEPTH:
            raise LadderError("component reduction did not terminate")
        cur, origin = _normalize(cur)
        if not all(x == 1 for x in cur.t) and 1 in cur.t:
            j = cur.t.index(1) + 1
            nxt = _strip_linear(cur)
            step = hist + (f"killed the linear piece {j}",)
            if nxt is None:
                out.append(Component(Ladder.matrix(1, 1, 1), origin, step + ("nothing left",)))
            else:
                stack.append((nxt, step, depth + 1))
            continue
        j = _disconnection(cur)
        if j is not None:
            parts = _split_disconnected(cur, j)
            for idx, part in reversed(list(enumerate(parts))):
                stack.append((part, hist + (f"disconnected after corner {j}, block {idx + 1}",),
                              depth + 1))
            continue
        split = None
        for i, jj in overlap_split_points(cur):
            try:
                split = (i, jj, _split_overlap(cur, i, jj))
                break
            except LadderError:
                continue
        if split is not None:
            i, jj, parts = split
            for idx, part in reversed(list(enumerate(parts))):
                stack.append((part, hist + (f"overlap split at upper {i}, lower {jj}, part {idx + 1}",),
                              depth + 1))
            continue
        out.append(Component(cur, origin, hist))
    return out


# ----- the criterion ---------------------------------------------------------------


def index_sets(L: Ladder) -> tuple[list[int], list[int], list[int]]:
    """J, H and the remaining corner indices u (all 1-based)."""
    k, c, d, t = L.k, [x[1] for x in L.lower], [x[0] for x in L.lower], L.t
    J = [j for j in range(1, k) if c[j - 1] + t[j - 1] == c[j] + t[j]]
    H = [j + 1 for j in range(1, k) if d[j - 1] - t[j - 1] == d[j] - t[j]]
    u = [x for x in range(1, k + 1) if x not in set(J) | set(H)]
    return J, H, u


def _condition2(L: Ladder, u: list[int], ref: int) -> bool:
    c = [x[1] for x in L.lower]
    d = [x[0] for x in L.lower]
    t = L.t
    return all(c[u[q + 1] - 1] - d[u[q] - 1] == 2 + ref - t[u[q] - 1] - t[u[q + 1] - 1]
               for q in range(len(u) - 1))


def component_report(L: Ladder) -> ComponentReport:
    if all(x == 1 for x in L.t):
        # K[L]/I_1(L) is a field or a polynomial ring
        return ComponentReport(L, [], [], [], {"linear": True}, {}, linear=True)
    J, H, u = index_sets(L)
    t = L.t
    cond = {
        "square": L.m - t[-1] == L.n - t[0],
        "lower_corners": _condition2(L, u, t[u[0] - 1]) if u else True,
        "upper_corners": all(L.upper[i][1] - L.upper[i + 1][0] == t[0] - 2
                             for i in range(L.h - 1)),
    }
    pre = {
        "valid": validate(L).ok,
        "connected": _disconnection(L) is None,
        "no_overlap_split": not overlap_split_points(L),
        "t_min_at_least_2": min(t) >= 2,
    }
    alt = _condition2(L, u, t[0]) if u else True
    return ComponentReport(L, J, H, u, cond, pre, alt_condition2=alt)


def ag_criterion(L: Ladder) -> GorensteinReport:
    comps = _reduce(L)
    reports = [component_report(c.ladder) for c in comps]
    history = ["; ".join(c.history) or "no reduction" for c in comps]
    return GorensteinReport(reports, history=history)


# ----- oracle -----------------------------------------------------------------------


def _hilbert_of(L: Ladder, budget: int) -> HilbertData:
    from .idealgen import candidate_polys
    from .groebner import basis_from_candidate
    gb = basis_from_candidate(candidate_polys(L), budget)
    return hilbert(initial_ideal(gb), len(L.cells))


def is_palindrome(seq) -> bool:
    seq = list(seq)
    return seq == seq[::-1]


def symmetry_oracle(L: Ladder, budget: int = DEFAULT_BUDGET) -> bool:
    """Palindromic h-vector; decides Gorensteinness for a graded CM domain."""
    return is_palindrome(_hilbert_of(L, budget).h_vector)


def transpose_agrees(L: Ladder) -> bool:
    return ag_criterion(L).verdict == ag_criterion(transpose(L)).verdict
