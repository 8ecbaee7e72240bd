"""Exact sparse polynomials over GF(p) in the entries of a generic matrix.

Variables are matrix cells ``(row, col)``. The monomial order is the
lexicographic order induced by

    x[d, c] < x[b, a]   iff   b < d,  or  b == d and a > c,

so the largest variable is the top-right entry, and the leading term of a
minor is the product of its anti-diagonal entries.

A monomial is a tuple of ``(cell, exponent)`` pairs sorted from the largest
variable down, with no zero exponents. Polynomials are immutable.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Sequence

DEFAULT_PRIME = 32003

Cell = tuple[int, int]
Monomial = tuple[tuple[Cell, int], ...]

ONE: Monomial = ()


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldElem:
    """An element of GF(p)."""

    value: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise ValueError("field mismatch")
            return other.value
        return other

    def __add__(self, other):
        return FieldElem(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldElem(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldElem(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def inverse(self) -> "FieldElem":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldElem(self._coerce(other), self.p).inverse()

    def __int__(self):
        return self.value

    def signed(self) -> int:
        """Representative in (-p/2, p/2]."""
        return self.value - self.p if self.value > self.p // 2 else self.value


# ----- variables and monomials -----------------------------------------


def var_key(cell: Cell) -> tuple[int, int]:
    """Sort key: larger key means larger variable."""
    return (-cell[0], cell[1])


def compare_vars(u: Cell, v: Cell) -> int:
    """Return -1, 0 or 1 as u <, ==, > v."""
    ku, kv = var_key(u), var_key(v)
    return (ku > kv) - (ku < kv)


@lru_cache(maxsize=None)
def mono_key(m: Monomial) -> tuple:
    """Key whose native tuple order is the monomial order."""
    return tuple((-r, c, e) for (r, c), e in m)


@lru_cache(maxsize=None)
def mono_rkey(m: Monomial) -> tuple:
    """Key whose native tuple order is the *reverse* monomial order."""
    return tuple((r, -c, -e) for (r, c), e in m) + ((float("inf"),),)


def compare_monomials(a: Monomial, b: Monomial) -> int:
    ka, kb = mono_key(a), mono_key(b)
    return (ka > kb) - (ka < kb)


def monomial(exps: Mapping[Cell, int] | Iterable[Cell]) -> Monomial:
    """Build a canonical monomial from a cell->exponent map or a cell list."""
    if isinstance(exps, Mapping):
        acc = {c: e for c, e in exps.items() if e}
    else:
        acc = {}
        for c in exps:
            acc[c] = acc.get(c, 0) + 1
    for c, e in acc.items():
        if e < 0:
            raise ValueError(f"negative exponent for {c}")
    return tuple(sorted(acc.items(), key=lambda ce: var_key(ce[0]), reverse=True))


@lru_cache(maxsize=1 << 18)
def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for c, e in b:
        acc[c] = acc.get(c, 0) + e
    return tuple(sorted(acc.items(), key=lambda ce: var_key(ce[0]), reverse=True))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff a | b."""
    if len(a) > len(b):
        return False
    db = dict(b)
    for c, e in a:
        if db.get(c, 0) < e:
            return False
    return True


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """b / a, assuming a | b."""
    acc = dict(b)
    for c, e in a:
        r = acc[c] - e
        if r < 0:
            raise ValueError("monomial does not divide")
        if r:
            acc[c] = r
        else:
            del acc[c]
    return tuple(sorted(acc.items(), key=lambda ce: var_key(ce[0]), reverse=True))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    acc = dict(a)
    for c, e in b:
        if acc.get(c, 0) < e:
            acc[c] = e
    return tuple(sorted(acc.items(), key=lambda ce: var_key(ce[0]), reverse=True))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    da = dict(a)
    return not any(c in da for c, _ in b)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_support(m: Monomial) -> frozenset[Cell]:
    return frozenset(c for c, _ in m)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for (r, c), e in m:
        parts.append(f"x{r}_{c}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)


# ----- polynomials --------------------------------------------------------


class Polynomial:
    """Sparse polynomial over GF(p) with terms sorted in descending order."""

    __slots__ = ("p", "terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = (),
                 p: int = DEFAULT_PRIME):
        self.p = p
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, int] = {}
        for m, c in items:
            acc[m] = (acc.get(m, 0) + int(c)) % p
        self.terms: tuple[tuple[Monomial, int], ...] = tuple(
            sorted(((m, c) for m, c in acc.items() if c),
                   key=lambda mc: mono_key(mc[0]), reverse=True))
        self._hash = None

    @classmethod
    def _from_sorted(cls, terms, p):
        obj = cls.__new__(cls)
        obj.p = p
        obj.terms = tuple(terms)
        obj._hash = None
        return obj

    @classmethod
    def var(cls, cell: Cell, p: int = DEFAULT_PRIME) -> "Polynomial":
        return cls._from_sorted(((((cell, 1),), 1),), p)

    @classmethod
    def const(cls, c: int, p: int = DEFAULT_PRIME) -> "Polynomial":
        return cls({ONE: c}, p)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other, self.p)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.terms))
        return self._hash

    def _check(self, other: "Polynomial"):
        if other.p != self.p:
            raise ValueError("polynomials over different fields")

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other, self.p)
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = (acc.get(m, 0) + c) % self.p
        return Polynomial(acc, self.p)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_sorted(((m, (-c) % self.p) for m, c in self.terms), self.p)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other, self.p)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        c %= self.p
        if not c:
            return Polynomial((), self.p)
        return Polynomial._from_sorted(((m, a * c % self.p) for m, a in self.terms), self.p)

    def mul_term(self, mono: Monomial, c: int) -> "Polynomial":
        """Multiply by c * mono; order-preserving, so no re-sort."""
        c %= self.p
        if not c:
            return Polynomial((), self.p)
        return Polynomial._from_sorted(
            ((mono_mul(m, mono), a * c % self.p) for m, a in self.terms), self.p)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(int(other))
        self._check(other)
        acc: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                acc[m] = (acc.get(m, 0) + c1 * c2) % self.p
        return Polynomial(acc, self.p)

    __rmul__ = __mul__

    def leading_term(self) -> tuple[Monomial, int]:
        if not self.terms:
            raise ValueError("zero has no leading term")
        return self.terms[0]

    @property
    def lm(self) -> Monomial:
        return self.leading_term()[0]

    @property
    def lc(self) -> int:
        return self.leading_term()[1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(pow(self.lc, -1, self.p))

    def degree(self) -> int:
        return max((mono_degree(m) for m, _ in self.terms), default=-1)

    def variables(self) -> frozenset[Cell]:
        return frozenset(c for m, _ in self.terms for c, _ in m)

    def signed_coeffs(self) -> list[tuple[Monomial, int]]:
        h = self.p // 2
        return [(m, c - self.p if c > h else c) for m, c in self.terms]

    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.signed_coeffs():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = mono_str(m)
            if m and a == 1:
                s = body
            elif m:
                s = f"{a}*{body}"
            else:
                s = str(a)
            out.append((sign, s))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, s in out[1:]:
            text += f" {sign} {s}"
        return text


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def minor_determinant(rows: Sequence[int], cols: Sequence[int],
                      p: int = DEFAULT_PRIME) -> Polynomial:
    """Determinant of the generic submatrix on the given rows and columns (Leibniz)."""
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ValueError(f"non-square selection: {len(rows)} rows, {len(cols)} columns")
    t = len(rows)
    if t == 0:
        raise ValueError("empty minor")
    acc: dict[Monomial, int] = {}
    for perm in permutations(range(t)):
        m = monomial([(rows[i], cols[perm[i]]) for i in range(t)])
        acc[m] = acc.get(m, 0) + _perm_sign(perm)
    return Polynomial(acc, p)
