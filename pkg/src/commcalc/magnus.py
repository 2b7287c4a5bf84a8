"""Truncated Magnus expansion, lower central series weight, Lyndon coordinates.

The Magnus map sends generator ``g`` to ``1 + X_g`` in the ring of
noncommuting power series with integer coefficients.  A nontrivial word lies
in the n-th lower central term exactly when every nonconstant term of its
image has degree >= n, and the degree-n part is then a Lie polynomial.  That
Lie polynomial, written over the standard bracketings of Lyndon words, gives
integer coordinates for the class in ``F_n / F_{n+1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from ._backend import kernels
from .words import Word, WordError

DEFAULT_DEGREE_BOUND = 8

Monomial = tuple[int, ...]


class Cancelled(RuntimeError):
    pass


def _check_cancel(cancel) -> None:
    if cancel is not None and cancel.is_set():
        raise Cancelled("computation cancelled")


class TruncatedSeries:
    """Integer noncommutative series modulo terms of degree > ``bound``."""

    __slots__ = ("bound", "terms")

    def __init__(self, bound: int, terms: Mapping[Monomial, int] | None = None):
        if bound < 0:
            raise ValueError("degree bound must be nonnegative")
        self.bound = bound
        self.terms: dict[Monomial, int] = {
            tuple(m): int(c) for m, c in (terms or {}).items() if c and len(m) <= bound
        }

    @classmethod
    def one(cls, bound: int) -> "TruncatedSeries":
        return cls(bound, {(): 1})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        bound = min(self.bound, other.bound)
        out = TruncatedSeries(bound)
        out.terms = kernels.series_mul(self.terms, other.terms, bound)
        return out

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        bound = min(self.bound, other.bound)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return TruncatedSeries(bound, terms)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.bound, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.bound == other.bound and self.terms == other.terms

    def homogeneous(self, degree: int) -> dict[Monomial, int]:
        return {m: c for m, c in self.terms.items() if len(m) == degree}

    def min_nonconstant_degree(self) -> int | None:
        degs = [len(m) for m in self.terms if m]
        return min(degs) if degs else None

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def render(self, names: Sequence[str]) -> list[str]:
        """Sorted ``coef*monomial`` strings, degree first."""
        return [
            f"{c}*{''.join(names[g] for g in m) or '1'}"
            for m, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))
        ]

    def __repr__(self) -> str:
        return f"TruncatedSeries(bound={self.bound}, terms={self.terms!r})"


def binomial(a: int, j: int) -> int:
    """Generalized binomial coefficient; valid for negative ``a``."""
    num = 1
    for i in range(j):
        num *= a - i
    den = 1
    for i in range(2, j + 1):
        den *= i
    return num // den


def magnus_expand(w: Word, bound: int = DEFAULT_DEGREE_BOUND, cancel=None) -> TruncatedSeries:
    """Image of ``w`` under ``g -> 1 + X_g``, truncated above degree ``bound``.

    ``g^a`` is expanded as ``sum_j C(a, j) X_g^j`` so large exponents are cheap.
    """
    if bound < 1:
        raise ValueError("degree bound must be >= 1")
    terms: dict[Monomial, int] = {(): 1}
    for g, a in w.syllables:
        _check_cancel(cancel)
        coeffs = [binomial(a, j) for j in range(bound + 1)]
        terms = kernels.series_mul_power(terms, g, coeffs, bound)
    out = TruncatedSeries(bound)
    out.terms = terms
    return out


@dataclass(frozen=True)
class WeightResult:
    """``kind`` is ``"identity"``, ``"weight"`` or ``"exceeds"``."""

    kind: str
    value: int | None = None

    @classmethod
    def identity(cls) -> "WeightResult":
        return cls("identity")

    @classmethod
    def weight(cls, n: int) -> "WeightResult":
        return cls("weight", n)

    @classmethod
    def exceeds(cls, bound: int) -> "WeightResult":
        return cls("exceeds", bound)

    @property
    def is_identity(self) -> bool:
        return self.kind == "identity"

    @property
    def is_finite(self) -> bool:
        return self.kind == "weight"

    def at_least(self, n: int) -> bool:
        """True when the word is known to lie in ``F_n``."""
        if self.kind == "identity":
            return True
        if self.kind == "weight":
            return self.value >= n
        return self.value >= n - 1

    def __str__(self) -> str:
        if self.kind == "identity":
            return "identity"
        if self.kind == "weight":
            return str(self.value)
        return f">{self.value}"


def lcs_weight(w: Word, bound: int = DEFAULT_DEGREE_BOUND, cancel=None) -> WeightResult:
    """Lower central weight: the n with ``w`` in ``F_n`` but not ``F_{n+1}``."""
    if bound < 1:
        raise ValueError("degree bound must be >= 1")
    if w.is_identity():
        return WeightResult.identity()
    # grow the truncation one degree at a time; stop at the first nonzero layer
    for d in range(1, bound + 1):
        _check_cancel(cancel)
        s = magnus_expand(w, d, cancel)
        if any(len(m) == d for m in s.terms):
            return WeightResult.weight(d)
    return WeightResult.exceeds(bound)


# -- Lyndon words and the free Lie ring ----------------------------------------

def _lyndon_words_upto(rank: int, n: int) -> Iterator[tuple[int, ...]]:
    # Duval's generation in lexicographic order
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == rank - 1:
            w.pop()


@lru_cache(maxsize=None)
def lyndon_basis(rank: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Lyndon words of length ``degree`` over letters ``0 < 1 < ... < rank-1``, sorted."""
    if rank < 1 or degree < 1:
        raise ValueError("rank and degree must be >= 1")
    return tuple(sorted(w for w in _lyndon_words_upto(rank, degree) if len(w) == degree))


def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def standard_factorization(w: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split a Lyndon word of length >= 2 as ``u v`` with ``v`` its longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


# Lie elements are dicts {monomial: coefficient} of a single degree.

def lie_bracket(p: Mapping[Monomial, int], q: Mapping[Monomial, int]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            for m, s in ((m1 + m2, 1), (m2 + m1, -1)):
                v = out.get(m, 0) + s * c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return out


@lru_cache(maxsize=None)
def bracketed_lyndon(w: tuple[int, ...]) -> tuple[tuple[Monomial, int], ...]:
    """Associative expansion of the standard bracketing of a Lyndon word."""
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    return tuple(sorted(lie_bracket(dict(bracketed_lyndon(u)), dict(bracketed_lyndon(v))).items()))


def bracket_string(w: tuple[int, ...], names: Sequence[str]) -> str:
    if len(w) == 1:
        return names[w[0]]
    u, v = standard_factorization(w)
    return f"[{bracket_string(u, names)},{bracket_string(v, names)}]"


class NotLieElement(ArithmeticError):
    pass


def lyndon_coordinates(poly: Mapping[Monomial, int], rank: int, degree: int) -> dict[tuple[int, ...], int]:
    """Coordinates of a homogeneous Lie polynomial over bracketed Lyndon words.

    Each bracketing expands to its Lyndon word plus lexicographically larger
    words, so sweeping the basis in increasing order peels off one
    coordinate at a time.
    """
    rest = {m: c for m, c in poly.items() if c}
    if any(len(m) != degree for m in rest):
        raise ValueError(f"polynomial is not homogeneous of degree {degree}")
    coords: dict[tuple[int, ...], int] = {}
    for lw in lyndon_basis(rank, degree):
        c = rest.get(lw, 0)
        if not c:
            continue
        coords[lw] = c
        for m, b in bracketed_lyndon(lw):
            v = rest.get(m, 0) - c * b
            if v:
                rest[m] = v
            else:
                rest.pop(m, None)
    if rest:
        raise NotLieElement(f"leftover terms {rest} after Lyndon reduction")
    return coords


@dataclass(frozen=True)
class LieVector:
    """A class in ``F_n / F_{n+1}`` in Lyndon coordinates (zeros omitted)."""

    degree: int
    rank: int
    coords: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(k): int(v) for k, v in dict(self.coords).items() if v}
        for k in clean:
            if len(k) != self.degree or not is_lyndon(k) or max(k) >= self.rank:
                raise ValueError(f"{k} is not a Lyndon word of degree {self.degree} over rank {self.rank}")
        object.__setattr__(self, "coords", clean)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieVector):
            return NotImplemented
        return (self.degree, self.rank, self.coords) == (other.degree, other.rank, other.coords)

    def __hash__(self) -> int:
        return hash((self.degree, self.rank, tuple(sorted(self.coords.items()))))

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "LieVector") -> "LieVector":
        self._check(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, 0) + v
        return LieVector(self.degree, self.rank, out)

    def __neg__(self) -> "LieVector":
        return self.scale(-1)

    def __sub__(self, other: "LieVector") -> "LieVector":
        return self + (-other)

    def scale(self, k: int) -> "LieVector":
        return LieVector(self.degree, self.rank, {w: k * v for w, v in self.coords.items()})

    __rmul__ = scale

    def _check(self, other: "LieVector") -> None:
        if (self.degree, self.rank) != (other.degree, other.rank):
            raise ValueError("LieVectors of different degree or rank")

    def dense(self) -> list[int]:
        return [self.coords.get(w, 0) for w in lyndon_basis(self.rank, self.degree)]

    def scalar_multiple_of(self, base: "LieVector") -> int | None:
        """The integer ``k`` with ``self == k * base``, or None."""
        self._check(base)
        if base.is_zero():
            return 0 if self.is_zero() else None
        w0, b0 = next(iter(sorted(base.coords.items())))
        k, r = divmod(self.coords.get(w0, 0), b0)
        if r or base.scale(k) != self:
            return None
        return k

    def to_dict(self, names: Sequence[str]) -> dict[str, int]:
        return {"".join(names[g] for g in w): v for w, v in sorted(self.coords.items())}


class WeightTooLow(WordError):
    """The word does not lie in the requested lower central term."""

    def __init__(self, weight: WeightResult, degree: int, index: int | None = None):
        self.weight = weight
        self.degree = degree
        self.index = index
        where = "" if index is None else f"relator {index}: "
        super().__init__(f"{where}weight {weight} is below degree {degree}")


def leading_lie_class(w: Word, n: int, cancel=None) -> LieVector:
    """Class of ``w`` in ``F_n / F_{n+1}``; zero iff ``w`` lies in ``F_{n+1}``."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    s = magnus_expand(w, n, cancel)
    low = s.min_nonconstant_degree()
    if low is not None and low < n:
        raise WeightTooLow(WeightResult.weight(low), n)
    rank = w.alphabet.rank
    return LieVector(n, rank, lyndon_coordinates(s.homogeneous(n), rank, n))


def relator_class_matrix(relators: Sequence[Word], n: int, cancel=None) -> list[list[int]]:
    """Rows of Lyndon coordinates of each relator's class in ``F_n / F_{n+1}``."""
    rows = []
    for i, r in enumerate(relators):
        try:
            rows.append(leading_lie_class(r, n, cancel).dense())
        except WeightTooLow as exc:
            raise WeightTooLow(exc.weight, n, i) from None
    return rows
