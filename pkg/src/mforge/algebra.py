"""Formal correspondences: objects, generators, words and rational expressions.

A correspondence of degree ``r`` from ``X`` to ``Y`` lives in
``CH^{dim X + r}(X x Y)`` and shifts cohomological degree by ``2r``.
Words compose right to left, so the rightmost factor is applied first.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

Rational = Union[int, Fraction]


class MforgeError(Exception):
    """Base class for all engine errors."""


class CompositionError(MforgeError, ValueError):
    pass


class HomogeneityError(MforgeError, ValueError):
    pass


class IndexRangeError(MforgeError, IndexError):
    pass


class UnsupportedDimensionError(MforgeError, ValueError):
    pass


def check_g(g: int) -> int:
    if not isinstance(g, int) or isinstance(g, bool) or g < 2:
        raise UnsupportedDimensionError(f"g must be an integer >= 2, got {g!r}")
    return g


class Tag(str, Enum):
    A = "A"
    Theta = "Theta"
    Point = "Point"


@dataclass(frozen=True)
class Obj:
    tag: Tag
    g: int

    def __post_init__(self):
        check_g(self.g)
        object.__setattr__(self, "tag", Tag(self.tag))

    @property
    def dim(self) -> int:
        return {Tag.A: self.g, Tag.Theta: self.g - 1, Tag.Point: 0}[self.tag]

    def __str__(self) -> str:
        return self.tag.value


class Kind(str, Enum):
    DeltaA = "dA"
    DeltaTheta = "dT"
    GammaI = "G"
    TGammaI = "tG"
    L = "L"
    Lam = "Lam"
    PiA = "pi"
    TGammaN = "mul"


# (source tag, target tag, degree)
_SIGNATURE = {
    Kind.DeltaA: (Tag.A, Tag.A, 0),
    Kind.DeltaTheta: (Tag.Theta, Tag.Theta, 0),
    Kind.GammaI: (Tag.Theta, Tag.A, 1),
    Kind.TGammaI: (Tag.A, Tag.Theta, 0),
    Kind.L: (Tag.A, Tag.A, 1),
    Kind.Lam: (Tag.A, Tag.A, -1),
    Kind.PiA: (Tag.A, Tag.A, 0),
    Kind.TGammaN: (Tag.A, Tag.A, 0),
}

_KIND_ORDER = {k: i for i, k in enumerate(Kind)}


@dataclass(frozen=True)
class Generator:
    """One of the fixed correspondences. ``index`` is ``j`` for PiA and ``n`` for TGammaN."""

    kind: Kind
    g: int
    index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        check_g(self.g)
        indexed = self.kind in (Kind.PiA, Kind.TGammaN)
        if indexed and not isinstance(self.index, int):
            raise IndexRangeError(f"{self.kind.name} needs an integer index")
        if not indexed and self.index is not None:
            raise IndexRangeError(f"{self.kind.name} takes no index")

    @property
    def source(self) -> Obj:
        return Obj(_SIGNATURE[self.kind][0], self.g)

    @property
    def target(self) -> Obj:
        return Obj(_SIGNATURE[self.kind][1], self.g)

    @property
    def degree(self) -> int:
        return _SIGNATURE[self.kind][2]

    @property
    def is_identity(self) -> bool:
        return self.kind in (Kind.DeltaA, Kind.DeltaTheta)

    @property
    def is_zero(self) -> bool:
        """PiA(j) outside 0..2g is the zero correspondence."""
        return self.kind is Kind.PiA and not 0 <= self.index <= 2 * self.g

    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.index if self.index is not None else 0)

    def __str__(self) -> str:
        if self.kind is Kind.PiA:
            return f"pi({self.index},A)"
        if self.kind is Kind.TGammaN:
            return f"mul({self.index})"
        return self.kind.value

    def __repr__(self) -> str:
        return f"Generator({self})"


Word = tuple  # tuple[Generator, ...], leftmost factor applied last


def word_source(word: Word) -> Obj:
    return word[-1].source


def word_target(word: Word) -> Obj:
    return word[0].target


def word_degree(word: Word) -> int:
    return sum(f.degree for f in word)


def check_word(word: Sequence[Generator]) -> Word:
    word = tuple(word)
    if not word:
        raise CompositionError("empty word; use a Delta generator for identities")
    for k in range(len(word) - 1):
        left, right = word[k], word[k + 1]
        if right.target != left.source:
            raise CompositionError(
                f"cannot compose {left} after {right}: "
                f"{right} lands in {right.target}, {left} starts at {left.source}"
            )
    if len({f.g for f in word}) != 1:
        raise CompositionError("generators for different g in one word")
    return word


def word_key(word: Word) -> tuple:
    return (len(word), tuple(f.sort_key() for f in word))


def _frac(c: Rational) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


class Expression:
    """Finite rational combination of words sharing source, target and degree."""

    __slots__ = ("_terms", "source", "target", "degree", "_hash")

    def __init__(
        self,
        terms: Mapping[Word, Rational] | Iterable[tuple[Word, Rational]],
        source: Obj,
        target: Obj,
        degree: int,
    ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        for w, c in items:
            w = check_word(w)
            if (word_source(w), word_target(w), word_degree(w)) != (source, target, degree):
                raise HomogeneityError(
                    f"word {format_word(w)} is {word_source(w)}->{word_target(w)} of degree "
                    f"{word_degree(w)}, expected {source}->{target} of degree {degree}"
                )
            acc[w] = acc.get(w, Fraction(0)) + _frac(c)
        self._terms = {w: c for w, c in acc.items() if c != 0}
        self.source = source
        self.target = target
        self.degree = degree
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, source: Obj, target: Obj, degree: int) -> "Expression":
        # trusted constructor: terms already checked, nonzero, Fraction-valued
        e = cls.__new__(cls)
        e._terms = terms
        e.source, e.target, e.degree = source, target, degree
        e._hash = None
        return e

    @classmethod
    def word(cls, word: Sequence[Generator], coeff: Rational = 1) -> "Expression":
        w = check_word(word)
        return cls({w: coeff}, word_source(w), word_target(w), word_degree(w))

    @classmethod
    def zero(cls, source: Obj, target: Obj, degree: int) -> "Expression":
        return cls._raw({}, source, target, degree)

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def g(self) -> int:
        return self.source.g

    def is_zero(self) -> bool:
        return not self._terms

    def signature(self) -> tuple:
        return (self.source, self.target, self.degree)

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: word_key(t[0]))

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expression):
            return NotImplemented
        return self.signature() == other.signature() and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.signature(), frozenset(self._terms.items())))
        return self._hash

    def _check_same(self, other: "Expression") -> None:
        if self.signature() != other.signature():
            raise HomogeneityError(
                f"cannot add {self.source}->{self.target} (degree {self.degree}) "
                f"and {other.source}->{other.target} (degree {other.degree})"
            )

    def __add__(self, other: "Expression") -> "Expression":
        return linear_combine([1, 1], [self, other])

    def __sub__(self, other: "Expression") -> "Expression":
        return linear_combine([1, -1], [self, other])

    def __neg__(self) -> "Expression":
        return self.scale(-1)

    def scale(self, c: Rational) -> "Expression":
        c = _frac(c)
        if c == 0:
            return Expression.zero(*self.signature())
        return Expression._raw({w: c * v for w, v in self._terms.items()}, *self.signature())

    def __rmul__(self, c: Rational) -> "Expression":
        return self.scale(c)

    def __matmul__(self, other: "Expression") -> "Expression":
        return compose(self, other)

    def __pow__(self, n: int) -> "Expression":
        if n < 1:
            raise ValueError("only positive powers of an endomorphism are defined")
        out = self
        for _ in range(n - 1):
            out = compose(out, self)
        return out

    def __repr__(self) -> str:
        return f"Expression({format_expr(self)!r}, {self.source}->{self.target}, deg {self.degree})"


def compose(f: Expression, h: Expression) -> Expression:
    """Return ``f o h`` (apply ``h`` first), extended bilinearly over terms."""
    if h.target != f.source:
        raise CompositionError(
            f"cannot compose: right factor lands in {h.target}, left factor starts at {f.source}"
        )
    terms: dict[Word, Fraction] = {}
    for wf, cf in f._terms.items():
        for wh, ch in h._terms.items():
            w = wf + wh
            terms[w] = terms.get(w, Fraction(0)) + cf * ch
    terms = {w: c for w, c in terms.items() if c != 0}
    return Expression._raw(terms, h.source, f.target, f.degree + h.degree)


def linear_combine(coeffs: Sequence[Rational], exprs: Sequence[Expression]) -> Expression:
    if len(coeffs) != len(exprs):
        raise ValueError("coeffs and exprs differ in length")
    if not exprs:
        raise ValueError("need at least one expression")
    first = exprs[0]
    terms: dict[Word, Fraction] = {}
    for c, e in zip(coeffs, exprs):
        first._check_same(e)
        c = _frac(c)
        for w, v in e._terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c * v
    terms = {w: v for w, v in terms.items() if v != 0}
    return Expression._raw(terms, *first.signature())


def format_word(word: Word) -> str:
    """Render a word in DSL syntax, collapsing runs into powers."""
    parts = []
    k = 0
    while k < len(word):
        run = 1
        while k + run < len(word) and word[k + run] == word[k]:
            run += 1
        parts.append(str(word[k]) if run == 1 else f"{word[k]}^{run}")
        k += run
    return " . ".join(parts)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_expr(e: Expression) -> str:
    if e.is_zero():
        return "0"
    out = []
    for i, (w, c) in enumerate(e.sorted_terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = format_word(w) if mag == 1 else f"{_format_coeff(mag)} {format_word(w)}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


class Gens:
    """Generator expressions for a fixed ``g``.

    >>> s = Gens(4)
    >>> (s.G @ s.tG).degree
    1
    """

    def __init__(self, g: int):
        self.g = check_g(g)
        self.A = Obj(Tag.A, g)
        self.Theta = Obj(Tag.Theta, g)
        self.dA = self._e(Kind.DeltaA)
        self.dT = self._e(Kind.DeltaTheta)
        self.G = self._e(Kind.GammaI)
        self.tG = self._e(Kind.TGammaI)
        self.L = self._e(Kind.L)
        self.Lam = self._e(Kind.Lam)

    def _e(self, kind: Kind, index: int | None = None) -> Expression:
        return Expression.word([Generator(kind, self.g, index)])

    def pi(self, j: int) -> Expression:
        return self._e(Kind.PiA, j)

    def mul(self, n: int) -> Expression:
        return self._e(Kind.TGammaN, n)

    def zero(self, source: Obj, target: Obj, degree: int = 0) -> Expression:
        return Expression.zero(source, target, degree)


@dataclass(frozen=True)
class Motive:
    """A triple (X, idempotent, twist). Idempotency is the caller's business."""

    obj: Obj
    idempotent: Expression
    twist: int = 0

    def __post_init__(self):
        e = self.idempotent
        if e.source != self.obj or e.target != self.obj or e.degree != 0:
            raise HomogeneityError("idempotent must be a degree-0 endomorphism of obj")


def hom_typecheck(f: Expression, M: Motive, N: Motive) -> bool:
    # a degree-r correspondence maps (X, p, m) to (Y, q, m + r)
    return f.source == M.obj and f.target == N.obj and f.degree == N.twist - M.twist
