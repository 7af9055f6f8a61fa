"""ASCII syntax for correspondence expressions.

Grammar (``.`` is composition, right factor applied first)::

    expr   := term { ("+" | "-") term }
    term   := [rational] factor { "." factor }
    factor := atom [ "^" nat ]
    atom   := "dA" | "dT" | "L" | "Lam" | "pi(" int ",A)" | "piT(" int ")"
            | "G" | "tG" | "mul(" int ")" | "p" | "piP" | "(" expr ")"

A leading ``-`` on the first term is accepted. ``0`` alone is the zero
endomorphism of A in degree 0. ``piT``, ``p`` and ``piP`` expand to the named
projectors; ``mul(n)`` is the pullback along multiplication by n.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    CompositionError,
    Expression,
    Gens,
    HomogeneityError,
    IndexRangeError,
    MforgeError,
    check_g,
    compose,
    format_expr,
    linear_combine,
)
from .named import complementary_projectors, theta_projector

GRAMMAR_VERSION = "mforge-dsl/1"

MAX_TERMS = 20_000
MAX_WORD = 512
MAX_DEPTH = 64


class DSLError(MforgeError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DSLSyntaxError(DSLError):
    pass


class DSLTypeError(DSLError):
    pass


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<name>piT|piP|pi|mul|Lam|dA|dT|tG|G|L|p|A)
  | (?P<op>[+\-./^(),])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


@lru_cache(maxsize=None)
def _gens(g: int) -> Gens:
    return Gens(g)


@lru_cache(maxsize=256)
def _named(g: int, name: str, j: int = 0) -> Expression:
    # expressions are immutable, so sharing them between parses is safe
    if name == "piT":
        return theta_projector(j, g)
    pp, p = complementary_projectors(g)
    return pp if name == "piP" else p


class _Parser:
    def __init__(self, text: str, g: int):
        self.g = g
        self.s = _gens(g)
        self.tokens = _tokenize(text)
        self.i = 0
        self.depth = 0

    # token helpers
    @property
    def tok(self):
        return self.tokens[self.i]

    def at(self, value: str) -> bool:
        return self.tok[1] == value and self.tok[0] in ("op", "name")

    def expect(self, value: str) -> int:
        if not self.at(value):
            found = self.tok[1] or "end of input"
            raise DSLSyntaxError(f"expected {value!r}, found {found!r}", self.tok[2])
        pos = self.tok[2]
        self.i += 1
        return pos

    def integer(self, signed: bool) -> int:
        neg = False
        if signed and self.at("-"):
            neg = True
            self.i += 1
        kind, value, pos = self.tok
        if kind != "num":
            raise DSLSyntaxError("expected an integer", pos)
        self.i += 1
        return -int(value) if neg else int(value)

    # grammar
    def parse(self) -> Expression:
        if self.tok[0] == "num" and self.tok[1] == "0" and self.tokens[self.i + 1][0] == "end":
            return self.s.zero(self.s.A, self.s.A, 0)
        e = self.expr()
        if self.tok[0] != "end":
            raise DSLSyntaxError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return e

    def expr(self) -> Expression:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise DSLSyntaxError("nesting too deep", self.tok[2])
        sign = 1
        if self.at("-"):
            sign = -1
            self.i += 1
        start = self.tok[2]
        acc = self.term().scale(sign)
        while self.at("+") or self.at("-"):
            sign = 1 if self.tok[1] == "+" else -1
            pos = self.tok[2]
            self.i += 1
            t = self.term()
            try:
                acc = linear_combine([1, sign], [acc, t])
            except HomogeneityError as exc:
                raise DSLTypeError(str(exc), pos) from None
            self._guard(acc, start)
        self.depth -= 1
        return acc

    def term(self) -> Expression:
        coeff = Fraction(1)
        start = self.tok[2]
        if self.tok[0] == "num":
            num = int(self.tok[1])
            self.i += 1
            den = 1
            if self.at("/"):
                self.i += 1
                kind, value, pos = self.tok
                if kind != "num":
                    raise DSLSyntaxError("expected a denominator", pos)
                den = int(value)
                if den == 0:
                    raise DSLSyntaxError("zero denominator", pos)
                self.i += 1
            coeff = Fraction(num, den)
        acc = self.factor()
        while self.at("."):
            pos = self.tok[2]
            self.i += 1
            right = self.factor()
            self._room(acc, right, start)
            try:
                acc = compose(acc, right)
            except CompositionError as exc:
                raise DSLTypeError(str(exc), pos) from None
            self._guard(acc, start)
        return acc.scale(coeff)

    def factor(self) -> Expression:
        start = self.tok[2]
        a = self.atom()
        if self.at("^"):
            self.i += 1
            pos = self.tok[2]
            n = self.integer(signed=False)
            if n < 1:
                raise DSLSyntaxError("exponent must be at least 1", pos)
            if a.source != a.target:
                raise DSLTypeError("only endomorphisms can be raised to a power", pos)
            base = a
            for _ in range(n - 1):
                self._room(a, base, start)
                a = compose(a, base)
                self._guard(a, start)
        return a

    def atom(self) -> Expression:
        kind, value, pos = self.tok
        s = self.s
        if kind == "op" and value == "(":
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if kind != "name":
            found = value or "end of input"
            raise DSLSyntaxError(f"expected a factor, found {found!r}", pos)
        self.i += 1
        simple = {"dA": s.dA, "dT": s.dT, "L": s.L, "Lam": s.Lam, "G": s.G, "tG": s.tG}
        if value in simple:
            return simple[value]
        if value == "pi":
            self.expect("(")
            j = self.integer(signed=True)
            self.expect(",")
            self.expect("A")
            self.expect(")")
            return s.pi(j)
        if value == "mul":
            self.expect("(")
            n = self.integer(signed=True)
            self.expect(")")
            return s.mul(n)
        if value == "piT":
            self.expect("(")
            jpos = self.tok[2]
            j = self.integer(signed=True)
            self.expect(")")
            try:
                return _named(self.g, "piT", j)
            except IndexRangeError as exc:
                raise DSLTypeError(str(exc), jpos) from None
        if value == "piP":
            return _named(self.g, "piP")
        if value == "p":
            return _named(self.g, "p")
        raise DSLSyntaxError(f"unexpected {value!r}", pos)

    def _room(self, f: Expression, h: Expression, pos: int) -> None:
        # checked before composing so the product is never materialized
        if len(f) * len(h) > MAX_TERMS:
            raise DSLSyntaxError("expression too large", pos)

    def _guard(self, e: Expression, pos: int) -> None:
        if len(e) > MAX_TERMS or any(len(w) > MAX_WORD for w in e.terms):
            raise DSLSyntaxError("expression too large", pos)


def parse(text: str, g: int, signature: tuple | None = None) -> Expression:
    """Parse ``text`` into an Expression for abelian dimension ``g``.

    ``signature`` is an optional ``(source, target, degree)`` the result must
    have. It also gives ``0`` a type other than the default A -> A, degree 0,
    which is what makes zero expressions round-trip.

    >>> format(parse("G . tG", 4))
    'G . tG'
    """
    check_g(g)
    if not isinstance(text, str):
        raise TypeError("text must be a string")
    e = _Parser(text, g).parse()
    if signature is None or e.signature() == tuple(signature):
        return e
    if e.is_zero():
        return Expression.zero(*signature)
    src, tgt, deg = signature
    raise DSLTypeError(
        f"expression is {e.source}->{e.target} of degree {e.degree}, expected {src}->{tgt} of degree {deg}", 0
    )


def format(e: Expression) -> str:  # noqa: A001 - mirrors parse
    return format_expr(e)
