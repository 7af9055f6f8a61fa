"""Oriented rewrite rules for correspondence words and the normalizer built on them.

Rules are tried in list order (earlier = higher priority), each at its leftmost
match. When no rule matches literally, the normalizer uses the degree that a
leading ``pi(m,A)`` pins down at every later position of the A-segment: a copy
of ``pi(d,A)`` may be slid to any such position (idempotency plus the
commutation rules), a rule whose left side starts with ``pi(d,A)`` is applied
there, and the copy is merged back. This is how the Lefschetz contractions fire
in the middle of a word.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    CompositionError,
    Expression,
    Generator,
    HomogeneityError,
    Kind,
    MforgeError,
    Word,
    check_g,
    check_word,
    format_word,
    word_degree,
    word_key,
    word_source,
    word_target,
)

Terms = tuple  # tuple[tuple[Fraction, Word], ...]; empty means zero

GROUP_ORDER = ("R0", "D", "R1", "R4", "R3", "R2", "K1", "K2")
DEFAULT_DEPTH = 3
MAX_STEPS = 100_000


class RewriteError(MforgeError, RuntimeError):
    pass


class Rule:
    """Base rule. Subclasses implement ``match_at`` and ``instances``."""

    name: str
    group: str
    key: Generator | Kind  # index key for the first factor of a match

    def match_at(self, word: Word, pos: int) -> tuple[int, Terms] | None:
        raise NotImplementedError

    def instances(self) -> list[tuple[str, Word, Terms]]:
        """Concrete (name, lhs, rhs) instances, used for semantic checks."""
        raise NotImplementedError


@dataclass(frozen=True)
class PatternRule(Rule):
    name: str
    group: str
    lhs: Word
    rhs: Terms

    def __post_init__(self):
        check_word(self.lhs)
        sig = (word_source(self.lhs), word_target(self.lhs), word_degree(self.lhs))
        for _, w in self.rhs:
            check_word(w)
            if (word_source(w), word_target(w), word_degree(w)) != sig:
                raise HomogeneityError(
                    f"rule {self.name} is not endpoint/degree preserving: "
                    f"{format_word(self.lhs)} -> {format_word(w)}"
                )

    @property
    def key(self):
        return self.lhs[0]

    def match_at(self, word, pos):
        n = len(self.lhs)
        if word[pos : pos + n] == self.lhs:
            return n, self.rhs
        return None

    def instances(self):
        return [(self.name, self.lhs, self.rhs)]


@dataclass(frozen=True)
class ZeroPiRule(Rule):
    """pi(j,A) = 0 for j outside 0..2g."""

    g: int
    name: str = "R0"
    group: str = "R0"

    @property
    def key(self):
        return Kind.PiA

    def match_at(self, word, pos):
        return (1, ()) if word[pos].is_zero else None

    def instances(self):
        g = self.g
        return [
            (f"R0.j={j}", (Generator(Kind.PiA, g, j),), ())
            for j in (-2, -1, 2 * g + 1, 2 * g + 2)
        ]


@dataclass(frozen=True)
class IdentityRule(Rule):
    """Delta factors act as identities inside longer words."""

    kind: Kind
    g: int
    name: str = "D"
    group: str = "D"

    @property
    def key(self):
        return self.kind

    def match_at(self, word, pos):
        if len(word) > 1:
            return 1, ((Fraction(1), ()),)
        return None

    def instances(self):
        g = self.g
        d = Generator(self.kind, g)
        if self.kind is Kind.DeltaA:
            others = [Generator(Kind.L, g), Generator(Kind.Lam, g), Generator(Kind.PiA, g, 1)]
            pairs = [(d, x) for x in others] + [(x, d) for x in others]
            pairs += [(d, Generator(Kind.GammaI, g)), (Generator(Kind.TGammaI, g), d), (d, d)]
        else:
            pairs = [(Generator(Kind.GammaI, g), d), (d, Generator(Kind.TGammaI, g)), (d, d)]
        out = []
        for w in pairs:
            rest = tuple(f for f in w if f != d) or (d,)
            out.append((f"D.{format_word(w)}", w, ((Fraction(1), rest),)))
        return out


@dataclass(frozen=True)
class ScalarRule(Rule):
    """mul(n) next to pi(j,A) becomes n^j pi(j,A), on either side."""

    g: int
    j: int
    side: str  # "left": mul(n) . pi(j,A); "right": pi(j,A) . mul(n)

    @property
    def name(self):
        return f"R4.{self.side}.j={self.j}"

    @property
    def group(self):
        return "R4"

    @property
    def key(self):
        return Kind.TGammaN if self.side == "left" else Generator(Kind.PiA, self.g, self.j)

    def match_at(self, word, pos):
        if pos + 1 >= len(word):
            return None
        a, b = word[pos], word[pos + 1]
        if self.side == "left":
            mul, pi = a, b
        else:
            pi, mul = a, b
        if mul.kind is Kind.TGammaN and pi.kind is Kind.PiA and pi.index == self.j:
            c = Fraction(mul.index) ** self.j
            return 2, ((c, (pi,)),) if c != 0 else ()
        return None

    def instances(self):
        out = []
        pi = Generator(Kind.PiA, self.g, self.j)
        for n in (-1, 0, 2, 3):
            mul = Generator(Kind.TGammaN, self.g, n)
            lhs = (mul, pi) if self.side == "left" else (pi, mul)
            c = Fraction(n) ** self.j
            out.append((f"{self.name}.n={n}", lhs, ((c, (pi,)),) if c != 0 else ()))
        return out


def _gen(kind, g, index=None):
    return Generator(kind, g, index)


def _one(word: Word) -> Terms:
    return ((Fraction(1), tuple(word)),)


@dataclass(frozen=True)
class RewriteSystem:
    g: int
    rules: tuple
    saturation_depth: int = DEFAULT_DEPTH
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _index: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _merged: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        check_g(self.g)
        if self.saturation_depth < 0:
            raise ValueError("saturation_depth must be >= 0")
        for r in self.rules:
            if getattr(r, "g", self.g) != self.g:
                raise ValueError(f"rule {r.name} built for another g")
        granks: dict = {}
        for rank, r in enumerate(self.rules):
            grank = granks.setdefault(r.group, len(granks))
            self._index.setdefault(r.key, []).append(((grank, rank), r))

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def with_depth(self, depth: int) -> "RewriteSystem":
        other = RewriteSystem(self.g, self.rules, depth)
        object.__setattr__(other, "_cache", self._cache)  # normal forms do not depend on depth
        return other

    def prepend(self, *rules: Rule) -> "RewriteSystem":
        return RewriteSystem(self.g, tuple(rules) + self.rules, self.saturation_depth)

    def candidates(self, f: Generator) -> list[tuple[tuple[int, int], Rule]]:
        """Rules that may match starting at ``f``, in priority order."""
        hit = self._merged.get(f)
        if hit is None:
            hit = sorted(self._index.get(f, []) + self._index.get(f.kind, []), key=lambda t: t[0])
            self._merged[f] = hit
        return hit


def standard_rules(g: int, saturation_depth: int | None = None) -> RewriteSystem:
    """The standard oriented axiom set for abelian dimension ``g``."""
    check_g(g)
    if saturation_depth is None:
        saturation_depth = default_depth()
    G, tG = _gen(Kind.GammaI, g), _gen(Kind.TGammaI, g)
    L, Lam = _gen(Kind.L, g), _gen(Kind.Lam, g)
    pi = lambda j: _gen(Kind.PiA, g, j)  # noqa: E731
    top = 2 * g

    rules: list[Rule] = [ZeroPiRule(g)]
    rules += [IdentityRule(Kind.DeltaA, g), IdentityRule(Kind.DeltaTheta, g)]
    rules.append(PatternRule("R1", "R1", (G, tG), _one((L,))))
    for j in range(top + 1):
        rules.append(ScalarRule(g, j, "left"))
        rules.append(ScalarRule(g, j, "right"))
    for j in range(top + 1):
        rules.append(PatternRule(f"R3.L.j={j}", "R3", (L, pi(j)), _one((pi(j + 2), L))))
        rules.append(PatternRule(f"R3.Lam.j={j}", "R3", (Lam, pi(j)), _one((pi(j - 2), Lam))))
    for j in range(top + 1):
        for k in range(top + 1):
            if j == k:
                rules.append(PatternRule(f"R2.idem.j={j}", "R2", (pi(j), pi(j)), _one((pi(j),))))
            else:
                rules.append(PatternRule(f"R2.orth.j={j},k={k}", "R2", (pi(j), pi(k)), ()))
    # hard Lefschetz in prefix form; c = 0 would be the empty sandwich
    for j in range(g):
        c = g - j
        rules.append(PatternRule(f"K1.j={j}", "K1", (pi(j),) + (Lam,) * c + (L,) * c, _one((pi(j),))))
    for k in range(g + 1, top + 1):
        c = k - g
        rules.append(PatternRule(f"K2.k={k}", "K2", (pi(k),) + (L,) * c + (Lam,) * c, _one((pi(k),))))
    return RewriteSystem(g, tuple(rules), saturation_depth)


def corrupted_rule(g: int, j: int = 1) -> PatternRule:
    """A deliberately wrong commutation L . pi(j) -> pi(j+4) . L (negative-path fixture)."""
    L = _gen(Kind.L, g)
    return PatternRule(
        f"CORRUPT.L.j={j}", "R3", (L, _gen(Kind.PiA, g, j)), _one((_gen(Kind.PiA, g, j + 4), L))
    )


def corrupted_rules(g: int, j: int = 1) -> RewriteSystem:
    return standard_rules(g).prepend(corrupted_rule(g, j))


def default_depth() -> int:
    raw = os.environ.get("MFORGE_DEPTH")
    if raw is None:
        return DEFAULT_DEPTH
    try:
        depth = int(raw)
    except ValueError:
        raise ValueError(f"MFORGE_DEPTH must be a non-negative integer, got {raw!r}") from None
    if depth < 0:
        raise ValueError(f"MFORGE_DEPTH must be a non-negative integer, got {raw!r}")
    return depth


# --- termination measure -------------------------------------------------


def termination_measure(word: Word) -> tuple[int, int, int]:
    """(G.tG adjacencies ignoring identities, (L|Lam|mul) before pi pairs, length)."""
    core = [f for f in word if not f.is_identity]
    adj = sum(
        1 for a, b in zip(core, core[1:]) if a.kind is Kind.GammaI and b.kind is Kind.TGammaI
    )
    inversions = 0
    movers = 0
    for f in word:
        if f.kind in (Kind.L, Kind.Lam, Kind.TGammaN):
            movers += 1
        elif f.kind is Kind.PiA:
            inversions += movers
    return adj, inversions, len(word)


# --- single steps ----------------------------------------------------------


def _apply(word: Word, pos: int, length: int, rhs: Terms) -> list[tuple[Fraction, Word]]:
    return [(c, word[:pos] + w + word[pos + length :]) for c, w in rhs]


def _literal_step(word: Word, R: RewriteSystem):
    best = None  # (group rank, pos, length, rhs); lower group first, then leftmost
    for pos, f in enumerate(word):
        for (grank, _), rule in R.candidates(f):
            if best is not None and grank >= best[0]:
                break
            m = rule.match_at(word, pos)
            if m is not None:
                best = (grank, pos, m[0], m[1])
                break
    if best is None:
        return None
    _, pos, length, rhs = best
    return _apply(word, pos, length, rhs)


def _segment_bounds(word: Word) -> tuple[int, int]:
    lo = 1 if word[0].kind is Kind.TGammaI else 0
    hi = len(word) - 1 if word[-1].kind is Kind.GammaI else len(word)
    return lo, hi


def _guarded_step(word: Word, R: RewriteSystem):
    lo, hi = _segment_bounds(word)
    if hi - lo < 1 or word[lo].kind is not Kind.PiA:
        return None
    d = word[lo].index
    for p in range(lo + 1, hi + 1):
        probe = (Generator(Kind.PiA, R.g, d),) + word[p:hi]
        lead = probe[0]
        for _, rule in R.candidates(lead):
            m = rule.match_at(probe, 0)
            if m is None:
                continue
            length, rhs = m
            if any(not w or w[0] != lead for _, w in rhs):
                continue
            return [(c, word[:p] + w[1:] + word[p + length - 1 :]) for c, w in rhs]
        if p < hi:
            d -= 2 * word[p].degree
    return None


def rewrite_step(word: Word, R: RewriteSystem):
    """One rewrite of ``word``: list of (coefficient, word), or None if irreducible."""
    out = _literal_step(word, R)
    if out is None:
        out = _guarded_step(word, R)
    return out


# --- normalization ----------------------------------------------------------


def _normalize_word(word: Word, R: RewriteSystem, check: bool) -> dict:
    cache = R._cache
    hit = cache.get(word)
    if hit is not None:
        return hit
    chain = [word]
    coeffs = [Fraction(1)]  # coefficient of chain[k] relative to the start word
    current, scale = word, Fraction(1)
    result = None
    for _ in range(MAX_STEPS):
        hit = cache.get(current)
        if hit is not None:
            result = hit
            break
        step = rewrite_step(current, R)
        if step is None:
            result = {current: Fraction(1)}
            break
        if check:
            before = termination_measure(current)
            for _, w in step:
                if termination_measure(w) >= before:
                    raise RewriteError(
                        f"termination measure did not decrease: "
                        f"{format_word(current)} -> {format_word(w)}"
                    )
        if len(step) == 1:
            c, current = step[0]
            scale *= c
            chain.append(current)
            coeffs.append(scale)
            continue
        result = {}
        for c, w in step:
            for w2, c2 in _normalize_word(w, R, check).items():
                result[w2] = result.get(w2, Fraction(0)) + c * c2
        result = {w: c for w, c in result.items() if c != 0}
        break
    else:
        raise RewriteError(f"no normal form within {MAX_STEPS} steps for {format_word(word)}")
    # every word on the chain equals coeff * (tail normal form)
    for w, k in zip(chain, coeffs):
        if w not in cache:
            cache[w] = {w2: (scale / k) * c for w2, c in result.items()}
    return cache[word]


def normalize(e: Expression, R: RewriteSystem, check_termination: bool = __debug__) -> Expression:
    if e.g != R.g:
        raise HomogeneityError(f"expression built for g={e.g}, rule system for g={R.g}")
    terms: dict = {}
    for w, c in e.terms.items():
        for w2, c2 in _normalize_word(w, R, check_termination).items():
            terms[w2] = terms.get(w2, Fraction(0)) + c * c2
    return Expression(terms, e.source, e.target, e.degree)


# --- equality ----------------------------------------------------------------

PROVED = "Proved"
NOT_PROVED = "NotProved"


def _k_moves(word: Word, R: RewriteSystem) -> list[list[tuple[Fraction, Word]]]:
    """Single hard Lefschetz steps on ``word``, forward or backward."""
    out = []
    for rule in R.rules:
        if not (isinstance(rule, PatternRule) and rule.group in ("K1", "K2")):
            continue
        lead = rule.lhs[0]
        for pos, f in enumerate(word):
            if f != lead:
                continue
            m = rule.match_at(word, pos)
            if m is not None:
                out.append(_apply(word, pos, m[0], m[1]))
            out.append([(Fraction(1), word[: pos + 1] + rule.lhs[1:] + word[pos + 1 :])])
    return out


def _add_into(acc: dict, terms: dict, c: Fraction) -> None:
    for w, v in terms.items():
        x = acc.get(w, Fraction(0)) + c * v
        if x:
            acc[w] = x
        else:
            acc.pop(w, None)


def _saturate(e1: Expression, e2: Expression, R: RewriteSystem, depth: int, cap: int = 256) -> bool:
    """Bounded search: rewrite either side by K-steps in both directions, compare normal forms.

    States are term dicts; a state's normal form is updated only for the
    word that changed.
    """
    check = False

    def nf_of(terms: dict) -> dict:
        acc: dict = {}
        for w, c in terms.items():
            _add_into(acc, _normalize_word(w, R, check), c)
        return acc

    def key(d: dict) -> frozenset:
        return frozenset(d.items())

    sides = []
    for e in (e1, e2):
        terms = dict(e.terms)
        sides.append({"seen": {key(terms)}, "frontier": [(terms, nf_of(terms))], "nfs": set()})
    for side in sides:
        side["nfs"].add(key(side["frontier"][0][1]))
    for _ in range(depth):
        for i, side in enumerate(sides):
            other = sides[1 - i]["nfs"]
            nxt = []
            for terms, nf in side["frontier"]:
                for w, c in sorted(terms.items(), key=lambda t: word_key(t[0])):
                    base_nf = dict(nf)
                    _add_into(base_nf, _normalize_word(w, R, check), -c)
                    for variant in _k_moves(w, R):
                        if len(side["seen"]) >= cap:
                            break
                        new_terms = dict(terms)
                        new_terms.pop(w)
                        new_nf = dict(base_nf)
                        for c2, w2 in variant:
                            _add_into(new_terms, {w2: Fraction(1)}, c * c2)
                            _add_into(new_nf, _normalize_word(w2, R, check), c * c2)
                        k = key(new_terms)
                        if k in side["seen"]:
                            continue
                        side["seen"].add(k)
                        nk = key(new_nf)
                        if nk in other:
                            return True
                        side["nfs"].add(nk)
                        nxt.append((new_terms, new_nf))
            side["frontier"] = nxt
    return False


def equal(e1: Expression, e2: Expression, R: RewriteSystem) -> str:
    """``Proved`` if the axioms identify ``e1`` and ``e2``; ``NotProved`` is not a refutation."""
    if e1.signature() != e2.signature():
        raise HomogeneityError(
            f"cannot compare {e1.source}->{e1.target} (degree {e1.degree}) "
            f"with {e2.source}->{e2.target} (degree {e2.degree})"
        )
    if normalize(e1 - e2, R).is_zero():
        return PROVED
    if R.saturation_depth and _saturate(e1, e2, R, R.saturation_depth):
        return PROVED
    return NOT_PROVED


__all__ = [
    "CompositionError",
    "DEFAULT_DEPTH",
    "GROUP_ORDER",
    "IdentityRule",
    "NOT_PROVED",
    "PROVED",
    "PatternRule",
    "RewriteError",
    "RewriteSystem",
    "Rule",
    "ScalarRule",
    "ZeroPiRule",
    "corrupted_rule",
    "corrupted_rules",
    "default_depth",
    "equal",
    "normalize",
    "rewrite_step",
    "standard_rules",
    "termination_measure",
]
