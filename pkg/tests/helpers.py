"""Hypothesis strategies for random well-formed expressions."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from hypothesis import strategies as st

from mforge.algebra import Expression, Gens, linear_combine


def _generators(g: int) -> list[Expression]:
    s = Gens(g)
    gens = [s.dA, s.dT, s.G, s.tG, s.L, s.Lam]
    gens += [s.pi(j) for j in range(-1, 2 * g + 2)]
    gens += [s.mul(n) for n in (-1, 2, 3)]
    return gens


@lru_cache(maxsize=None)
def atom_pools(g: int) -> dict:
    """Words of length <= 2 grouped by (source, target, degree)."""
    gens = _generators(g)
    pools: dict = {}
    for e in gens:
        pools.setdefault(e.signature(), []).append(e)
    for f, h in product(gens, gens):
        if f.source == h.target:
            e = f @ h
            pools.setdefault(e.signature(), []).append(e)
    return pools


coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(lambda c: c != 0)


@st.composite
def slot(draw, g: int, target=None):
    pools = atom_pools(g)
    keys = sorted((k for k in pools if target is None or k[1] == target), key=str)
    key = draw(st.sampled_from(keys))
    n = draw(st.integers(1, 2))
    words = [draw(st.sampled_from(pools[key])) for _ in range(n)]
    cs = [draw(coeffs) for _ in range(n)]
    return linear_combine(cs, words)


@st.composite
def expressions(draw, g: int, max_slots: int = 4) -> Expression:
    """A composite of 1..max_slots slots, each a small linear combination."""
    e = draw(slot(g))
    for _ in range(draw(st.integers(0, max_slots - 1))):
        # next factor on the right must land where e starts
        e = e @ draw(slot(g, target=e.source))
    return e


def random_expression(rng, g: int, max_slots: int = 4) -> Expression:
    """Same distribution shape as ``expressions`` but driven by a plain ``random.Random``."""
    pools = atom_pools(g)
    keys = sorted(pools, key=str)

    def one(target=None):
        ks = [k for k in keys if target is None or k[1] == target]
        key = rng.choice(ks)
        n = rng.randint(1, 2)
        cs = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 1, 2])) for _ in range(n)]
        return linear_combine(cs, [rng.choice(pools[key]) for _ in range(n)])

    e = one()
    for _ in range(rng.randint(0, max_slots - 1)):
        e = e @ one(e.source)
    return e
