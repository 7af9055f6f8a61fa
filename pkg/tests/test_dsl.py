import random
from fractions import Fraction
import time

import pytest

from mforge.algebra import Gens
from mforge.dsl import GRAMMAR_VERSION, DSLError, DSLSyntaxError, DSLTypeError, format, parse
from mforge.named import complementary_projectors, theta_projector


def test_grammar_version():
    assert GRAMMAR_VERSION == "mforge-dsl/1"


@pytest.mark.parametrize(
    "text, build",
    [
        ("G . tG", lambda s: s.G @ s.tG),
        ("L^3", lambda s: s.L @ s.L @ s.L),
        ("pi(2,A) . Lam", lambda s: s.pi(2) @ s.Lam),
        ("-pi(1,A) + 2 pi(2,A)", lambda s: 2 * s.pi(2) - s.pi(1)),
        ("3/4 mul(-1)", lambda s: s.mul(-1).scale(Fraction(3, 4))),
        ("(L + 2 L) . Lam", lambda s: 3 * (s.L @ s.Lam)),
        ("2 (pi(1,A) - pi(1,A))", lambda s: s.zero(s.A, s.A)),
        ("0", lambda s: s.zero(s.A, s.A, 0)),
        ("  tG .  dA ", lambda s: s.tG @ s.dA),
    ],
)
def test_parse_values(text, build):
    assert parse(text, 4) == build(Gens(4))


def test_named_atoms_expand():
    assert parse("piT(2)", 4) == theta_projector(2, 4)
    pp, p = complementary_projectors(4)
    assert parse("piP", 4) == pp and parse("p", 4) == p


@pytest.mark.parametrize(
    "text, pos",
    [
        ("L . Lam +", 9),
        ("L . . Lam", 4),
        ("pi(2,B)", 5),
        ("L^0", 2),
        ("2/0 L", 2),
        ("(L", 2),
        ("L)", 1),
        ("Lx", 1),
        ("", 0),
        ("pi 2", 3),
    ],
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(DSLSyntaxError) as exc:
        parse(text, 4)
    assert exc.value.position == pos


def test_type_errors_name_the_factors():
    with pytest.raises(DSLTypeError) as exc:
        parse("G . L", 4)
    assert exc.value.position == 2
    assert "Theta" in str(exc.value)
    with pytest.raises(DSLTypeError):
        parse("L + pi(1,A)", 4)
    with pytest.raises(DSLTypeError):
        parse("tG^2", 4)
    with pytest.raises(DSLTypeError):
        parse("piT(7)", 4)


def test_round_trip_examples():
    for text in ["G . tG", "pi(3,A) - 2/3 L . Lam", "piT(3)", "p", "tG . mul(-2) . pi(5,A) . G"]:
        e = parse(text, 4)
        assert parse(format(e), 4) == e


def test_signature_types_zero():
    s = Gens(3)
    z = s.zero(s.Theta, s.A, 1)
    assert format(z) == "0"
    assert parse("0", 3, z.signature()) == z
    assert parse("0 G", 3) == z
    assert parse("G - G", 3, z.signature()) == z
    with pytest.raises(DSLTypeError):
        parse("L", 3, z.signature())


def test_blowup_and_nesting_are_rejected_quickly():
    t0 = time.perf_counter()
    with pytest.raises(DSLSyntaxError):
        parse("(p + piP)^40", 5)
    with pytest.raises(DSLSyntaxError):
        parse("L^100000", 4)
    with pytest.raises(DSLSyntaxError):
        parse("(" * 500 + "L" + ")" * 500, 4)
    assert time.perf_counter() - t0 < 5


_ALPHABET = ["dA", "dT", "L", "Lam", "G", "tG", "p", "piP", "pi(", "piT(", "mul(", ",A)", ")", "(",
             "+", "-", ".", "^", "/", "0", "1", "2", "3", "7", "-1", " ", ",", "A", "x"]


def test_fuzz_no_unexpected_exceptions():
    rng = random.Random(20261015)
    ok = bad = 0
    for _ in range(100_000):
        text = "".join(rng.choice(_ALPHABET) for _ in range(rng.randint(0, 12)))
        try:
            parse(text, rng.randint(2, 6))
            ok += 1
        except DSLError:
            bad += 1
    assert ok + bad == 100_000
    assert ok > 100
