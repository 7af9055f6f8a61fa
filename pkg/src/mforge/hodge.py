"""Numerical invariants of a smooth ample symmetric divisor on an abelian variety.

``g`` is the dimension of the abelian variety and ``d = h^0(O_A(Theta))`` the
polarization degree, so ``d = 1`` is the principal case. Smoothness is assumed,
never checked.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import comb, factorial

from .algebra import MforgeError

SMOOTHNESS_NOTE = "assumes smooth ample symmetric divisor"


class HodgeDomainError(MforgeError, ValueError):
    pass


def _check(g: int, d: int) -> None:
    if not isinstance(g, int) or g < 2:
        raise HodgeDomainError(f"g must be an integer >= 2, got {g!r}")
    if not isinstance(d, int) or d < 1:
        raise HodgeDomainError(f"d must be an integer >= 1, got {d!r}")


def euler_char_theta(g: int, d: int = 1) -> int:
    """Topological Euler characteristic of Theta.

    The tangent bundle of A is trivial, so ``c(T Theta) = (1 + theta)^-1``
    restricted to Theta and ``chi = int_A (-theta)^{g-1} . theta = (-1)^{g-1} g! d``.
    """
    _check(g, d)
    return (-1) ** (g - 1) * factorial(g) * d


def betti_theta(g: int, d: int = 1) -> list[int]:
    """Betti numbers h^0..h^{2g-2} of Theta.

    Off the middle degree they come from A by the Lefschetz hyperplane
    theorem; the middle one is solved from the Euler characteristic.
    """
    _check(g, d)
    mid = g - 1
    betti = [comb(2 * g, j) if j < mid else comb(2 * g, j + 2) for j in range(2 * g - 1)]
    rest = sum((-1) ** j * b for j, b in enumerate(betti) if j != mid)
    betti[mid] = (-1) ** mid * (euler_char_theta(g, d) - rest)
    return betti


def primitive_middle_dim(g: int, d: int = 1) -> int:
    """dim of the kernel of the Gysin map on H^{g-1}(Theta)."""
    k = betti_theta(g, d)[g - 1] - comb(2 * g, g - 1)
    if k < 0:
        raise HodgeDomainError(f"negative primitive dimension {k} for g={g}, d={d}")
    return k


def geometric_genus_theta(g: int, d: int = 1) -> int:
    # adjunction + 0 -> O_A -> O_A(Theta) -> O_Theta(Theta) -> 0, h^1(O_A) = g
    _check(g, d)
    return d - 1 + g


def hodge_level_bound(g: int, d: int = 1) -> int:
    """Upper bound for the Hodge level of the primitive part; -1 when it is zero."""
    _check(g, d)
    if primitive_middle_dim(g, d) == 0:
        return -1
    if geometric_genus_theta(g, d) == g:
        # h^{g-1,0}(Theta) = h^{g-1,0}(A): no (g-1,0) or (0,g-1) part survives
        return g - 3
    return g - 1


@dataclass(frozen=True)
class HodgeProfile:
    g: int
    d: int
    euler: int
    betti: list[int]
    k_dim: int
    geom_genus: int
    level_bound: int
    notes: list[str] = field(default_factory=lambda: [SMOOTHNESS_NOTE])

    def to_dict(self) -> dict:
        return asdict(self)


def hodge_profile(g: int, d: int = 1) -> HodgeProfile:
    return HodgeProfile(
        g=g,
        d=d,
        euler=euler_char_theta(g, d),
        betti=betti_theta(g, d),
        k_dim=primitive_middle_dim(g, d),
        geom_genus=geometric_genus_theta(g, d),
        level_bound=hodge_level_bound(g, d),
    )
