"""The explicit correspondences built from the generators.

Every function returns the defining formula unnormalized, so that the
normalizer has something to prove.
"""

from __future__ import annotations

from .algebra import Expression, Gens, IndexRangeError, check_g, linear_combine


def _check_theta_index(j: int, g: int) -> None:
    if not 0 <= j <= 2 * (g - 1):
        raise IndexRangeError(f"theta index j={j} outside 0..{2 * (g - 1)} for g={g}")


def theta_projector(j: int, g: int) -> Expression:
    """Degree-j Chow-Kunneth projector of the theta divisor.

    Below the middle it is pulled back from ``pi(j,A)`` through a hard
    Lefschetz inverse, above the middle it is pushed through ``pi(j+2,A)``,
    and the middle one is whatever remains of the diagonal.
    """
    check_g(g)
    _check_theta_index(j, g)
    s = Gens(g)
    if j < g - 1:
        return s.tG @ s.pi(j) @ s.Lam ** (g - j) @ s.L ** (g - j - 1) @ s.G
    if j > g - 1:
        return s.tG @ s.L ** (j - g + 1) @ s.Lam ** (j - g + 2) @ s.pi(j + 2) @ s.G
    others = [theta_projector(k, g) for k in range(2 * g - 1) if k != g - 1]
    return linear_combine([1] + [-1] * len(others), [s.dT] + others)


def complementary_projectors(g: int) -> tuple[Expression, Expression]:
    """Return ``(piP, p)``: the part of the middle projector coming from A, and the rest."""
    check_g(g)
    s = Gens(g)
    pi_prime = s.tG @ s.pi(g - 1) @ s.Lam @ s.G
    return pi_prime, theta_projector(g - 1, g) - pi_prime


def lefschetz_morphism(j: int, g: int, direction: str = "pullback") -> Expression:
    """``pullback``: pi(j,Theta) . tG . pi(j,A); ``pushforward``: pi(j+2,A) . G . pi(j,Theta)."""
    check_g(g)
    _check_theta_index(j, g)
    s = Gens(g)
    if direction == "pullback":
        return theta_projector(j, g) @ s.tG @ s.pi(j)
    if direction == "pushforward":
        return s.pi(j + 2) @ s.G @ theta_projector(j, g)
    raise ValueError(f"direction must be 'pullback' or 'pushforward', got {direction!r}")


def inverse_candidate(j: int, g: int):
    """Explicit inverse of the Lefschetz morphism in degree j.

    Below the middle this inverts the pullback, above it inverts the
    pushforward. For ``j == g-1`` the pair ``(phi, psi)`` of one-sided
    inverses is returned: ``phi`` is a left inverse of the pullback and
    ``psi`` a right inverse of the pushforward.
    """
    check_g(g)
    _check_theta_index(j, g)
    s = Gens(g)
    pj = theta_projector(j, g)
    if j < g - 1:
        return s.pi(j) @ s.Lam ** (g - j) @ s.L ** (g - j - 1) @ s.G @ pj
    if j > g - 1:
        return pj @ s.tG @ s.L ** (j - g + 1) @ s.Lam ** (j - g + 2) @ s.pi(j + 2)
    phi = s.pi(g - 1) @ s.Lam @ s.G @ pj
    psi = pj @ s.tG @ s.Lam @ s.pi(g + 1)
    return phi, psi
