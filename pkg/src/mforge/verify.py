"""Statement inventory for both theorems and the driver that checks it."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import Expression, Gens, HomogeneityError, format_expr, linear_combine
from .named import complementary_projectors, inverse_candidate, lefschetz_morphism, theta_projector
from .realization import CohomologyModel, kunneth_check, realize, theta_model
from .report import FAILED, NOT_PROVED, PROVED, REALIZED_ONLY, StatementResult, VerificationReport
from .rewrite import RewriteSystem, equal, normalize, standard_rules

SYMBOLIC = "symbolic"
REALIZED = "realized"
BOTH = "both"


@dataclass(frozen=True)
class Statement:
    id: str
    lhs: Expression
    rhs: Expression
    mode: str = BOTH
    paper_ref: str = ""

    def __post_init__(self):
        if self.lhs.signature() != self.rhs.signature():
            raise HomogeneityError(f"statement {self.id}: sides have different endpoints or degree")
        if self.mode not in (SYMBOLIC, REALIZED, BOTH):
            raise ValueError(f"unknown mode {self.mode!r}")


def _check_suite_g(g: int) -> None:
    if not isinstance(g, int) or not 2 <= g <= 6:
        raise ValueError(f"suites are defined for g in 2..6, got {g!r}")


def chow_kunneth_suite(g: int) -> list[Statement]:
    """Idempotency, pairwise orthogonality and sum-to-diagonal for the theta projectors."""
    _check_suite_g(g)
    s = Gens(g)
    n = 2 * g - 1
    P = [theta_projector(j, g) for j in range(n)]
    zero = s.zero(s.Theta, s.Theta)
    out = []
    for j in range(n):
        out.append(Statement(f"thm1.idem.j={j}", P[j] @ P[j], P[j], BOTH, "Chow-Kunneth idempotency"))
    for j in range(n):
        for k in range(n):
            if j != k:
                out.append(
                    Statement(f"thm1.orth.j={j},k={k}", P[j] @ P[k], zero, BOTH, "Chow-Kunneth orthogonality")
                )
    out.append(Statement("thm1.sum", linear_combine([1] * n, P), s.dT, BOTH, "projectors sum to the diagonal"))
    assert len(out) == (2 * g - 1) + (2 * g - 1) * (2 * g - 2) + 1
    return out


def motivic_lefschetz_suite(g: int) -> list[Statement]:
    """Inverse identities for the Lefschetz morphisms and the primitive projector algebra."""
    _check_suite_g(g)
    s = Gens(g)
    mid = g - 1
    n = 2 * g - 1
    P = [theta_projector(j, g) for j in range(n)]
    zero_T = s.zero(s.Theta, s.Theta)
    out = []
    for j in range(mid):
        out.append(Statement(f"thm2.lt.j={j}", P[j] @ s.tG, s.tG @ s.pi(j), BOTH,
                             "projector commutes with pullback below the middle"))
    for j in range(mid + 1, n):
        out.append(Statement(f"thm2.gt.j={j}", s.G @ P[j], s.pi(j + 2) @ s.G, BOTH,
                             "projector commutes with pushforward above the middle"))
    off = linear_combine([1] * (n - 1), [P[j] for j in range(n) if j != mid])
    out.append(Statement("thm2.red", s.G @ off @ s.tG @ s.pi(mid), s.zero(s.A, s.A, 1), BOTH,
                         "off-middle projectors vanish between Gysin maps in the middle degree"))
    for j in range(mid):
        h = lefschetz_morphism(j, g, "pullback")
        phi = inverse_candidate(j, g)
        out.append(Statement(f"thm2.a.inv1.j={j}", phi @ h, s.pi(j), BOTH, "pullback has a left inverse"))
        out.append(Statement(f"thm2.a.inv2.j={j}", h @ phi, P[j], BOTH, "pullback has a right inverse"))
    for j in range(mid + 1, n):
        th = lefschetz_morphism(j, g, "pushforward")
        phi = inverse_candidate(j, g)
        out.append(Statement(f"thm2.b.inv1.j={j}", th @ phi, s.pi(j + 2), BOTH, "pushforward has a right inverse"))
        out.append(Statement(f"thm2.b.inv2.j={j}", phi @ th, P[j], BOTH, "pushforward has a left inverse"))
    phi, psi = inverse_candidate(mid, g)
    out.append(Statement("thm2.c.split-inj", phi @ lefschetz_morphism(mid, g, "pullback"), s.pi(mid), BOTH,
                         "middle pullback is split injective"))
    out.append(Statement("thm2.c.split-surj", lefschetz_morphism(mid, g, "pushforward") @ psi, s.pi(g + 1), BOTH,
                         "middle pushforward is split surjective"))

    pp, p = complementary_projectors(g)
    out.append(Statement("thm2.d.piP-idem", pp @ pp, pp, BOTH, "A-part of the middle projector is idempotent"))
    for j in range(n):
        if j == mid:
            continue
        out.append(Statement(f"thm2.d.piP-orth-left.j={j}", pp @ P[j], zero_T, BOTH, "A-part is orthogonal to other projectors"))
        out.append(Statement(f"thm2.d.piP-orth-right.j={j}", P[j] @ pp, zero_T, BOTH, "A-part is orthogonal to other projectors"))
    out.append(Statement("thm2.d.piP-absorb-left", pp @ P[mid], pp, BOTH, "A-part lies under the middle projector"))
    out.append(Statement("thm2.d.piP-absorb-right", P[mid] @ pp, pp, BOTH, "A-part lies under the middle projector"))
    out.append(Statement("thm2.d.p-idem", p @ p, p, BOTH, "primitive projector is idempotent"))
    out.append(Statement("thm2.d.p-orth-piP", p @ pp, zero_T, BOTH, "primitive projector is orthogonal to the A-part"))
    out.append(Statement("thm2.d.piP-orth-p", pp @ p, zero_T, BOTH, "primitive projector is orthogonal to the A-part"))
    for j in range(n):
        if j == mid:
            continue
        out.append(Statement(f"thm2.d.p-orth-left.j={j}", p @ P[j], zero_T, BOTH, "primitive projector is orthogonal to other projectors"))
        out.append(Statement(f"thm2.d.p-orth-right.j={j}", P[j] @ p, zero_T, BOTH, "primitive projector is orthogonal to other projectors"))
    out.append(Statement("thm2.d.last", P[mid], p + pp, BOTH, "middle motive splits as primitive plus A-part"))
    return out


def axiom_suite(R: RewriteSystem) -> list[Statement]:
    """One statement per rule instance, so an unsound rule shows up as Failed."""
    out = []
    for rule in R.rules:
        for name, lhs, rhs in rule.instances():
            left = Expression.word(lhs)
            right = Expression({w: c for c, w in rhs}, left.source, left.target, left.degree)
            out.append(Statement(f"axiom.{name}", left, right, BOTH, f"axiom {rule.group}"))
    return out


@dataclass(frozen=True)
class SuiteOptions:
    symbolic_only: bool = False
    k: int | str = "auto"
    depth: int | None = None
    rules: Callable[[int], RewriteSystem] | None = None
    axioms: bool = True
    kunneth: bool = True


def check_statement(st: Statement, R: RewriteSystem, model: CohomologyModel | None) -> StatementResult:
    t0 = time.perf_counter()
    lhs_nf, rhs_nf = normalize(st.lhs, R), normalize(st.rhs, R)
    sym = None
    if st.mode in (SYMBOLIC, BOTH):
        sym = PROVED if lhs_nf == rhs_nf else equal(st.lhs, st.rhs, R)
    real = None
    if model is not None and st.mode in (REALIZED, BOTH):
        real = realize(st.lhs, model) == realize(st.rhs, model)
    if real is False:
        status = FAILED
    elif sym == PROVED:
        status = PROVED
    elif real:
        status = REALIZED_ONLY if sym is not None else PROVED
    else:
        status = NOT_PROVED
    return StatementResult(
        id=st.id,
        status=status,
        paper_ref=st.paper_ref,
        lhs_normal=format_expr(lhs_nf),
        rhs_normal=format_expr(rhs_nf),
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def run_suite(g_list: Sequence[int], options: SuiteOptions | None = None) -> list[VerificationReport]:
    """One report per g, statements in a fixed order."""
    options = options or SuiteOptions()
    reports = []
    for g in g_list:
        _check_suite_g(g)
        if options.rules is not None:
            R = options.rules(g)
            if options.depth is not None:
                R = R.with_depth(options.depth)
        else:
            R = standard_rules(g, options.depth)
        model = None if options.symbolic_only else theta_model(g, options.k)
        statements = chow_kunneth_suite(g) + motivic_lefschetz_suite(g)
        if model is not None and options.axioms:
            statements += axiom_suite(R)
        report = VerificationReport(g)
        for st in statements:
            report.add(check_statement(st, R, model))
        if model is not None and options.kunneth:
            report.extend(kunneth_check(g, model=model))
        reports.append(report)
    return reports


def proof_corpus(g: int) -> list[tuple[str, Expression]]:
    """Every expression that appears as a side of a suite statement, plus the named morphisms."""
    out = []
    for st in chow_kunneth_suite(g) + motivic_lefschetz_suite(g):
        out.append((f"{st.id}:lhs", st.lhs))
        out.append((f"{st.id}:rhs", st.rhs))
    pp, p = complementary_projectors(g)
    out += [("piP", pp), ("p", p)]
    for j in range(2 * g - 1):
        out.append((f"piT({j})", theta_projector(j, g)))
        if j != g - 1:
            out.append((f"phi({j})", inverse_candidate(j, g)))
    return out
