"""Acceptance criteria, one test each. The conftest summary prints a PASS/FAIL line per criterion."""

import json
import random
import time
from math import comb

import pytest

from helpers import random_expression
from mforge.cli import main
from mforge.dsl import format, parse
from mforge.hodge import hodge_profile
from mforge.named import complementary_projectors, theta_projector
from mforge.realization import GradedMap, realize, soundness_check, theta_model
from mforge.report import FAILED, PROVED
from mforge.rewrite import normalize, standard_rules
from mforge.verify import SuiteOptions, chow_kunneth_suite, motivic_lefschetz_suite, proof_corpus, run_suite

G_RANGE = [2, 3, 4, 5, 6]


def _report(n, ok, detail):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def _symbolic(suite_fn):
    t0 = time.perf_counter()
    reports = run_suite(G_RANGE, SuiteOptions(symbolic_only=True))
    dt = time.perf_counter() - t0
    ids = {g: {st.id for st in suite_fn(g)} for g in G_RANGE}
    bad, total = [], 0
    for rep in reports:
        for s in rep.statements:
            if s.id in ids[rep.g]:
                total += 1
                if s.status != PROVED:
                    bad.append((rep.g, s.id, s.status))
    return bad, total, dt


@pytest.mark.criterion(1, "projector idempotency, orthogonality and sum for g=2..6 symbolically Proved, exact, < 60 s")
def test_criterion_1_chow_kunneth():
    bad, total, dt = _symbolic(chow_kunneth_suite)
    assert total == sum((2 * g - 1) ** 2 + 1 for g in G_RANGE)
    _report(1, not bad and dt < 60, f"{total} statements, {len(bad)} not proved, {dt:.1f} s")


@pytest.mark.criterion(2, "Lefschetz inverse, split and primitive-projector identities for g=2..6 Proved, exact, < 60 s")
def test_criterion_2_motivic_lefschetz():
    bad, total, dt = _symbolic(motivic_lefschetz_suite)
    needed = {"thm2.red", "thm2.c.split-inj", "thm2.c.split-surj", "thm2.d.piP-idem", "thm2.d.p-idem",
              "thm2.d.p-orth-piP", "thm2.d.last"}
    assert needed <= {st.id for st in motivic_lefschetz_suite(4)}
    _report(2, not bad and dt < 60, f"{total} statements, {len(bad)} not proved, {dt:.1f} s")


@pytest.mark.criterion(3, "realized projectors are the degree projectors, sum to id, rank p = 0/1/10 for g=2/3/4, < 120 s")
def test_criterion_3_weil_kunneth():
    t0 = time.perf_counter()
    problems = []
    for g, k in [(2, 0), (3, 1), (4, 10)]:
        m = theta_model(g)
        T = m.space_theta
        total = GradedMap(T, T, 0)
        for j in range(2 * g - 1):
            r = realize(theta_projector(j, g), m)
            if r != GradedMap.projector(T, j):
                problems.append(f"g={g} j={j}")
            total = total + r
        if total != GradedMap.identity(T):
            problems.append(f"g={g} sum")
        rp = realize(complementary_projectors(g)[1], m)
        if rp @ rp != rp or rp.rank() != k:
            problems.append(f"g={g} rank p = {rp.rank()}")
    dt = time.perf_counter() - t0
    _report(3, not problems and dt < 120, f"{problems or 'all exact'}, {dt:.1f} s")


@pytest.mark.criterion(4, "every standard rule is an exact matrix identity for g=2,3,4, < 120 s")
def test_criterion_4_axiom_soundness():
    t0 = time.perf_counter()
    checked, failed = 0, []
    for g in (2, 3, 4):
        rep = soundness_check(standard_rules(g), theta_model(g))
        checked += len(rep.statements)
        failed += [(g, s.id) for s in rep.statements if s.status != PROVED]
        ids = {s.id for s in rep.statements}
        assert "axiom.R1" in ids
        assert all(f"axiom.sandwich.low.j={j}" in ids for j in range(g + 1))
    dt = time.perf_counter() - t0
    _report(4, not failed and dt < 120, f"{checked} rule instances, {len(failed)} failed, {dt:.1f} s")


@pytest.mark.criterion(5, "g=4, d=1: chi -24, h3(Theta) 66, h3(A) 56, dim K 10, h30 4, level bound 1")
def test_criterion_5_hodge_numbers():
    p = hodge_profile(4, 1)
    got = (p.euler, p.betti[3], comb(8, 3), p.k_dim, p.geom_genus, p.level_bound)
    _report(5, got == (-24, 66, 56, 10, 4, 1), f"got {got}")


@pytest.mark.criterion(6, "idempotence, homogeneity, round trip on 1000 random expressions per g; corpus soundness, < 120 s")
def test_criterion_6_properties():
    t0 = time.perf_counter()
    rng = random.Random(6)
    n_checked = 0
    for g in G_RANGE:
        R = standard_rules(g, saturation_depth=0)
        for _ in range(1000):
            e = random_expression(rng, g)
            nf = normalize(e, R)
            assert nf.signature() == e.signature()
            assert normalize(nf, R) == nf
            assert parse(format(e), g, e.signature()) == e
            n_checked += 1
    corpus = 0
    for g in (2, 3, 4):
        m = theta_model(g)
        R = standard_rules(g)
        for label, e in proof_corpus(g):
            assert realize(e, m) == realize(normalize(e, R), m), (g, label)
            corpus += 1
    dt = time.perf_counter() - t0
    _report(6, dt < 120, f"{n_checked} random expressions, {corpus} corpus expressions, {dt:.1f} s")


@pytest.mark.criterion(7, "an injected unsound rule yields Failed and CLI exit code 1")
def test_criterion_7_negative_path(capsys):
    code = main(["verify", "--g", "4", "--corrupt-rule", "--format", "json"])
    out = capsys.readouterr().out
    doc = json.loads(out)
    failed = [s["id"] for s in doc["statements"] if s["status"] == FAILED]
    clean = main(["verify", "--g", "4", "--format", "json"])
    capsys.readouterr()
    _report(7, code == 1 and failed and clean == 0, f"exit {code}, failed {failed}, clean run exit {clean}")
