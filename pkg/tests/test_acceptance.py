"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Random inputs come from fixed seeds; expected values come from the
enumeration-based reference evaluator, never from the compiler itself.
"""

import random
import time

import pytest

from gen import lift, random_epil, random_sentence, random_signature, random_weighted_sentence
from parint import automata as fa
from parint.compiler import Compiler, decide_equiv, decide_sat, decide_valid, decide_wequiv
from parint.formula import Concat, Or, WAnd, WConst, WOr
from parint.interaction import ComponentSignature, all_traces
from parint.parser import parse
from parint.semantics import Evaluator
from parint.semiring import BOOL, MAX_PLUS, NAT, RAT
from parint.templates import TEMPLATES, template, template_names, witness_traces
from parint.wfa import find_weight_difference


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    return emit


def test_criterion_1_translation(report):
    rng = random.Random(1001)
    start = time.perf_counter()
    sentences = traces = mismatches = 0
    for _ in range(500):
        sig, r = random_signature(rng)
        f = random_sentence(rng, sig, r)
        c = Compiler(sig, r)
        a, ev = c.compile(f), Evaluator(r)
        for w in all_traces(c.alphabet, 3):
            traces += 1
            if a.accepts(w) != ev.sat(f, {}, w):
                mismatches += 1
        sentences += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 300
    report(1, ok, f"{sentences} sentences, {traces} traces, {mismatches} mismatches, "
                  f"{elapsed:.1f}s (limit 300s)")
    assert mismatches == 0
    assert elapsed < 300


def test_criterion_2_weighted_translation(report):
    rng = random.Random(2002)
    semirings = (NAT, RAT, BOOL, MAX_PLUS)
    checks = mismatches = 0
    for _ in range(200):
        sig, r = random_signature(rng)
        f = random_weighted_sentence(rng, sig, r)
        c = Compiler(sig, r)
        for k in semirings:
            a, ev = c.compile_weighted(f, k), Evaluator(r, k)
            for w, value in a.behaviors(3):
                checks += 1
                if not k.equals(value, ev.weight(f, {}, w)):
                    mismatches += 1
    report(2, mismatches == 0,
           f"200 sentences x {len(semirings)} semirings, {checks} exact comparisons, "
           f"{mismatches} mismatches")
    assert mismatches == 0


def test_criterion_3_concatenation_laws(report):
    rng = random.Random(3003)
    failures = 0
    for _ in range(100):
        sig, r = random_signature(rng, max_alphabet=8)
        f, f1, f2, f3 = (random_epil(rng, sig, r, depth=2) for _ in range(4))
        laws = [
            (Concat(f1, Concat(f2, f3)), Concat(Concat(f1, f2), f3)),
            (Concat(f, Or(f1, f2)), Or(Concat(f, f1), Concat(f, f2))),
            (Concat(Or(f1, f2), f), Or(Concat(f1, f), Concat(f2, f))),
        ]
        failures += sum(not decide_equiv(lhs, rhs, sig, r) for lhs, rhs in laws)
    report(3, failures == 0, f"100 triples x 3 laws, {failures} failures")
    assert failures == 0


def test_criterion_4_decisions(report):
    start = time.perf_counter()
    ms = TEMPLATES["master_slave"]
    ms_sig = ms.signature()
    t = ComponentSignature.build({"T": ["a", "b"]})
    verdicts = [
        decide_sat(template("master_slave"), ms_sig, (1, 2)) is True,
        decide_sat(parse("a & !a", t), t, (1,)) is False,
        decide_valid(parse("true", t), t, (1,)) is True,
        decide_equiv(parse("a ; b", t), parse("b ; a", t), t, (1,)) is False,
    ]
    elapsed = time.perf_counter() - start
    ok = all(verdicts) and elapsed < 10
    report(4, ok, f"{sum(verdicts)}/4 verdicts correct in {elapsed:.2f}s (limit 10s)")
    assert all(verdicts)
    assert elapsed < 10


def test_criterion_5_boolean_collapse(report):
    rng = random.Random(5005)
    mismatches = checks = 0
    for _ in range(100):
        sig, r = random_signature(rng)
        f = random_sentence(rng, sig, r)
        wf = lift(f, lambda _leaf: "1")
        c = Compiler(sig, r)
        acceptor = c.compile(f)
        for w, value in c.compile_weighted(wf, BOOL).behaviors(3):
            checks += 1
            if value != acceptor.accepts(w):
                mismatches += 1
    report(5, mismatches == 0, f"100 sentences, {checks} traces, {mismatches} mismatches")
    assert mismatches == 0


def test_criterion_6_field_equivalence(report):
    rng = random.Random(6006)
    literals = ("0", "1", "2", "3", "1/2", "-1")
    errors = doubled_ok = nonzero = 0
    two = WConst(("2",))
    for _ in range(50):
        sig, r = random_signature(rng)
        psi = random_weighted_sentence(rng, sig, r, literals=literals)
        scaled = WAnd(two, psi)
        if decide_wequiv(WOr(psi, psi), scaled, sig, r):
            doubled_ok += 1
        else:
            errors += 1
        c = Compiler(sig, r)
        ev = Evaluator(r, RAT)
        witness = next((w for w in all_traces(c.alphabet, 3)
                        if ev.weight(psi, {}, w) != 0), None)
        same = decide_wequiv(psi, scaled, sig, r)
        if witness is not None:
            nonzero += 1
            errors += same
        elif not same:
            # the difference must come from a longer trace with nonzero weight
            a, b = c.compile_weighted(psi, RAT), c.compile_weighted(scaled, RAT)
            word = [c.alphabet[x] for x in find_weight_difference(a, b)]
            errors += ev.weight(psi, {}, word) == 0
    report(6, errors == 0, f"{doubled_ok}/50 sum-vs-double equivalences, {nonzero} sentences "
                           f"with a nonzero witness, {errors} errors")
    assert errors == 0


def test_criterion_7_gallery(report):
    correct = total = 0
    for name in template_names():
        t = TEMPLATES[name]
        sig = t.signature()
        r = t.counts(sig)
        f = template(name)
        a, ev = Compiler(sig, r).compile(f), Evaluator(r)
        good, bad = witness_traces(name, sig, r)
        total += 2
        correct += a.accepts(good) and ev.sat(f, {}, good)
        correct += not a.accepts(bad) and not ev.sat(f, {}, bad)
    report(7, correct == total == 14, f"{correct}/{total} verdicts correct")
    assert correct == total == 14


def test_criterion_8_complexity_shape(report):
    sig = ComponentSignature.build({"T": ["p"]})
    subset = parse("EC x:T . p(x)", sig)
    plain = parse("AC x:T . p(x)", sig)
    rows, ok = [], True
    for r in range(1, 7):
        c = Compiler(sig, (r,))
        a = c.compile(subset)
        b = Compiler(sig, (r,)).compile(plain)
        branches = c.stats.total_subset_branches
        ok &= branches == 2 ** r - 1
        ok &= a.n_states >= 2 ** r - 1
        ok &= b.n_states <= (r + 1) ** 2
        ok &= not fa.is_empty(a) and not fa.is_empty(b)
        rows.append(f"r={r}: {branches} branches, {a.n_states} vs {b.n_states} states")
    report(8, ok, "; ".join(rows))
    assert ok
