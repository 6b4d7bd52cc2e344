"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines as they complete.
"""
import functools
import itertools
import json
import math
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from ddminloc import minilang
from ddminloc.core import Outcome, build_spectrum
from ddminloc.ddmin import ddmin
from ddminloc.harness import bundled_corpus_dir, evaluate_benchmark
from ddminloc.locfusion import Mode, hybrid_scores, rank, scores_for_mode
from ddminloc.metrics import INSPECT_NS, evaluate
from ddminloc.sbfl import Formula, score

from conftest import COUNT_AE_DIR, T_F_INPUTS, T_P_INPUTS
from reference_sbfl import ref_score
from test_locfusion import random_setup

GOLDEN_PATH = Path(__file__).parent / "golden" / "corpus_jaccard_hybrid.json"

# (criterion name, passed) pairs; echoed in the terminal summary by conftest
RESULTS: list[tuple[str, bool]] = []


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                RESULTS.append((name, False))
                print(f"[FAIL] {name}", flush=True)
                raise
            RESULTS.append((name, True))
            print(f"[PASS] {name}", flush=True)

        return wrapper

    return decorate


@pytest.fixture(scope="module")
def corpus_eval_runs():
    """Two full sweeps of the bundled corpus, shared by the eval criteria."""
    kwargs = dict(
        formulas=list(Formula), modes=list(Mode), alpha=0.5, timeout_secs=900, jobs=8
    )
    t0 = time.monotonic()
    first = evaluate_benchmark(bundled_corpus_dir(), **kwargs)
    first_secs = time.monotonic() - t0
    second = evaluate_benchmark(bundled_corpus_dir(), **kwargs)
    return first, second, first_secs


@criterion("worked-example exactness (minimal input and recorded sets)")
def test_worked_example_exactness():
    buggy = minilang.parse((COUNT_AE_DIR / "buggy.ml").read_text())
    golden = minilang.parse((COUNT_AE_DIR / "golden.ml").read_text())

    def oracle(s: str):
        b_out, trace = minilang.run(buggy, s)
        g_out, _ = minilang.run(golden, s)
        return (Outcome.FAIL if b_out != g_out else Outcome.PASS, trace, b_out)

    t0 = time.monotonic()
    result = ddmin("accurate", oracle)
    elapsed = time.monotonic() - t0
    assert result.minimal_input == "e"
    assert result.fail_inputs == set(T_F_INPUTS)
    assert result.pass_inputs == set(T_P_INPUTS)
    assert elapsed < 1.0, f"took {elapsed:.3f}s"


def _is_subsequence(needle: str, haystack: str) -> bool:
    it = iter(haystack)
    return all(c in it for c in needle)


@criterion("1-minimality and cache soundness over 200 randomized oracles")
def test_one_minimality_over_randomized_oracles():
    rng = random.Random(20260809)
    alphabet = "abcdef"
    t0 = time.monotonic()
    for trial in range(200):
        hidden = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 5)))
        pad = [rng.choice(alphabet) for _ in range(rng.randint(0, 30 - len(hidden)))]
        if rng.random() < 0.5:
            pos = rng.randint(0, len(pad))
            initial = "".join(pad[:pos]) + hidden + "".join(pad[pos:])
            predicate = lambda s, h=hidden: h in s
        else:
            chars = list(hidden)
            for c in pad:
                chars.insert(rng.randint(0, len(chars)), c)
            initial = "".join(chars)
            predicate = lambda s, h=hidden: _is_subsequence(h, s)
        assert 1 <= len(initial) <= 30

        asked = set()

        def oracle(s: str, p=predicate, seen=asked):
            assert s not in seen, f"duplicate oracle invocation: {s!r}"
            seen.add(s)
            return (Outcome.FAIL if p(s) else Outcome.PASS, None)

        result = ddmin(initial, oracle)
        assert result.executions == len(asked)
        m = result.minimal_input
        assert predicate(m)
        if len(m) > 1:
            for i in range(len(m)):
                assert not predicate(m[:i] + m[i + 1 :]), (trial, hidden, initial, m)
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0, f"took {elapsed:.1f}s"


@criterion("formula oracle equivalence (1000 tuples per formula, 1e-12)")
def test_formula_oracle_equivalence():
    rng = random.Random(99)
    for formula in Formula:
        for _ in range(1000):
            totalfailed = rng.randint(1, 40)
            totalpassed = rng.randint(0, 40)
            failed = rng.randint(0, totalfailed)
            passed = rng.randint(0, totalpassed)
            mine = score(formula, failed, passed, totalfailed, totalpassed)
            ref = ref_score(formula.value, failed, passed, totalfailed, totalpassed)
            if math.isinf(ref):
                assert mine == ref
            else:
                assert abs(mine - ref) <= 1e-12

    # printed piecewise / zero / infinity edge cases, exact
    assert score(Formula.GENPROG, 0, 3, 5, 5) == 0.0
    assert score(Formula.GENPROG, 2, 0, 5, 5) == 1.0
    assert score(Formula.GENPROG, 2, 3, 5, 5) == 0.1
    for formula in Formula:
        assert score(formula, 0, 0, 5, 0) == 0.0
        assert score(formula, 0, 5, 5, 5) == 0.0
    assert score(Formula.TARANTULA, 3, 0, 4, 0) == 1.0
    assert score(Formula.DSTAR, 4, 0, 4, 9) == math.inf
    assert score(Formula.DSTAR, 2, 0, 2, 0) == math.inf
    assert score(Formula.JACCARD, 4, 0, 4, 0) == 1.0
    assert score(Formula.OCHIAI, 0, 0, 3, 3) == 0.0


@criterion("mode consistency (hybrid endpoints) on 100 random spectra")
def test_mode_consistency_on_random_spectra():
    rng = random.Random(4242)
    for _ in range(100):
        emap, cases = random_setup(rng)
        spectrum = build_spectrum(cases, emap)
        for formula in Formula:
            stmt = rank(
                scores_for_mode(spectrum, emap, formula, Mode.STATEMENT, 0.5), emap
            )
            pred = rank(
                scores_for_mode(spectrum, emap, formula, Mode.PREDICATE, 0.5), emap
            )
            assert rank(hybrid_scores(spectrum, emap, formula, 0.0), emap) == stmt
            assert rank(hybrid_scores(spectrum, emap, formula, 1.0), emap) == pred


@criterion("metrics equal exhaustive tie-permutation averaging (exact)")
def test_metrics_against_exhaustive_tie_permutations():
    rng = random.Random(1001)
    from ddminloc.core import ElementMap

    checked = 0
    while checked < 300:
        n = rng.randint(1, 12)
        scores = {line: rng.choice([0.0, 0.25, 0.5, 1.0]) for line in range(1, n + 1)}
        fault = rng.randint(1, n)
        group = [line for line, s in scores.items() if s == scores[fault]]
        if len(group) > 6:
            continue
        checked += 1
        ranking = rank(scores, ElementMap(executable_lines=tuple(scores)))
        result = evaluate(ranking, {fault})

        better = sum(1 for s in scores.values() if s > scores[fault])
        total = Fraction(0)
        count = 0
        for perm in itertools.permutations(group):
            total += better + perm.index(fault) + 1
            count += 1
        expected = total / count
        assert Fraction(result.expected_rank) == expected
        assert result.exam == float(expected / n)
        flags = [result.inspect_at[k] for k in INSPECT_NS]
        assert all(a <= b for a, b in zip(flags, flags[1:]))
        for k in INSPECT_NS:
            assert result.inspect_at[k] == (result.expected_rank <= k)


@criterion("corpus regression: golden values, median exam, inspect@3, < 2 min")
def test_corpus_regression(corpus_eval_runs):
    first, _, first_secs = corpus_eval_runs
    details = [
        r
        for r in first
        if r["status"] == "ok" and r["formula"] == "jaccard" and r["mode"] == "hybrid"
    ]
    golden = json.loads(GOLDEN_PATH.read_text())
    assert len(details) == len(golden) == 28

    by_key = {(g["subject"], g["failing_input_id"]): g for g in golden}
    for row in details:
        g = by_key[(row["subject"], row["failing_input_id"])]
        assert float(row["exam"]) == g["exam"], (row["subject"], row["failing_input_id"])
        assert float(row["expected_rank"]) == g["expected_rank"]
        assert row["n_fail"] == str(g["n_fail"])
        assert row["n_pass"] == str(g["n_pass"])
        assert row["executions"] == str(g["executions"])
        for n in INSPECT_NS:
            assert row[f"inspect{n}"] == ("true" if g["inspect"][str(n)] else "false")

    exams = sorted(float(r["exam"]) for r in details)
    mid = len(exams) // 2
    median = exams[mid] if len(exams) % 2 else (exams[mid - 1] + exams[mid]) / 2
    inspect3 = sum(1 for r in details if r["inspect3"] == "true") / len(details)
    assert median <= 0.25, f"median exam {median}"
    assert inspect3 >= 0.5, f"inspect@3 fraction {inspect3}"
    # The sweep producing these rows also ran every other formula and mode;
    # it must still fit the corpus-regression budget.
    assert first_secs < 120.0, f"sweep took {first_secs:.0f}s"


@criterion("end-to-end determinism of eval detail rows")
def test_eval_determinism(corpus_eval_runs):
    first, second, _ = corpus_eval_runs

    def stripped_details(rows):
        return [
            {k: v for k, v in row.items() if k != "wall_ms"}
            for row in rows
            if row["status"] != "aggregate"
        ]

    assert stripped_details(first) == stripped_details(second)
