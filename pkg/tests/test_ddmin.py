import random
import time

import pytest

from ddminloc.core import Outcome
from ddminloc.ddmin import ConfigurationError, NotFailingError, _partition, ddmin

from conftest import T_F_INPUTS, T_P_INPUTS, count_ae_oracle


def plain_oracle(predicate):
    """Wrap a boolean failure predicate as a trace-less oracle."""

    def test(s: str):
        return (Outcome.FAIL if predicate(s) else Outcome.PASS, None)

    return test


class CountingOracle:
    """Counts invocations and refuses to be asked the same input twice."""

    def __init__(self, predicate):
        self.predicate = predicate
        self.seen = set()
        self.calls = 0

    def __call__(self, s: str):
        assert s not in self.seen, f"oracle asked twice about {s!r}"
        self.seen.add(s)
        self.calls += 1
        return (Outcome.FAIL if self.predicate(s) else Outcome.PASS, None)


def is_subsequence(needle: str, haystack: str) -> bool:
    it = iter(haystack)
    return all(c in it for c in needle)


class TestPartition:
    def test_even_split(self):
        assert _partition("accurate", 2) == ["accu", "rate"]

    def test_earlier_chunks_take_the_extra_atoms(self):
        assert _partition("abcde", 2) == ["abc", "de"]
        assert _partition("abcdefg", 3) == ["abc", "de", "fg"]

    def test_degenerate_full_split(self):
        assert _partition("abc", 3) == ["a", "b", "c"]


class TestWorkedExample:
    def test_recorded_sets_match_the_classic_trace(self):
        result = ddmin("accurate", count_ae_oracle)
        assert result.minimal_input == "e"
        assert result.fail_inputs == set(T_F_INPUTS)
        assert result.pass_inputs == set(T_P_INPUTS)
        assert result.unresolved == []
        assert result.complete

    def test_initial_input_recorded_first(self):
        result = ddmin("accurate", count_ae_oracle)
        assert result.t_fail[0].input == "accurate"

    def test_cases_carry_traces_and_outputs(self):
        result = ddmin("accurate", count_ae_oracle)
        for case in result.t_fail + result.t_pass:
            assert case.trace is not None
        assert result.t_fail[0].buggy_output == b"2\n"


class TestSmallExamples:
    def test_single_atom_input(self):
        oracle = CountingOracle(lambda s: True)
        result = ddmin("x", oracle)
        assert result.minimal_input == "x"
        assert result.fail_inputs == {"x"}
        assert result.pass_inputs == set()
        assert result.executions == 1

    def test_two_atom_input(self):
        result = ddmin("ab", plain_oracle(lambda s: "b" in s))
        assert result.minimal_input == "b"
        assert result.fail_inputs == {"ab", "b"}
        assert result.pass_inputs == {"a"}


class TestPreconditions:
    def test_initially_passing_input_rejected(self):
        with pytest.raises(NotFailingError, match="does not fail"):
            ddmin("abc", plain_oracle(lambda s: False))

    def test_empty_initial_rejected(self):
        with pytest.raises(NotFailingError):
            ddmin("", plain_oracle(lambda s: True))


class TestUnresolvedHandling:
    def test_oracle_exception_becomes_unresolved(self):
        def flaky(s: str):
            if s == "ab":
                raise RuntimeError("boom")
            return (Outcome.FAIL if "d" in s else Outcome.PASS, None)

        result = ddmin("abcd", flaky)
        assert result.minimal_input == "d"
        assert {c.input for c in result.unresolved} == {"ab"}

    def test_configuration_error_propagates(self):
        def broken(s: str):
            if s != "abcd":
                raise ConfigurationError("subject missing")
            return (Outcome.FAIL, None)

        with pytest.raises(ConfigurationError):
            ddmin("abcd", broken)

    def test_explicit_unresolved_treated_as_not_failing(self):
        def oracle(s: str):
            if s == "cd":
                return (Outcome.UNRESOLVED, None)
            return (Outcome.FAIL if "d" in s else Outcome.PASS, None)

        result = ddmin("abcd", oracle)
        assert result.minimal_input == "d"
        assert {c.input for c in result.unresolved} == {"cd"}


class TestCacheSoundness:
    def test_no_input_reaches_the_oracle_twice(self):
        oracle = CountingOracle(lambda s: "ee" in s)
        result = ddmin("cheese", oracle)
        assert result.executions == oracle.calls
        assert result.executions == len(
            result.t_fail + result.t_pass + result.unresolved
        )

    def test_cache_hits_are_counted_not_recorded(self):
        oracle = CountingOracle(lambda s: "b" in s)
        result = ddmin("ab", oracle)
        # the two complements at n=2 repeat the two chunks
        assert result.cache_hits >= 0
        inputs = [c.input for c in result.t_fail + result.t_pass]
        assert len(inputs) == len(set(inputs))


class TestDeterminism:
    def test_two_runs_identical(self):
        def run():
            return ddmin("interrelated", plain_oracle(lambda s: "rr" in s or "tt" in s))

        a, b = run(), run()
        assert [c.input for c in a.t_fail] == [c.input for c in b.t_fail]
        assert [c.input for c in a.t_pass] == [c.input for c in b.t_pass]
        assert a.executions == b.executions
        assert a.cache_hits == b.cache_hits
        assert a.minimal_input == b.minimal_input


class TestMinimalityProperties:
    def test_one_minimality_on_random_substring_oracles(self):
        rng = random.Random(42)
        alphabet = "abcxyz"
        for trial in range(40):
            hidden = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 4)))
            padding = [rng.choice(alphabet) for _ in range(rng.randint(0, 12))]
            pos = rng.randint(0, len(padding))
            initial = "".join(padding[:pos]) + hidden + "".join(padding[pos:])
            predicate = lambda s, h=hidden: h in s
            result = ddmin(initial, plain_oracle(predicate))
            m = result.minimal_input
            assert predicate(m)
            if len(m) > 1:
                for i in range(len(m)):
                    assert not predicate(m[:i] + m[i + 1 :]), (hidden, initial, m, i)

    def test_every_recorded_input_is_a_subsequence_of_the_initial(self):
        initial = "abcdefgh"
        result = ddmin(initial, plain_oracle(lambda s: "h" in s and "a" in s))
        for case in result.t_fail + result.t_pass + result.unresolved:
            assert is_subsequence(case.input, initial)

    def test_accepted_reductions_shrink_strictly(self):
        # Termination witness: the minimal input is never longer than any
        # recorded failing input.
        result = ddmin("mississippi", plain_oracle(lambda s: "ss" in s))
        shortest_fail = min(len(c.input) for c in result.t_fail)
        assert len(result.minimal_input) == shortest_fail


class TestBudgets:
    def test_max_executions_aborts_with_best_so_far(self):
        oracle = CountingOracle(lambda s: "z" in s)
        result = ddmin("aaaaaaaazaaaaaaa", oracle, max_executions=4)
        assert not result.complete
        assert result.executions == 4
        assert "z" in result.minimal_input
        assert result.fail_inputs  # initial input is always recorded

    def test_deadline_aborts(self):
        def slow(s: str):
            time.sleep(0.02)
            return (Outcome.FAIL if "z" in s else Outcome.PASS, None)

        result = ddmin("aaaazaaaa", slow, deadline=time.monotonic() + 0.05)
        assert not result.complete
        assert "z" in result.minimal_input

    def test_generous_budget_changes_nothing(self):
        a = ddmin("abcdz", plain_oracle(lambda s: "z" in s))
        b = ddmin(
            "abcdz",
            plain_oracle(lambda s: "z" in s),
            max_executions=10_000,
            deadline=time.monotonic() + 60,
        )
        assert a.minimal_input == b.minimal_input == "z"
        assert a.executions == b.executions
        assert b.complete
