from pathlib import Path

import pytest

from ddminloc.core import ElementMap, Outcome, TestCase, Trace

TestCase.__test__ = False  # a domain type, not a pytest class

CORPUS_DIR = Path(__file__).parent.parent / "src" / "ddminloc" / "subjects"
COUNT_AE_DIR = CORPUS_DIR / "count_ae"

# The classic seven labeled inputs: applying input minimization to
# "accurate" on the count-the-letters subject yields exactly these sets.
T_F_INPUTS = ["accurate", "rate", "te", "e"]
T_P_INPUTS = ["accu", "ra", "t"]


def count_ae_buggy_output(s: str) -> bytes:
    return f"{sum(1 for c in s if c in 'ad')}\n".encode()


def count_ae_golden_output(s: str) -> bytes:
    return f"{sum(1 for c in s if c in 'ae')}\n".encode()


def count_ae_trace(s: str) -> Trace:
    """Hand-simulated coverage of the buggy count_ae subject, written
    independently of the MiniLang interpreter.

    Lines: 1 word=input, 2 count=0, 3 for, 5 if, 7 increment, 10 print.
    Sites: 0 = loop continuation on line 3, 1 = the if test on line 5.
    """
    lines = {1, 2, 3, 10}
    preds = {(0, False)}  # the loop always exhausts
    if s:
        lines.add(5)
        preds.add((0, True))
    if any(c in "ad" for c in s):
        lines.add(7)
        preds.add((1, True))
    if any(c not in "ad" for c in s):
        preds.add((1, False))
    return Trace(frozenset(lines), frozenset(preds))


def count_ae_oracle(s: str):
    """Differential outcome plus the buggy trace, no subprocesses involved."""
    buggy, golden = count_ae_buggy_output(s), count_ae_golden_output(s)
    outcome = Outcome.FAIL if buggy != golden else Outcome.PASS
    return outcome, count_ae_trace(s), buggy


def seven_cases() -> list[TestCase]:
    cases = [
        TestCase(s, Outcome.FAIL, count_ae_trace(s), count_ae_buggy_output(s))
        for s in T_F_INPUTS
    ]
    cases += [
        TestCase(s, Outcome.PASS, count_ae_trace(s), count_ae_buggy_output(s))
        for s in T_P_INPUTS
    ]
    return cases


@pytest.fixture
def count_ae_map() -> ElementMap:
    import json

    with open(COUNT_AE_DIR / "map.json", encoding="utf-8") as fh:
        return ElementMap.from_json_dict(json.load(fh))


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not getattr(acceptance, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in acceptance.RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}")
