"""Minimizing delta debugging over string inputs.

Beyond the reduced input itself, the search records every intermediate input
it executed, labeled Pass/Fail/Unresolved, so the caller can feed the whole
generated suite into a coverage spectrum.

Atoms are Unicode scalar values. A cache keyed by the input string guarantees
no string is handed to the oracle twice.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .core import Outcome, TestCase, Trace


class NotFailingError(ValueError):
    """The initial input does not fail, so there is nothing to minimize."""


class ConfigurationError(RuntimeError):
    """The oracle cannot run at all (bad subject setup); aborts the session."""


# An oracle labels one input. It may return (outcome, trace) or
# (outcome, trace, buggy_output_bytes).
OracleFn = Callable[[str], Sequence]


@dataclass
class DdminResult:
    minimal_input: str
    t_fail: list[TestCase] = field(default_factory=list)
    t_pass: list[TestCase] = field(default_factory=list)
    unresolved: list[TestCase] = field(default_factory=list)
    executions: int = 0
    cache_hits: int = 0
    # False when a budget/deadline aborted the search; the minimal_input is
    # then merely the smallest failing input seen, not necessarily 1-minimal.
    complete: bool = True

    @property
    def fail_inputs(self) -> set[str]:
        return {c.input for c in self.t_fail}

    @property
    def pass_inputs(self) -> set[str]:
        return {c.input for c in self.t_pass}

    def cases(self) -> list[TestCase]:
        """All recorded Pass/Fail/Unresolved cases, in execution order overall."""
        return self.t_fail + self.t_pass + self.unresolved


class _BudgetExhausted(Exception):
    pass


def _partition(s: str, n: int) -> list[str]:
    """Split into n contiguous chunks; earlier chunks get the extra atoms."""
    base, rem = divmod(len(s), n)
    chunks = []
    pos = 0
    for i in range(n):
        size = base + (1 if i < rem else 0)
        chunks.append(s[pos : pos + size])
        pos += size
    return chunks


def ddmin(
    initial: str,
    test: OracleFn,
    *,
    max_executions: Optional[int] = None,
    deadline: Optional[float] = None,
) -> DdminResult:
    """Reduce ``initial`` to a 1-minimal failing input.

    Follows the classic minimizing recurrence: at granularity n (starting at
    2) try each chunk, then each complement, in index order. A failing chunk
    becomes the new input with n reset to 2; a failing complement becomes the
    new input with n reduced by one (floor 2); otherwise the granularity
    doubles until it reaches the input length.

    ``deadline`` is a time.monotonic() timestamp. When the execution budget or
    deadline is hit mid-search, the best-so-far result is returned with
    ``complete=False``.
    """
    if initial == "":
        raise NotFailingError("initial input is empty")

    cache: dict[str, Outcome] = {}
    result = DdminResult(minimal_input=initial)

    def run(candidate: str) -> Outcome:
        if candidate in cache:
            result.cache_hits += 1
            return cache[candidate]
        # The initial input is exempt: the result always records it.
        if result.executions > 0:
            if max_executions is not None and result.executions >= max_executions:
                raise _BudgetExhausted
            if deadline is not None and time.monotonic() >= deadline:
                raise _BudgetExhausted
        try:
            r = test(candidate)
            outcome = r[0]
            trace: Optional[Trace] = r[1]
            output: bytes = r[2] if len(r) > 2 else b""
        except ConfigurationError:
            raise
        except Exception:
            outcome, trace, output = Outcome.UNRESOLVED, None, b""
        result.executions += 1
        cache[candidate] = outcome
        case = TestCase(input=candidate, outcome=outcome, trace=trace, buggy_output=output)
        if outcome is Outcome.FAIL:
            result.t_fail.append(case)
        elif outcome is Outcome.PASS:
            result.t_pass.append(case)
        else:
            result.unresolved.append(case)
        return outcome

    if run(initial) is not Outcome.FAIL:
        raise NotFailingError("initial input does not fail")

    current = initial
    n = 2
    try:
        while len(current) >= 2:
            n = min(n, len(current))
            chunks = _partition(current, n)
            reduced = False

            for chunk in chunks:
                if run(chunk) is Outcome.FAIL:
                    current, n = chunk, 2
                    reduced = True
                    break

            if not reduced:
                bounds = []
                pos = 0
                for chunk in chunks:
                    bounds.append((pos, pos + len(chunk)))
                    pos += len(chunk)
                for lo, hi in bounds:
                    complement = current[:lo] + current[hi:]
                    if run(complement) is Outcome.FAIL:
                        current, n = complement, max(n - 1, 2)
                        reduced = True
                        break

            if not reduced:
                if n >= len(current):
                    break
                n = min(len(current), 2 * n)
    except _BudgetExhausted:
        result.complete = False

    result.minimal_input = current
    return result
