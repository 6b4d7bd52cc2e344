"""The five suspiciousness formulas, applied uniformly to statements and predicates.

Scores are plain floats; ``math.inf`` is the first-class sentinel for
elements covered by every failing test and no passing test under DStar.
"""
from __future__ import annotations

import enum
import math


class Formula(enum.Enum):
    TARANTULA = "tarantula"
    OCHIAI = "ochiai"
    GENPROG = "genprog"
    JACCARD = "jaccard"
    DSTAR = "dstar"

    @classmethod
    def parse(cls, name: str) -> "Formula":
        try:
            return cls(name.lower())
        except ValueError:
            valid = "|".join(f.value for f in cls)
            raise ValueError(f"unknown formula {name!r} (expected {valid})") from None


DEFAULT_DSTAR_EXPONENT = 2


def score(
    formula: Formula,
    failed: int,
    passed: int,
    totalfailed: int,
    totalpassed: int,
    *,
    dstar_exponent: int = DEFAULT_DSTAR_EXPONENT,
    paper_dstar: bool = False,
) -> float:
    """Suspiciousness of one element from its coverage counters.

    ``paper_dstar`` switches DStar's denominator to passed - (totalfailed -
    failed), for comparison only: that variant can go negative and is not
    used by any ranking mode by default.
    """
    if not (0 <= failed <= totalfailed):
        raise ValueError(f"failed={failed} out of range [0, {totalfailed}]")
    if not (0 <= passed <= totalpassed):
        raise ValueError(f"passed={passed} out of range [0, {totalpassed}]")
    if totalfailed < 1:
        raise ValueError("totalfailed must be at least 1")
    if dstar_exponent < 1:
        raise ValueError("dstar exponent must be at least 1")

    if formula is Formula.TARANTULA:
        if failed == 0:
            return 0.0
        fail_ratio = failed / totalfailed
        pass_ratio = passed / totalpassed if totalpassed > 0 else 0.0
        return fail_ratio / (fail_ratio + pass_ratio)

    if formula is Formula.OCHIAI:
        if failed == 0:
            return 0.0
        return failed / math.sqrt(totalfailed * (failed + passed))

    if formula is Formula.GENPROG:
        if failed == 0:
            return 0.0
        if passed == 0:
            return 1.0
        return 0.1

    if formula is Formula.JACCARD:
        # execute + (totalfailed - failed) collapses to totalfailed + passed,
        # which is >= 1, so this branch is always finite.
        return failed / (totalfailed + passed)

    if formula is Formula.DSTAR:
        if failed == 0:
            return 0.0
        if paper_dstar:
            denominator = passed - (totalfailed - failed)
        else:
            denominator = passed + (totalfailed - failed)
        if denominator == 0:
            return math.inf
        return failed**dstar_exponent / denominator

    raise AssertionError(f"unhandled formula: {formula}")
