"""Localization effectiveness metrics: exam score and inspect@n.

A faulty line tied with k-1 other lines after h strictly better ones sits at
expected position h + (k+1)/2 (the mid-point of its tie group). With several
fault lines, finding any one of them counts, so the best position wins.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet

from .locfusion import Ranking

INSPECT_NS = (1, 3, 5, 10)


class EvaluationError(ValueError):
    """Ground truth inconsistent with the ranking universe."""


@dataclass(frozen=True)
class LocalizationResult:
    exam: float
    expected_rank: float
    inspect_at: dict[int, bool]
    faulty_line_used: int


def position_of(ranking: Ranking, line: int) -> float:
    """Tie-adjusted expected position of ``line`` in the ranking."""
    target = ranking.score_of(line)
    strictly_better = sum(1 for _, s in ranking.entries if s > target)
    tie_size = sum(1 for _, s in ranking.entries if s == target)
    return strictly_better + (tie_size + 1) / 2


def evaluate(ranking: Ranking, fault_lines: AbstractSet[int]) -> LocalizationResult:
    if not fault_lines:
        raise EvaluationError("no fault lines given")
    universe = {line for line, _ in ranking.entries}
    stray = set(fault_lines) - universe
    if stray:
        raise EvaluationError(
            f"fault lines {sorted(stray)} are outside the ranking universe "
            "(bad element map?)"
        )
    best_line = min(fault_lines, key=lambda f: (position_of(ranking, f), f))
    position = position_of(ranking, best_line)
    return LocalizationResult(
        exam=position / ranking.universe_size,
        expected_rank=position,
        inspect_at={n: position <= n for n in INSPECT_NS},
        faulty_line_used=best_line,
    )
