"""Statement, predicate, and hybrid line rankings computed from a spectrum.

The hybrid score of a line is  alpha * max(predicate scores on that line)
+ (1 - alpha) * statement score,  with the max over an empty predicate set
defined as 0. alpha=0 therefore reproduces the statement ranking exactly and
alpha=1 the predicate ranking.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .core import ElementMap, Predicate, Spectrum, Statement
from .sbfl import Formula, score


class Mode(enum.Enum):
    STATEMENT = "statement"
    PREDICATE = "predicate"
    HYBRID = "hybrid"

    @classmethod
    def parse(cls, name: str) -> "Mode":
        try:
            return cls(name.lower())
        except ValueError:
            valid = "|".join(m.value for m in cls)
            raise ValueError(f"unknown mode {name!r} (expected {valid})") from None


DEFAULT_ALPHA = 0.5


@dataclass(frozen=True)
class Ranking:
    """Executable lines sorted by score descending; equal scores form one tie
    group. Within a group the presentation order is ascending line number, but
    no metric depends on it."""

    entries: tuple[tuple[int, float], ...]

    @property
    def universe_size(self) -> int:
        return len(self.entries)

    def score_of(self, line: int) -> float:
        for entry_line, entry_score in self.entries:
            if entry_line == line:
                return entry_score
        raise KeyError(f"line {line} is not in the ranking universe")


def statement_scores(
    spectrum: Spectrum, emap: ElementMap, formula: Formula, *, paper_dstar: bool = False
) -> dict[int, float]:
    """Each executable line scored from its own statement counters."""
    out = {}
    for line in emap.executable_lines:
        failed, passed = spectrum.counters(Statement(line))
        out[line] = score(
            formula,
            failed,
            passed,
            spectrum.totalfailed,
            spectrum.totalpassed,
            paper_dstar=paper_dstar,
        )
    return out


def predicate_scores_mapped(
    spectrum: Spectrum, emap: ElementMap, formula: Formula, *, paper_dstar: bool = False
) -> dict[int, float]:
    """Predicate scores mapped back to lines: the max over every (site,
    polarity) element hosted on the line; 0 for lines without predicates."""
    out = {line: 0.0 for line in emap.executable_lines}
    for site in emap.predicate_sites:
        for polarity in (True, False):
            failed, passed = spectrum.counters(Predicate(site.site, polarity))
            s = score(
                formula,
                failed,
                passed,
                spectrum.totalfailed,
                spectrum.totalpassed,
                paper_dstar=paper_dstar,
            )
            if s > out[site.line]:
                out[site.line] = s
    return out


def hybrid_scores(
    spectrum: Spectrum,
    emap: ElementMap,
    formula: Formula,
    alpha: float = DEFAULT_ALPHA,
    *,
    paper_dstar: bool = False,
) -> dict[int, float]:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    stmt = statement_scores(spectrum, emap, formula, paper_dstar=paper_dstar)
    pred = predicate_scores_mapped(spectrum, emap, formula, paper_dstar=paper_dstar)
    out = {}
    for line in emap.executable_lines:
        # Guard the degenerate alphas so 0 * inf never produces a NaN and the
        # endpoints reproduce the pure modes bit-for-bit.
        pred_term = alpha * pred[line] if alpha > 0 else 0.0
        stmt_term = (1.0 - alpha) * stmt[line] if alpha < 1 else 0.0
        out[line] = pred_term + stmt_term
    return out


def scores_for_mode(
    spectrum: Spectrum,
    emap: ElementMap,
    formula: Formula,
    mode: Mode,
    alpha: float = DEFAULT_ALPHA,
    *,
    paper_dstar: bool = False,
) -> dict[int, float]:
    if mode is Mode.STATEMENT:
        return statement_scores(spectrum, emap, formula, paper_dstar=paper_dstar)
    if mode is Mode.PREDICATE:
        return predicate_scores_mapped(spectrum, emap, formula, paper_dstar=paper_dstar)
    return hybrid_scores(spectrum, emap, formula, alpha, paper_dstar=paper_dstar)


def rank(scores: Mapping[int, float], emap: ElementMap) -> Ranking:
    """Stable descending ranking over exactly the executable lines."""
    missing = set(emap.executable_lines) - set(scores)
    if missing:
        raise ValueError(f"scores missing for executable lines {sorted(missing)}")
    entries = sorted(
        ((line, scores[line]) for line in emap.executable_lines),
        key=lambda e: (-e[1], e[0]),
    )
    return Ranking(entries=tuple(entries))
