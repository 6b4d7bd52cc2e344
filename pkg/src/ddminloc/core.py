"""Shared domain types: test cases, coverage traces, element identities, spectra.

Everything here is an immutable value; ``build_spectrum`` is a pure function.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union


class SpectrumError(ValueError):
    """A test-case list cannot be turned into a spectrum."""


class TraceValidationError(ValueError):
    """A trace references elements unknown to the element map."""


class Outcome(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Statement:
    """A rankable source line."""

    line: int

    def __post_init__(self) -> None:
        if self.line < 1:
            raise ValueError(f"statement line must be positive, got {self.line}")


@dataclass(frozen=True)
class Predicate:
    """One polarity of a conditional test site."""

    site: int
    polarity: bool

    def __post_init__(self) -> None:
        if self.site < 0:
            raise ValueError(f"predicate site must be non-negative, got {self.site}")


ElementId = Union[Statement, Predicate]


@dataclass(frozen=True)
class PredicateSite:
    site: int
    line: int
    expr: str


@dataclass(frozen=True)
class ElementMap:
    """The universe of rankable elements for one subject.

    ``executable_lines`` is kept sorted; ``fault_lines`` is evaluation-only
    ground truth and may be absent.
    """

    executable_lines: tuple[int, ...]
    predicate_sites: tuple[PredicateSite, ...] = ()
    fault_lines: Optional[frozenset[int]] = None

    def __post_init__(self) -> None:
        lines = tuple(sorted(set(self.executable_lines)))
        object.__setattr__(self, "executable_lines", lines)
        line_set = set(lines)
        sites = [s.site for s in self.predicate_sites]
        if sites != list(range(len(sites))):
            raise ValueError(f"predicate site ids must be dense from 0, got {sites}")
        for s in self.predicate_sites:
            if s.line not in line_set:
                raise ValueError(
                    f"predicate site {s.site} sits on line {s.line}, "
                    "which is not an executable line"
                )
        if self.fault_lines is not None:
            object.__setattr__(self, "fault_lines", frozenset(self.fault_lines))
            stray = set(self.fault_lines) - line_set
            if stray:
                raise ValueError(f"fault lines {sorted(stray)} are not executable lines")

    def elements(self) -> list[ElementId]:
        """Every rankable element: one Statement per line, two Predicates per site."""
        out: list[ElementId] = [Statement(line) for line in self.executable_lines]
        for s in self.predicate_sites:
            out.append(Predicate(s.site, True))
            out.append(Predicate(s.site, False))
        return out

    def site_line(self, site: int) -> int:
        return self.predicate_sites[site].line

    def sites_on_line(self, line: int) -> list[PredicateSite]:
        return [s for s in self.predicate_sites if s.line == line]

    def to_json_dict(self) -> dict:
        d: dict = {
            "schema": 1,
            "executable_lines": list(self.executable_lines),
            "predicates": [
                {"site": s.site, "line": s.line, "expr": s.expr}
                for s in self.predicate_sites
            ],
        }
        if self.fault_lines is not None:
            d["fault_lines"] = sorted(self.fault_lines)
        return d

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "ElementMap":
        if d.get("schema") != 1:
            raise ValueError(f"unsupported element map schema: {d.get('schema')!r}")
        sites = tuple(
            PredicateSite(site=p["site"], line=p["line"], expr=p.get("expr", ""))
            for p in d.get("predicates", ())
        )
        fault = d.get("fault_lines")
        return cls(
            executable_lines=tuple(d["executable_lines"]),
            predicate_sites=sites,
            fault_lines=frozenset(fault) if fault is not None else None,
        )


@dataclass(frozen=True)
class Trace:
    """Coverage record of one execution of the buggy program."""

    lines_hit: frozenset[int]
    predicate_hits: frozenset[tuple[int, bool]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lines_hit", frozenset(self.lines_hit))
        object.__setattr__(self, "predicate_hits", frozenset(self.predicate_hits))

    def validate(self, emap: ElementMap) -> None:
        """Raise TraceValidationError naming the first offending element."""
        known_lines = set(emap.executable_lines)
        for line in sorted(self.lines_hit):
            if line not in known_lines:
                raise TraceValidationError(f"trace hits unknown line {line}")
        n_sites = len(emap.predicate_sites)
        for site, polarity in sorted(self.predicate_hits):
            if not 0 <= site < n_sites:
                raise TraceValidationError(f"trace hits unknown predicate site {site}")
            if emap.site_line(site) not in self.lines_hit:
                raise TraceValidationError(
                    f"trace hits predicate site {site} (polarity {polarity}) "
                    f"without hitting its line {emap.site_line(site)}"
                )

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "lines": sorted(self.lines_hit),
            "predicates": [
                {"site": s, "outcome": o} for s, o in sorted(self.predicate_hits)
            ],
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "Trace":
        if d.get("schema") != 1:
            raise ValueError(f"unsupported trace schema: {d.get('schema')!r}")
        lines = frozenset(int(x) for x in d.get("lines", ()))
        # Duplicate entries are permitted on the wire and deduplicated here.
        preds = frozenset(
            (int(p["site"]), bool(p["outcome"])) for p in d.get("predicates", ())
        )
        return cls(lines_hit=lines, predicate_hits=preds)


@dataclass(frozen=True)
class TestCase:
    """An input string with its oracle label and the buggy run's coverage.

    Pass/Fail cases need a trace to enter a spectrum; Unresolved cases never
    contribute anywhere.
    """

    input: str
    outcome: Outcome
    trace: Optional[Trace] = None
    buggy_output: bytes = b""


@dataclass(frozen=True)
class Spectrum:
    """Per-element pass/fail coverage counters plus suite totals."""

    totalfailed: int
    totalpassed: int
    failed: Mapping[ElementId, int] = field(default_factory=dict)
    passed: Mapping[ElementId, int] = field(default_factory=dict)

    def counters(self, element: ElementId) -> tuple[int, int]:
        return self.failed[element], self.passed[element]


def build_spectrum(cases: Iterable[TestCase], emap: ElementMap) -> Spectrum:
    """Count, per element, how many distinct failing/passing cases cover it.

    Duplicate inputs contribute once (first occurrence wins); Unresolved cases
    are skipped entirely. Raises SpectrumError when no failing case remains,
    and TraceValidationError for traces inconsistent with ``emap``.
    """
    elements = emap.elements()
    failed = {e: 0 for e in elements}
    passed = {e: 0 for e in elements}
    totalfailed = 0
    totalpassed = 0
    seen: set[str] = set()
    for case in cases:
        if case.input in seen:
            continue
        seen.add(case.input)
        if case.outcome is Outcome.UNRESOLVED:
            continue
        if case.trace is None:
            raise SpectrumError(
                f"{case.outcome.value} case {case.input!r} has no trace"
            )
        case.trace.validate(emap)
        if case.outcome is Outcome.FAIL:
            totalfailed += 1
            bucket = failed
        else:
            totalpassed += 1
            bucket = passed
        for line in case.trace.lines_hit:
            bucket[Statement(line)] += 1
        for site, polarity in case.trace.predicate_hits:
            bucket[Predicate(site, polarity)] += 1
    if totalfailed == 0:
        raise SpectrumError("spectrum undefined: no failing test case")
    return Spectrum(
        totalfailed=totalfailed, totalpassed=totalpassed, failed=failed, passed=passed
    )
