"""CLI orchestration: single localization sessions, benchmark sweeps, reports.

``ddmin-loc localize`` runs the full pipeline on one failing input and emits
a JSON report. ``ddmin-loc eval`` sweeps a corpus of subjects and emits CSV
rows plus per-subject aggregates. ``ddmin-loc minilang run`` is the subject-
protocol executor for bundled MiniLang programs.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import logging
import math
import os
import sys
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

from .core import ElementMap, build_spectrum
from .ddmin import ConfigurationError, DdminResult, NotFailingError, ddmin
from .locfusion import DEFAULT_ALPHA, Mode, Ranking, rank, scores_for_mode
from .metrics import INSPECT_NS, LocalizationResult, evaluate
from .oracle import SubjectManifest, load_manifest, make_oracle
from .sbfl import Formula
from .subject_cli import add_minilang_parser

logger = logging.getLogger("ddminloc")

DEFAULT_SESSION_TIMEOUT_SECS = 900.0

CSV_COLUMNS = [
    "subject",
    "failing_input_id",
    "formula",
    "mode",
    "alpha",
    "exam",
    "expected_rank",
    "inspect1",
    "inspect3",
    "inspect5",
    "inspect10",
    "n_pass",
    "n_fail",
    "executions",
    "status",
    "wall_ms",
]


def bundled_corpus_dir() -> Path:
    """The MiniLang subject corpus shipped with the package."""
    return Path(__file__).parent / "subjects"


@dataclass(frozen=True)
class SessionConfig:
    manifest_path: Path
    failing_input: str
    formula: Formula = Formula.JACCARD
    mode: Mode = Mode.HYBRID
    alpha: float = DEFAULT_ALPHA
    timeout_secs: float = DEFAULT_SESSION_TIMEOUT_SECS
    max_executions: Optional[int] = None
    output_path: Optional[Path] = None
    paper_dstar: bool = False

    def __post_init__(self) -> None:
        if self.timeout_secs <= 0:
            raise ValueError("session timeout must be positive")
        if self.mode is Mode.HYBRID and not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")


@dataclass(frozen=True)
class Report:
    status: str  # "ok" | "timeout"
    formula: str
    mode: str
    alpha: Optional[float]
    manifest_path: str
    initial_input: str
    minimal_input: str
    n_fail: int
    n_pass: int
    n_unresolved: int
    executions: int
    cache_hits: int
    universe_size: int
    ranking: tuple[tuple[int, float], ...]  # (line, score), best first
    metrics: Optional[LocalizationResult]
    started_at: str
    finished_at: str

    def to_json_dict(self) -> dict:
        def enc(score: float):
            return "inf" if math.isinf(score) else score

        d = {
            "schema": 1,
            "status": self.status,
            "formula": self.formula,
            "mode": self.mode,
            "alpha": self.alpha,
            "manifest_path": self.manifest_path,
            "initial_input": self.initial_input,
            "minimal_input": self.minimal_input,
            "n_fail": self.n_fail,
            "n_pass": self.n_pass,
            "n_unresolved": self.n_unresolved,
            "executions": self.executions,
            "cache_hits": self.cache_hits,
            "universe_size": self.universe_size,
            "ranking": [
                {"position": i + 1, "line": line, "score": enc(score)}
                for i, (line, score) in enumerate(self.ranking)
            ],
            "metrics": None,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }
        if self.metrics is not None:
            d["metrics"] = {
                "exam": self.metrics.exam,
                "expected_rank": self.metrics.expected_rank,
                "inspect_at": {str(n): v for n, v in self.metrics.inspect_at.items()},
                "faulty_line_used": self.metrics.faulty_line_used,
            }
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "Report":
        def dec(score) -> float:
            return math.inf if score == "inf" else float(score)

        metrics = None
        if d.get("metrics") is not None:
            m = d["metrics"]
            metrics = LocalizationResult(
                exam=m["exam"],
                expected_rank=m["expected_rank"],
                inspect_at={int(n): v for n, v in m["inspect_at"].items()},
                faulty_line_used=m["faulty_line_used"],
            )
        return cls(
            status=d["status"],
            formula=d["formula"],
            mode=d["mode"],
            alpha=d["alpha"],
            manifest_path=d["manifest_path"],
            initial_input=d["initial_input"],
            minimal_input=d["minimal_input"],
            n_fail=d["n_fail"],
            n_pass=d["n_pass"],
            n_unresolved=d["n_unresolved"],
            executions=d["executions"],
            cache_hits=d["cache_hits"],
            universe_size=d["universe_size"],
            ranking=tuple((e["line"], dec(e["score"])) for e in d["ranking"]),
            metrics=metrics,
            started_at=d["started_at"],
            finished_at=d["finished_at"],
        )


def run_ddmin_session(
    manifest: SubjectManifest,
    emap: ElementMap,
    failing_input: str,
    timeout_secs: float,
    max_executions: Optional[int] = None,
) -> DdminResult:
    oracle = make_oracle(manifest, emap)
    deadline = time.monotonic() + timeout_secs
    return ddmin(failing_input, oracle, deadline=deadline, max_executions=max_executions)


def rank_cases(
    result: DdminResult,
    emap: ElementMap,
    formula: Formula,
    mode: Mode,
    alpha: float,
    paper_dstar: bool = False,
) -> tuple[Ranking, Optional[LocalizationResult]]:
    spectrum = build_spectrum(result.cases(), emap)
    assert spectrum.totalfailed >= 1, "initial failing input must be in the spectrum"
    ranking = rank(
        scores_for_mode(spectrum, emap, formula, mode, alpha, paper_dstar=paper_dstar),
        emap,
    )
    metrics = evaluate(ranking, emap.fault_lines) if emap.fault_lines else None
    return ranking, metrics


def localize(config: SessionConfig) -> Report:
    """Full pipeline on one failing input: ddmin, spectrum, scores, ranking."""
    started = datetime.now(timezone.utc).isoformat()
    manifest = load_manifest(config.manifest_path)
    emap = manifest.load_element_map()
    result = run_ddmin_session(
        manifest, emap, config.failing_input, config.timeout_secs, config.max_executions
    )
    ranking, metrics = rank_cases(
        result, emap, config.formula, config.mode, config.alpha, config.paper_dstar
    )
    return Report(
        status="ok" if result.complete else "timeout",
        formula=config.formula.value,
        mode=config.mode.value,
        alpha=config.alpha if config.mode is Mode.HYBRID else None,
        manifest_path=str(config.manifest_path),
        initial_input=config.failing_input,
        minimal_input=result.minimal_input,
        n_fail=len(result.t_fail),
        n_pass=len(result.t_pass),
        n_unresolved=len(result.unresolved),
        executions=result.executions,
        cache_hits=result.cache_hits,
        universe_size=ranking.universe_size,
        ranking=ranking.entries,
        metrics=metrics,
        started_at=started,
        finished_at=datetime.now(timezone.utc).isoformat(),
    )


# --- Benchmark sweep ---------------------------------------------------


@dataclass
class _Session:
    subject: str
    input_id: str
    failing_input: str
    manifest: SubjectManifest
    emap: ElementMap
    result: Optional[DdminResult] = None
    error: Optional[str] = None
    wall_ms: int = 0


def discover_subjects(bench_dir: Path) -> list[tuple[str, Path]]:
    subjects = []
    for entry in sorted(bench_dir.iterdir()):
        if entry.is_dir() and (entry / "manifest.json").is_file():
            subjects.append((entry.name, entry / "manifest.json"))
    return subjects


def _read_failing_inputs(subject_dir: Path) -> list[str]:
    path = subject_dir / "failing_inputs.txt"
    if not path.is_file():
        return []
    lines = path.read_text(encoding="utf-8").splitlines()
    return [line for line in lines if line != ""]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def evaluate_benchmark(
    bench_dir: Path,
    formulas: Sequence[Formula],
    modes: Sequence[Mode],
    alpha: float = DEFAULT_ALPHA,
    timeout_secs: float = DEFAULT_SESSION_TIMEOUT_SECS,
    jobs: int = 1,
) -> list[dict[str, str]]:
    """One detail row per (subject, failing input, formula, mode), then one
    aggregate row per (subject, formula, mode).

    The ddmin phase of each (subject, input) session runs once and is shared
    by every formula/mode combination; sessions may run concurrently, rows
    are sorted before emission.
    """
    sessions: list[_Session] = []
    for subject, manifest_path in discover_subjects(bench_dir):
        inputs = _read_failing_inputs(manifest_path.parent)
        if not inputs:
            logger.warning("subject %s has no failing inputs; skipped", subject)
            continue
        manifest = load_manifest(manifest_path)
        emap = manifest.load_element_map()
        if not emap.fault_lines:
            logger.warning("subject %s has no fault_lines in its map; skipped", subject)
            continue
        for idx, failing_input in enumerate(inputs):
            sessions.append(_Session(subject, str(idx), failing_input, manifest, emap))

    def run_one(session: _Session) -> None:
        t0 = time.monotonic()
        try:
            session.result = run_ddmin_session(
                session.manifest, session.emap, session.failing_input, timeout_secs
            )
        except (NotFailingError, ConfigurationError) as exc:
            session.error = str(exc)
            logger.warning(
                "subject %s input %s: %s", session.subject, session.input_id, exc
            )
        session.wall_ms = int((time.monotonic() - t0) * 1000)

    if jobs > 1 and len(sessions) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(run_one, sessions))
    else:
        for session in sessions:
            run_one(session)

    detail_rows: list[dict[str, str]] = []
    by_combo: dict[tuple[str, str, str], list[Optional[LocalizationResult]]] = {}
    for session in sessions:
        for formula in formulas:
            for mode in modes:
                row = {c: "" for c in CSV_COLUMNS}
                row["subject"] = session.subject
                row["failing_input_id"] = session.input_id
                row["formula"] = formula.value
                row["mode"] = mode.value
                row["alpha"] = _fmt(alpha) if mode is Mode.HYBRID else ""
                row["wall_ms"] = str(session.wall_ms)
                metrics: Optional[LocalizationResult] = None
                if session.error is not None:
                    row["status"] = "error"
                else:
                    result = session.result
                    assert result is not None
                    row["n_pass"] = str(len(result.t_pass))
                    row["n_fail"] = str(len(result.t_fail))
                    row["executions"] = str(result.executions)
                    if not result.complete:
                        row["status"] = "timeout"
                    else:
                        row["status"] = "ok"
                        _, metrics = rank_cases(result, session.emap, formula, mode, alpha)
                        assert metrics is not None
                        row["exam"] = _fmt(metrics.exam)
                        row["expected_rank"] = _fmt(metrics.expected_rank)
                        for n in INSPECT_NS:
                            row[f"inspect{n}"] = _fmt(metrics.inspect_at[n])
                detail_rows.append(row)
                by_combo.setdefault(
                    (session.subject, formula.value, mode.value), []
                ).append(metrics)

    formula_order = {f.value: i for i, f in enumerate(Formula)}
    mode_order = {m.value: i for i, m in enumerate(Mode)}

    def sort_key(row: dict[str, str]):
        return (
            row["subject"],
            int(row["failing_input_id"]),
            formula_order[row["formula"]],
            mode_order[row["mode"]],
        )

    detail_rows.sort(key=sort_key)

    aggregate_rows: list[dict[str, str]] = []
    for (subject, formula_name, mode_name), metric_list in sorted(
        by_combo.items(),
        key=lambda kv: (kv[0][0], formula_order[kv[0][1]], mode_order[kv[0][2]]),
    ):
        scored = [m for m in metric_list if m is not None]
        row = {c: "" for c in CSV_COLUMNS}
        row["subject"] = subject
        row["failing_input_id"] = "aggregate"
        row["formula"] = formula_name
        row["mode"] = mode_name
        row["alpha"] = _fmt(alpha) if mode_name == Mode.HYBRID.value else ""
        row["status"] = "aggregate"
        if scored:
            row["exam"] = _fmt(sum(m.exam for m in scored) / len(scored))
            for n in INSPECT_NS:
                frac = sum(1 for m in scored if m.inspect_at[n]) / len(scored)
                row[f"inspect{n}"] = _fmt(frac)
        aggregate_rows.append(row)

    return detail_rows + aggregate_rows


def write_csv(rows: list[dict[str, str]], out) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


# --- CLI ---------------------------------------------------------------


def _parse_formulas(text: str) -> list[Formula]:
    if text == "all":
        return list(Formula)
    return [Formula.parse(part) for part in text.split(",") if part]


def _parse_modes(text: str) -> list[Mode]:
    if text == "all":
        return list(Mode)
    return [Mode.parse(part) for part in text.split(",") if part]


def _cmd_localize(args: argparse.Namespace) -> int:
    if args.input is not None:
        failing_input = args.input
    else:
        failing_input = Path(args.input_file).read_text(encoding="utf-8")
        if failing_input.endswith("\n"):
            failing_input = failing_input[:-1]
    mode = Mode.parse(args.mode)
    if args.alpha is not None and mode is not Mode.HYBRID:
        logger.warning("--alpha is only meaningful with --mode hybrid; ignored")
    config = SessionConfig(
        manifest_path=Path(args.manifest),
        failing_input=failing_input,
        formula=Formula.parse(args.formula),
        mode=mode,
        alpha=args.alpha if (args.alpha is not None and mode is Mode.HYBRID) else DEFAULT_ALPHA,
        timeout_secs=args.timeout_secs,
        max_executions=args.max_executions,
        output_path=Path(args.out) if args.out else None,
        paper_dstar=args.paper_dstar,
    )
    try:
        report = localize(config)
    except (NotFailingError, ConfigurationError) as exc:
        logger.error("%s", exc)
        return 2
    text = json.dumps(report.to_json_dict(), indent=2)
    if config.output_path is not None:
        config.output_path.write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    if report.status != "ok":
        logger.warning("session ended with status=%s", report.status)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    bench_dir = Path(args.bench) if args.bench else bundled_corpus_dir()
    rows = evaluate_benchmark(
        bench_dir,
        formulas=_parse_formulas(args.formulas),
        modes=_parse_modes(args.modes),
        alpha=args.alpha,
        timeout_secs=args.timeout_secs,
        jobs=args.jobs,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddmin-loc",
        description="Localize a fault from a single failing string input.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_loc = sub.add_parser("localize", help="run one localization session")
    p_loc.add_argument("--manifest", required=True, help="subject manifest JSON")
    group = p_loc.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", help="failing input given inline")
    group.add_argument("--input-file", help="file holding the failing input")
    p_loc.add_argument("--formula", default="jaccard")
    p_loc.add_argument("--mode", default="hybrid")
    p_loc.add_argument("--alpha", type=float, default=None)
    p_loc.add_argument("--timeout-secs", type=float, default=DEFAULT_SESSION_TIMEOUT_SECS)
    p_loc.add_argument("--max-executions", type=int, default=None)
    p_loc.add_argument(
        "--paper-dstar",
        action="store_true",
        help="use the as-printed DStar denominator (comparison only)",
    )
    p_loc.add_argument("--out", help="report JSON path (stdout when omitted)")
    p_loc.set_defaults(func=_cmd_localize)

    p_eval = sub.add_parser("eval", help="sweep a benchmark corpus")
    p_eval.add_argument("--bench", help="corpus directory (bundled corpus when omitted)")
    p_eval.add_argument("--formulas", default="all")
    p_eval.add_argument("--modes", default="all")
    p_eval.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p_eval.add_argument("--timeout-secs", type=float, default=DEFAULT_SESSION_TIMEOUT_SECS)
    p_eval.add_argument("--jobs", type=int, default=min(8, os.cpu_count() or 1))
    p_eval.add_argument("--out", help="CSV path (stdout when omitted)")
    p_eval.set_defaults(func=_cmd_eval)

    add_minilang_parser(sub)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
