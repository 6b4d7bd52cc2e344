#!/usr/bin/env python3
"""Cross-check the corpus sweep and freeze its golden values.

For every (subject, failing input) this script:
  1. runs the package's reducer through the real subprocess oracle,
  2. verifies the minimal input is 1-minimal by direct single-deletion calls,
  3. re-labels every recorded case by running buggy and golden in-process and
     comparing outputs (no trace files involved),
  4. recomputes the Jaccard hybrid ranking and the exam/expected-rank numbers
     from scratch with the independent reference formulas and an exhaustive
     tie-permutation average,
  5. compares all of that against the package pipeline's own report.

Only if every check agrees does it write tests/golden/corpus_jaccard_hybrid.json.
"""
import json
import sys
from fractions import Fraction
from itertools import permutations
from pathlib import Path

ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from reference_sbfl import ref_score  # noqa: E402

from ddminloc import minilang  # noqa: E402
from ddminloc.core import Outcome  # noqa: E402
from ddminloc.harness import bundled_corpus_dir, rank_cases, run_ddmin_session  # noqa: E402
from ddminloc.locfusion import Mode  # noqa: E402
from ddminloc.oracle import load_manifest  # noqa: E402
from ddminloc.sbfl import Formula  # noqa: E402

GOLDEN_PATH = ROOT / "tests" / "golden" / "corpus_jaccard_hybrid.json"
ALPHA = 0.5


def reference_exam(scores: dict[int, float], fault_lines: set[int]):
    """Expected rank via exhaustive permutation averaging of the tie group."""

    def avg_rank(fault: int) -> Fraction:
        target = scores[fault]
        better = sum(1 for s in scores.values() if s > target)
        group = [line for line, s in scores.items() if s == target]
        if len(group) > 6:
            # mid-point closed form; enumeration is for small groups
            return Fraction(better) + Fraction(len(group) + 1, 2)
        total = Fraction(0)
        for perm in permutations(group):
            total += better + perm.index(fault) + 1
        return total / Fraction(len(list(permutations(group))))

    best = min(Fraction(avg_rank(f)) for f in fault_lines)
    return best, best / len(scores)


def verify_subject(subject_dir: Path) -> list[dict]:
    manifest = load_manifest(subject_dir / "manifest.json")
    emap = manifest.load_element_map()
    buggy = minilang.parse((subject_dir / "buggy.ml").read_text())
    golden = minilang.parse((subject_dir / "golden.ml").read_text())
    inputs = [
        line
        for line in (subject_dir / "failing_inputs.txt").read_text().splitlines()
        if line
    ]

    def in_process_outcome(s: str) -> Outcome:
        b_out, _ = minilang.run(buggy, s)
        g_out, _ = minilang.run(golden, s)
        return Outcome.FAIL if b_out != g_out else Outcome.PASS

    records = []
    for idx, failing_input in enumerate(inputs):
        result = run_ddmin_session(manifest, emap, failing_input, timeout_secs=900)
        assert result.complete, f"{subject_dir.name}/{idx}: session did not finish"

        # 1-minimality by brute single-deletion checks
        m = result.minimal_input
        assert in_process_outcome(m) is Outcome.FAIL
        if len(m) > 1:
            for i in range(len(m)):
                reduced = m[:i] + m[i + 1 :]
                assert in_process_outcome(reduced) is not Outcome.FAIL, (
                    f"{subject_dir.name}/{idx}: {m!r} is not 1-minimal"
                )

        # independent relabeling of every recorded case
        for case in result.cases():
            if case.outcome is Outcome.UNRESOLVED:
                continue
            assert case.outcome is in_process_outcome(case.input), (
                f"{subject_dir.name}/{idx}: label mismatch on {case.input!r}"
            )

        # independent spectrum + scores + ranking from in-process traces
        fails, passes = [], []
        for case in result.cases():
            if case.outcome is Outcome.UNRESOLVED:
                continue
            _, trace = minilang.run(buggy, case.input)
            (fails if case.outcome is Outcome.FAIL else passes).append(trace)

        def stmt_score(line: int) -> float:
            f = sum(1 for t in fails if line in t.lines_hit)
            p = sum(1 for t in passes if line in t.lines_hit)
            return ref_score("jaccard", f, p, len(fails), len(passes))

        def pred_score(line: int) -> float:
            best = 0.0
            for site in emap.predicate_sites:
                if site.line != line:
                    continue
                for polarity in (True, False):
                    f = sum(1 for t in fails if (site.site, polarity) in t.predicate_hits)
                    p = sum(1 for t in passes if (site.site, polarity) in t.predicate_hits)
                    best = max(best, ref_score("jaccard", f, p, len(fails), len(passes)))
            return best

        scores = {
            line: ALPHA * pred_score(line) + (1 - ALPHA) * stmt_score(line)
            for line in emap.executable_lines
        }
        expected_rank, exam = reference_exam(scores, set(emap.fault_lines))

        ranking, metrics = rank_cases(result, emap, Formula.JACCARD, Mode.HYBRID, ALPHA)
        assert metrics is not None
        assert Fraction(metrics.expected_rank) == expected_rank, (
            f"{subject_dir.name}/{idx}: rank {metrics.expected_rank} != {expected_rank}"
        )
        assert abs(metrics.exam - float(exam)) < 1e-12

        records.append(
            {
                "subject": subject_dir.name,
                "failing_input_id": str(idx),
                "exam": metrics.exam,
                "expected_rank": metrics.expected_rank,
                "inspect": {str(n): v for n, v in metrics.inspect_at.items()},
                "minimal_input": result.minimal_input,
                "n_fail": len(result.t_fail),
                "n_pass": len(result.t_pass),
                "executions": result.executions,
            }
        )
        print(
            f"{subject_dir.name}/{idx}: exam={metrics.exam:.4f} "
            f"rank={metrics.expected_rank} minimal={result.minimal_input!r} OK"
        )
    return records


def main() -> None:
    records = []
    for subject_dir in sorted(bundled_corpus_dir().iterdir()):
        if (subject_dir / "manifest.json").is_file():
            records.extend(verify_subject(subject_dir))

    exams = sorted(r["exam"] for r in records)
    mid = len(exams) // 2
    median = exams[mid] if len(exams) % 2 else (exams[mid - 1] + exams[mid]) / 2
    inspect3 = sum(1 for r in records if r["inspect"]["3"]) / len(records)
    print(f"\n{len(records)} sessions, median exam {median:.4f}, inspect@3 {inspect3:.2%}")
    assert median <= 0.25, "median regression threshold violated"
    assert inspect3 >= 0.5, "inspect@3 regression threshold violated"

    GOLDEN_PATH.parent.mkdir(parents=True, exist_ok=True)
    GOLDEN_PATH.write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")
    print(f"golden values written to {GOLDEN_PATH}")


if __name__ == "__main__":
    main()
