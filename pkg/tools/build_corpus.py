#!/usr/bin/env python3
"""Regenerate the bundled MiniLang subject corpus from corpus_sources.py.

Writes buggy.ml/golden.ml/manifest.json/map.json/failing_inputs.txt per
subject, derives fault lines from the buggy/golden diff where possible, and
verifies that every listed failing input really makes the two versions
disagree.
"""
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from corpus_sources import SUBJECTS  # noqa: E402

from ddminloc import minilang  # noqa: E402

CORPUS_DIR = Path(__file__).parent.parent / "src" / "ddminloc" / "subjects"

MANIFEST = {
    "schema": 1,
    "buggy_cmd": ["$PYTHON", "-m", "ddminloc", "minilang", "run", "buggy.ml"],
    "golden_cmd": ["$PYTHON", "-m", "ddminloc", "minilang", "run", "golden.ml"],
    "input_mode": "stdin",
    "element_map_path": "map.json",
    "per_run_timeout_secs": 5,
    "workdir": ".",
}


def diff_fault_lines(buggy_src: str, golden_src: str) -> list[int]:
    buggy_lines = buggy_src.splitlines()
    golden_lines = golden_src.splitlines()
    if len(buggy_lines) != len(golden_lines):
        raise SystemExit("line counts differ; state fault_lines explicitly")
    return [
        i
        for i, (b, g) in enumerate(zip(buggy_lines, golden_lines), start=1)
        if b != g
    ]


def main() -> None:
    for name, buggy_src, golden_src, failing_inputs, fault_lines in SUBJECTS:
        subject_dir = CORPUS_DIR / name
        subject_dir.mkdir(parents=True, exist_ok=True)

        buggy = minilang.parse(buggy_src)
        golden = minilang.parse(golden_src)
        emap = minilang.element_map(buggy)
        if fault_lines is None:
            fault_lines = diff_fault_lines(buggy_src, golden_src)
        assert fault_lines, f"{name}: empty fault line set"
        stray = set(fault_lines) - set(emap.executable_lines)
        assert not stray, f"{name}: fault lines {sorted(stray)} not executable"

        for failing_input in failing_inputs:
            b_out, _ = minilang.run(buggy, failing_input)
            g_out, _ = minilang.run(golden, failing_input)
            assert b_out != g_out, (
                f"{name}: input {failing_input!r} does not fail "
                f"(both print {b_out!r})"
            )

        (subject_dir / "buggy.ml").write_text(buggy_src, encoding="utf-8")
        (subject_dir / "golden.ml").write_text(golden_src, encoding="utf-8")
        (subject_dir / "manifest.json").write_text(
            json.dumps(MANIFEST, indent=2) + "\n", encoding="utf-8"
        )
        map_dict = emap.to_json_dict()
        map_dict["fault_lines"] = sorted(fault_lines)
        (subject_dir / "map.json").write_text(
            json.dumps(map_dict, indent=2) + "\n", encoding="utf-8"
        )
        (subject_dir / "failing_inputs.txt").write_text(
            "".join(line + "\n" for line in failing_inputs), encoding="utf-8"
        )
        print(f"{name}: fault_lines={sorted(fault_lines)}, "
              f"{len(emap.executable_lines)} lines, "
              f"{len(emap.predicate_sites)} sites")


if __name__ == "__main__":
    main()
