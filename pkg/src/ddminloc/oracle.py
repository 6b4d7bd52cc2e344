"""Run subject programs on candidate inputs and label the outcomes.

The differential oracle runs the golden version, then the buggy version, on
the same input and labels the case failing iff their outputs differ (after
stripping one trailing newline from each side). The buggy run's coverage
trace arrives through a file whose path is handed to the subject in the
``DDMIN_LOC_TRACE`` environment variable.

Per-run faults (timeout, abnormal exit, missing or malformed trace) yield
Unresolved; a subject that cannot be launched at all raises
ConfigurationError and aborts the whole session.
"""
from __future__ import annotations

import json
import os
import subprocess
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

from .core import ElementMap, Outcome, Trace
from .ddmin import ConfigurationError

TRACE_ENV_VAR = "DDMIN_LOC_TRACE"


class InputMode:
    STDIN = "stdin"
    ARGV_LAST = "argv"


@dataclass(frozen=True)
class SubjectManifest:
    buggy_cmd: tuple[str, ...]
    golden_cmd: tuple[str, ...]
    input_mode: str
    element_map_path: Path
    workdir: Path
    per_run_timeout: float = 5.0

    def __post_init__(self) -> None:
        if not self.buggy_cmd or not self.golden_cmd:
            raise ValueError("buggy_cmd and golden_cmd must be non-empty")
        if self.input_mode not in (InputMode.STDIN, InputMode.ARGV_LAST):
            raise ValueError(f"input_mode must be 'stdin' or 'argv', got {self.input_mode!r}")
        if self.per_run_timeout <= 0:
            raise ValueError("per_run_timeout must be positive")

    def load_element_map(self) -> ElementMap:
        with open(self.element_map_path, encoding="utf-8") as fh:
            return ElementMap.from_json_dict(json.load(fh))


def _expand_cmd(cmd: list[str]) -> tuple[str, ...]:
    """$PYTHON in a manifest command expands to the running interpreter, so
    bundled subjects work regardless of how the package was installed."""
    import sys

    return tuple(sys.executable if part == "$PYTHON" else part for part in cmd)


def load_manifest(path: Path | str) -> SubjectManifest:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        d = json.load(fh)
    if d.get("schema", 1) != 1:
        raise ValueError(f"unsupported manifest schema: {d.get('schema')!r}")
    base = path.parent
    workdir = (base / d.get("workdir", ".")).resolve()
    return SubjectManifest(
        buggy_cmd=_expand_cmd(d["buggy_cmd"]),
        golden_cmd=_expand_cmd(d["golden_cmd"]),
        input_mode=d.get("input_mode", InputMode.STDIN),
        element_map_path=(base / d["element_map_path"]).resolve(),
        workdir=workdir,
        per_run_timeout=float(d.get("per_run_timeout_secs", 5.0)),
    )


@dataclass
class _RunOutcome:
    ok: bool  # clean exit within the timeout
    output: bytes = b""


def _normalize(output: bytes) -> bytes:
    return output[:-1] if output.endswith(b"\n") else output


def _run_subject(
    manifest: SubjectManifest, cmd: tuple[str, ...], input_str: str, trace_path: Path
) -> _RunOutcome:
    argv = list(cmd)
    stdin_bytes = b""
    if manifest.input_mode == InputMode.ARGV_LAST:
        argv.append(input_str)
    else:
        stdin_bytes = input_str.encode("utf-8")
    env = dict(os.environ)
    env[TRACE_ENV_VAR] = str(trace_path)
    try:
        proc = subprocess.run(
            argv,
            input=stdin_bytes,
            stdout=subprocess.PIPE,
            stderr=subprocess.DEVNULL,
            env=env,
            cwd=manifest.workdir,
            timeout=manifest.per_run_timeout,
        )
    except subprocess.TimeoutExpired:
        return _RunOutcome(ok=False)
    except (FileNotFoundError, PermissionError, NotADirectoryError) as exc:
        raise ConfigurationError(f"cannot launch subject {argv[0]!r}: {exc}") from exc
    if proc.returncode != 0:
        return _RunOutcome(ok=False, output=proc.stdout)
    return _RunOutcome(ok=True, output=proc.stdout)


def _load_trace(trace_path: Path, emap: ElementMap) -> Optional[Trace]:
    """The buggy run's trace, or None when absent/unparseable/invalid."""
    try:
        with open(trace_path, encoding="utf-8") as fh:
            trace = Trace.from_json_dict(json.load(fh))
        trace.validate(emap)
        return trace
    except (OSError, ValueError, KeyError, TypeError):
        return None


def _run_against_expected(
    manifest: SubjectManifest, input_str: str, expected: bytes, emap: ElementMap
) -> tuple[Outcome, Optional[Trace], bytes]:
    fd, name = tempfile.mkstemp(prefix="ddminloc_trace_", suffix=".json")
    os.close(fd)
    trace_path = Path(name)
    try:
        trace_path.unlink()  # subject must create it; a stale file would mask that
        buggy = _run_subject(manifest, manifest.buggy_cmd, input_str, trace_path)
        if not buggy.ok:
            return Outcome.UNRESOLVED, None, buggy.output
        trace = _load_trace(trace_path, emap)
        if trace is None:
            return Outcome.UNRESOLVED, None, buggy.output
        if _normalize(buggy.output) != _normalize(expected):
            return Outcome.FAIL, trace, buggy.output
        return Outcome.PASS, trace, buggy.output
    finally:
        trace_path.unlink(missing_ok=True)


def run_expected(
    manifest: SubjectManifest,
    input_str: str,
    expected: bytes,
    emap: Optional[ElementMap] = None,
) -> tuple[Outcome, Optional[Trace], bytes]:
    """Label against a recorded expected output instead of a golden run."""
    if emap is None:
        emap = manifest.load_element_map()
    return _run_against_expected(manifest, input_str, expected, emap)


def run_differential(
    manifest: SubjectManifest,
    input_str: str,
    emap: Optional[ElementMap] = None,
) -> tuple[Outcome, Optional[Trace], bytes]:
    """Golden first, then buggy; Fail iff their normalized outputs differ."""
    if emap is None:
        emap = manifest.load_element_map()
    fd, name = tempfile.mkstemp(prefix="ddminloc_gtrace_", suffix=".json")
    os.close(fd)
    golden_trace_path = Path(name)
    try:
        golden = _run_subject(manifest, manifest.golden_cmd, input_str, golden_trace_path)
    finally:
        golden_trace_path.unlink(missing_ok=True)
    if not golden.ok:
        # No reference output, so the differential label is undefined.
        return Outcome.UNRESOLVED, None, b""
    return _run_against_expected(manifest, input_str, golden.output, emap)


def make_oracle(manifest: SubjectManifest, emap: Optional[ElementMap] = None):
    """A string -> (Outcome, Trace, output) callable bound to one subject."""
    if emap is None:
        emap = manifest.load_element_map()

    def oracle(input_str: str):
        return run_differential(manifest, input_str, emap)

    return oracle
