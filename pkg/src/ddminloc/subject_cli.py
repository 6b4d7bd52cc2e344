"""MiniLang subject-protocol entry points.

Kept import-light on purpose: every oracle call spawns two of these
processes, so this module must not drag in the orchestration stack.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import minilang

TRACE_ENV_VAR = "DDMIN_LOC_TRACE"


def _write_trace_file(trace) -> None:
    trace_path = os.environ.get(TRACE_ENV_VAR)
    if trace_path:
        with open(trace_path, "w", encoding="utf-8") as fh:
            json.dump(trace.to_json_dict(), fh)


def cmd_run(args: argparse.Namespace) -> int:
    source = Path(args.program).read_text(encoding="utf-8")
    try:
        program = minilang.parse(source)
    except minilang.MiniLangSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    input_str = sys.stdin.read()
    try:
        output, trace = minilang.run(program, input_str, step_budget=args.step_budget)
    except minilang.MiniLangRuntimeError as exc:
        # Flush the partial trace and output before reporting the fault.
        _write_trace_file(exc.trace)
        sys.stdout.buffer.write(exc.output)
        sys.stdout.buffer.flush()
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1
    _write_trace_file(trace)
    sys.stdout.buffer.write(output)
    sys.stdout.buffer.flush()
    return 0


def cmd_map(args: argparse.Namespace) -> int:
    source = Path(args.program).read_text(encoding="utf-8")
    try:
        program = minilang.parse(source)
    except minilang.MiniLangSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    emap = minilang.element_map(program)
    d = emap.to_json_dict()
    if args.fault_lines:
        d["fault_lines"] = sorted(int(x) for x in args.fault_lines.split(","))
    text = json.dumps(d, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def add_minilang_parser(sub) -> None:
    p_ml = sub.add_parser("minilang", help="MiniLang subject tooling")
    ml_sub = p_ml.add_subparsers(dest="ml_command", required=True)
    p_run = ml_sub.add_parser("run", help="execute a program (input on stdin)")
    p_run.add_argument("program")
    p_run.add_argument("--step-budget", type=int, default=minilang.DEFAULT_STEP_BUDGET)
    p_run.set_defaults(func=cmd_run)
    p_map = ml_sub.add_parser("map", help="emit a program's element map JSON")
    p_map.add_argument("program")
    p_map.add_argument("-o", "--out")
    p_map.add_argument("--fault-lines", help="comma-separated ground-truth lines")
    p_map.set_defaults(func=cmd_map)


def minilang_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="ddmin-loc minilang")
    sub = parser.add_subparsers(dest="command", required=True)
    run_parser = sub.add_parser("run")
    run_parser.add_argument("program")
    run_parser.add_argument("--step-budget", type=int, default=minilang.DEFAULT_STEP_BUDGET)
    run_parser.set_defaults(func=cmd_run)
    map_parser = sub.add_parser("map")
    map_parser.add_argument("program")
    map_parser.add_argument("-o", "--out")
    map_parser.add_argument("--fault-lines")
    map_parser.set_defaults(func=cmd_map)
    args = parser.parse_args(argv)
    return args.func(args)
