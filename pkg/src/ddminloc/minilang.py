"""MiniLang: a tiny line-oriented imperative language with coverage tracing.

One statement per physical line; ``{`` and ``}`` stand alone on their own
lines and are not executable. The interpreter records every executed line and
every evaluated condition outcome, which makes buggy/golden MiniLang pairs
self-contained subjects for the whole localization pipeline.

Example program (counts 'a's and 'd's in the input)::

    word = input
    count = 0
    for w in word
    {
    if w in ['a','d']
    {
    count = count + 1
    }
    }
    print count
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .core import ElementMap, PredicateSite, Trace


class MiniLangSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int = 0):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class MiniLangRuntimeError(RuntimeError):
    """Abnormal execution; carries whatever output/trace accumulated so far."""

    def __init__(self, message: str, line: int, output: bytes, trace: Trace):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.output = output
        self.trace = trace


# --- AST ---------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: object


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class ListLit:
    items: tuple[str, ...]


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class BoolOp:
    op: str  # "and" | "or"; same-operator chains are flattened
    operands: tuple["Expr", ...]


Expr = Union[Lit, Var, ListLit, Bin, Not, BoolOp]


@dataclass(frozen=True)
class Assign:
    line: int
    name: str
    expr: Expr


@dataclass(frozen=True)
class Print:
    line: int
    expr: Expr


@dataclass(frozen=True)
class If:
    line: int
    cond: Expr
    then_body: tuple["Stmt", ...]
    else_body: tuple["Stmt", ...]


@dataclass(frozen=True)
class While:
    line: int
    cond: Expr
    body: tuple["Stmt", ...]


@dataclass(frozen=True)
class ForEach:
    line: int
    var: str
    iterable: Expr
    body: tuple["Stmt", ...]


Stmt = Union[Assign, Print, If, While, ForEach]


@dataclass(frozen=True)
class Program:
    statements: tuple[Stmt, ...]
    source_lines: tuple[str, ...]


# --- Lexer -------------------------------------------------------------

_KEYWORDS = {"if", "else", "while", "for", "in", "and", "or", "not", "print", "true", "false"}
_TWO_CHAR_OPS = {"==", "!=", "<=", ">="}
_ONE_CHAR_OPS = set("+-*/<>=()[],")


@dataclass(frozen=True)
class _Tok:
    kind: str  # IDENT KW INT CHAR STRING OP
    text: str
    col: int
    value: object = None


def _lex_line(text: str, line_no: int) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            break
        col = i + 1
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("INT", text[i:j], col, int(text[i:j])))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "KW" if word in _KEYWORDS else "IDENT"
            toks.append(_Tok(kind, word, col))
            i = j
        elif c == "'":
            j = text.find("'", i + 1)
            if j == -1:
                raise MiniLangSyntaxError("unterminated char literal", line_no, col)
            ch = text[i + 1 : j]
            if len(ch) != 1:
                raise MiniLangSyntaxError(
                    f"char literal must hold exactly one character, got {ch!r}",
                    line_no,
                    col,
                )
            toks.append(_Tok("CHAR", text[i : j + 1], col, ch))
            i = j + 1
        elif c == '"':
            j = text.find('"', i + 1)
            if j == -1:
                raise MiniLangSyntaxError("unterminated string literal", line_no, col)
            toks.append(_Tok("STRING", text[i : j + 1], col, text[i + 1 : j]))
            i = j + 1
        elif text[i : i + 2] in _TWO_CHAR_OPS:
            toks.append(_Tok("OP", text[i : i + 2], col))
            i += 2
        elif c in _ONE_CHAR_OPS or c in "{}":
            toks.append(_Tok("OP", c, col))
            i += 1
        else:
            raise MiniLangSyntaxError(f"unexpected character {c!r}", line_no, col)
    return toks


# --- Parser ------------------------------------------------------------


class _ExprParser:
    """Recursive descent over one line's tokens.

    Precedence, loosest first: or, and, not, comparison/in, + -, * /.
    """

    def __init__(self, toks: list[_Tok], line_no: int):
        self.toks = toks
        self.line_no = line_no
        self.pos = 0

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def advance(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise MiniLangSyntaxError("unexpected end of line", self.line_no, 0)
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.kind != "OP" or tok.text != op:
            found = tok.text if tok else "end of line"
            raise MiniLangSyntaxError(
                f"expected {op!r}, found {found!r}", self.line_no, tok.col if tok else 0
            )
        return self.advance()

    def at_end(self) -> bool:
        return self.pos >= len(self.toks)

    def parse_expr(self) -> Expr:
        return self._or()

    def _bool_chain(self, op: str, sub) -> Expr:
        first = sub()
        operands = [first]
        while (tok := self.peek()) and tok.kind == "KW" and tok.text == op:
            self.advance()
            operands.append(sub())
        if len(operands) == 1:
            return first
        return BoolOp(op, tuple(operands))

    def _or(self) -> Expr:
        return self._bool_chain("or", self._and)

    def _and(self) -> Expr:
        return self._bool_chain("and", self._not)

    def _not(self) -> Expr:
        tok = self.peek()
        if tok and tok.kind == "KW" and tok.text == "not":
            self.advance()
            return Not(self._not())
        return self._comparison()

    def _comparison(self) -> Expr:
        left = self._add_sub()
        tok = self.peek()
        if tok and tok.kind == "OP" and tok.text in ("==", "!=", "<", "<=", ">", ">="):
            self.advance()
            return Bin(tok.text, left, self._add_sub())
        if tok and tok.kind == "KW" and tok.text == "in":
            self.advance()
            return Bin("in", left, self._add_sub())
        return left

    def _add_sub(self) -> Expr:
        left = self._mul_div()
        while (tok := self.peek()) and tok.kind == "OP" and tok.text in ("+", "-"):
            self.advance()
            left = Bin(tok.text, left, self._mul_div())
        return left

    def _mul_div(self) -> Expr:
        left = self._primary()
        while (tok := self.peek()) and tok.kind == "OP" and tok.text in ("*", "/"):
            self.advance()
            left = Bin(tok.text, left, self._primary())
        return left

    def _primary(self) -> Expr:
        tok = self.advance()
        if tok.kind == "INT" or tok.kind == "CHAR" or tok.kind == "STRING":
            return Lit(tok.value)
        if tok.kind == "KW" and tok.text in ("true", "false"):
            return Lit(tok.text == "true")
        if tok.kind == "IDENT":
            return Var(tok.text)
        if tok.kind == "OP" and tok.text == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if tok.kind == "OP" and tok.text == "[":
            items = []
            if not (self.peek() and self.peek().kind == "OP" and self.peek().text == "]"):
                while True:
                    item = self.advance()
                    if item.kind != "CHAR":
                        raise MiniLangSyntaxError(
                            "list literals hold char literals only", self.line_no, item.col
                        )
                    items.append(item.value)
                    nxt = self.peek()
                    if nxt and nxt.kind == "OP" and nxt.text == ",":
                        self.advance()
                        continue
                    break
            self.expect_op("]")
            return ListLit(tuple(items))
        raise MiniLangSyntaxError(f"unexpected token {tok.text!r}", self.line_no, tok.col)


# Line classifications fed to the block builder.
_OPEN, _CLOSE, _ELSE = "open", "close", "else"


@dataclass(frozen=True)
class _Header:
    """A parsed statement line that may still need a block attached."""

    line: int
    kind: str  # assign | print | if | while | for
    name: str = ""
    expr: Optional[Expr] = None


def _classify_line(text: str, line_no: int):
    toks = _lex_line(text, line_no)
    if not toks:
        return None
    first = toks[0]
    if first.kind == "OP" and first.text in ("{", "}"):
        if len(toks) > 1:
            raise MiniLangSyntaxError(
                f"{first.text!r} must stand alone on its line", line_no, toks[1].col
            )
        return (_OPEN if first.text == "{" else _CLOSE, line_no)
    if first.kind == "KW" and first.text == "else":
        if len(toks) > 1:
            raise MiniLangSyntaxError(
                "'else' must stand alone on its line", line_no, toks[1].col
            )
        return (_ELSE, line_no)
    return _parse_statement_line(toks, line_no)


def _parse_statement_line(toks: list[_Tok], line_no: int) -> _Header:
    first = toks[0]
    if first.kind == "KW" and first.text in ("if", "while"):
        p = _ExprParser(toks[1:], line_no)
        cond = p.parse_expr()
        if not p.at_end():
            raise MiniLangSyntaxError(
                f"trailing tokens after {first.text} condition", line_no, p.peek().col
            )
        return _Header(line_no, first.text, expr=cond)
    if first.kind == "KW" and first.text == "for":
        if len(toks) < 4 or toks[1].kind != "IDENT":
            raise MiniLangSyntaxError("expected 'for IDENT in expr'", line_no, first.col)
        if not (toks[2].kind == "KW" and toks[2].text == "in"):
            raise MiniLangSyntaxError("expected 'in' after loop variable", line_no, toks[2].col)
        p = _ExprParser(toks[3:], line_no)
        iterable = p.parse_expr()
        if not p.at_end():
            raise MiniLangSyntaxError("trailing tokens after for header", line_no, p.peek().col)
        return _Header(line_no, "for", name=toks[1].text, expr=iterable)
    if first.kind == "KW" and first.text == "print":
        p = _ExprParser(toks[1:], line_no)
        expr = p.parse_expr()
        if not p.at_end():
            raise MiniLangSyntaxError("trailing tokens after print", line_no, p.peek().col)
        return _Header(line_no, "print", expr=expr)
    if first.kind == "IDENT":
        if len(toks) < 2 or not (toks[1].kind == "OP" and toks[1].text == "="):
            raise MiniLangSyntaxError(
                f"expected '=' after {first.text!r}", line_no, first.col
            )
        p = _ExprParser(toks[2:], line_no)
        expr = p.parse_expr()
        if not p.at_end():
            raise MiniLangSyntaxError("trailing tokens after assignment", line_no, p.peek().col)
        return _Header(line_no, "assign", name=first.text, expr=expr)
    raise MiniLangSyntaxError(f"cannot start a statement with {first.text!r}", line_no, first.col)


def parse(source: str) -> Program:
    """Parse UTF-8 source text into a Program, or raise MiniLangSyntaxError."""
    source_lines = tuple(source.splitlines())
    items = []
    for idx, text in enumerate(source_lines, start=1):
        item = _classify_line(text, idx)
        if item is not None:
            items.append(item)

    pos = 0

    def parse_block(open_line: int) -> tuple[Stmt, ...]:
        nonlocal pos
        stmts: list[Stmt] = []
        while pos < len(items):
            item = items[pos]
            if isinstance(item, tuple) and item[0] == _CLOSE:
                pos += 1
                return tuple(stmts)
            stmts.append(parse_one())
        raise MiniLangSyntaxError("unclosed '{'", open_line, 1)

    def expect_open(owner: _Header) -> int:
        nonlocal pos
        if pos >= len(items) or not (isinstance(items[pos], tuple) and items[pos][0] == _OPEN):
            raise MiniLangSyntaxError(
                f"expected '{{' after {owner.kind} header", owner.line, 1
            )
        open_line = items[pos][1]
        pos += 1
        return open_line

    def parse_one() -> Stmt:
        nonlocal pos
        item = items[pos]
        if isinstance(item, tuple):
            kind, line_no = item
            if kind == _OPEN:
                raise MiniLangSyntaxError("unexpected '{'", line_no, 1)
            if kind == _ELSE:
                raise MiniLangSyntaxError("'else' without matching if", line_no, 1)
            raise MiniLangSyntaxError("unexpected '}'", line_no, 1)
        pos += 1
        header: _Header = item
        if header.kind == "assign":
            return Assign(header.line, header.name, header.expr)
        if header.kind == "print":
            return Print(header.line, header.expr)
        if header.kind == "while":
            body = parse_block(expect_open(header))
            return While(header.line, header.expr, body)
        if header.kind == "for":
            body = parse_block(expect_open(header))
            return ForEach(header.line, header.name, header.expr, body)
        # if, with optional else block
        then_body = parse_block(expect_open(header))
        else_body: tuple[Stmt, ...] = ()
        if pos < len(items) and isinstance(items[pos], tuple) and items[pos][0] == _ELSE:
            else_line = items[pos][1]
            pos += 1
            if pos >= len(items) or not (
                isinstance(items[pos], tuple) and items[pos][0] == _OPEN
            ):
                raise MiniLangSyntaxError("expected '{' after else", else_line, 1)
            open_line = items[pos][1]
            pos += 1
            else_body = parse_block(open_line)
        return If(header.line, header.expr, then_body, else_body)

    statements: list[Stmt] = []
    while pos < len(items):
        statements.append(parse_one())
    return Program(tuple(statements), source_lines)


# --- Element map -------------------------------------------------------


def unparse(expr: Expr) -> str:
    """Render an expression back to source-ish text for predicate tables."""

    def prec(e: Expr) -> int:
        if isinstance(e, BoolOp):
            return 1 if e.op == "or" else 2
        if isinstance(e, Not):
            return 3
        if isinstance(e, Bin):
            if e.op in ("==", "!=", "<", "<=", ">", ">=", "in"):
                return 4
            if e.op in ("+", "-"):
                return 5
            return 6
        return 9

    def render(e: Expr, parent_prec: int) -> str:
        p = prec(e)
        if isinstance(e, Lit):
            if isinstance(e.value, bool):
                text = "true" if e.value else "false"
            elif isinstance(e.value, str):
                text = f"'{e.value}'" if len(e.value) == 1 else f'"{e.value}"'
            else:
                text = str(e.value)
        elif isinstance(e, Var):
            text = e.name
        elif isinstance(e, ListLit):
            text = "[" + ",".join(f"'{c}'" for c in e.items) + "]"
        elif isinstance(e, Not):
            text = "not " + render(e.operand, p)
        elif isinstance(e, BoolOp):
            text = f" {e.op} ".join(render(o, p + 1) for o in e.operands)
        else:
            text = f"{render(e.left, p)} {e.op} {render(e.right, p + 1)}"
        return f"({text})" if p < parent_prec else text

    return render(expr, 0)


def _walk(stmts: tuple[Stmt, ...]):
    for stmt in stmts:
        yield stmt
        if isinstance(stmt, If):
            yield from _walk(stmt.then_body)
            yield from _walk(stmt.else_body)
        elif isinstance(stmt, (While, ForEach)):
            yield from _walk(stmt.body)


def _condition_sites(stmt: Stmt, next_site: int) -> list[PredicateSite]:
    """Sites contributed by one conditional statement, combined test first,
    then each top-level and/or operand."""
    if isinstance(stmt, ForEach):
        expr_text = f"{stmt.var} in {unparse(stmt.iterable)}"
        return [PredicateSite(next_site, stmt.line, expr_text)]
    assert isinstance(stmt, (If, While))
    sites = [PredicateSite(next_site, stmt.line, unparse(stmt.cond))]
    if isinstance(stmt.cond, BoolOp):
        for operand in stmt.cond.operands:
            next_site += 1
            sites.append(PredicateSite(next_site, stmt.line, unparse(operand)))
    return sites


def element_map(program: Program) -> ElementMap:
    lines = []
    sites: list[PredicateSite] = []
    for stmt in sorted(_walk(program.statements), key=lambda s: s.line):
        lines.append(stmt.line)
        if isinstance(stmt, (If, While, ForEach)):
            sites.extend(_condition_sites(stmt, len(sites)))
    return ElementMap(executable_lines=tuple(lines), predicate_sites=tuple(sites))


# --- Interpreter -------------------------------------------------------

DEFAULT_STEP_BUDGET = 10**6


class _Interp:
    def __init__(self, program: Program, input_str: str, step_budget: int):
        self.env: dict[str, object] = {"input": input_str}
        self.step_budget = step_budget
        self.steps = 0
        self.out: list[str] = []
        self.lines_hit: set[int] = set()
        self.predicate_hits: set[tuple[int, bool]] = set()
        # site ids per conditional statement: (combined, operand ids)
        self.site_ids: dict[int, tuple[int, list[int]]] = {}
        next_site = 0
        for stmt in sorted(_walk(program.statements), key=lambda s: s.line):
            if isinstance(stmt, (If, While, ForEach)):
                contributed = _condition_sites(stmt, next_site)
                combined = contributed[0].site
                operands = [s.site for s in contributed[1:]]
                self.site_ids[id(stmt)] = (combined, operands)
                next_site += len(contributed)

    def trace(self) -> Trace:
        return Trace(frozenset(self.lines_hit), frozenset(self.predicate_hits))

    def output(self) -> bytes:
        return "".join(self.out).encode("utf-8")

    def fail(self, message: str, line: int):
        raise MiniLangRuntimeError(message, line, self.output(), self.trace())

    def tick(self, line: int):
        self.steps += 1
        if self.steps > self.step_budget:
            self.fail("step budget exhausted", line)

    def run(self, stmts: tuple[Stmt, ...]):
        for stmt in stmts:
            self.exec_stmt(stmt)

    def exec_stmt(self, stmt: Stmt):
        self.tick(stmt.line)
        self.lines_hit.add(stmt.line)
        if isinstance(stmt, Assign):
            self.env[stmt.name] = self.eval(stmt.expr, stmt.line)
        elif isinstance(stmt, Print):
            self.out.append(self.format_value(self.eval(stmt.expr, stmt.line), stmt.line) + "\n")
        elif isinstance(stmt, If):
            if self.eval_condition(stmt, stmt.cond):
                self.run(stmt.then_body)
            else:
                self.run(stmt.else_body)
        elif isinstance(stmt, While):
            while self.eval_condition(stmt, stmt.cond):
                self.run(stmt.body)
        elif isinstance(stmt, ForEach):
            combined, _ = self.site_ids[id(stmt)]
            seq = self.eval(stmt.iterable, stmt.line)
            if not isinstance(seq, (str, tuple)):
                self.fail("for loop needs a string or list to iterate", stmt.line)
            for ch in seq:
                self.tick(stmt.line)
                self.lines_hit.add(stmt.line)
                self.predicate_hits.add((combined, True))
                self.env[stmt.var] = ch
                self.run(stmt.body)
            self.tick(stmt.line)
            self.lines_hit.add(stmt.line)
            self.predicate_hits.add((combined, False))
        else:
            raise AssertionError(f"unhandled statement {stmt}")

    def eval_condition(self, stmt: Stmt, cond: Expr) -> bool:
        combined, operand_sites = self.site_ids[id(stmt)]
        self.tick(stmt.line)
        if isinstance(cond, BoolOp):
            result = cond.op == "and"
            for operand, site in zip(cond.operands, operand_sites):
                value = self.eval(operand, stmt.line)
                if not isinstance(value, bool):
                    self.fail(f"condition operand is not a boolean: {value!r}", stmt.line)
                self.predicate_hits.add((site, value))
                if cond.op == "and" and not value:
                    result = False
                    break
                if cond.op == "or" and value:
                    result = True
                    break
        else:
            value = self.eval(cond, stmt.line)
            if not isinstance(value, bool):
                self.fail(f"condition is not a boolean: {value!r}", stmt.line)
            result = value
        self.predicate_hits.add((combined, result))
        return result

    def eval(self, expr: Expr, line: int):
        if isinstance(expr, Lit):
            return expr.value
        if isinstance(expr, Var):
            if expr.name not in self.env:
                self.fail(f"undefined variable {expr.name!r}", line)
            return self.env[expr.name]
        if isinstance(expr, ListLit):
            return expr.items
        if isinstance(expr, Not):
            value = self.eval(expr.operand, line)
            if not isinstance(value, bool):
                self.fail(f"'not' needs a boolean, got {value!r}", line)
            return not value
        if isinstance(expr, BoolOp):
            # Bare and/or outside a condition position: short-circuit, untraced.
            for operand in expr.operands:
                value = self.eval(operand, line)
                if not isinstance(value, bool):
                    self.fail(f"'{expr.op}' needs booleans, got {value!r}", line)
                if expr.op == "and" and not value:
                    return False
                if expr.op == "or" and value:
                    return True
            return expr.op == "and"
        if isinstance(expr, Bin):
            return self.eval_bin(expr, line)
        raise AssertionError(f"unhandled expression {expr}")

    def eval_bin(self, expr: Bin, line: int):
        left = self.eval(expr.left, line)
        right = self.eval(expr.right, line)
        op = expr.op
        if op == "in":
            if isinstance(left, str) and isinstance(right, str):
                return left in right
            if isinstance(left, str) and isinstance(right, tuple):
                return left in right
            self.fail(f"'in' needs a char and a string/list, got {left!r} in {right!r}", line)
        if op in ("==", "!="):
            if type(left) is not type(right):
                self.fail(f"cannot compare {left!r} with {right!r}", line)
            return (left == right) if op == "==" else (left != right)
        if op in ("<", "<=", ">", ">="):
            ok_ints = isinstance(left, int) and isinstance(right, int) and not (
                isinstance(left, bool) or isinstance(right, bool)
            )
            ok_strs = isinstance(left, str) and isinstance(right, str)
            if not (ok_ints or ok_strs):
                self.fail(f"cannot order {left!r} and {right!r}", line)
            if op == "<":
                return left < right
            if op == "<=":
                return left <= right
            if op == ">":
                return left > right
            return left >= right
        if op == "+" and isinstance(left, str) and isinstance(right, str):
            return left + right
        if op in ("+", "-", "*", "/"):
            ok = all(
                isinstance(v, int) and not isinstance(v, bool) for v in (left, right)
            )
            if not ok:
                self.fail(f"arithmetic needs integers, got {left!r} {op} {right!r}", line)
            if op == "+":
                return left + right
            if op == "-":
                return left - right
            if op == "*":
                return left * right
            if right == 0:
                self.fail("division by zero", line)
            return left // right
        raise AssertionError(f"unhandled operator {op}")

    def format_value(self, value, line: int) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, (int, str)):
            return str(value)
        self.fail(f"cannot print {value!r}", line)
        raise AssertionError("unreachable")


def run(
    program: Program, input_str: str, step_budget: int = DEFAULT_STEP_BUDGET
) -> tuple[bytes, Trace]:
    """Execute deterministically with ``input`` bound to the input string.

    Returns (stdout bytes, coverage trace). Raises MiniLangRuntimeError on
    type errors, undefined variables, or step-budget exhaustion; the error
    carries the partial output and trace accumulated so far.
    """
    interp = _Interp(program, input_str, step_budget)
    interp.run(program.statements)
    return interp.output(), interp.trace()
