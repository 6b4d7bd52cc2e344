/**
 * Static analysis of a single-file JavaScript subject: which lines are
 * executable and which conditions become predicate sites.
 *
 * A site is one conditional test: an `if` or `while` test, a classic `for`
 * test, or a `for...of` loop continuation. When the test's top-level operator
 * is && or ||, each top-level operand becomes an additional site, mirroring
 * how multi-part conditions are scored downstream (combined site first, then
 * operands left to right). Site ids are dense, in source order.
 */
import ts from "typescript";

export interface PredicateSiteInfo {
  site: number;
  line: number;
  expr: string;
}

export interface ConditionInfo {
  /** statement owning the condition (if/while/for/for-of) */
  statement: ts.Statement;
  kind: "if" | "while" | "for" | "forof";
  /** the test expression, or the iterable for for-of */
  expr: ts.Expression;
  /** 1-based line of the statement header */
  line: number;
  combinedSite: number;
  /** one per top-level &&/|| operand, in source order */
  operandSites: number[];
  /** the operand expressions matching operandSites */
  operands: ts.Expression[];
}

export interface SubjectAnalysis {
  sourceFile: ts.SourceFile;
  executableLines: number[];
  sites: PredicateSiteInfo[];
  conditions: ConditionInfo[];
  /** executable statements that need an explicit line-hit probe */
  plainStatements: ts.Statement[];
}

export function lineOf(sf: ts.SourceFile, node: ts.Node): number {
  return sf.getLineAndCharacterOfPosition(node.getStart(sf)).line + 1;
}

function unparenthesize(e: ts.Expression): ts.Expression {
  while (ts.isParenthesizedExpression(e)) e = e.expression;
  return e;
}

function logicalOperator(e: ts.Expression): ts.SyntaxKind | null {
  const inner = unparenthesize(e);
  if (
    ts.isBinaryExpression(inner) &&
    (inner.operatorToken.kind === ts.SyntaxKind.AmpersandAmpersandToken ||
      inner.operatorToken.kind === ts.SyntaxKind.BarBarToken)
  ) {
    return inner.operatorToken.kind;
  }
  return null;
}

/** Flatten a same-operator &&/|| chain into its top-level operands. */
export function topLevelOperands(e: ts.Expression): ts.Expression[] {
  const op = logicalOperator(e);
  if (op === null) return [];
  const out: ts.Expression[] = [];
  const walk = (node: ts.Expression) => {
    const inner = unparenthesize(node);
    if (ts.isBinaryExpression(inner) && inner.operatorToken.kind === op) {
      walk(inner.left);
      walk(inner.right);
    } else {
      out.push(node);
    }
  };
  const inner = unparenthesize(e) as ts.BinaryExpression;
  walk(inner.left);
  walk(inner.right);
  return out;
}

const PLAIN_EXECUTABLE = new Set<ts.SyntaxKind>([
  ts.SyntaxKind.ExpressionStatement,
  ts.SyntaxKind.VariableStatement,
  ts.SyntaxKind.ReturnStatement,
  ts.SyntaxKind.BreakStatement,
  ts.SyntaxKind.ContinueStatement,
  ts.SyntaxKind.ThrowStatement,
]);

export function analyze(source: string, fileName = "subject.js"): SubjectAnalysis {
  const sourceFile = ts.createSourceFile(
    fileName,
    source,
    ts.ScriptTarget.ES2021,
    true,
    ts.ScriptKind.JS
  );
  const executable = new Set<number>();
  const sites: PredicateSiteInfo[] = [];
  const conditions: ConditionInfo[] = [];
  const plainStatements: ts.Statement[] = [];

  const addCondition = (
    statement: ts.Statement,
    kind: ConditionInfo["kind"],
    expr: ts.Expression,
    exprText: string
  ) => {
    const line = lineOf(sourceFile, statement);
    executable.add(line);
    const combinedSite = sites.length;
    sites.push({ site: combinedSite, line, expr: exprText });
    const operands = kind === "forof" ? [] : topLevelOperands(expr);
    const operandSites = operands.map((operand) => {
      const id = sites.length;
      sites.push({ site: id, line, expr: operand.getText(sourceFile) });
      return id;
    });
    conditions.push({ statement, kind, expr, line, combinedSite, operandSites, operands });
  };

  const visitStatement = (stmt: ts.Statement): void => {
    if (ts.isBlock(stmt)) {
      stmt.statements.forEach(visitStatement);
      return;
    }
    if (ts.isFunctionDeclaration(stmt)) {
      if (stmt.body) stmt.body.statements.forEach(visitStatement);
      return;
    }
    if (ts.isIfStatement(stmt)) {
      addCondition(stmt, "if", stmt.expression, stmt.expression.getText(sourceFile));
      visitStatement(stmt.thenStatement);
      if (stmt.elseStatement) visitStatement(stmt.elseStatement);
      return;
    }
    if (ts.isWhileStatement(stmt)) {
      addCondition(stmt, "while", stmt.expression, stmt.expression.getText(sourceFile));
      visitStatement(stmt.statement);
      return;
    }
    if (ts.isForStatement(stmt)) {
      if (stmt.condition) {
        addCondition(stmt, "for", stmt.condition, stmt.condition.getText(sourceFile));
      }
      visitStatement(stmt.statement);
      return;
    }
    if (ts.isForOfStatement(stmt)) {
      const head = `${stmt.initializer.getText(sourceFile)} of ${stmt.expression.getText(sourceFile)}`;
      addCondition(stmt, "forof", stmt.expression, head);
      visitStatement(stmt.statement);
      return;
    }
    if (ts.isForInStatement(stmt) || ts.isDoStatement(stmt)) {
      // no observable continuation test; instrument the body only
      visitStatement(stmt.statement);
      return;
    }
    if (ts.isSwitchStatement(stmt)) {
      for (const clause of stmt.caseBlock.clauses) {
        clause.statements.forEach(visitStatement);
      }
      return;
    }
    if (PLAIN_EXECUTABLE.has(stmt.kind)) {
      executable.add(lineOf(sourceFile, stmt));
      plainStatements.push(stmt);
    }
  };

  sourceFile.statements.forEach(visitStatement);

  return {
    sourceFile,
    executableLines: [...executable].sort((a, b) => a - b),
    sites,
    conditions,
    plainStatements,
  };
}

export function elementMapJson(analysis: SubjectAnalysis): object {
  return {
    schema: 1,
    executable_lines: analysis.executableLines,
    predicates: analysis.sites.map((s) => ({ site: s.site, line: s.line, expr: s.expr })),
  };
}
