/**
 * Source-to-source instrumentation by text edits that never add or remove
 * lines, so recorded line numbers match the original file.
 *
 * Conditions are wrapped in recording calls (which also register the header
 * line as hit); plain statements get a line-hit probe. State setup and the
 * exit-time trace flush are prepended onto the first line; the hoisted
 * recorder functions are appended at the end.
 */
import ts from "typescript";

import { ConditionInfo, SubjectAnalysis, lineOf, topLevelOperands } from "./analysis";

interface Edit {
  start: number;
  end: number; // == start for pure insertions
  text: string;
}

const PROLOGUE =
  ';globalThis.__dlS={lines:new Set(),preds:new Set()};' +
  'process.on("exit",()=>{try{const s=globalThis.__dlS;' +
  'require("fs").writeFileSync(process.env.DDMIN_LOC_TRACE,JSON.stringify({schema:1,' +
  'lines:[...s.lines].sort((a,b)=>a-b),' +
  'predicates:[...s.preds].map(x=>{const i=x.lastIndexOf(":");' +
  'return{site:+x.slice(0,i),outcome:x.slice(i+1)==="1"}})}))}catch(e){}});';

const RUNTIME = [
  "",
  "function __dlHit(l){globalThis.__dlS.lines.add(l);}",
  "function __dlPred(s,l,v){globalThis.__dlS.lines.add(l);" +
    'globalThis.__dlS.preds.add(s+":"+(v?1:0));return v;}',
  "function* __dlLoop(s,l,it){globalThis.__dlS.lines.add(l);" +
    "for(const x of it){__dlPred(s,l,true);yield x;}__dlPred(s,l,false);}",
  "",
].join("\n");

function wrapConditionText(sf: ts.SourceFile, info: ConditionInfo): string {
  const { expr, line, combinedSite, operandSites } = info;
  if (info.kind === "forof") {
    return `__dlLoop(${combinedSite}, ${line}, (${expr.getText(sf)}))`;
  }
  let body: string;
  if (operandSites.length > 0) {
    const operands = topLevelOperands(expr);
    const glue = ` ${operandGlue(expr, sf)} `;
    body = operands
      .map((o, i) => `__dlPred(${operandSites[i]}, ${line}, (${o.getText(sf)}))`)
      .join(glue);
  } else {
    body = expr.getText(sf);
  }
  return `__dlPred(${combinedSite}, ${line}, (${body}))`;
}

function operandGlue(expr: ts.Expression, sf: ts.SourceFile): string {
  let inner: ts.Expression = expr;
  while (ts.isParenthesizedExpression(inner)) inner = inner.expression;
  const binary = inner as ts.BinaryExpression;
  return binary.operatorToken.kind === ts.SyntaxKind.AmpersandAmpersandToken ? "&&" : "||";
}

function inStatementListPosition(stmt: ts.Statement): boolean {
  const parent = stmt.parent;
  return (
    parent !== undefined &&
    (ts.isSourceFile(parent) ||
      ts.isBlock(parent) ||
      ts.isCaseClause(parent) ||
      ts.isDefaultClause(parent))
  );
}

function statementHitEdit(sf: ts.SourceFile, stmt: ts.Statement): Edit | null {
  const line = lineOf(sf, stmt);
  if (inStatementListPosition(stmt)) {
    return { start: stmt.getStart(sf), end: stmt.getStart(sf), text: `__dlHit(${line});` };
  }
  // single-statement bodies like `if (c) x += 1;`
  if (ts.isExpressionStatement(stmt)) {
    const e = stmt.expression;
    return {
      start: e.getStart(sf),
      end: e.getEnd(),
      text: `(__dlHit(${line}), (${e.getText(sf)}))`,
    };
  }
  if (ts.isReturnStatement(stmt) && stmt.expression) {
    const e = stmt.expression;
    return {
      start: e.getStart(sf),
      end: e.getEnd(),
      text: `(__dlHit(${line}), (${e.getText(sf)}))`,
    };
  }
  return {
    start: stmt.getStart(sf),
    end: stmt.getEnd(),
    text: `{ __dlHit(${line}); ${stmt.getText(sf)} }`,
  };
}

export function instrument(source: string, analysis: SubjectAnalysis): string {
  const sf = analysis.sourceFile;
  const edits: Edit[] = [];
  for (const info of analysis.conditions) {
    edits.push({
      start: info.expr.getStart(sf),
      end: info.expr.getEnd(),
      text: wrapConditionText(sf, info),
    });
  }
  for (const stmt of analysis.plainStatements) {
    const edit = statementHitEdit(sf, stmt);
    if (edit) edits.push(edit);
  }
  edits.sort((a, b) => b.start - a.start);
  let text = source;
  for (const edit of edits) {
    text = text.slice(0, edit.start) + edit.text + text.slice(edit.end);
  }
  return PROLOGUE + text + RUNTIME;
}
