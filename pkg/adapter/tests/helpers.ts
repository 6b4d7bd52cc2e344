import { spawnSync } from "child_process";
import fs from "fs";
import os from "os";
import path from "path";

export const ADAPTER_DIR = path.resolve(__dirname, "..");
export const CLI = path.join(ADAPTER_DIR, "dist", "cli.js");
export const SUBJECTS = path.join(ADAPTER_DIR, "subjects");

export interface RunResult {
  stdout: string;
  stderr: string;
  status: number | null;
}

export function runOriginal(subject: string, input: string): RunResult {
  const r = spawnSync(process.execPath, [subject], { input, encoding: "utf8" });
  return { stdout: r.stdout, stderr: r.stderr, status: r.status };
}

export function runAdapter(subject: string, input: string, tracePath?: string): RunResult {
  const env: NodeJS.ProcessEnv = { ...process.env };
  if (tracePath) env.DDMIN_LOC_TRACE = tracePath;
  else delete env.DDMIN_LOC_TRACE;
  const r = spawnSync(process.execPath, [CLI, "run", subject], {
    input,
    encoding: "utf8",
    env,
  });
  return { stdout: r.stdout, stderr: r.stderr, status: r.status };
}

export function mapSubject(subject: string): ElementMap {
  const r = spawnSync(process.execPath, [CLI, "map", subject], { encoding: "utf8" });
  if (r.status !== 0) throw new Error(`map failed: ${r.stderr}`);
  return JSON.parse(r.stdout);
}

export interface ElementMap {
  schema: number;
  executable_lines: number[];
  predicates: { site: number; line: number; expr: string }[];
  fault_lines?: number[];
}

export interface TraceFile {
  schema: number;
  lines: number[];
  predicates: { site: number; outcome: boolean }[];
}

export function readTrace(tracePath: string): TraceFile {
  return JSON.parse(fs.readFileSync(tracePath, "utf8"));
}

/** The version-1 trace invariants, re-stated on the consumer side. */
export function validateTrace(trace: TraceFile, map: ElementMap): void {
  if (trace.schema !== 1) throw new Error(`bad schema ${trace.schema}`);
  const knownLines = new Set(map.executable_lines);
  for (const line of trace.lines) {
    if (!knownLines.has(line)) throw new Error(`trace hits unknown line ${line}`);
  }
  const siteLines = new Map(map.predicates.map((p) => [p.site, p.line]));
  const hitLines = new Set(trace.lines);
  for (const { site } of trace.predicates) {
    const line = siteLines.get(site);
    if (line === undefined) throw new Error(`trace hits unknown site ${site}`);
    if (!hitLines.has(line)) throw new Error(`site ${site} hit without its line ${line}`);
  }
}

export function tmpTracePath(): string {
  return path.join(
    os.tmpdir(),
    `jsadapter-test-${process.pid}-${Math.random().toString(36).slice(2)}.json`
  );
}

/** mulberry32: tiny deterministic PRNG for reproducible random inputs */
export function makeRng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function randomInput(rng: () => number, maxLen = 12): string {
  const alphabet = "abcde0189 +;!x";
  const n = Math.floor(rng() * maxLen);
  let out = "";
  for (let i = 0; i < n; i++) {
    out += alphabet[Math.floor(rng() * alphabet.length)];
  }
  return out;
}
