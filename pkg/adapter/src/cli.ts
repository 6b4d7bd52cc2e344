#!/usr/bin/env node
/**
 * jsadapter: run single-file JavaScript subjects under the ddmin-loc trace
 * protocol.
 *
 *   jsadapter map SRC [-o MAP.json]   emit the subject's element map
 *   jsadapter run SRC                 instrument + execute; input on stdin,
 *                                     trace written to $DDMIN_LOC_TRACE
 */
import { spawnSync } from "child_process";
import fs from "fs";
import os from "os";
import path from "path";

import { analyze, elementMapJson } from "./analysis";
import { instrument } from "./instrument";

const TRACE_ENV_VAR = "DDMIN_LOC_TRACE";

function usage(): never {
  console.error("usage: jsadapter map SRC [-o MAP.json] | jsadapter run SRC");
  process.exit(2);
}

function cmdMap(args: string[]): number {
  const src = args[0];
  if (!src) usage();
  let out: string | undefined;
  const flag = args.indexOf("-o");
  if (flag !== -1) out = args[flag + 1];
  const source = fs.readFileSync(src, "utf8");
  const text = JSON.stringify(elementMapJson(analyze(source, src)), null, 2);
  if (out) {
    fs.writeFileSync(out, text + "\n");
  } else {
    console.log(text);
  }
  return 0;
}

function cmdRun(args: string[]): number {
  const src = args[0];
  if (!src) usage();
  const source = fs.readFileSync(src, "utf8");
  const instrumented = instrument(source, analyze(source, src));

  const env = { ...process.env };
  if (!env[TRACE_ENV_VAR]) {
    const fallback = path.resolve(src) + ".trace.json";
    console.error(`jsadapter: ${TRACE_ENV_VAR} not set; writing trace to ${fallback}`);
    env[TRACE_ENV_VAR] = fallback;
  }

  const tmp = path.join(
    os.tmpdir(),
    `jsadapter-${process.pid}-${Math.random().toString(36).slice(2)}.js`
  );
  fs.writeFileSync(tmp, instrumented);
  try {
    const child = spawnSync(process.execPath, [tmp], { stdio: "inherit", env });
    if (child.error) throw child.error;
    return child.status === null ? 1 : child.status;
  } finally {
    fs.rmSync(tmp, { force: true });
  }
}

function main(): number {
  const [command, ...rest] = process.argv.slice(2);
  if (command === "map") return cmdMap(rest);
  if (command === "run") return cmdRun(rest);
  usage();
}

process.exit(main());
