#!/usr/bin/env node
/**
 * Usage:
 *   crityears-render render --kind timeline|delta-matrix|partner-evolution \
 *                           --in FILE --out FILE [--format svg|png]
 * (the leading "render" token is optional)
 */

import { FIGURE_KINDS, render, SchemaError, type RenderSpec } from "./index.js";

function usage(message?: string): never {
  if (message) process.stderr.write(`error: ${message}\n`);
  process.stderr.write(
    "usage: crityears-render render --kind timeline|delta-matrix|partner-evolution " +
      "--in FILE --out FILE [--format svg|png]\n",
  );
  process.exit(2);
}

export function parseArgs(argv: string[]): RenderSpec {
  const args = [...argv];
  if (args[0] === "render") args.shift();
  const opts: Record<string, string> = {};
  for (let i = 0; i < args.length; i += 2) {
    const flag = args[i];
    if (!flag.startsWith("--")) usage(`unexpected argument ${flag}`);
    const value = args[i + 1];
    if (value === undefined) usage(`missing value for ${flag}`);
    opts[flag.slice(2)] = value;
  }
  const known = new Set(["kind", "in", "out", "format"]);
  for (const key of Object.keys(opts)) {
    if (!known.has(key)) usage(`unknown flag --${key}`);
  }
  const kind = opts.kind as RenderSpec["kind"];
  if (!kind || !FIGURE_KINDS.includes(kind)) {
    usage(`--kind must be one of ${FIGURE_KINDS.join("|")}`);
  }
  if (!opts.in || !opts.out) usage("--in and --out are required");
  const format = (opts.format ?? "svg") as RenderSpec["format"];
  if (format !== "svg" && format !== "png") usage("--format must be svg or png");
  return { kind, input: opts.in, output: opts.out, format };
}

function main(): void {
  const spec = parseArgs(process.argv.slice(2));
  try {
    render(spec);
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      process.exit(1);
    }
    if (err instanceof Error && "code" in err && err.code === "ENOENT") {
      process.stderr.write(`error: ${err.message}\n`);
      process.exit(1);
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1]?.endsWith("cli.js") || process.argv[1]?.endsWith("crityears-render");
if (invokedDirectly) main();
