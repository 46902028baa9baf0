#!/usr/bin/env node
import { writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { CsvSchemaError } from "./csv.js";
import { FigureKind, renderFigure } from "./figures.js";

const USAGE = "usage: viz-reports render --kind {pdf|fades|ber|plane} --in <csv...> --out <file>";

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        kind: { type: "string" },
        in: { type: "string", multiple: true },
        out: { type: "string" },
        title: { type: "string" },
      },
    });
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n${USAGE}\n`);
    return 2;
  }
  const { values, positionals } = parsed;
  const kinds: FigureKind[] = ["pdf", "fades", "ber", "plane"];
  if (
    positionals[0] !== "render" ||
    !kinds.includes(values.kind as FigureKind) ||
    !values.in?.length ||
    !values.out
  ) {
    process.stderr.write(`${USAGE}\n`);
    return 2;
  }
  try {
    const svg = renderFigure({
      kind: values.kind as FigureKind,
      inputs: values.in,
      title: values.title,
    });
    writeFileSync(values.out, svg);
  } catch (err) {
    if (err instanceof CsvSchemaError) {
      process.stderr.write(`schema mismatch: ${err.message}\n`);
    } else {
      process.stderr.write(`error: ${(err as Error).message}\n`);
    }
    return 1;
  }
  process.stdout.write(`wrote ${values.out}\n`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
