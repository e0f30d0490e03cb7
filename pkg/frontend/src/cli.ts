/**
 * Command line: `plot --csv <path> --x {iter,time} --out <img>`.
 *
 * Renders one figure per input CSV, emitting both SVG and PNG next to the
 * requested output path. Exit codes: 0 success, 1 data/render failure,
 * 2 usage error.
 */

import * as path from "node:path";
import { pathToFileURL } from "node:url";

import { render, outputPair } from "./render.js";
import { Aggregation, XAxis } from "./series.js";

const USAGE = `usage: plot --csv <path> [--csv <path> ...] --x {iter,time} --out <img>
            [--agg {single,median}] [--title <text>] [--width N] [--height N]`;

interface CliOptions {
  csvPaths: string[];
  xAxis: XAxis;
  outPath: string;
  aggregation: Aggregation;
  title?: string;
  width?: number;
  height?: number;
}

class UsageError extends Error {}

function parseArgs(argv: string[]): CliOptions {
  if (argv[0] !== "plot") {
    throw new UsageError(`unknown command ${JSON.stringify(argv[0] ?? "")}`);
  }
  const options: CliOptions = {
    csvPaths: [],
    xAxis: "iter",
    outPath: "",
    aggregation: "median",
  };
  let xSeen = false;
  for (let i = 1; i < argv.length; i++) {
    const flag = argv[i];
    const value = argv[i + 1];
    const need = (): string => {
      if (value === undefined) {
        throw new UsageError(`missing value for ${flag}`);
      }
      i += 1;
      return value;
    };
    switch (flag) {
      case "--csv":
        options.csvPaths.push(need());
        break;
      case "--x": {
        const raw = need();
        if (raw !== "iter" && raw !== "time") {
          throw new UsageError(`--x must be iter or time, got ${JSON.stringify(raw)}`);
        }
        options.xAxis = raw === "time" ? "elapsed_ms" : "iter";
        xSeen = true;
        break;
      }
      case "--out":
        options.outPath = need();
        break;
      case "--agg": {
        const raw = need();
        if (raw !== "single" && raw !== "median") {
          throw new UsageError(`--agg must be single or median, got ${JSON.stringify(raw)}`);
        }
        options.aggregation = raw;
        break;
      }
      case "--title":
        options.title = need();
        break;
      case "--width":
        options.width = parsePositiveInt(need(), "--width");
        break;
      case "--height":
        options.height = parsePositiveInt(need(), "--height");
        break;
      default:
        throw new UsageError(`unknown flag ${JSON.stringify(flag)}`);
    }
  }
  if (options.csvPaths.length === 0 || !options.outPath || !xSeen) {
    throw new UsageError("--csv, --x and --out are required");
  }
  return options;
}

function parsePositiveInt(raw: string, flag: string): number {
  const value = Number(raw);
  if (!Number.isInteger(value) || value < 64) {
    throw new UsageError(`${flag} must be an integer >= 64, got ${JSON.stringify(raw)}`);
  }
  return value;
}

/** Output path for the k-th CSV; multiple inputs get the CSV stem appended. */
function outPathFor(options: CliOptions, csvPath: string): string {
  if (options.csvPaths.length === 1) {
    return options.outPath;
  }
  const pair = outputPair(options.outPath);
  const stem = pair.pngPath.slice(0, -".png".length);
  return `${stem}_${path.basename(csvPath, ".csv")}.png`;
}

export function runCli(argv: string[]): number {
  let options: CliOptions;
  try {
    options = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`error: ${err.message}\n${USAGE}\n`);
      return 2;
    }
    throw err;
  }
  try {
    for (const csvPath of options.csvPaths) {
      const files = render({
        csvPath,
        xAxis: options.xAxis,
        outPath: outPathFor(options, csvPath),
        aggregation: options.aggregation,
        title: options.title,
        width: options.width,
        height: options.height,
      });
      process.stdout.write(`wrote ${files.svgPath} and ${files.pngPath}\n`);
    }
    return 0;
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

const isMain =
  typeof process.argv[1] === "string" &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (isMain) {
  process.exit(runCli(process.argv.slice(2)));
}
