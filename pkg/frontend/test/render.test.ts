import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { CSV_HEADER } from "../src/csv.js";
import { runCli } from "../src/cli.js";
import { outputPair, render } from "../src/render.js";

const ALGOS = ["misegm", "mitegm", "masegm", "mategm", "hsegm", "vsegm", "tvegm"];

let workdir: string;

beforeEach(() => {
  workdir = fs.mkdtempSync(path.join(os.tmpdir(), "viplot-"));
});

afterEach(() => {
  fs.rmSync(workdir, { recursive: true, force: true });
});

function sampleCsv(iters = 5): string {
  const lines = [CSV_HEADER.join(",")];
  for (const algo of ALGOS) {
    for (let n = 1; n <= iters; n++) {
      const error = 10 / Math.pow(2 + ALGOS.indexOf(algo), n);
      lines.push(`ex1,${algo},0,${n},${error},${error / 2},1,0.4,${n * 0.25}`);
    }
  }
  const file = path.join(workdir, "ex1_comparison.csv");
  fs.writeFileSync(file, lines.join("\n") + "\n");
  return file;
}

describe("render", () => {
  it("writes both svg and png with one curve per algorithm", () => {
    const csv = sampleCsv();
    const out = path.join(workdir, "fig.png");
    const files = render({ csvPath: csv, xAxis: "iter", outPath: out });
    expect(fs.existsSync(files.pngPath)).toBe(true);
    expect(fs.existsSync(files.svgPath)).toBe(true);
    const svg = fs.readFileSync(files.svgPath, "utf-8");
    const curveCount = (svg.match(/<polyline /g) ?? []).length;
    expect(curveCount).toBe(ALGOS.length);
    for (const algo of ALGOS) {
      expect(svg).toContain(`data-algorithm="${algo}"`);
      expect(svg).toContain(`>${algo}</text>`); // legend label
    }
    const png = fs.readFileSync(files.pngPath);
    expect([...png.subarray(0, 4)]).toEqual([0x89, 0x50, 0x4e, 0x47]);
  });

  it("is deterministic for fixed input", () => {
    const csv = sampleCsv();
    const a = render({ csvPath: csv, xAxis: "iter", outPath: path.join(workdir, "a.png") });
    const b = render({ csvPath: csv, xAxis: "iter", outPath: path.join(workdir, "b.png") });
    expect(fs.readFileSync(a.svgPath, "utf-8")).toBe(fs.readFileSync(b.svgPath, "utf-8"));
    expect(fs.readFileSync(a.pngPath).equals(fs.readFileSync(b.pngPath))).toBe(true);
  });

  it("does not modify the input csv", () => {
    const csv = sampleCsv();
    const before = fs.readFileSync(csv, "utf-8");
    render({ csvPath: csv, xAxis: "elapsed_ms", outPath: path.join(workdir, "t.png") });
    expect(fs.readFileSync(csv, "utf-8")).toBe(before);
  });

  it("derives sibling output names", () => {
    expect(outputPair("fig.png")).toEqual({ svgPath: "fig.svg", pngPath: "fig.png" });
    expect(outputPair("fig.svg")).toEqual({ svgPath: "fig.svg", pngPath: "fig.png" });
    expect(outputPair("fig")).toEqual({ svgPath: "fig.svg", pngPath: "fig.png" });
  });
});

describe("runCli", () => {
  it("renders iteration and time figures, exit 0", () => {
    const csv = sampleCsv();
    const outIter = path.join(workdir, "iter.png");
    const outTime = path.join(workdir, "time.png");
    expect(runCli(["plot", "--csv", csv, "--x", "iter", "--out", outIter])).toBe(0);
    expect(runCli(["plot", "--csv", csv, "--x", "time", "--out", outTime])).toBe(0);
    const iterSvg = fs.readFileSync(path.join(workdir, "iter.svg"), "utf-8");
    const timeSvg = fs.readFileSync(path.join(workdir, "time.svg"), "utf-8");
    expect(iterSvg).toContain(">iteration</text>");
    expect(timeSvg).toContain(">elapsed ms</text>");
  });

  it("fails with a message on a header-only csv", () => {
    const file = path.join(workdir, "empty.csv");
    fs.writeFileSync(file, CSV_HEADER.join(",") + "\n");
    const rc = runCli(["plot", "--csv", file, "--x", "iter", "--out", path.join(workdir, "o.png")]);
    expect(rc).toBe(1);
  });

  it("fails on a missing file or wrong schema", () => {
    expect(
      runCli(["plot", "--csv", path.join(workdir, "gone.csv"), "--x", "iter", "--out", "o.png"]),
    ).toBe(1);
    const bad = path.join(workdir, "bad.csv");
    fs.writeFileSync(bad, "a,b\n1,2\n");
    expect(runCli(["plot", "--csv", bad, "--x", "iter", "--out", path.join(workdir, "o.png")])).toBe(1);
  });

  it("rejects usage errors with exit 2", () => {
    expect(runCli(["plot"])).toBe(2);
    expect(runCli(["plot", "--csv", "x.csv", "--x", "banana", "--out", "o.png"])).toBe(2);
    expect(runCli(["plot", "--csv", "x.csv", "--x", "iter"])).toBe(2);
    expect(runCli(["nope"])).toBe(2);
    expect(runCli(["plot", "--csv", "x.csv", "--x", "iter", "--out", "o.png", "--width", "10"])).toBe(2);
  });

  it("renders one figure per csv when several are given", () => {
    const csv1 = sampleCsv();
    const csv2 = path.join(workdir, "ex2_comparison.csv");
    fs.copyFileSync(csv1, csv2);
    const out = path.join(workdir, "multi.png");
    expect(runCli(["plot", "--csv", csv1, "--csv", csv2, "--x", "iter", "--out", out])).toBe(0);
    expect(fs.existsSync(path.join(workdir, "multi_ex1_comparison.png"))).toBe(true);
    expect(fs.existsSync(path.join(workdir, "multi_ex2_comparison.svg"))).toBe(true);
  });

  it("truncates a failed run's curve but keeps the others", () => {
    const lines = [CSV_HEADER.join(",")];
    lines.push("ex1,misegm,0,1,1.0,0.5,1,0.4,0.1");
    lines.push("ex1,misegm,0,2,0.5,0.25,1,0.4,0.2");
    lines.push("ex1,vsegm,0,1,1.0,0.5,1,0,0.1");
    lines.push("ex1,vsegm,0,2,failed,nan,nan,nan,0.2");
    const file = path.join(workdir, "mixed.csv");
    fs.writeFileSync(file, lines.join("\n") + "\n");
    const out = path.join(workdir, "mixed.png");
    expect(runCli(["plot", "--csv", file, "--x", "iter", "--out", out])).toBe(0);
    const svg = fs.readFileSync(path.join(workdir, "mixed.svg"), "utf-8");
    const vsegmLine = svg.split("\n").find((l) => l.includes('data-algorithm="vsegm"'));
    // one surviving point for the failed run
    expect((vsegmLine?.match(/,/g) ?? []).length).toBe(1);
  });
});
