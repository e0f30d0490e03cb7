import { describe, expect, it } from "vitest";

import { CSV_HEADER, CsvFormatError, parseResultsCsv } from "../src/csv.js";

const HEADER = CSV_HEADER.join(",");

describe("parseResultsCsv", () => {
  it("parses well-formed rows", () => {
    const text = [
      HEADER,
      "ex1,misegm,0,1,17.5,2.25,1,0.4,0.125",
      "ex1,misegm,0,2,8.2500000000000004,1.5,0.25,0.20000000000000001,0.25",
    ].join("\n");
    const rows = parseResultsCsv(text + "\n");
    expect(rows).toHaveLength(2);
    expect(rows[0].problem).toBe("ex1");
    expect(rows[0].algorithm).toBe("misegm");
    expect(rows[0].iter).toBe(1);
    expect(rows[1].error).toBeCloseTo(8.25, 12);
    expect(rows[1].lambda).toBe(0.25);
    expect(rows[1].elapsedMs).toBe(0.25);
  });

  it("maps the failed sentinel to NaN", () => {
    const rows = parseResultsCsv(
      `${HEADER}\nex2,vsegm,0,3,failed,nan,nan,nan,1.5\n`,
    );
    expect(Number.isNaN(rows[0].error)).toBe(true);
    expect(Number.isNaN(rows[0].residual)).toBe(true);
    expect(rows[0].iter).toBe(3);
  });

  it("rejects a wrong header, naming the expected one", () => {
    expect(() => parseResultsCsv("a,b,c\n1,2,3\n")).toThrowError(/problem,algorithm/);
  });

  it("rejects empty input", () => {
    expect(() => parseResultsCsv("")).toThrowError(CsvFormatError);
  });

  it("reports the line number of malformed cells", () => {
    const bad = `${HEADER}\nex1,misegm,0,1,0.5,0.5,1,0.4,0.1\nex1,misegm,0,x,0.5,0.5,1,0.4,0.1\n`;
    expect(() => parseResultsCsv(bad)).toThrowError(/line 3/);
    const short = `${HEADER}\nex1,misegm,0\n`;
    expect(() => parseResultsCsv(short)).toThrowError(/expected 9 fields/);
    const notNum = `${HEADER}\nex1,misegm,0,1,abc,0.5,1,0.4,0.1\n`;
    expect(() => parseResultsCsv(notNum)).toThrowError(/error is not a number/);
  });

  it("accepts a header-only file as zero rows", () => {
    expect(parseResultsCsv(`${HEADER}\n`)).toEqual([]);
  });
});
