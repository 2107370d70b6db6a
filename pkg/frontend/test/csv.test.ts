import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";
import { CsvError, loadSweep, loadTimeseries } from "../src/csv";

const GOLDEN = join(__dirname, "..", "golden");

function tempFile(name: string, content: string): string {
  const dir = mkdtempSync(join(tmpdir(), "csv-test-"));
  const path = join(dir, name);
  writeFileSync(path, content, "utf8");
  return path;
}

describe("loadTimeseries", () => {
  it("reads a golden timeseries file", () => {
    const rows = loadTimeseries(join(GOLDEN, "fig1_delta_-10.csv"));
    expect(rows.length).toBe(501);
    expect(rows[0].t).toBe(0);
    expect(rows[0].population).toBe(1);
    expect(rows[0].zeta2).toBeCloseTo(0.672453428015, 9);
  });

  it("names a missing file", () => {
    expect(() => loadTimeseries("/no/such/file.csv")).toThrowError(/no\/such\/file\.csv/);
  });

  it("names an empty file", () => {
    const path = tempFile("empty.csv", "");
    expect(() => loadTimeseries(path)).toThrowError(new RegExp(`empty CSV file: .*empty\\.csv`));
  });

  it("rejects a schema mismatch", () => {
    const path = tempFile("wrong.csv", "# schema: sweep v1\nt,population,xi2,zeta2\n0,1,1,0\n");
    expect(() => loadTimeseries(path)).toThrowError(CsvError);
    expect(() => loadTimeseries(path)).toThrowError(/expected schema "timeseries v1"/);
  });

  it("rejects a header mismatch", () => {
    const path = tempFile("head.csv", "# schema: timeseries v1\ntime,pop,xi2,zeta2\n0,1,1,0\n");
    expect(() => loadTimeseries(path)).toThrowError(/unexpected header/);
  });

  it("rejects a file without data rows", () => {
    const path = tempFile("norows.csv", "# schema: timeseries v1\nt,population,xi2,zeta2\n");
    expect(() => loadTimeseries(path)).toThrowError(/no data rows/);
  });

  it("maps empty fields to null markers", () => {
    const path = tempFile(
      "markers.csv",
      "# schema: timeseries v1\nt,population,xi2,zeta2\n0,1,0.5,0.5\n1,0.5,,\n",
    );
    const rows = loadTimeseries(path);
    expect(rows[1].xi2).toBeNull();
    expect(rows[1].zeta2).toBeNull();
  });
});

describe("loadSweep", () => {
  it("reads a golden sweep file", () => {
    const rows = loadSweep(join(GOLDEN, "fig4_sweep.csv"));
    expect(rows.length).toBe(400);
    expect(rows[0].delta).toBe(-1);
    expect(rows[0].boundState).toBe(true);
    expect(rows[rows.length - 1].boundState).toBe(false);
    expect(rows[rows.length - 1].zeta2Inf).toBe(0);
  });

  it("rejects malformed boolean flags", () => {
    const path = tempFile(
      "badbool.csv",
      "# schema: sweep v1\ndelta,steady_population,zeta2_inf,bound_state\n0,1,0.5,yes\n",
    );
    expect(() => loadSweep(path)).toThrowError(/bound_state/);
  });
});
