import * as fs from "fs";
import * as os from "os";
import * as path from "path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { main as renderWignerMain } from "../src/render_wigner";
import { main as renderCurvesMain } from "../src/render_curves";

const FIXTURES = path.join(__dirname, "fixtures");
let tmp: string;

beforeAll(() => {
  tmp = fs.mkdtempSync(path.join(os.tmpdir(), "figures-"));
});

afterAll(() => {
  fs.rmSync(tmp, { recursive: true, force: true });
});

describe("render_wigner", () => {
  it("renders the reference grid export", () => {
    const out = path.join(tmp, "wigner.svg");
    const rc = renderWignerMain([path.join(FIXTURES, "wigner_pure.csv"), out]);
    expect(rc).toBe(0);
    const svg = fs.readFileSync(out, "utf-8");
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("wigner_pure.csv");
  });

  it("rejects a schema-mismatch file without writing output", () => {
    const bad = path.join(tmp, "bad.csv");
    fs.writeFileSync(bad, "x,momentum,w\n0,0,1\n");
    const out = path.join(tmp, "never.svg");
    const rc = renderWignerMain([bad, out]);
    expect(rc).toBe(1);
    expect(fs.existsSync(out)).toBe(false);
  });

  it("rejects an empty file without writing output", () => {
    const empty = path.join(tmp, "empty.csv");
    fs.writeFileSync(empty, "");
    const out = path.join(tmp, "never2.svg");
    expect(renderWignerMain([empty, out])).toBe(1);
    expect(fs.existsSync(out)).toBe(false);
  });

  it("returns a usage error for wrong arity", () => {
    expect(renderWignerMain(["only-one-arg"])).toBe(2);
  });
});

describe("render_curves", () => {
  it("renders the reference curve family", () => {
    const out = path.join(tmp, "curves.svg");
    const rc = renderCurvesMain([
      path.join(FIXTURES, "curve_q1e5.csv"),
      path.join(FIXTURES, "curve_q5e5.csv"),
      out,
    ]);
    expect(rc).toBe(0);
    const svg = fs.readFileSync(out, "utf-8");
    expect(svg.startsWith("<svg")).toBe(true);
    expect((svg.match(/<polyline/g) ?? []).length).toBe(2);
    expect(svg).toContain("curve_q1e5");
    expect(svg).toContain("curve_q5e5");
  });

  it("rejects a wigner CSV passed as a curve", () => {
    const out = path.join(tmp, "never3.svg");
    const rc = renderCurvesMain([path.join(FIXTURES, "wigner_pure.csv"), out]);
    expect(rc).toBe(1);
    expect(fs.existsSync(out)).toBe(false);
  });

  it("returns a usage error when no inputs are given", () => {
    expect(renderCurvesMain(["just-output.svg"])).toBe(2);
  });
});
