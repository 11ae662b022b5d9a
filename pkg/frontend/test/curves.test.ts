import { describe, expect, it } from "vitest";
import { SchemaError } from "../src/csv";
import { readCurve, renderCurves } from "../src/curves";

const GOOD = "tau_s,p_g,p_e\n1e-7,0.4,0.6\n2e-7,0.45,0.55\n3e-7,0.5,0.5\n";

describe("readCurve", () => {
  it("reads tau and P_g", () => {
    const c = readCurve(GOOD, "q5e5");
    expect(c.label).toBe("q5e5");
    expect(c.taus).toEqual([1e-7, 2e-7, 3e-7]);
    expect(c.pG).toEqual([0.4, 0.45, 0.5]);
  });

  it("rejects inconsistent probability columns", () => {
    const bad = "tau_s,p_g,p_e\n1e-7,0.4,0.9\n";
    expect(() => readCurve(bad, "x")).toThrow(/'p_g' and 'p_e' do not sum to 1/);
  });

  it("rejects the wigner header with a named column", () => {
    expect(() => readCurve("x,p,w\n1,2,3\n", "x")).toThrow(
      /expected column 1 to be 'tau_s', found 'x'/,
    );
  });
});

describe("renderCurves", () => {
  it("draws one polyline and one legend entry per curve, in order", () => {
    const a = readCurve(GOOD, "q1e5");
    const b = readCurve(GOOD.replace("0.4,0.6", "0.6,0.4"), "q5e5");
    const svg = renderCurves([a, b], "family");
    expect((svg.match(/<polyline/g) ?? []).length).toBe(2);
    expect(svg.indexOf("q1e5")).toBeGreaterThan(0);
    expect(svg.indexOf("q1e5")).toBeLessThan(svg.indexOf("q5e5"));
    expect(svg).toContain("P_g");
    expect(svg).toContain("tau (us)");
  });

  it("rejects an empty curve list", () => {
    expect(() => renderCurves([], "none")).toThrow(SchemaError);
  });
});
