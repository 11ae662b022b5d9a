/** Multi-curve rendering of readout probability records (tau_s,p_g,p_e). */

import { parseTable, SchemaError } from "./csv";
import * as svg from "./svg";

export interface Curve {
  label: string;
  taus: number[];
  pG: number[];
}

export function readCurve(text: string, label: string, source = "<csv>"): Curve {
  const table = parseTable(text, ["tau_s", "p_g", "p_e"], source);
  const taus = table.data.get("tau_s")!;
  const pG = table.data.get("p_g")!;
  const pE = table.data.get("p_e")!;
  for (let r = 0; r < table.rowCount; r++) {
    if (Math.abs(pG[r] + pE[r] - 1) > 1e-6) {
      throw new SchemaError(`${source}: row ${r + 2}: columns 'p_g' and 'p_e' do not sum to 1`);
    }
  }
  return { label, taus, pG };
}

export function renderCurves(curves: Curve[], title: string): string {
  if (curves.length === 0) {
    throw new SchemaError("no curves to render");
  }
  const { left, right, top, bottom } = svg.MARGIN;
  const plotW = svg.WIDTH - left - right;
  const plotH = svg.HEIGHT - top - bottom;

  const tMax = Math.max(...curves.map((c) => Math.max(...c.taus)));
  const tMin = Math.min(...curves.map((c) => Math.min(...c.taus)));
  // microseconds read better on the axis
  const sx = svg.linearScale(tMin * 1e6, tMax * 1e6, left, left + plotW);
  const sy = svg.linearScale(0, 1, top + plotH, top);

  const parts: string[] = [];
  for (const frac of [0.25, 0.5, 0.75]) {
    const y = sy(frac);
    parts.push(
      `<line x1="${left}" y1="${y}" x2="${left + plotW}" y2="${y}" stroke="#dddddd" stroke-dasharray="4 3"/>`,
    );
  }
  curves.forEach((c, k) => {
    const color = svg.CURVE_COLORS[k % svg.CURVE_COLORS.length];
    const points = c.taus
      .map((t, r) => `${sx(t * 1e6).toFixed(2)},${sy(c.pG[r]).toFixed(2)}`)
      .join(" ");
    parts.push(`<polyline points="${points}" fill="none" stroke="${color}" stroke-width="2"/>`);
    const ly = top + 18 + 18 * k;
    const lx = left + plotW - 150;
    parts.push(`<line x1="${lx}" y1="${ly - 4}" x2="${lx + 26}" y2="${ly - 4}" stroke="${color}" stroke-width="2"/>`);
    parts.push(`<text x="${lx + 32}" y="${ly}" font-size="12">${svg.escapeXml(c.label)}</text>`);
  });

  parts.push(svg.axisBottom(sx, tMin * 1e6, tMax * 1e6, top + plotH, "tau (us)"));
  parts.push(svg.axisLeft(sy, 0, 1, left, "P_g"));
  parts.push(
    `<text x="${left + plotW / 2}" y="${top - 14}" text-anchor="middle" font-size="16">${svg.escapeXml(title)}</text>`,
  );
  return svg.document(parts.join("\n"));
}
