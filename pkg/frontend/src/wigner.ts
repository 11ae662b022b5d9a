/** Heatmap rendering of an exported Wigner grid (columns x,p,w). */

import { parseTable, SchemaError } from "./csv";
import * as svg from "./svg";

export interface WignerGrid {
  xAxis: number[];
  pAxis: number[];
  /** values[i][j] = W(pAxis[i], xAxis[j]), row-major as exported */
  values: number[][];
}

function uniqueSorted(vals: number[]): number[] {
  const out = Array.from(new Set(vals));
  out.sort((a, b) => a - b);
  return out;
}

export function readWignerGrid(text: string, source = "<csv>"): WignerGrid {
  const table = parseTable(text, ["x", "p", "w"], source);
  const xs = table.data.get("x")!;
  const ps = table.data.get("p")!;
  const ws = table.data.get("w")!;
  const xAxis = uniqueSorted(xs);
  const pAxis = uniqueSorted(ps);
  if (xAxis.length * pAxis.length !== table.rowCount) {
    throw new SchemaError(
      `${source}: rows do not form a full grid: ${xAxis.length} x values * ` +
        `${pAxis.length} p values != ${table.rowCount} rows`,
    );
  }
  const xIndex = new Map(xAxis.map((v, i) => [v, i]));
  const pIndex = new Map(pAxis.map((v, i) => [v, i]));
  const values = pAxis.map(() => new Array<number>(xAxis.length).fill(NaN));
  for (let r = 0; r < table.rowCount; r++) {
    values[pIndex.get(ps[r])!][xIndex.get(xs[r])!] = ws[r];
  }
  return { xAxis, pAxis, values };
}

export function renderWigner(grid: WignerGrid, title: string): string {
  const { left, right, top, bottom } = svg.MARGIN;
  const plotW = svg.WIDTH - left - right;
  const plotH = svg.HEIGHT - top - bottom;
  const x0 = grid.xAxis[0];
  const x1 = grid.xAxis[grid.xAxis.length - 1];
  const p0 = grid.pAxis[0];
  const p1 = grid.pAxis[grid.pAxis.length - 1];
  const sx = svg.linearScale(x0, x1, left, left + plotW);
  const sy = svg.linearScale(p0, p1, top + plotH, top); // p grows upward

  let wmax = 0;
  for (const row of grid.values) {
    for (const v of row) {
      wmax = Math.max(wmax, Math.abs(v));
    }
  }
  if (wmax === 0) wmax = 1;

  const cellW = plotW / grid.xAxis.length;
  const cellH = plotH / grid.pAxis.length;
  const parts: string[] = [];
  // run-length merge equal-colored neighbors so large grids stay compact
  for (let i = 0; i < grid.pAxis.length; i++) {
    const y = sy(grid.pAxis[i]) - cellH / 2;
    let runStart = 0;
    let runColor = svg.divergingColor(grid.values[i][0] / wmax);
    for (let j = 1; j <= grid.xAxis.length; j++) {
      const color = j < grid.xAxis.length ? svg.divergingColor(grid.values[i][j] / wmax) : "";
      if (color !== runColor) {
        if (runColor !== "#ffffff") {
          const xa = sx(grid.xAxis[runStart]) - cellW / 2;
          const w = (j - runStart) * cellW;
          parts.push(
            `<rect x="${xa.toFixed(2)}" y="${y.toFixed(2)}" width="${w.toFixed(2)}" ` +
              `height="${(cellH + 0.5).toFixed(2)}" fill="${runColor}"/>`,
          );
        }
        runStart = j;
        runColor = color;
      }
    }
  }

  parts.push(svg.axisBottom(sx, x0, x1, top + plotH, "x"));
  parts.push(svg.axisLeft(sy, p0, p1, left, "p"));
  parts.push(
    `<text x="${left + plotW / 2}" y="${top - 14}" text-anchor="middle" font-size="16">${svg.escapeXml(title)}</text>`,
  );

  // colorbar
  const barX = left + plotW + 25;
  const steps = 64;
  for (let k = 0; k < steps; k++) {
    const t = 1 - (2 * k) / (steps - 1);
    const y = top + (plotH * k) / steps;
    parts.push(
      `<rect x="${barX}" y="${y.toFixed(2)}" width="18" height="${(plotH / steps + 0.5).toFixed(2)}" ` +
        `fill="${svg.divergingColor(t)}"/>`,
    );
  }
  parts.push(`<text x="${barX + 24}" y="${top + 10}" font-size="12">${svg.fmt(wmax)}</text>`);
  parts.push(`<text x="${barX + 24}" y="${top + plotH / 2 + 4}" font-size="12">0</text>`);
  parts.push(`<text x="${barX + 24}" y="${top + plotH}" font-size="12">${svg.fmt(-wmax)}</text>`);

  return svg.document(parts.join("\n"));
}
