/** Shared SVG scaffolding: layout, axes, colors. */

export const WIDTH = 800;
export const HEIGHT = 640;
export const MARGIN = { left: 70, right: 100, top: 40, bottom: 55 };

export interface Scale {
  (v: number): number;
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const k = (r1 - r0) / (d1 - d0);
  return (v: number) => r0 + (v - d0) * k;
}

export function fmt(v: number): string {
  // compact tick labels without trailing float noise
  const r = Math.round(v * 1e6) / 1e6;
  return String(r);
}

export function ticks(lo: number, hi: number, count = 8): number[] {
  const span = hi - lo;
  const rawStep = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const out: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12 * span; t += step) {
    out.push(Math.abs(t) < 1e-12 * span ? 0 : t);
  }
  return out;
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

/** Diverging blue-white-red map for t in [-1, 1]. */
export function divergingColor(t: number): string {
  const clamp = (v: number) => Math.max(0, Math.min(255, Math.round(v)));
  let r: number, g: number, b: number;
  if (t < 0) {
    const s = Math.min(1, -t);
    r = 255 * (1 - s);
    g = 255 * (1 - 0.7 * s);
    b = 255 * (1 - 0.2 * s);
  } else {
    const s = Math.min(1, t);
    r = 255 * (1 - 0.15 * s);
    g = 255 * (1 - 0.85 * s);
    b = 255 * (1 - 0.9 * s);
  }
  const hex = (v: number) => clamp(v).toString(16).padStart(2, "0");
  return `#${hex(r)}${hex(g)}${hex(b)}`;
}

export const CURVE_COLORS = ["#1f6fb4", "#d95f0e", "#2c9e4b", "#b03a9c", "#6d6d6d", "#a0522d"];

export function axisBottom(scale: Scale, lo: number, hi: number, y: number, label: string): string {
  const parts: string[] = [];
  parts.push(`<line x1="${scale(lo)}" y1="${y}" x2="${scale(hi)}" y2="${y}" stroke="black"/>`);
  for (const t of ticks(lo, hi)) {
    const x = scale(t);
    parts.push(`<line x1="${x}" y1="${y}" x2="${x}" y2="${y + 5}" stroke="black"/>`);
    parts.push(`<text x="${x}" y="${y + 20}" text-anchor="middle" font-size="12">${fmt(t)}</text>`);
  }
  const mid = (scale(lo) + scale(hi)) / 2;
  parts.push(`<text x="${mid}" y="${y + 40}" text-anchor="middle" font-size="14">${escapeXml(label)}</text>`);
  return parts.join("\n");
}

export function axisLeft(scale: Scale, lo: number, hi: number, x: number, label: string): string {
  const parts: string[] = [];
  parts.push(`<line x1="${x}" y1="${scale(lo)}" x2="${x}" y2="${scale(hi)}" stroke="black"/>`);
  for (const t of ticks(lo, hi)) {
    const y = scale(t);
    parts.push(`<line x1="${x - 5}" y1="${y}" x2="${x}" y2="${y}" stroke="black"/>`);
    parts.push(`<text x="${x - 8}" y="${y + 4}" text-anchor="end" font-size="12">${fmt(t)}</text>`);
  }
  const mid = (scale(lo) + scale(hi)) / 2;
  parts.push(
    `<text x="${x - 45}" y="${mid}" text-anchor="middle" font-size="14" transform="rotate(-90 ${x - 45} ${mid})">${escapeXml(label)}</text>`,
  );
  return parts.join("\n");
}

export function document(body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">\n` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}
