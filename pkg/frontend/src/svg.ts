/** Small deterministic SVG builder: fixed palette, fixed ordering. */

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN = { top: 36, right: 24, bottom: 48, left: 56 };

export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#17becf", "#7f7f7f",
];

export function color(index: number): string {
  return PALETTE[index % PALETTE.length];
}

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function fmt(value: number): string {
  return Number(value.toFixed(2)).toString();
}

export interface Scale {
  (value: number): number;
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (value: number) => r0 + ((value - d0) / span) * (r1 - r0);
}

export function polyline(points: [number, number][], stroke: string,
                         attrs = ""): string {
  const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline fill="none" stroke="${stroke}" stroke-width="2" ` +
         `points="${coords}" ${attrs}/>`;
}

export function text(x: number, y: number, content: string, attrs = ""): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}" font-family="sans-serif" ` +
         `font-size="12" ${attrs}>${esc(content)}</text>`;
}

export function axes(title: string, xLabel: string, yLabel: string): string {
  const x0 = MARGIN.left, x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom, y1 = MARGIN.top;
  return [
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#333"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#333"/>`,
    text((x0 + x1) / 2, HEIGHT - 12, xLabel, 'text-anchor="middle"'),
    text(14, (y0 + y1) / 2, yLabel,
         `text-anchor="middle" transform="rotate(-90 14 ${(y0 + y1) / 2})"`),
    text((x0 + x1) / 2, 20, title, 'text-anchor="middle" font-weight="bold"'),
  ].join("\n");
}

export function legend(labels: string[]): string {
  const parts: string[] = [];
  labels.forEach((label, i) => {
    const y = MARGIN.top + 6 + i * 16;
    const x = WIDTH - MARGIN.right - 150;
    parts.push(`<rect x="${x}" y="${y - 9}" width="10" height="10" fill="${color(i)}"/>`);
    parts.push(text(x + 14, y, label, 'class="legend-label"'));
  });
  return `<g class="legend">${parts.join("\n")}</g>`;
}

export function document(body: string): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
         `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">\n` +
         `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n` +
         body + "\n</svg>\n";
}
