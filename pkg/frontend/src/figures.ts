/**
 * Figure renderers.  Every figure emits one <g class="series"
 * data-algorithm="..."> per distinct algorithm label, in sorted order, so
 * structural tests can count series and check plotted curve data without a
 * rasterizer.
 */

import {
  Curve, PairedCurve, ResultRow, SchemaError, distinctAlgorithms,
} from "./schema";
import * as svg from "./svg";

const X0 = svg.MARGIN.left;
const X1 = svg.WIDTH - svg.MARGIN.right;
const Y0 = svg.HEIGHT - svg.MARGIN.bottom;
const Y1 = svg.MARGIN.top;

function rateScale(): svg.Scale {
  return svg.linearScale(0, 1, Y0, Y1);
}

function series(algorithm: string, body: string): string {
  return `<g class="series" data-algorithm="${svg.esc(algorithm)}">${body}</g>`;
}

export function renderCurves(curves: Curve[]): string {
  const sorted = [...curves].sort((a, b) => a.algorithm.localeCompare(b.algorithm));
  const allBudgets = sorted.flatMap((c) => c.budgets);
  const x = svg.linearScale(Math.min(...allBudgets), Math.max(...allBudgets), X0, X1);
  const y = rateScale();
  const body = sorted.map((curve, i) => {
    const points = curve.budgets.map(
      (budget, j) => [x(budget), y(curve.rates[j])] as [number, number]);
    return series(curve.algorithm,
                  svg.polyline(points, svg.color(i), 'class="curve"'));
  });
  return svg.document(
    svg.axes("Success rate vs search budget", "states visited", "success rate") +
    body.join("\n") + svg.legend(sorted.map((c) => c.algorithm)));
}

export function renderBudgetCompare(paired: PairedCurve[]): string {
  const sorted = [...paired].sort((a, b) => a.algorithm.localeCompare(b.algorithm));
  const allBudgets = sorted.flatMap((c) => c.budgets);
  const x = svg.linearScale(Math.min(...allBudgets), Math.max(...allBudgets), X0, X1);
  const y = rateScale();
  const body = sorted.map((curve, i) => {
    const total = curve.budgets.map(
      (budget, j) => [x(budget), y(curve.ratesTotal[j])] as [number, number]);
    const high = curve.budgets.map(
      (budget, j) => [x(budget), y(curve.ratesHighLevelOnly[j])] as [number, number]);
    return series(curve.algorithm,
                  svg.polyline(total, svg.color(i), 'class="curve curve-total"') +
                  svg.polyline(high, svg.color(i),
                               'class="curve curve-high-level" stroke-dasharray="6 3"'));
  });
  return svg.document(
    svg.axes("Search budget: all states (solid) vs high-level only (dashed)",
             "budget", "success rate") +
    body.join("\n") + svg.legend(sorted.map((c) => c.algorithm)));
}

export function renderBars(rows: ResultRow[]): string {
  const algorithms = distinctAlgorithms(rows);
  const y = rateScale();
  const slot = (X1 - X0) / algorithms.length;
  const body = algorithms.map((algorithm, i) => {
    const mine = rows.filter((row) => row.algorithm === algorithm);
    const rate = mine.filter((row) => row.status === "solved").length / mine.length;
    const xLeft = X0 + i * slot + slot * 0.2;
    const barWidth = slot * 0.6;
    const yTop = y(rate);
    const bar = `<rect class="bar" x="${svg.fmt(xLeft)}" y="${svg.fmt(yTop)}" ` +
      `width="${svg.fmt(barWidth)}" height="${svg.fmt(Y0 - yTop)}" ` +
      `fill="${svg.color(i)}" data-rate="${String(rate)}"/>` +
      svg.text(xLeft + barWidth / 2, Y0 + 16, algorithm, 'text-anchor="middle"');
    return series(algorithm, bar);
  });
  return svg.document(
    svg.axes("Solved fraction by algorithm", "", "success rate") + body.join("\n"));
}

export function renderViolin(rows: ResultRow[]): string {
  const algorithms = distinctAlgorithms(rows);
  const lengths = rows.filter((row) => row.solutionLen !== null)
    .map((row) => row.solutionLen as number);
  if (lengths.length === 0) {
    throw new SchemaError("no solved rows: solution_len is empty everywhere");
  }
  const low = Math.min(...lengths);
  const high = Math.max(...lengths);
  const bins = 12;
  const y = svg.linearScale(low, high === low ? low + 1 : high, Y0, Y1);
  const slot = (X1 - X0) / algorithms.length;
  const body = algorithms.map((algorithm, i) => {
    const mine = rows.filter(
      (row) => row.algorithm === algorithm && row.solutionLen !== null)
      .map((row) => row.solutionLen as number);
    const center = X0 + i * slot + slot / 2;
    const label = svg.text(center, Y0 + 16, algorithm, 'text-anchor="middle"');
    if (mine.length === 0) {
      return series(algorithm, label);
    }
    const counts = new Array(bins).fill(0);
    const span = (high - low) || 1;
    for (const value of mine) {
      const bin = Math.min(bins - 1, Math.floor(((value - low) / span) * bins));
      counts[bin] += 1;
    }
    const peak = Math.max(...counts);
    const halfWidth = slot * 0.4;
    const right: [number, number][] = [];
    for (let b = 0; b < bins; b++) {
      const mid = low + ((b + 0.5) / bins) * span;
      right.push([center + (counts[b] / peak) * halfWidth, y(mid)]);
    }
    const left = right.map(([px, py]) => [2 * center - px, py] as [number, number]);
    const outline = [...right, ...left.reverse()];
    const points = outline.map(([px, py]) => `${svg.fmt(px)},${svg.fmt(py)}`).join(" ");
    const shape = `<polygon class="violin" points="${points}" ` +
      `fill="${svg.color(i)}" fill-opacity="0.55" stroke="${svg.color(i)}"/>`;
    return series(algorithm, shape + label);
  });
  return svg.document(
    svg.axes("Solution length distribution", "", "solution length") + body.join("\n"));
}
