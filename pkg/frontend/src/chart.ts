/** Dependency-free SVG line chart for absorbance spectra. */

import type { ChartSeries } from "./state.js";

export interface ChartOptions {
  width: number;
  height: number;
  marginLeft: number;
  marginRight: number;
  marginTop: number;
  marginBottom: number;
}

export const DEFAULT_OPTIONS: ChartOptions = {
  width: 640,
  height: 360,
  marginLeft: 52,
  marginRight: 16,
  marginTop: 12,
  marginBottom: 36,
};

interface Scale {
  (v: number): number;
}

function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

function niceTicks(lo: number, hi: number, count: number): number[] {
  const span = hi - lo || 1;
  const rawStep = span / count;
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rawStep) ?? mag * 10;
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let t = start; t <= hi + 1e-9; t += step) ticks.push(Number(t.toPrecision(10)));
  return ticks;
}

function polylinePoints(series: ChartSeries, sx: Scale, sy: Scale): string {
  return series.wavelengths
    .map((lam, i) => `${sx(lam).toFixed(1)},${sy(series.values[i]).toFixed(1)}`)
    .join(" ");
}

/**
 * Render the spectrum chart as an SVG element string.
 *
 * The model spectrum is drawn as a solid line; the analytic overlay, when
 * present, as a dashed line. Axis ranges adapt to the data, with the y-axis
 * floored at zero since absorbance is non-negative.
 */
export function renderChart(
  spectrum: ChartSeries | null,
  analytic: ChartSeries | null,
  options: ChartOptions = DEFAULT_OPTIONS,
): string {
  const { width, height, marginLeft, marginRight, marginTop, marginBottom } = options;
  const plotW = width - marginLeft - marginRight;
  const plotH = height - marginTop - marginBottom;

  const series = [spectrum, analytic].filter((s): s is ChartSeries => s !== null);
  if (series.length === 0) {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" role="img">` +
      `<text x="${width / 2}" y="${height / 2}" text-anchor="middle" fill="#888">no spectrum yet</text>` +
      `</svg>`
    );
  }

  const lams = series.flatMap((s) => s.wavelengths);
  const vals = series.flatMap((s) => s.values);
  const xLo = Math.min(...lams);
  const xHi = Math.max(...lams);
  const yLo = 0;
  const yHi = Math.max(0.1, Math.max(...vals) * 1.05);

  const sx = linearScale(xLo, xHi, marginLeft, marginLeft + plotW);
  const sy = linearScale(yLo, yHi, marginTop + plotH, marginTop);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" role="img">`,
  );
  parts.push(
    `<rect x="${marginLeft}" y="${marginTop}" width="${plotW}" height="${plotH}" fill="none" stroke="#ccc"/>`,
  );

  for (const t of niceTicks(xLo, xHi, 6)) {
    const x = sx(t).toFixed(1);
    parts.push(
      `<line x1="${x}" y1="${marginTop + plotH}" x2="${x}" y2="${marginTop + plotH + 4}" stroke="#888"/>`,
      `<text x="${x}" y="${marginTop + plotH + 18}" text-anchor="middle" font-size="11" fill="#444">${t}</text>`,
    );
  }
  for (const t of niceTicks(yLo, yHi, 5)) {
    const y = sy(t).toFixed(1);
    parts.push(
      `<line x1="${marginLeft - 4}" y1="${y}" x2="${marginLeft}" y2="${y}" stroke="#888"/>`,
      `<text x="${marginLeft - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="11" fill="#444">${t}</text>`,
    );
  }
  parts.push(
    `<text x="${marginLeft + plotW / 2}" y="${height - 4}" text-anchor="middle" font-size="12" fill="#222">wavelength (nm)</text>`,
  );

  if (analytic !== null) {
    parts.push(
      `<polyline points="${polylinePoints(analytic, sx, sy)}" fill="none" stroke="#d62728" stroke-width="1.5" stroke-dasharray="6 4"/>`,
    );
  }
  if (spectrum !== null) {
    parts.push(
      `<polyline points="${polylinePoints(spectrum, sx, sy)}" fill="none" stroke="#1f77b4" stroke-width="2"/>`,
    );
  }
  parts.push(`</svg>`);
  return parts.join("");
}
