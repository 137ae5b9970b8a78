/**
 * SVG renderer for figure models.
 *
 * Every emitted file embeds the raw plotted data as JSON inside a
 * `<metadata id="figure-data">` element (NaN encoded as null), so the exact
 * source numbers can be read back out of the figure itself.
 */

import { CaseColumn } from "./csv";
import { Axis, FigureModel } from "./figure";

export interface RenderOptions {
  width?: number;
  height?: number;
}

export interface EmbeddedSeries {
  name: CaseColumn;
  label: string;
  peakIndex: number | null;
  /** Raw values; null stands for NaN (JSON has no NaN). */
  values: (number | null)[];
}

export interface EmbeddedFigureData {
  axis: Axis;
  sourceFile: string;
  grid: number[];
  series: EmbeddedSeries[];
}

const SERIES_COLORS: Record<CaseColumn, string> = {
  obj_original: "#1f77b4",
  obj_nsp_best: "#2ca02c",
  obj_nsp_worst: "#d62728",
};

const MARGIN = { top: 48, right: 36, bottom: 58, left: 86 } as const;

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function formatTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e5 || abs < 1e-3) {
    return value.toExponential(2);
  }
  return String(Number(value.toPrecision(6)));
}

function ticks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(lo + ((hi - lo) * i) / (count - 1));
  }
  return out;
}

function polylineSegments(
  xs: number[],
  ys: number[],
  toX: (v: number) => number,
  toY: (v: number) => number,
): string[] {
  const segments: string[] = [];
  let current: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    const y = ys[i]!;
    if (Number.isFinite(y)) {
      current.push(`${toX(xs[i]!).toFixed(2)},${toY(y).toFixed(2)}`);
    } else if (current.length > 0) {
      segments.push(current.join(" "));
      current = [];
    }
  }
  if (current.length > 0) {
    segments.push(current.join(" "));
  }
  return segments;
}

/** Render one figure model to a standalone SVG document. */
export function renderFigureSvg(model: FigureModel, options: RenderOptions = {}): string {
  const width = options.width ?? 860;
  const height = options.height ?? 560;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const xLo = model.grid.length > 0 ? model.grid[0]! : 0;
  const xHi = model.grid.length > 0 ? model.grid[model.grid.length - 1]! : 1;
  let yHi = Number.NEGATIVE_INFINITY;
  let yLo = 0;
  for (const series of model.series) {
    for (const v of series.values) {
      if (Number.isFinite(v)) {
        if (v > yHi) yHi = v;
        if (v < yLo) yLo = v;
      }
    }
  }
  if (!Number.isFinite(yHi) || yHi <= yLo) {
    yHi = yLo + 1;
  }

  const xSpan = xHi > xLo ? xHi - xLo : 1;
  const ySpan = yHi - yLo;
  const toX = (v: number) => MARGIN.left + ((v - xLo) / xSpan) * plotW;
  const toY = (v: number) => MARGIN.top + plotH - ((v - yLo) / ySpan) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
  );

  const embedded: EmbeddedFigureData = {
    axis: model.axis,
    sourceFile: model.sourceFile,
    grid: model.grid,
    series: model.series.map((s) => ({
      name: s.name,
      label: s.label,
      peakIndex: s.peakIndex,
      values: s.values.map((v) => (Number.isFinite(v) ? v : null)),
    })),
  };
  parts.push(`<metadata id="figure-data">${escapeXml(JSON.stringify(embedded))}</metadata>`);

  parts.push(`<rect width="${width}" height="${height}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${width / 2}" y="26" text-anchor="middle" font-size="17" font-weight="bold">` +
      `${escapeXml(model.title)}</text>`,
  );

  // frame and grid lines
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="#333333" stroke-width="1"/>`,
  );
  for (const tx of ticks(xLo, xHi, 7)) {
    const px = toX(tx).toFixed(2);
    parts.push(
      `<line x1="${px}" y1="${MARGIN.top}" x2="${px}" y2="${MARGIN.top + plotH}" ` +
        `stroke="#dddddd" stroke-width="0.7"/>`,
    );
    parts.push(
      `<text x="${px}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" font-size="11">` +
        `${escapeXml(formatTick(tx))}</text>`,
    );
  }
  for (const ty of ticks(yLo, yHi, 6)) {
    const py = toY(ty).toFixed(2);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${py}" x2="${MARGIN.left + plotW}" y2="${py}" ` +
        `stroke="#dddddd" stroke-width="0.7"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${Number(py) + 4}" text-anchor="end" font-size="11">` +
        `${escapeXml(formatTick(ty))}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 14}" text-anchor="middle" font-size="13">` +
      `${escapeXml(model.xLabel)}</text>`,
  );
  parts.push(
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${escapeXml(model.yLabel)}</text>`,
  );

  // series
  for (const series of model.series) {
    const color = SERIES_COLORS[series.name];
    for (const points of polylineSegments(model.grid, series.values, toX, toY)) {
      parts.push(
        `<polyline points="${points}" fill="none" stroke="${color}" stroke-width="1.6" ` +
          `data-series="${series.name}"/>`,
      );
    }
    if (series.peakIndex !== null) {
      const px = toX(model.grid[series.peakIndex]!).toFixed(2);
      const py = toY(series.values[series.peakIndex]!).toFixed(2);
      parts.push(
        `<circle cx="${px}" cy="${py}" r="4" fill="${color}" stroke="#ffffff" ` +
          `stroke-width="1" data-peak-of="${series.name}"/>`,
      );
    }
  }

  // legend
  const legendX = MARGIN.left + 12;
  let legendY = MARGIN.top + 16;
  for (const series of model.series) {
    const color = SERIES_COLORS[series.name];
    parts.push(
      `<line x1="${legendX}" y1="${legendY - 4}" x2="${legendX + 26}" y2="${legendY - 4}" ` +
        `stroke="${color}" stroke-width="2.2"/>`,
    );
    parts.push(
      `<text x="${legendX + 32}" y="${legendY}" font-size="12">${escapeXml(series.label)}</text>`,
    );
    legendY += 18;
  }

  parts.push("</svg>");
  return parts.join("\n");
}

const METADATA_PATTERN = /<metadata id="figure-data">([\s\S]*?)<\/metadata>/;

function unescapeXml(text: string): string {
  return text
    .replace(/&quot;/g, '"')
    .replace(/&gt;/g, ">")
    .replace(/&lt;/g, "<")
    .replace(/&amp;/g, "&");
}

/** Recover the exact plotted data from an emitted SVG document. */
export function readEmbeddedFigureData(svgText: string): EmbeddedFigureData {
  const match = METADATA_PATTERN.exec(svgText);
  if (!match) {
    throw new Error("SVG document carries no figure-data metadata element");
  }
  return JSON.parse(unescapeXml(match[1]!)) as EmbeddedFigureData;
}
