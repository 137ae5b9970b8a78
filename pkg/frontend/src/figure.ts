/**
 * Figure model: what gets drawn, kept separate from how it gets drawn.
 * The model carries the raw CSV values untouched so renderers (and tests)
 * can always trace a plotted point back to its source number.
 */

import { CASE_COLUMNS, CaseColumn, SurfaceTable } from "./csv";

export type Axis = "angle" | "delay" | "doppler";

export const AXES: readonly Axis[] = ["angle", "delay", "doppler"];

export interface SeriesModel {
  name: CaseColumn;
  label: string;
  /** Raw objective values from the CSV (NaN where excluded). */
  values: number[];
  /** Index of the largest finite value (first occurrence), or null if none. */
  peakIndex: number | null;
}

export interface FigureModel {
  axis: Axis;
  title: string;
  xLabel: string;
  yLabel: string;
  /** Raw grid values from the CSV. */
  grid: number[];
  series: SeriesModel[];
  sourceFile: string;
}

const AXIS_PRESENTATION: Record<Axis, { title: string; xLabel: string }> = {
  angle: { title: "Objective vs. target angle", xLabel: "angle (degrees)" },
  delay: { title: "Objective vs. propagation delay", xLabel: "delay (seconds)" },
  doppler: { title: "Objective vs. Doppler frequency", xLabel: "Doppler frequency (Hz)" },
};

export const SERIES_LABELS: Record<CaseColumn, string> = {
  obj_original: "original waveform",
  obj_nsp_best: "null-space projection, best channel",
  obj_nsp_worst: "null-space projection, worst channel",
};

/** First index holding the maximum finite value; null when nothing is finite. */
export function peakIndexOf(values: readonly number[]): number | null {
  let peak: number | null = null;
  for (let i = 0; i < values.length; i++) {
    const v = values[i]!;
    if (!Number.isFinite(v)) continue;
    if (peak === null || v > values[peak]!) {
      peak = i;
    }
  }
  return peak;
}

export function buildFigure(axis: Axis, table: SurfaceTable, sourceFile: string): FigureModel {
  const presentation = AXIS_PRESENTATION[axis];
  return {
    axis,
    title: presentation.title,
    xLabel: presentation.xLabel,
    yLabel: "objective value",
    grid: table.gridValues,
    series: CASE_COLUMNS.map((name) => ({
      name,
      label: SERIES_LABELS[name],
      values: table.series[name],
      peakIndex: peakIndexOf(table.series[name]),
    })),
    sourceFile,
  };
}
