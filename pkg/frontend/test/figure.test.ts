import { describe, expect, it } from "vitest";

import { SurfaceTable } from "../src/csv";
import { buildFigure, peakIndexOf } from "../src/figure";

const TABLE: SurfaceTable = {
  gridValues: [0, 1, 2, 3],
  series: {
    obj_original: [0.1, 0.9, 0.4, 0.2],
    obj_nsp_best: [Number.NaN, 0.5, 0.6, 0.1],
    obj_nsp_worst: [Number.NaN, Number.NaN, Number.NaN, Number.NaN],
  },
};

describe("peakIndexOf", () => {
  it("returns the first index of the maximum finite value", () => {
    expect(peakIndexOf([1, 3, 3, 2])).toBe(1);
    expect(peakIndexOf([Number.NaN, 2, 5])).toBe(2);
  });

  it("returns null when nothing is finite", () => {
    expect(peakIndexOf([Number.NaN, Number.NaN])).toBeNull();
    expect(peakIndexOf([])).toBeNull();
  });
});

describe("buildFigure", () => {
  it("keeps raw values and labels the axes", () => {
    const model = buildFigure("angle", TABLE, "surfaces_angle.csv");
    expect(model.xLabel).toContain("degrees");
    expect(model.yLabel).toBe("objective value");
    expect(model.grid).toBe(TABLE.gridValues); // same array, no copies or edits
    expect(model.series.map((s) => s.name)).toEqual([
      "obj_original",
      "obj_nsp_best",
      "obj_nsp_worst",
    ]);
    expect(model.series[0]!.peakIndex).toBe(1);
    expect(model.series[1]!.peakIndex).toBe(2);
    expect(model.series[2]!.peakIndex).toBeNull();
    expect(model.sourceFile).toBe("surfaces_angle.csv");
  });

  it("uses axis-specific units for delay and doppler", () => {
    expect(buildFigure("delay", TABLE, "x").xLabel).toContain("seconds");
    expect(buildFigure("doppler", TABLE, "x").xLabel).toContain("Hz");
  });
});
