/**
 * Directory-level rendering: one figure per objective-surface CSV in a
 * simulator run directory.  Figures fail independently — a missing or
 * malformed CSV reports an error for that axis while the others render.
 */

import { promises as fs } from "fs";
import * as path from "path";

import { parseSurfaceCsv } from "./csv";
import { AXES, Axis, buildFigure } from "./figure";
import { renderFigureSvg } from "./svg";

export type OutputFormat = "svg" | "png";

export interface RenderRequest {
  runDir: string;
  outDir?: string;
  format?: OutputFormat;
}

export interface RenderResult {
  axis: Axis;
  csvPath: string;
  outputPath?: string;
  error?: string;
}

async function toPng(svgText: string): Promise<Buffer> {
  let resvg: typeof import("@resvg/resvg-js");
  try {
    resvg = await import("@resvg/resvg-js");
  } catch (err) {
    throw new Error(
      `PNG output needs the optional @resvg/resvg-js package, which failed to load ` +
        `(${(err as Error).message}); use --format svg instead`,
    );
  }
  const rendered = new resvg.Resvg(svgText, { fitTo: { mode: "original" } });
  return rendered.render().asPng();
}

/** Render all three axis figures for one run directory. */
export async function renderRunDirectory(request: RenderRequest): Promise<RenderResult[]> {
  const format: OutputFormat = request.format ?? "svg";
  const outDir = request.outDir ?? path.join(request.runDir, "figures");
  await fs.mkdir(outDir, { recursive: true });

  const results: RenderResult[] = [];
  for (const axis of AXES) {
    const csvPath = path.join(request.runDir, `surfaces_${axis}.csv`);
    const result: RenderResult = { axis, csvPath };
    try {
      const text = await fs.readFile(csvPath, "utf-8");
      const table = parseSurfaceCsv(text, csvPath);
      const model = buildFigure(axis, table, path.basename(csvPath));
      const svgText = renderFigureSvg(model);
      const outputPath = path.join(outDir, `figure_${axis}.${format}`);
      if (format === "png") {
        await fs.writeFile(outputPath, await toPng(svgText));
      } else {
        await fs.writeFile(outputPath, svgText, "utf-8");
      }
      result.outputPath = outputPath;
    } catch (err) {
      result.error = (err as Error).message;
    }
    results.push(result);
  }
  return results;
}
