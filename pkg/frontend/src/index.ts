export { CASE_COLUMNS, CsvSchemaError, EXPECTED_HEADER, parseSurfaceCsv } from "./csv";
export type { CaseColumn, SurfaceTable } from "./csv";
export { AXES, SERIES_LABELS, buildFigure, peakIndexOf } from "./figure";
export type { Axis, FigureModel, SeriesModel } from "./figure";
export { readEmbeddedFigureData, renderFigureSvg } from "./svg";
export type { EmbeddedFigureData, EmbeddedSeries, RenderOptions } from "./svg";
export { renderRunDirectory } from "./render";
export type { OutputFormat, RenderRequest, RenderResult } from "./render";
export { runCli } from "./cli";
