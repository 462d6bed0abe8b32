import { readFileSync, writeFileSync } from "node:fs";

import { toPng } from "./png.js";
import { toSvg, type Scene } from "./scene.js";
import { renderDeltaMatrix } from "./render_delta.js";
import { renderPartners } from "./render_partners.js";
import { renderTimeline } from "./render_timeline.js";
import {
  validateExport,
  type DeltaMatrixExport,
  type FigureKind,
  type PartnerExport,
  type TimelineExport,
} from "./schema.js";

export { renderDeltaMatrix, renderPartners, renderTimeline, toPng, toSvg, validateExport };
export { partnerRadius } from "./render_partners.js";
export { circleRadius, linkWidth } from "./render_timeline.js";
export { SchemaError } from "./schema.js";

export const FIGURE_KINDS: FigureKind[] = ["timeline", "delta-matrix", "partner-evolution"];

export function buildScene(kind: FigureKind, raw: unknown): Scene {
  const data = validateExport(raw, kind);
  switch (kind) {
    case "timeline":
      return renderTimeline(data as TimelineExport);
    case "delta-matrix":
      return renderDeltaMatrix(data as DeltaMatrixExport);
    case "partner-evolution":
      return renderPartners(data as PartnerExport);
  }
}

export interface RenderSpec {
  kind: FigureKind;
  input: string;
  output: string;
  format: "svg" | "png";
}

export function render(spec: RenderSpec): void {
  const raw = JSON.parse(readFileSync(spec.input, "utf-8"));
  const s = buildScene(spec.kind, raw);
  if (spec.format === "svg") {
    writeFileSync(spec.output, toSvg(s), "utf-8");
  } else {
    writeFileSync(spec.output, toPng(s));
  }
}
