/**
 * Cluster-pair change matrix as an annotated heatmap. Every cell annotation
 * is the exact integer from the export; colors only encode sign/magnitude.
 */

import { mix, rect, line, scene, text, type RGB, type Scene } from "./scene.js";
import type { DeltaMatrixExport } from "./schema.js";

const POSITIVE: RGB = [33, 102, 172];
const NEGATIVE: RGB = [178, 24, 43];
const WHITE: RGB = [255, 255, 255];
const GRID: RGB = [190, 190, 190];
const DARK: RGB = [20, 20, 20];
const SEPARATOR: RGB = [60, 60, 60];

const CELL = 34;
const FONT = 10;

function cellColor(value: number, maxAbs: number): RGB {
  if (value === 0 || maxAbs === 0) return WHITE;
  const t = Math.abs(value) / maxAbs;
  return mix(WHITE, value > 0 ? POSITIVE : NEGATIVE, 0.15 + 0.85 * t);
}

function textColor(value: number, maxAbs: number): RGB {
  return maxAbs > 0 && Math.abs(value) / maxAbs > 0.55 ? WHITE : DARK;
}

export function renderDeltaMatrix(dm: DeltaMatrixExport): Scene {
  const n = dm.clusters.length;
  const longest = Math.max(5, ...dm.clusters.map((c) => c.length));
  const left = 14 + longest * (FONT * 0.62);
  const top = 30 + longest * (FONT * 0.62);
  const right = CELL * 1.6 + 20; // totals column
  const bottom = 16;
  const width = Math.ceil(left + n * CELL + right);
  const height = Math.ceil(top + n * CELL + bottom);
  const s = scene(Math.max(width, 320), Math.max(height, 160));

  text(s, 10, 18, `Cross-cluster change: ${dm.period_b} vs ${dm.period_a}`, 12, DARK);
  const maxAbs = Math.max(0, ...dm.matrix.flat().map((v) => Math.abs(v)));

  for (let i = 0; i < n; i++) {
    const y = top + i * CELL;
    text(s, left - 6, y + CELL / 2 + FONT / 2 - 1, dm.clusters[i], FONT, DARK, "end");
    text(s, left + i * CELL + CELL / 2 + FONT / 2 - 1, top - 6, dm.clusters[i], FONT, DARK, "start", true);
    for (let j = 0; j < n; j++) {
      const x = left + j * CELL;
      const v = dm.matrix[i][j];
      rect(s, x, y, CELL, CELL, cellColor(v, maxAbs), GRID);
      text(s, x + CELL / 2, y + CELL / 2 + FONT / 2 - 1, String(v), FONT, textColor(v, maxAbs), "middle");
    }
    const totalX = left + n * CELL + 12;
    rect(s, totalX, y, CELL * 1.6, CELL, WHITE, GRID);
    text(s, totalX + (CELL * 1.6) / 2, y + CELL / 2 + FONT / 2 - 1,
         String(dm.row_totals[i]), FONT, DARK, "middle");
  }
  if (n > 0) {
    text(s, left + n * CELL + 12 + (CELL * 1.6) / 2, top - 6, "Total", FONT, DARK, "start", true);
  }

  // heavier separators where the discipline group changes
  for (let i = 1; i < n; i++) {
    const prev = dm.groups[dm.clusters[i - 1]];
    const cur = dm.groups[dm.clusters[i]];
    if (prev !== cur) {
      line(s, left, top + i * CELL, left + n * CELL, top + i * CELL, SEPARATOR, 2);
      line(s, left + i * CELL, top, left + i * CELL, top + n * CELL, SEPARATOR, 2);
    }
  }
  return s;
}
