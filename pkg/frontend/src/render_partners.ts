/**
 * Partner evolution for a focal cluster: a central lane with the yearly
 * top-k partners branching above and below, circle size = event count with
 * the focal cluster, plus a cumulative side panel.
 */

import { circle, line, scene, text, type RGB, type Scene } from "./scene.js";
import type { PartnerExport } from "./schema.js";

const DARK: RGB = [20, 20, 20];
const MAIN: RGB = [200, 80, 40];
const BRANCH: RGB = [120, 120, 120];
const NODE: RGB = [255, 220, 160];
const RING: RGB = [90, 90, 90];

const SLOT = 46;
const FONT = 9;

export function partnerRadius(count: number, maxCount: number): number {
  if (count <= 0 || maxCount <= 0) return 0;
  return 4 + 8 * Math.sqrt(count / maxCount);
}

export function renderPartners(pe: PartnerExport): Scene {
  const years = pe.years.map((y) => y.year);
  const startYear = years.length ? Math.min(...years) : 0;
  const endYear = years.length ? Math.max(...years) : 0;
  const maxRank = Math.max(1, ...pe.years.map((y) => y.partners.length));
  const tiers = Math.ceil(maxRank / 2) + 1;

  const cumulative = Object.entries(pe.cumulative).sort(
    (a, b) => b[1] - a[1] || a[0].localeCompare(b[0]),
  );
  const panelWidth = cumulative.length
    ? 30 + Math.max(...cumulative.map(([c, n]) => `${c} ${n}`.length)) * (FONT * 0.62)
    : 0;

  const left = 20 + pe.focal.length * (FONT * 0.62);
  const plotW = Math.max(280, (endYear - startYear) * 30);
  const width = Math.ceil(left + plotW + 30 + panelWidth);
  const height = Math.ceil(60 + tiers * SLOT * 2);
  const midY = height / 2;
  const s = scene(width, height);

  text(s, 10, 18, `Top-${pe.k} partners of ${pe.focal}`, 12, DARK);
  const xOf = (year: number) =>
    endYear === startYear
      ? left + plotW / 2
      : left + ((year - startYear) / (endYear - startYear)) * plotW;

  // central focal lane with year ticks
  line(s, left, midY, left + plotW, midY, MAIN, 3);
  text(s, left - 8, midY + FONT / 2 - 1, pe.focal, FONT + 1, DARK, "end");
  if (years.length) {
    const step = Math.max(1, Math.round((endYear - startYear) / 8) || 1);
    for (let year = startYear; year <= endYear; year += step) {
      line(s, xOf(year), midY - 3, xOf(year), midY + 3, MAIN, 1);
      const tie = pe.years.find((y) => y.year === year)?.tie ? "*" : "";
      text(s, xOf(year), height - 10, `${year}${tie}`, 9, DARK, "middle");
    }
  }

  const maxCount = Math.max(0, ...pe.years.flatMap((y) => y.partners.map((p) => p.count)));
  for (const row of pe.years) {
    const x = xOf(row.year);
    row.partners.forEach((partner, rank) => {
      const tier = Math.floor(rank / 2) + 1;
      const side = rank % 2 === 0 ? -1 : 1;
      const y = midY + side * tier * SLOT;
      const r = partnerRadius(partner.count, maxCount);
      line(s, x, midY, x, y, BRANCH, 1, 0.8);
      circle(s, x, y, r, NODE, RING);
      text(s, x, y + FONT / 2 - 1, String(partner.count), FONT, DARK, "middle");
      text(s, x, y + side * (r + 10) + FONT / 2 - 1, partner.cluster, FONT, DARK, "middle");
    });
  }

  if (cumulative.length) {
    const panelX = left + plotW + 30;
    text(s, panelX, 34, "Cumulative", FONT + 1, DARK);
    cumulative.forEach(([cluster, total], i) => {
      text(s, panelX, 50 + i * 14, `${cluster} ${total}`, FONT, DARK);
    });
  }
  return s;
}
