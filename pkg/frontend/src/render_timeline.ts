/**
 * Cluster timeline: one lane per cluster, circles for event activity
 * (size = event count, color = publication volume), vertical links for
 * cross-cluster pair-years (width = mean signal).
 */

import { circle, line, mix, rect, scene, text, type RGB, type Scene } from "./scene.js";
import type { TimelineExport } from "./schema.js";

const LANE: RGB = [210, 210, 210];
const DARK: RGB = [20, 20, 20];
const LINK: RGB = [70, 130, 180];
const PUB_LOW: RGB = [255, 247, 188];
const PUB_HIGH: RGB = [217, 35, 35];
const RING: RGB = [80, 80, 80];

const LANE_H = 26;
const FONT = 10;

export function circleRadius(events: number, maxEvents: number): number {
  if (events <= 0 || maxEvents <= 0) return 0;
  return 2.5 + 6 * Math.sqrt(events / maxEvents);
}

export function linkWidth(meanZ: number, maxZ: number): number {
  if (maxZ <= 0) return 1;
  return 1 + 3.5 * (meanZ / maxZ);
}

export function renderTimeline(tl: TimelineExport): Scene {
  const [startYear, endYear] = tl.window;
  const clusters = tl.clusters;
  const longest = Math.max(4, ...clusters.map((c) => c.length));
  const left = 16 + longest * (FONT * 0.62);
  const top = 34;
  const bottom = 30;
  const plotW = Math.max(280, (endYear - startYear) * 22);
  const width = Math.ceil(left + plotW + 24);
  const height = Math.ceil(top + Math.max(clusters.length, 1) * LANE_H + bottom);
  const s = scene(width, height);

  text(s, 10, 18, `Critical-year activity ${startYear}-${endYear}`, 12, DARK);

  const laneY = new Map(clusters.map((c, i) => [c, top + i * LANE_H + LANE_H / 2]));
  const xOf = (year: number) =>
    endYear === startYear
      ? left + plotW / 2
      : left + ((year - startYear) / (endYear - startYear)) * plotW;

  // axis frame and year ticks, present even when there is nothing to draw
  const axisY = top + Math.max(clusters.length, 1) * LANE_H + 6;
  line(s, left, axisY, left + plotW, axisY, DARK, 1);
  const step = Math.max(1, Math.round((endYear - startYear) / 8) || 1);
  for (let year = startYear; year <= endYear; year += step) {
    line(s, xOf(year), axisY, xOf(year), axisY + 4, DARK, 1);
    text(s, xOf(year), axisY + 16, String(year), 9, DARK, "middle");
  }

  for (const cluster of clusters) {
    const y = laneY.get(cluster)!;
    line(s, left, y, left + plotW, y, LANE, 1);
    text(s, left - 6, y + FONT / 2 - 1, cluster, FONT, DARK, "end");
  }

  const maxZ = Math.max(0, ...tl.links.map((l) => l.mean_z));
  for (const l of tl.links) {
    const ya = laneY.get(l.a);
    const yb = laneY.get(l.b);
    if (ya === undefined || yb === undefined) continue;
    line(s, xOf(l.year), ya, xOf(l.year), yb, LINK, linkWidth(l.mean_z, maxZ), 0.6);
  }

  const maxEvents = Math.max(0, ...tl.circles.map((c) => c.intra + c.cross));
  const maxPubs = Math.max(0, ...tl.circles.map((c) => c.publications));
  for (const c of tl.circles) {
    const y = laneY.get(c.cluster);
    if (y === undefined) continue;
    const events = c.intra + c.cross;
    if (events <= 0) continue;
    const fill = maxPubs > 0 ? mix(PUB_LOW, PUB_HIGH, c.publications / maxPubs) : PUB_LOW;
    circle(s, xOf(c.year), y, circleRadius(events, maxEvents), fill, RING);
  }
  return s;
}
