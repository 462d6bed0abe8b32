/**
 * Backend-neutral scene graph. Renderers emit primitives; the SVG writer and
 * the PNG rasterizer consume the same list, so the two formats cannot drift.
 */

export type RGB = [number, number, number];

export interface RectPrim {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill: RGB | null;
  stroke: RGB | null;
}

export interface LinePrim {
  kind: "line";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  stroke: RGB;
  width: number;
  opacity?: number;
}

export interface CirclePrim {
  kind: "circle";
  cx: number;
  cy: number;
  r: number;
  fill: RGB | null;
  stroke: RGB | null;
}

export type TextAnchor = "start" | "middle" | "end";

export interface TextPrim {
  kind: "text";
  x: number;
  y: number; // baseline
  text: string;
  size: number;
  fill: RGB;
  anchor: TextAnchor;
  vertical?: boolean; // rotated -90 degrees, reading bottom-up
}

export type Primitive = RectPrim | LinePrim | CirclePrim | TextPrim;

export interface Scene {
  width: number;
  height: number;
  background: RGB;
  prims: Primitive[];
}

export function scene(width: number, height: number, background: RGB = [255, 255, 255]): Scene {
  return { width, height, background, prims: [] };
}

export function rect(s: Scene, x: number, y: number, w: number, h: number,
                     fill: RGB | null, stroke: RGB | null = null): void {
  s.prims.push({ kind: "rect", x, y, w, h, fill, stroke });
}

export function line(s: Scene, x1: number, y1: number, x2: number, y2: number,
                     stroke: RGB, width = 1, opacity?: number): void {
  s.prims.push({ kind: "line", x1, y1, x2, y2, stroke, width, opacity });
}

export function circle(s: Scene, cx: number, cy: number, r: number,
                       fill: RGB | null, stroke: RGB | null = null): void {
  s.prims.push({ kind: "circle", cx, cy, r, fill, stroke });
}

export function text(s: Scene, x: number, y: number, value: string, size: number,
                     fill: RGB = [20, 20, 20], anchor: TextAnchor = "start",
                     vertical = false): void {
  s.prims.push({ kind: "text", x, y, text: value, size, fill, anchor, vertical });
}

// deterministic number formatting for SVG attributes
export function fmt(n: number): string {
  const rounded = Math.round(n * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

export function hex([r, g, b]: RGB): string {
  const h = (v: number) => Math.max(0, Math.min(255, Math.round(v))).toString(16).padStart(2, "0");
  return `#${h(r)}${h(g)}${h(b)}`;
}

/** Linear interpolation between two colors, t clamped to [0, 1]. */
export function mix(a: RGB, b: RGB, t: number): RGB {
  const u = Math.max(0, Math.min(1, t));
  return [
    a[0] + (b[0] - a[0]) * u,
    a[1] + (b[1] - a[1]) * u,
    a[2] + (b[2] - a[2]) * u,
  ];
}

function escapeXml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function toSvg(s: Scene): string {
  const out: string[] = [];
  out.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${s.width}" height="${s.height}" viewBox="0 0 ${s.width} ${s.height}">`);
  out.push(`<rect x="0" y="0" width="${s.width}" height="${s.height}" fill="${hex(s.background)}"/>`);
  for (const p of s.prims) {
    switch (p.kind) {
      case "rect": {
        const fill = p.fill ? hex(p.fill) : "none";
        const stroke = p.stroke ? ` stroke="${hex(p.stroke)}"` : "";
        out.push(`<rect x="${fmt(p.x)}" y="${fmt(p.y)}" width="${fmt(p.w)}" height="${fmt(p.h)}" fill="${fill}"${stroke}/>`);
        break;
      }
      case "line": {
        const opacity = p.opacity !== undefined ? ` stroke-opacity="${fmt(p.opacity)}"` : "";
        out.push(`<line x1="${fmt(p.x1)}" y1="${fmt(p.y1)}" x2="${fmt(p.x2)}" y2="${fmt(p.y2)}" stroke="${hex(p.stroke)}" stroke-width="${fmt(p.width)}"${opacity}/>`);
        break;
      }
      case "circle": {
        const fill = p.fill ? hex(p.fill) : "none";
        const stroke = p.stroke ? ` stroke="${hex(p.stroke)}"` : "";
        out.push(`<circle cx="${fmt(p.cx)}" cy="${fmt(p.cy)}" r="${fmt(p.r)}" fill="${fill}"${stroke}/>`);
        break;
      }
      case "text": {
        const transform = p.vertical
          ? ` transform="rotate(-90 ${fmt(p.x)} ${fmt(p.y)})"`
          : "";
        out.push(
          `<text x="${fmt(p.x)}" y="${fmt(p.y)}" font-family="monospace" font-size="${fmt(p.size)}" fill="${hex(p.fill)}" text-anchor="${p.anchor}"${transform}>${escapeXml(p.text)}</text>`,
        );
        break;
      }
    }
  }
  out.push("</svg>");
  return out.join("\n") + "\n";
}
