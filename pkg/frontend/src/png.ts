/**
 * Raster backend: draws the scene into an RGBA buffer and encodes a PNG
 * using only node's zlib. Geometry matches the SVG output; text uses the
 * embedded 5x7 bitmap font, so SVG stays the fidelity format and PNG the
 * convenience one.
 */

import { deflateSync } from "node:zlib";

import { GLYPH_H, GLYPH_W, glyphOf } from "./font5x7.js";
import type { RGB, Scene, TextPrim } from "./scene.js";

class Raster {
  readonly w: number;
  readonly h: number;
  readonly data: Uint8Array;

  constructor(w: number, h: number, background: RGB) {
    this.w = w;
    this.h = h;
    this.data = new Uint8Array(w * h * 4);
    for (let i = 0; i < w * h; i++) {
      this.data[i * 4] = background[0];
      this.data[i * 4 + 1] = background[1];
      this.data[i * 4 + 2] = background[2];
      this.data[i * 4 + 3] = 255;
    }
  }

  set(x: number, y: number, [r, g, b]: RGB, alpha = 1): void {
    if (x < 0 || y < 0 || x >= this.w || y >= this.h) return;
    const i = (y * this.w + x) * 4;
    if (alpha >= 1) {
      this.data[i] = r;
      this.data[i + 1] = g;
      this.data[i + 2] = b;
    } else {
      this.data[i] = Math.round(r * alpha + this.data[i] * (1 - alpha));
      this.data[i + 1] = Math.round(g * alpha + this.data[i + 1] * (1 - alpha));
      this.data[i + 2] = Math.round(b * alpha + this.data[i + 2] * (1 - alpha));
    }
    this.data[i + 3] = 255;
  }

  fillRect(x0: number, y0: number, w: number, h: number, c: RGB): void {
    for (let y = Math.round(y0); y < Math.round(y0 + h); y++) {
      for (let x = Math.round(x0); x < Math.round(x0 + w); x++) {
        this.set(x, y, c);
      }
    }
  }

  strokeRect(x0: number, y0: number, w: number, h: number, c: RGB): void {
    const x1 = Math.round(x0);
    const y1 = Math.round(y0);
    const x2 = Math.round(x0 + w) - 1;
    const y2 = Math.round(y0 + h) - 1;
    for (let x = x1; x <= x2; x++) {
      this.set(x, y1, c);
      this.set(x, y2, c);
    }
    for (let y = y1; y <= y2; y++) {
      this.set(x1, y, c);
      this.set(x2, y, c);
    }
  }

  line(x1: number, y1: number, x2: number, y2: number, c: RGB, width: number, alpha = 1): void {
    const half = Math.max(width, 1) / 2;
    const minX = Math.floor(Math.min(x1, x2) - half - 1);
    const maxX = Math.ceil(Math.max(x1, x2) + half + 1);
    const minY = Math.floor(Math.min(y1, y2) - half - 1);
    const maxY = Math.ceil(Math.max(y1, y2) + half + 1);
    const dx = x2 - x1;
    const dy = y2 - y1;
    const lenSq = dx * dx + dy * dy;
    for (let y = minY; y <= maxY; y++) {
      for (let x = minX; x <= maxX; x++) {
        let t = lenSq === 0 ? 0 : ((x - x1) * dx + (y - y1) * dy) / lenSq;
        t = Math.max(0, Math.min(1, t));
        const px = x1 + t * dx;
        const py = y1 + t * dy;
        const dist = Math.hypot(x - px, y - py);
        if (dist <= half) this.set(x, y, c, alpha);
      }
    }
  }

  circle(cx: number, cy: number, r: number, fill: RGB | null, stroke: RGB | null): void {
    const minX = Math.floor(cx - r - 1);
    const maxX = Math.ceil(cx + r + 1);
    const minY = Math.floor(cy - r - 1);
    const maxY = Math.ceil(cy + r + 1);
    for (let y = minY; y <= maxY; y++) {
      for (let x = minX; x <= maxX; x++) {
        const d = Math.hypot(x - cx, y - cy);
        if (fill && d <= r) this.set(x, y, fill);
        if (stroke && Math.abs(d - r) <= 0.6) this.set(x, y, stroke);
      }
    }
  }

  text(p: TextPrim): void {
    const scale = Math.max(1, Math.round(p.size / 8));
    const advance = (GLYPH_W + 1) * scale;
    const widthPx = p.text.length * advance - scale;
    let shift = 0;
    if (p.anchor === "middle") shift = -Math.round(widthPx / 2);
    if (p.anchor === "end") shift = -widthPx;
    for (let ci = 0; ci < p.text.length; ci++) {
      const rows = glyphOf(p.text[ci]);
      for (let gy = 0; gy < GLYPH_H; gy++) {
        for (let gx = 0; gx < GLYPH_W; gx++) {
          if (!((rows[gy] >> (GLYPH_W - 1 - gx)) & 1)) continue;
          // glyph-local offsets relative to the baseline anchor point
          const dx = shift + ci * advance + gx * scale;
          const dy = (gy - GLYPH_H) * scale;
          if (p.vertical) {
            // rotate -90deg around (x, y): (dx, dy) -> (dy, -dx)
            this.fillRect(Math.round(p.x) + dy, Math.round(p.y) - dx - scale, scale, scale, p.fill);
          } else {
            this.fillRect(Math.round(p.x) + dx, Math.round(p.y) + dy, scale, scale, p.fill);
          }
        }
      }
    }
  }
}

// --- PNG encoding ------------------------------------------------------------

const CRC_TABLE = new Uint32Array(256);
for (let n = 0; n < 256; n++) {
  let c = n;
  for (let k = 0; k < 8; k++) {
    c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
  }
  CRC_TABLE[n] = c >>> 0;
}

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const byte of buf) {
    c = CRC_TABLE[(c ^ byte) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, payload: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(payload.length, 0);
  head.write(type, 4, "ascii");
  const body = Buffer.concat([head.subarray(4), payload]);
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([head, payload, crc]);
}

export function encodePng(width: number, height: number, rgba: Uint8Array): Buffer {
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  const raw = Buffer.alloc(height * (width * 4 + 1));
  for (let y = 0; y < height; y++) {
    raw[y * (width * 4 + 1)] = 0; // filter: none
    raw.set(rgba.subarray(y * width * 4, (y + 1) * width * 4), y * (width * 4 + 1) + 1);
  }
  const signature = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
  return Buffer.concat([
    signature,
    chunk("IHDR", ihdr),
    chunk("IDAT", deflateSync(raw, { level: 9 })),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function toPng(s: Scene): Buffer {
  const raster = new Raster(s.width, s.height, s.background);
  for (const p of s.prims) {
    switch (p.kind) {
      case "rect":
        if (p.fill) raster.fillRect(p.x, p.y, p.w, p.h, p.fill);
        if (p.stroke) raster.strokeRect(p.x, p.y, p.w, p.h, p.stroke);
        break;
      case "line":
        raster.line(p.x1, p.y1, p.x2, p.y2, p.stroke, p.width, p.opacity ?? 1);
        break;
      case "circle":
        raster.circle(p.cx, p.cy, p.r, p.fill, p.stroke);
        break;
      case "text":
        raster.text(p);
        break;
    }
  }
  return encodePng(s.width, s.height, raster.data);
}
