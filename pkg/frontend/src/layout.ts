/**
 * Node placement: seed from `pos` attributes when present, deterministic
 * force-directed relaxation for the rest. Pure and reproducible — the
 * same document always lays out the same way.
 */

import type { GraphDoc } from "./dsl.js";

export interface Point {
  x: number;
  y: number;
}

export type Layout = Map<string, Point>;

/** Deterministic pseudo-random stream (mulberry32). */
export function seededRandom(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function hashName(name: string): number {
  let h = 2166136261;
  for (let i = 0; i < name.length; i++) {
    h ^= name.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  margin?: number;
}

export function layoutGraph(doc: GraphDoc, opts: LayoutOptions): Layout {
  const { width, height } = opts;
  const iterations = opts.iterations ?? 150;
  const margin = opts.margin ?? 40;
  const points: Layout = new Map();
  const pinned = new Set<string>();

  // pos attributes are in the document's bounding box (default unit square)
  const bb = (doc.metadata["bb"] ?? "0,0,1,1").split(",").map(Number);
  const [bx0, by0, bx1, by1] = bb.length === 4 ? bb : [0, 0, 1, 1];
  const sx = (x: number) =>
    margin + ((x - bx0) / (bx1 - bx0 || 1)) * (width - 2 * margin);
  const sy = (y: number) =>
    margin + ((y - by0) / (by1 - by0 || 1)) * (height - 2 * margin);

  for (const node of doc.nodes) {
    if (node.pos) {
      points.set(node.name, { x: sx(node.pos.x), y: sy(node.pos.y) });
      pinned.add(node.name);
    } else {
      const rand = seededRandom(hashName(node.name));
      points.set(node.name, {
        x: margin + rand() * (width - 2 * margin),
        y: margin + rand() * (height - 2 * margin),
      });
    }
  }

  const names = doc.nodes.map((n) => n.name);
  if (names.length <= 1 || pinned.size === names.length) return points;

  const ideal = Math.min(width, height) / Math.max(2, Math.sqrt(names.length) + 1);
  const neighbors = doc.edges.map((e) => [e.tail, e.head] as const);

  for (let iter = 0; iter < iterations; iter++) {
    const temp = (1 - iter / iterations) * ideal * 0.5;
    const force = new Map(names.map((n) => [n, { x: 0, y: 0 }]));
    for (let i = 0; i < names.length; i++) {
      for (let j = i + 1; j < names.length; j++) {
        const a = points.get(names[i])!;
        const b = points.get(names[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        const d2 = Math.max(dx * dx + dy * dy, 0.01);
        const d = Math.sqrt(d2);
        const rep = (ideal * ideal) / d2;
        dx /= d;
        dy /= d;
        force.get(names[i])!.x += dx * rep;
        force.get(names[i])!.y += dy * rep;
        force.get(names[j])!.x -= dx * rep;
        force.get(names[j])!.y -= dy * rep;
      }
    }
    for (const [tail, head] of neighbors) {
      const a = points.get(tail);
      const b = points.get(head);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.max(Math.hypot(dx, dy), 0.1);
      const att = (d * d) / ideal / d;
      const fa = force.get(tail)!;
      const fb = force.get(head)!;
      fa.x += dx * att * 0.05;
      fa.y += dy * att * 0.05;
      fb.x -= dx * att * 0.05;
      fb.y -= dy * att * 0.05;
    }
    for (const name of names) {
      if (pinned.has(name)) continue;
      const p = points.get(name)!;
      const f = force.get(name)!;
      const mag = Math.max(Math.hypot(f.x, f.y), 0.01);
      const step = Math.min(mag, temp);
      p.x = clamp(p.x + (f.x / mag) * step, margin, width - margin);
      p.y = clamp(p.y + (f.y / mag) * step, margin, height - margin);
    }
  }
  return points;
}

function clamp(v: number, lo: number, hi: number): number {
  return Math.min(Math.max(v, lo), hi);
}
