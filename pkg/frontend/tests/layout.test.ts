import { describe, expect, it } from "vitest";

import { parseDsl } from "../src/dsl.js";
import { layoutGraph, seededRandom } from "../src/layout.js";

const OPTS = { width: 800, height: 600 };

describe("layoutGraph", () => {
  it("is deterministic", () => {
    const doc = parseDsl("pdag { A [exposure] A -> Y1 U1 -> Y0 U1 -> Y1 U2 -- U1 }");
    const a = layoutGraph(doc, OPTS);
    const b = layoutGraph(doc, OPTS);
    for (const [name, p] of a) expect(b.get(name)).toEqual(p);
  });

  it("pins nodes with pos attributes to scaled coordinates", () => {
    const doc = parseDsl(
      'pdag { bb="0,0,1,1" A [exposure,pos="0.5,0.5"] A -> Y1 Y0 }',
    );
    const layout = layoutGraph(doc, { ...OPTS, margin: 40 });
    expect(layout.get("A")).toEqual({ x: 400, y: 300 });
  });

  it("keeps every node inside the viewport margins", () => {
    const doc = parseDsl(
      "pdag { A [exposure] A -> Y1 U1 -> Y0 U2 -> Y1 U3 -> A U1 -- U2 U2 -- U3 }",
    );
    const layout = layoutGraph(doc, { ...OPTS, margin: 40 });
    for (const p of layout.values()) {
      expect(p.x).toBeGreaterThanOrEqual(40);
      expect(p.x).toBeLessThanOrEqual(760);
      expect(p.y).toBeGreaterThanOrEqual(40);
      expect(p.y).toBeLessThanOrEqual(560);
    }
  });

  it("spreads unpinned nodes apart", () => {
    const doc = parseDsl("pdag { A [exposure] A -> Y1 U1 -> Y0 U1 -> Y1 U2 -> Y0 }");
    const layout = layoutGraph(doc, OPTS);
    const points = [...layout.values()];
    for (let i = 0; i < points.length; i++)
      for (let j = i + 1; j < points.length; j++) {
        const d = Math.hypot(points[i].x - points[j].x, points[i].y - points[j].y);
        expect(d).toBeGreaterThan(10);
      }
  });
});

describe("seededRandom", () => {
  it("repeats per seed and varies across seeds", () => {
    const a = seededRandom(1);
    const b = seededRandom(1);
    const c = seededRandom(2);
    const seqA = [a(), a(), a()];
    expect([b(), b(), b()]).toEqual(seqA);
    expect([c(), c(), c()]).not.toEqual(seqA);
    for (const v of seqA) {
      expect(v).toBeGreaterThanOrEqual(0);
      expect(v).toBeLessThan(1);
    }
  });
});
