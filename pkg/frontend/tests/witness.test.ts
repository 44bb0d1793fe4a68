import { describe, expect, it } from "vitest";

import {
  VerdictResponse,
  bannerTone,
  firstViolation,
  highlightFor,
  obligationText,
} from "../src/witness.js";

function verdict(partial: Partial<VerdictResponse>): VerdictResponse {
  return {
    schema: "ptgraph/v1",
    overall: "Rejected",
    completions_analyzed: 1,
    conditions: [
      { condition: "C1", aggregate: "Satisfied", per_completion: [] },
      { condition: "C2", aggregate: "Satisfied", per_completion: [] },
      { condition: "C3", aggregate: "Satisfied", per_completion: [] },
    ],
    obligation: null,
    obligation_note: null,
    caveat: null,
    ...partial,
  };
}

const C1_ENTRY = {
  completion: [],
  status: "Violated",
  note: null,
  witness: {
    kind: "c1",
    edge: ["Y0", "A"],
    open_path: {
      kind: "path",
      nodes: ["A", "U1", "Y1"],
      arrows: ["<-", "->"],
      given: ["Y0"],
    },
  },
};

const C2_ENTRY = {
  completion: [],
  status: "Violated",
  note: null,
  witness: {
    kind: "c2",
    subset: ["U1", "U3"],
    sufficient_for: 0,
    insufficient_for: 1,
    common_set: ["U1", "U3", "U4"],
  },
};

describe("highlightFor", () => {
  it("turns a C1 witness into an alert edge plus an oriented path", () => {
    const v = verdict({
      conditions: [
        { condition: "C1", aggregate: "Violated", per_completion: [C1_ENTRY] },
        { condition: "C2", aggregate: "NotApplicable", per_completion: [] },
        { condition: "C3", aggregate: "Satisfied", per_completion: [] },
      ],
    });
    const h = highlightFor(v, "C1")!;
    expect(h.edges).toEqual([["Y0", "A"]]);
    // "A <- U1 -> Y1" orients to U1->A and U1->Y1
    expect(h.pathEdges).toEqual([
      ["U1", "A"],
      ["U1", "Y1"],
    ]);
    expect(h.given).toEqual(["Y0"]);
    expect(h.label).toContain("C1");
  });

  it("turns a C2 witness into subset + common-set node groups", () => {
    const v = verdict({
      conditions: [
        { condition: "C1", aggregate: "Satisfied", per_completion: [] },
        { condition: "C2", aggregate: "Violated", per_completion: [C2_ENTRY] },
        { condition: "C3", aggregate: "Satisfied", per_completion: [] },
      ],
    });
    const h = highlightFor(v, "C2")!;
    expect(h.subset).toEqual(["U1", "U3"]);
    expect(h.given).toEqual(["U1", "U3", "U4"]);
    expect(h.label).toContain("not Y1");
  });

  it("turns a C3 witness into the carryover edge", () => {
    const entry = {
      completion: [],
      status: "Violated",
      note: null,
      witness: { kind: "c3", edge: ["Y0", "Y1"] },
    };
    const v = verdict({
      conditions: [
        { condition: "C1", aggregate: "Satisfied", per_completion: [] },
        { condition: "C2", aggregate: "Satisfied", per_completion: [] },
        { condition: "C3", aggregate: "Violated", per_completion: [entry] },
      ],
    });
    expect(highlightFor(v, "C3")!.edges).toEqual([["Y0", "Y1"]]);
  });

  it("returns null when nothing is violated", () => {
    const v = verdict({});
    expect(firstViolation(v, "C2")).toBeNull();
    expect(highlightFor(v, "C2")).toBeNull();
  });
});

describe("banner and obligation", () => {
  it("maps verdicts to tones", () => {
    expect(bannerTone("Rejected")).toBe("red");
    expect(bannerTone("StronglyQuestioned")).toBe("amber");
    expect(bannerTone("NotRejected")).toBe("green");
  });

  it("renders the obligation only when not rejected", () => {
    expect(obligationText(verdict({}))).toBeNull();
    const v = verdict({
      overall: "NotRejected",
      obligation: ["U1"],
      obligation_note: "additive homogeneous confounding still required",
    });
    const text = obligationText(v)!;
    expect(text).toContain("M = {U1}");
    expect(text).toContain("additive homogeneous");
  });
});
