/**
 * Selectors over the service's verdict JSON.
 *
 * The UI renders the machine-checkable certificates verbatim: these
 * functions only reshape the response into highlight instructions, they
 * never re-derive separation or sufficiency on the client.
 */

export interface ConditionEntry {
  completion: string[];
  status: string;
  witness: Record<string, unknown> | null;
  note: string | null;
  without_carryover_edge?: ConditionEntry;
}

export interface ConditionBlock {
  condition: "C1" | "C2" | "C3";
  aggregate: string;
  per_completion: ConditionEntry[];
}

export interface VerdictResponse {
  schema: string;
  overall: "Rejected" | "StronglyQuestioned" | "NotRejected";
  completions_analyzed: number;
  conditions: ConditionBlock[];
  obligation: string[] | null;
  obligation_note: string | null;
  caveat: string | null;
}

export interface Highlight {
  /** directed edges tail->head drawn in the alert color */
  edges: [string, string][];
  /** consecutive node pairs of an open path, for animation */
  pathEdges: [string, string][];
  /** node groups: witness subset members, conditioning set, obligation */
  subset: string[];
  given: string[];
  label: string;
}

export function condition(
  verdict: VerdictResponse,
  name: "C1" | "C2" | "C3",
): ConditionBlock {
  const block = verdict.conditions.find((c) => c.condition === name);
  if (!block) throw new Error(`response has no ${name} block`);
  return block;
}

/** First violated per-completion entry for a condition, if any. */
export function firstViolation(
  verdict: VerdictResponse,
  name: "C1" | "C2" | "C3",
): ConditionEntry | null {
  return (
    condition(verdict, name).per_completion.find((p) => p.status === "Violated") ??
    null
  );
}

export function highlightFor(
  verdict: VerdictResponse,
  name: "C1" | "C2" | "C3",
): Highlight | null {
  const entry = firstViolation(verdict, name);
  if (!entry || !entry.witness) return null;
  const w = entry.witness as Record<string, any>;
  switch (w["kind"]) {
    case "c1": {
      const path = w["open_path"] as { nodes: string[]; arrows: string[]; given: string[] };
      const pathEdges: [string, string][] = [];
      for (let i = 0; i < path.nodes.length - 1; i++) {
        const [a, b] = [path.nodes[i], path.nodes[i + 1]];
        pathEdges.push(path.arrows[i] === "->" ? [a, b] : [b, a]);
      }
      return {
        edges: [[w["edge"][0], w["edge"][1]]],
        pathEdges,
        subset: [],
        given: path.given,
        label: `C1: ${w["edge"][0]} → ${w["edge"][1]} with an open backdoor path given {${path.given.join(", ")}}`,
      };
    }
    case "c2":
      return {
        edges: [],
        pathEdges: [],
        subset: w["subset"] as string[],
        given: w["common_set"] as string[],
        label: `C2: {${(w["subset"] as string[]).join(", ")}} is sufficient for Y${w["sufficient_for"]} but not Y${w["insufficient_for"]}`,
      };
    case "c3":
      return {
        edges: [[w["edge"][0], w["edge"][1]]],
        pathEdges: [],
        subset: [],
        given: [],
        label: `C3: direct carryover edge ${w["edge"][0]} → ${w["edge"][1]}`,
      };
    default:
      return null;
  }
}

export type BadgeTone = "red" | "amber" | "green";

export function bannerTone(overall: VerdictResponse["overall"]): BadgeTone {
  if (overall === "Rejected") return "red";
  if (overall === "StronglyQuestioned") return "amber";
  return "green";
}

/** The obligation panel body when the verdict is NotRejected. */
export function obligationText(verdict: VerdictResponse): string | null {
  if (verdict.overall !== "NotRejected") return null;
  const members = verdict.obligation;
  const setText = members && members.length ? `{${members.join(", ")}}` : "∅ (no common sufficient set found)";
  const note = verdict.obligation_note ?? "";
  return `M = ${setText}. ${note}`;
}
