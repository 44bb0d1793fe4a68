/**
 * Shell: wires the DSL editor, the SVG canvas, and the verdict panels to
 * the analysis service. The DSL text is the single source of truth —
 * canvas edits regenerate it, and every structural change debounce-posts
 * to /v1/analyze (newer edits cancel in-flight requests).
 */

import { AnalysisClient, ApiError, OfflineError } from "./api.js";
import {
  DslError,
  GraphDoc,
  addEdge,
  addNode,
  parseDsl,
  removeNode,
  serializeDsl,
  setRole,
} from "./dsl.js";
import { layoutGraph } from "./layout.js";
import { renderGraph } from "./render.js";
import {
  EditorState,
  applyEdit,
  focusCondition,
  initialState,
  receiveVerdict,
  redo,
  select,
  undo,
} from "./state.js";
import {
  VerdictResponse,
  bannerTone,
  condition,
  highlightFor,
  obligationText,
} from "./witness.js";

const DEBOUNCE_MS = 300;

const STARTER = `pdag {
A [exposure]
Y0
Y1
U1 -> A; U1 -> Y0; U1 -> Y1
U2 -> Y0; U2 -> Y1
U1 -- U2
A -> Y1
}
`;

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class App {
  state: EditorState = initialState(STARTER);
  client = new AnalysisClient();
  private timer: number | undefined;
  private pendingEdge: string | null = null;

  editor = byId<HTMLTextAreaElement>("editor");
  canvas = byId<HTMLElement>("canvas").querySelector("svg") as SVGSVGElement;
  banner = byId<HTMLDivElement>("banner");
  parseBox = byId<HTMLDivElement>("parse-error");
  offlineBox = byId<HTMLDivElement>("offline");
  conditions = byId<HTMLDivElement>("conditions");
  obligation = byId<HTMLDivElement>("obligation");
  witnessLabel = byId<HTMLDivElement>("witness-label");

  start(): void {
    this.editor.value = this.state.text;
    this.editor.addEventListener("input", () => {
      this.state = applyEdit(this.state, this.editor.value);
      this.scheduleAnalyze();
      this.redraw();
    });
    document.addEventListener("keydown", (ev) => {
      if ((ev.ctrlKey || ev.metaKey) && ev.key === "z" && !ev.shiftKey) {
        ev.preventDefault();
        this.state = undo(this.state);
        this.syncEditor();
      } else if ((ev.ctrlKey || ev.metaKey) && (ev.key === "y" || (ev.key === "z" && ev.shiftKey))) {
        ev.preventDefault();
        this.state = redo(this.state);
        this.syncEditor();
      }
    });
    byId<HTMLButtonElement>("btn-export").addEventListener("click", () => this.exportDag());
    byId<HTMLInputElement>("file-import").addEventListener("change", (ev) => this.importDag(ev));
    byId<HTMLButtonElement>("btn-add-node").addEventListener("click", () => this.addNodePrompt());
    byId<HTMLButtonElement>("btn-add-edge").addEventListener("click", () => this.beginEdge());
    byId<HTMLButtonElement>("btn-delete").addEventListener("click", () => this.deleteSelection());
    byId<HTMLSelectElement>("role-select").addEventListener("change", (ev) => {
      const role = (ev.target as HTMLSelectElement).value;
      if (this.state.selection && role) this.mutate((doc) => setRole(doc, this.state.selection!, role as any));
    });
    this.scheduleAnalyze(0);
    this.redraw();
  }

  private scheduleAnalyze(delay = DEBOUNCE_MS): void {
    window.clearTimeout(this.timer);
    const text = this.state.text;
    this.timer = window.setTimeout(() => void this.analyze(text), delay);
  }

  private async analyze(text: string): Promise<void> {
    try {
      const verdict = await this.client.analyze(text);
      this.offlineBox.hidden = true;
      this.showParseError(null);
      this.state = receiveVerdict(this.state, text, verdict);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return;
      if (err instanceof OfflineError) {
        this.offlineBox.hidden = false;
      } else if (err instanceof ApiError) {
        this.offlineBox.hidden = true;
        this.showParseError(err);
      }
    }
    this.redraw();
  }

  private showParseError(err: ApiError | null): void {
    if (!err) {
      this.parseBox.hidden = true;
      return;
    }
    this.parseBox.hidden = false;
    let text = `${err.detail.type}: ${err.detail.message}`;
    if (err.detail.violations?.length)
      text += "\n" + err.detail.violations.map((v) => `• ${v.message}`).join("\n");
    this.parseBox.textContent = text;
    if (err.detail.span) {
      const [start, end] = err.detail.span;
      this.editor.focus();
      this.editor.setSelectionRange(start, end);
    }
  }

  private parsedDoc(): GraphDoc | null {
    try {
      return parseDsl(this.state.text);
    } catch (err) {
      if (err instanceof DslError) return null;
      throw err;
    }
  }

  private mutate(fn: (doc: GraphDoc) => GraphDoc): void {
    const doc = this.parsedDoc();
    if (!doc) return;
    this.state = applyEdit(this.state, serializeDsl(fn(doc)));
    this.syncEditor();
  }

  private syncEditor(): void {
    this.editor.value = this.state.text;
    this.scheduleAnalyze();
    this.redraw();
  }

  private addNodePrompt(): void {
    const name = window.prompt("New node name (identifier):");
    if (name) this.mutate((doc) => addNode(doc, name.trim()));
  }

  private beginEdge(): void {
    if (!this.state.selection) return;
    this.pendingEdge = this.state.selection;
    this.witnessLabel.textContent = `adding edge from ${this.pendingEdge}: click a target node (shift-click for a dash)`;
  }

  private deleteSelection(): void {
    if (this.state.selection)
      this.mutate((doc) => removeNode(doc, this.state.selection!));
    this.state = select(this.state, null);
    this.redraw();
  }

  private exportDag(): void {
    const blob = new Blob([this.state.text], { type: "text/plain" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "graph.dag";
    a.click();
    URL.revokeObjectURL(a.href);
  }

  private importDag(ev: Event): void {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    void file.text().then((text) => {
      this.state = applyEdit(this.state, text);
      this.syncEditor();
    });
    input.value = "";
  }

  private redraw(): void {
    const doc = this.parsedDoc();
    const verdict = this.state.verdict;
    this.renderBanner(verdict);
    this.renderConditions(verdict);
    this.renderObligation(verdict);
    const highlight =
      verdict && this.state.focusedCondition
        ? highlightFor(verdict, this.state.focusedCondition)
        : null;
    this.witnessLabel.textContent = highlight?.label ?? "";
    if (doc) {
      const rect = this.canvas.getBoundingClientRect();
      const layout = layoutGraph(doc, {
        width: rect.width || 640,
        height: rect.height || 480,
      });
      renderGraph(this.canvas, doc, layout, highlight, this.state.selection, {
        onSelectNode: (name) => this.onNodeClick(name),
        onCanvasClick: () => {
          this.state = select(this.state, null);
          this.redraw();
        },
      });
    }
  }

  private onNodeClick(name: string): void {
    if (this.pendingEdge && this.pendingEdge !== name) {
      const tail = this.pendingEdge;
      this.pendingEdge = null;
      const dash = (window.event as MouseEvent | undefined)?.shiftKey ?? false;
      this.mutate((doc) => addEdge(doc, tail, name, !dash));
      return;
    }
    this.state = select(this.state, name);
    const node = this.parsedDoc()?.nodes.find((n) => n.name === name);
    byId<HTMLSelectElement>("role-select").value = node?.role ?? "covariate";
    this.redraw();
  }

  private renderBanner(verdict: VerdictResponse | null): void {
    if (!verdict) {
      this.banner.textContent = "waiting for analysis…";
      this.banner.dataset.tone = "";
      return;
    }
    this.banner.textContent = verdict.overall;
    this.banner.dataset.tone = bannerTone(verdict.overall);
    this.banner.title = verdict.caveat ?? "";
  }

  private renderConditions(verdict: VerdictResponse | null): void {
    this.conditions.replaceChildren();
    if (!verdict) return;
    for (const name of ["C1", "C2", "C3"] as const) {
      const block = condition(verdict, name);
      const badge = document.createElement("button");
      badge.className = `condition-badge tone-${
        block.aggregate === "Violated"
          ? name === "C3"
            ? "amber"
            : "red"
          : block.aggregate === "Mixed"
            ? "amber"
            : "green"
      }`;
      badge.textContent = `${name}: ${block.aggregate}`;
      if (this.state.focusedCondition === name) badge.classList.add("focused");
      badge.addEventListener("click", () => {
        this.state = focusCondition(this.state, name);
        this.redraw();
      });
      this.conditions.append(badge);
      const note = block.per_completion.find((p) => p.note)?.note;
      if (note) {
        const div = document.createElement("div");
        div.className = "condition-note";
        div.textContent = note;
        this.conditions.append(div);
      }
    }
    if (verdict.caveat) {
      const div = document.createElement("div");
      div.className = "condition-note";
      div.textContent = verdict.caveat;
      this.conditions.append(div);
    }
  }

  private renderObligation(verdict: VerdictResponse | null): void {
    const text = verdict ? obligationText(verdict) : null;
    this.obligation.hidden = !text;
    if (text) this.obligation.textContent = text;
  }
}

new App().start();
