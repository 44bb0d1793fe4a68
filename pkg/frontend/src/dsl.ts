/**
 * Client-side structural reader/writer for the graph DSL.
 *
 * The editor's single source of truth is the DSL text; the canvas parses
 * it into a GraphDoc for layout and rendering, and canvas edits serialize
 * back to text. No verdict logic lives here — the service owns semantics.
 */

export type Role = "treatment" | "outcome0" | "outcome1" | "covariate";

export interface NodeDecl {
  name: string;
  display?: string; // quoted rendering such as "Y1^0"
  role: Role;
  latent: boolean;
  pos?: { x: number; y: number };
  tier?: number;
  extras: [string, string][]; // unknown attributes, preserved verbatim
}

export interface EdgeDecl {
  tail: string;
  head: string;
  directed: boolean;
}

export interface GraphDoc {
  nodes: NodeDecl[];
  edges: EdgeDecl[];
  metadata: Record<string, string>; // bb, swig marker, ...
}

export interface SourceSpan {
  start: number;
  end: number;
}

export class DslError extends Error {
  constructor(message: string, readonly span: SourceSpan) {
    super(message);
    this.name = "DslError";
  }
}

const IDENT = /^[A-Za-z][A-Za-z0-9_]*$/;
const LATENT_NAME = /^U[0-9]*$/;
const SPLIT_MARKER = /^\|([A-Za-z][A-Za-z0-9_]*)=(.*)$/;
const POTENTIAL = /^([A-Za-z][A-Za-z0-9_]*)\^/;

interface Token {
  kind: "ident" | "string" | "arrow" | "backarrow" | "dash" | "punct";
  value: string;
  span: SourceSpan;
}

const TOKEN = /\s+|;|#[^\n]*|->|<-|--|[{}\[\],=]|"(?:[^"\\]|\\.)*"|[A-Za-z_][A-Za-z0-9_.^|]*|-?[0-9]+(?:\.[0-9]+)?/y;

function tokenize(text: string): Token[] {
  const out: Token[] = [];
  let pos = 0;
  while (pos < text.length) {
    TOKEN.lastIndex = pos;
    const m = TOKEN.exec(text);
    if (!m || m.index !== pos) {
      throw new DslError(`unexpected character ${JSON.stringify(text[pos])}`, {
        start: pos,
        end: pos + 1,
      });
    }
    const value = m[0];
    const span = { start: pos, end: pos + value.length };
    pos += value.length;
    if (/^\s/.test(value) || value === ";" || value.startsWith("#")) continue;
    if (value === "->") out.push({ kind: "arrow", value, span });
    else if (value === "<-") out.push({ kind: "backarrow", value, span });
    else if (value === "--") out.push({ kind: "dash", value, span });
    else if (value.startsWith('"'))
      out.push({ kind: "string", value: value.slice(1, -1), span });
    else if ("{}[],=".includes(value)) out.push({ kind: "punct", value, span });
    else out.push({ kind: "ident", value, span });
  }
  return out;
}

/** Map a declared (possibly quoted) name to a canonical identifier. */
function resolveName(raw: string, span: SourceSpan): { name: string; display?: string } | "marker" {
  if (SPLIT_MARKER.test(raw)) return "marker";
  const pot = POTENTIAL.exec(raw);
  if (pot) return { name: pot[1], display: raw };
  if (IDENT.test(raw)) return { name: raw };
  throw new DslError(`cannot use ${JSON.stringify(raw)} as a node name`, span);
}

export function parseDsl(text: string): GraphDoc {
  const tokens = tokenize(text);
  let i = 0;
  const peek = () => tokens[i];
  const next = (): Token => {
    const t = tokens[i++];
    if (!t)
      throw new DslError("unexpected end of input", {
        start: text.length,
        end: text.length,
      });
    return t;
  };
  const expect = (value: string): Token => {
    const t = next();
    if (t.value !== value)
      throw new DslError(`expected ${JSON.stringify(value)}, found ${JSON.stringify(t.value)}`, t.span);
    return t;
  };

  const doc: GraphDoc = { nodes: [], edges: [], metadata: {} };
  const byName = new Map<string, NodeDecl>();
  const markerHeads: string[] = [];

  const ensure = (raw: string, span: SourceSpan): string | null => {
    const resolved = resolveName(raw, span);
    if (resolved === "marker") {
      const m = SPLIT_MARKER.exec(raw)!;
      doc.metadata["swig"] = "1";
      doc.metadata["intervention"] = m[2];
      return null;
    }
    let node = byName.get(resolved.name);
    if (!node) {
      node = {
        name: resolved.name,
        display: resolved.display,
        role: "covariate",
        latent: false,
        extras: [],
      };
      byName.set(node.name, node);
      doc.nodes.push(node);
    } else if (resolved.display) {
      node.display = resolved.display;
    }
    return node.name;
  };

  const header = next();
  if (header.value !== "pdag" && header.value !== "dag")
    throw new DslError("expected 'pdag' or 'dag'", header.span);
  if (header.value === "dag") doc.metadata["kind"] = "dag";
  expect("{");

  while (peek() && peek().value !== "}") {
    const t = next();
    if (t.kind !== "ident" && t.kind !== "string")
      throw new DslError(`expected a node name, found ${JSON.stringify(t.value)}`, t.span);
    // metadata assignment such as bb="0,0,1,1"
    if (t.kind === "ident" && peek()?.value === "=" && peek()?.kind === "punct") {
      next();
      const v = next();
      doc.metadata[t.value] = v.value;
      continue;
    }
    let current = ensure(t.value, t.span);
    const isMarker = current === null;
    if (peek()?.value === "[") {
      if (isMarker) {
        // marker may carry pos etc.; keep them in metadata-free limbo
        skipAttrs();
      } else {
        readAttrs(byName.get(current!)!);
      }
    }
    // edge chain
    while (peek() && ["arrow", "backarrow", "dash"].includes(peek().kind)) {
      const op = next();
      const rhs = next();
      if (rhs.kind !== "ident" && rhs.kind !== "string")
        throw new DslError("expected a node name after the edge operator", op.span);
      const target = ensure(rhs.value, rhs.span);
      if (target === null)
        throw new DslError("edges may not point into the split marker", rhs.span);
      if (isMarker || current === null) {
        if (op.kind !== "arrow")
          throw new DslError("the split marker only takes -> edges", op.span);
        markerHeads.push(target);
      } else if (op.kind === "arrow") {
        doc.edges.push({ tail: current, head: target, directed: true });
      } else if (op.kind === "backarrow") {
        doc.edges.push({ tail: target, head: current, directed: true });
      } else {
        const [a, b] = [current, target].sort();
        doc.edges.push({ tail: a, head: b, directed: false });
      }
      current = target;
    }
  }
  expect("}");
  if (i < tokens.length)
    throw new DslError("trailing content after closing brace", tokens[i].span);

  // name conventions when no explicit attribute was given
  for (const node of doc.nodes) {
    if (node.role === "covariate") {
      if (node.name === "Y0" && !hasExplicit(node, "outcome")) node.role = "outcome0";
      if (node.name === "Y1" && !hasExplicit(node, "outcome")) node.role = "outcome1";
    }
    if (node.role === "covariate" && LATENT_NAME.test(node.name) && !hasExplicit(node, "observed"))
      node.latent = true;
  }
  // reattach marker out-edges to the treatment
  if (markerHeads.length > 0) {
    const treatment = doc.nodes.find((n) => n.role === "treatment");
    if (!treatment)
      throw new DslError("a split marker requires an exposure node", {
        start: 0,
        end: 1,
      });
    for (const head of markerHeads)
      doc.edges.push({ tail: treatment.name, head, directed: true });
  }
  dedupeEdges(doc);
  return doc;

  function skipAttrs(): void {
    expect("[");
    while (peek() && peek().value !== "]") next();
    expect("]");
  }

  function readAttrs(node: NodeDecl): void {
    expect("[");
    while (peek() && peek().value !== "]") {
      const key = next();
      let value = "";
      if (peek()?.value === "=") {
        next();
        value = next().value;
      }
      applyAttr(node, key.value, value, key.span);
      if (peek()?.value === ",") next();
    }
    expect("]");
  }
}

function hasExplicit(node: NodeDecl, what: "outcome" | "observed"): boolean {
  return node.extras.some(([k]) => k === `__explicit_${what}`);
}

function applyAttr(node: NodeDecl, key: string, value: string, span: SourceSpan): void {
  switch (key) {
    case "exposure":
      node.role = "treatment";
      break;
    case "outcome":
      node.role = value === "0" ? "outcome0" : "outcome1";
      node.extras.push(["__explicit_outcome", value]);
      break;
    case "latent":
      node.latent = true;
      break;
    case "observed":
      node.latent = false;
      node.extras.push(["__explicit_observed", ""]);
      break;
    case "tier": {
      const n = Number(value);
      if (!Number.isInteger(n)) throw new DslError("tier must be an integer", span);
      node.tier = n;
      break;
    }
    case "pos": {
      const parts = value.split(",").map((p) => Number(p));
      if (parts.length !== 2 || parts.some((p) => Number.isNaN(p)))
        throw new DslError('pos must be "x,y"', span);
      node.pos = { x: parts[0], y: parts[1] };
      break;
    }
    default:
      node.extras.push([key, value]);
  }
}

function dedupeEdges(doc: GraphDoc): void {
  const seen = new Set<string>();
  doc.edges = doc.edges.filter((e) => {
    const key = `${e.directed ? ">" : "-"}${e.tail}|${e.head}`;
    if (seen.has(key)) return false;
    seen.add(key);
    return true;
  });
}

// -- serialization -------------------------------------------------------

function quote(node: NodeDecl): string {
  return node.display ? `"${node.display}"` : node.name;
}

function nodeDecl(node: NodeDecl): string {
  const attrs: string[] = [];
  if (node.role === "treatment") attrs.push("exposure");
  else if (node.role === "outcome0" && node.name !== "Y0") attrs.push("outcome=0");
  else if (node.role === "outcome1" && node.name !== "Y1") attrs.push("outcome=1");
  const namingLatent = LATENT_NAME.test(node.name) && !["treatment", "outcome0", "outcome1"].includes(node.role);
  if (node.latent && !namingLatent) attrs.push("latent");
  else if (!node.latent && namingLatent) attrs.push("observed");
  if (node.tier !== undefined) attrs.push(`tier=${node.tier}`);
  if (node.pos) attrs.push(`pos="${node.pos.x.toFixed(6)},${node.pos.y.toFixed(6)}"`);
  for (const [k, v] of node.extras) {
    if (k.startsWith("__explicit_")) continue;
    attrs.push(v === "" ? k : /^[A-Za-z0-9_.-]+$/.test(v) ? `${k}=${v}` : `${k}="${v}"`);
  }
  return attrs.length ? `${quote(node)} [${attrs.join(",")}]` : quote(node);
}

export function serializeDsl(doc: GraphDoc): string {
  const lines: string[] = [`${doc.metadata["kind"] ?? "pdag"} {`];
  if (doc.metadata["bb"]) lines.push(`bb="${doc.metadata["bb"]}"`);
  const swig = doc.metadata["swig"] === "1";
  const marker = swig ? `"|a=${doc.metadata["intervention"] ?? "0"}"` : null;
  if (marker) lines.push(marker);
  const nodes = [...doc.nodes].sort((a, b) => a.name.localeCompare(b.name));
  const names = new Map(nodes.map((n) => [n.name, quote(n)]));
  for (const node of nodes) lines.push(nodeDecl(node));
  const treatment = doc.nodes.find((n) => n.role === "treatment")?.name;
  const edges = [...doc.edges].sort(
    (a, b) =>
      Number(b.directed) - Number(a.directed) ||
      a.tail.localeCompare(b.tail) ||
      a.head.localeCompare(b.head),
  );
  for (const e of edges) {
    if (!e.directed) lines.push(`${names.get(e.tail)} -- ${names.get(e.head)}`);
    else if (marker && e.tail === treatment)
      lines.push(`${marker} -> ${names.get(e.head)}`);
    else lines.push(`${names.get(e.tail)} -> ${names.get(e.head)}`);
  }
  lines.push("}");
  return lines.join("\n") + "\n";
}

// -- structural edits (each returns fresh DSL text) ----------------------

export function addNode(doc: GraphDoc, name: string): GraphDoc {
  if (!IDENT.test(name)) throw new DslError(`invalid node name ${JSON.stringify(name)}`, { start: 0, end: 0 });
  if (doc.nodes.some((n) => n.name === name)) return doc;
  return {
    ...doc,
    nodes: [
      ...doc.nodes,
      { name, role: "covariate", latent: LATENT_NAME.test(name), extras: [] },
    ],
  };
}

export function removeNode(doc: GraphDoc, name: string): GraphDoc {
  return {
    ...doc,
    nodes: doc.nodes.filter((n) => n.name !== name),
    edges: doc.edges.filter((e) => e.tail !== name && e.head !== name),
  };
}

export function addEdge(doc: GraphDoc, tail: string, head: string, directed: boolean): GraphDoc {
  let base = addNode(addNode(doc, tail), head);
  const decl: EdgeDecl = directed
    ? { tail, head, directed }
    : { tail: [tail, head].sort()[0], head: [tail, head].sort()[1], directed };
  if (
    base.edges.some(
      (e) => e.directed === decl.directed && e.tail === decl.tail && e.head === decl.head,
    )
  )
    return base;
  return { ...base, edges: [...base.edges, decl] };
}

export function removeEdge(doc: GraphDoc, tail: string, head: string): GraphDoc {
  return {
    ...doc,
    edges: doc.edges.filter(
      (e) =>
        !(e.tail === tail && e.head === head) &&
        !(!e.directed && e.tail === head && e.head === tail),
    ),
  };
}

export function setRole(doc: GraphDoc, name: string, role: Role): GraphDoc {
  return {
    ...doc,
    nodes: doc.nodes.map((n) =>
      n.name === name
        ? { ...n, role, extras: role.startsWith("outcome") ? [...n.extras, ["__explicit_outcome", role === "outcome0" ? "0" : "1"] as [string, string]] : n.extras }
        : role === n.role && role !== "covariate"
          ? { ...n, role: "covariate" } // a role moves: strip the old holder
          : n,
    ),
  };
}
