"""Parse and serialize the ``.dag`` graph DSL.

The grammar is a dagitty-compatible subset: a ``pdag { ... }`` (or
``dag { ... }``) block containing node declarations with bracketed
attribute lists and edge statements ``X -> Y`` / ``X -- Y``, separated by
semicolons or whitespace. ``#`` starts a comment running to end of line.

Conventions honoured on top of the raw syntax:

* the ``exposure`` attribute marks the treatment node;
* nodes named ``Y0`` / ``Y1`` (the latter also via the quoted display name
  ``"Y1^0"``) are the period-0 / period-1 outcomes, and an explicit
  ``outcome=0`` / ``outcome=1`` attribute overrides the naming convention;
* the ``latent`` attribute (or a name matching ``U``, ``U1``, ...) marks a
  node latent; ``observed`` overrides the naming convention;
* ``tier=N`` records a temporal tier, ``pos="x,y"`` a layout position;
* a quoted node ``"|a=0"`` is not a node at all but a declaration that the
  file already depicts a split-treatment graph: a flag is recorded and the
  node's outgoing edges are re-attached to the treatment node;
* unknown attributes are preserved verbatim for round-tripping.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .graph import CausalGraph, Edge, Node, Role, is_identifier

_LATENT_NAME_RE = re.compile(r"^U[0-9]*$")
_DISPLAY_POTENTIAL_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)\^")
_SPLIT_NODE_RE = re.compile(r"^\|([A-Za-z][A-Za-z0-9_]*)=(.*)$")


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        assert 0 <= self.start <= self.end


# -- tokenizer -----------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[\s;]+)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<backarrow><-)
  | (?P<undirected>--)
  | (?P<lbrace>\{) | (?P<rbrace>\})
  | (?P<lbracket>\[) | (?P<rbracket>\])
  | (?P<comma>,) | (?P<equals>=)
  | (?P<string>"[^"\n]*")
  | (?P<number>-?[0-9]+(?:\.[0-9]+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1)
            )
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, m.group(), SourceSpan(m.start(), m.end())))
        pos = m.end()
    tokens.append(_Token("eof", "", SourceSpan(n, n)))
    return tokens


# -- parser --------------------------------------------------------------


class _NodeBuilder:
    def __init__(self, name, display=None):
        self.name = name
        self.display = display
        self.role = None
        self.latent = None
        self.position = None
        self.tier = None
        self.attrs = []


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.nodes: dict[str, _NodeBuilder] = {}
        self.display_to_name: dict[str, str] = {}
        self.edges: list[tuple[str, str, bool, SourceSpan]] = []
        self.metadata: dict[str, str] = {}
        self.split_out: list[tuple[str, SourceSpan]] = []  # heads of "|a=0" -> X

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.span)
        return self.advance()

    # node-name resolution ----------------------------------------------

    def resolve_name(self, tok: _Token) -> str | None:
        """Map a name token to a node id, creating the node builder.

        Returns None for the split-treatment marker.
        """
        if tok.kind == "ident":
            raw, display = tok.text, None
        else:
            raw = tok.text[1:-1]
            display = raw
            m = _SPLIT_NODE_RE.match(raw)
            if m:
                self.metadata["swig"] = "1"
                self.metadata["intervention"] = m.group(2)
                return None
            m = _DISPLAY_POTENTIAL_RE.match(raw)
            if m:
                raw = m.group(1)
            elif is_identifier(raw):
                raw, display = raw, None
            else:
                sanitized = re.sub(r"[^A-Za-z0-9_]", "_", raw)
                if not sanitized or not sanitized[0].isalpha():
                    sanitized = "v" + sanitized
                raw = sanitized
        if display is not None:
            prior = self.display_to_name.setdefault(display, raw)
            raw = prior
        builder = self.nodes.get(raw)
        if builder is None:
            builder = _NodeBuilder(raw, display)
            self.nodes[raw] = builder
        elif display is not None and builder.display is None:
            builder.display = display
        return builder.name

    # grammar ------------------------------------------------------------

    def parse(self) -> None:
        head = self.expect("ident", "'pdag' or 'dag'")
        if head.text not in ("pdag", "dag"):
            raise ParseError(f"expected 'pdag' or 'dag', found {head.text!r}", head.span)
        self.metadata["kind"] = head.text
        self.expect("lbrace", "'{'")
        while self.peek().kind != "rbrace":
            tok = self.peek()
            if tok.kind == "eof":
                raise ParseError("expected '}' before end of input", tok.span)
            if tok.kind == "ident" and tok.text == "bb" and self.tokens[self.i + 1].kind == "equals":
                self.advance()
                self.advance()
                val = self.expect("string", "bounding-box string")
                self.metadata["bb"] = val.text[1:-1]
                continue
            if tok.kind in ("ident", "string"):
                self.statement()
            else:
                raise ParseError(
                    f"expected a node name, found {tok.text!r}", tok.span
                )
        self.expect("rbrace", "'}'")
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.span)

    def statement(self) -> None:
        tok = self.advance()
        name = self.resolve_name(tok)
        is_marker = name is None
        if self.peek().kind == "lbracket":
            if is_marker:
                self.attr_list(_NodeBuilder("_marker"))  # parsed and dropped
            else:
                self.attr_list(self.nodes[name])
        while self.peek().kind in ("arrow", "backarrow", "undirected"):
            op = self.advance()
            nxt = self.peek()
            if nxt.kind not in ("ident", "string"):
                raise ParseError(
                    f"expected a node name after {op.text!r}, "
                    f"found {nxt.text or 'end of input'!r}",
                    nxt.span,
                )
            other = self.resolve_name(self.advance())
            if op.kind == "undirected":
                if is_marker or other is None:
                    raise ParseError(
                        "the split-treatment marker cannot take undirected edges",
                        op.span,
                    )
                self.edges.append((name, other, False, op.span))
            else:
                tail, head_ = (name, other) if op.kind == "arrow" else (other, name)
                if head_ is None:
                    raise ParseError(
                        "edges may not point into the split-treatment marker", op.span
                    )
                if tail is None:
                    self.split_out.append((head_, op.span))
                else:
                    self.edges.append((tail, head_, True, op.span))
            name, is_marker = other, other is None

    def attr_list(self, builder: _NodeBuilder) -> None:
        self.expect("lbracket", "'['")
        while True:
            key = self.expect("ident", "attribute name")
            value = None
            if self.peek().kind == "equals":
                self.advance()
                val_tok = self.peek()
                if val_tok.kind == "string":
                    value = val_tok.text[1:-1]
                elif val_tok.kind in ("number", "ident"):
                    value = val_tok.text
                else:
                    raise ParseError(
                        f"expected attribute value, found {val_tok.text!r}",
                        val_tok.span,
                    )
                self.advance()
            self.apply_attr(builder, key, value)
            if self.peek().kind == "comma":
                self.advance()
                continue
            break
        self.expect("rbracket", "']' or ','")

    def apply_attr(self, builder: _NodeBuilder, key: _Token, value) -> None:
        name = key.text
        if name == "exposure":
            builder.role = Role.TREATMENT
        elif name == "outcome" and value in ("0", "1"):
            builder.role = Role.OUTCOME0 if value == "0" else Role.OUTCOME1
        elif name == "latent":
            builder.latent = True
        elif name == "observed":
            builder.latent = False
        elif name == "tier":
            try:
                builder.tier = int(value)
            except (TypeError, ValueError):
                raise ParseError("tier must be an integer", key.span) from None
        elif name == "pos":
            try:
                x, y = (float(p) for p in (value or "").split(","))
            except ValueError:
                raise ParseError('pos must be "x,y"', key.span) from None
            builder.position = (x, y)
        else:
            builder.attrs.append((name, "" if value is None else value))

    # assembly -----------------------------------------------------------

    def build(self) -> CausalGraph:
        nodes = []
        tiers = {}
        explicit = {b.role for b in self.nodes.values() if b.role is not None}
        for b in self.nodes.values():
            role = b.role
            if role is None:
                if b.name == "Y0" and Role.OUTCOME0 not in explicit:
                    role = Role.OUTCOME0
                elif b.name == "Y1" and Role.OUTCOME1 not in explicit:
                    role = Role.OUTCOME1
                else:
                    role = Role.COVARIATE
            latent = b.latent
            if latent is None:
                latent = bool(_LATENT_NAME_RE.match(b.name)) and role is Role.COVARIATE
            nodes.append(
                Node(
                    name=b.name,
                    latent=latent,
                    role=role,
                    position=b.position,
                    display=b.display,
                    attrs=tuple(b.attrs),
                )
            )
            if b.tier is not None:
                tiers[b.name] = b.tier
        treatment = next((n.name for n in nodes if n.role is Role.TREATMENT), None)
        edges = [Edge(t, h, d) for (t, h, d, _) in self.edges]
        for head, span in self.split_out:
            if treatment is None:
                raise ParseError(
                    "a split-treatment marker requires an exposure node", span
                )
            edges.append(Edge(treatment, head, True))
        return CausalGraph(nodes, edges, tiers, self.metadata)


def parse(text: str, require_valid: bool = True) -> CausalGraph:
    """Parse DSL text into a graph.

    Raises ParseError on syntax errors and, when ``require_valid``,
    ValidationError carrying the structural violation report.
    """
    parser = _Parser(text)
    parser.parse()
    graph = parser.build()
    if require_valid:
        report = graph.validate()
        if report:
            raise ValidationError(report)
    return graph


# -- serializer ----------------------------------------------------------


def _quote_name(node: Node) -> str:
    if node.display is not None:
        return f'"{node.display}"'
    return node.name


def _node_decl(g: CausalGraph, node: Node) -> str:
    attrs = []
    if node.role is Role.TREATMENT:
        attrs.append("exposure")
    elif node.role is Role.OUTCOME0 and node.name != "Y0":
        attrs.append("outcome=0")
    elif node.role is Role.OUTCOME1 and node.name != "Y1":
        attrs.append("outcome=1")
    naming_latent = bool(_LATENT_NAME_RE.match(node.name)) and node.role is Role.COVARIATE
    if node.latent and not naming_latent:
        attrs.append("latent")
    elif not node.latent and naming_latent:
        attrs.append("observed")
    if node.name in g.tiers:
        attrs.append(f"tier={g.tiers[node.name]}")
    if node.position is not None:
        attrs.append('pos="%.6f,%.6f"' % node.position)
    for key, value in node.attrs:
        attrs.append(key if value == "" else f'{key}={_attr_value(value)}')
    decl = _quote_name(node)
    if attrs:
        decl += " [" + ",".join(attrs) + "]"
    return decl


def _attr_value(value: str) -> str:
    if re.fullmatch(r"-?[0-9]+(\.[0-9]+)?", value) or is_identifier(value):
        return value
    return f'"{value}"'


def serialize(g: CausalGraph) -> str:
    """Deterministic DSL text for a graph; inverse of :func:`parse`."""
    lines = [f"{g.metadata.get('kind', 'pdag')} {{"]
    if "bb" in g.metadata:
        lines.append(f'bb="{g.metadata["bb"]}"')
    swig = g.metadata.get("swig") == "1"
    marker = None
    if swig:
        value = g.metadata.get("intervention", "0")
        marker = f'"|a={value}"'
        lines.append(marker)
    names = {n.name: _quote_name(n) for n in g.nodes}
    for node in g.nodes:
        lines.append(_node_decl(g, node))
    treatment = g.treatment()
    for e in g.edges:
        if e.directed:
            if swig and e.tail == treatment:
                lines.append(f"{marker} -> {names[e.head]}")
            else:
                lines.append(f"{names[e.tail]} -> {names[e.head]}")
        else:
            lines.append(f"{names[e.tail]} -- {names[e.head]}")
    lines.append("}")
    return "\n".join(lines) + "\n"
