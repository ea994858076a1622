"""Rooted, labeled semantic graphs and their PENMAN text format.

A graph is a set of variables labeled with concepts plus an ordered list of
role edges.  The text form nests the defining occurrence of each variable
inside its parent::

    (l / look-01
        :ARG0 (i / i)
        :manner (c / careful)
        :direction (a / around :op1 i))

The nesting induces a spanning tree over the variables: the edge that
introduces a variable is its tree edge.  A later bare mention of an
already-defined variable (``:op1 i`` above) adds a re-entrant edge, which is
what makes the graph a DAG rather than a tree.  References must follow the
definition of the variable they mention; a bare token that has not been
defined yet is a syntax error.

Edge targets are either variables, string constants (kept verbatim with
their double quotes, e.g. ``'"Ann"'``) or numeric constants (kept as their
literal text, e.g. ``'42'``).  Constants are not nodes: they have no
concept, no subtree, and may not be re-entered.

Tree addresses ("node paths") name nodes by child ordinals: ``"0"`` is the
root, ``"0.1"`` is the root's second tree child, and so on.  The alignment
line format used by corpus files is space-separated
``<start>-<end>|<node_path>`` entries, e.g. ``0-1|0 2-3|0.1``, where the
token span is 0-based and end-exclusive.  An entry whose path carries a
trailing ``.r`` names the edge above that node; it is folded onto the
edge's source node (with a warning) because tokens are emitted per node.
"""

from __future__ import annotations

import re
import warnings
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .exceptions import (
    InvalidAlignmentError,
    InvalidGraphError,
    PenmanSyntaxError,
)

Edge = tuple[str, str, str]

_NUMERIC_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_VERB_RE = re.compile(r"^([a-z]+-)+\d{2}$")
_ALIGNMENT_RE = re.compile(r"^(\d+)-(\d+)\|(.+)$")


def is_constant(target: str) -> bool:
    """True for edge targets that are constants rather than variables."""
    return target.startswith('"') or bool(_NUMERIC_RE.match(target))


def is_verb_concept(concept: str) -> bool:
    """True for concepts of the ``<lemma>-<two digits>`` frame form.

    The two-digit suffix selects a word sense, e.g. ``run-01``; plain
    concepts such as ``apple`` are not verbs in this sense.
    """
    return bool(_VERB_RE.match(concept))


@dataclass(frozen=True, eq=False)
class AmrGraph:
    """Immutable rooted graph of concepts and role edges.

    ``nodes`` maps variable ids to concept labels, ``edges`` is the ordered
    list of ``(source, role, target)`` triples, and ``root`` names the top
    variable.  Instances compare equal on (nodes, edge multiset, root) and
    are unhashable; the spanning tree is derived, not stored: the tree edge
    of a non-root variable is its first incoming edge in stored order.
    """

    nodes: dict[str, str]
    edges: tuple[Edge, ...]
    root: str

    def __post_init__(self):
        object.__setattr__(self, "nodes", dict(self.nodes))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        self._validate()

    def _validate(self) -> None:
        if self.root not in self.nodes:
            raise InvalidGraphError(f"root {self.root!r} is not a node")
        for s, r, t in self.edges:
            if s not in self.nodes:
                raise InvalidGraphError(f"edge source {s!r} is not a node")
            if not r.startswith(":") or len(r) < 2:
                raise InvalidGraphError(f"role {r!r} must start with ':'")
            if not is_constant(t) and t not in self.nodes:
                raise InvalidGraphError(f"edge target {t!r} is not a node")
        first = self._tree_edge_index
        for v in self.nodes:
            if v != self.root and v not in first:
                raise InvalidGraphError(f"node {v!r} has no incoming edge")
        # Parent chains must reach the root without cycling.
        for v in self.nodes:
            seen = {v}
            cur = v
            while cur != self.root:
                cur = self.edges[first[cur]][0]
                if cur in seen:
                    raise InvalidGraphError(
                        f"tree parent chain of {v!r} is cyclic"
                    )
                seen.add(cur)

    @cached_property
    def _tree_edge_index(self) -> dict[str, int]:
        """First incoming edge index per non-root variable."""
        first: dict[str, int] = {}
        for i, (_, _, t) in enumerate(self.edges):
            if t != self.root and t in self.nodes and t not in first:
                first[t] = i
        return first

    @cached_property
    def _tree_children(self) -> dict[str, tuple[str, ...]]:
        kids: dict[str, list[str]] = {v: [] for v in self.nodes}
        tree = set(self._tree_edge_index.values())
        for i, (s, _, t) in enumerate(self.edges):
            if i in tree:
                kids[s].append(t)
        return {v: tuple(k) for v, k in kids.items()}

    @property
    def tree_edges(self) -> tuple[Edge, ...]:
        """The spanning-tree subset of ``edges``, in stored order."""
        idx = sorted(self._tree_edge_index.values())
        return tuple(self.edges[i] for i in idx)

    @property
    def reentrant_edges(self) -> tuple[Edge, ...]:
        """Edges to already-introduced variables, in stored order."""
        tree = set(self._tree_edge_index.values())
        return tuple(
            e
            for i, e in enumerate(self.edges)
            if i not in tree and not is_constant(e[2])
        )

    def concept(self, v: str) -> str:
        return self.nodes[v]

    def tree_parent(self, v: str) -> str | None:
        """Tree parent of ``v``; None for the root."""
        if v not in self.nodes:
            raise KeyError(f"unknown variable: {v!r}")
        if v == self.root:
            return None
        return self.edges[self._tree_edge_index[v]][0]

    def tree_children(self, v: str) -> tuple[str, ...]:
        if v not in self.nodes:
            raise KeyError(f"unknown variable: {v!r}")
        return self._tree_children[v]

    def tree_depth(self, v: str) -> int:
        return len(path_to_root(self, v)) - 1

    def constant_targets(self, v: str, role: str | None = None) -> tuple[str, ...]:
        """Constant targets of edges out of ``v``, optionally for one role."""
        return tuple(
            t
            for s, r, t in self.edges
            if s == v and is_constant(t) and (role is None or r == role)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AmrGraph):
            return NotImplemented
        return (
            self.root == other.root
            and self.nodes == other.nodes
            and Counter(self.edges) == Counter(other.edges)
        )

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        return f"AmrGraph({serialize_penman(self)!r})"


# ---------------------------------------------------------------------------
# PENMAN parsing


_PUNCT = "()/"
_ATOM_STOP = set(' \t\r\n()"/:')


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Lex ``text`` into (kind, text, offset) tokens.

    Kinds: ``(``, ``)``, ``/``, ``role``, ``string``, ``atom``.
    """
    tokens: list[tuple[str, str, int]] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _PUNCT:
            tokens.append((c, c, i))
            i += 1
            continue
        if c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise PenmanSyntaxError("unterminated string constant", i)
            tokens.append(("string", text[i : j + 1], i))
            i = j + 1
            continue
        if c == ":":
            j = i + 1
            while j < n and text[j] not in _ATOM_STOP:
                j += 1
            if j == i + 1:
                raise PenmanSyntaxError("empty role", i)
            tokens.append(("role", text[i:j], i))
            i = j
            continue
        j = i
        while j < n and text[j] not in _ATOM_STOP:
            j += 1
        tokens.append(("atom", text[i:j], i))
        i = j
    return tokens


class _Stream:
    def __init__(self, tokens: list[tuple[str, str, int]], length: int):
        self.tokens = tokens
        self.pos = 0
        self.length = length

    def peek(self) -> tuple[str, str, int] | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise PenmanSyntaxError(
                "unexpected end of input (unbalanced parentheses)", self.length
            )
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> tuple[str, str, int]:
        tok = self.take()
        if tok[0] != kind:
            raise PenmanSyntaxError(f"expected {what}, got {tok[1]!r}", tok[2])
        return tok


def parse_penman(text: str) -> AmrGraph:
    """Parse a single parenthesized PENMAN expression into a graph.

    Raises :class:`PenmanSyntaxError` (with character offset) on unbalanced
    parentheses, a missing ``/`` in an instance, a duplicate variable
    definition, a non-role token in role position, or a bare reference to a
    variable that has not been defined.
    """
    stream = _Stream(_tokenize(text), len(text))
    nodes: dict[str, str] = {}
    edges: list[Edge | None] = []

    def open_node() -> str:
        stream.expect("(", "'('")
        kind, var, pos = stream.take()
        if kind != "atom" or is_constant(var):
            raise PenmanSyntaxError(f"invalid variable {var!r}", pos)
        if var in nodes:
            raise PenmanSyntaxError(
                f"duplicate definition of variable {var!r}", pos
            )
        kind, slash, pos = stream.take()
        if kind != "/":
            raise PenmanSyntaxError(
                f"missing '/' in instance of {var!r}, got {slash!r}", pos
            )
        kind, concept, pos = stream.take()
        if kind != "atom":
            raise PenmanSyntaxError(f"expected concept, got {concept!r}", pos)
        nodes[var] = concept
        return var

    frames: list[str] = [open_node()]
    while frames:
        tok = stream.peek()
        if tok is None:
            raise PenmanSyntaxError(
                "unexpected end of input (unbalanced parentheses)", stream.length
            )
        kind, value, pos = tok
        if kind == ")":
            stream.take()
            frames.pop()
            continue
        if kind != "role":
            raise PenmanSyntaxError(
                f"expected role starting with ':', got {value!r}", pos
            )
        role = value
        stream.take()
        nxt = stream.peek()
        if nxt is None:
            raise PenmanSyntaxError(
                "unexpected end of input after role", stream.length
            )
        source = frames[-1]
        if nxt[0] == "(":
            slot = len(edges)
            edges.append(None)
            child = open_node()
            edges[slot] = (source, role, child)
            frames.append(child)
        elif nxt[0] == "string":
            stream.take()
            edges.append((source, role, nxt[1]))
        elif nxt[0] == "atom":
            stream.take()
            target = nxt[1]
            if _NUMERIC_RE.match(target):
                edges.append((source, role, target))
            elif target in nodes:
                edges.append((source, role, target))
            else:
                raise PenmanSyntaxError(
                    f"reference to undefined variable {target!r}", nxt[2]
                )
        else:
            raise PenmanSyntaxError(
                f"expected a value after {role}, got {nxt[1]!r}", nxt[2]
            )

    trailing = stream.peek()
    if trailing is not None:
        raise PenmanSyntaxError(
            f"unexpected content after graph: {trailing[1]!r}", trailing[2]
        )
    root = next(iter(nodes))
    return AmrGraph(nodes=nodes, edges=tuple(e for e in edges if e is not None), root=root)


def serialize_penman(g: AmrGraph, *, pretty: bool = False, indent: str = "    ") -> str:
    """Render a graph back to PENMAN text.

    The canonical form is one line with single spaces; ``pretty`` puts each
    role on its own indented line.  Nesting follows the spanning tree in
    stored edge order; re-entrant edges mention the bare variable.
    """
    children: dict[str, list[tuple[int, Edge]]] = {v: [] for v in g.nodes}
    for i, e in enumerate(g.edges):
        children[e[0]].append((i, e))
    tree_idx = g._tree_edge_index
    parts: list[str] = []
    stack: list[tuple] = [("node", g.root, 1)]
    while stack:
        op = stack.pop()
        if op[0] == "lit":
            parts.append(op[1])
            continue
        _, v, depth = op
        parts.append(f"({v} / {g.nodes[v]}")
        stack.append(("lit", ")"))
        for i, (_, r, t) in reversed(children[v]):
            sep = "\n" + indent * depth if pretty else " "
            if not is_constant(t) and tree_idx.get(t) == i:
                stack.append(("node", t, depth + 1))
                stack.append(("lit", f"{sep}{r} "))
            else:
                stack.append(("lit", f"{sep}{r} {t}"))
    return "".join(parts)


# ---------------------------------------------------------------------------
# Traversals


def path_to_root(g: AmrGraph, v: str) -> list[str]:
    """Variables from ``v`` up to the root, following tree edges only."""
    if v not in g.nodes:
        raise KeyError(f"unknown variable: {v!r}")
    path = [v]
    while path[-1] != g.root:
        path.append(g.edges[g._tree_edge_index[path[-1]]][0])
    return path


def subtree(g: AmrGraph, v: str) -> AmrGraph:
    """The subgraph rooted at ``v``: all tree descendants of ``v``, every
    edge among them, and constant targets.  Re-entrant edges are kept only
    when both endpoints are inside."""
    if v not in g.nodes:
        raise KeyError(f"unknown variable: {v!r}")
    keep = {v}
    queue = [v]
    while queue:
        cur = queue.pop()
        for child in g.tree_children(cur):
            if child not in keep:
                keep.add(child)
                queue.append(child)
    nodes = {u: c for u, c in g.nodes.items() if u in keep}
    edges = tuple(
        e
        for e in g.edges
        if e[0] in keep and (is_constant(e[2]) or e[2] in keep)
    )
    return AmrGraph(nodes=nodes, edges=edges, root=v)


# ---------------------------------------------------------------------------
# Tree addresses and alignments


def resolve_node_path(g: AmrGraph, path: str) -> str:
    """Resolve a dotted tree address (``"0"`` = root) to a variable id."""
    parts = path.split(".")
    if parts[0] != "0" or not all(p.isdigit() for p in parts):
        raise InvalidAlignmentError(f"malformed node path {path!r}")
    node = g.root
    for p in parts[1:]:
        kids = g.tree_children(node)
        k = int(p)
        if k >= len(kids):
            raise InvalidAlignmentError(
                f"node path {path!r} does not resolve: {node!r} has "
                f"{len(kids)} tree children"
            )
        node = kids[k]
    return node


@dataclass(frozen=True)
class Alignment:
    """One token span aligned to one node of the companion graph.

    ``token_start`` is inclusive and ``token_end`` exclusive, both 0-based;
    ``node_path`` is a dotted tree address.
    """

    token_start: int
    token_end: int
    node_path: str

    def __post_init__(self):
        if self.token_start < 0 or self.token_start >= self.token_end:
            raise InvalidAlignmentError(
                f"bad token span {self.token_start}-{self.token_end}"
            )


def parse_alignment_entries(text: str) -> tuple[Alignment, ...]:
    """Parse a ``<start>-<end>|<node_path>`` alignment line.

    A path with a trailing ``.r`` names the edge above the addressed node
    and is folded onto the edge's source node (its tree parent).
    """
    entries: list[Alignment] = []
    for chunk in text.split():
        m = _ALIGNMENT_RE.match(chunk)
        if not m:
            raise InvalidAlignmentError(f"malformed alignment entry {chunk!r}")
        start, end, path = int(m.group(1)), int(m.group(2)), m.group(3)
        if path.endswith(".r"):
            node = path[: -len(".r")]
            parent, _, _ = node.rpartition(".")
            if not parent:
                raise InvalidAlignmentError(
                    f"edge alignment {chunk!r} has no source node"
                )
            warnings.warn(
                f"alignment {chunk!r} targets an edge; using its source "
                f"node {parent!r}",
                stacklevel=2,
            )
            path = parent
        entries.append(Alignment(start, end, path))
    return tuple(entries)


@dataclass(frozen=True)
class AlignedSentence:
    """Surface tokens plus an optional graph and token/node alignments."""

    tokens: tuple[str, ...]
    graph: AmrGraph | None = None
    alignments: tuple[Alignment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "alignments", tuple(self.alignments))
        if self.graph is None and self.alignments:
            raise InvalidAlignmentError(
                "alignments given for a sentence without a graph"
            )
        for a in self.alignments:
            if a.token_end > len(self.tokens):
                raise InvalidAlignmentError(
                    f"alignment span {a.token_start}-{a.token_end} exceeds "
                    f"{len(self.tokens)} tokens"
                )
            resolve_node_path(self.graph, a.node_path)

    @property
    def text(self) -> str:
        return " ".join(self.tokens)
