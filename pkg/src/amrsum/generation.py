"""Step 3: turn extracted graphs back into summary text.

Two generators.  The alignment generator projects the extracted graph
back onto the source sentence: every token aligned to a surviving node is
emitted, in source order.  Output is therefore always a sub-multiset of
the source tokens; it is meant for unigram-overlap evaluation, where
token order does not matter.  The external generator shells out to any
graph-to-text tool speaking the line protocol.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from .corpus import Document
from .exceptions import ExternalToolError, MissingGraphError
from .external import as_argv, run_line_protocol
from .graph import AlignedSentence, AmrGraph, resolve_node_path, serialize_penman


@dataclass(frozen=True)
class GeneratedSummary:
    """Generated sentences, one per extracted graph, in extraction order."""

    sentences: tuple[tuple[str, ...], ...]
    generator: str

    def __post_init__(self):
        object.__setattr__(
            self, "sentences", tuple(tuple(s) for s in self.sentences)
        )

    @property
    def text(self) -> str:
        return " ".join(" ".join(s) for s in self.sentences)


def generate_alignment_based(
    src: AlignedSentence, extracted: AmrGraph
) -> list[str]:
    """Tokens of ``src`` aligned to any node present in ``extracted``.

    Token positions are emitted once each, in ascending source order; a
    token counts as covered when any of its aligned nodes survived.  A
    source sentence without alignments yields [] with a warning.
    """
    if src.graph is None:
        raise MissingGraphError("source sentence has no graph")
    if not src.alignments:
        warnings.warn(
            "source sentence has no alignments; alignment-based generation "
            "emits nothing",
            stacklevel=2,
        )
        return []
    covered: set[int] = set()
    for a in src.alignments:
        node = resolve_node_path(src.graph, a.node_path)
        if node in extracted.nodes:
            covered.update(range(a.token_start, a.token_end))
    return [src.tokens[i] for i in sorted(covered)]


class AlignmentGenerator:
    """Callable facade so generators are interchangeable in the pipeline."""

    name = "alignment"

    def generate_batch(
        self, items: Sequence[tuple[AlignedSentence, AmrGraph]]
    ) -> list[list[str]]:
        return [generate_alignment_based(src, g) for src, g in items]


class ExternalGenerator:
    """Adapter for a graph-to-text subprocess.

    Protocol: one PENMAN graph per input line, one generated sentence per
    output line, order-preserving, non-zero exit fails the batch.  The
    timeout scales with batch size.
    """

    def __init__(self, cmd: str | Sequence[str], *, timeout_per_graph: float = 60.0):
        self.cmd = cmd
        self.timeout_per_graph = timeout_per_graph
        self.name = f"external:{as_argv(cmd)[0]}"

    def generate_batch(
        self, items: Sequence[tuple[AlignedSentence, AmrGraph]]
    ) -> list[list[str]]:
        graphs = [g for _, g in items]
        lines = [serialize_penman(g) for g in graphs]
        out = run_line_protocol(
            self.cmd, lines, timeout=self.timeout_per_graph * max(1, len(lines))
        )
        results: list[list[str]] = []
        for i, line in enumerate(out):
            tokens = line.split()
            if not tokens:
                raise ExternalToolError(
                    f"generator returned an empty sentence for graph {i}"
                )
            results.append(tokens)
        return results


Generator = AlignmentGenerator | ExternalGenerator


def generate_external(
    extracted: AmrGraph,
    generator_cmd: str | Sequence[str],
    *,
    timeout: float = 60.0,
) -> list[str]:
    """One-shot external generation for a single graph."""
    gen = ExternalGenerator(generator_cmd, timeout_per_graph=timeout)
    dummy = AlignedSentence(tokens=())
    return gen.generate_batch([(dummy, extracted)])[0]


def lead_n_tokens(doc: Document, n: int) -> list[tuple[str, ...]]:
    """Raw leading sentences (the plain Lead-n baseline)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return [s.tokens for s in doc.story[:n]]


def build_lead_n_amr_baseline(
    doc: Document, n: int, generator: Generator
) -> GeneratedSummary:
    """Round-trip the leading sentences through their FULL graphs.

    No extraction happens: each leading sentence's whole graph goes to the
    generator.  With the alignment generator and total coverage this
    reproduces the leading sentences exactly, which is what makes it a
    fair baseline for graph-mediated summaries.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    leading = doc.story[: min(n, len(doc.story))]
    missing = [i for i, s in enumerate(leading) if s.graph is None]
    if missing:
        raise MissingGraphError(
            f"document {doc.id!r}: leading sentences without graphs: "
            + ", ".join(map(str, missing))
        )
    items = [(s, s.graph) for s in leading]
    sentences = generator.generate_batch(items)
    return GeneratedSummary(
        sentences=tuple(tuple(s) for s in sentences), generator=generator.name
    )
