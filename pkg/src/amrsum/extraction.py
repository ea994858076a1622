"""Step 2b: carve the summary subgraph out of a selected sentence graph.

The anchor is found in two hops: locate the story's most-referred entity
inside the sentence, then walk from that entity node toward the root and
stop at the first verb-sense concept.  The subtree hanging from that verb
is the summary graph.  When a hop fails the full sentence graph is kept
and the result says which hop failed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Document
from .exceptions import MissingGraphError
from .graph import AmrGraph, is_verb_concept, path_to_root, subtree
from .selection import EntityTally, SelectionResult, entity_nodes, entity_tallies

FALLBACK_NONE = "none"
FALLBACK_NO_ENTITY = "no_entity_in_sentence"
FALLBACK_NO_VERB = "no_verb_on_path"


@dataclass(frozen=True)
class ExtractionResult:
    """Summary subgraph extracted from one story sentence."""

    sentence_index: int
    anchor_entity: str | None
    anchor_verb: str | None
    graph: AmrGraph
    fallback: str


def _pick_entity_node(g: AmrGraph, variables: tuple[str, ...]) -> str:
    """Prefer the occurrence closest to the root; ties go to edge order."""
    order = {v: i for i, v in enumerate(variables)}
    return min(variables, key=lambda v: (g.tree_depth(v), order[v]))


def extract_summary_graph(
    doc: Document,
    sentence_index: int,
    tallies: list[EntityTally] | None = None,
) -> ExtractionResult:
    """Extract the summary subgraph from one story sentence.

    Entity importance is story-global: the tally list is walked in order
    and the first entity present in this sentence anchors the walk.  The
    anchor verb is the first verb-sense node strictly above the entity on
    the tree path to the root.  Precomputed ``tallies`` may be passed to
    avoid rescanning the story per sentence.
    """
    sent = doc.story[sentence_index]
    if sent.graph is None:
        raise MissingGraphError(
            f"document {doc.id!r}: story sentence {sentence_index} has no graph"
        )
    g = sent.graph
    if tallies is None:
        tallies = entity_tallies(doc)

    present = entity_nodes(g)
    anchor_entity = None
    entity_node = None
    for tally in tallies:
        if tally.entity in present:
            anchor_entity = tally.entity
            entity_node = _pick_entity_node(g, present[tally.entity])
            break
    if entity_node is None:
        return ExtractionResult(
            sentence_index=sentence_index,
            anchor_entity=None,
            anchor_verb=None,
            graph=g,
            fallback=FALLBACK_NO_ENTITY,
        )

    for v in path_to_root(g, entity_node)[1:]:
        if is_verb_concept(g.concept(v)):
            return ExtractionResult(
                sentence_index=sentence_index,
                anchor_entity=anchor_entity,
                anchor_verb=v,
                graph=subtree(g, v),
                fallback=FALLBACK_NONE,
            )
    return ExtractionResult(
        sentence_index=sentence_index,
        anchor_entity=anchor_entity,
        anchor_verb=None,
        graph=g,
        fallback=FALLBACK_NO_VERB,
    )


def extract_all(doc: Document, sel: SelectionResult) -> list[ExtractionResult]:
    """One extraction per selected sentence, in index order."""
    tallies = entity_tallies(doc)
    return [extract_summary_graph(doc, i, tallies) for i in sel.indices]
