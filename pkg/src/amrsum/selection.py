"""Step 2a: choose which story sentences feed the summary.

Two strategies plus an extractive upper bound:

* first-n: the leading sentences.
* co-occurrence + first: find the first sentence containing both of the
  story's two most-mentioned entities, and pair it with sentence 0.
* oracle: per reference summary sentence, the story sentence with the
  highest unigram recall (upper bound, needs the reference).

Entities are read off the graphs: any node with a ``:name`` substructure
names an entity, and its canonical form is the name's ``:op`` constants
joined in order and lowercased, so surface variation ("Ann", "ANN")
collapses but aliases do not ("obama" != "barack obama").
"""

from __future__ import annotations

import random
import re
import warnings
from dataclasses import dataclass
from typing import Iterable

from .corpus import Corpus, Document
from .exceptions import MissingGraphError
from .graph import AlignedSentence, AmrGraph
from .rouge import normalize, rouge_n

_OP_RE = re.compile(r"^:op(\d+)$")


def entity_nodes(g: AmrGraph) -> dict[str, tuple[str, ...]]:
    """Map canonical entity string to the variables carrying that name.

    A node is an entity when it has a ``:name`` edge to a node with
    concept ``name``; the canonical string joins that name node's ``:opK``
    constants (quotes stripped) in K order, lowercased.  Nodes whose name
    has no constants are skipped.
    """
    found: dict[str, list[str]] = {}
    for s, r, t in g.edges:
        if r != ":name" or t not in g.nodes or g.nodes[t] != "name":
            continue
        ops: list[tuple[int, str]] = []
        for s2, r2, t2 in g.edges:
            if s2 != t:
                continue
            m = _OP_RE.match(r2)
            if m and t2 not in g.nodes:
                ops.append((int(m.group(1)), t2.strip('"')))
        canonical = " ".join(w for _, w in sorted(ops)).lower()
        if canonical:
            found.setdefault(canonical, []).append(s)
    return {e: tuple(vs) for e, vs in found.items()}


@dataclass(frozen=True)
class EntityTally:
    entity: str
    mentions: int
    first_sentence: int


def _require_story_graphs(doc: Document) -> None:
    missing = [i for i, s in enumerate(doc.story) if s.graph is None]
    if missing:
        raise MissingGraphError(
            f"document {doc.id!r}: story sentences without graphs: "
            + ", ".join(map(str, missing))
        )


def entity_tallies(doc: Document) -> list[EntityTally]:
    """Entities across the story, most mentioned first.

    A sentence counts once per entity however often the entity recurs in
    it.  Order: mentions desc, first sentence asc, entity string asc.
    """
    _require_story_graphs(doc)
    mentions: dict[str, int] = {}
    first: dict[str, int] = {}
    for i, sent in enumerate(doc.story):
        for entity in entity_nodes(sent.graph):
            mentions[entity] = mentions.get(entity, 0) + 1
            first.setdefault(entity, i)
    tallies = [
        EntityTally(entity=e, mentions=m, first_sentence=first[e])
        for e, m in mentions.items()
    ]
    tallies.sort(key=lambda t: (-t.mentions, t.first_sentence, t.entity))
    return tallies


@dataclass(frozen=True)
class SelectionResult:
    """Chosen story sentence indices, strictly increasing."""

    method: str
    indices: tuple[int, ...]
    fallback: bool = False

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        if not self.indices:
            raise ValueError("empty selection")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"indices not strictly increasing: {self.indices}")
        if self.indices[0] < 0:
            raise ValueError(f"negative index in {self.indices}")


def select_first_n(doc: Document, n: int) -> SelectionResult:
    """The leading min(n, story length) sentences."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return SelectionResult(
        method=f"first_{n}",
        indices=tuple(range(min(n, len(doc.story)))),
    )


def _sentence_entities(sent: AlignedSentence) -> set[str]:
    return set(entity_nodes(sent.graph)) if sent.graph is not None else set()


def _names_match(a: str, b: str, partial: bool) -> bool:
    if a == b:
        return True
    if not partial:
        return False
    wa, wb = set(a.split()), set(b.split())
    return wa <= wb or wb <= wa


def select_cooccurrence_plus_first(
    doc: Document, *, partial_names: bool = False
) -> SelectionResult:
    """Sentence 0 plus the first sentence mentioning both top entities.

    Falls back to sentence 0 alone (flagged) when the story has fewer than
    two entities or no sentence contains both.  ``partial_names`` lets a
    name match any name whose words are a superset or subset of it.
    """
    _require_story_graphs(doc)
    tallies = entity_tallies(doc)
    method = "cooccurrence_plus_first"
    if len(tallies) < 2:
        return SelectionResult(method=method, indices=(0,), fallback=True)
    top_a, top_b = tallies[0].entity, tallies[1].entity
    for j, sent in enumerate(doc.story):
        present = _sentence_entities(sent)
        if any(_names_match(top_a, e, partial_names) for e in present) and any(
            _names_match(top_b, e, partial_names) for e in present
        ):
            return SelectionResult(
                method=method, indices=tuple(sorted({0, j}))
            )
    return SelectionResult(method=method, indices=(0,), fallback=True)


def select_oracle(doc: Document) -> SelectionResult:
    """For each reference summary sentence, its best-recall story sentence.

    Ties go to the smaller story index; duplicates collapse.  Needs no
    graphs.  This is the extractive upper bound for unigram recall.
    """
    chosen: set[int] = set()
    for summ in doc.summary:
        ref = normalize(summ.text)
        if not ref:
            continue
        best_i, best = 0, -1.0
        for i, sent in enumerate(doc.story):
            r = rouge_n(ref, normalize(sent.text), 1).recall
            if r > best:
                best_i, best = i, r
        chosen.add(best_i)
    if not chosen:
        chosen = {0}
    return SelectionResult(method="oracle", indices=tuple(sorted(chosen)))


# ---------------------------------------------------------------------------
# Extractiveness analysis


@dataclass(frozen=True)
class BestMatch:
    """Best story match for one reference summary sentence."""

    document_id: str
    summary_index: int
    best_story_index: int
    best_recall: float


@dataclass(frozen=True)
class BestMatchReport:
    matches: tuple[BestMatch, ...]
    seed: int
    sample_size: int | None

    @property
    def mean(self) -> float:
        if not self.matches:
            return 0.0
        return sum(m.best_recall for m in self.matches) / len(self.matches)

    @property
    def fraction_at_least_half(self) -> float:
        if not self.matches:
            return 0.0
        hits = sum(1 for m in self.matches if m.best_recall >= 0.5)
        return hits / len(self.matches)

    def cumulative_table(self, step: float = 0.05) -> list[tuple[float, float]]:
        """(score bin, % of sentences with best recall <= bin) rows."""
        bins = [round(i * step, 10) for i in range(int(round(1 / step)) + 1)]
        rows = []
        total = len(self.matches)
        for b in bins:
            hits = sum(1 for m in self.matches if m.best_recall <= b + 1e-12)
            rows.append((b, 100.0 * hits / total if total else 0.0))
        return rows


def best_match_analysis(
    corpus: Corpus | Iterable[Document],
    *,
    sample_size: int | None = None,
    seed: int = 42,
) -> BestMatchReport:
    """How much of each reference summary sentence some story sentence holds.

    Scores each summary sentence by its maximum unigram recall against any
    single story sentence of the same document (summary as reference).
    ``sample_size`` restricts the analysis to a seeded random sample of
    summary sentences.  Empty summary sentences are skipped with a warning.
    """
    pool: list[tuple[Document, int]] = []
    for doc in corpus:
        for k in range(len(doc.summary)):
            pool.append((doc, k))
    if sample_size is not None and sample_size < len(pool):
        pool = random.Random(seed).sample(pool, sample_size)
        pool.sort(key=lambda p: (p[0].id, p[1]))

    matches: list[BestMatch] = []
    for doc, k in pool:
        ref = normalize(doc.summary[k].text)
        if not ref:
            warnings.warn(
                f"document {doc.id!r}: summary sentence {k} is empty after "
                "normalization; skipped",
                stacklevel=2,
            )
            continue
        story_tokens = [normalize(s.text) for s in doc.story]
        best_i, best = 0, -1.0
        for i, tokens in enumerate(story_tokens):
            r = rouge_n(ref, tokens, 1).recall
            if r > best:
                best_i, best = i, r
        matches.append(
            BestMatch(
                document_id=doc.id,
                summary_index=k,
                best_story_index=best_i,
                best_recall=best,
            )
        )
    return BestMatchReport(
        matches=tuple(matches), seed=seed, sample_size=sample_size
    )
