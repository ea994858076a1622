"""Corpus loading: gold-annotated AMR files, `.story` files, external parsing.

Two input shapes are supported.

Gold-annotated files hold blank-line-separated blocks::

    # ::id doc1.2
    # ::snt Ann ran home .
    # ::alignments 0-1|0.0 1-2|0
    (r / run-02
        :ARG0 (p / person :name (n / name :op1 "Ann"))
        :destination (h / home))

The block id encodes position: ``<docid>.<n>`` is story sentence ``n``,
``<docid>.s<n>`` is summary sentence ``n`` (the ``s`` marker is
configurable since annotation releases differ).  Tokens come from
whitespace-splitting the ``::snt`` line; alignments index those tokens.

`.story` files are article paragraphs separated by blank lines, followed
by ``@highlight`` lines each introducing one summary point.  Stories carry
no graphs; an external parser subprocess can fill them in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .exceptions import CorpusFormatError, PenmanSyntaxError
from .external import run_line_protocol
from .graph import AlignedSentence, parse_alignment_entries, parse_penman

_SENTENCE_SPLIT_RE = re.compile(r"(?<=[.!?])\s+(?=[A-Z])")


def split_sentences(text: str) -> list[str]:
    """Split raw text into sentences.

    Paragraphs (blank-line-separated) never join; within a paragraph a
    sentence ends at `.`, `!` or `?` followed by whitespace and an
    uppercase letter, or at end of text.  Abbreviations are not
    special-cased.
    """
    sentences: list[str] = []
    for para in re.split(r"\n\s*\n", text):
        flat = " ".join(para.split())
        if not flat:
            continue
        sentences.extend(s for s in _SENTENCE_SPLIT_RE.split(flat) if s)
    return sentences


@dataclass(frozen=True)
class Document:
    """One story with its reference summary."""

    id: str
    story: tuple[AlignedSentence, ...]
    summary: tuple[AlignedSentence, ...]

    def __post_init__(self):
        object.__setattr__(self, "story", tuple(self.story))
        object.__setattr__(self, "summary", tuple(self.summary))
        if not self.story:
            raise CorpusFormatError(f"document {self.id!r} has an empty story")

    @property
    def fully_parsed(self) -> bool:
        """True when every story and summary sentence carries a graph."""
        return all(s.graph is not None for s in self.story + self.summary)

    @property
    def summary_text(self) -> str:
        return " ".join(s.text for s in self.summary)


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    source_kind: str

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        if self.source_kind not in ("amr-bank", "cnn-dm"):
            raise CorpusFormatError(
                f"unknown source_kind {self.source_kind!r}"
            )
        seen: set[str] = set()
        for d in self.documents:
            if d.id in seen:
                raise CorpusFormatError(f"duplicate document id {d.id!r}")
            seen.add(d.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def get(self, doc_id: str) -> Document:
        for d in self.documents:
            if d.id == doc_id:
                return d
        raise KeyError(f"no document {doc_id!r}")


# ---------------------------------------------------------------------------
# Gold-annotated files


def _read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CorpusFormatError(f"cannot read {path}: {e}") from e


def _iter_blocks(text: str) -> Iterable[list[str]]:
    block: list[str] = []
    for line in text.splitlines():
        if line.strip():
            block.append(line)
        elif block:
            yield block
            block = []
    if block:
        yield block


def _meta_value(line: str, key: str) -> str | None:
    marker = f"::{key}"
    body = line[1:].strip()
    if not body.startswith(marker):
        return None
    rest = body[len(marker) :]
    if rest and not rest[0].isspace():
        return None
    return rest.strip()


def load_amr_bank(path: str | Path, *, summary_marker: str = "s") -> Corpus:
    """Load a gold-annotated file into a Corpus (source_kind amr-bank).

    ``summary_marker`` is the letter prefix that tags a block id's index as
    a summary sentence (``doc1.s2`` by default).
    """
    text = _read_text(path)
    # (docid, is_summary, n) -> sentence, collected then ordered.
    story_parts: dict[str, dict[int, AlignedSentence]] = {}
    summary_parts: dict[str, dict[int, AlignedSentence]] = {}
    doc_order: list[str] = []
    index_re = re.compile(
        rf"^(?P<doc>.+)\.(?P<marker>{re.escape(summary_marker)}?)(?P<n>\d+)$"
    )

    for block in _iter_blocks(text):
        block_id: str | None = None
        snt: str | None = None
        alignment_text: str | None = None
        graph_lines: list[str] = []
        for line in block:
            if line.lstrip().startswith("#"):
                stripped = line.lstrip()
                value = _meta_value(stripped, "id")
                if value is not None:
                    block_id = value.split()[0] if value.split() else ""
                    continue
                value = _meta_value(stripped, "snt")
                if value is not None:
                    snt = value
                    continue
                value = _meta_value(stripped, "alignments")
                if value is not None:
                    alignment_text = value
                continue
            graph_lines.append(line)

        where = block_id if block_id else f"block starting {block[0]!r}"
        if block_id is None:
            raise CorpusFormatError(f"missing ::id in {where}")
        if snt is None:
            raise CorpusFormatError(f"missing ::snt in block {where!r}")
        if not graph_lines:
            raise CorpusFormatError(f"missing graph in block {where!r}")
        m = index_re.match(block_id)
        if not m:
            raise CorpusFormatError(
                f"block id {block_id!r} is not <docid>.<n> or "
                f"<docid>.{summary_marker}<n>"
            )
        doc_id = m.group("doc")
        is_summary = bool(m.group("marker"))
        n = int(m.group("n"))

        try:
            graph = parse_penman("\n".join(graph_lines))
        except PenmanSyntaxError as e:
            raise CorpusFormatError(
                f"unparseable graph in block {block_id!r}: {e}"
            ) from e
        tokens = tuple(snt.split())
        alignments = (
            parse_alignment_entries(alignment_text) if alignment_text else ()
        )
        sentence = AlignedSentence(tokens=tokens, graph=graph, alignments=alignments)

        if doc_id not in story_parts:
            story_parts[doc_id] = {}
            summary_parts[doc_id] = {}
            doc_order.append(doc_id)
        bucket = summary_parts[doc_id] if is_summary else story_parts[doc_id]
        if n in bucket:
            raise CorpusFormatError(f"duplicate block id {block_id!r}")
        bucket[n] = sentence

    missing_summary = [d for d in doc_order if not summary_parts[d]]
    if missing_summary:
        raise CorpusFormatError(
            "documents without summary blocks: " + ", ".join(missing_summary)
        )
    missing_story = [d for d in doc_order if not story_parts[d]]
    if missing_story:
        raise CorpusFormatError(
            "documents without story blocks: " + ", ".join(missing_story)
        )

    documents = tuple(
        Document(
            id=d,
            story=tuple(s for _, s in sorted(story_parts[d].items())),
            summary=tuple(s for _, s in sorted(summary_parts[d].items())),
        )
        for d in doc_order
    )
    return Corpus(documents=documents, source_kind="amr-bank")


# ---------------------------------------------------------------------------
# CNN/DailyMail `.story` files


def load_cnn_dm_story(path: str | Path) -> Document:
    """Load one `.story` file (non-anonymized) into a Document."""
    p = Path(path)
    lines = _read_text(p).splitlines()
    article_lines: list[str] = []
    highlights: list[list[str]] = []
    current: list[str] | None = None
    for line in lines:
        if line.strip() == "@highlight":
            current = []
            highlights.append(current)
        elif current is not None:
            if line.strip():
                current.append(line.strip())
        else:
            article_lines.append(line)

    if not highlights:
        raise CorpusFormatError(f"{p.name}: no @highlight found")
    empty = [i for i, h in enumerate(highlights) if not h]
    if empty:
        raise CorpusFormatError(
            f"{p.name}: @highlight #{empty[0] + 1} has no text"
        )
    story_sents = split_sentences("\n".join(article_lines))
    if not story_sents:
        raise CorpusFormatError(f"{p.name}: empty article")

    story = tuple(
        AlignedSentence(tokens=tuple(s.split())) for s in story_sents
    )
    summary = tuple(
        AlignedSentence(tokens=tuple(" ".join(h).split())) for h in highlights
    )
    return Document(id=p.stem, story=story, summary=summary)


def load_cnn_dm(path: str | Path) -> Corpus:
    """Load one `.story` file, or every `*.story` under a directory."""
    root = Path(path)
    files = [root] if root.is_file() else sorted(root.glob("*.story"))
    if not files:
        raise CorpusFormatError(f"no .story files under {root}")
    return Corpus(
        documents=tuple(load_cnn_dm_story(f) for f in files),
        source_kind="cnn-dm",
    )


def load_corpus(path: str | Path, kind: str) -> Corpus:
    """Dispatch on corpus kind: 'amr-bank' file or 'cnn-dm' directory."""
    if kind == "amr-bank":
        return load_amr_bank(path)
    if kind == "cnn-dm":
        return load_cnn_dm(path)
    raise CorpusFormatError(f"unknown corpus kind {kind!r}")


# ---------------------------------------------------------------------------
# Split files


def load_split_ids(path: str | Path) -> list[str]:
    """Read one document id per line; blank lines and # comments skipped."""
    ids: list[str] = []
    for line in _read_text(path).splitlines():
        body = line.split("#", 1)[0].strip()
        if body:
            ids.append(body)
    return ids


def filter_by_ids(corpus: Corpus, ids: Sequence[str]) -> Corpus:
    """Restrict a corpus to ``ids``, keeping corpus order."""
    wanted = set(ids)
    unknown = wanted - {d.id for d in corpus.documents}
    if unknown:
        raise CorpusFormatError(
            "split file names unknown documents: " + ", ".join(sorted(unknown))
        )
    return Corpus(
        documents=tuple(d for d in corpus.documents if d.id in wanted),
        source_kind=corpus.source_kind,
    )


# ---------------------------------------------------------------------------
# External parsing


@dataclass(frozen=True)
class ParseFailure:
    """One sentence the external parser could not annotate."""

    document_id: str
    part: str  # "story" or "summary"
    index: int
    message: str


def parse_with_external(
    corpus: Corpus,
    parser_cmd: str | Sequence[str],
    *,
    timeout_per_sentence: float = 60.0,
) -> tuple[Corpus, tuple[ParseFailure, ...]]:
    """Fill in missing graphs by running an external parser subprocess.

    Every sentence lacking a graph is sent (space-joined tokens, one per
    line); each response line is a PENMAN graph, optionally prefixed by
    ``::alignments <entries>\\t``.  Gold graphs are never overwritten, so
    the call is a no-op on fully annotated corpora.  A response line that
    does not parse, or whose alignments do not fit the sentence, leaves
    that sentence graph-less and is reported in the returned failure list.
    Batch-level problems (unrunnable command, non-zero exit, wrong line
    count) raise :class:`ExternalToolError` instead.
    """
    pending: list[tuple[int, str, int]] = []  # (doc pos, part, sentence idx)
    for di, doc in enumerate(corpus.documents):
        for part, sentences in (("story", doc.story), ("summary", doc.summary)):
            for si, sent in enumerate(sentences):
                if sent.graph is None:
                    pending.append((di, part, si))
    if not pending:
        return corpus, ()

    def sentence_at(di: int, part: str, si: int) -> AlignedSentence:
        doc = corpus.documents[di]
        return (doc.story if part == "story" else doc.summary)[si]

    requests = [sentence_at(*key).text for key in pending]
    responses = run_line_protocol(
        parser_cmd,
        requests,
        timeout=timeout_per_sentence * len(requests),
    )

    parsed: dict[tuple[int, str, int], AlignedSentence] = {}
    failures: list[ParseFailure] = []
    for key, line in zip(pending, responses):
        di, part, si = key
        old = sentence_at(di, part, si)
        alignment_text = None
        body = line
        if body.startswith("::alignments"):
            head, tab, body = body.partition("\t")
            if not tab:
                failures.append(
                    ParseFailure(
                        corpus.documents[di].id,
                        part,
                        si,
                        "alignment prefix without tab separator",
                    )
                )
                continue
            alignment_text = head[len("::alignments") :].strip()
        try:
            graph = parse_penman(body)
            alignments = (
                parse_alignment_entries(alignment_text)
                if alignment_text
                else ()
            )
            parsed[key] = AlignedSentence(
                tokens=old.tokens, graph=graph, alignments=alignments
            )
        except ValueError as e:
            failures.append(
                ParseFailure(corpus.documents[di].id, part, si, str(e))
            )

    def rebuild(di: int, part: str, sentences: tuple[AlignedSentence, ...]):
        return tuple(
            parsed.get((di, part, si), s) for si, s in enumerate(sentences)
        )

    documents = tuple(
        Document(
            id=doc.id,
            story=rebuild(di, "story", doc.story),
            summary=rebuild(di, "summary", doc.summary),
        )
        for di, doc in enumerate(corpus.documents)
    )
    return Corpus(documents=documents, source_kind=corpus.source_kind), tuple(
        failures
    )
