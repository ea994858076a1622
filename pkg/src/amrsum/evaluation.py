"""Scoring predicted summaries against references, with report containers.

Reports carry scores on the 0-100 scale (one decimal in text tables, full
precision in JSON).  The default aggregate is the macro average: each
component (recall, precision, F1) is the arithmetic mean of the
per-document values, so the aggregate F1 column is a mean of F1s, not the
harmonic mean of the aggregate recall/precision.  A micro variant pools
match counts across documents before dividing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from .rouge import ROUGE_VARIANTS, RougeScore, lcs_length, ngrams, normalize

_VARIANT_N = {"rouge-1": 1, "rouge-2": 2}


@dataclass(frozen=True)
class DocumentEval:
    """Scores for one document, 0-100 scale."""

    document_id: str
    predicted: str
    reference: str
    scores: dict[str, RougeScore]


@dataclass(frozen=True)
class EvaluationReport:
    per_document: tuple[DocumentEval, ...]
    aggregate: dict[str, RougeScore]
    variants: tuple[str, ...]
    micro: bool
    skipped: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "aggregate": {
                v: {"recall": s.recall, "precision": s.precision, "f1": s.f1}
                for v, s in self.aggregate.items()
            },
            "per_document": [
                {
                    "id": d.document_id,
                    "predicted": d.predicted,
                    "reference": d.reference,
                    "scores": {
                        v: {
                            "recall": s.recall,
                            "precision": s.precision,
                            "f1": s.f1,
                        }
                        for v, s in d.scores.items()
                    },
                }
                for d in self.per_document
            ],
            "aggregation": "micro" if self.micro else "macro",
            "skipped": list(self.skipped),
        }

    def format_table(self) -> str:
        """Aligned text table: R1 R/P/F1 plus F1 of the other variants."""
        cols = ["document", "r1-recall", "r1-precision", "r1-f1"]
        extra = [v for v in self.variants if v != "rouge-1"]
        cols += [f"{v}-f1" for v in extra]

        def row(name: str, scores: dict[str, RougeScore]) -> list[str]:
            r1 = scores.get("rouge-1", RougeScore(0.0, 0.0, 0.0))
            cells = [name, f"{r1.recall:.1f}", f"{r1.precision:.1f}", f"{r1.f1:.1f}"]
            for v in extra:
                s = scores.get(v)
                cells.append(f"{s.f1:.1f}" if s else "-")
            return cells

        rows = [cols]
        rows += [row(d.document_id, d.scores) for d in self.per_document]
        label = "micro-average" if self.micro else "macro-average"
        rows.append(row(label, self.aggregate))
        widths = [max(len(r[i]) for r in rows) for i in range(len(cols))]
        lines = []
        for i, r in enumerate(rows):
            lines.append(
                "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
            )
            if i == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines)


def _pair_counts(ref: list[str], cand: list[str], variant: str) -> tuple[int, int, int]:
    """(matched, reference total, candidate total) for one variant."""
    if variant in _VARIANT_N:
        n = _VARIANT_N[variant]
        r, c = ngrams(ref, n), ngrams(cand, n)
        return sum((r & c).values()), sum(r.values()), sum(c.values())
    if variant == "rouge-l":
        return lcs_length(ref, cand), len(ref), len(cand)
    raise ValueError(f"unknown variant {variant!r}")


def _scale(s: RougeScore) -> RougeScore:
    return RougeScore(s.recall * 100.0, s.precision * 100.0, s.f1 * 100.0)


def evaluate_documents(
    pairs: Sequence[tuple[str, str, str]],
    *,
    variants: Sequence[str] = ROUGE_VARIANTS,
    micro: bool = False,
) -> EvaluationReport:
    """Score (document id, predicted text, reference text) triples.

    Documents whose reference normalizes to nothing are skipped with a
    warning and listed in the report.
    """
    variants = tuple(variants)
    for v in variants:
        if v not in ROUGE_VARIANTS:
            raise ValueError(f"unknown variant {v!r}")
    per_doc: list[DocumentEval] = []
    skipped: list[str] = []
    counts: dict[str, list[int]] = {v: [0, 0, 0] for v in variants}
    for doc_id, predicted, reference in pairs:
        ref = normalize(reference)
        cand = normalize(predicted)
        if not ref:
            warnings.warn(
                f"document {doc_id!r} has an empty reference; skipped",
                stacklevel=2,
            )
            skipped.append(doc_id)
            continue
        scores: dict[str, RougeScore] = {}
        for v in variants:
            matched, rt, ct = _pair_counts(ref, cand, v)
            counts[v][0] += matched
            counts[v][1] += rt
            counts[v][2] += ct
            scores[v] = _scale(RougeScore.from_counts(matched, rt, ct))
        per_doc.append(
            DocumentEval(
                document_id=doc_id,
                predicted=predicted,
                reference=reference,
                scores=scores,
            )
        )

    aggregate: dict[str, RougeScore] = {}
    for v in variants:
        if micro:
            matched, rt, ct = counts[v]
            aggregate[v] = _scale(RougeScore.from_counts(matched, rt, ct))
        elif per_doc:
            k = len(per_doc)
            aggregate[v] = RougeScore(
                recall=sum(d.scores[v].recall for d in per_doc) / k,
                precision=sum(d.scores[v].precision for d in per_doc) / k,
                f1=sum(d.scores[v].f1 for d in per_doc) / k,
            )
        else:
            aggregate[v] = RougeScore(0.0, 0.0, 0.0)

    return EvaluationReport(
        per_document=tuple(per_doc),
        aggregate=aggregate,
        variants=variants,
        micro=micro,
        skipped=tuple(skipped),
    )
