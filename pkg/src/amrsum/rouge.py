"""Recall-oriented n-gram and subsequence overlap metrics.

All scores are fractions in [0, 1]; reporting code multiplies by 100.
Text normalization is lowercasing plus extraction of ``[a-z0-9]+`` runs,
so punctuation splits tokens and is dropped ("Don't" -> ["don", "t"]).
Stop words count like any other token unless explicitly dropped; there is
no stemming.

Each function accepts either a raw string (normalized here) or an already
tokenized sequence (used verbatim).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

_TOKEN_RE = re.compile(r"[a-z0-9]+")

ROUGE_VARIANTS = ("rouge-1", "rouge-2", "rouge-l")


def normalize(text: str, *, drop_stopwords: bool = False) -> list[str]:
    """Lowercase and split into alphanumeric tokens."""
    tokens = _TOKEN_RE.findall(text.lower())
    if drop_stopwords:
        from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

        tokens = [t for t in tokens if t not in ENGLISH_STOP_WORDS]
    return tokens


def _as_tokens(text: str | Sequence[str]) -> list[str]:
    if isinstance(text, str):
        return normalize(text)
    return list(text)


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    """Multiset of the contiguous n-grams of ``tokens``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Counter(
        tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)
    )


@dataclass(frozen=True)
class RougeScore:
    """Recall, precision and their harmonic mean, as fractions."""

    recall: float
    precision: float
    f1: float

    @staticmethod
    def from_counts(matched: int, reference_total: int, candidate_total: int) -> "RougeScore":
        r = matched / reference_total if reference_total else 0.0
        p = matched / candidate_total if candidate_total else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return RougeScore(recall=r, precision=p, f1=f)


def rouge_n(
    reference: str | Sequence[str],
    candidate: str | Sequence[str],
    n: int = 1,
) -> RougeScore:
    """N-gram overlap with clipped counts.

    Each reference n-gram occurrence can be matched at most once, so the
    match total is the multiset intersection size.  Empty reference or
    candidate yields zero for the corresponding component.
    """
    ref = ngrams(_as_tokens(reference), n)
    cand = ngrams(_as_tokens(candidate), n)
    matched = sum((ref & cand).values())
    return RougeScore.from_counts(matched, sum(ref.values()), sum(cand.values()))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Length of a longest common subsequence (not necessarily contiguous)."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        row = [0]
        for j, y in enumerate(b, 1):
            if x == y:
                row.append(prev[j - 1] + 1)
            else:
                row.append(max(prev[j], row[j - 1]))
        prev = row
    return prev[-1]


def rouge_l(
    reference: str | Sequence[str],
    candidate: str | Sequence[str],
) -> RougeScore:
    """Longest-common-subsequence overlap.

    Recall divides the LCS length by the reference length, precision by
    the candidate length.
    """
    ref = _as_tokens(reference)
    cand = _as_tokens(candidate)
    matched = lcs_length(ref, cand)
    return RougeScore.from_counts(matched, len(ref), len(cand))


def rouge_all(
    reference: str | Sequence[str],
    candidate: str | Sequence[str],
) -> dict[str, RougeScore]:
    """ROUGE-1, ROUGE-2 and ROUGE-L for one reference/candidate pair."""
    ref = _as_tokens(reference)
    cand = _as_tokens(candidate)
    return {
        "rouge-1": rouge_n(ref, cand, 1),
        "rouge-2": rouge_n(ref, cand, 2),
        "rouge-l": rouge_l(ref, cand),
    }


def rouge_summary(
    reference_sentences: Sequence[Sequence[str]],
    candidate_sentences: Sequence[Sequence[str]],
    variant: str = "rouge-1",
) -> RougeScore:
    """Score whole summaries: sentences concatenate into one sequence."""
    if variant not in ROUGE_VARIANTS:
        raise ValueError(
            f"variant must be one of {', '.join(ROUGE_VARIANTS)}; got {variant!r}"
        )
    ref = [t for s in reference_sentences for t in s]
    cand = [t for s in candidate_sentences for t in s]
    if variant == "rouge-l":
        return rouge_l(ref, cand)
    return rouge_n(ref, cand, 1 if variant == "rouge-1" else 2)
