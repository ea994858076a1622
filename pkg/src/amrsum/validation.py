"""Input validation helpers for the estimator facade and pipeline entry
points.  All raise TypeError/ValueError with the offending value named, in
the style of scikit-learn's check functions."""

from __future__ import annotations

from typing import Iterable, Sequence

from .corpus import Corpus, Document


def check_document(obj) -> Document:
    if not isinstance(obj, Document):
        raise TypeError(f"expected a Document, got {type(obj).__name__}")
    return obj


def check_documents(X) -> list[Document]:
    """Accept a Corpus or any iterable of Document; reject strings."""
    if isinstance(X, Corpus):
        return list(X.documents)
    if isinstance(X, (str, bytes)):
        raise TypeError(
            "expected documents, got a string; load a corpus first"
        )
    if not isinstance(X, Iterable):
        raise TypeError(f"expected an iterable of Document, got {type(X).__name__}")
    docs = [check_document(d) for d in X]
    return docs


def check_positive_int(value, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return value


def check_choice(value, name: str, choices: Sequence[str]) -> str:
    if value not in choices:
        raise ValueError(
            f"{name} must be one of {', '.join(choices)}; got {value!r}"
        )
    return value
