"""Estimator facade: documents in, summaries out, scikit-learn idiom.

The pipeline is a pure document transform, so it wears the standard
fit/transform coat: parameters are constructor arguments stored verbatim,
``fit`` only validates (nothing is learned), ``transform`` maps documents
to summary strings.  This keeps it composable with sklearn tooling
(``clone``, grid search over ``method``/``n``, pipelines).
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .generation import AlignmentGenerator, ExternalGenerator
from .pipeline import METHODS, DocumentSummary, summarize_one
from .validation import check_choice, check_documents, check_positive_int


class AmrSummarizer(BaseEstimator, TransformerMixin):
    """Summarize documents through their semantic graphs.

    Parameters
    ----------
    method : {"first_n", "cooccurrence_plus_first", "oracle"}
        Sentence selection strategy.
    n : int, default=1
        How many leading sentences ``first_n`` keeps.
    generator : str, default="alignment"
        ``"alignment"`` for alignment projection, anything else is run as
        an external graph-to-text command line.
    partial_names : bool, default=False
        Let entity names match by word-subset instead of exact string.
    timeout : float, default=60.0
        Per-graph budget (seconds) for an external generator.
    """

    def __init__(
        self,
        method: str = "cooccurrence_plus_first",
        n: int = 1,
        generator: str = "alignment",
        partial_names: bool = False,
        timeout: float = 60.0,
    ):
        self.method = method
        self.n = n
        self.generator = generator
        self.partial_names = partial_names
        self.timeout = timeout

    def fit(self, X, y=None):
        """Validate parameters and input shape; nothing is learned."""
        check_choice(self.method, "method", METHODS)
        if self.method == "first_n":
            check_positive_int(self.n, "n")
        docs = check_documents(X)
        self.n_documents_ = len(docs)
        self._generator_ = (
            AlignmentGenerator()
            if self.generator == "alignment"
            else ExternalGenerator(
                self.generator, timeout_per_graph=self.timeout
            )
        )
        return self

    def transform(self, X) -> list[str]:
        """Summary text for each document."""
        return [s.generated.text for s in self.summarize(X)]

    def predict(self, X) -> list[str]:
        return self.transform(X)

    def summarize(self, X) -> list[DocumentSummary]:
        """Full per-document results (selection, extraction, generation)."""
        if not hasattr(self, "_generator_"):
            raise RuntimeError("AmrSummarizer is not fitted; call fit first")
        return [
            summarize_one(
                doc,
                self._generator_,
                method=self.method,
                n=self.n,
                partial_names=self.partial_names,
            )
            for doc in check_documents(X)
        ]
