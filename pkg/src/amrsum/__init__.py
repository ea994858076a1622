"""Summarize stories through their semantic graphs.

Pipeline: sentences become rooted semantic graphs (gold annotations or an
external parser), a few important sentences are selected, a summary
subgraph is cut out of each around the story's main entity, and text is
generated back from the kept graphs.  Includes overlap metrics, Lead-n
baselines, an extractiveness analyzer, and a CLI.
"""

from ._version import __version__
from .corpus import (
    Corpus,
    Document,
    ParseFailure,
    filter_by_ids,
    load_amr_bank,
    load_cnn_dm,
    load_cnn_dm_story,
    load_corpus,
    load_split_ids,
    parse_with_external,
    split_sentences,
)
from .evaluation import DocumentEval, EvaluationReport, evaluate_documents
from .exceptions import (
    AmrSumError,
    ConfigurationError,
    CorpusFormatError,
    ExternalToolError,
    InvalidAlignmentError,
    InvalidGraphError,
    MissingGraphError,
    PenmanSyntaxError,
)
from .extraction import (
    FALLBACK_NO_ENTITY,
    FALLBACK_NO_VERB,
    FALLBACK_NONE,
    ExtractionResult,
    extract_all,
    extract_summary_graph,
)
from .generation import (
    AlignmentGenerator,
    ExternalGenerator,
    GeneratedSummary,
    build_lead_n_amr_baseline,
    generate_alignment_based,
    generate_external,
    lead_n_tokens,
)
from .graph import (
    AlignedSentence,
    Alignment,
    AmrGraph,
    is_constant,
    is_verb_concept,
    parse_alignment_entries,
    parse_penman,
    path_to_root,
    resolve_node_path,
    serialize_penman,
    subtree,
)
from .pipeline import (
    REFERENCE_RESULTS,
    REFERENCE_TOLERANCE,
    BaselineResult,
    DocumentFailure,
    DocumentSummary,
    EvaluateResult,
    RunConfig,
    SummarizeResult,
    analysis_payload,
    check_against_reference,
    failures_payload,
    make_generator,
    prepare_corpus,
    reference_numbers_from_analysis,
    reference_numbers_from_evaluation,
    report_envelope,
    run_analysis,
    run_baseline,
    run_evaluate,
    run_summarize,
    summarize_one,
    summarize_payload,
)
from .rouge import (
    ROUGE_VARIANTS,
    RougeScore,
    lcs_length,
    ngrams,
    normalize,
    rouge_all,
    rouge_l,
    rouge_n,
    rouge_summary,
)
from .selection import (
    BestMatch,
    BestMatchReport,
    EntityTally,
    SelectionResult,
    best_match_analysis,
    entity_nodes,
    entity_tallies,
    select_cooccurrence_plus_first,
    select_first_n,
    select_oracle,
)
from .summarizer import AmrSummarizer

__all__ = [
    "AlignedSentence",
    "Alignment",
    "AlignmentGenerator",
    "AmrGraph",
    "AmrSumError",
    "AmrSummarizer",
    "BaselineResult",
    "BestMatch",
    "BestMatchReport",
    "ConfigurationError",
    "Corpus",
    "CorpusFormatError",
    "Document",
    "DocumentEval",
    "DocumentFailure",
    "DocumentSummary",
    "EntityTally",
    "EvaluateResult",
    "EvaluationReport",
    "ExternalGenerator",
    "ExternalToolError",
    "ExtractionResult",
    "FALLBACK_NONE",
    "FALLBACK_NO_ENTITY",
    "FALLBACK_NO_VERB",
    "GeneratedSummary",
    "InvalidAlignmentError",
    "InvalidGraphError",
    "MissingGraphError",
    "ParseFailure",
    "PenmanSyntaxError",
    "REFERENCE_RESULTS",
    "REFERENCE_TOLERANCE",
    "ROUGE_VARIANTS",
    "RougeScore",
    "RunConfig",
    "SelectionResult",
    "SummarizeResult",
    "__version__",
    "analysis_payload",
    "best_match_analysis",
    "build_lead_n_amr_baseline",
    "check_against_reference",
    "entity_nodes",
    "entity_tallies",
    "evaluate_documents",
    "extract_all",
    "extract_summary_graph",
    "failures_payload",
    "filter_by_ids",
    "generate_alignment_based",
    "generate_external",
    "is_constant",
    "is_verb_concept",
    "lcs_length",
    "lead_n_tokens",
    "load_amr_bank",
    "load_cnn_dm",
    "load_cnn_dm_story",
    "load_corpus",
    "load_split_ids",
    "make_generator",
    "ngrams",
    "normalize",
    "parse_alignment_entries",
    "parse_penman",
    "parse_with_external",
    "path_to_root",
    "prepare_corpus",
    "reference_numbers_from_analysis",
    "reference_numbers_from_evaluation",
    "report_envelope",
    "resolve_node_path",
    "rouge_all",
    "rouge_l",
    "rouge_n",
    "rouge_summary",
    "run_analysis",
    "run_baseline",
    "run_evaluate",
    "run_summarize",
    "select_cooccurrence_plus_first",
    "select_first_n",
    "select_oracle",
    "serialize_penman",
    "split_sentences",
    "subtree",
    "summarize_one",
    "summarize_payload",
]
