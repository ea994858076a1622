"""Alignment-projection generation, external generation, and baselines."""

import random
import sys

import pytest

from amrsum import (
    AlignedSentence,
    AlignmentGenerator,
    Document,
    ExternalGenerator,
    ExternalToolError,
    GeneratedSummary,
    MissingGraphError,
    build_lead_n_amr_baseline,
    generate_alignment_based,
    generate_external,
    lead_n_tokens,
    load_amr_bank,
    parse_penman,
    subtree,
)
from conftest import generator_cmd
from graphgen import full_coverage_document, full_coverage_sentence, sent


def is_subsequence(short, long):
    it = iter(long)
    return all(tok in it for tok in short)


# ---------------------------------------------------------------------------
# Alignment projection


def test_full_graph_emits_all_aligned_tokens(mini_gold_path):
    doc = load_amr_bank(mini_gold_path).get("doc1")
    src = doc.story[0]
    out = generate_alignment_based(src, src.graph)
    assert out == ["Ann", "wanted", "go", "home"]  # "to" and "." unaligned


def test_subgraph_emits_only_covered_tokens(mini_gold_path):
    doc = load_amr_bank(mini_gold_path).get("doc1")
    src = doc.story[0]
    below_go = subtree(src.graph, "g")
    assert set(below_go.nodes) == {"g", "h"}
    assert generate_alignment_based(src, below_go) == ["go", "home"]


def test_any_surviving_alignment_covers_the_token():
    src = sent(
        "(w / want-01 :ARG0 (p / person))",
        "both one",
        "0-1|0 0-1|0.0 1-2|0.0",
    )
    only_root = parse_penman("(w / want-01)")
    # token 0 has one surviving and one dropped alignment: still emitted
    assert generate_alignment_based(src, only_root) == ["both"]


def test_multi_token_span_and_union():
    src = sent(
        "(s / say-01 :ARG0 (p / person))",
        "a b c d",
        "0-2|0 1-3|0.0",
    )
    full = src.graph
    # spans are end-exclusive: 0-2 and 1-3 cover positions 0..2 only
    assert generate_alignment_based(src, full) == ["a", "b", "c"]
    root_only = parse_penman("(s / say-01)")
    assert generate_alignment_based(src, root_only) == ["a", "b"]
    leaf_only = parse_penman("(p / person)")
    # node identity is by variable, not by graph equality
    assert generate_alignment_based(src, leaf_only) == ["b", "c"]


def test_emission_order_is_source_order():
    src = sent(
        "(s / say-01 :ARG0 (p / person))",
        "x y z",
        "2-3|0 0-1|0",  # entries listed out of order
    )
    assert generate_alignment_based(src, src.graph) == ["x", "z"]


def test_tokens_emitted_once():
    src = sent(
        "(s / say-01 :ARG0 (p / person))",
        "a b",
        "0-2|0 0-1|0.0 1-2|0.0",
    )
    assert generate_alignment_based(src, src.graph) == ["a", "b"]


def test_no_alignments_warns_and_emits_nothing():
    src = sent("(s / say-01)", "quiet words")
    with pytest.warns(UserWarning, match="no alignments"):
        assert generate_alignment_based(src, src.graph) == []


def test_no_graph_raises():
    src = sent(None, "bare")
    with pytest.raises(MissingGraphError):
        generate_alignment_based(src, parse_penman("(a / apple)"))


def test_full_coverage_identity():
    rng = random.Random(808)
    for _ in range(100):
        src = full_coverage_sentence(rng)
        assert tuple(generate_alignment_based(src, src.graph)) == src.tokens


def test_smaller_extraction_gives_subsequence():
    rng = random.Random(909)
    for _ in range(100):
        src = full_coverage_sentence(rng)
        full_out = generate_alignment_based(src, src.graph)
        for v in src.graph.nodes:
            part = generate_alignment_based(src, subtree(src.graph, v))
            assert is_subsequence(part, full_out)


# ---------------------------------------------------------------------------
# Generator facades


def test_alignment_generator_batch(mini_gold_path):
    doc = load_amr_bank(mini_gold_path).get("doc1")
    gen = AlignmentGenerator()
    assert gen.name == "alignment"
    out = gen.generate_batch(
        [(doc.story[0], doc.story[0].graph), (doc.story[1], doc.story[1].graph)]
    )
    assert out == [
        ["Ann", "wanted", "go", "home"],
        ["Bo", "saw", "Ann", "yesterday"],
    ]


def test_external_generator_concepts_mode():
    gen = ExternalGenerator(generator_cmd("concepts"))
    assert gen.name == f"external:{sys.executable}"
    g1 = parse_penman(
        '(r / run-02 :ARG0 (p / person :name (n / name :op1 "Ann")))'
    )
    g2 = parse_penman("(b / bark-01 :ARG0 (d / dog))")
    dummy = AlignedSentence(tokens=())
    out = gen.generate_batch([(dummy, g1), (dummy, g2)])
    assert out == [["run-02", "person", "name"], ["bark-01", "dog"]]


def test_external_generator_fixed_mode():
    out = generate_external(
        parse_penman("(a / apple)"), generator_cmd("fixed", "three fixed words")
    )
    assert out == ["three", "fixed", "words"]


def test_external_generator_nonzero_exit():
    with pytest.raises(ExternalToolError):
        generate_external(parse_penman("(a / apple)"), generator_cmd("fail"))


def test_external_generator_empty_line_rejected():
    with pytest.raises(ExternalToolError, match="empty sentence"):
        generate_external(parse_penman("(a / apple)"), generator_cmd("empty"))


def test_generated_summary_text():
    s = GeneratedSummary(
        sentences=(["Ann", "ran"], ("home",)), generator="alignment"
    )
    assert s.text == "Ann ran home"
    assert s.sentences == (("Ann", "ran"), ("home",))


# ---------------------------------------------------------------------------
# Baselines


def test_lead_n_tokens(mini_gold_path):
    doc = load_amr_bank(mini_gold_path).get("doc1")
    lead = lead_n_tokens(doc, 2)
    assert lead == [doc.story[0].tokens, doc.story[1].tokens]
    assert lead_n_tokens(doc, 99) == [s.tokens for s in doc.story]
    with pytest.raises(ValueError):
        lead_n_tokens(doc, 0)


def test_lead_n_amr_reproduces_sentences_under_full_coverage():
    rng = random.Random(111)
    gen = AlignmentGenerator()
    for i in range(30):
        doc = full_coverage_document(rng, f"d{i}")
        n = rng.randint(1, 4)
        out = build_lead_n_amr_baseline(doc, n, gen)
        expected = tuple(s.tokens for s in doc.story[: min(n, len(doc.story))])
        assert out.sentences == expected
        assert out.generator == "alignment"


def test_lead_n_amr_requires_graphs():
    doc = Document(
        id="d",
        story=(sent("(a / apple)", "x", "0-1|0"), sent(None, "y")),
        summary=(sent(None, "z"),),
    )
    with pytest.raises(MissingGraphError) as err:
        build_lead_n_amr_baseline(doc, 2, AlignmentGenerator())
    assert "1" in str(err.value)
    # n=1 stays within the annotated prefix
    out = build_lead_n_amr_baseline(doc, 1, AlignmentGenerator())
    assert out.sentences == (("x",),)


def test_lead_n_amr_rejects_nonpositive():
    doc = Document(id="d", story=(sent("(a / apple)", "x"),), summary=())
    with pytest.raises(ValueError):
        build_lead_n_amr_baseline(doc, 0, AlignmentGenerator())


def test_lead_n_amr_external(mini_gold_path):
    doc = load_amr_bank(mini_gold_path).get("doc2")
    gen = ExternalGenerator(generator_cmd("concepts"))
    out = build_lead_n_amr_baseline(doc, 1, gen)
    assert out.sentences == (("bark-01", "dog"),)
    assert out.generator.startswith("external:")
