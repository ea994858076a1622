"""Entity-anchored subgraph extraction."""

import random
from collections import Counter

import pytest

from amrsum import (
    FALLBACK_NO_ENTITY,
    FALLBACK_NO_VERB,
    FALLBACK_NONE,
    Document,
    MissingGraphError,
    extract_all,
    extract_summary_graph,
    is_verb_concept,
    load_amr_bank,
    parse_penman,
    path_to_root,
    select_cooccurrence_plus_first,
)
from amrsum.extraction import _pick_entity_node
from graphgen import entity_sentence, inject_entity, random_graph, sent


def one_sentence_doc(penman: str) -> Document:
    return Document(
        id="d",
        story=(sent(penman, "t"),),
        summary=(sent(None, "u"),),
    )


# ---------------------------------------------------------------------------
# The two-hop walk on hand-built graphs


def test_subtree_below_first_verb_above_entity():
    doc = one_sentence_doc(
        '(c / cause-01 :ARG1 (r / run-02 :ARG0 (p / person'
        ' :name (n / name :op1 "Ann"))))'
    )
    res = extract_summary_graph(doc, 0)
    assert res.fallback == FALLBACK_NONE
    assert res.anchor_entity == "ann"
    assert res.anchor_verb == "r"
    assert res.graph == parse_penman(
        '(r / run-02 :ARG0 (p / person :name (n / name :op1 "Ann")))'
    )
    assert res.graph.root == "r"


def test_root_verb_keeps_whole_graph():
    penman = (
        '(w / want-01 :ARG0 (p / person :name (n / name :op1 "Ann"))'
        " :ARG1 (h / home))"
    )
    doc = one_sentence_doc(penman)
    res = extract_summary_graph(doc, 0)
    assert res.fallback == FALLBACK_NONE
    assert res.anchor_verb == "w"
    assert res.graph == parse_penman(penman)


def test_no_verb_on_path_keeps_whole_graph(mini_gold_path):
    doc = load_amr_bank(mini_gold_path).get("doc3")
    res = extract_summary_graph(doc, 0)
    assert res.fallback == FALLBACK_NO_VERB
    assert res.anchor_entity == "rex"
    assert res.anchor_verb is None
    assert res.graph == doc.story[0].graph


def test_no_entity_in_sentence_keeps_whole_graph(mini_gold_path):
    doc = load_amr_bank(mini_gold_path).get("doc2")
    res = extract_summary_graph(doc, 0)
    assert res.fallback == FALLBACK_NO_ENTITY
    assert res.anchor_entity is None
    assert res.anchor_verb is None
    assert res.graph == doc.story[0].graph


def test_missing_graph_raises():
    doc = Document(
        id="d", story=(sent(None, "bare"),), summary=(sent(None, "u"),)
    )
    with pytest.raises(MissingGraphError):
        extract_summary_graph(doc, 0)


def test_falls_through_tallies_to_entity_present_in_sentence():
    # story-global order is ann, bo (tie broken alphabetically); the third
    # sentence only contains bo, so bo anchors there
    story = (
        entity_sentence([("Ann",), ("Bo",)]),
        entity_sentence([("Ann",)]),
        entity_sentence([("Bo",)]),
    )
    doc = Document(id="d", story=story, summary=(sent(None, "u"),))
    res = extract_summary_graph(doc, 2)
    assert res.anchor_entity == "bo"
    assert res.fallback == FALLBACK_NONE


def test_entity_importance_is_story_global(mini_gold_path):
    # doc1 sentence 1 contains both names, but ann outranks bo story-wide
    doc = load_amr_bank(mini_gold_path).get("doc1")
    res = extract_summary_graph(doc, 1)
    assert res.anchor_entity == "ann"
    assert res.anchor_verb == "s"
    assert res.graph == doc.story[1].graph  # root is the verb


def test_shallowest_occurrence_of_entity_wins():
    # "ann" occurs at depth 2 under a verb and at depth 1 under the root;
    # the shallow one is chosen, whose path has no verb
    doc = one_sentence_doc(
        '(a / and :op1 (w / want-01 :ARG0 (p / person'
        ' :name (n / name :op1 "Ann")))'
        ' :op2 (p2 / person :name (n2 / name :op1 "Ann")))'
    )
    res = extract_summary_graph(doc, 0)
    assert res.fallback == FALLBACK_NO_VERB
    assert res.graph == doc.story[0].graph


def test_equal_depth_tie_goes_to_edge_order():
    g = parse_penman(
        '(a / and :op1 (p / person :name (n / name :op1 "Ann"))'
        ' :op2 (p2 / person :name (n2 / name :op1 "Ann")))'
    )
    assert _pick_entity_node(g, ("p", "p2")) == "p"
    assert _pick_entity_node(g, ("p2", "p")) == "p2"


def test_entity_node_itself_is_not_the_anchor_verb():
    # the named node has a verb-sense concept; the walk starts above it
    doc = one_sentence_doc(
        '(s / see-01 :ARG0 (r / run-01 :name (n / name :op1 "Run")))'
    )
    res = extract_summary_graph(doc, 0)
    assert res.anchor_verb == "s"
    assert res.fallback == FALLBACK_NONE


def test_extract_all_follows_selection(mini_gold_path):
    doc = load_amr_bank(mini_gold_path).get("doc1")
    sel = select_cooccurrence_plus_first(doc)
    results = extract_all(doc, sel)
    assert [r.sentence_index for r in results] == [0, 1]
    assert all(r.fallback == FALLBACK_NONE for r in results)
    assert results[0].anchor_verb == "w"
    assert results[1].anchor_verb == "s"


def test_extraction_result_is_reusable_graph():
    # extracted graphs serialize and reparse like any other graph
    doc = one_sentence_doc(
        '(c / cause-01 :ARG1 (r / run-02 :ARG0 (p / person'
        ' :name (n / name :op1 "Ann"))))'
    )
    from amrsum import parse_penman as pp, serialize_penman

    res = extract_summary_graph(doc, 0)
    assert pp(serialize_penman(res.graph)) == res.graph


# ---------------------------------------------------------------------------
# Invariants on random graphs with one injected entity


def _doc_for(graph) -> Document:
    from amrsum import AlignedSentence

    s = AlignedSentence(tokens=("t",), graph=graph)
    return Document(id="d", story=(s,), summary=(sent(None, "u"),))


def test_random_graph_extraction_invariants():
    rng = random.Random(606)
    fallbacks = Counter()
    for _ in range(300):
        base = random_graph(rng)
        g, host = inject_entity(rng, g=base, name_words=("Ann",))
        doc = _doc_for(g)
        res = extract_summary_graph(doc, 0)
        fallbacks[res.fallback] += 1

        # the output graph is a subgraph of the input
        assert set(res.graph.nodes) <= set(g.nodes)
        assert not Counter(res.graph.edges) - Counter(g.edges)

        # the anchoring entity node survives extraction
        assert res.anchor_entity == "ann"
        assert host in res.graph.nodes

        path = path_to_root(g, host)
        verbs_above = [v for v in path[1:] if is_verb_concept(g.concept(v))]
        if res.fallback == FALLBACK_NONE:
            # anchored at the first verb strictly above the entity
            assert res.anchor_verb == verbs_above[0]
            assert res.graph.root == res.anchor_verb
        else:
            assert res.fallback == FALLBACK_NO_VERB
            assert not verbs_above
            assert res.graph == g

        # determinism
        again = extract_summary_graph(doc, 0)
        assert again == res
    assert fallbacks[FALLBACK_NONE] > 0
    assert fallbacks[FALLBACK_NO_VERB] > 0


def test_extraction_never_crashes_without_entities():
    rng = random.Random(707)
    for _ in range(200):
        g = random_graph(rng)
        res = extract_summary_graph(_doc_for(g), 0)
        assert res.fallback == FALLBACK_NO_ENTITY
        assert res.graph == g
