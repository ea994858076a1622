"""Overlap metric tests.

The oracles at the top are deliberately naive re-implementations
(consume-a-list matching, exhaustive subsequence search); every scored
quantity is checked against them before any worked example is trusted.
"""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amrsum import (
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

# ---------------------------------------------------------------------------
# Oracles


def oracle_clipped_matches(ref: list[str], cand: list[str], n: int) -> int:
    """Each reference n-gram occurrence may be consumed once."""
    remaining = [tuple(ref[i : i + n]) for i in range(len(ref) - n + 1)]
    count = 0
    for i in range(len(cand) - n + 1):
        gram = tuple(cand[i : i + n])
        if gram in remaining:
            remaining.remove(gram)
            count += 1
    return count


def oracle_lcs(a: list[str], b: list[str]) -> int:
    """Longest common subsequence by trying every subsequence."""
    if len(a) > len(b):
        a, b = b, a
    for k in range(len(a), 0, -1):
        for idxs in combinations(range(len(a)), k):
            picked = [a[i] for i in idxs]
            it = iter(b)
            if all(x in it for x in picked):
                return k
    return 0


def token_lists(rng: random.Random, max_len: int = 8, alphabet: str = "abcd"):
    k = rng.randint(0, max_len)
    return [rng.choice(alphabet) for _ in range(k)]


def test_oracle_sanity():
    assert oracle_clipped_matches(list("abcd"), list("abx"), 1) == 2
    assert oracle_clipped_matches(list("aa"), list("aaa"), 1) == 2
    assert oracle_clipped_matches(list("abcd"), list("abc"), 2) == 2
    assert oracle_lcs(list("abcd"), list("acbd")) == 3
    assert oracle_lcs(list("ab"), list("cd")) == 0
    assert oracle_lcs([], list("ab")) == 0


def test_rouge_n_equals_oracle_on_random_pairs():
    rng = random.Random(1301)
    for _ in range(2000):
        ref = token_lists(rng)
        cand = token_lists(rng)
        for n in (1, 2):
            matched = oracle_clipped_matches(ref, cand, n)
            ref_total = max(len(ref) - n + 1, 0)
            cand_total = max(len(cand) - n + 1, 0)
            got = rouge_n(ref, cand, n)
            assert got.recall == (matched / ref_total if ref_total else 0.0)
            assert got.precision == (
                matched / cand_total if cand_total else 0.0
            )


def test_lcs_equals_oracle_on_random_pairs():
    rng = random.Random(1302)
    for _ in range(2000):
        a = token_lists(rng)
        b = token_lists(rng)
        assert lcs_length(a, b) == oracle_lcs(a, b)


# ---------------------------------------------------------------------------
# Worked examples


def test_rouge1_identity():
    assert rouge_n("the cat sat", "the cat sat", 1) == RougeScore(1.0, 1.0, 1.0)


def test_rouge1_partial_overlap():
    s = rouge_n("a b c d", "a b x", 1)
    assert s.recall == 0.5
    assert s.precision == 2 / 3
    assert s.f1 == 2 * (2 / 3) * 0.5 / ((2 / 3) + 0.5)
    assert round(s.f1, 4) == 0.5714


def test_rouge2_partial_overlap():
    s = rouge_n("a b c d", "a b c", 2)
    assert s.recall == 2 / 3
    assert s.precision == 1.0
    assert s.f1 == 0.8


def test_rouge_l_identity():
    assert rouge_l("a b c", "a b c") == RougeScore(1.0, 1.0, 1.0)


def test_rouge_l_transposition():
    s = rouge_l("a b c d", "a c b d")
    assert s == RougeScore(0.75, 0.75, 0.75)


def test_rouge_l_disjoint():
    assert rouge_l("a b", "c d") == RougeScore(0.0, 0.0, 0.0)


def test_normalize():
    assert normalize("The cat, sat.") == ["the", "cat", "sat"]
    assert normalize("") == []
    assert normalize("Apples are liked by him") == [
        "apples",
        "are",
        "liked",
        "by",
        "him",
    ]
    assert normalize("Don't stop-01") == ["don", "t", "stop", "01"]


def test_normalize_drop_stopwords():
    kept = normalize("the cat sat on the mat")
    dropped = normalize("the cat sat on the mat", drop_stopwords=True)
    assert kept == ["the", "cat", "sat", "on", "the", "mat"]
    assert "the" not in dropped and "cat" in dropped


def test_rouge_summary_single_sentence_equals_per_sentence():
    ref = [["a", "b", "c"]]
    cand = [["a", "c"]]
    assert rouge_summary(ref, cand, "rouge-1") == rouge_n(ref[0], cand[0], 1)
    assert rouge_summary(ref, cand, "rouge-l") == rouge_l(ref[0], cand[0])


def test_rouge_summary_concatenates():
    s = rouge_summary([["a", "b"], ["c"]], [["a"], ["b", "c"]], "rouge-1")
    assert s.recall == 1.0 and s.precision == 1.0


def test_rouge_summary_empty_prediction():
    s = rouge_summary([["a", "b"]], [], "rouge-2")
    assert s == RougeScore(0.0, 0.0, 0.0)


def test_rouge_summary_rejects_unknown_variant():
    with pytest.raises(ValueError):
        rouge_summary([["a"]], [["a"]], "rouge-9")


def test_ngrams_rejects_n_zero():
    with pytest.raises(ValueError):
        ngrams(["a"], 0)
    with pytest.raises(ValueError):
        rouge_n("a", "a", 0)


def test_empty_sides_are_zero_not_nan():
    assert rouge_n("", "a b", 1) == RougeScore(0.0, 0.0, 0.0)
    assert rouge_n("a b", "", 1) == RougeScore(0.0, 0.0, 0.0)
    assert rouge_l("", "") == RougeScore(0.0, 0.0, 0.0)


def test_rouge_all_has_every_variant():
    scores = rouge_all("a b c", "a b")
    assert set(scores) == set(ROUGE_VARIANTS)
    assert scores["rouge-1"].recall == 2 / 3


def test_string_inputs_are_normalized_token_inputs_are_not():
    assert rouge_n("The CAT.", "the cat", 1).f1 == 1.0
    assert rouge_n(["The"], ["the"], 1).f1 == 0.0


# ---------------------------------------------------------------------------
# Properties

token_list = st.lists(st.sampled_from("abcd"), max_size=8)


@given(token_list, token_list, st.integers(min_value=1, max_value=3))
def test_duality(t, p, n):
    assert rouge_n(t, p, n).recall == rouge_n(p, t, n).precision


@given(token_list, token_list, st.sampled_from("abcd"))
def test_recall_monotone_in_prediction(t, p, extra):
    base = rouge_n(t, p, 1).recall
    assert rouge_n(t, p + [extra], 1).recall >= base


@given(token_list, token_list)
def test_lcs_bounds(a, b):
    length = lcs_length(a, b)
    assert 0 <= length <= min(len(a), len(b))


@given(token_list, st.sampled_from("abcd"))
def test_rouge_l_equals_rouge_1_on_singletons(t, c):
    assert rouge_l(t, [c]) == rouge_n(t, [c], 1)
    assert rouge_l([c], t) == rouge_n([c], t, 1)


@given(token_list, token_list, st.integers(min_value=1, max_value=3))
def test_score_invariants(t, p, n):
    s = rouge_n(t, p, n)
    for value in (s.recall, s.precision, s.f1):
        assert 0.0 <= value <= 1.0
    if s.recall + s.precision > 0:
        assert s.f1 == 2 * s.recall * s.precision / (s.recall + s.precision)
    else:
        assert s.f1 == 0.0
