"""Tokenizer, frequency counting, and license-boilerplate stripping."""

import numpy as np
import pytest

from yulesimon import corpus
from yulesimon.errors import EncodingError, ParameterError


def test_tokenize_hand_cases():
    assert corpus.tokenize("The cat, the CAT!") == ["the", "cat", "the",
                                                    "cat"]
    # typographic apostrophe folds into the ASCII one
    assert corpus.tokenize("don’t Don't") == ["don't", "don't"]
    # digits and underscores split tokens; bare punctuation yields none
    assert corpus.tokenize("a1b2 under_score") == ["a", "b", "under",
                                                   "score"]
    assert corpus.tokenize("42 -- ; !") == []
    assert corpus.tokenize("semi-colon x") == ["semi", "colon", "x"]
    # apostrophes only survive between letters
    assert corpus.tokenize("'tis rock'n'roll tail'") == ["tis",
                                                         "rock'n'roll",
                                                         "tail"]


def test_tokenize_case_folding_switch():
    raw = corpus.tokenize("Ich heiße Heinrich", corpus.TokenizerRules(
        case_folding=False))
    assert raw == ["Ich", "heiße", "Heinrich"]
    folded = corpus.tokenize("Ich heiße Heinrich")
    # casefold expands the sharp s
    assert folded == ["ich", "heisse", "heinrich"]


def test_tokenize_rejects_bytes():
    with pytest.raises(ParameterError):
        corpus.tokenize(b"not decoded")


def test_word_frequencies_counts_and_order():
    freq = corpus.word_frequencies(["b", "a", "b", "c", "a", "b"])
    assert freq.n == 3
    assert freq.total_tokens == 6
    assert freq.entries == {"a": 2, "b": 3, "c": 1}
    # descending count, ties broken lexicographically
    assert freq.sorted_items() == [("b", 3), ("a", 2), ("c", 1)]
    assert freq.counts() == [3, 2, 1]


def test_frequencies_conserve_tokens_and_ignore_order():
    tokens = corpus.tokenize("one fish two fish red fish blue fish")
    freq = corpus.word_frequencies(tokens)
    assert freq.total_tokens == len(tokens)
    rng = np.random.default_rng(0)
    shuffled = list(tokens)
    rng.shuffle(shuffled)
    assert corpus.word_frequencies(shuffled).entries == freq.entries


def test_frequency_vector_validation():
    with pytest.raises(ParameterError):
        corpus.FrequencyVector(entries={"a": 0})
    with pytest.raises(ParameterError):
        corpus.FrequencyVector(entries={"a": 1.5})
    empty = corpus.word_frequencies([])
    assert empty.n == 0 and empty.total_tokens == 0


def test_strip_boilerplate_cuts_between_markers():
    text = ("junk header words\n"
            "*** START OF THE PROJECT GUTENBERG EBOOK MOBY DICK ***\n"
            "Call me Ishmael.\n"
            "*** END OF THE PROJECT GUTENBERG EBOOK MOBY DICK ***\n"
            "license trailer\n")
    body, found = corpus.strip_gutenberg_boilerplate(text)
    assert found
    assert corpus.tokenize(body) == ["call", "me", "ishmael"]


def test_strip_boilerplate_variants_and_case():
    text = ("x\n  *** start of this project gutenberg ebook Y ***\n"
            "body words\n"
            "***END OF THIS PROJECT GUTENBERG EBOOK Y***\n z\n")
    body, found = corpus.strip_gutenberg_boilerplate(text)
    assert found and corpus.tokenize(body) == ["body", "words"]


def test_strip_boilerplate_requires_both_markers_in_order():
    no_end = "*** START OF THE PROJECT GUTENBERG EBOOK A ***\nbody\n"
    body, found = corpus.strip_gutenberg_boilerplate(no_end)
    assert not found and body == no_end
    reversed_order = ("*** END OF THE PROJECT GUTENBERG EBOOK A ***\n"
                      "middle\n"
                      "*** START OF THE PROJECT GUTENBERG EBOOK A ***\n")
    body, found = corpus.strip_gutenberg_boilerplate(reversed_order)
    assert not found and body == reversed_order
    # marker text buried mid-line does not count
    inline = ("see *** START OF THE PROJECT GUTENBERG EBOOK A *** here\n"
              "*** END OF THE PROJECT GUTENBERG EBOOK A ***\n")
    _, found = corpus.strip_gutenberg_boilerplate(inline)
    assert not found


def test_read_text_reports_bad_bytes(tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("héllo wörld", encoding="utf-8")
    assert corpus.read_text(good) == "héllo wörld"
    bad = tmp_path / "bad.txt"
    bad.write_bytes(b"fine until \xff\xfe here")
    with pytest.raises(EncodingError) as excinfo:
        corpus.read_text(bad)
    assert excinfo.value.byte_offset == 11


def test_frequencies_from_file_strips_and_warns(synthetic_novel):
    path, counts = synthetic_novel
    freq, found = corpus.frequencies_from_file(path)
    assert found
    assert freq.n == counts.size
    assert freq.total_tokens == counts.sum()
    assert sorted(freq.counts(), reverse=True) == sorted(
        counts.tolist(), reverse=True)
    # without stripping, the license words leak into the counts
    raw, found_raw = corpus.frequencies_from_file(path,
                                                  strip_boilerplate=False)
    assert found_raw
    assert raw.entries["gutenberg"] >= 5
    assert raw.total_tokens > freq.total_tokens


def test_frequencies_from_file_determinism(synthetic_novel):
    path, _ = synthetic_novel
    a, _ = corpus.frequencies_from_file(path)
    b, _ = corpus.frequencies_from_file(path)
    assert a.entries == b.entries
