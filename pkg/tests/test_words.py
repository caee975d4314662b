import pytest
from hypothesis import given, settings, strategies as st

from groupbench.words import (
    concat,
    free_reduce,
    invert,
    is_reduced,
    letter_count,
    parse_word,
    twist,
    word_str,
)


def naive_reduce(word):
    """Independent oracle: rescan for one adjacent cancellation at a time."""
    out = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i][0] == out[i + 1][0] and out[i][1] == -out[i + 1][1]:
                del out[i : i + 2]
                changed = True
                break
    return tuple(out)


letters = st.sampled_from([("a", 1), ("a", -1), ("b", 1), ("b", -1)])
words = st.lists(letters, max_size=30).map(tuple)
reduced_words = words.map(free_reduce)


def test_reduce_examples():
    assert free_reduce(parse_word("abBa")) == parse_word("aa")
    assert free_reduce(()) == ()
    # cascade cancellation, frozen from the naive oracle
    cascade = parse_word("abBAb")
    assert naive_reduce(cascade) == parse_word("b")
    assert free_reduce(cascade) == parse_word("b")


@given(words)
def test_reduce_matches_naive_oracle(w):
    assert free_reduce(w) == naive_reduce(w)


@given(words)
def test_reduce_idempotent(w):
    r = free_reduce(w)
    assert is_reduced(r)
    assert free_reduce(r) == r


def test_concat_examples():
    assert concat(parse_word("ab"), parse_word("Ba")) == parse_word("aa")
    w = free_reduce(parse_word("abab"))
    assert concat(w, ()) == w and concat((), w) == w
    assert concat(w, invert(w)) == ()


@given(reduced_words, reduced_words, reduced_words)
def test_concat_associative(u, v, w):
    assert concat(concat(u, v), w) == concat(u, concat(v, w))


def test_invert_examples():
    assert invert(parse_word("aB")) == parse_word("bA")
    assert invert(()) == ()
    assert invert(parse_word("aa")) == parse_word("AA")


@given(reduced_words)
def test_invert_involution(w):
    assert invert(invert(w)) == w
    assert is_reduced(invert(w))


def test_twist_examples():
    assert twist(parse_word("a"), 1) == parse_word("Ba")
    for k in (-3, 0, 2, 17):
        assert twist(parse_word("b"), k) == parse_word("b")
    # inverse substitution, verified by round trip
    assert twist(parse_word("a"), -1) == parse_word("ba")
    assert twist(twist(parse_word("a"), -1), 1) == parse_word("a")


@given(reduced_words, st.integers(-6, 6), st.integers(-6, 6))
@settings(max_examples=60)
def test_twist_power_additive(w, j, k):
    assert twist(twist(w, j), k) == twist(w, j + k)


@given(reduced_words, st.integers(-8, 8))
def test_twist_preserves_a_count(w, k):
    assert letter_count(twist(w, k), "a") == letter_count(w, "a")


def test_parse_and_print_round_trip():
    assert parse_word("taT A") == (("t", 1), ("a", 1), ("t", -1), ("a", -1))
    assert word_str(parse_word("taTA")) == "taTA"
    assert parse_word("1") == ()
    with pytest.raises(ValueError):
        parse_word("a?b")


@given(st.lists(st.sampled_from("abtxylABTXYL"), max_size=20))
def test_round_trip_any_spelling(chars):
    text = "".join(chars)
    assert word_str(parse_word(text)) == text
