"""Word combinatorics against brute-force oracles and frozen examples."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_words
from lynhopf import words
from lynhopf.words import (cfl_factorize, compare_superwords, concat,
                           enumerate_lyndon, format_word, is_lyndon,
                           monotonic_superwords, parse_word, shirshov,
                           superword_degree, validate_superword,
                           validate_word)


# ---------------------------------------------------------------- oracles

def lyndon_oracle(w):
    """Directly compare w with each proper right factor."""
    return len(w) > 0 and all(w < w[i:] for i in range(1, len(w)))


def all_monotonic_factorizations(w):
    """Every splitting of w into a non-increasing chain of Lyndon factors."""
    if w == ():
        return [()]
    out = []
    for i in range(1, len(w) + 1):
        head = w[:i]
        if not lyndon_oracle(head):
            continue
        for rest in all_monotonic_factorizations(w[i:]):
            if rest == () or head >= rest[0]:
                out.append((head,) + rest)
    return out


def shirshov_oracle(u):
    """Longest proper Lyndon right factor, found by scanning all cuts."""
    best = None
    for i in range(1, len(u)):
        if lyndon_oracle(u[i:]) and (best is None or len(u[i:]) > len(u[best:])):
            best = i
    return u[:best], u[best:]


# ---------------------------------------------------------------- frozen examples

def test_worked_examples():
    assert is_lyndon((1, 2, 1, 2, 2))
    assert not is_lyndon((1, 2, 1, 2))
    assert cfl_factorize(parse_word("1231233122123")) == (
        (1, 2, 3, 1, 2, 3, 3), (1, 2, 2, 1, 2, 3))
    assert shirshov(parse_word("1231233")) == ((1, 2, 3), (1, 2, 3, 3))


def test_shirshov_takes_longest_lyndon_right_factor():
    # (1,2) is a Lyndon right factor but (1,1,2)+(1,2) is the real split
    assert shirshov((1, 1, 2, 1, 2)) == ((1, 1, 2), (1, 2))
    assert shirshov((1, 2)) == ((1,), (2,))
    assert shirshov((1, 1, 2)) == ((1,), (1, 2))


def test_single_letters_are_lyndon():
    for a in range(1, 5):
        assert is_lyndon((a,))
    with pytest.raises(ValueError):
        is_lyndon(())


# ---------------------------------------------------------------- exhaustive checks

def test_is_lyndon_matches_oracle_exhaustively():
    for d, n_max in ((2, 8), (3, 5)):
        for n in range(1, n_max + 1):
            for w in all_words(d, n):
                assert is_lyndon(w) == lyndon_oracle(w)


def test_cfl_is_the_unique_monotonic_factorization():
    for d, n_max in ((2, 7), (3, 4)):
        for n in range(0, n_max + 1):
            for w in all_words(d, n):
                facts = all_monotonic_factorizations(w)
                assert facts == [cfl_factorize(w)]


def test_shirshov_matches_oracle():
    for d, n_max in ((2, 9), (3, 5)):
        for n in range(2, n_max + 1):
            for w in all_words(d, n):
                if not is_lyndon(w):
                    continue
                assert shirshov(w) == shirshov_oracle(w)


def test_shirshov_rejects_short_and_non_lyndon():
    with pytest.raises(ValueError):
        shirshov((1,))
    with pytest.raises(ValueError):
        shirshov((2, 1))


def test_enumerate_lyndon_counts_and_order():
    got = enumerate_lyndon(2, 5)
    assert got == sorted(got)
    per_len = {n: sum(1 for w in got if len(w) == n) for n in range(1, 6)}
    assert per_len == {1: 2, 2: 1, 3: 2, 4: 3, 5: 6}
    brute = [w for n in range(1, 6) for w in all_words(2, n) if lyndon_oracle(w)]
    assert set(got) == set(brute)


def test_enumerate_lyndon_one_letter_alphabet():
    assert enumerate_lyndon(1, 6) == [(1,)]


# ---------------------------------------------------------------- shirshov halves

def test_shirshov_halves_are_lyndon_and_ordered():
    """Both halves of the decomposition are Lyndon with v < vw < w."""
    for w in enumerate_lyndon(3, 6):
        if len(w) < 2:
            continue
        v, t = shirshov(w)
        assert is_lyndon(v) and is_lyndon(t)
        assert v + t == w
        assert v < w < t


def test_increasing_lyndon_pair_concatenates_to_lyndon():
    """u < v Lyndon makes uv Lyndon with u < uv < v."""
    lyn = enumerate_lyndon(3, 4)
    for u in lyn:
        for v in lyn:
            if u < v:
                assert is_lyndon(u + v)
                assert u < u + v < v


# ---------------------------------------------------------------- super-words

def test_validate_superword():
    validate_superword(((2,), (1, 2)), monotonic=False)
    with pytest.raises(ValueError):
        validate_superword(((2, 1),))
    with pytest.raises(ValueError):
        validate_superword(((1,), (2,)))  # increasing


def test_compare_superwords_is_tuple_order():
    a = ((1, 2), (1,))
    b = ((2,), (1,))
    assert compare_superwords(a, b) == -1
    assert compare_superwords(b, a) == 1
    assert compare_superwords(a, a) == 0


def test_superword_order_extends_word_order_on_concatenations():
    """For monotonic super-words, factor-wise order agrees with comparing
    the concatenated words whenever the concatenations differ."""
    for d, n in ((2, 6), (3, 4)):
        table = {}
        for w in all_words(d, n):
            table[w] = cfl_factorize(w)
        items = sorted(table)
        for a, b in zip(items, items[1:]):
            assert compare_superwords(table[a], table[b]) == -1


def test_monotonic_superwords_biject_with_words():
    for d, n in ((2, 7), (3, 5)):
        sws = list(monotonic_superwords(enumerate_lyndon(d, n), n))
        assert len(sws) == d ** n
        assert len({concat(sw) for sw in sws}) == d ** n
        for sw in sws:
            validate_superword(sw)
            assert superword_degree(sw) == n
        assert sws == sorted(sws, reverse=True)


def test_monotonic_superwords_respect_caps():
    caps = {(1,): 1, (2,): 2}
    for sw in monotonic_superwords(enumerate_lyndon(2, 4), 4, caps):
        assert sw.count((1,)) <= 1
        assert sw.count((2,)) <= 2


def test_concat_and_degree():
    sw = ((2, 3), (1, 2), (1,))
    assert concat(sw) == (2, 3, 1, 2, 1)
    assert superword_degree(sw) == 5


# ---------------------------------------------------------------- parsing

def test_parse_and_format_word():
    assert parse_word("12122") == (1, 2, 1, 2, 2)
    assert parse_word("10,2,13") == (10, 2, 13)
    assert parse_word("") == ()
    assert format_word((1, 2, 3)) == "123"
    assert format_word((10, 2)) == "10,2"
    with pytest.raises(ValueError):
        parse_word("1a2")
    with pytest.raises(ValueError):
        parse_word("0")


def test_validate_word_bounds():
    assert validate_word([1, 2], 2) == (1, 2)
    with pytest.raises(ValueError):
        validate_word((3,), 2)
    with pytest.raises(ValueError):
        validate_word((0,))
    with pytest.raises(ValueError):
        validate_word((words.MAX_ALPHABET + 1,))


# ---------------------------------------------------------------- properties

word_st = st.lists(st.integers(1, 3), min_size=0, max_size=14).map(tuple)


@given(word_st)
def test_cfl_reconstructs_and_is_monotonic(w):
    sw = cfl_factorize(w)
    assert concat(sw) == w
    for f in sw:
        assert lyndon_oracle(f)
    for a, b in zip(sw, sw[1:]):
        assert a >= b


@given(word_st.filter(lambda w: len(w) > 0))
def test_is_lyndon_agrees_with_single_factor_cfl(w):
    assert is_lyndon(w) == (cfl_factorize(w) == (w,))


@settings(max_examples=50)
@given(st.integers(1, 3), st.integers(1, 7))
def test_enumerate_lyndon_is_exactly_the_lyndon_set(d, n):
    got = enumerate_lyndon(d, n)
    assert got == sorted(set(got))
    expect = [w for k in range(1, n + 1) for w in all_words(d, k)
              if lyndon_oracle(w)]
    assert sorted(expect) == got


@given(st.lists(st.integers(1, 20), min_size=0, max_size=8).map(tuple))
def test_format_parse_round_trip(w):
    assert parse_word(format_word(w)) == w
