import itertools
import random

import pytest

from skeinlab.words import (
    GroupWord,
    Letter,
    WordError,
    concat,
    cyclic_key,
    format_word,
    invert,
    parse_word,
    reduce_word,
    subset_word,
)


def test_reduce_word_cancellation():
    assert reduce_word([(1, 1), (1, -1)], 2).is_identity()


def test_reduce_word_run_merge():
    w = reduce_word([(1, 1), (1, 1), (2, -1)], 2)
    assert w.letters == (Letter(1, 2), Letter(2, -1))


def test_reduce_word_inner_cancellation():
    w = reduce_word([(1, 1), (2, 1), (2, -1), (1, 1)], 2)
    assert w.letters == (Letter(1, 2),)


def test_reduce_word_rejects_bad_inputs():
    with pytest.raises(WordError):
        reduce_word([(3, 1)], 2)
    with pytest.raises(WordError):
        reduce_word([(1, 1)], 0)


def test_invert_examples():
    assert invert(reduce_word([], 2)).is_identity()
    w = reduce_word([(1, 2), (2, -1)], 2)
    assert invert(w).letters == (Letter(2, 1), Letter(1, -2))
    assert invert(reduce_word([(1, 1)], 1)).letters == (Letter(1, -1),)


def test_invert_involution_and_cancellation():
    rng = random.Random(0)
    for _ in range(100):
        pairs = [(rng.randint(1, 3), rng.choice((-2, -1, 1, 2))) for _ in range(8)]
        w = reduce_word(pairs, 3)
        assert invert(invert(w)) == w
        assert concat(w, invert(w)).is_identity()


def test_reduce_word_idempotent_under_cancelling_insertions():
    rng = random.Random(1)
    for _ in range(200):
        rank = rng.randint(1, 4)
        symbols = [
            (rng.randint(1, rank), rng.choice((-1, 1)))
            for _ in range(rng.randint(0, 20))
        ]
        w = reduce_word(symbols, rank)
        # Insert a canceling pair at a random position.
        pos = rng.randint(0, len(symbols))
        g = rng.randint(1, rank)
        padded = symbols[:pos] + [(g, 1), (g, -1)] + symbols[pos:]
        assert reduce_word(padded, rank) == w
        assert reduce_word([(l.index, l.exponent) for l in w.letters], rank) == w


def test_cyclic_key_examples():
    assert cyclic_key(parse_word("b a", 2)) == cyclic_key(parse_word("a b", 2))
    assert cyclic_key(parse_word("a b^-1", 2)) == cyclic_key(parse_word("b a^-1", 2))
    assert cyclic_key(parse_word("a b a^-1", 2)) == cyclic_key(parse_word("b", 2))


def test_cyclic_key_exhaustive_orbits_rank2():
    # All symbol sequences of length <= 4 over {a, a^-1, b, b^-1}: the key is
    # constant on {rotations} united with {rotations of the inverse}.
    alphabet = [(1, 1), (1, -1), (2, 1), (2, -1)]
    for length in range(5):
        for seq in itertools.product(alphabet, repeat=length):
            w = reduce_word(list(seq), 2)
            key = cyclic_key(w)
            for r in range(length):
                rotated = list(seq[r:] + seq[:r])
                assert cyclic_key(reduce_word(rotated, 2)) == key
            inv_seq = [(i, -e) for i, e in reversed(seq)]
            for r in range(length):
                rotated = inv_seq[r:] + inv_seq[:r]
                assert cyclic_key(reduce_word(rotated, 2)) == key


def test_cyclic_key_conjugation_invariance():
    rng = random.Random(2)
    for _ in range(200):
        rank = rng.randint(1, 4)
        w = reduce_word(
            [(rng.randint(1, rank), rng.choice((-2, -1, 1, 2))) for _ in range(6)],
            rank,
        )
        u = reduce_word(
            [(rng.randint(1, rank), rng.choice((-1, 1))) for _ in range(4)], rank
        )
        assert cyclic_key(concat(u, w, invert(u))) == cyclic_key(w)
        assert cyclic_key(invert(w)) == cyclic_key(w)


def test_subset_word_examples():
    assert subset_word({2}, 3).letters == (Letter(2, 1),)
    assert subset_word({1, 3}, 3).letters == (Letter(1, 1), Letter(3, 1))
    assert subset_word({1, 2, 3}, 3).letters == (
        Letter(1, 1),
        Letter(2, 1),
        Letter(3, 1),
    )
    with pytest.raises(WordError):
        subset_word(set(), 3)
    with pytest.raises(WordError):
        subset_word({4}, 3)


def test_subset_words_are_reduced_fixed_points():
    for rank in range(1, 5):
        for size in range(1, rank + 1):
            for subset in itertools.combinations(range(1, rank + 1), size):
                w = subset_word(subset, rank)
                pairs = [(l.index, l.exponent) for l in w.letters]
                assert reduce_word(pairs, rank) == w


def test_parse_and_format_round_trip():
    for text in ("a b^-1", "a^2 b^-3 c", "g3^2 g1", "e", ""):
        rank = 4
        w = parse_word(text, rank)
        assert parse_word(format_word(w), rank) == w
    assert format_word(GroupWord(2, ())) == "e"
    assert format_word(parse_word("a b^-1", 2)) == "a b^-1"


def test_parse_word_errors():
    with pytest.raises(WordError):
        parse_word("z", 2)
    with pytest.raises(WordError):
        parse_word("a^0", 2)
    with pytest.raises(WordError):
        parse_word("c", 2)
    with pytest.raises(WordError):
        parse_word("e a", 2)
    with pytest.raises(WordError):
        parse_word("a", 0)
