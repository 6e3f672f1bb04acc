import itertools
from collections import Counter
from fractions import Fraction

import pytest

from emzv.words import (
    ArgumentError,
    WordCombo,
    antipode,
    antipode_convolution,
    as_index,
    coproduct,
    format_index,
    is_admissible,
    is_zero_one,
    parity_is_even,
    parse_index,
    reflection_sign,
    shuffle,
    shuffle_combo,
    weight,
    word_sort_key,
)


def brute_shuffle(v, w):
    """Independent oracle: place v at every choice of positions, w elsewhere."""
    n, m = len(v), len(w)
    out = Counter()
    for positions in itertools.combinations(range(n + m), n):
        word = [None] * (n + m)
        for letter, pos in zip(v, positions):
            word[pos] = letter
        rest = iter(w)
        for i in range(n + m):
            if word[i] is None:
                word[i] = next(rest)
        out[tuple(word)] += 1
    return WordCombo({k: Fraction(c) for k, c in out.items()})


def words_up_to(max_len, max_entry):
    out = [()]
    for r in range(1, max_len + 1):
        out.extend(itertools.product(range(max_entry + 1), repeat=r))
    return out


def test_index_bookkeeping():
    assert weight((1, 2, 0)) == 3
    assert parity_is_even((0, 2))
    assert not parity_is_even((1, 2))
    assert is_admissible(())
    assert is_admissible((0, 1, 2))
    assert not is_admissible((1,))
    assert not is_admissible((2, 1))
    assert is_zero_one((1, 0, 1))
    assert not is_zero_one((2,))
    assert word_sort_key((2,)) < word_sort_key((0, 1))


def test_index_validation():
    with pytest.raises(ArgumentError):
        as_index((-1,))
    with pytest.raises(ArgumentError):
        as_index((2**31,))
    assert as_index([3, 0]) == (3, 0)


def test_index_text_roundtrip():
    assert parse_index("1,2,0") == (1, 2, 0)
    assert parse_index("-") == ()
    assert format_index((1, 2, 0)) == "1,2,0"
    assert format_index(()) == "-"
    with pytest.raises(ArgumentError):
        parse_index("1,,2")
    with pytest.raises(ArgumentError):
        parse_index("")


def test_shuffle_base_cases():
    assert shuffle((0,), (1,)) == WordCombo({(0, 1): Fraction(1), (1, 0): Fraction(1)})
    assert shuffle((1,), (1,)) == WordCombo({(1, 1): Fraction(2)})
    assert shuffle((1,), (2, 3)) == WordCombo(
        {(1, 2, 3): Fraction(1), (2, 1, 3): Fraction(1), (2, 3, 1): Fraction(1)}
    )


def test_shuffle_against_brute_force():
    words = words_up_to(3, 2)
    for v in words:
        for w in words:
            if len(v) + len(w) > 5:
                continue
            assert shuffle(v, w) == brute_shuffle(v, w), (v, w)


def test_shuffle_mass_is_binomial():
    from math import comb

    for v in words_up_to(3, 2):
        for w in words_up_to(2, 2):
            combo = shuffle(v, w)
            assert combo.mass() == comb(len(v) + len(w), len(v))
            for word, coeff in combo.items():
                assert coeff > 0
                assert sum(word) == weight(v) + weight(w)
                assert len(word) == len(v) + len(w)


def test_shuffle_combo_bilinear():
    zero = WordCombo.zero()
    w = WordCombo.word((2, 3))
    assert shuffle_combo(zero, w).is_zero()
    assert shuffle_combo(WordCombo.word(()), w) == w
    a = WordCombo.word((0,)) + WordCombo.word((1,))
    b = WordCombo.word((0,))
    expected = WordCombo(
        {(0, 0): Fraction(2), (0, 1): Fraction(1), (1, 0): Fraction(1)}
    )
    assert shuffle_combo(a, b) == expected


def test_shuffle_commutative_exhaustive():
    words = words_up_to(3, 2)
    for v in words:
        for w in words:
            assert shuffle(v, w) == shuffle(w, v)


def test_shuffle_associative():
    small = words_up_to(2, 2)
    for a, b, c in itertools.product(small, repeat=3):
        left = shuffle_combo(shuffle(a, b), WordCombo.word(c))
        right = shuffle_combo(WordCombo.word(a), shuffle(b, c))
        assert left == right, (a, b, c)
    binary = words_up_to(3, 1)
    for a, b, c in itertools.product(binary, repeat=3):
        left = shuffle_combo(shuffle(a, b), WordCombo.word(c))
        right = shuffle_combo(WordCombo.word(a), shuffle(b, c))
        assert left == right, (a, b, c)


def test_antipode():
    assert antipode((2, 3)) == (1, (3, 2))
    assert antipode((1,)) == (-1, (1,))
    assert antipode(()) == (1, ())


def test_coproduct():
    assert coproduct((1, 2)) == [((), (1, 2)), ((1,), (2,)), ((1, 2), ())]
    assert coproduct(()) == [((), ())]
    assert coproduct((5,)) == [((), (5,)), ((5,), ())]


def test_reflection_sign():
    assert reflection_sign((3, 2)) == -1
    assert reflection_sign((0, 0)) == 1
    assert reflection_sign(()) == 1


def test_antipode_convolution_vanishes():
    for w in words_up_to(4, 3):
        if not w:
            continue
        assert antipode_convolution(w).is_zero(), w


def coproduct_combo(combo):
    out = Counter()
    for w, c in combo.items():
        for pre, suf in coproduct(w):
            out[(pre, suf)] += c
    return {k: v for k, v in out.items() if v != 0}


def test_coproduct_is_shuffle_morphism():
    words = words_up_to(2, 2)
    for v in words:
        for w in words:
            left = coproduct_combo(shuffle(v, w))
            right = Counter()
            for v1, v2 in coproduct(v):
                for w1, w2 in coproduct(w):
                    for p, cp in shuffle(v1, w1).items():
                        for s, cs in shuffle(v2, w2).items():
                            right[(p, s)] += cp * cs
            right = {k: c for k, c in right.items() if c != 0}
            assert left == right, (v, w)
