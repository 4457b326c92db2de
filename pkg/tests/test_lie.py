from collections import Counter
from itertools import product

import pytest
from sympy import mobius as sympy_mobius

from oracles import is_lyndon_brute, lyndon_brute
from polytower.lie import (
    Alphabet,
    EnumerationCapExceeded,
    Letter,
    bounded_words,
    generate_lyndon,
    is_lyndon,
    lyndon_words,
    mobius,
    multigraded_witt,
    standard_bracketing,
    witt_count,
)

AB = Alphabet.simple(2)


def test_mobius_matches_sympy():
    assert [mobius(n) for n in range(1, 60)] == [int(sympy_mobius(n)) for n in range(1, 60)]


def test_witt_two_letters():
    assert [witt_count(2, n) for n in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_generation_matches_brute(q):
    L = 7 if q < 4 else 6
    assert sorted(generate_lyndon(q, L)) == sorted(lyndon_brute(q, L))


def test_lex_order():
    words = list(generate_lyndon(3, 5))
    assert words == sorted(words)


def test_small_listing():
    words = lyndon_words(AB, 3)
    assert ["".join(AB.label(i) for i in w) for w in words] == ["a", "b", "ab", "aab", "abb"]
    brackets = [str(standard_bracketing(w, AB)) for w in words]
    assert brackets == ["a", "b", "[a,b]", "[a,[a,b]]", "[[a,b],b]"]


def test_standard_factorization_longest_suffix():
    # abab is periodic, so the longest proper Lyndon suffix of aabab is ab
    w = standard_bracketing((0, 0, 1, 0, 1), AB)
    assert str(w) == "[[a,[a,b]],[a,b]]"
    with pytest.raises(ValueError):
        standard_bracketing((1, 0), AB)


def _expand(tree):
    """Bracket tree -> noncommutative polynomial {word: coeff}."""
    if isinstance(tree, int):
        return {(tree,): 1}
    left, right = _expand(tree[0]), _expand(tree[1])
    out: Counter = Counter()
    for u, cu in left.items():
        for v, cv in right.items():
            out[u + v] += cu * cv
            out[v + u] -= cu * cv
    return {w: c for w, c in out.items() if c}


def test_leading_monomial_is_the_word():
    # the Lyndon bracketing expands with the word itself as least monomial, coefficient 1
    for w in lyndon_words(Alphabet.simple(3), 6):
        poly = _expand(standard_bracketing(w, Alphabet.simple(3)).tree)
        assert min(poly) == w and poly[w] == 1


def test_multigraded_counts():
    for q in (2, 3):
        for L in range(1, 7):
            words = [w for w in generate_lyndon(q, L) if len(w) == L]
            by_deg = Counter(tuple(w.count(i) for i in range(q)) for w in words)
            for degs in product(range(L + 1), repeat=q):
                if sum(degs) == L:
                    assert by_deg.get(degs, 0) == multigraded_witt(degs)


def test_weight_bound_prunes_exactly():
    weights = [(1, 0), (0, 1), (2, 1)]
    got = set(generate_lyndon(3, 6, weights, (2, 2)))
    want = set()
    for w in lyndon_brute(3, 6):
        tot = [sum(weights[i][j] for i in w) for j in range(2)]
        if tot[0] <= 2 and tot[1] <= 2:
            want.add(w)
    assert got == want


def test_bounded_words():
    words = bounded_words(AB, (2, 1))
    assert [str(w) for w in words] == ["a", "b", "[a,b]", "[a,[a,b]]"]
    assert bounded_words(AB, (0, 0)) == []
    with pytest.raises(ValueError):
        bounded_words(AB, (1,))


def test_bounded_words_against_brute():
    A = Alphabet.simple(3)
    caps = (2, 1, 2)
    got = {w.letters for w in bounded_words(A, caps)}
    want = {w for w in lyndon_brute(3, 5) if all(w.count(i) <= c for i, c in enumerate(caps))}
    assert got == want


def test_cap_raises():
    with pytest.raises(EnumerationCapExceeded):
        list(generate_lyndon(2, 10, cap=5))


def test_multidegree():
    A = Alphabet((Letter("x", (1, 0)), Letter("y", (2, 1))))
    w = standard_bracketing((0, 0, 1), A)
    assert w.multidegree == (4, 1)
    assert w.multiplicities() == Counter({0: 2, 1: 1})


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet((Letter("x"), Letter("x")))
    with pytest.raises(ValueError):
        Letter("z", (0, 0))


def test_is_lyndon():
    assert is_lyndon((0, 1)) and not is_lyndon((0, 0)) and not is_lyndon(())
    for w in product(range(2), repeat=6):
        assert is_lyndon(w) == is_lyndon_brute(w)
