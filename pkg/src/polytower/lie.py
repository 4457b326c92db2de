"""Hall bases of free Lie algebras via Lyndon words.

The basis used throughout is the Lyndon basis: a Lyndon word w over an
ordered alphabet, bracketed by its standard factorization w = uv where v
is the longest proper Lyndon suffix. Words are stored as tuples of letter
positions in the alphabet; labels are only used for rendering.

Enumeration walks the tree of prenecklaces (Ruskey-Savage-Wang order) and
prunes any prefix that exceeds a weight budget or a per-letter cap.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, gcd
from typing import Callable, Hashable, Iterator, Sequence


class EnumerationCapExceeded(RuntimeError):
    """More words than the safety cap allows; raise the cap to continue."""


@dataclass(frozen=True)
class Letter:
    label: Hashable
    multidegree: tuple[int, ...] = (1,)
    connectivity: int = 0

    def __post_init__(self) -> None:
        if not any(self.multidegree) or min(self.multidegree) < 0:
            raise ValueError(f"letter {self.label!r} needs a nonzero, nonnegative multidegree")


@dataclass(frozen=True)
class Alphabet:
    """Letters listed in strictly increasing order."""

    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        labels = [l.label for l in self.letters]
        if len(set(labels)) != len(labels):
            raise ValueError("alphabet labels must be distinct")
        widths = {len(l.multidegree) for l in self.letters}
        if len(widths) > 1:
            raise ValueError("all multidegrees must have the same length")

    @classmethod
    def simple(cls, q: int) -> "Alphabet":
        """q letters a < b < ... with unit multidegrees e_1, ..., e_q."""
        labels = [chr(ord("a") + i) if q <= 26 else f"x{i + 1}" for i in range(q)]
        return cls(tuple(Letter(lab, tuple(int(i == j) for j in range(q))) for i, lab in enumerate(labels)))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def rank(self) -> int:
        return len(self.letters[0].multidegree) if self.letters else 0

    def label(self, i: int) -> str:
        return str(self.letters[i].label)


def is_lyndon(word: Sequence[int]) -> bool:
    """Strictly smaller than every proper rotation (linear-time scan)."""
    if not word:
        return False
    i = 0
    for j in range(1, len(word)):
        if word[i] < word[j]:
            i = 0
        elif word[i] == word[j]:
            i += 1
        else:
            return False
    return i == 0


@lru_cache(maxsize=1 << 16)
def _bracket(w: tuple[int, ...]):
    if len(w) == 1:
        return w[0]
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return (_bracket(w[:i]), _bracket(w[i:]))
    raise AssertionError("a Lyndon word of length >= 2 has a proper Lyndon suffix")


@dataclass(frozen=True)
class HallWord:
    letters: tuple[int, ...]
    tree: object = field(compare=False)
    alphabet: Alphabet = field(compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.letters)

    def multiplicities(self) -> Counter:
        """c_w: number of occurrences of each letter position."""
        return Counter(self.letters)

    @property
    def multidegree(self) -> tuple[int, ...]:
        acc = [0] * self.alphabet.rank
        for i in self.letters:
            for j, x in enumerate(self.alphabet.letters[i].multidegree):
                acc[j] += x
        return tuple(acc)

    def labels(self) -> list[Hashable]:
        return [self.alphabet.letters[i].label for i in self.letters]

    def render(self, name: Callable[[int], str] | None = None) -> str:
        name = name or self.alphabet.label

        def go(t) -> str:
            if isinstance(t, int):
                return name(t)
            return f"[{go(t[0])},{go(t[1])}]"

        return go(self.tree)

    def __str__(self) -> str:
        return self.render()


def standard_bracketing(word: Sequence[int], alphabet: Alphabet) -> HallWord:
    w = tuple(word)
    if not is_lyndon(w):
        raise ValueError(f"{w} is not a Lyndon word")
    if any(not 0 <= i < len(alphabet) for i in w):
        raise ValueError(f"{w} uses letters outside the alphabet")
    return HallWord(w, _bracket(w), alphabet)


def generate_lyndon(
    q: int,
    max_length: int,
    weights: Sequence[Sequence[int]] | None = None,
    bound: Sequence[int] | None = None,
    caps: Sequence[int] | None = None,
    cap: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Lyndon words of length <= max_length over letters 0..q-1, in lex order.

    With ``weights`` and ``bound``, only words whose summed letter weights
    stay componentwise <= bound are produced; ``caps[i]`` limits how often
    letter i occurs. Both constraints are monotone, so prefixes violating
    them are pruned with their whole subtree.
    """
    if max_length < 1 or q < 1:
        return
    a = [0] * (max_length + 1)
    counts = [0] * q
    caps = list(caps) if caps is not None else [max_length] * q
    if weights is not None and bound is not None:
        weights = [tuple(w) for w in weights]
        resid0 = tuple(bound)
    else:
        weights = [()] * q
        resid0 = ()
    emitted = 0
    # letters whose weight fits a residual budget, cached per budget
    fitting: dict[tuple[int, ...], list[int]] = {}

    def fit_list(resid: tuple[int, ...]) -> list[int]:
        out = fitting.get(resid)
        if out is None:
            out = [j for j in range(q) if all(w <= r for w, r in zip(weights[j], resid))]
            fitting[resid] = out
        return out

    def gen(t: int, p: int, resid: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        # a[1..t-1] is a prenecklace with period p; Lyndon iff p == t-1
        nonlocal emitted
        if t > 1 and p == t - 1:
            emitted += 1
            if cap is not None and emitted > cap:
                raise EnumerationCapExceeded(
                    f"more than {cap} words enumerated; raise the cap to continue"
                )
            yield tuple(a[1:t])
        if t > max_length:
            return
        start = a[t - p] if t > 1 else 0
        letters = fit_list(resid)
        for j in letters[bisect_left(letters, start):]:
            if counts[j] >= caps[j]:
                continue
            a[t] = j
            counts[j] += 1
            nxt = tuple(r - w for r, w in zip(resid, weights[j]))
            yield from gen(t + 1, p if j == start else t, nxt)
            counts[j] -= 1

    yield from gen(1, 1, resid0)


def lyndon_words(alphabet: Alphabet, max_length: int) -> list[tuple[int, ...]]:
    """All Lyndon words of length <= max_length in (length, lex) order."""
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    words = list(generate_lyndon(len(alphabet), max_length))
    return sorted(words, key=lambda w: (len(w), w))


def bounded_words(alphabet: Alphabet, caps: Sequence[int], cap: int | None = None) -> list[HallWord]:
    """Every Hall word in which letter i occurs at most caps[i] times.

    Exhaustive because such a word has length at most sum(caps).
    """
    if len(caps) != len(alphabet):
        raise ValueError("one cap per letter is required")
    total = sum(caps)
    if total < 1:
        return []
    words = generate_lyndon(len(alphabet), total, caps=caps, cap=cap)
    return [standard_bracketing(w, alphabet) for w in sorted(words, key=lambda w: (len(w), w))]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


def witt_count(q: int, n: int) -> int:
    """Dimension of the length-n part of the free Lie algebra on q generators."""
    if q < 1 or n < 1:
        raise ValueError("q and n must be >= 1")
    total = sum(mobius(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n


def multigraded_witt(degrees: Sequence[int]) -> int:
    """Number of Lyndon words with letter i used exactly degrees[i] times."""
    n = sum(degrees)
    if n < 1:
        return 0
    g = 0
    for x in degrees:
        g = gcd(g, x)
    total = 0
    for d in range(1, g + 1):
        if g % d:
            continue
        term = factorial(n // d)
        for x in degrees:
            term //= factorial(x // d)
        total += mobius(d) * term
    return total // n
