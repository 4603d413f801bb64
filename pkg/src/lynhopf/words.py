"""Lyndon words and monotonic super-words over a finite ordered alphabet.

Words are tuples of 1-based letter indices; Python's tuple comparison is
exactly the lexicographic order used throughout (a proper prefix is smaller).
A super-word is a tuple of words; for monotonic super-words the native
tuple-of-tuples comparison is the lexicographic order on the super-letter
alphabet.
"""

from __future__ import annotations

from typing import Iterator, Sequence

Word = tuple  # tuple[int, ...]
SuperWord = tuple  # tuple[Word, ...]

MAX_ALPHABET = 64


def validate_word(w: Sequence[int], d: int | None = None) -> Word:
    """Return w as a canonical tuple, checking letters lie in 1..d."""
    w = tuple(w)
    top = d if d is not None else MAX_ALPHABET
    for a in w:
        if not isinstance(a, int) or a < 1 or a > top:
            raise ValueError(f"letter {a!r} outside alphabet 1..{top}")
    return w


def is_lyndon(w: Word) -> bool:
    """True iff w is strictly smaller than each of its proper right factors.

    The empty word is rejected (letters are the smallest Lyndon words).
    """
    n = len(w)
    if n == 0:
        raise ValueError("empty word has no Lyndon property")
    for i in range(1, n):
        if not w < w[i:]:
            return False
    return True


def cfl_factorize(w: Word) -> SuperWord:
    """Chen-Fox-Lyndon factorization by Duval's algorithm.

    Returns the unique non-increasing tuple of Lyndon words whose
    concatenation is w; the empty word gives the empty tuple.
    """
    factors = []
    k, n = 0, len(w)
    while k < n:
        i, j = k, k + 1
        while j < n and w[i] <= w[j]:
            i = k if w[i] < w[j] else i + 1
            j += 1
        step = j - i
        while k <= i:
            factors.append(w[k:k + step])
            k += step
    return tuple(factors)


def shirshov(u: Word) -> tuple[Word, Word]:
    """Shirshov decomposition u = v w with w the longest proper Lyndon right factor.

    Both halves are Lyndon and v < vw < w.  Requires u Lyndon of length >= 2.
    """
    if len(u) < 2:
        raise ValueError(f"word {u} too short for a Shirshov decomposition")
    if not is_lyndon(u):
        raise ValueError(f"word {u} is not a Lyndon word")
    for i in range(1, len(u)):
        if is_lyndon(u[i:]):
            return u[:i], u[i:]
    raise AssertionError("unreachable: the last letter is always Lyndon")


def enumerate_lyndon(d: int, n: int) -> list[Word]:
    """All Lyndon words of length <= n over the alphabet 1..d, in lex order.

    Uses Duval's successor generation: extend the current word periodically to
    length n, strip trailing maximal letters, increment the last one.
    """
    if d < 1:
        raise ValueError("alphabet size must be at least 1")
    if d > MAX_ALPHABET:
        raise ValueError(f"alphabet size {d} exceeds the supported {MAX_ALPHABET}")
    if n < 1:
        raise ValueError("maximal length must be at least 1")
    out: list[Word] = []
    w = [1]
    while w:
        out.append(tuple(w))
        w = [w[i % len(w)] for i in range(n)]
        while w and w[-1] == d:
            w.pop()
        if w:
            w[-1] += 1
    return out


def validate_superword(sw: Sequence[Sequence[int]], monotonic: bool = True) -> SuperWord:
    """Canonicalize a sequence of words; check Lyndon factors and monotonicity."""
    sw = tuple(tuple(f) for f in sw)
    for f in sw:
        if not is_lyndon(f):
            raise ValueError(f"factor {f} is not a Lyndon word")
    if monotonic:
        for a, b in zip(sw, sw[1:]):
            if a < b:
                raise ValueError(f"factors {a} < {b} violate monotonicity")
    return sw


def compare_superwords(a: SuperWord, b: SuperWord) -> int:
    """Lexicographic comparison on the super-letter alphabet: -1, 0 or 1.

    For monotonic super-words this agrees with comparing the concatenations
    as plain words.
    """
    a = validate_superword(a)
    b = validate_superword(b)
    return (a > b) - (a < b)


def concat(sw: SuperWord) -> Word:
    """Concatenation of the factors of a super-word."""
    out: list[int] = []
    for f in sw:
        out.extend(f)
    return tuple(out)


def superword_degree(sw: SuperWord) -> int:
    return sum(len(f) for f in sw)


def monotonic_superwords(letters: Sequence[Word], degree: int,
                         max_count: dict | None = None) -> Iterator[SuperWord]:
    """Monotonic super-words of the given total degree over the given letters.

    `letters` is any collection of distinct Lyndon words; `max_count` may cap
    the multiplicity of individual letters.  Yields in descending lex order.
    """
    letters = sorted(set(letters), reverse=True)
    buf: list[Word] = []

    def rec(start: int, remaining: int) -> Iterator[SuperWord]:
        if remaining == 0:
            yield tuple(buf)
            return
        for idx in range(start, len(letters)):
            f = letters[idx]
            if len(f) > remaining:
                continue
            if max_count is not None:
                cap = max_count.get(f)
                if cap is not None and buf.count(f) >= cap:
                    continue
            buf.append(f)
            yield from rec(idx, remaining - len(f))
            buf.pop()

    return rec(0, degree)


def parse_word(s: str) -> Word:
    """Parse "12122" (digits, alphabet <= 9) or "10,2,13" (comma form)."""
    s = s.strip()
    if s == "":
        return ()
    if "," in s:
        parts = [p.strip() for p in s.rstrip(",").split(",")]
    else:
        parts = list(s)
    try:
        letters = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"cannot parse word {s!r}") from None
    return validate_word(letters)


def format_word(w: Word) -> str:
    """Inverse of parse_word; comma form only when a letter exceeds 9.

    A single letter above 9 keeps a trailing comma so the digit and comma
    grammars stay unambiguous.
    """
    if any(a > 9 for a in w):
        return ",".join(str(a) for a in w) + ("," if len(w) == 1 else "")
    return "".join(str(a) for a in w)
