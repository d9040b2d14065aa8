"""
Normal-form arithmetic for words over the free product of copies of Z/3.

Everything here is pure: words go in, new words come out. Ratio comparisons
use ``fractions.Fraction`` so thresholds such as 1/10 stay exact.
"""

from __future__ import annotations

import logging
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from ..config import get_settings
from ..errors import InputError, NotReducedError, WordSyntaxError
from ..models.word import Word, code_generator, letter_code

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"^x(-?\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, cap: Optional[int] = None) -> Word:
    """
    Parse a token string such as ``"x0 x1^2"`` without normalizing it.

    Args:
        text: Whitespace separated tokens ``x<i>`` or ``x<i>^2``; ``"1"`` alone
            denotes the empty word.
        cap: Largest accepted generator index (defaults to the configured cap).

    Returns:
        The word exactly as written, reduced flag clear unless empty.
    """
    limit = get_settings().generator_cap if cap is None else cap
    tokens = text.split()
    if tokens == ["1"]:
        return Word.empty()
    codes = []
    for token in tokens:
        match = _TOKEN.match(token)
        if match is None:
            raise WordSyntaxError(f"malformed token: {token!r}")
        generator = int(match.group(1))
        exponent = int(match.group(2)) if match.group(2) is not None else 1
        if generator < 0:
            raise WordSyntaxError(f"negative generator index in {token!r}")
        if exponent not in (1, 2):
            raise WordSyntaxError(f"exponent outside {{1,2}} in {token!r}")
        if generator > limit:
            raise WordSyntaxError(f"generator index {generator} exceeds cap {limit}")
        codes.append(letter_code(generator, exponent))
    return Word(tuple(codes), False)


def render(w: Word) -> str:
    return w.render()


def is_reduced(w: Word) -> bool:
    codes = w.codes
    return all(codes[i] >> 1 != codes[i + 1] >> 1 for i in range(len(codes) - 1))


def _require_reduced(w: Word) -> None:
    if not w.reduced and not is_reduced(w):
        raise NotReducedError(f"word is not reduced: {w.render()}")


def reduce_codes(codes: Iterable[int]) -> list[int]:
    """Single left-to-right stack pass; exponents of neighbours add mod 3."""
    stack: list[int] = []
    for code in codes:
        if stack and stack[-1] >> 1 == code >> 1:
            top = stack.pop()
            exponent = ((top & 1) + (code & 1) + 2) % 3
            if exponent:
                stack.append(letter_code(code >> 1, exponent))
        else:
            stack.append(code)
    return stack


def reduce(w: Word) -> Word:
    if w.reduced:
        return w
    return Word(tuple(reduce_codes(w.codes)), True)


def inverse(w: Word) -> Word:
    return w.inverse()


def concat(*words: Word) -> Word:
    result = Word.empty()
    for word in words:
        result = result + word
    return result


def power(w: Word, n: int) -> Word:
    base = w if n >= 0 else w.inverse()
    return reduce(Word(base.codes * abs(n), False))


def is_cyclically_reduced(w: Word) -> bool:
    if not is_reduced(w):
        return False
    return len(w) <= 1 or code_generator(w.codes[0]) != code_generator(w.codes[-1])


def is_weakly_cyclically_reduced(w: Word) -> bool:
    if not is_reduced(w):
        return False
    return len(w) <= 1 or w.codes[0] != w.codes[-1] ^ 1


def cyclic_reduce(w: Word, consolidate: bool = False) -> tuple[Word, Word]:
    """
    Split a reduced word as conjugator * core * conjugator^-1.

    By default only mutually inverse end letters are stripped, so the core is
    weakly cyclically reduced. With ``consolidate`` a core of the form
    x^a M x^a is further conjugated to M x^{2a}, which is cyclically reduced.

    Returns:
        (core, conjugator)
    """
    _require_reduced(w)
    codes = w.codes
    lo, hi = 0, len(codes) - 1
    while hi - lo >= 1 and codes[lo] == codes[hi] ^ 1:
        lo += 1
        hi -= 1
    conjugator = Word(codes[:lo], True)
    core = codes[lo : hi + 1]
    if consolidate and len(core) >= 3 and core[0] == core[-1]:
        doubled = core[0] ^ 1  # x^{2a} = x^{-a}
        conjugator = conjugator + Word((core[0],), True)
        core = core[1:-1] + (doubled,)
    return Word(tuple(core), True), conjugator


def distinct_letter_count(w: Word) -> int:
    return len(w.generators())


def _check_epsilon(epsilon: Fraction) -> None:
    if not 0 < epsilon <= 1:
        raise InputError(f"epsilon must satisfy 0 < epsilon <= 1, got {epsilon}")


def _first_sparse_window(
    codes: Sequence[int], epsilon: Fraction, max_length: Optional[int] = None
) -> Optional[tuple[int, int]]:
    p, q = epsilon.numerator, epsilon.denominator
    n = len(codes)
    for start in range(n):
        seen: set[int] = set()
        stop = n if max_length is None else min(n, start + max_length)
        for end in range(start, stop):
            seen.add(codes[end] >> 1)
            if len(seen) * q < p * (end - start + 1):
                return start, end + 1
    return None


def is_epsilon_dense(w: Word, epsilon: Fraction) -> bool:
    """True iff every subword of length n carries at least epsilon*n generators."""
    _check_epsilon(epsilon)
    _require_reduced(w)
    return _first_sparse_window(w.codes, epsilon) is None


def is_locally_dense(w: Word, max_length: int, epsilon: Fraction) -> bool:
    """Density restricted to subwords of length at most ``max_length``."""
    _check_epsilon(epsilon)
    _require_reduced(w)
    return _first_sparse_window(w.codes, epsilon, max_length) is None


def density_barrier(epsilon: Fraction, delta: Fraction, floor: Fraction) -> bool:
    """
    Whether an epsilon-dense word is too dense to hold a delta-fraction of any
    relator whose length is at least ``floor`` per distinct letter.
    """
    return floor * epsilon * delta > 1


def cyclic_windows(w: Word, length: int) -> Iterator[Word]:
    if length < 0 or length > len(w):
        raise InputError(f"window length {length} outside [0, {len(w)}]")
    if not is_cyclically_reduced(w):
        raise NotReducedError(f"word is not cyclically reduced: {w.render()}")
    doubled = w.codes + w.codes
    for start in range(len(w)):
        yield Word(doubled[start : start + length], True)


def substitute(w: Word, images: Mapping[int, Word]) -> Word:
    """Apply the endomorphism x_i -> images[i] (unlisted generators fixed)."""
    out: list[int] = []
    for code in w.codes:
        image = images.get(code >> 1)
        if image is None:
            out.append(code)
        else:
            out.extend(image.codes * ((code & 1) + 1))
    return reduce(Word(tuple(out), False))


def least_rotation(codes: Sequence[int]) -> int:
    """Booth's algorithm: offset of the lexicographically least rotation."""
    doubled = list(codes) + list(codes)
    failure = [-1] * len(doubled)
    k = 0
    for j in range(1, len(doubled)):
        current = doubled[j]
        i = failure[j - k - 1]
        while i != -1 and current != doubled[k + i + 1]:
            if current < doubled[k + i + 1]:
                k = j - i - 1
            i = failure[i]
        if current != doubled[k + i + 1]:
            if current < doubled[k]:
                k = j
            failure[j - k] = -1
        else:
            failure[j - k] = i + 1
    return k


def canonical_rotation(codes: Sequence[int]) -> tuple[int, ...]:
    if not codes:
        return ()
    offset = least_rotation(codes)
    return tuple(codes[offset:]) + tuple(codes[:offset])


def is_proper_power(w: Word) -> bool:
    """True iff w = u^m for some word u and m >= 2 (letterwise)."""
    codes = w.codes
    n = len(codes)
    if n < 2:
        return False
    prefix = [0] * n
    for i in range(1, n):
        j = prefix[i - 1]
        while j and codes[i] != codes[j]:
            j = prefix[j - 1]
        if codes[i] == codes[j]:
            j += 1
        prefix[i] = j
    period = n - prefix[-1]
    return period < n and n % period == 0


def enumerate_reduced_words(generators: Iterable[int], max_length: int) -> Iterator[Word]:
    """All reduced words of length <= max_length, shortest first, deterministic order."""
    letters = [letter_code(g, e) for g in sorted(set(generators)) for e in (1, 2)]
    layer: list[tuple[int, ...]] = [()]
    yield Word.empty()
    for _ in range(max_length):
        nxt = []
        for prefix in layer:
            for code in letters:
                if prefix and prefix[-1] >> 1 == code >> 1:
                    continue
                nxt.append(prefix + (code,))
        for codes in nxt:
            yield Word(codes, True)
        layer = nxt
