"""
Substring index over a symmetrized family.

One suffix automaton is built per cyclic-word length L over the doubled
cyclic words of that length, each followed by a private separator. A
substring of some member of length L or L + 1 is then either a window of a
doubled word, or such a window whose first or last letter has its exponent
flipped (members that split a seam letter x^a into x^-a ... x^-a).
"""

from __future__ import annotations

import bisect
import logging
import threading
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import InputError, NotReducedError, SmallCancelError
from ..models.family import MemberRef, RelatorFamily
from ..models.results import MatchKind, RelatorMatch
from ..models.word import Word
from .word_core import is_reduced

logger = logging.getLogger(__name__)

_KIND_RANK = {
    MatchKind.PLAIN: 0,
    MatchKind.SPLIT_HEAD: 1,
    MatchKind.SPLIT_TAIL: 2,
    MatchKind.SPLIT_WHOLE: 3,
}


class SuffixAutomaton:
    """Generalized suffix automaton; ``firstpos`` is the end of a first occurrence."""

    def __init__(self, words: Sequence[tuple[int, ...]]):
        self.next: list[dict[int, int]] = [{}]
        self.link: list[int] = [-1]
        self.length: list[int] = [0]
        self.firstpos: list[int] = [-1]
        self.starts: list[int] = []
        last, position = 0, 0
        for index, codes in enumerate(words):
            self.starts.append(position)
            for code in codes + codes:
                last = self._extend(last, code, position)
                position += 1
            last = self._extend(last, -1 - index, position)
            position += 1

    def _extend(self, last: int, token: int, position: int) -> int:
        nxt, link, length, firstpos = self.next, self.link, self.length, self.firstpos
        current = len(length)
        nxt.append({})
        link.append(0)
        length.append(length[last] + 1)
        firstpos.append(position)
        p = last
        while p != -1 and token not in nxt[p]:
            nxt[p][token] = current
            p = link[p]
        if p == -1:
            return current
        q = nxt[p][token]
        if length[p] + 1 == length[q]:
            link[current] = q
            return current
        clone = len(length)
        nxt.append(dict(nxt[q]))
        link.append(link[q])
        length.append(length[p] + 1)
        firstpos.append(firstpos[q])
        while p != -1 and nxt[p].get(token) == q:
            nxt[p][token] = clone
            p = link[p]
        link[q] = link[current] = clone
        return current

    def __len__(self) -> int:
        return len(self.length)

    def scan(self, codes: Sequence[int]) -> tuple[list[int], list[int]]:
        """
        For each end position j of ``codes``, the length of the longest
        indexed substring ending at j, and of the longest one ending at j
        once w[j]'s exponent is flipped.
        """
        nxt, link, length = self.next, self.link, self.length
        plain = [0] * len(codes)
        flipped = [0] * len(codes)
        state, matched = 0, 0
        for j, code in enumerate(codes):
            flip = code ^ 1
            u, lu = state, matched
            while u and flip not in nxt[u]:
                u = link[u]
                lu = length[u]
            flipped[j] = lu + 1 if flip in nxt[u] else 0
            while state and code not in nxt[state]:
                state = link[state]
                matched = length[state]
            if code in nxt[state]:
                state = nxt[state][code]
                matched += 1
            else:
                matched = 0
            plain[j] = matched
        return plain, flipped

    def locate(self, target: Sequence[int]) -> tuple[int, int]:
        """(word index, start inside its doubled text) of the first occurrence."""
        state = 0
        for code in target:
            state = self.next[state][code]
        start = self.firstpos[state] - len(target) + 1
        index = bisect.bisect_right(self.starts, start) - 1
        return index, start - self.starts[index]


class _LengthClass:
    def __init__(self, length: int, cyclic_ids: list[int], words: list[tuple[int, ...]]):
        self.length = length
        self.cyclic_ids = cyclic_ids
        self.automaton = SuffixAutomaton(words)


class RelatorIndex:
    """Answers leftmost-longest relator-subword queries for one family."""

    def __init__(self, family: RelatorFamily):
        self.family = family
        by_length: dict[int, list[int]] = {}
        for index, codes in enumerate(family.symmetrized.cyclic_words):
            by_length.setdefault(len(codes), []).append(index)
        self.classes = []
        for length in sorted(by_length):
            ids = by_length[length]
            words = [family.symmetrized.cyclic_words[i] for i in ids]
            self.classes.append(_LengthClass(length, ids, words))
        logger.info(
            f"relator index: {len(self.classes)} length classes, "
            f"{sum(len(c.automaton) for c in self.classes)} automaton states"
        )

    def find(self, w: Word, threshold: Fraction) -> Optional[RelatorMatch]:
        if not 0 < threshold <= 1:
            raise InputError(f"threshold must lie in (0, 1], got {threshold}")
        if not w.reduced and not is_reduced(w):
            raise NotReducedError(f"word is not reduced: {w.render()}")
        codes = w.codes
        n = len(codes)
        p, q = threshold.numerator, threshold.denominator
        candidates = []
        inverse_codes: Optional[list[int]] = None
        for cls in self.classes:
            if n * q <= p * cls.length:
                continue
            if inverse_codes is None:
                inverse_codes = [code ^ 1 for code in reversed(codes)]
            found = self._leftmost_in_class(cls, codes, inverse_codes, p, q)
            if found is not None:
                candidates.append(found)
        if not candidates:
            return None
        start = min(c[0] for c in candidates)
        best = min(
            (c for c in candidates if c[0] == start),
            key=lambda c: (-c[1], c[2].length, _KIND_RANK[c[3]]),
        )
        return self._materialize(codes, *best)

    def _leftmost_in_class(
        self, cls: _LengthClass, codes: Sequence[int], inverse_codes: Sequence[int], p: int, q: int
    ) -> Optional[tuple[int, int, _LengthClass, MatchKind]]:
        n, big = len(codes), cls.length
        split_ok = big >= 2
        _, tail_flip = cls.automaton.scan(codes)
        back_plain, back_flip = cls.automaton.scan(inverse_codes)
        # starting at i: back_*[n - 1 - i]
        options: list[tuple[int, int, MatchKind]] = []
        for i in range(n):
            run = min(back_plain[n - 1 - i], big)
            if run * q > p * big:
                options.append((i, run, MatchKind.PLAIN))
                break
        if split_ok:
            for i in range(n):
                run_flip = back_flip[n - 1 - i]
                run = min(run_flip, big)
                if run * q > p * (big + 1):
                    options.append((i, run, MatchKind.SPLIT_HEAD))
                    break
            for i in range(n - big if q > p else 0):
                if back_flip[n - 1 - i] >= big and codes[i + big] == codes[i]:
                    options.append((i, big + 1, MatchKind.SPLIT_WHOLE))
                    break
            tail_start = None
            for j in range(n):
                run = min(tail_flip[j], big)
                if run * q > p * (big + 1):
                    s = j - run + 1
                    if tail_start is None or s < tail_start:
                        tail_start = s
            if tail_start is not None:
                longest = 0
                for j in range(tail_start, min(n, tail_start + big)):
                    m = j - tail_start + 1
                    if m <= min(tail_flip[j], big) and m * q > p * (big + 1):
                        longest = m
                options.append((tail_start, longest, MatchKind.SPLIT_TAIL))
        if not options:
            return None
        start = min(o[0] for o in options)
        best = min((o for o in options if o[0] == start), key=lambda o: (-o[1], _KIND_RANK[o[2]]))
        return best[0], best[1], cls, best[2]

    def _materialize(
        self, codes: Sequence[int], start: int, length: int, cls: _LengthClass, kind: MatchKind
    ) -> RelatorMatch:
        big = cls.length
        piece = list(codes[start : start + length])
        if kind is MatchKind.PLAIN:
            target = piece
        elif kind is MatchKind.SPLIT_HEAD:
            target = [piece[0] ^ 1] + piece[1:]
        elif kind is MatchKind.SPLIT_TAIL:
            target = piece[:-1] + [piece[-1] ^ 1]
        else:
            target = [piece[0] ^ 1] + piece[1:big]
        word_index, offset = cls.automaton.locate(target)
        cyclic = cls.cyclic_ids[word_index]
        if kind is MatchKind.SPLIT_TAIL:
            ref = MemberRef(cyclic, (offset + length - 1) % big, True)
            position = big + 1 - length
        else:
            ref = MemberRef(cyclic, offset % big, kind is not MatchKind.PLAIN)
            position = 0
        member = self.family.symmetrized.word(ref)
        if member.codes[position : position + length] != tuple(piece):
            raise SmallCancelError(f"index returned a non-matching member {ref.id}")
        return RelatorMatch(
            start=start,
            length=length,
            member=ref,
            member_word=member,
            position=position,
            kind=kind,
        )


_lock = threading.Lock()


def get_relator_index(family: RelatorFamily) -> RelatorIndex:
    """The family's cached RelatorIndex, built on first use."""
    with _lock:
        index = family.cache.get("relator_index")
        if index is None:
            index = RelatorIndex(family)
            family.cache["relator_index"] = index
        return index
