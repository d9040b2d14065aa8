"""
Pieces between symmetrized members and certification of the C'(lambda)
condition.

Piece lengths come from a fingerprint index: for a member U and a length m
the key of U is the fingerprint of U[:m-1] followed by the generator of
U[m-1]. Two members share the key exactly when they share a piece of length
m (the last letter may differ in exponent, which is the one consolidation a
semi-reduced factorization allows). Every fingerprint hit is confirmed letter
by letter before it is reported.
"""

from __future__ import annotations

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from ..errors import FamilyError, InputError
from ..models.family import MemberRef, RelatorFamily
from ..models.results import CPrimeCertificate, PieceWitness, RelatorMatch
from ..models.word import Word
from .relator_index import get_relator_index

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, int, str], None]

_MODULI = (2_147_483_647, 2_147_483_629)
_BASES = (1_000_003, 911_382_323)


class PieceIndex:
    """Member table of a symmetrized set plus prefix fingerprints of its doubled text."""

    def __init__(self, family: RelatorFamily):
        self.family = family
        symmetrized = family.symmetrized
        text: list[int] = []
        heads, starts, lengths, cyclic_ids, offsets, splits = [], [], [], [], [], []
        self.first_member: list[int] = []
        count = 0
        for index, codes in enumerate(symmetrized.cyclic_words):
            base = len(text)
            size = len(codes)
            text.extend(codes)
            text.extend(codes)
            self.first_member.append(count)
            for offset in range(size):
                heads.append(-1)
                starts.append(base + offset)
                lengths.append(size)
                cyclic_ids.append(index)
                offsets.append(offset)
                splits.append(False)
                count += 1
                if size >= 2:
                    heads.append(codes[offset] ^ 1)
                    starts.append(base + offset + 1)
                    lengths.append(size + 1)
                    cyclic_ids.append(index)
                    offsets.append(offset)
                    splits.append(True)
                    count += 1
        self.text = np.asarray(text, dtype=np.int64)
        self.head = np.asarray(heads, dtype=np.int64)
        self.start = np.asarray(starts, dtype=np.int64)
        self.length = np.asarray(lengths, dtype=np.int64)
        self.cyclic = np.asarray(cyclic_ids, dtype=np.int64)
        self.offset = np.asarray(offsets, dtype=np.int64)
        self.split = np.asarray(splits, dtype=bool)
        longest = int(self.length.max()) if count else 0
        self.prefix = []
        self.powers = []
        for modulus, base in zip(_MODULI, _BASES):
            prefix = [0] * (len(text) + 1)
            acc = 0
            for i, code in enumerate(text):
                acc = (acc * base + code + 1) % modulus
                prefix[i + 1] = acc
            powers = [1] * (longest + 2)
            for i in range(1, longest + 2):
                powers[i] = powers[i - 1] * base % modulus
            self.prefix.append(np.asarray(prefix, dtype=np.int64))
            self.powers.append(np.asarray(powers, dtype=np.int64))
        logger.info(f"piece index: {count} members over {len(text)} text letters")

    def __len__(self) -> int:
        return len(self.length)

    def ref(self, member: int) -> MemberRef:
        return MemberRef(int(self.cyclic[member]), int(self.offset[member]), bool(self.split[member]))

    def member_index(self, ref: MemberRef) -> int:
        size = len(self.family.symmetrized.cyclic_words[ref.cyclic])
        first = self.first_member[ref.cyclic]
        if size < 2:
            return first + ref.offset
        return first + 2 * ref.offset + (1 if ref.split else 0)

    def codes(self, member: int) -> tuple[int, ...]:
        return self.family.symmetrized.member_codes(self.ref(member))

    def keys(self, m: int, members: np.ndarray) -> np.ndarray:
        """Fingerprints of (U[:m-1], generator of U[m-1]) for members of length >= m."""
        start = self.start[members]
        head = self.head[members]
        is_split = head >= 0
        top = len(self.text) - 1
        plain_last = self.text[np.minimum(start + m - 1, top)]
        if m == 1:
            last = np.where(is_split, head, plain_last)
        else:
            last = np.where(is_split, self.text[start + m - 2], plain_last)
        generator = (last >> 1) + 1
        combined = np.zeros(len(members), dtype=np.int64)
        for prefix, powers, modulus, base in zip(self.prefix, self.powers, _MODULI, _BASES):
            plain = np.mod(prefix[start + m - 1] - prefix[start] * powers[m - 1], modulus)
            if m >= 2:
                tail = np.mod(prefix[start + m - 2] - prefix[start] * powers[m - 2], modulus)
                split = np.mod((head + 1) * powers[m - 2] + tail, modulus)
            else:
                split = np.zeros(len(members), dtype=np.int64)
            body = np.where(is_split, split, plain)
            key = np.mod(body * base + generator, modulus)
            combined = combined * _MODULI[1] + key
        return combined

    def shares_piece(self, u: int, v: int, m: int) -> bool:
        a, b = self.codes(u), self.codes(v)
        if len(a) < m or len(b) < m or a == b:
            return False
        return a[: m - 1] == b[: m - 1] and a[m - 1] >> 1 == b[m - 1] >> 1

    def class_witness(self, m: int, host_length: int) -> Optional[tuple[int, int]]:
        """Some (host, other) with |host| = host_length sharing a piece of length m."""
        eligible = np.nonzero(self.length >= m)[0]
        if len(eligible) < 2:
            return None
        keys = self.keys(m, eligible)
        order = np.argsort(keys, kind="stable")
        ordered_keys = keys[order]
        members = eligible[order]
        same = ordered_keys[1:] == ordered_keys[:-1]
        shared = np.zeros(len(members), dtype=bool)
        shared[1:] |= same
        shared[:-1] |= same
        hosts = np.nonzero(shared & (self.length[members] == host_length))[0]
        for position in hosts[np.argsort(members[hosts], kind="stable")]:
            key = ordered_keys[position]
            lo = np.searchsorted(ordered_keys, key, side="left")
            hi = np.searchsorted(ordered_keys, key, side="right")
            host = int(members[position])
            for other in np.sort(members[lo:hi]):
                other = int(other)
                if other != host and self.shares_piece(host, other, m):
                    return host, other
        return None

    def host_witness(self, m: int, host: int) -> Optional[int]:
        """Some other member sharing a piece of length m with ``host``."""
        eligible = np.nonzero(self.length >= m)[0]
        keys = self.keys(m, eligible)
        target = self.keys(m, np.asarray([host], dtype=np.int64))[0]
        for other in eligible[keys == target]:
            other = int(other)
            if other != host and self.shares_piece(host, other, m):
                return other
        return None


_lock = threading.Lock()


def get_piece_index(family: RelatorFamily) -> PieceIndex:
    with _lock:
        index = family.cache.get("piece_index")
        if index is None:
            index = PieceIndex(family)
            family.cache["piece_index"] = index
        return index


def _longest(limit: int, probe: Callable[[int], Optional[object]]) -> tuple[int, Optional[object]]:
    """Largest m in [0, limit] with probe(m) not None (probe is monotone)."""
    lo, hi, found = 0, limit, None
    while lo < hi:
        mid = (lo + hi + 1) // 2
        hit = probe(mid)
        if hit is not None:
            lo, found = mid, hit
        else:
            hi = mid - 1
    return lo, found


def _witness(index: PieceIndex, host: int, other: int, m: int) -> PieceWitness:
    host_codes, other_codes = index.codes(host), index.codes(other)
    return PieceWitness(
        piece=Word(host_codes[:m], True),
        host=Word(host_codes, True),
        other=Word(other_codes, True),
        ratio=Fraction(m, len(host_codes)),
        seam_consolidated=host_codes[m - 1] != other_codes[m - 1],
        host_ref=index.ref(host),
        other_ref=index.ref(other),
    )


def max_piece(host: Word, family: RelatorFamily) -> Optional[PieceWitness]:
    """
    The longest piece of ``host`` against every other member of the family.

    Returns:
        A PieceWitness, or None when host shares no nonempty piece.
    """
    ref = family.symmetrized.locate(host)
    if ref is None:
        raise FamilyError(f"host is not a member of the family: {host.render()[:80]}")
    index = get_piece_index(family)
    member = index.member_index(ref)
    length, other = _longest(len(host), lambda m: index.host_witness(m, member))
    if length == 0 or other is None:
        return None
    return _witness(index, member, int(other), length)


def verify_cprime(
    family: RelatorFamily,
    lam: Fraction,
    threads: int = 1,
    on_progress: Optional[ProgressCallback] = None,
) -> CPrimeCertificate:
    """
    Certify C'(lam) for the whole symmetrized family.

    Each member-length class gets its own binary search for the longest
    piece held by a member of that length; the classes run in parallel on up
    to ``threads`` workers and are merged by max ratio and min length.
    """
    if family.is_empty():
        raise FamilyError("cannot certify an empty family")
    if not 0 < lam <= 1:
        raise InputError(f"lambda must lie in (0, 1], got {lam}")
    index = get_piece_index(family)
    classes = sorted({int(v) for v in np.unique(index.length)})
    done = 0
    progress_lock = threading.Lock()

    def search(host_length: int) -> tuple[int, int, Optional[tuple[int, int]]]:
        nonlocal done
        best, pair = _longest(host_length, lambda m: index.class_witness(m, host_length))
        with progress_lock:
            done += 1
            if on_progress is not None:
                on_progress(done, len(classes), f"length {host_length}: longest piece {best}")
        logger.info(f"class {host_length}: longest piece {best}")
        return host_length, best, pair

    if threads > 1 and len(classes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(search, classes))
    else:
        results = [search(c) for c in classes]

    ratios = {length: Fraction(best, length) for length, best, _ in results}
    max_ratio = max(ratios.values())
    witnesses = [
        _witness(index, pair[0], pair[1], best)
        for length, best, pair in results
        if pair is not None and best > 0 and ratios[length] == max_ratio
    ]
    min_length = min(len(codes) for codes in family.symmetrized.cyclic_words)
    certificate = CPrimeCertificate(
        lam=lam,
        max_piece_ratio=max_ratio,
        min_length=min_length,
        piece_condition=max_ratio < lam,
        length_condition=min_length * lam > 1,
        witnesses=witnesses,
        class_maxima={length: best for length, best, _ in results},
        members=len(index),
    )
    family.attach_certificate(lam, certificate)
    logger.info(
        f"C'({lam}) certificate: max piece ratio {max_ratio}, min length {min_length}, "
        f"pass={certificate.passed}"
    )
    return certificate


def find_relator_subword(w: Word, family: RelatorFamily, threshold: Fraction) -> Optional[RelatorMatch]:
    """
    Leftmost-longest subword S of w that is a subword of some member R with
    |S| > threshold * |R|, or None.
    """
    return get_relator_index(family).find(w, threshold)
