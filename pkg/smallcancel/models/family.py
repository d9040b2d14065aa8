from __future__ import annotations

import math
from collections.abc import Collection
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence

from ..config import get_settings
from ..errors import FamilyError, ParamsError
from ..services.word_core import is_cyclically_reduced, is_reduced, least_rotation
from .perm import PrefixPattern
from .word import Word


@dataclass(frozen=True)
class ConstructionParams:
    n_rep: int = 80
    k_min: int = 2
    k_max: int = 6
    lambda_target: Fraction = Fraction(1, 10)

    def __post_init__(self) -> None:
        if self.n_rep < 1:
            raise ParamsError(f"n_rep must be >= 1, got {self.n_rep}")
        if self.k_min < 2 or self.k_max < self.k_min:
            raise ParamsError(f"need k_max >= k_min >= 2, got k_min={self.k_min} k_max={self.k_max}")
        if not 0 < self.lambda_target < 1:
            raise ParamsError(f"lambda_target must lie in (0, 1), got {self.lambda_target}")

    @classmethod
    def from_settings(cls, **overrides: Any) -> ConstructionParams:
        settings = get_settings()
        values: dict[str, Any] = {
            "n_rep": settings.n_rep,
            "k_min": settings.k_min,
            "k_max": settings.k_max,
            "lambda_target": Fraction(settings.lambda_target),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def describe(self) -> dict[str, Any]:
        return {
            "n_rep": self.n_rep,
            "k_min": self.k_min,
            "k_max": self.k_max,
            "lambda_target": f"{self.lambda_target.numerator}/{self.lambda_target.denominator}",
        }


@dataclass(frozen=True)
class BaseRelator:
    word: Word
    k: int
    prefix: Optional[PrefixPattern] = None
    n_rep: Optional[int] = None

    def sort_key(self) -> tuple:
        prefix = self.prefix.values if self.prefix is not None else ()
        return (self.k, prefix, len(self.word), self.word.codes)


@dataclass(frozen=True, order=True)
class MemberRef:
    """
    Address of a symmetrized member: a rotation of cyclic word ``cyclic``
    starting at ``offset``, or (``split``) the conjugate that splits the
    seam letter c[offset] = x^a into x^-a ... x^-a.
    """

    cyclic: int
    offset: int
    split: bool = False

    @property
    def id(self) -> str:
        return f"c{self.cyclic}@{self.offset}" + ("/s" if self.split else "")


class SymmetrizedSet(Collection):
    """
    The symmetrized closure of a set of cyclically reduced words, kept as
    deduplicated cyclic words (each base word and its inverse).

    Every cyclic word of length L >= 2 contributes L rotations and L
    letter-splitting conjugates; members are built only when asked for.
    """

    def __init__(self, base_words: Sequence[Word] = ()):
        cyclic: list[tuple[int, ...]] = []
        self._canonical: dict[tuple[int, ...], tuple[int, int]] = {}
        for base in base_words:
            for candidate in (base, base.inverse()):
                if not candidate.codes:
                    continue
                start = least_rotation(candidate.codes)
                key = candidate.codes[start:] + candidate.codes[:start]
                if key in self._canonical:
                    continue
                self._canonical[key] = (len(cyclic), start)
                cyclic.append(candidate.codes)
        self.cyclic_words: tuple[tuple[int, ...], ...] = tuple(cyclic)

    def refs(self) -> Iterator[MemberRef]:
        for index, codes in enumerate(self.cyclic_words):
            for offset in range(len(codes)):
                yield MemberRef(index, offset, False)
                if len(codes) >= 2:
                    yield MemberRef(index, offset, True)

    def member_codes(self, ref: MemberRef) -> tuple[int, ...]:
        codes = self.cyclic_words[ref.cyclic]
        p = ref.offset
        if not ref.split:
            return codes[p:] + codes[:p]
        head = codes[p] ^ 1
        return (head,) + codes[p + 1 :] + codes[:p] + (head,)

    def word(self, ref: MemberRef) -> Word:
        return Word(self.member_codes(ref), True)

    def member_length(self, ref: MemberRef) -> int:
        return len(self.cyclic_words[ref.cyclic]) + (1 if ref.split else 0)

    def locate(self, word: Word) -> Optional[MemberRef]:
        """MemberRef of ``word`` if it is a member, else None."""
        codes = word.codes
        if not codes or not is_reduced(word):
            return None
        split = False
        if not is_cyclically_reduced(word):
            if len(codes) < 3 or codes[0] != codes[-1]:
                return None
            codes = (codes[0] ^ 1,) + codes[1:-1]
            split = True
        start = least_rotation(codes)
        hit = self._canonical.get(codes[start:] + codes[:start])
        if hit is None:
            return None
        index, canonical_start = hit
        return MemberRef(index, (canonical_start - start) % len(codes), split)

    def __contains__(self, item: object) -> bool:
        return isinstance(item, Word) and self.locate(item) is not None

    def __iter__(self) -> Iterator[Word]:
        for ref in self.refs():
            yield self.word(ref)

    def __len__(self) -> int:
        return sum(2 * len(codes) if len(codes) >= 2 else 1 for codes in self.cyclic_words)

    def lengths(self) -> list[int]:
        return sorted({len(codes) for codes in self.cyclic_words})

    def materialize(self) -> tuple[Word, ...]:
        """All members, deduplicated, ordered by (length, letters)."""
        return tuple(sorted(set(self), key=lambda w: (len(w), w.codes)))


class RelatorFamily:
    """
    A finite truncation of a relator family together with its symmetrized
    closure, construction parameters and provenance.

    ``excluded_min_length`` is a lower bound on the length of every relator
    of the untruncated family that this truncation leaves out; None means
    nothing is left out.
    """

    def __init__(
        self,
        base_relators: Sequence[BaseRelator],
        params: Optional[ConstructionParams] = None,
        provenance: Optional[dict[str, Any]] = None,
        excluded_min_length: Optional[int] = None,
    ):
        unique: dict[tuple[int, ...], BaseRelator] = {}
        for relator in sorted(base_relators, key=BaseRelator.sort_key):
            unique.setdefault(relator.word.codes, relator)
        self.base_relators: tuple[BaseRelator, ...] = tuple(unique.values())
        self.params = params
        self.provenance: dict[str, Any] = dict(provenance or {})
        self.excluded_min_length = excluded_min_length
        self.symmetrized = SymmetrizedSet([relator.word for relator in self.base_relators])
        self.certificates: dict[Fraction, Any] = {}
        self.cache: dict[str, Any] = {}

    @property
    def base_words(self) -> tuple[Word, ...]:
        return tuple(relator.word for relator in self.base_relators)

    @property
    def per_letter_floor(self) -> Fraction:
        """Largest integer c with |R| >= c * k(R) for every base relator."""
        if not self.base_relators:
            return Fraction(0)
        ratio = min(Fraction(len(r.word), r.k) for r in self.base_relators)
        return Fraction(math.floor(ratio))

    @property
    def min_length(self) -> int:
        if not self.base_relators:
            raise FamilyError("empty family")
        return min(len(r.word) for r in self.base_relators)

    def is_empty(self) -> bool:
        return not self.base_relators

    def attach_certificate(self, lam: Fraction, certificate: Any) -> None:
        self.certificates[lam] = certificate

    @property
    def certified_lambda(self) -> Optional[Fraction]:
        passed = [lam for lam, cert in self.certificates.items() if getattr(cert, "passed", False)]
        return min(passed) if passed else None

    def __len__(self) -> int:
        return len(self.base_relators)

    def __repr__(self) -> str:
        return (
            f"RelatorFamily(base={len(self.base_relators)}, "
            f"cyclic={len(self.symmetrized.cyclic_words)}, params={self.params})"
        )


__all__ = [
    "BaseRelator",
    "ConstructionParams",
    "MemberRef",
    "RelatorFamily",
    "SymmetrizedSet",
]
