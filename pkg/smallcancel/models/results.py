from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .family import MemberRef
from .perm import Perm
from .word import Word


@dataclass(frozen=True)
class PieceWitness:
    """A piece B of ``host``: also a prefix of ``other`` up to its last letter's exponent."""

    piece: Word
    host: Word
    other: Word
    ratio: Fraction
    seam_consolidated: bool
    host_ref: Optional[MemberRef] = None
    other_ref: Optional[MemberRef] = None


@dataclass
class CPrimeCertificate:
    lam: Fraction
    max_piece_ratio: Fraction
    min_length: int
    piece_condition: bool
    length_condition: bool
    witnesses: list[PieceWitness] = field(default_factory=list)
    class_maxima: dict[int, int] = field(default_factory=dict)
    members: int = 0

    @property
    def passed(self) -> bool:
        return self.piece_condition and self.length_condition


class MatchKind(str, Enum):
    PLAIN = "plain"
    SPLIT_HEAD = "split-head"
    SPLIT_TAIL = "split-tail"
    SPLIT_WHOLE = "split-whole"


@dataclass(frozen=True)
class RelatorMatch:
    """w[start:start+length] equals member[position:position+length] letter for letter."""

    start: int
    length: int
    member: MemberRef
    member_word: Word
    position: int
    kind: MatchKind

    @property
    def member_length(self) -> int:
        return len(self.member_word)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.length, len(self.member_word))

    @property
    def subword(self) -> Word:
        return self.member_word[self.position : self.position + self.length]

    def complement_inverse(self) -> Word:
        """For member R = A S C, the word (C A)^-1, equal to S in the group."""
        codes = self.member_word.codes
        rest = codes[self.position + self.length :] + codes[: self.position]
        return Word(rest, False).inverse()


class VerdictStatus(str, Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL_SOUND = "nontrivial_sound"
    NONTRIVIAL_TRUNCATION_LIMITED = "nontrivial_truncation_limited"


@dataclass(frozen=True)
class DehnStep:
    position: int
    relator: str
    piece_length: int
    relator_length: int
    replacement: Word
    new_length: int

    def render(self) -> str:
        return (
            f"pos={self.position} relator={self.relator} "
            f"{self.piece_length}/{self.relator_length} -> len={self.new_length}"
        )


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    initial: Word
    final: Word
    trace: tuple[DehnStep, ...] = ()
    certificate: Optional[RelatorMatch] = None

    @property
    def is_trivial(self) -> bool:
        return self.status is VerdictStatus.TRIVIAL


@dataclass(frozen=True)
class ScanWindow:
    offset: int
    both_exponent: tuple[int, ...]
    inverse: bool = False


@dataclass
class UniqueExponentScan:
    base_length: int
    window_length: int
    window_ratio: Fraction
    expected: int
    mode: str
    windows: list[ScanWindow] = field(default_factory=list)

    @property
    def failures(self) -> list[ScanWindow]:
        return [w for w in self.windows if w.both_exponent != (self.expected,)]

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class ClosureResult:
    elements: tuple[Perm, ...]
    complete: bool
    depth: int


@dataclass(frozen=True)
class ProbeOutcome:
    word: Word
    status: VerdictStatus
    label: str = ""


@dataclass
class ProbeReport:
    probe: str
    passed: bool
    outcomes: list[ProbeOutcome] = field(default_factory=list)
    value: Optional[int] = None
