from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Union, overload

from ..errors import WordSyntaxError


def letter_code(generator: int, exponent: int) -> int:
    """Pack a letter into one integer: 2*generator + (exponent - 1)."""
    return 2 * generator + exponent - 1


def code_inverse(code: int) -> int:
    # x_i <-> x_i^2
    return code ^ 1


def code_generator(code: int) -> int:
    return code >> 1


def code_exponent(code: int) -> int:
    return (code & 1) + 1


@dataclass(frozen=True, order=True)
class Letter:
    """A letter x_i^e of the free product of copies of Z/3, with e in {1, 2}."""

    generator: int
    exponent: int = 1

    def __post_init__(self) -> None:
        if self.generator < 0:
            raise WordSyntaxError(f"negative generator index: {self.generator}")
        if self.exponent not in (1, 2):
            raise WordSyntaxError(f"exponent must be 1 or 2, got {self.exponent}")

    @property
    def code(self) -> int:
        return letter_code(self.generator, self.exponent)

    @classmethod
    def from_code(cls, code: int) -> Letter:
        return cls(code_generator(code), code_exponent(code))

    def inverse(self) -> Letter:
        return Letter(self.generator, 3 - self.exponent)

    def render(self) -> str:
        if self.exponent == 1:
            return f"x{self.generator}"
        return f"x{self.generator}^2"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Word:
    """
    Immutable word over the letters x_i, x_i^2.

    Letters are stored as packed integer codes (see ``letter_code``); the
    ``reduced`` flag is a promise that no two neighbours share a generator and
    takes no part in equality, which is letter-for-letter.
    """

    codes: tuple[int, ...] = ()
    reduced: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.codes, tuple):
            object.__setattr__(self, "codes", tuple(self.codes))
        if not self.codes:
            object.__setattr__(self, "reduced", True)

    @classmethod
    def of(cls, letters: Iterable[Letter], reduced: bool = False) -> Word:
        return cls(tuple(letter.code for letter in letters), reduced)

    @classmethod
    def empty(cls) -> Word:
        return cls((), True)

    @cached_property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_code(code) for code in self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.codes)

    @overload
    def __getitem__(self, index: int) -> Letter: ...

    @overload
    def __getitem__(self, index: slice) -> Word: ...

    def __getitem__(self, index: Union[int, slice]) -> Union[Letter, Word]:
        if isinstance(index, slice):
            return Word(self.codes[index], self.reduced)
        return Letter.from_code(self.codes[index])

    def __add__(self, other: Word) -> Word:
        if not self.codes:
            return other
        if not other.codes:
            return self
        seam_ok = code_generator(self.codes[-1]) != code_generator(other.codes[0])
        return Word(self.codes + other.codes, self.reduced and other.reduced and seam_ok)

    def inverse(self) -> Word:
        return Word(tuple(code ^ 1 for code in reversed(self.codes)), self.reduced)

    def generators(self) -> frozenset[int]:
        return frozenset(code >> 1 for code in self.codes)

    def render(self) -> str:
        if not self.codes:
            return "1"
        return " ".join(Letter.from_code(code).render() for code in self.codes)

    def __str__(self) -> str:
        return self.render()
