"""Seeded random inputs for the density-barrier and Greendlinger suites."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..errors import FamilyError, InputError
from ..models.family import RelatorFamily
from ..models.word import Word, letter_code
from .word_core import enumerate_reduced_words, reduce

logger = logging.getLogger(__name__)


def _suffixes_dense(codes: Sequence[int], p: int, q: int) -> bool:
    seen: set[int] = set()
    n = len(codes)
    for start in range(n - 1, -1, -1):
        seen.add(codes[start] >> 1)
        if len(seen) * q < p * (n - start):
            return False
    return True


def random_dense_word(
    rng: np.random.Generator,
    length: int,
    epsilon: Fraction,
    alphabet: int = 12,
    pattern: int = 3,
    bias: float = 0.8,
    retries: int = 64,
) -> Word:
    """
    A reduced epsilon-dense word that keeps returning to the cyclic run
    x_0 x_1 ... x_{pattern-1}, so it sits close to relator material.

    Every appended letter is checked against all windows ending at it, which
    is enough for the whole word to be dense. The word comes back shorter
    than `length` when `retries` draws in a row all break density, which is
    how epsilon = 1 caps it at `alphabet` letters.
    """
    if not 0 < epsilon <= 1:
        raise InputError(f"epsilon must satisfy 0 < epsilon <= 1, got {epsilon}")
    p, q = epsilon.numerator, epsilon.denominator
    codes: list[int] = []
    step = 0
    while len(codes) < length:
        for _ in range(retries):
            if rng.random() < bias:
                generator = step % pattern
            else:
                generator = int(rng.integers(alphabet))
            if codes and codes[-1] >> 1 == generator:
                continue
            candidate = codes + [letter_code(generator, int(rng.integers(1, 3)))]
            if _suffixes_dense(candidate, p, q):
                codes = candidate
                step += 1
                break
        else:
            break
    return Word(tuple(codes), True)


def random_relator_product(
    rng: np.random.Generator,
    family: RelatorFamily,
    max_factors: int = 3,
    conjugator_length: int = 4,
    generators: Sequence[int] = (0, 1, 2, 3),
    max_k: Optional[int] = None,
) -> Word:
    """Reduced product of 1..max_factors conjugates u R^{+-1} u^-1 of base relators."""
    pool = [r.word for r in family.base_relators if max_k is None or r.k <= max_k]
    if not pool:
        raise FamilyError("no base relators to sample from")
    conjugators = list(enumerate_reduced_words(generators, conjugator_length))
    codes: list[int] = []
    for _ in range(int(rng.integers(1, max_factors + 1))):
        relator = pool[int(rng.integers(len(pool)))]
        if rng.random() < 0.5:
            relator = relator.inverse()
        u = conjugators[int(rng.integers(len(conjugators)))]
        codes.extend(u.codes + relator.codes + u.inverse().codes)
    return reduce(Word(tuple(codes), False))
