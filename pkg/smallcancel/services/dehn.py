"""
Word problem by Dehn reduction over a certified family, Greendlinger
certificates, and the finite probes built on them.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ..errors import CertificationRequiredError, InputError, TruncationLimitedError
from ..models.family import RelatorFamily
from ..models.results import (
    DehnStep,
    ProbeOutcome,
    ProbeReport,
    RelatorMatch,
    Verdict,
    VerdictStatus,
)
from ..models.word import Word, letter_code
from .cancellation import find_relator_subword
from .word_core import enumerate_reduced_words, power, reduce

logger = logging.getLogger(__name__)

DEHN_THRESHOLD = Fraction(1, 2)
MAX_DEHN_LAMBDA = Fraction(1, 6)
SHAPE_BOUND = Fraction(7, 10)


def _certified_lambda(family: RelatorFamily) -> Fraction:
    lam = family.certified_lambda
    if lam is None or lam > MAX_DEHN_LAMBDA:
        raise CertificationRequiredError(
            "family needs a passing C'(lambda) certificate with lambda <= 1/6 before Dehn reduction"
        )
    return lam


def is_sound(family: RelatorFamily, final: Word) -> bool:
    """No relator left out of the truncation can be a majority subword of ``final``."""
    excluded = family.excluded_min_length
    return excluded is None or 2 * len(final) <= excluded


def generator_power(i: int, alpha: int) -> Word:
    """x_i^alpha; exponents are taken mod 3, so -1 and 2 give the same letter."""
    exponent = alpha % 3
    if exponent == 0:
        raise InputError(f"x_{i}^{alpha} is the identity, not a letter")
    return Word((letter_code(i, exponent),), True)


def dehn_reduce(w: Word, family: RelatorFamily) -> Verdict:
    """
    Reduce ``w`` by repeatedly replacing a leftmost-longest subword S with
    |S| > |R|/2 of a member R = A S C by (C A)^-1.

    Returns:
        Verdict with the full trace; the first match doubles as the
        Greendlinger certificate.
    """
    _certified_lambda(family)
    current = reduce(w)
    steps: list[DehnStep] = []
    first: Optional[RelatorMatch] = None
    while current:
        match = find_relator_subword(current, family, DEHN_THRESHOLD)
        if match is None:
            break
        if first is None:
            first = match
        replacement = reduce(match.complement_inverse())
        codes = current.codes
        rewritten = reduce(
            Word(codes[: match.start] + replacement.codes + codes[match.start + match.length :], False)
        )
        steps.append(
            DehnStep(
                position=match.start,
                relator=match.member.id,
                piece_length=match.length,
                relator_length=match.member_length,
                replacement=replacement,
                new_length=len(rewritten),
            )
        )
        logger.debug(steps[-1].render())
        current = rewritten
    if not current:
        status = VerdictStatus.TRIVIAL
    elif is_sound(family, current):
        status = VerdictStatus.NONTRIVIAL_SOUND
    else:
        status = VerdictStatus.NONTRIVIAL_TRUNCATION_LIMITED
    return Verdict(status=status, initial=w, final=current, trace=tuple(steps), certificate=first)


def dehn_reduce_many(words: Sequence[Word], family: RelatorFamily, threads: int = 1) -> list[Verdict]:
    if threads <= 1 or len(words) <= 1:
        return [dehn_reduce(w, family) for w in words]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(lambda w: dehn_reduce(w, family), words))


def greendlinger_certificate(
    w: Word, family: RelatorFamily, bound: Optional[Fraction] = None
) -> Optional[RelatorMatch]:
    """
    A subword of ``w`` holding more than ``bound`` of some member.

    ``bound`` defaults to 1 - 3*lambda for the family's certified lambda. A
    None result on a word known to be trivial means a hypothesis failed.
    """
    if not w.codes:
        raise InputError("Greendlinger certificates need a nonempty reduced word")
    if bound is None:
        lam = family.certified_lambda
        if lam is None:
            raise CertificationRequiredError("no certified lambda to derive the bound 1 - 3*lambda")
        bound = 1 - 3 * lam
    match = find_relator_subword(w, family, bound)
    if match is None:
        logger.warning(f"no subword above {bound} of any relator in a word of length {len(w)}")
    return match


def _require_verdict(verdict: Verdict) -> bool:
    if verdict.status is VerdictStatus.NONTRIVIAL_TRUNCATION_LIMITED:
        raise TruncationLimitedError(
            f"word of length {len(verdict.final)} is beyond what the truncation can vouch for"
        )
    return verdict.is_trivial


def order_probe(i: int, family: RelatorFamily) -> int:
    """Least n in {1, 2, 3} with x_i^n trivial in the group."""
    for n in (1, 2, 3):
        if _require_verdict(dehn_reduce(Word((letter_code(i, 1),) * n, False), family)):
            return n
    raise AssertionError("x_i^3 always freely reduces to the empty word")


def commutes_probe(z: Word, i: int, family: RelatorFamily) -> bool:
    """Whether z x_i z^-1 x_i^2 is trivial."""
    word = z + generator_power(i, 1) + z.inverse() + generator_power(i, -1)
    return _require_verdict(dehn_reduce(word, family))


def conjugacy_probe(
    i: int,
    j: int,
    family: RelatorFamily,
    generators: Iterable[int],
    max_length: int = 2,
) -> ProbeReport:
    """
    Check that x_i and x_j look non-conjugate: u x_i u^-1 x_j^2 must be
    nontrivial_sound for every reduced u of length <= max_length.
    """
    if i == j:
        raise InputError("conjugacy probe needs distinct generators")
    report = ProbeReport(probe="conjugacy", passed=True)
    for u in enumerate_reduced_words(generators, max_length):
        word = u + generator_power(i, 1) + u.inverse() + generator_power(j, -1)
        verdict = dehn_reduce(word, family)
        report.outcomes.append(ProbeOutcome(word=u, status=verdict.status, label=f"x{i}~x{j}"))
        if verdict.status is not VerdictStatus.NONTRIVIAL_SOUND:
            report.passed = False
    return report


def centralizer_sweep(
    i: int, family: RelatorFamily, generators: Iterable[int], max_length: int
) -> ProbeReport:
    """Every short z commuting with x_i should be a power of x_i."""
    powers = {Word.empty(), generator_power(i, 1), generator_power(i, -1)}
    report = ProbeReport(probe="centralizer", passed=True)
    for z in enumerate_reduced_words(generators, max_length):
        if commutes_probe(z, i, family):
            report.outcomes.append(ProbeOutcome(word=z, status=VerdictStatus.TRIVIAL, label="commutes"))
            if z not in powers:
                report.passed = False
    return report


def base_case_word(i: int, alpha: int, j: int, beta: int, u: Word, n_rep: int) -> Word:
    """prod_{n=1..n_rep} (x_i^a U x_j^-b U^-1)(x_i^a U x_j^b U^-1)^n, reduced."""
    xi = generator_power(i, alpha)
    head = xi + u + generator_power(j, -beta) + u.inverse()
    block = xi + u + generator_power(j, beta) + u.inverse()
    codes: list[int] = []
    for n in range(1, n_rep + 1):
        codes.extend(head.codes)
        codes.extend(block.codes * n)
    return reduce(Word(tuple(codes), False))


def dense_shape_word(
    z: Word,
    a: Word,
    y: Word,
    p: int,
    b: Word,
    c: Word,
    d: Word,
    ell: int,
    alpha: int,
    n_rep: int,
) -> Word:
    """prod_{n=1..n_rep} (Z^-1 A Y^-p B Y^p C Z x_l^-a)(Z^-1 D Z x_l^a)^n, reduced."""
    if p < 0:
        raise InputError(f"p must be non-negative, got {p}")
    zi = z.inverse()
    head = zi + a + power(y, -p) + b + power(y, p) + c + z + generator_power(ell, -alpha)
    block = zi + d + z + generator_power(ell, alpha)
    codes: list[int] = []
    for n in range(1, n_rep + 1):
        codes.extend(head.codes)
        codes.extend(block.codes * n)
    return reduce(Word(tuple(codes), False))


def shape_probe(w: Word, family: RelatorFamily, bound: Fraction = SHAPE_BOUND) -> Optional[RelatorMatch]:
    """Whether ``w`` holds more than ``bound`` of some relator."""
    return find_relator_subword(reduce(w), family, bound)
