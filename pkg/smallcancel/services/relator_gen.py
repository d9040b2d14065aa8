"""
Relator generation: the words w_{sigma,k}, their symmetrized closure, the
unique both-exponent window scan, and the family manifest format.
"""

from __future__ import annotations

import json
import logging
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Union

from ..errors import InputError, ManifestError, NotReducedError, ParamsError
from ..models.family import BaseRelator, ConstructionParams, RelatorFamily, SymmetrizedSet
from ..models.perm import PrefixPattern
from ..models.results import ScanWindow, UniqueExponentScan
from ..models.word import Word, letter_code
from .word_core import distinct_letter_count, is_cyclically_reduced, is_proper_power, parse_word

logger = logging.getLogger(__name__)

MANIFEST_HEADER = "# smallcancel family manifest"
_ENTRY = re.compile(r"^(?:\(([\d,\s]*)\)|-)\s+k=(\d+)(?:\s+n=(\d+))?$")


def make_relator(prefix: Union[PrefixPattern, Sequence[int]], k: int, n_rep: int) -> Word:
    """
    Build prod_{n=1..n_rep} (x_{s0} x_{s(k-1)}^2)(x_{s0} ... x_{s(k-1)})^n.

    Args:
        prefix: The injective tuple (sigma(0), ..., sigma(k-1)).
        k: Number of letters; at least 2.
        n_rep: Repetition bound; at least 1.

    Returns:
        The relator as a reduced, cyclically reduced word.
    """
    if k < 2:
        raise ParamsError(f"k must be >= 2, got {k}")
    if n_rep < 1:
        raise ParamsError(f"n_rep must be >= 1, got {n_rep}")
    pattern = prefix if isinstance(prefix, PrefixPattern) else PrefixPattern(tuple(prefix))
    if len(pattern) != k:
        raise ParamsError(f"prefix {pattern.render()} does not have length k={k}")
    block = tuple(letter_code(g, 1) for g in pattern.values)
    head = (letter_code(pattern.values[0], 1), letter_code(pattern.values[-1], 2))
    codes: list[int] = []
    for n in range(1, n_rep + 1):
        codes.extend(head)
        codes.extend(block * n)
    return Word(tuple(codes), True)


def relator_length(k: int, n_rep: int) -> int:
    if k < 2 or n_rep < 1:
        raise ParamsError(f"need k >= 2 and n_rep >= 1, got k={k} n_rep={n_rep}")
    return 2 * n_rep + k * n_rep * (n_rep + 1) // 2


def _check_base(words: Iterable[Word]) -> list[Word]:
    checked = []
    for word in words:
        if not is_cyclically_reduced(word):
            raise NotReducedError(f"base word is not cyclically reduced: {word.render()}")
        if is_proper_power(word):
            raise InputError(f"base word is a proper power: {word.render()}")
        checked.append(word)
    return checked


def symmetrize(base: Iterable[Word]) -> tuple[Word, ...]:
    """
    All weakly cyclically reduced conjugates of each base word and its inverse.

    Returns:
        The members, deduplicated and ordered by (length, letters).
    """
    return SymmetrizedSet(_check_base(base)).materialize()


def build_family(
    words: Iterable[Word],
    params: Optional[ConstructionParams] = None,
    provenance: Optional[dict[str, Any]] = None,
) -> RelatorFamily:
    """Family over arbitrary cyclically reduced words; nothing outside it is implied."""
    relators = [BaseRelator(word=w, k=max(1, distinct_letter_count(w))) for w in _check_base(words)]
    details = {"source": "words"}
    details.update(provenance or {})
    return RelatorFamily(relators, params=params, provenance=details, excluded_min_length=None)


def generate_relators(
    jobs: Sequence[tuple[PrefixPattern, int]], n_rep: int, threads: int = 1
) -> list[BaseRelator]:
    """Build one relator per (prefix, k) job; output order follows ``jobs``."""

    def build(job: tuple[PrefixPattern, int]) -> BaseRelator:
        prefix, k = job
        return BaseRelator(word=make_relator(prefix, k, n_rep), k=k, prefix=prefix, n_rep=n_rep)

    if threads <= 1 or len(jobs) <= 1:
        return [build(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(build, jobs))


def both_exponent_letters(w: Word) -> tuple[int, ...]:
    """Generators that occur in w both as x_i and as x_i^2."""
    exponents: dict[int, set[int]] = {}
    for code in w.codes:
        exponents.setdefault(code >> 1, set()).add(code & 1)
    return tuple(sorted(g for g, seen in exponents.items() if len(seen) == 2))


def _scan_windows(codes: Sequence[int], width: int, cyclic: bool, inverse: bool) -> list[ScanWindow]:
    n = len(codes)
    text = tuple(codes) + tuple(codes[: width - 1]) if cyclic else tuple(codes)
    starts = n if cyclic else n - width + 1
    counts: Counter[int] = Counter()
    both: set[int] = set()

    def add(code: int) -> None:
        counts[code] += 1
        if counts[code] == 1 and counts[code ^ 1] > 0:
            both.add(code >> 1)

    def drop(code: int) -> None:
        counts[code] -= 1
        if counts[code] == 0:
            both.discard(code >> 1)

    for code in text[:width]:
        add(code)
    windows = [ScanWindow(0, tuple(sorted(both)), inverse)]
    for start in range(1, starts):
        drop(text[start - 1])
        add(text[start + width - 1])
        windows.append(ScanWindow(start, tuple(sorted(both)), inverse))
    return windows


def unique_exponent_scan(
    base: Word,
    window_ratio: Fraction,
    mode: str = "cyclic",
    include_inverse: bool = False,
) -> UniqueExponentScan:
    """
    Report the both-exponent generators of every window of length
    ceil(window_ratio * |base|).

    Args:
        base: A generated relator; its last letter names the expected generator.
        window_ratio: Window size as a fraction of |base|, in (0, 1].
        mode: "cyclic" reads windows around the cyclic word; "linear" only
            reads subwords of the fixed word.
        include_inverse: Also scan base^-1.
    """
    if not 0 < window_ratio <= 1:
        raise InputError(f"window ratio must lie in (0, 1], got {window_ratio}")
    if mode not in ("cyclic", "linear"):
        raise InputError(f"unknown scan mode: {mode}")
    if not base.codes:
        raise InputError("cannot scan the empty word")
    length = len(base)
    width = -(-window_ratio.numerator * length // window_ratio.denominator)
    report = UniqueExponentScan(
        base_length=length,
        window_length=width,
        window_ratio=window_ratio,
        expected=base.codes[-1] >> 1,
        mode=mode,
    )
    targets = [(base, False)] + ([(base.inverse(), True)] if include_inverse else [])
    for word, inverse in targets:
        report.windows.extend(_scan_windows(word.codes, width, mode == "cyclic", inverse))
    logger.info(
        f"unique-exponent scan: {len(report.windows)} windows of length {width}, "
        f"{len(report.failures)} failures"
    )
    return report


def write_manifest(family: RelatorFamily) -> str:
    lines = [MANIFEST_HEADER]
    if family.params is not None:
        lines.append("# params: " + json.dumps(family.params.describe(), sort_keys=True))
    lines.append("# provenance: " + json.dumps(family.provenance, sort_keys=True, default=str))
    excluded = "none" if family.excluded_min_length is None else str(family.excluded_min_length)
    lines.append(f"# excluded_min_length: {excluded}")
    for relator in family.base_relators:
        if relator.prefix is not None:
            lines.append(f"{relator.prefix.render()} k={relator.k} n={relator.n_rep}")
        else:
            lines.append(f"- k={relator.k}")
        lines.append(relator.word.render())
    return "\n".join(lines) + "\n"


def read_manifest(text: str) -> RelatorFamily:
    """
    Parse a manifest written by ``write_manifest``.

    Relators carrying a prefix are regenerated and compared letter for letter.
    """
    params: Optional[ConstructionParams] = None
    provenance: dict[str, Any] = {}
    excluded: Optional[int] = None
    relators: list[BaseRelator] = []
    pending: Optional[tuple[Optional[PrefixPattern], int, Optional[int]]] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            try:
                if body.startswith("params:"):
                    data = json.loads(body[len("params:") :])
                    params = ConstructionParams(
                        n_rep=int(data["n_rep"]),
                        k_min=int(data["k_min"]),
                        k_max=int(data["k_max"]),
                        lambda_target=Fraction(data["lambda_target"]),
                    )
                elif body.startswith("provenance:"):
                    provenance = json.loads(body[len("provenance:") :])
                elif body.startswith("excluded_min_length:"):
                    value = body[len("excluded_min_length:") :].strip()
                    excluded = None if value == "none" else int(value)
            except (ValueError, KeyError) as e:
                raise ManifestError(f"line {number}: bad header: {e}") from e
            continue
        if pending is None:
            match = _ENTRY.match(line)
            if match is None:
                raise ManifestError(f"line {number}: expected '<prefix> k=<k> n=<n>', got {line!r}")
            prefix = None
            if match.group(1) is not None:
                values = tuple(int(v) for v in match.group(1).replace(",", " ").split())
                prefix = PrefixPattern(values)
            n_rep = int(match.group(3)) if match.group(3) is not None else None
            pending = (prefix, int(match.group(2)), n_rep)
            continue
        prefix, k, n_rep = pending
        pending = None
        word = parse_word(line)
        if prefix is not None:
            if n_rep is None:
                raise ManifestError(f"line {number}: prefixed relator without n=")
            expected = make_relator(prefix, k, n_rep)
            if expected != word:
                raise ManifestError(f"line {number}: word does not match {prefix.render()} k={k} n={n_rep}")
            word = expected
        elif not is_cyclically_reduced(word):
            raise ManifestError(f"line {number}: relator is not cyclically reduced")
        relators.append(BaseRelator(word=Word(word.codes, True), k=k, prefix=prefix, n_rep=n_rep))
    if pending is not None:
        raise ManifestError("manifest ends after a header line without its word")
    logger.info(f"read manifest with {len(relators)} base relators")
    return RelatorFamily(relators, params=params, provenance=provenance, excluded_min_length=excluded)
