"""
Finite fragments of permutation groups of the naturals and the truncated
map from a group to its relator family.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Iterable, Optional

from sympy.combinatorics import Permutation, PermutationGroup

from ..errors import FamilyError, ManifestError, ParamsError, PermSyntaxError
from ..models.family import BaseRelator, ConstructionParams, RelatorFamily
from ..models.perm import GroupSpec, Perm, PrefixPattern
from ..models.results import ClosureResult
from ..models.word import Word, letter_code
from .relator_gen import generate_relators, make_relator, relator_length

logger = logging.getLogger(__name__)

_PERM = re.compile(r"^(?:\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+$")
_CYCLE = re.compile(r"\(([^)]*)\)")
_DEPTH = re.compile(r"^depth\s*=\s*(\d+)$")


def parse_perm(text: str) -> Perm:
    """
    Parse disjoint cycle notation such as ``"(0 1 2)(3 4)"``, or ``"id"``.
    """
    body = text.strip()
    if body == "id":
        return Perm.identity()
    if not _PERM.match(body):
        raise PermSyntaxError(f"malformed permutation: {text!r}")
    cycles = [[int(v) for v in group.replace(",", " ").split()] for group in _CYCLE.findall(body)]
    return Perm.from_cycles(cycles)


def parse_group_spec(text: str, source: str = "") -> GroupSpec:
    """Group spec file: cycle-notation generator lines, '#' comments, a depth=<n> header."""
    depth: Optional[int] = None
    generators: list[Perm] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _DEPTH.match(line)
        if match:
            depth = int(match.group(1))
            continue
        try:
            generators.append(parse_perm(line))
        except PermSyntaxError as e:
            raise PermSyntaxError(f"{source or 'group spec'} line {number}: {e}") from e
    if depth is None:
        raise ManifestError(f"{source or 'group spec'}: missing 'depth=<n>' header")
    return GroupSpec(generators=tuple(generators), closure_depth=depth, source=source)


def read_group_spec(path: Path) -> GroupSpec:
    return parse_group_spec(Path(path).read_text(), source=str(path))


def closure_enumerate(spec: GroupSpec) -> ClosureResult:
    """
    All products of at most ``closure_depth`` generators and inverses.

    The result is flagged complete when the fragment has as many elements as
    the group the generators span, i.e. it is the whole (finite) group.
    """
    generators = [g for g in spec.generators if not g.is_identity]
    degree = max((g.degree for g in generators), default=1)
    letters = {g.as_permutation(degree) for g in generators}
    letters |= {~g for g in letters}
    identity = Permutation(list(range(degree)))
    elements = {identity}
    frontier = {identity}
    for _ in range(spec.closure_depth):
        # x * g applies x first, so this is g o x
        fresh = {x * g for x in frontier for g in letters} - elements
        if not fresh:
            break
        elements |= fresh
        frontier = fresh
    order = int(PermutationGroup(sorted(letters, key=lambda p: p.array_form)).order()) if letters else 1
    complete = len(elements) == order
    logger.info(
        f"closure: {len(elements)} of {order} elements at depth {spec.closure_depth}, complete={complete}"
    )
    return ClosureResult(
        elements=tuple(sorted(Perm.of(p) for p in elements)), complete=complete, depth=spec.closure_depth
    )


def prefix_patterns(elements: Iterable[Perm], k: int) -> tuple[PrefixPattern, ...]:
    if k < 1:
        raise ParamsError(f"k must be >= 1, got {k}")
    return tuple(sorted({PrefixPattern.of_perm(sigma, k) for sigma in elements}))


def materialize_family(
    spec: GroupSpec, params: ConstructionParams, threads: int = 1
) -> RelatorFamily:
    """
    Base relators make_relator(p, k, n_rep) for every k in [k_min, k_max] and
    every prefix pattern of the enumerated closure, with their symmetrized
    closure and provenance.
    """
    closure = closure_enumerate(spec)
    if not closure.complete:
        logger.warning(f"closure incomplete at depth {spec.closure_depth}; family under-approximates")
    jobs = [
        (pattern, k)
        for k in range(params.k_min, params.k_max + 1)
        for pattern in prefix_patterns(closure.elements, k)
    ]
    relators = generate_relators(jobs, params.n_rep, threads)
    # relators outside the truncation: k < k_min, k > k_max, or prefixes the fragment missed
    if closure.complete and params.k_min <= 2:
        excluded = relator_length(params.k_max + 1, params.n_rep)
    else:
        excluded = relator_length(2, params.n_rep)
    provenance = {
        "source": spec.source or "group",
        "generators": [g.render() for g in spec.generators],
        "depth": spec.closure_depth,
        "closure_size": len(closure.elements),
        "closure_complete": closure.complete,
        "params": params.describe(),
        # the relators read only sigma(0..k-1), so any dense fragment gives the same truncation
        "fragment": "enumerated",
    }
    logger.info(f"materialized {len(relators)} base relators from {len(jobs)} (prefix, k) jobs")
    return RelatorFamily(relators, params=params, provenance=provenance, excluded_min_length=excluded)


def inclusion_missing(a: RelatorFamily, b: RelatorFamily) -> list[BaseRelator]:
    """Base relators of ``a`` that ``b`` lacks."""
    if a.params is not None and b.params is not None and a.params != b.params:
        raise FamilyError(f"parameter mismatch: {a.params} vs {b.params}")
    present = set(b.base_words)
    return [relator for relator in a.base_relators if relator.word not in present]


def check_inclusion(a: RelatorFamily, b: RelatorFamily) -> bool:
    return not inclusion_missing(a, b)


def apply_sigma(sigma: Perm, w: Word) -> Word:
    """Relabel x_i -> x_{sigma(i)}, keeping exponents."""
    mapping = sigma.as_dict()
    codes = tuple(letter_code(mapping.get(code >> 1, code >> 1), (code & 1) + 1) for code in w.codes)
    return Word(codes, w.reduced)


def is_sigma_invariant(family: RelatorFamily, sigma: Perm) -> bool:
    words = set(family.base_words)
    return all(apply_sigma(sigma, w) in words for w in words)


def equivariance_holds(sigma: Perm, tau: Perm, k: int, n_rep: int) -> bool:
    image = apply_sigma(sigma, make_relator(PrefixPattern.of_perm(tau, k), k, n_rep))
    return image == make_relator(PrefixPattern.of_perm(sigma * tau, k), k, n_rep)
