from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping

from sympy.combinatorics import Cycle, Permutation

from ..errors import ParamsError, PermSyntaxError


@dataclass(frozen=True, order=True)
class Perm:
    """
    Finite-support permutation of the naturals.

    Only moved points are stored, as sorted (point, image) pairs, so equal
    permutations compare and hash equal however they were built. Arithmetic
    goes through the sympy ``Permutation`` on 0..max(support).
    """

    pairs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def identity(cls) -> Perm:
        return cls(())

    @classmethod
    def of(cls, permutation: Permutation) -> Perm:
        return cls(tuple((p, q) for p, q in enumerate(permutation.array_form) if p != q))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> Perm:
        moved = {p: q for p, q in mapping.items() if p != q}
        if any(p < 0 or q < 0 for p, q in moved.items()):
            raise PermSyntaxError("permutations act on naturals only")
        if set(moved) != set(moved.values()):
            raise PermSyntaxError("map is not a bijection of its support")
        return cls(tuple(sorted(moved.items())))

    @classmethod
    def from_cycles(cls, cycles: list[list[int]]) -> Perm:
        points = [point for cycle in cycles for point in cycle]
        if len(points) != len(set(points)):
            repeated = next(p for p in points if points.count(p) > 1)
            raise PermSyntaxError(f"repeated point {repeated} across cycles")
        if any(p < 0 for p in points):
            raise PermSyntaxError("permutations act on naturals only")
        if not points:
            return cls.identity()
        product = Cycle()
        for cycle in cycles:
            product = product(*cycle)
        return cls.of(Permutation(product.list(max(points) + 1)))

    @property
    def degree(self) -> int:
        """Smallest n with the support inside 0..n-1 (at least 1)."""
        return max((p for p, _ in self.pairs), default=0) + 1

    @cached_property
    def permutation(self) -> Permutation:
        return self.as_permutation(self.degree)

    def as_permutation(self, size: int) -> Permutation:
        if size < self.degree:
            raise ParamsError(f"size {size} is below the degree {self.degree} of {self.render()}")
        array = list(range(size))
        for p, q in self.pairs:
            array[p] = q
        return Permutation(array)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.pairs)

    @cached_property
    def _mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self._mapping)

    def __call__(self, point: int) -> int:
        return self._mapping.get(point, point)

    def __mul__(self, other: Perm) -> Perm:
        """Composition: (self * other)(i) = self(other(i))."""
        # sympy multiplies left to right: (a * b)(i) = b(a(i))
        return Perm.of(other.permutation * self.permutation)

    def inverse(self) -> Perm:
        return Perm.of(~self.permutation)

    @property
    def is_identity(self) -> bool:
        return not self.pairs

    def cycles(self) -> Iterator[tuple[int, ...]]:
        """Nontrivial cycles, each led by its smallest point, in order of that point."""
        for cycle in self.permutation.cyclic_form:
            yield tuple(cycle)

    def render(self) -> str:
        if self.is_identity:
            return "id"
        return "".join("(" + " ".join(str(p) for p in cycle) + ")" for cycle in self.cycles())

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, order=True)
class PrefixPattern:
    """The injective tuple (sigma(0), ..., sigma(k-1))."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(self.values))
        if any(v < 0 for v in self.values):
            raise ParamsError(f"prefix entries must be naturals: {self.values}")
        if len(set(self.values)) != len(self.values):
            raise ParamsError(f"non-injective prefix: {self.values}")

    @classmethod
    def of_perm(cls, sigma: Perm, k: int) -> PrefixPattern:
        return cls(tuple(sigma(i) for i in range(k)))

    def __len__(self) -> int:
        return len(self.values)

    def render(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class GroupSpec:
    generators: tuple[Perm, ...] = ()
    closure_depth: int = 0
    source: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.closure_depth < 0:
            raise ParamsError(f"closure depth must be >= 0, got {self.closure_depth}")
