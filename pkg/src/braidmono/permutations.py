"""Exact permutations of {1..d}, composed left to right."""

from __future__ import annotations

import dataclasses
from typing import Iterable


@dataclasses.dataclass(frozen=True)
class Permutation:
    """A bijection of {1..d}, stored as the tuple of images (1-indexed).

    Products are taken in diagram order: ``(p * q)(i) == q(p(i))``, i.e. p
    acts first.  This matches the braid convention used throughout, where
    the leftmost factor of a word is applied first.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        d = len(self.images)
        if sorted(self.images) != list(range(1, d + 1)):
            raise ValueError(f"not a permutation of 1..{d}: {self.images}")

    @staticmethod
    def identity(d: int) -> Permutation:
        return Permutation(tuple(range(1, d + 1)))

    @staticmethod
    def transposition(d: int, a: int, b: int) -> Permutation:
        if not (1 <= a <= d and 1 <= b <= d and a != b):
            raise ValueError(f"bad transposition ({a} {b}) in degree {d}")
        images = list(range(1, d + 1))
        images[a - 1], images[b - 1] = b, a
        return Permutation(tuple(images))

    @staticmethod
    def from_cycles(d: int, cycles: Iterable[Iterable[int]]) -> Permutation:
        images = list(range(1, d + 1))
        for cycle in cycles:
            cycle = list(cycle)
            for src, dst in zip(cycle, cycle[1:] + cycle[:1]):
                images[src - 1] = dst
        return Permutation(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> Permutation:
        images = [0] * self.degree
        for i, img in enumerate(self.images, start=1):
            images[img - 1] = i
        return Permutation(tuple(images))

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))

    def is_transposition(self) -> bool:
        moved = [i for i, img in enumerate(self.images, start=1) if img != i]
        return len(moved) == 2

    def moved_points(self) -> tuple[int, ...]:
        return tuple(i for i, img in enumerate(self.images, start=1) if img != i)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)
