"""Freely reduced words in a finitely generated free group.

Letters are nonzero integers: ``k`` is the k-th generator, ``-k`` its
inverse.  Every word is stored freely reduced; concatenation followed by
reduction is the group operation.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(letters: tuple[int, ...]) -> tuple[int, ...]:
    w = free_reduce(letters)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


@dataclasses.dataclass(frozen=True)
class FreeWord:
    """A freely reduced word in the free group of the given rank."""

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self):
        reduced = free_reduce(self.letters)
        if reduced != tuple(self.letters):
            object.__setattr__(self, "letters", reduced)
        for x in self.letters:
            if not (1 <= abs(x) <= self.rank):
                raise ValueError(f"letter {x} out of range for rank {self.rank}")

    @staticmethod
    def identity(rank: int) -> FreeWord:
        return FreeWord(rank, ())

    @staticmethod
    def generator(rank: int, k: int) -> FreeWord:
        return FreeWord(rank, (k,))

    def __mul__(self, other: FreeWord) -> FreeWord:
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return FreeWord(self.rank, free_reduce(self.letters + other.letters))

    def inverse(self) -> FreeWord:
        return FreeWord(self.rank, tuple(-x for x in reversed(self.letters)))

    def conjugated_by(self, g: FreeWord) -> FreeWord:
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def cyclically_reduced(self) -> FreeWord:
        return FreeWord(self.rank, cyclic_reduce(self.letters))

    def exponent_sums(self) -> tuple[int, ...]:
        sums = [0] * self.rank
        for x in self.letters:
            sums[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(sums)

    def substitute(self, images: dict[int, FreeWord], rank: int) -> FreeWord:
        """Rewrite under generator -> word assignments.

        Generators absent from ``images`` map to themselves (and must exist
        in the target rank).
        """
        out: list[int] = []
        for x in self.letters:
            k = abs(x)
            img = images.get(k)
            if img is None:
                out.append(x if x > 0 else x)
                continue
            out.extend(img.letters if x > 0 else tuple(-y for y in reversed(img.letters)))
        return FreeWord(rank, free_reduce(tuple(out)))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


def triple_relation(a: FreeWord, b: FreeWord) -> FreeWord:
    """<a, b> = a b a b^-1 a^-1 b^-1 (the cusp relator shape)."""
    return a * b * a * b.inverse() * a.inverse() * b.inverse()
