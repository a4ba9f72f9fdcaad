"""Exact arithmetic in the braid group B_n on Artin generator words.

A braid is an :class:`ArtinWord`: a sequence of signed generator indices on
``n`` strands, with the leftmost letter applied first.  The word problem is
decided through the left Garside normal form ``Delta^p x_1 ... x_k`` whose
canonical factors are permutation braids; the faithful action on the free
group (:func:`artin_image`) provides an independent oracle.

All integer arithmetic is exact (Python ints); values are immutable and all
operations are pure functions, so everything here is safe for concurrent
read-only use.
"""

from __future__ import annotations

import dataclasses
import functools
from typing import Iterable

from .permutations import Permutation
from .words import FreeWord

_MAX_TABLE_STRANDS = 9


@dataclasses.dataclass(frozen=True)
class ArtinWord:
    """A braid word: ``letters[j] == k`` means sigma_k, ``-k`` its inverse."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strand count must be >= 1")
        object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if not (1 <= abs(x) <= self.strands - 1):
                raise ValueError(f"generator index {x} out of range for B_{self.strands}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in self.letters)


def word(strands: int, letters: Iterable[int] = ()) -> ArtinWord:
    return ArtinWord(strands, tuple(letters))


def identity(strands: int) -> ArtinWord:
    return ArtinWord(strands, ())


def compose(*factors: ArtinWord) -> ArtinWord:
    """Concatenate braids, leftmost applied first, and freely reduce."""
    if not factors:
        raise ValueError("compose needs at least one word")
    n = factors[0].strands
    for f in factors:
        if f.strands != n:
            raise ValueError(f"strand count mismatch: {f.strands} != {n}")
    letters: list[int] = []
    for f in factors:
        for x in f.letters:
            if letters and letters[-1] == -x:
                letters.pop()
            else:
                letters.append(x)
    return ArtinWord(n, tuple(letters))


def invert(a: ArtinWord) -> ArtinWord:
    return ArtinWord(a.strands, tuple(-x for x in reversed(a.letters)))


def power(a: ArtinWord, k: int) -> ArtinWord:
    base = a if k >= 0 else invert(a)
    out = identity(a.strands)
    for _ in range(abs(k)):
        out = compose(out, base)
    return out


def permutation_of(a: ArtinWord) -> Permutation:
    """The image of a braid in Sym_n (sigma_k -> (k, k+1))."""
    images = list(range(1, a.strands + 1))
    for x in a.letters:
        k = abs(x)
        images[k - 1], images[k] = images[k], images[k - 1]
    # images currently gives, at each position, the strand sitting there;
    # invert to map starting position -> final position.
    final = [0] * a.strands
    for pos, strand in enumerate(images, start=1):
        final[strand - 1] = pos
    return Permutation(tuple(final))


def exponent_sum(a: ArtinWord) -> int:
    return sum(1 if x > 0 else -1 for x in a.letters)


def linking_number(a: ArtinWord, p: int, q: int) -> int:
    """Signed count of crossings involving exactly the strands starting at p, q."""
    n = a.strands
    if not (1 <= p < q <= n):
        raise ValueError(f"need 1 <= p < q <= {n}, got ({p}, {q})")
    at_position = list(range(1, n + 1))
    total = 0
    for x in a.letters:
        k = abs(x)
        s, t = at_position[k - 1], at_position[k]
        if {s, t} == {p, q}:
            total += 1 if x > 0 else -1
        at_position[k - 1], at_position[k] = t, s
    return total


def half_twist_delta(n: int) -> ArtinWord:
    """Delta = (s1)(s2 s1)...(s_{n-1} ... s1), the positive half twist."""
    letters = []
    for m in range(1, n):
        letters.extend(range(m, 0, -1))
    return ArtinWord(n, tuple(letters))


def full_twist(n: int) -> ArtinWord:
    """Delta^2, the generator of the center of B_n."""
    return compose(half_twist_delta(n), half_twist_delta(n))


# ---------------------------------------------------------------------------
# Garside normal form


@dataclasses.dataclass(frozen=True)
class GarsideNormalForm:
    """Left normal form Delta^infimum * factors, factors left-weighted."""

    strands: int
    infimum: int
    factors: tuple[Permutation, ...]

    def canonical_length(self) -> int:
        return len(self.factors)


class _GarsideTable:
    """Per-n lookup tables over permutation braids (interned as ints)."""

    def __init__(self, n: int):
        if n > _MAX_TABLE_STRANDS:
            raise ValueError(f"normal form tables support at most {_MAX_TABLE_STRANDS} strands")
        self.n = n
        import itertools

        self.perms: list[tuple[int, ...]] = [tuple(p) for p in itertools.permutations(range(1, n + 1))]
        self.index: dict[tuple[int, ...], int] = {p: i for i, p in enumerate(self.perms)}
        self.id = self.index[tuple(range(1, n + 1))]
        self.delta = self.index[tuple(range(n, 0, -1))]
        self.gen = [self.index[self._swap_values(self.perms[self.id], k)] for k in range(1, n)]
        # Delta * sigma_k^-1 as a permutation braid (used to rewrite inverse letters).
        w0 = self.perms[self.delta]
        self.neg = [self.index[self._swap_values(w0, k)] for k in range(1, n)]
        self.mul_right = [[self.index[self._swap_values(p, k)] for k in range(1, n)] for p in self.perms]
        self.mul_left = [[self.index[self._swap_positions(p, k)] for k in range(1, n)] for p in self.perms]
        self.start_mask = [self._descents(p) for p in self.perms]
        self.finish_mask = [self._descents(self._inverse(p)) for p in self.perms]
        self.tau = [self.index[tuple(n + 1 - p[n - i - 1] for i in range(n))] for p in self.perms]
        self._pair_cache: dict[tuple[int, int], tuple[int, int]] = {}

    @staticmethod
    def _swap_values(p: tuple[int, ...], k: int) -> tuple[int, ...]:
        swap = {k: k + 1, k + 1: k}
        return tuple(swap.get(v, v) for v in p)

    @staticmethod
    def _swap_positions(p: tuple[int, ...], k: int) -> tuple[int, ...]:
        q = list(p)
        q[k - 1], q[k] = q[k], q[k - 1]
        return tuple(q)

    @staticmethod
    def _inverse(p: tuple[int, ...]) -> tuple[int, ...]:
        inv = [0] * len(p)
        for i, v in enumerate(p, start=1):
            inv[v - 1] = i
        return tuple(inv)

    @staticmethod
    def _descents(p: tuple[int, ...]) -> int:
        mask = 0
        for k in range(len(p) - 1):
            if p[k] > p[k + 1]:
                mask |= 1 << k
        return mask

    def renorm(self, x: int, y: int) -> tuple[int, int]:
        """Make the adjacent pair (x, y) left-weighted."""
        cached = self._pair_cache.get((x, y))
        if cached is not None:
            return cached
        x0, y0 = x, y
        while True:
            m = self.start_mask[y] & ~self.finish_mask[x]
            if m == 0:
                break
            k = (m & -m).bit_length() - 1  # lowest movable letter, deterministic
            x = self.mul_right[x][k]
            y = self.mul_left[y][k]
        self._pair_cache[(x0, y0)] = (x, y)
        return x, y

    def normalise(self, factors: list[int]) -> tuple[int, tuple[int, ...]]:
        factors = [f for f in factors if f != self.id]
        changed = True
        while changed:
            changed = False
            for i in range(len(factors) - 1):
                x, y = factors[i], factors[i + 1]
                nx, ny = self.renorm(x, y)
                if (nx, ny) != (x, y):
                    factors[i], factors[i + 1] = nx, ny
                    changed = True
        lo, hi = 0, len(factors)
        power = 0
        while lo < hi and factors[lo] == self.delta:
            power += 1
            lo += 1
        while lo < hi and factors[hi - 1] == self.id:
            hi -= 1
        return power, tuple(factors[lo:hi])


@functools.lru_cache(maxsize=None)
def _table(n: int) -> _GarsideTable:
    return _GarsideTable(n)


@functools.lru_cache(maxsize=200_000)
def _normal_form_key(n: int, letters: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    if n == 1:
        return 0, ()
    table = _table(n)
    factors: list[int] = []
    delta_pows: list[int] = []
    for x in letters:
        if x > 0:
            factors.append(table.gen[x - 1])
            delta_pows.append(0)
        else:
            factors.append(table.neg[-x - 1])
            delta_pows.append(-1)
    # Commute the Delta^-1 contributions to the front through tau.
    p = 0
    for i in range(len(factors) - 1, -1, -1):
        if p % 2:
            factors[i] = table.tau[factors[i]]
        p += delta_pows[i]
    inf, nf = table.normalise(factors)
    return p + inf, nf


def garside_normal_form(a: ArtinWord) -> GarsideNormalForm:
    """Left-weighted normal form; two words are equal in B_n iff these agree."""
    inf, factor_ids = _normal_form_key(a.strands, a.letters)
    if a.strands == 1:
        return GarsideNormalForm(1, 0, ())
    table = _table(a.strands)
    return GarsideNormalForm(a.strands, inf, tuple(Permutation(table.perms[f]) for f in factor_ids))


def words_equal(a: ArtinWord, b: ArtinWord) -> bool:
    if a.strands != b.strands:
        raise ValueError("strand count mismatch")
    return _normal_form_key(a.strands, a.letters) == _normal_form_key(b.strands, b.letters)


def normal_form_word(nf: GarsideNormalForm) -> ArtinWord:
    """Reconstruct an Artin word from a normal form (for round-trip checks)."""
    n = nf.strands
    letters: list[int] = []
    delta = half_twist_delta(n).letters
    if nf.infimum >= 0:
        letters.extend(delta * nf.infimum)
    else:
        letters.extend(tuple(-x for x in reversed(delta)) * (-nf.infimum))
    for factor in nf.factors:
        letters.extend(_permutation_braid_word(factor))
    return ArtinWord(n, tuple(letters))


def _permutation_braid_word(p: Permutation) -> tuple[int, ...]:
    """A positive word for the permutation braid of p (bubble-sort letters)."""
    images = list(p.images)
    out = []
    changed = True
    while changed:
        changed = False
        for k in range(len(images) - 1):
            if images[k] > images[k + 1]:
                images[k], images[k + 1] = images[k + 1], images[k]
                out.append(k + 1)
                changed = True
    return tuple(out)


# ---------------------------------------------------------------------------
# Action on the free group

_STANDARD = "standard"
_MIRROR = "mirror"


def _letter_substitution(i: int, positive: bool, flavor: str) -> dict[int, tuple[int, ...]]:
    j = i + 1
    if flavor == _STANDARD:
        if positive:
            return {i: (i, j, -i), j: (i,)}
        return {i: (j,), j: (-j, i, j)}
    if positive:
        return {i: (j,), j: (j, i, -j)}
    return {i: (-i, j, i), j: (i,)}


def _apply_action(braid: ArtinWord, target: tuple[int, ...], flavor: str) -> tuple[int, ...]:
    current = target
    for x in braid.letters:
        sub = _letter_substitution(abs(x), x > 0, flavor)
        out: list[int] = []
        for y in current:
            piece = sub.get(abs(y))
            if piece is None:
                out.append(y)
                continue
            if y < 0:
                piece = tuple(-z for z in reversed(piece))
            for z in piece:
                if out and out[-1] == -z:
                    out.pop()
                else:
                    out.append(z)
        current = tuple(out)
    return current


def artin_image(a: ArtinWord, k: int) -> FreeWord:
    """Image of the free generator x_k under the braid automorphism of a.

    Convention: sigma_i maps x_i -> x_i x_{i+1} x_i^-1 and x_{i+1} -> x_i,
    with the leftmost letter of the word acting first.  The action is
    faithful, so comparing images of all generators decides equality.
    """
    if not (1 <= k <= a.strands):
        raise ValueError(f"generator index {k} out of range")
    return FreeWord(a.strands, _apply_action(a, (k,), _STANDARD))


def meridian_image(a: ArtinWord, w: FreeWord) -> FreeWord:
    """Transport of a fiber loop under a braid, in the meridian convention.

    sigma_i maps x_i -> x_i^-1 x_{i+1} x_i and x_{i+1} -> x_i, with the
    leftmost letter acting first; the boundary word x_n ... x_1 is
    preserved.  This is the transport that reads curve-complement group
    relations off a factorization (calibrated against the shipped
    fixtures; see fixtures/calibration.json).
    """
    if w.rank != a.strands:
        raise ValueError("rank mismatch")
    flipped = ArtinWord(a.strands, tuple(-x for x in a.letters))
    return FreeWord(a.strands, _apply_action(flipped, w.letters, _MIRROR))


def words_equal_by_action(a: ArtinWord, b: ArtinWord) -> bool:
    """Decide equality through the faithful free-group action (test oracle)."""
    if a.strands != b.strands:
        raise ValueError("strand count mismatch")
    return all(
        _apply_action(a, (k,), _STANDARD) == _apply_action(b, (k,), _STANDARD)
        for k in range(1, a.strands + 1)
    )
