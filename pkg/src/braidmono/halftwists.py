"""Band generators between labeled punctures and their composite clusters.

A :class:`Factor` is a power of a halftwist (or of a documented composite
cluster of halftwists) with an explicit chain of conjugating factors.
Factors compile down to braid words through a puncture-label -> strand
position map.

Conventions (frozen by algebraic calibration; the full-twist product
identity for the shipped factorizations passes with exactly this choice and
fails with the documented alternative, see ``fixtures/calibration.json``):

* ``X^[C1, C2, ...]`` conjugates successively, C1 first, with
  ``X^C = C X C^-1``; the compiled word is ``(Ck...C1) X (Ck...C1)^-1``.
* An unbarred band runs below the puncture axis, a barred (``~``) band
  above.  A band whose arc must vault a regenerated partner is encoded as
  a conjugate of the straight band by the partner halftwist.
"""

from __future__ import annotations

import dataclasses
from typing import Literal, Mapping

from . import braids
from .braids import ArtinWord

BELOW = "below"
ABOVE = "above"

Conjugation = Literal["standard", "reversed"]
STANDARD: Conjugation = "standard"  # X^C = C X C^-1, chain applied first-to-last
REVERSED: Conjugation = "reversed"  # the rejected alternative: X^C = C^-1 X C


@dataclasses.dataclass(frozen=True, order=True)
class Puncture:
    """A puncture label such as 2 or 2' (a regenerated partner)."""

    index: int
    primed: bool = False

    def __str__(self) -> str:
        return f"{self.index}'" if self.primed else str(self.index)

    @property
    def partner(self) -> Puncture:
        return Puncture(self.index, not self.primed)


def pl(index: int, primed: bool = False) -> Puncture:
    return Puncture(index, primed)


@dataclasses.dataclass(frozen=True)
class Atom:
    """A single band between two punctures, below or above the axis."""

    a: Puncture
    b: Puncture
    side: str = BELOW

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"degenerate band at {self.a}")
        if self.side not in (BELOW, ABOVE):
            raise ValueError(f"unknown side {self.side!r}")


@dataclasses.dataclass(frozen=True)
class Composite:
    """A cluster with a doubled endpoint group, e.g. Z{2,3 3'} or Z{1 1',2'}."""

    first: tuple[Puncture, ...]
    second: tuple[Puncture, ...]
    side: str = BELOW

    def __post_init__(self):
        if len(self.first) not in (1, 2) or len(self.second) not in (1, 2):
            raise ValueError("endpoint groups must have one or two labels")
        if len(self.first) == 1 and len(self.second) == 1:
            raise ValueError("use Atom for a plain band")
        for group in (self.first, self.second):
            if len(group) == 2 and (group[0].index != group[1].index or group[0].primed == group[1].primed):
                raise ValueError("a doubled endpoint must pair a label with its prime")


@dataclasses.dataclass(frozen=True)
class FullTwistBase:
    """A full twist of a block of labels (an m-fold intersection point)."""

    labels: tuple[Puncture, ...]

    def __post_init__(self):
        if len(self.labels) < 2:
            raise ValueError("full twist needs at least two labels")


@dataclasses.dataclass(frozen=True)
class Factor:
    """base^power conjugated successively by `conjugators` (first acts first)."""

    base: Atom | Composite | FullTwistBase
    power: int = 1
    conjugators: tuple[Factor, ...] = ()

    def __post_init__(self):
        if self.power == 0:
            raise ValueError("factor power must be nonzero")
        if isinstance(self.base, Composite) and abs(self.power) not in (2, 3):
            raise ValueError("composite clusters exist only for powers 2 and 3")


def conjugate_factor(f: Factor, by: tuple[Factor, ...] | list[Factor]) -> Factor:
    """Append conjugators: X^[Y] applies Y after the existing chain."""
    return dataclasses.replace(f, conjugators=f.conjugators + tuple(by))


def band_word(p: int, q: int, side: str, strands: int) -> ArtinWord:
    """The band generator between strand positions p < q.

    Below-axis: (s_{q-1} ... s_{p+1}) s_p (s_{p+1}^-1 ... s_{q-1}^-1);
    above-axis the intermediate letters are inverted.
    """
    if p > q:
        p, q = q, p
    if p == q:
        raise ValueError("band endpoints must differ")
    if not (1 <= p < q <= strands):
        raise ValueError(f"positions ({p}, {q}) out of range for {strands} strands")
    sign = 1 if side == BELOW else -1
    prefix = [sign * k for k in range(q - 1, p, -1)]
    suffix = [-sign * k for k in range(p + 1, q)]
    return ArtinWord(strands, tuple(prefix + [p] + suffix))


def _atom(a: Puncture, b: Puncture, side: str, power: int, conj: tuple[Factor, ...] = ()) -> Factor:
    return Factor(Atom(a, b, side), power, conj)


def expand_composite(f: Factor) -> list[Factor]:
    """Replace a composite cluster by its defining product of atoms.

    The atoms appear in the cluster's defining order, each carrying its own
    conjugators followed by those inherited from ``f``.  Bands to a doubled
    partner are returned as conjugates of the straight band, which keeps
    every arc explicit.  Only positive cluster powers occur inside
    factorizations; negative powers are inverted at the word level.
    """
    base = f.base
    if not isinstance(base, Composite):
        raise ValueError("expand_composite needs a composite base")
    unit = abs(f.power)
    side = base.side
    inherited = f.conjugators

    def out(items: list[Factor]) -> list[Factor]:
        return [dataclasses.replace(g, conjugators=g.conjugators + inherited) for g in items]

    if len(base.first) == 1 and len(base.second) == 2:
        z = base.first[0]
        j, jp = sorted(base.second)
        pair = _atom(j, jp, side, -1)
        if unit == 2:
            return out([_atom(z, j, side, 2, (pair,)), _atom(z, j, side, 2)])
        x = _atom(z, j, side, 3)
        return out(
            [
                x,
                _atom(z, j, side, 3, (_atom(j, jp, side, 1),)),
                _atom(z, j, side, 3, (_atom(j, jp, side, 2),)),
            ]
        )
    if len(base.first) == 2 and len(base.second) == 1:
        i, ip = sorted(base.first)
        w = base.second[0]
        pair = _atom(i, ip, side, 1)
        if unit == 2:
            return out([_atom(ip, w, side, 2), _atom(ip, w, side, 2, (pair,))])
        return out(_cusp_cluster(_atom(ip, w, side, 3), pair))
    i, ip = sorted(base.first)
    j, jp = sorted(base.second)
    if unit != 2:
        raise ValueError("a doubly-doubled cluster only exists for power 2")
    lift = _atom(i, ip, side, 1)
    return out(
        [
            _atom(ip, j, side, 2),
            _atom(ip, jp, side, 2),
            _atom(ip, j, side, 2, (lift,)),
            _atom(ip, jp, side, 2, (lift,)),
        ]
    )


def _cusp_cluster(x: Factor, pair: Factor) -> list[Factor]:
    """Three cusps from one tangency: [x^[pair^-1], x, x^[pair]]."""
    inv_pair = dataclasses.replace(pair, power=-pair.power)
    return [
        dataclasses.replace(x, conjugators=x.conjugators + (inv_pair,)),
        x,
        dataclasses.replace(x, conjugators=x.conjugators + (pair,)),
    ]


def expand_atoms(f: Factor) -> list[Factor]:
    """Fully expand to atoms with inherited conjugators (full twists stay)."""
    if isinstance(f.base, Composite):
        return expand_composite(f)
    return [f]


def _positions(a: Puncture, b: Puncture, positions: Mapping[Puncture, int]) -> tuple[int, int]:
    try:
        p, q = positions[a], positions[b]
    except KeyError as missing:
        raise KeyError(f"label {missing.args[0]} is not mapped to a strand") from None
    return (p, q) if p < q else (q, p)


def conjugator_braid(
    conjugators: tuple[Factor, ...],
    positions: Mapping[Puncture, int],
    strands: int,
    conjugation: Conjugation = STANDARD,
) -> ArtinWord:
    """The braid G with X^[C1..Ck] = G X G^-1, i.e. G = Ck ... C1."""
    if not conjugators:
        return braids.identity(strands)
    words = [factor_word(c, positions, strands, conjugation) for c in conjugators]
    return braids.compose(*reversed(words))


def factor_word(
    f: Factor,
    positions: Mapping[Puncture, int],
    strands: int,
    conjugation: Conjugation = STANDARD,
) -> ArtinWord:
    """Compile a factor to a braid word under the label map."""
    base = f.base
    if isinstance(base, Atom):
        p, q = _positions(base.a, base.b, positions)
        core = braids.power(band_word(p, q, base.side, strands), f.power)
    elif isinstance(base, FullTwistBase):
        pos = sorted(positions[lab] for lab in base.labels)
        if pos != list(range(pos[0], pos[0] + len(pos))):
            raise ValueError("full twist labels must occupy consecutive strands")
        shift = pos[0] - 1
        block = braids.full_twist(len(pos))
        shifted = ArtinWord(
            strands, tuple((abs(x) + shift) * (1 if x > 0 else -1) for x in block.letters)
        )
        core = braids.power(shifted, f.power)
    else:
        unit = dataclasses.replace(f, power=abs(f.power), conjugators=())
        parts = [factor_word(g, positions, strands, conjugation) for g in expand_composite(unit)]
        core = braids.compose(*parts)
        if f.power < 0:
            core = braids.invert(core)
    if not f.conjugators:
        return core
    g = conjugator_braid(f.conjugators, positions, strands, conjugation)
    if conjugation == STANDARD:
        return braids.compose(g, core, braids.invert(g))
    return braids.compose(braids.invert(g), core, g)


def atom_strand_pair(f: Factor, positions: Mapping[Puncture, int]) -> tuple[int, int]:
    """Endpoint strand positions (p, q) with p < q of an atom factor."""
    if not isinstance(f.base, Atom):
        raise ValueError("not an atom factor")
    return _positions(f.base.a, f.base.b, positions)


def atom_transport_word(
    f: Factor, positions: Mapping[Puncture, int], strands: int
) -> tuple[int, ArtinWord]:
    """Return (p, T) with word(f) = T^-1 s_p^power T for an atom factor.

    The band (s_{q-1}..s_{p+1}) s_p (..)^-1 is itself a conjugate of s_p, so
    T combines the band tail with the factor's conjugator chain.  Fiber
    loops around the atom's endpoints are the transports of x_p, x_{p+1}
    through T.
    """
    base = f.base
    if not isinstance(base, Atom):
        raise ValueError("transport words are defined for atoms only")
    p, q = _positions(base.a, base.b, positions)
    sign = 1 if base.side == BELOW else -1
    tail = ArtinWord(strands, tuple(-sign * k for k in range(p + 1, q)))  # U^-1
    g = conjugator_braid(f.conjugators, positions, strands)
    # word(f) = (g U) s_p^e (g U)^-1, so T = (g U)^-1 = U^-1 g^-1.
    return p, braids.compose(tail, braids.invert(g))
