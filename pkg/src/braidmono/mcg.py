"""Lifting a factorization to the mapping class group of the torus.

Branch points and nodes of the branch curve lift to (squares of) Dehn
twists about curves on the elliptic fiber; cusps lie in the kernel of the
lifting map and are skipped (their two loops land on non-commuting
transpositions of the sheets, which is checked).  Twists are recorded by
their first-homology class, acted on through SL(2, Z), and the group of
the covering surface minus its singular points is the cokernel of the
lattice spanned by (twist matrix - identity) columns.
"""

from __future__ import annotations

import dataclasses
import re

from . import braids, halftwists, vankampen
from .factorization import BMF, factor_text, parse_bmf
from .covers import MonodromyMap
from .halftwists import Factor, FullTwistBase
from .snf import AbelianGroup, IntMatrix, in_integer_span, quotient_group
from .words import FreeWord


@dataclasses.dataclass(frozen=True)
class HomologyClass:
    """u*alpha + v*beta in the first homology of the fiber torus."""

    u: int
    v: int

    def intersect(self, other: HomologyClass) -> int:
        return self.u * other.v - self.v * other.u

    def is_primitive(self) -> bool:
        from math import gcd

        return gcd(self.u, self.v) == 1

    def __str__(self) -> str:
        terms = []
        if self.u:
            terms.append({1: "α", -1: "-α"}.get(self.u, f"{self.u}α"))
        if self.v:
            sign = "+" if self.v > 0 and terms else ""
            terms.append(sign + {1: "β", -1: "-β"}.get(self.v, f"{self.v}β"))
        return "".join(terms) if terms else "0"


@dataclasses.dataclass(frozen=True)
class PoweredTwist:
    cls: HomologyClass
    exponent: int


@dataclasses.dataclass(frozen=True)
class MCGFactorization:
    twists: tuple[PoweredTwist, ...]


def dehn_twist_matrix(c: HomologyClass) -> IntMatrix:
    """Matrix of the positive twist about c: g -> g + (c . g) c."""
    if c.u == 0 and c.v == 0:
        raise ValueError("no twist about the zero class")
    img_a = (1 - c.u * c.v, -c.v * c.v)
    img_b = (c.u * c.u, 1 + c.u * c.v)
    return IntMatrix.from_rows([[img_a[0], img_b[0]], [img_a[1], img_b[1]]])


def twist_power_matrix(t: PoweredTwist) -> IntMatrix:
    m = IntMatrix.identity(2)
    base = dehn_twist_matrix(t.cls)
    if t.exponent >= 0:
        for _ in range(t.exponent):
            m = m * base
        return m
    inv = IntMatrix.from_rows(
        [[base.rows[1][1], -base.rows[0][1]], [-base.rows[1][0], base.rows[0][0]]]
    )
    for _ in range(-t.exponent):
        m = m * inv
    return m


def apply_matrix(m: IntMatrix, c: HomologyClass) -> HomologyClass:
    return HomologyClass(
        m.rows[0][0] * c.u + m.rows[0][1] * c.v,
        m.rows[1][0] * c.u + m.rows[1][1] * c.v,
    )


def compose_matrices(f: MCGFactorization, reverse: bool = False) -> IntMatrix:
    """Braid-order composition of a twist sequence.

    Factorization products list the first twist on the left; with the
    row-action bookkeeping calibrated against the shipped fixtures this
    corresponds to multiplying the matrices in written order.  ``reverse``
    gives the opposite (column-action) reading, which is how the eight-twist
    identity is usually displayed.
    """
    out = IntMatrix.identity(2)
    for t in f.twists:
        out = (twist_power_matrix(t) * out) if reverse else (out * twist_power_matrix(t))
    return out


def verify_mcg_identity(f: MCGFactorization, reverse: bool = False) -> bool:
    return compose_matrices(f, reverse).rows == IntMatrix.identity(2).rows


def mcg_cokernel(f: MCGFactorization) -> AbelianGroup:
    """Quotient of the fiber homology by the images of (twist - identity)."""
    relations = []
    for t in f.twists:
        m = twist_power_matrix(t)
        for j in range(2):
            col = (m.rows[0][j] - (1 if j == 0 else 0), m.rows[1][j] - (0 if j == 0 else 1))
            if col != (0, 0):
                relations.append(list(col))
    return quotient_group(relations, 2)


# ---------------------------------------------------------------------------
# Seed data and lifting


@dataclasses.dataclass(frozen=True)
class TwistSeeds:
    """Per-factor lift data: direct classes and conjugate declarations."""

    classes: tuple[tuple[int, HomologyClass], ...]
    conjugates: tuple[tuple[int, int, tuple[Factor, ...]], ...]  # (factor, source, braids)

    def class_of(self, index: int) -> HomologyClass | None:
        for i, c in self.classes:
            if i == index:
                return c
        return None

    def conjugate_of(self, index: int) -> tuple[int, tuple[Factor, ...]] | None:
        for i, src, by in self.conjugates:
            if i == index:
                return src, by
        return None


_SEED_CLASS = re.compile(r"^factor\s+(\d+)\s*->\s*class\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")
_SEED_CONJ = re.compile(r"^factor\s+(\d+)\s*->\s*conjugate-of\s+(\d+)\s+by\s+(.+)$")


def parse_seeds(text: str) -> TwistSeeds:
    """Lines ``factor N -> class (u, v)`` or ``factor N -> conjugate-of M by <factors>``."""
    classes = []
    conjugates = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SEED_CLASS.match(line)
        if m:
            classes.append((int(m.group(1)), HomologyClass(int(m.group(2)), int(m.group(3)))))
            continue
        m = _SEED_CONJ.match(line)
        if m:
            conj_factors = _parse_factor_list(m.group(3))
            conjugates.append((int(m.group(1)), int(m.group(2)), conj_factors))
            continue
        raise ValueError(f"bad seed line: {raw!r}")
    return TwistSeeds(tuple(classes), tuple(conjugates))


def _parse_factor_list(text: str) -> tuple[Factor, ...]:
    """Parse a comma-separated factor list with a synthetic wide label map."""
    header = "strands 12 labels " + ",".join(
        f"{i}{p}" for i in range(1, 7) for p in ("", "'")
    )
    carrier = parse_bmf(header + "\nZ{1,2}^[" + text + "]\n")
    return carrier.factors[0].conjugators


class LiftError(ValueError):
    pass


def lift_factorization(
    b: BMF, m: MonodromyMap, seeds: TwistSeeds
) -> tuple[MCGFactorization, list[str]]:
    """Lift every non-cusp factor to a powered Dehn twist.

    Cusp clusters are dropped after checking that their loop pairs map to
    distinct non-commuting transpositions of the sheets.  A factor without
    a direct seed class must be declared as a conjugate of an already
    lifted factor; the declaration is verified by exact word comparison
    and the class transforms through the conjugators' twist matrices.
    """
    positions = b.labels.positions()
    n = b.strands
    log: list[str] = []
    lifted: dict[int, PoweredTwist] = {}
    lifted_words: list[tuple[braids.ArtinWord, HomologyClass]] = []
    extended = _extended_monodromy(b, m)

    def factor_word_of(f: Factor) -> braids.ArtinWord:
        return halftwists.factor_word(f, positions, n)

    def lift_seeded(index: int, f: Factor, unit: int, cls: HomologyClass, note: str):
        lifted[index] = PoweredTwist(cls, unit)
        base = dataclasses.replace(f, power=f.power // unit)
        lifted_words.append((factor_word_of(base), cls))
        log.append(note)

    pending: list[tuple[int, Factor, int]] = []
    for index, f in enumerate(b.factors, start=1):
        if isinstance(f.base, FullTwistBase):
            raise LiftError(f"factor {index} is a full twist block; regenerate first")
        atoms = halftwists.expand_atoms(f)
        unit = abs(atoms[0].power)
        if unit == 3:
            for atom in atoms:
                _check_cusp_kernel(atom, b, extended, index)
            log.append(f"factor {index}: cusp cluster, lies in the lifting kernel")
            continue
        if unit not in (1, 2):
            raise LiftError(f"factor {index} has power {f.power}; regenerate tangencies first")
        cls = seeds.class_of(index)
        if cls is not None:
            lift_seeded(index, f, unit, cls, f"factor {index}: seeded class {cls}")
        else:
            pending.append((index, f, unit))

    progress = True
    while pending and progress:
        progress = False
        still = []
        for index, f, unit in pending:
            conj = seeds.conjugate_of(index)
            if conj is None:
                raise LiftError(f"factor {index} has no seed class and no conjugate rule")
            src, by = conj
            if src not in lifted:
                still.append((index, f, unit))
                continue
            claimed = halftwists.conjugate_factor(b.factors[src - 1], by)
            if not braids.words_equal(factor_word_of(f), factor_word_of(claimed)):
                raise LiftError(f"factor {index} is not the declared conjugate of factor {src}")
            cls = lifted[src].cls
            for c in by:
                cls = apply_matrix(_conjugator_matrix(c, factor_word_of, lifted_words), cls)
            lift_seeded(index, f, unit, cls, f"factor {index}: conjugate of factor {src}, class {cls}")
            progress = True
        pending = still
    if pending:
        raise LiftError(f"factors {[i for i, *_ in pending]} reference twists that never resolve")
    order = sorted(lifted)
    return MCGFactorization(tuple(lifted[i] for i in order)), log


def _conjugator_matrix(c: Factor, word_of, lifted_words) -> IntMatrix:
    """The twist matrix of a conjugating braid, recognized among lifted twists."""
    halftwist = word_of(dataclasses.replace(c, power=1))
    for word, cls in lifted_words:
        if braids.words_equal(halftwist, word):
            return twist_power_matrix(PoweredTwist(cls, c.power))
        if braids.words_equal(halftwist, braids.invert(word)):
            return twist_power_matrix(PoweredTwist(cls, -c.power))
    raise LiftError(f"conjugator {factor_text(c)} is not a recognized lifted twist")


def _extended_monodromy(b: BMF, m: MonodromyMap) -> dict[int, tuple[int, int]]:
    """Sheet transposition for each strand position (primed follows unprimed)."""
    out = {}
    for lab in b.labels.labels:
        name = "γ" + str(lab.index)
        out[b.labels.position(lab)] = m.transposition(name)
    return out


def _check_cusp_kernel(atom: Factor, b: BMF, extended: dict, index: int) -> None:
    a_loop, b_loop = vankampen.endpoint_loops(atom, b)
    ta = _loop_transposition(a_loop, extended)
    tb = _loop_transposition(b_loop, extended)
    if ta == tb or not (set(ta) & set(tb)):
        raise LiftError(
            f"cusp atom of factor {index} does not map to non-commuting transpositions"
        )


def _loop_transposition(loop: FreeWord, extended: dict) -> tuple[int, int]:
    """A meridian loop is a conjugate of a generator; take its core letter."""
    letters = loop.letters
    core = letters[len(letters) // 2]
    return extended[abs(core)]


def twist_report(f: MCGFactorization) -> list[dict]:
    out = []
    for t in f.twists:
        m = twist_power_matrix(t)
        out.append(
            {
                "class": [t.cls.u, t.cls.v],
                "exponent": t.exponent,
                "matrix": [list(r) for r in m.rows],
            }
        )
    return out


def columns_in_expected_span(f: MCGFactorization) -> bool:
    """Every (twist - identity) column lies in the span of alpha and 2*beta."""
    span = [[1, 0], [0, 2]]
    for t in f.twists:
        m = twist_power_matrix(t)
        for j in range(2):
            col = [m.rows[0][j] - (1 if j == 0 else 0), m.rows[1][j] - (1 if j == 1 else 0)]
            if not in_integer_span(span, col):
                return False
    return True
