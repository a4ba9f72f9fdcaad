"""Braid monodromy factorizations: parsing, validation, and rewriting.

The file grammar (UTF-8, line oriented, ``#`` comments)::

    file        := header factor-line*
    header      := "strands" INT "labels" label ("," label)*
    label       := INT "'"?
    factor      := base ("^" INT)? ("^" "[" factor ("," factor)* "]")*
    base        := "~"? "Z" "{" endpoint "," endpoint "}"   # "~" = above-axis
                 | "FT" "{" label ("," label)+ "}"          # full twist block
    endpoint    := label | label label                      # doubled, e.g. "3 3'"

Parenthesized factors are accepted.  Conjugation binds left:
``X^[A, B]`` is ``(A B)^-1 X (A B)``; powers come before conjugators.
"""

from __future__ import annotations

import dataclasses
import os
import re
from importlib import resources

from . import braids, halftwists
from .braids import ArtinWord
from .halftwists import (
    ABOVE,
    BELOW,
    STANDARD,
    Atom,
    Composite,
    Conjugation,
    Factor,
    FullTwistBase,
    Puncture,
)

FIXTURE_NAMES = ("cayley", "conic", "delta-tilde", "three-lines")
FIXTURE_DIR_ENV = "BRAIDMONO_FIXTURE_DIR"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclasses.dataclass(frozen=True)
class LabelMap:
    """Ordered puncture labels; label k sits on strand k."""

    labels: tuple[Puncture, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")

    @property
    def strands(self) -> int:
        return len(self.labels)

    def positions(self) -> dict[Puncture, int]:
        return {lab: k for k, lab in enumerate(self.labels, start=1)}

    def position(self, label: Puncture) -> int:
        try:
            return self.labels.index(label) + 1
        except ValueError:
            raise KeyError(f"unknown label {label}") from None

    def pair_indices(self) -> list[int]:
        """Indices i such that both i and i' are labels."""
        have = set(self.labels)
        return sorted(
            {lab.index for lab in self.labels}
            & {lab.index for lab in self.labels if Puncture(lab.index, True) in have}
        )


@dataclasses.dataclass(frozen=True)
class BMF:
    """An ordered braid monodromy factorization with its label map."""

    labels: LabelMap
    factors: tuple[Factor, ...]

    @property
    def strands(self) -> int:
        return self.labels.strands


@dataclasses.dataclass(frozen=True)
class Census:
    branch: int = 0
    node: int = 0
    cusp: int = 0
    tangency: int = 0
    total: int = 0


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z]+)|(?P<sym>[{}^\[\](),~'’]))")


class _Tokens:
    def __init__(self, text: str, line: int):
        self.line = line
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip():
                    raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", line, pos + 1)
                break
            if m.group("int") is not None:
                self.items.append(("int", m.group("int"), m.start("int") + 1))
            elif m.group("name") is not None:
                self.items.append(("name", m.group("name"), m.start("name") + 1))
            else:
                sym = "'" if m.group("sym") == "’" else m.group("sym")
                self.items.append(("sym", sym, m.start("sym") + 1))
            pos = m.end()
        self.k = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.items[self.k] if self.k < len(self.items) else None

    def next(self) -> tuple[str, str, int]:
        item = self.peek()
        if item is None:
            raise ParseError("unexpected end of line", self.line, len(self.items) and self.items[-1][2] or 1)
        self.k += 1
        return item

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        item = self.next()
        if item[0] != kind or (value is not None and item[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {item[1]!r}", self.line, item[2])
        return item

    def done(self) -> bool:
        return self.k >= len(self.items)


def _parse_label(tokens: _Tokens) -> Puncture:
    kind, value, col = tokens.expect("int")
    index = int(value)
    if index <= 0:
        raise ParseError(f"label index must be positive, got {value}", tokens.line, col)
    primed = False
    nxt = tokens.peek()
    if nxt is not None and nxt[:2] == ("sym", "'"):
        tokens.next()
        primed = True
    return Puncture(index, primed)


def _parse_endpoint(tokens: _Tokens) -> tuple[Puncture, ...]:
    first = _parse_label(tokens)
    nxt = tokens.peek()
    if nxt is not None and nxt[0] == "int":
        second = _parse_label(tokens)
        if second.index != first.index or second.primed == first.primed:
            raise ParseError(
                f"a doubled endpoint must pair a label with its prime, got {first} {second}",
                tokens.line,
                nxt[2],
            )
        return tuple(sorted((first, second)))
    return (first,)


def _parse_base(tokens: _Tokens) -> Atom | Composite | FullTwistBase:
    side = BELOW
    nxt = tokens.peek()
    if nxt is not None and nxt[:2] == ("sym", "~"):
        tokens.next()
        side = ABOVE
    kind, name, col = tokens.expect("name")
    if name == "Z":
        tokens.expect("sym", "{")
        first = _parse_endpoint(tokens)
        tokens.expect("sym", ",")
        second = _parse_endpoint(tokens)
        tokens.expect("sym", "}")
        if len(first) == 1 and len(second) == 1:
            if first[0] == second[0]:
                raise ParseError(f"band endpoints coincide: {first[0]}", tokens.line, col)
            return Atom(first[0], second[0], side)
        return Composite(first, second, side)
    if name == "FT":
        if side == ABOVE:
            raise ParseError("a full twist block has no above-axis variant", tokens.line, col)
        tokens.expect("sym", "{")
        labels = [_parse_label(tokens)]
        while tokens.peek() is not None and tokens.peek()[:2] == ("sym", ","):
            tokens.next()
            labels.append(_parse_label(tokens))
        tokens.expect("sym", "}")
        if len(labels) < 2:
            raise ParseError("a full twist block needs at least two labels", tokens.line, col)
        return FullTwistBase(tuple(labels))
    raise ParseError(f"expected 'Z' or 'FT', found {name!r}", tokens.line, col)


def _parse_factor(tokens: _Tokens) -> Factor:
    nxt = tokens.peek()
    if nxt is not None and nxt[:2] == ("sym", "("):
        tokens.next()
        inner = _parse_factor(tokens)
        tokens.expect("sym", ")")
        base, pow_, conj = inner.base, inner.power, inner.conjugators
    else:
        base, pow_, conj = _parse_base(tokens), 1, ()
    power_seen = pow_ != 1
    conjugators = list(conj)
    while tokens.peek() is not None and tokens.peek()[:2] == ("sym", "^"):
        tokens.next()
        nxt = tokens.peek()
        if nxt is None:
            raise ParseError("dangling '^'", tokens.line, 1)
        if nxt[0] == "int":
            if power_seen or conjugators:
                raise ParseError("powers must come before conjugators", tokens.line, nxt[2])
            _, value, col = tokens.next()
            pow_ = int(value)
            if pow_ == 0:
                raise ParseError("zero power", tokens.line, col)
            power_seen = True
        elif nxt[:2] == ("sym", "["):
            tokens.next()
            conjugators.append(_parse_factor(tokens))
            while tokens.peek() is not None and tokens.peek()[:2] == ("sym", ","):
                tokens.next()
                conjugators.append(_parse_factor(tokens))
            tokens.expect("sym", "]")
        else:
            raise ParseError(f"expected a power or '[', found {nxt[1]!r}", tokens.line, nxt[2])
    try:
        return Factor(base, pow_, tuple(conjugators))
    except ValueError as err:
        raise ParseError(str(err), tokens.line, 1) from None


def parse_bmf(text: str) -> BMF:
    """Parse a factorization file; labels must cover all factor endpoints."""
    lines = text.splitlines()
    header: LabelMap | None = None
    factors: list[Factor] = []
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        tokens = _Tokens(body, lineno)
        if header is None:
            tokens.expect("name", "strands")
            _, count, col = tokens.expect("int")
            tokens.expect("name", "labels")
            labels = [_parse_label(tokens)]
            while not tokens.done():
                tokens.expect("sym", ",")
                labels.append(_parse_label(tokens))
            if int(count) != len(labels):
                raise ParseError(
                    f"strand count {count} does not match {len(labels)} labels", lineno, col
                )
            header = LabelMap(tuple(labels))
            continue
        factor = _parse_factor(tokens)
        if not tokens.done():
            item = tokens.peek()
            raise ParseError(f"trailing input {item[1]!r}", lineno, item[2])
        factors.append(factor)
    if header is None:
        raise ParseError("missing header line", max(1, len(lines)), 1)
    bmf = BMF(header, tuple(factors))
    _check_labels(bmf)
    return bmf


def _factor_labels(f: Factor) -> set[Puncture]:
    base = f.base
    if isinstance(base, Atom):
        out = {base.a, base.b}
    elif isinstance(base, Composite):
        out = set(base.first) | set(base.second)
    else:
        out = set(base.labels)
    for c in f.conjugators:
        out |= _factor_labels(c)
    return out


def _check_labels(b: BMF) -> None:
    known = set(b.labels.labels)
    for k, f in enumerate(b.factors, start=1):
        unknown = _factor_labels(f) - known
        if unknown:
            names = ", ".join(str(u) for u in sorted(unknown))
            raise ParseError(f"factor {k} uses unmapped labels: {names}", k + 1, 1)


def _endpoint_text(group: tuple[Puncture, ...]) -> str:
    return " ".join(str(p) for p in group)


def factor_text(f: Factor) -> str:
    base = f.base
    if isinstance(base, Atom):
        mark = "~" if base.side == ABOVE else ""
        text = f"{mark}Z{{{base.a},{base.b}}}"
    elif isinstance(base, Composite):
        mark = "~" if base.side == ABOVE else ""
        text = f"{mark}Z{{{_endpoint_text(base.first)},{_endpoint_text(base.second)}}}"
    else:
        text = "FT{" + ",".join(str(p) for p in base.labels) + "}"
    if f.power != 1:
        text += f"^{f.power}"
    if f.conjugators:
        text = f"({text})" if f.power != 1 else text
        text += "^[" + ", ".join(factor_text(c) for c in f.conjugators) + "]"
    return text


def print_bmf(b: BMF) -> str:
    lines = [
        "strands "
        + str(b.strands)
        + " labels "
        + ",".join(str(lab) for lab in b.labels.labels)
    ]
    lines.extend(factor_text(f) for f in b.factors)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Validation and rewriting


def factor_word(b: BMF, f: Factor, conjugation: Conjugation = STANDARD) -> ArtinWord:
    return halftwists.factor_word(f, b.labels.positions(), b.strands, conjugation)


def product_word(b: BMF, conjugation: Conjugation = STANDARD) -> ArtinWord:
    out = braids.identity(b.strands)
    positions = b.labels.positions()
    for f in b.factors:
        out = braids.compose(out, halftwists.factor_word(f, positions, b.strands, conjugation))
    return out


def is_delta_squared(b: BMF, conjugation: Conjugation = STANDARD) -> bool:
    return braids.words_equal(product_word(b, conjugation), braids.full_twist(b.strands))


_KINDS = {1: "branch", 2: "node", 3: "cusp", 4: "tangency"}


def factor_kind(f: Factor) -> str:
    if isinstance(f.base, FullTwistBase):
        return f"{len(f.base.labels)}-fold point"
    unit = abs(f.power)
    if unit not in _KINDS:
        raise ValueError(f"no singularity kind for power {f.power}")
    return _KINDS[unit]


def degree_census(b: BMF) -> Census:
    counts = {"branch": 0, "node": 0, "cusp": 0, "tangency": 0}
    total = 0
    for f in b.factors:
        if isinstance(f.base, FullTwistBase):
            m = len(f.base.labels)
            total += abs(f.power) * m * (m - 1)
            continue
        atoms = halftwists.expand_atoms(f)
        for atom in atoms:
            counts[_KINDS[abs(atom.power)]] += 1
            total += abs(atom.power)
    return Census(total=total, **counts)


def forgetting_degree(b: BMF, index: int) -> int:
    """Signed crossing count of the strands of labels i, i' in the product."""
    p = b.labels.position(Puncture(index, False))
    q = b.labels.position(Puncture(index, True))
    lo, hi = min(p, q), max(p, q)
    return braids.linking_number(product_word(b), lo, hi)


def complete_branch_points(b: BMF) -> BMF:
    """Append Z{i,i'} factors until every pair has forgetting degree two."""
    new_factors = list(b.factors)
    for index in b.labels.pair_indices():
        k = forgetting_degree(b, index)
        for _ in range(max(0, 2 - k)):
            new_factors.append(Factor(Atom(Puncture(index), Puncture(index, True), BELOW)))
    return BMF(b.labels, tuple(new_factors))


def apply_regeneration(f: Factor, rule: int, doubling: str) -> list[Factor]:
    """Rewrite one factor by a line-doubling regeneration rule.

    rule 1 (power +-1) splits a branch point in two; rule 2 (power +-2)
    splits a node into two or four; rule 3 (power +-4) turns a tangency
    into three cusps.  ``doubling`` is "first", "second" or "both" (rule 1
    uses both partners; rule 3 doubles one endpoint).  Conjugators are
    inherited unchanged.
    """
    if not isinstance(f.base, Atom):
        raise ValueError("regeneration rules apply to single bands")
    if doubling not in ("first", "second", "both"):
        raise ValueError(f"unknown doubling {doubling!r}")
    a, b_ = f.base.a, f.base.b
    side = f.base.side
    sign = 1 if f.power > 0 else -1
    unit = abs(f.power)
    conj = f.conjugators
    flip = ABOVE if side == BELOW else BELOW

    def atom(x: Puncture, y: Puncture, power: int, own: tuple[Factor, ...] = (), s: str = side) -> Factor:
        return Factor(Atom(x, y, s), power, own + conj)

    if rule == 1:
        if unit != 1:
            raise ValueError("rule 1 needs power +-1")
        return [atom(a.partner, b_, sign), atom(a, b_.partner, sign, s=flip)]
    if rule == 2:
        if unit != 2:
            raise ValueError("rule 2 needs power +-2")
        if doubling == "first":
            return [atom(a.partner, b_, 2 * sign), atom(a, b_, 2 * sign)]
        if doubling == "second":
            return [atom(a, b_.partner, 2 * sign), atom(a, b_, 2 * sign)]
        return [
            atom(a.partner, b_.partner, 2 * sign),
            atom(a, b_.partner, 2 * sign),
            atom(a.partner, b_, 2 * sign),
            atom(a, b_, 2 * sign),
        ]
    if rule == 3:
        if unit != 4:
            raise ValueError("rule 3 needs power +-4")
        if doubling == "both":
            raise ValueError("rule 3 doubles one endpoint")
        pair = (
            Factor(Atom(b_, b_.partner, side))
            if doubling == "second"
            else Factor(Atom(a, a.partner, side))
        )
        inv_pair = dataclasses.replace(pair, power=-1)
        return [
            atom(a, b_, 3 * sign, (inv_pair,)),
            atom(a, b_, 3 * sign),
            atom(a, b_, 3 * sign, (pair,)),
        ]
    raise ValueError(f"unknown rule {rule}")


# ---------------------------------------------------------------------------
# Fixtures


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    override = os.environ.get(FIXTURE_DIR_ENV)
    if override:
        with open(os.path.join(override, f"{name}.bmf"), encoding="utf-8") as fh:
            return fh.read()
    return resources.files("braidmono.fixtures").joinpath(f"{name}.bmf").read_text("utf-8")


def builtin_fixture(name: str) -> BMF:
    return parse_bmf(fixture_text(name))
