"""Curve-complement group presentations read off a factorization.

Every factor of a complete factorization imposes relations on the free
group generated by one loop per puncture: an identification for a branch
point, a commutator for a node, and the length-six triple relation for a
cusp.  The loops entering a relation are the transports of the standard
generators through the factor's conjugating braid.

The module also carries a small Tietze-move engine (with an auditable move
log) and abelianization via Smith normal form.
"""

from __future__ import annotations

import dataclasses
import heapq
from typing import Iterable, Sequence

from . import braids, halftwists
from .factorization import BMF
from .halftwists import Factor, FullTwistBase
from .snf import AbelianGroup, IntMatrix, smith_normal_form
from .words import FreeWord, commutator, cyclic_reduce, free_reduce, triple_relation


@dataclasses.dataclass(frozen=True)
class Presentation:
    """Finite presentation: generator names plus relators over them."""

    generators: tuple[str, ...]
    relators: tuple[FreeWord, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        for r in self.relators:
            if r.rank != len(self.generators):
                raise ValueError("relator rank does not match generator count")

    def rank(self) -> int:
        return len(self.generators)


def _word_key(w: tuple[int, ...]) -> tuple:
    return tuple((abs(x), 0 if x > 0 else 1) for x in w)


def canonical_relator(w: FreeWord | tuple[int, ...]) -> tuple[int, ...]:
    """Cyclic reduction, then the least rotation of the word or its inverse.

    The order prefers low generator indices and positive letters, so e.g.
    a squared generator normalizes to (k, k) rather than (-k, -k).
    """
    letters = w.letters if isinstance(w, FreeWord) else tuple(w)
    letters = cyclic_reduce(letters)
    if not letters:
        return ()
    best = None
    best_key = None
    for v in (letters, tuple(-x for x in reversed(letters))):
        for r in range(len(v)):
            cand = v[r:] + v[:r]
            key = _word_key(cand)
            if best_key is None or key < best_key:
                best, best_key = cand, key
    return best


def relator_set(p: Presentation) -> set[tuple[int, ...]]:
    return {canonical_relator(r) for r in p.relators if canonical_relator(r)}


def presentations_match(p: Presentation, q: Presentation) -> bool:
    """Equality of generator tuples and of normalized relator sets."""
    return p.generators == q.generators and relator_set(p) == relator_set(q)


# ---------------------------------------------------------------------------
# Relations from factors


def generator_names(b: BMF) -> tuple[str, ...]:
    return tuple("γ" + str(lab) for lab in b.labels.labels)


def endpoint_loops(f: Factor, b: BMF) -> tuple[FreeWord, FreeWord]:
    """The two fiber loops tied by an atom: transports of x_p, x_{p+1}."""
    n = b.strands
    p, transport = halftwists.atom_transport_word(f, b.labels.positions(), n)
    a = braids.meridian_image(transport, FreeWord(n, (p,)))
    bb = braids.meridian_image(transport, FreeWord(n, (p + 1,)))
    return a, bb


def relation_from_factor(f: Factor, b: BMF) -> list[FreeWord]:
    """Relators imposed by one factor: one per atom of its expansion."""
    if isinstance(f.base, FullTwistBase):
        raise ValueError("full-twist factors must be regenerated before extracting relations")
    out = []
    for atom in halftwists.expand_atoms(f):
        a, bb = endpoint_loops(atom, b)
        e = abs(atom.power)
        if e == 1:
            out.append(a * bb.inverse())
        elif e == 2:
            out.append(commutator(a, bb))
        elif e == 3:
            out.append(triple_relation(a, bb))
        else:
            raise ValueError("tangencies impose no van Kampen relation; regenerate first")
    return out


def presentation_affine(b: BMF) -> Presentation:
    """One generator per puncture, relators from every factor."""
    relators = []
    for f in b.factors:
        relators.extend(relation_from_factor(f, b))
    return Presentation(generator_names(b), tuple(relators))


def presentation_projective(p: Presentation, fiber_order: Sequence[str]) -> Presentation:
    """Adjoin the boundary relator: the product in descending fiber order."""
    if sorted(fiber_order) != sorted(p.generators):
        raise ValueError("fiber order must list every generator exactly once")
    index = {g: k + 1 for k, g in enumerate(p.generators)}
    letters = tuple(index[g] for g in reversed(list(fiber_order)))
    return Presentation(p.generators, p.relators + (FreeWord(p.rank(), letters),))


# ---------------------------------------------------------------------------
# Tietze simplification


@dataclasses.dataclass(frozen=True)
class TietzeMove:
    kind: str
    detail: str
    result: Presentation


def _dedupe(relators: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for r in relators:
        c = canonical_relator(r)
        if c and c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _substitute(word: tuple[int, ...], gen: int, image: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    inv_image = tuple(-x for x in reversed(image))
    for x in word:
        piece = image if x == gen else inv_image if x == -gen else (x,)
        for z in piece:
            if out and out[-1] == -z:
                out.pop()
            else:
                out.append(z)
    return tuple(out)


def _drop_generator(
    generators: tuple[str, ...], relators: list[tuple[int, ...]], gen: int
) -> tuple[tuple[str, ...], list[tuple[int, ...]]]:
    """Remove generator index `gen` (1-based); relators must not mention it."""
    def renumber(x: int) -> int:
        k = abs(x)
        k2 = k - 1 if k > gen else k
        return k2 if x > 0 else -k2

    new_gens = tuple(g for i, g in enumerate(generators, start=1) if i != gen)
    new_rel = [tuple(renumber(x) for x in r) for r in relators]
    return new_gens, new_rel


def _single_occurrence(r: tuple[int, ...], gen: int) -> int | None:
    """Position of the unique occurrence of +-gen in r, else None."""
    hits = [i for i, x in enumerate(r) if abs(x) == gen]
    return hits[0] if len(hits) == 1 else None


def _multipliers(others: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    out = []
    for s in others:
        s = canonical_relator(s)
        if not s:
            continue
        for v in (s, tuple(-x for x in reversed(s))):
            for m in range(len(v)):
                out.append(v[m:] + v[:m])
    return out


def _search_canon(w: tuple[int, ...]) -> tuple[int, ...]:
    """Cyclic-reduced least rotation under plain tuple order (search order)."""
    w = cyclic_reduce(w)
    if not w:
        return ()
    return min(v[r:] + v[:r] for v in (w, tuple(-x for x in reversed(w))) for r in range(len(v)))


def _single_step(target: tuple[int, ...], others: list[tuple[int, ...]]) -> tuple[int, ...]:
    """The best single multiplication by a conjugate of another relator.

    Returns the least result in the search order; the input itself if
    nothing improves on it.  One such multiplication is a sound Tietze
    replacement.
    """
    base = _search_canon(target)
    best = base
    mults = _multipliers(others)
    for k in range(len(base)):
        rot = base[k:] + base[:k]
        for mu in mults:
            cand = _search_canon(free_reduce(rot + mu))
            if (len(cand), cand) < (len(best), best):
                best = cand
    return best


def _exponent_vector(w: tuple[int, ...], rank: int) -> list[int]:
    out = [0] * rank
    for x in w:
        out[abs(x) - 1] += 1 if x > 0 else -1
    return out


def _trivializable(
    target: tuple[int, ...],
    others: list[tuple[int, ...]],
    max_states: int = 150,
    slack: int = 4,
    rank: int | None = None,
) -> bool:
    """Bounded search for a product of conjugates of `others` equal to target.

    Success certifies that `target` lies in the normal closure of the other
    relators; failure only means the bounded search did not find it.
    """
    start = canonical_relator(target)
    if not start:
        return True
    if rank is not None:
        from .snf import in_integer_span

        if not in_integer_span(
            [_exponent_vector(o, rank) for o in others], _exponent_vector(start, rank)
        ):
            return False
    cap = len(start) + slack
    mults = _multipliers(others)
    seen = {start}
    frontier: list[tuple[int, tuple[int, ...]]] = [(len(start), start)]
    rounds = 0
    while frontier and rounds < max_states:
        _, w = heapq.heappop(frontier)
        rounds += 1
        for k in range(len(w)):
            rot = w[k:] + w[:k]
            for mu in mults:
                cand = canonical_relator(free_reduce(rot + mu))
                if not cand:
                    return True
                if cand in seen or len(cand) > cap:
                    continue
                seen.add(cand)
                heapq.heappush(frontier, (len(cand), cand))
    return False


@dataclasses.dataclass(frozen=True)
class SimplifyPolicy:
    """Which Tietze moves to run, in the fixed deterministic order."""

    eliminate_primed: bool = True
    eliminate_all: bool = False
    shorten: bool = True
    drop_redundant: bool = False


def tietze_simplify(
    p: Presentation, policy: SimplifyPolicy = SimplifyPolicy()
) -> tuple[Presentation, list[TietzeMove]]:
    """Simplify with sound moves only; returns the move log for auditing."""
    log: list[TietzeMove] = []
    gens = p.generators
    relators = _dedupe(r.letters for r in p.relators)

    def snapshot() -> Presentation:
        return Presentation(gens, tuple(FreeWord(len(gens), r) for r in relators))

    def record(kind: str, detail: str):
        log.append(TietzeMove(kind, detail, snapshot()))

    record("normalize", "free/cyclic reduction and duplicate removal")

    def eliminate(candidates: list[int]) -> bool:
        nonlocal gens, relators
        for gen in candidates:
            options = []
            for idx, r in enumerate(relators):
                pos = _single_occurrence(r, gen)
                if pos is not None:
                    options.append((len(r), idx, pos))
            if not options:
                continue
            _, idx, pos = min(options)
            r = relators[idx]
            rot = r[pos:] + r[:pos]
            rest_word = rot[1:]
            # gen * v = 1 gives gen := v^-1; gen^-1 * v = 1 gives gen := v.
            image = tuple(-x for x in reversed(rest_word)) if rot[0] > 0 else rest_word
            name = gens[gen - 1]
            rest = [
                _substitute(w, gen, image) for i, w in enumerate(relators) if i != idx
            ]
            gens, relators = _drop_generator(gens, rest, gen)
            relators = _dedupe(relators)
            record("eliminate", f"{name} := inverse word of the remaining relator part")
            return True
        return False

    if policy.eliminate_primed:
        changed = True
        while changed:
            primed = [
                i + 1
                for i, g in enumerate(gens)
                if g.endswith("'") or g.endswith("’")
            ]
            changed = eliminate(sorted(primed, key=lambda i: gens[i - 1]))

    if policy.eliminate_all:
        changed = True
        while changed:
            changed = eliminate(list(range(1, len(gens) + 1)))

    if policy.shorten:
        # Work on the longest relator only, one sound replacement at a time,
        # until the longest is stable.  This conservative schedule is what
        # turns the long branch-point relator into its short commutator form
        # without rewriting relators that are already in final shape.
        while relators:
            order = sorted(range(len(relators)), key=lambda i: (-len(relators[i]), relators[i]))
            idx = order[0]
            others = [r for i, r in enumerate(relators) if i != idx]
            current = _search_canon(relators[idx])
            better = _single_step(current, others)
            if (len(better), better) >= (len(current), current):
                break
            old = relators[idx]
            if better == ():
                relators = others
                record("delete", f"relator of length {len(old)} is a consequence")
            else:
                relators[idx] = canonical_relator(better)
                relators = _dedupe(relators)
                record("shorten", f"relator length {len(old)} -> {len(better)}")

    if policy.drop_redundant:
        # Deleting a relator can only shrink what the rest generate, so a
        # failed redundancy check stays failed and is cached.
        not_redundant: set[tuple[int, ...]] = set()
        dropped = True
        while dropped:
            dropped = False
            for idx in sorted(range(len(relators)), key=lambda i: (-len(relators[i]), relators[i])):
                if relators[idx] in not_redundant:
                    continue
                others = [r for i, r in enumerate(relators) if i != idx]
                if _trivializable(relators[idx], others, rank=len(gens)):
                    old = relators[idx]
                    relators = others
                    record("delete", f"redundant relator of length {len(old)} dropped")
                    dropped = True
                    break
                not_redundant.add(relators[idx])

    return snapshot(), log


# ---------------------------------------------------------------------------
# Abelianization


def exponent_matrix(p: Presentation) -> IntMatrix:
    return IntMatrix.from_rows([list(r.exponent_sums()) for r in p.relators])


def abelianization(p: Presentation) -> AbelianGroup:
    if not p.relators:
        return AbelianGroup((), p.rank())
    snf = smith_normal_form(exponent_matrix(p))
    nonzero = [d for d in snf.factors if d != 0]
    return AbelianGroup(tuple(d for d in nonzero if d > 1), p.rank() - len(nonzero))


# ---------------------------------------------------------------------------
# Text formats


def presentation_text(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generators)]
    for r in p.relators:
        parts = []
        for x in r.letters:
            g = p.generators[abs(x) - 1]
            parts.append(g if x > 0 else f"{g}^-1")
        lines.append("rel: " + " ".join(parts) if parts else "rel: 1")
    return "\n".join(lines) + "\n"


def presentation_dump(p: Presentation) -> dict:
    return {
        "generators": list(p.generators),
        "relators": [list(r.letters) for r in p.relators],
    }
