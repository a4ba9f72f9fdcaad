"""Subgroup presentations of curve-complement groups via coset rewriting.

A monodromy map sending every generator to a transposition determines a
graph with one vertex per sheet and one edge per generator.  Chains in a
maximal subtree index a Schreier transversal of the point stabilizer; the
standard Reidemeister-Schreier rewriting then presents the subgroup, and
quotienting by the loops around the preimage components of the curve gives
the group of the covering surface minus its singular points.
"""

from __future__ import annotations

import dataclasses

from .permutations import Permutation
from .vankampen import Presentation, SimplifyPolicy, TietzeMove, tietze_simplify
from .words import FreeWord, free_reduce


@dataclasses.dataclass(frozen=True)
class MonodromyMap:
    """Generator name -> transposition (h, k) of the sheets 1..degree."""

    degree: int
    images: tuple[tuple[str, tuple[int, int]], ...]

    def __post_init__(self):
        for name, (h, k) in self.images:
            if not (1 <= h <= self.degree and 1 <= k <= self.degree and h != k):
                raise ValueError(f"{name} does not map to a transposition: ({h}, {k})")

    def transposition(self, name: str) -> tuple[int, int]:
        for g, pair in self.images:
            if g == name:
                return pair
        raise KeyError(f"no image for generator {name}")

    def permutation(self, name: str) -> Permutation:
        h, k = self.transposition(name)
        return Permutation.transposition(self.degree, h, k)

    def word_permutation(self, p: Presentation, w: FreeWord) -> Permutation:
        out = Permutation.identity(self.degree)
        for x in w.letters:
            perm = self.permutation(p.generators[abs(x) - 1])
            if x < 0:
                perm = perm.inverse()
            out = out * perm
        return out

    def kills(self, p: Presentation) -> list[FreeWord]:
        """Relators NOT killed by the induced map (empty when valid)."""
        return [r for r in p.relators if not self.word_permutation(p, r).is_identity()]


def parse_monodromy(text: str, degree: int = 3) -> MonodromyMap:
    """Parse lines like ``gamma1 -> (2 3)``; γ-names are also accepted."""
    images = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, _, rhs = line.partition("->")
        name = lhs.strip()
        if name.startswith("gamma"):
            name = "γ" + name[len("gamma"):]
        pair = rhs.strip().lstrip("(").rstrip(")").replace(",", " ").split()
        if len(pair) != 2:
            raise ValueError(f"bad monodromy line: {raw!r}")
        images.append((name, (int(pair[0]), int(pair[1]))))
    return MonodromyMap(degree, tuple(images))


@dataclasses.dataclass(frozen=True)
class MonodromyGraph:
    """Vertices 1..degree; edge i joins the transposed pair of generator i."""

    degree: int
    edges: tuple[tuple[int, int], ...]  # edges[i-1] = (h, k)

    def incident(self, vertex: int) -> list[int]:
        return [i + 1 for i, (h, k) in enumerate(self.edges) if vertex in (h, k)]

    def other_end(self, edge: int, vertex: int) -> int:
        h, k = self.edges[edge - 1]
        if vertex == h:
            return k
        if vertex == k:
            return h
        raise ValueError(f"edge {edge} does not pass through vertex {vertex}")

    def is_connected(self) -> bool:
        if self.degree == 0:
            return True
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for e in self.incident(v):
                w = self.other_end(e, v)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.degree


def monodromy_graph(p: Presentation, m: MonodromyMap) -> MonodromyGraph:
    bad = m.kills(p)
    if bad:
        raise ValueError(f"map does not kill {len(bad)} relator(s), e.g. {bad[0].letters}")
    return MonodromyGraph(m.degree, tuple(m.transposition(g) for g in p.generators))


@dataclasses.dataclass(frozen=True)
class SchreierData:
    """A maximal subtree plus the chain transversal it induces."""

    graph: MonodromyGraph
    basepoint: int
    tree_edges: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]  # chains[v-1] = edge sequence basepoint -> v

    def word(self, vertex: int, rank: int) -> FreeWord:
        return FreeWord(rank, tuple(self.chains[vertex - 1]))


def schreier_transversal(
    g: MonodromyGraph, policy: str = "prefer-highest-index", basepoint: int = 1
) -> SchreierData:
    """Depth-first subtree from the basepoint, taking highest edges first.

    The resulting chains are 1,q-chains: following chain edges from the
    basepoint reaches q, and the chain word maps the basepoint to q.
    """
    if policy != "prefer-highest-index":
        raise ValueError(f"unknown subtree policy {policy!r}")
    if not g.is_connected():
        raise ValueError("monodromy graph is not connected")
    chains: dict[int, tuple[int, ...]] = {basepoint: ()}
    tree: list[int] = []
    stack = [basepoint]
    while stack:
        v = stack.pop()
        for e in sorted(g.incident(v), reverse=True):
            w = g.other_end(e, v)
            if w not in chains:
                chains[w] = chains[v] + (e,)
                tree.append(e)
                stack.append(v)  # come back to v after the branch below w
                stack.append(w)
                break
    return SchreierData(
        g,
        basepoint,
        tuple(sorted(tree)),
        tuple(chains[v] for v in range(1, g.degree + 1)),
    )


def _vertex_of(m: MonodromyMap, p: Presentation, w: FreeWord, start: int) -> int:
    return m.word_permutation(p, w)(start)


def eta_name(chain_vertex: int, edge: int) -> str:
    return f"η_{{{chain_vertex},{edge}}}"


def rs_generators(
    p: Presentation, m: MonodromyMap, data: SchreierData
) -> list[tuple[str, FreeWord, bool]]:
    """All subgroup generators η_{c,k} = γ_c γ_k (coset rep)^-1.

    Returns (name, word in source generators, is_identity); the identity
    entries correspond to subtree chains and are kept for the record.
    """
    rank = p.rank()
    out = []
    for v in range(1, data.graph.degree + 1):
        gamma_c = data.word(v, rank)
        for k in range(1, rank + 1):
            target = _vertex_of(m, p, FreeWord(rank, gamma_c.letters + (k,)), data.basepoint)
            rep = data.word(target, rank)
            word = FreeWord(rank, free_reduce(gamma_c.letters + (k,) + rep.inverse().letters))
            out.append((eta_name(v, k), word, not word.letters))
    return out


def _rewrite(
    word_letters: tuple[int, ...],
    m: MonodromyMap,
    p: Presentation,
    data: SchreierData,
    eta_index: dict[tuple[int, int], int],
) -> tuple[int, ...]:
    """Standard Reidemeister-Schreier rewriting of a subgroup word."""
    out: list[int] = []
    v = data.basepoint
    for x in word_letters:
        g = abs(x)
        perm = m.permutation(p.generators[g - 1])
        if x > 0:
            idx = eta_index.get((v, g))
            if idx is not None:
                out.append(idx)
            v = perm(v)
        else:
            v = perm.inverse()(v)
            idx = eta_index.get((v, g))
            if idx is not None:
                out.append(-idx)
    return free_reduce(tuple(out))


def rs_presentation(
    p: Presentation, m: MonodromyMap, basepoint: int = 1
) -> tuple[Presentation, SchreierData]:
    """Present the stabilizer of the basepoint sheet inside the source group."""
    graph = monodromy_graph(p, m)
    data = schreier_transversal(graph, basepoint=basepoint)
    gens = rs_generators(p, m, data)
    names = [name for name, _, trivial in gens if not trivial]
    eta_index: dict[tuple[int, int], int] = {}
    pos = 0
    for v in range(1, graph.degree + 1):
        for k in range(1, p.rank() + 1):
            name = eta_name(v, k)
            if name in names:
                pos += 1
                eta_index[(v, k)] = pos
    relators = []
    rank = p.rank()
    for v in range(1, graph.degree + 1):
        gamma_c = data.word(v, rank)
        for r in p.relators:
            conj = free_reduce(gamma_c.letters + r.letters + gamma_c.inverse().letters)
            rewritten = _rewrite(conj, m, p, data, eta_index)
            if rewritten:
                relators.append(FreeWord(len(names), rewritten))
    return Presentation(tuple(names), tuple(relators)), data


def boundary_loops(
    p: Presentation, m: MonodromyMap, data: SchreierData
) -> list[tuple[str, tuple[int, ...]]]:
    """The loop classes around the curve preimage, as words in (vertex, edge) pairs.

    Three classes: η_{c,k} for an edge k missing the end vertex of c (the
    unramified sheet), η_{c,k} for k the last edge of c, and the products
    η_{c,k} η_{c',k} over non-subtree edges k with γ_{c'} representing
    γ_c γ_k.  The trivial chain has no last edge.
    """
    out: list[tuple[str, tuple[tuple[int, int], ...]]] = []
    graph = data.graph
    rank = p.rank()
    for v in range(1, graph.degree + 1):
        chain = data.chains[v - 1]
        for k in range(1, rank + 1):
            ends = graph.edges[k - 1]
            if v not in ends:
                out.append(("unramified-sheet", ((v, k),)))
        if chain:
            out.append(("chain-end", ((v, chain[-1]),)))
    for k in range(1, rank + 1):
        if k in data.tree_edges:
            continue
        for v in range(1, graph.degree + 1):
            gamma_c = data.word(v, rank)
            target = _vertex_of(m, p, FreeWord(rank, gamma_c.letters + (k,)), data.basepoint)
            out.append(("ramification-pair", ((v, k), (target, k))))
    return out


def boundary_loop_quotient(
    sub: Presentation,
    p: Presentation,
    m: MonodromyMap,
    data: SchreierData,
) -> tuple[Presentation, list[TietzeMove]]:
    """Adjoin the boundary loop relators and simplify fully."""
    name_to_index = {g: i + 1 for i, g in enumerate(sub.generators)}
    extra: list[FreeWord] = []
    for _, pairs in boundary_loops(p, m, data):
        letters = []
        for v, k in pairs:
            idx = name_to_index.get(eta_name(v, k))
            if idx is not None:
                letters.append(idx)
        if letters:
            extra.append(FreeWord(sub.rank(), tuple(letters)))
    quotient = Presentation(sub.generators, sub.relators + tuple(extra))
    return tietze_simplify(
        quotient,
        SimplifyPolicy(eliminate_primed=False, eliminate_all=True, shorten=True),
    )
