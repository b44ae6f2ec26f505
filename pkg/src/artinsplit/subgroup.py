"""Finitely generated subgroups of a free group as based core graphs."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import (
    GraphError,
    LabeledGraph,
    _letter_order,
    canonical_form,
    components,
    fold,
    induced_subgraph,
    is_connected,
    is_immersion,
    prune,
    rank,
    wedge_of_words,
)
from .words import Word, check_alphabet


@dataclass(frozen=True)
class SubgroupGraph:
    core: LabeledGraph
    ambient_rank: int

    def __post_init__(self):
        g = self.core
        if g.ambient_rank != self.ambient_rank:
            raise GraphError("core graph alphabet differs from the ambient rank")
        if g.basepoint is None:
            raise GraphError("a subgroup graph needs a basepoint")
        if not is_connected(g):
            raise GraphError("a subgroup graph must be connected")
        if not is_immersion(g):
            raise GraphError("a subgroup graph must be folded")
        for v in range(g.vertex_count):
            if v != g.basepoint and g.degree(v) < 2:
                raise GraphError(f"vertex {v} hangs off the core")

    @property
    def rank(self) -> int:
        return rank(self.core)


def from_graph(g: LabeledGraph) -> SubgroupGraph:
    """Subgroup carried by a based graph: fold, keep the basepoint component, prune."""
    if g.basepoint is None:
        raise GraphError("need a basepoint")
    folded, _ = fold(g)
    comp = next(c for c in components(folded) if folded.basepoint in c)
    sub, _ = induced_subgraph(folded, comp, folded.basepoint)
    core, _ = prune(sub, keep_basepoint=True)
    return SubgroupGraph(core, g.ambient_rank)


def from_words(gens: Iterable[Word], ambient_rank: int, name: str = "H") -> SubgroupGraph:
    gens = list(gens)
    for w in gens:
        check_alphabet(w, ambient_rank)
    return from_graph(wedge_of_words(gens, ambient_rank, name))


def trace(h: SubgroupGraph, w: Word, start: int | None = None) -> int | None:
    """End vertex of the path reading ``w`` from ``start`` (default basepoint)."""
    star = h.core.star()
    v = h.core.basepoint if start is None else start
    for a in w.letters:
        ends = star[v].get(a)
        if not ends:
            return None
        v = ends[0][1]
    return v


def contains(h: SubgroupGraph, w: Word) -> bool:
    return trace(h, w) == h.core.basepoint


def index(h: SubgroupGraph) -> int | float:
    """Index in the ambient free group; ``math.inf`` when some star is incomplete."""
    full = set(_letter_order(h.ambient_rank))
    for at in h.core.star():
        if {a for a, ends in at.items() if ends} != full:
            return math.inf
    return h.core.vertex_count


def spanning_tree_paths(g: LabeledGraph, root: int) -> tuple[dict[int, Word], set[int]]:
    """BFS tree from ``root`` with (generator, direction) tie-break.

    Returns the tree path word to every reachable vertex and the tree edge ids.
    """
    star = g.star()
    letters = _letter_order(g.ambient_rank)
    paths = {root: Word()}
    tree: set[int] = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for a in letters:
            for i, u in star[v].get(a, ()):
                if u not in paths:
                    paths[u] = paths[v] * Word((a,))
                    tree.add(i)
                    queue.append(u)
    return paths, tree


def basis(h: SubgroupGraph) -> list[Word]:
    g = h.core
    paths, tree = spanning_tree_paths(g, g.basepoint)
    out = []
    for i, (s, t, lab) in enumerate(g.edges):
        if i not in tree:
            out.append(paths[s] * Word((lab,)) * paths[t].inverse())
    return out


def rebase(h: SubgroupGraph, vertex: int) -> SubgroupGraph:
    """Move the basepoint to ``vertex``: the conjugate ``p^-1 H p`` for a path p to it."""
    return from_graph(h.core.with_basepoint(vertex))


def conjugate(h: SubgroupGraph, g: Word) -> SubgroupGraph:
    """``g^-1 H g``."""
    return from_words([u.conjugate(g) for u in basis(h)], h.ambient_rank)


def trivial_subgroup(ambient_rank: int) -> SubgroupGraph:
    return SubgroupGraph(LabeledGraph(1, (), ambient_rank, 0, "trivial"), ambient_rank)


def equal_subgroups(h1: SubgroupGraph, h2: SubgroupGraph) -> bool:
    return canonical_form(h1.core, based=True) == canonical_form(h2.core, based=True)

