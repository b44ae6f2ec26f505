"""Fiber products of subgroup graphs over the rose, and conjugate intersections.

Every pair of vertices lies over the single vertex of the rose, so the
product has ``|V1| * |V2|`` vertices.  The component through ``(v1, v2)``
carries ``H1^g1 ∩ H2^g2`` where ``g_i`` labels a path from the basepoint
to ``v_i``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .graph import (
    GraphError,
    LabeledGraph,
    canonical_form,
    canonical_roots,
    components,
    induced_subgraph,
    path_word,
    prune,
    rank,
    to_dot,
)
from .subgroup import SubgroupGraph, basis, contains, from_graph
from .words import Word, format_word

TRIVIAL = "trivial"
DIAGONAL = "diagonal"
PROPER = "proper"


@dataclass(frozen=True)
class FiberComponent:
    component: LabeledGraph
    anchor: tuple[int, int]
    kind: str
    subgroup: SubgroupGraph | None
    # product vertex id (position in component) -> (v1, v2)
    pairs: tuple[tuple[int, int], ...] = ()

    @property
    def rank(self) -> int:
        return 0 if self.subgroup is None else self.subgroup.rank

    def core(self) -> LabeledGraph:
        """Unbased core: every hanging tree removed."""
        g, _ = prune(self.component.with_basepoint(None), keep_basepoint=False)
        return g

    def conjugacy_form(self) -> bytes:
        return canonical_form(self.core(), based=False)


def product_graph(h1: SubgroupGraph, h2: SubgroupGraph) -> tuple[LabeledGraph, list[tuple[int, int]]]:
    if h1.ambient_rank != h2.ambient_rank:
        raise GraphError(f"ambient ranks differ: {h1.ambient_rank} vs {h2.ambient_rank}")
    g1, g2 = h1.core, h2.core
    n2 = g2.vertex_count
    by_label: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for s, t, lab in g2.edges:
        by_label[lab].append((s, t))
    edges = []
    for s1, t1, lab in g1.edges:
        for s2, t2 in by_label[lab]:
            edges.append((s1 * n2 + s2, t1 * n2 + t2, lab))
    pairs = [(a, b) for a in range(g1.vertex_count) for b in range(n2)]
    bp = g1.basepoint * n2 + g2.basepoint
    return LabeledGraph(len(pairs), tuple(edges), h1.ambient_rank, bp, "product"), pairs


def _projects_isomorphically(comp: LabeledGraph, pairs: Sequence[tuple[int, int]],
                             h1: SubgroupGraph, h2: SubgroupGraph) -> bool:
    for side, h in ((0, h1), (1, h2)):
        images = {p[side] for p in pairs}
        if len(images) != len(pairs) or len(images) != h.core.vertex_count:
            return False
        if comp.edge_count != h.core.edge_count:
            return False
    return True


def fiber_product(h1: SubgroupGraph, h2: SubgroupGraph) -> list[FiberComponent]:
    """Connected components of the fiber product, ordered by (size, canonical form)."""
    prod, pairs = product_graph(h1, h2)
    base_pair = (h1.core.basepoint, h2.core.basepoint)
    out = []
    for comp_vertices in components(prod):
        comp_pairs = [pairs[v] for v in comp_vertices]
        anchor = base_pair if base_pair in comp_pairs else min(comp_pairs)
        anchor_pos = comp_pairs.index(anchor)
        sub, _ = induced_subgraph(prod, comp_vertices, comp_vertices[anchor_pos], name="component")
        if sub.edge_count == 0:
            kind, subgroup = TRIVIAL, None
        else:
            subgroup = from_graph(sub)
            if anchor == base_pair and _projects_isomorphically(sub, comp_pairs, h1, h2):
                kind = DIAGONAL
            else:
                kind = PROPER
        out.append(FiberComponent(sub, anchor, kind, subgroup, tuple(comp_pairs)))

    def sort_key(c: FiberComponent):
        form = c.conjugacy_form() if c.rank > 0 else b""
        return (c.component.vertex_count, c.component.edge_count, form, c.anchor)

    out.sort(key=sort_key)
    return out


def intersection(h1: SubgroupGraph, h2: SubgroupGraph) -> SubgroupGraph:
    """``H1 ∩ H2``: the product component through the pair of basepoints."""
    prod, _ = product_graph(h1, h2)
    return from_graph(prod)


def loop_at_anchor(comp: FiberComponent, w: Word) -> bool:
    """Whether ``w`` reads a closed path at the component's anchor."""
    g = comp.component
    star = g.star()
    v = g.basepoint
    for a in w.letters:
        ends = star[v].get(a)
        if not ends:
            return False
        v = ends[0][1]
    return v == g.basepoint


@dataclass(frozen=True)
class IntersectionEntry:
    encoding: bytes
    basis: tuple[Word, ...]
    multiplicity: int
    rank: int
    anchors: tuple[tuple[int, int], ...]
    core: LabeledGraph


@dataclass
class IntersectionReport:
    entries: list[IntersectionEntry]
    source: SubgroupGraph
    validated: bool = True
    problems: list[str] = field(default_factory=list)

    def encodings(self) -> set[bytes]:
        return {e.encoding for e in self.entries}

    def to_text(self, names: Sequence[str] = ("x", "y")) -> str:
        lines = ["# intersections H ∩ H^g up to conjugacy; mult counts fiber-product components"]
        for e in self.entries:
            words = ";".join(format_word(w, names) for w in e.basis)
            lines.append(f"isect rank={e.rank} mult={e.multiplicity} basis={words}")
        return "\n".join(lines) + "\n"


def core_basis(core: LabeledGraph) -> list[Word]:
    """Basis of the core's fundamental group at its canonical root."""
    root = canonical_roots(core)[0]
    return basis(SubgroupGraph(core.with_basepoint(root), core.ambient_rank))


def conjugate_intersections(h: SubgroupGraph) -> IntersectionReport:
    """Non-diagonal, non-trivial intersections ``H^g1 ∩ H^g2`` up to conjugacy."""
    comps = fiber_product(h, h)
    grouped: dict[bytes, list[FiberComponent]] = {}
    for c in comps:
        if c.kind != PROPER or c.rank == 0:
            continue
        grouped.setdefault(c.conjugacy_form(), []).append(c)
    entries = []
    problems = []
    g = h.core
    for enc, members in grouped.items():
        core = members[0].core()
        entries.append(IntersectionEntry(enc, tuple(core_basis(core)), len(members), rank(core),
                                         tuple(m.anchor for m in members), core))
        for m in members:
            g1 = path_word(g, g.basepoint, m.anchor[0])
            g2 = path_word(g, g.basepoint, m.anchor[1])
            for w in basis(m.subgroup):
                if not (contains(h, g1 * w * g1.inverse()) and contains(h, g2 * w * g2.inverse())):
                    problems.append(f"basis word {w.letters} at anchor {m.anchor} escapes a conjugate")
    entries.sort(key=lambda e: (e.core.vertex_count, e.core.edge_count, e.encoding))
    return IntersectionReport(entries, h, not problems, problems)


def fiber_product_dot(h1: SubgroupGraph, h2: SubgroupGraph, names: Sequence[str] | None = None) -> str:
    prod, pairs = product_graph(h1, h2)
    colors = [0] * prod.vertex_count
    for k, vs in enumerate(components(prod)):
        for v in vs:
            colors[v] = k
    return to_dot(prod, colors=colors, names=names)

