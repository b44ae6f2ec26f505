"""Directed graphs labelled by the generators of a free group.

An edge ``(s, t, g)`` is stored once, positively oriented.  Reading it
from ``s`` gives the letter ``+g``; reading it backwards from ``t`` gives
``-g``.  A graph labelled this way is a map to the rose with
``ambient_rank`` petals.
"""
from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .words import Word

Edge = tuple[int, int, int]


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledGraph:
    vertex_count: int
    edges: tuple[Edge, ...]
    ambient_rank: int
    basepoint: int | None = None
    name: str = "g"

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.vertex_count < 0:
            raise GraphError("negative vertex count")
        for s, t, g in self.edges:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise GraphError(f"edge ({s}, {t}, {g}) has an endpoint outside 0..{self.vertex_count - 1}")
            if not 1 <= g <= self.ambient_rank:
                raise GraphError(f"edge label {g} outside the alphabet of rank {self.ambient_rank}")
        if self.basepoint is not None and not 0 <= self.basepoint < self.vertex_count:
            raise GraphError(f"basepoint {self.basepoint} is not a vertex")
        if not self.name or any(c.isspace() for c in self.name):
            raise GraphError("graph names must be non-empty and contain no whitespace")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count

    def star(self) -> list[dict[int, list[tuple[int, int]]]]:
        """Per vertex: signed letter -> [(edge index, far endpoint)]."""
        st: list[dict[int, list[tuple[int, int]]]] = [defaultdict(list) for _ in range(self.vertex_count)]
        for i, (s, t, g) in enumerate(self.edges):
            st[s][g].append((i, t))
            st[t][-g].append((i, s))
        return st

    def degree(self, v: int) -> int:
        return sum((s == v) + (t == v) for s, t, _ in self.edges)

    def with_basepoint(self, v: int | None) -> "LabeledGraph":
        return LabeledGraph(self.vertex_count, self.edges, self.ambient_rank, v, self.name)

    def renamed(self, name: str) -> "LabeledGraph":
        return LabeledGraph(self.vertex_count, self.edges, self.ambient_rank, self.basepoint, name)


def rose(rank: int, labels: Sequence[int] | None = None, name: str = "rose") -> LabeledGraph:
    labels = range(1, rank + 1) if labels is None else labels
    return LabeledGraph(1, tuple((0, 0, g) for g in labels), rank, 0, name)


def wedge_of_words(words: Iterable[Word], ambient_rank: int, name: str = "wedge") -> LabeledGraph:
    """Subdivided loops at vertex 0, one per nonempty word."""
    n = 1
    edges: list[Edge] = []
    for w in words:
        if not w:
            continue
        prev = 0
        for k, a in enumerate(w.letters):
            nxt = 0 if k == len(w) - 1 else n
            if nxt:
                n += 1
            edges.append((prev, nxt, a) if a > 0 else (nxt, prev, -a))
            prev = nxt
    return LabeledGraph(n, tuple(edges), ambient_rank, 0, name)


def components(g: LabeledGraph) -> list[list[int]]:
    """Vertex sets of connected components, each sorted, ordered by least vertex."""
    parent = list(range(g.vertex_count))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s, t, _ in g.edges:
        a, b = find(s), find(t)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = defaultdict(list)
    for v in range(g.vertex_count):
        groups[find(v)].append(v)
    return sorted(groups.values(), key=lambda vs: vs[0])


def is_connected(g: LabeledGraph) -> bool:
    return g.vertex_count > 0 and len(components(g)) == 1


def induced_subgraph(g: LabeledGraph, vertices: Sequence[int], basepoint: int | None = None,
                     name: str | None = None) -> tuple[LabeledGraph, list[int]]:
    """Subgraph on ``vertices`` (renumbered in the given order) and the old ids."""
    new = {v: i for i, v in enumerate(vertices)}
    edges = tuple((new[s], new[t], lab) for s, t, lab in g.edges if s in new and t in new)
    bp = new[basepoint] if basepoint is not None else None
    return LabeledGraph(len(vertices), edges, g.ambient_rank, bp, name or g.name), list(vertices)


def rank(g: LabeledGraph) -> int:
    """Rank of the fundamental group, ``1 - chi``; connected graphs only."""
    if not is_connected(g):
        raise GraphError("rank is defined for connected graphs only")
    return 1 - g.euler_characteristic()


def is_immersion(g: LabeledGraph) -> bool:
    for at in g.star():
        if any(len(ends) > 1 for ends in at.values()):
            return False
    return True


@dataclass(frozen=True)
class FoldStep:
    vertex: int
    letter: int
    edges: tuple[int, int]
    merged: tuple[int, int]


@dataclass
class FoldTrace:
    steps: list[FoldStep] = field(default_factory=list)
    # original vertex id -> vertex id in the folded graph
    vertex_map: tuple[int, ...] = ()
    # original edge index -> edge index in the folded graph
    edge_map: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)


def _fold_candidates(n: int, edges: list[Edge]) -> list[tuple[int, int, int, int]]:
    at: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, (s, t, g) in enumerate(edges):
        at[(s, g)].append(i)
        at[(t, -g)].append(i)
    out = []
    for (v, letter), ids in at.items():
        if len(ids) > 1:
            out.append((v, abs(letter), 0 if letter > 0 else 1, letter, ids[0], ids[1]))
    out.sort()
    return [(v, letter, i, j) for v, _, _, letter, i, j in out]


def fold(g: LabeledGraph, rng: random.Random | None = None) -> tuple[LabeledGraph, FoldTrace]:
    """Stallings-fold ``g`` to an immersion.

    With ``rng=None`` folds are taken in order of (vertex, generator,
    direction); otherwise a random available fold is chosen at each step.
    The result does not depend on the order up to isomorphism.
    """
    n = g.vertex_count
    edges = list(g.edges)
    vmap = list(range(n))
    emap = list(range(len(edges)))
    bp = g.basepoint
    trace = FoldTrace()
    while True:
        cands = _fold_candidates(n, edges)
        if not cands:
            break
        v, letter, i, j = cands[0] if rng is None else rng.choice(cands)
        if rng is not None and rng.random() < 0.5:
            i, j = j, i
        far_i = edges[i][1] if letter > 0 else edges[i][0]
        far_j = edges[j][1] if letter > 0 else edges[j][0]
        keep, drop = min(far_i, far_j), max(far_i, far_j)
        trace.steps.append(FoldStep(v, letter, (i, j), (keep, drop)))

        def relabel(u: int) -> int:
            if u == drop:
                return keep
            return u - 1 if u > drop and keep != drop else u

        del edges[j]
        emap = [i if k == j else k for k in emap]
        emap = [k - 1 if k > j else k for k in emap]
        edges = [(relabel(s), relabel(t), lab) for s, t, lab in edges]
        vmap = [relabel(u) for u in vmap]
        if bp is not None:
            bp = relabel(bp)
        if keep != drop:
            n -= 1
    trace.vertex_map = tuple(vmap)
    trace.edge_map = tuple(emap)
    return LabeledGraph(n, tuple(edges), g.ambient_rank, bp, g.name), trace


def prune(g: LabeledGraph, keep_basepoint: bool = True) -> tuple[LabeledGraph, list[int]]:
    """Repeatedly delete degree-<=1 vertices (except the basepoint if kept).

    Returns the core and the list of surviving original vertex ids.
    """
    alive = set(range(g.vertex_count))
    edges = set(range(g.edge_count))
    deg = [g.degree(v) for v in range(g.vertex_count)]
    inc: dict[int, list[int]] = defaultdict(list)
    for i, (s, t, _) in enumerate(g.edges):
        inc[s].append(i)
        if t != s:
            inc[t].append(i)
    protected = g.basepoint if keep_basepoint else None
    stack = [v for v in alive if deg[v] <= 1 and v != protected]
    while stack:
        v = stack.pop()
        if v not in alive or deg[v] > 1 or v == protected:
            continue
        if deg[v] == 0 and len(alive) == 1:
            break
        alive.discard(v)
        for i in inc[v]:
            if i in edges:
                edges.discard(i)
                s, t, _ = g.edges[i]
                u = t if s == v else s
                deg[u] -= 1
                if u in alive and deg[u] <= 1 and u != protected:
                    stack.append(u)
    order = sorted(alive)
    sub, _ = induced_subgraph(g, order, g.basepoint if g.basepoint in alive else None)
    return sub, order


@dataclass(frozen=True)
class GraphMorphism:
    source: LabeledGraph
    target: LabeledGraph
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]

    def __post_init__(self):
        src, tgt = self.source, self.target
        if len(self.vertex_map) != src.vertex_count or len(self.edge_map) != src.edge_count:
            raise GraphError("morphism maps must be total on the source")
        for v in self.vertex_map:
            if not 0 <= v < tgt.vertex_count:
                raise GraphError(f"vertex image {v} is not a target vertex")
        for i, (s, t, lab) in enumerate(src.edges):
            k = self.edge_map[i]
            if not 0 <= k < tgt.edge_count:
                raise GraphError(f"edge image {k} is not a target edge")
            ts, tt, tlab = tgt.edges[k]
            if (self.vertex_map[s], self.vertex_map[t]) != (ts, tt):
                raise GraphError(f"edge {i} is not mapped incidence-preservingly")
            if lab != tlab:
                raise GraphError(f"edge {i} label {lab} maps to label {tlab}")


def identity_morphism(g: LabeledGraph) -> GraphMorphism:
    return GraphMorphism(g, g, tuple(range(g.vertex_count)), tuple(range(g.edge_count)))


@dataclass(frozen=True)
class CoverReport:
    is_cover: bool
    degree: int | None


def check_cover(m: GraphMorphism) -> CoverReport:
    src, tgt = m.source, m.target
    # half-edge = (edge index, +1 at source end / -1 at target end)
    tgt_star: list[set[tuple[int, int]]] = [set() for _ in range(tgt.vertex_count)]
    for k, (s, t, _) in enumerate(tgt.edges):
        tgt_star[s].add((k, 1))
        tgt_star[t].add((k, -1))
    src_star: list[list[tuple[int, int]]] = [[] for _ in range(src.vertex_count)]
    for i, (s, t, _) in enumerate(src.edges):
        src_star[s].append((i, 1))
        src_star[t].append((i, -1))
    for v in range(src.vertex_count):
        image = [(m.edge_map[i], d) for i, d in src_star[v]]
        if len(set(image)) != len(image) or set(image) != tgt_star[m.vertex_map[v]]:
            return CoverReport(False, None)
    fibers = [0] * tgt.vertex_count
    for v in m.vertex_map:
        fibers[v] += 1
    if not fibers or len(set(fibers)) != 1 or fibers[0] == 0:
        return CoverReport(False, None)
    return CoverReport(True, fibers[0])


def _letter_order(rank_: int) -> list[int]:
    return [a for g in range(1, rank_ + 1) for a in (g, -g)]


def _based_encoding(g: LabeledGraph, root: int, star, letters: list[int]) -> tuple:
    number = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for a in letters:
            for _, u in star[v].get(a, ()):
                if u not in number:
                    number[u] = len(number)
                    queue.append(u)
    edges = sorted((number[s], number[t], lab) for s, t, lab in g.edges)
    return (g.ambient_rank, g.vertex_count, tuple(edges))


def _encode(key: tuple, based: bool) -> bytes:
    k, n, edges = key
    body = ";".join(f"{s},{t},{lab}" for s, t, lab in edges)
    return f"{'B' if based else 'U'}|k={k}|n={n}|{body}".encode()


def canonical_form(g: LabeledGraph, based: bool) -> bytes:
    """Byte string equal for two graphs iff they are label-preserving isomorphic.

    Based forms also require the isomorphism to respect basepoints.
    """
    if not is_immersion(g):
        raise GraphError("canonical form needs a folded graph")
    if not is_connected(g):
        raise GraphError("canonical form needs a connected graph")
    star = g.star()
    letters = _letter_order(g.ambient_rank)
    if based:
        if g.basepoint is None:
            raise GraphError("based canonical form needs a basepoint")
        return _encode(_based_encoding(g, g.basepoint, star, letters), True)
    return _encode(min(_based_encoding(g, v, star, letters) for v in range(g.vertex_count)), False)


def canonical_roots(g: LabeledGraph) -> list[int]:
    """Vertices from which the based encoding attains the unbased minimum."""
    star = g.star()
    letters = _letter_order(g.ambient_rank)
    keys = [_based_encoding(g, v, star, letters) for v in range(g.vertex_count)]
    best = min(keys)
    return [v for v, k in enumerate(keys) if k == best]


def isomorphism(g: LabeledGraph, h: LabeledGraph, root_g: int, root_h: int) -> dict[int, int] | None:
    """Label-preserving vertex bijection sending root_g to root_h, if one exists.

    Both graphs must be folded and connected.
    """
    if (g.vertex_count, g.edge_count, g.ambient_rank) != (h.vertex_count, h.edge_count, h.ambient_rank):
        return None
    sg, sh = g.star(), h.star()
    phi = {root_g: root_h}
    queue = deque([root_g])
    while queue:
        v = queue.popleft()
        if set(sg[v]) != set(sh[phi[v]]):
            return None
        for a, ends in sg[v].items():
            u = ends[0][1]
            w = sh[phi[v]][a][0][1]
            if u in phi:
                if phi[u] != w:
                    return None
            else:
                phi[u] = w
                queue.append(u)
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def export_graph(g: LabeledGraph, fmt: str = "text", names: Sequence[str] | None = None) -> bytes:
    if fmt == "text":
        bp = "none" if g.basepoint is None else str(g.basepoint)
        lines = [f"graph {g.name} ambient={g.ambient_rank} vertices={g.vertex_count} basepoint={bp}"]
        lines += [f"e {s} {t} {lab}" for s, t, lab in g.edges]
        return ("\n".join(lines) + "\n").encode()
    if fmt == "dot":
        return to_dot(g, names=names).encode()
    raise ValueError(f"unknown graph format {fmt!r}")


def to_dot(g: LabeledGraph, colors: Sequence[int] | None = None, names: Sequence[str] | None = None) -> str:
    palette = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal", "gray"]
    lines = [f'digraph "{g.name}" {{']
    for v in range(g.vertex_count):
        shape = "doublecircle" if v == g.basepoint else "circle"
        attrs = f"shape={shape}"
        if colors is not None:
            attrs += f", color={palette[colors[v] % len(palette)]}"
        lines.append(f"  {v} [{attrs}];")
    for s, t, lab in g.edges:
        label = f"g{lab}" if names is None else names[lab - 1]
        lines.append(f'  {s} -> {t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_graph(data: bytes | str) -> LabeledGraph:
    text = data.decode() if isinstance(data, bytes) else data
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty graph text")
    head = lines[0].split()
    if head[0] != "graph" or len(head) != 5:
        raise GraphError(f"bad header line: {lines[0]!r}")
    fields = dict(tok.split("=", 1) for tok in head[2:])
    bp = None if fields["basepoint"] == "none" else int(fields["basepoint"])
    edges = []
    for ln in lines[1:]:
        tag, *rest = ln.split()
        if tag != "e" or len(rest) != 3:
            raise GraphError(f"bad edge line: {ln!r}")
        edges.append(tuple(int(x) for x in rest))
    return LabeledGraph(int(fields["vertices"]), tuple(edges), int(fields["ambient"]), bp, head[1])


def realize(g: LabeledGraph, images: Sequence[Word], ambient_rank: int, name: str | None = None) -> LabeledGraph:
    """Subdivide each edge of ``g`` into the path spelled by its image word.

    Vertices of ``g`` keep their ids; subdivision vertices are appended.
    """
    if len(images) != g.edge_count:
        raise GraphError("one image word per edge is required")
    if not all(images):
        raise GraphError("edge images must be nonempty words")
    n = g.vertex_count
    edges: list[Edge] = []
    for (s, t, _), w in zip(g.edges, images):
        prev = s
        for k, a in enumerate(w.letters):
            if k == len(w) - 1:
                nxt = t
            else:
                nxt = n
                n += 1
            edges.append((prev, nxt, a) if a > 0 else (nxt, prev, -a))
            prev = nxt
    return LabeledGraph(n, tuple(edges), ambient_rank, g.basepoint, name or g.name)


def path_word(g: LabeledGraph, start: int, end: int) -> Word | None:
    """Label of a shortest path (BFS with letter tie-break) between two vertices."""
    star = g.star()
    letters = _letter_order(g.ambient_rank)
    prev: dict[int, tuple[int, int] | None] = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == end:
            break
        for a in letters:
            for _, u in star[v].get(a, ()):
                if u not in prev:
                    prev[u] = (v, a)
                    queue.append(u)
    if end not in prev:
        return None
    out = []
    v = end
    while prev[v] is not None:
        v, a = prev[v]
        out.append(a)
    return Word(tuple(reversed(out)))
