"""Splittings of Art_{2MN}, Art_{MN∞} and dihedral Artin groups as graphs of free groups.

Conventions.  ``A = F(x, y)`` is the vertex group carried by the rose X_A.
For amalgams ``B = π1 X_B`` is free on the three centre circles of the
relator cells, named ``u`` (x-cell), ``v`` (y-cell), ``w`` (commutation
cell).  The edge space X_C has vertices ``b-`` (0) and ``b+`` (1); each
edge is labelled by the X_B loop it double covers and carries the word it
is pushed onto in X_A:

* an even label K = 2k gives a loop ``g^k`` at each of b-, b+;
* an odd label K = 2k+1 gives ``b- -> b+`` reading ``g^(k+1)`` and
  ``b+ -> b-`` reading ``g^k`` (the boundary of a Mobius band);
* the commutation cell gives a loop ``y x^-1`` at b- and ``x^-1 y`` at b+.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    GraphMorphism,
    LabeledGraph,
    canonical_form,
    check_cover,
    components,
    fold,
    induced_subgraph,
    is_connected,
    is_immersion,
    isomorphism,
    path_word,
    rank,
    realize,
    rose,
)
from .presentation import (
    INF,
    Presentation,
    abelianization,
    amalgam_presentation,
    artin_dihedral,
    artin_standard,
    half_label,
    hnn_presentation,
)
from .subgroup import SubgroupGraph, from_graph, from_words
from .words import Word

A_NAMES = ("x", "y")
B_NAMES = ("u", "v", "w")
X, Y = Word.gen(1), Word.gen(2)

FAMILY_2MN = "2MN"
FAMILY_INF = "MNinf"
FAMILY_DIHEDRAL = "dihedral"

BOTH_EVEN = "both_even"
M_ODD = "M_odd"
N_ODD = "N_odd"
BOTH_ODD = "both_odd"


class EdgeSpaceError(RuntimeError):
    pass


@dataclass(frozen=True)
class ArtinParams:
    M: int
    N: int = 0
    family: str = FAMILY_2MN
    override: bool = False

    def __post_init__(self):
        if self.family == FAMILY_DIHEDRAL:
            if self.M < 2:
                raise ValueError(f"dihedral label must be >= 2, got {self.M}")
            return
        if self.family not in (FAMILY_2MN, FAMILY_INF):
            raise ValueError(f"unknown family {self.family!r}")
        low = 4 if self.family == FAMILY_2MN and not self.override else 3
        if self.override:
            low = 3
        if self.M < low or self.N < low:
            raise ValueError(f"Art_{{{self.label}}} needs M, N >= {low} (got M={self.M}, N={self.N})")

    @property
    def m(self) -> int:
        return self.M // 2

    @property
    def n(self) -> int:
        return self.N // 2

    @property
    def parity(self) -> str:
        mo, no = self.M % 2, self.N % 2
        return {(0, 0): BOTH_EVEN, (1, 0): M_ODD, (0, 1): N_ODD, (1, 1): BOTH_ODD}[(mo, no)]

    @property
    def label(self) -> str:
        if self.family == FAMILY_DIHEDRAL:
            return f"{self.M}"
        if self.family == FAMILY_INF:
            return f"{self.M}{self.N}∞"
        return f"2{self.M}{self.N}"

    def standard_presentation(self) -> Presentation:
        if self.family == FAMILY_DIHEDRAL:
            return artin_dihedral(self.M)
        if self.family == FAMILY_INF:
            return artin_standard(self.M, self.N, INF)
        return artin_standard(2, self.M, self.N)


@dataclass(frozen=True)
class EdgeSpaceData:
    x_c: LabeledGraph
    to_xb: GraphMorphism
    to_xa_words: tuple[Word, ...]
    folded: LabeledGraph
    # X_C vertex -> vertex of the folded graph
    folded_vertex_map: tuple[int, ...] = ()
    # X_C vertex -> component marker ("-" for the part through b-, "+" for b+)
    markers: tuple[str, ...] = ()

    @property
    def x_b(self) -> LabeledGraph:
        return self.to_xb.target

    @property
    def connected(self) -> bool:
        return is_connected(self.x_c)

    def realization(self) -> LabeledGraph:
        return realize(self.x_c, self.to_xa_words, len(A_NAMES), name="XC_realized")

    def loop_basis(self) -> list[tuple[int, ...]]:
        """Basis of π1(X_C, b-) as signed X_C edge sequences (edge i -> ±(i+1))."""
        paths, tree = _edge_tree(self.x_c, 0)
        out = []
        for i, (s, t, _) in enumerate(self.x_c.edges):
            if i in tree or s not in paths:
                continue
            out.append(_reduce_edges(paths[s] + (i + 1,) + _inverse_edges(paths[t])))
        return out

    def image_in_a(self, edge_path: tuple[int, ...]) -> Word:
        return _push(edge_path, self.to_xa_words)

    def image_in_b(self, edge_path: tuple[int, ...]) -> Word:
        labels = [Word.gen(lab) for _, _, lab in self.x_c.edges]
        return _push(edge_path, labels)

    def beta_path(self, loop: tuple[int, ...]) -> tuple[int, ...]:
        """The deck transformation applied to a loop at b-, brought back to b- along the tree."""
        vmap, emap = self.deck_transformation()
        to_image = _edge_tree(self.x_c, 0)[0][vmap[0]]
        moved = tuple((emap[abs(e) - 1] + 1) * (1 if e > 0 else -1) for e in loop)
        return _reduce_edges(to_image + moved + _inverse_edges(to_image))

    def cell_loops(self, commutation_power: int = 1) -> list[tuple[tuple[int, ...], int]]:
        """Closed lifts of the X_B loops, based at b-, with the power a 2-cell wraps them.

        Returns (edge path, power) pairs; the commutation loops carry ``commutation_power``.
        """
        paths, _ = _edge_tree(self.x_c, 0)
        out = []
        seen: set[int] = set()
        for i, (s, t, lab) in enumerate(self.x_c.edges):
            if i in seen or s not in paths:
                continue
            if s == t:
                cycle = (i + 1,)
                seen.add(i)
            else:
                j = next(k for k, (s2, t2, lab2) in enumerate(self.x_c.edges)
                         if lab2 == lab and s2 == t and t2 == s and k not in seen and k != i)
                cycle = (i + 1, j + 1)
                seen.update((i, j))
            power = commutation_power if lab == 3 else 1
            loop = paths[s] + cycle * power + _inverse_edges(paths[s])
            out.append((_reduce_edges(loop), power))
        return out

    def deck_transformation(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The non-trivial deck transformation of X_C -> X_B (vertex map, edge map)."""
        n = self.x_c.vertex_count
        for swap in range(1, n):
            vmap = tuple((v + swap) % n for v in range(n))
            emap = []
            for s, t, lab in self.x_c.edges:
                hit = [k for k, (s2, t2, lab2) in enumerate(self.x_c.edges)
                       if (s2, t2, lab2) == (vmap[s], vmap[t], lab) and k not in emap]
                if not hit:
                    break
                emap.append(hit[0])
            else:
                if all(self.to_xb.edge_map[i] == self.to_xb.edge_map[emap[i]] for i in range(len(emap))):
                    return vmap, tuple(emap)
        raise EdgeSpaceError("no non-trivial deck transformation")


def _edge_tree(g: LabeledGraph, root: int) -> tuple[dict[int, tuple[int, ...]], set[int]]:
    from collections import deque

    paths: dict[int, tuple[int, ...]] = {root: ()}
    tree: set[int] = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for i, (s, t, _) in enumerate(g.edges):
            for a, b, sign in ((s, t, 1), (t, s, -1)):
                if a == v and b not in paths:
                    paths[b] = paths[v] + (sign * (i + 1),)
                    tree.add(i)
                    queue.append(b)
    return paths, tree


def _inverse_edges(path: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-e for e in reversed(path))


def _reduce_edges(path: tuple[int, ...]) -> tuple[int, ...]:
    return Word(path).letters


def _push(edge_path: tuple[int, ...], images) -> Word:
    out = Word()
    for e in edge_path:
        img = images[abs(e) - 1]
        out = out * (img if e > 0 else img.inverse())
    return out


@dataclass(frozen=True)
class SplittingData:
    variant: str
    params: ArtinParams
    a_names: tuple[str, ...] = A_NAMES
    edge_subgroup_words: tuple[Word, ...] = ()
    beta_images: tuple[Word, ...] = ()
    stable_letter: str = "t"
    b_names: tuple[str, ...] = ()
    edge_space: EdgeSpaceData | None = None

    def __post_init__(self):
        if self.variant == "hnn":
            if len(self.edge_subgroup_words) != len(self.beta_images):
                raise ValueError("HNN data needs one β image per edge-group generator")
        elif self.variant == "amalgam":
            if self.edge_space is None:
                raise ValueError("amalgam data needs an edge space")
        else:
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def rank_a(self) -> int:
        return len(self.a_names)

    def ranks(self) -> tuple[int, ...]:
        """Computed ranks: (A, B) for HNN, (A, B, C) for amalgams."""
        if self.variant == "hnn":
            return self.rank_a, from_words(self.edge_subgroup_words, self.rank_a).rank
        es = self.edge_space
        return self.rank_a, rank(es.x_b), rank(es.x_c)

    def edge_group(self) -> SubgroupGraph:
        """The edge group as a subgroup of A (B for HNN, C for amalgams)."""
        if self.variant == "hnn":
            return from_words(self.edge_subgroup_words, self.rank_a, "B")
        return from_graph(self.edge_space.folded)

    def presentation(self) -> Presentation:
        return presentation_of_splitting(self)

    def describe(self) -> list[str]:
        from .words import format_word

        p = self.params
        lines = [f"group Art_{{{p.label}}} parity={p.parity if p.family != FAMILY_DIHEDRAL else '-'}"]
        if self.variant == "hnn":
            lines.append(f"splitting hnn A=F{self.rank_a} stable={self.stable_letter}")
            for u, w in zip(self.edge_subgroup_words, self.beta_images):
                lines.append(f"beta {format_word(u, self.a_names)} -> {format_word(w, self.a_names)}")
        else:
            es = self.edge_space
            lines.append(f"splitting amalgam A=F{self.rank_a} B=F{rank(es.x_b)} C=F{rank(es.x_c)}")
            for i, (s, t, lab) in enumerate(es.x_c.edges):
                lines.append(f"edge {i} {s}->{t} B:{self.b_names[lab - 1]} "
                             f"A:{format_word(es.to_xa_words[i], self.a_names)}")
        lines.append("ranks " + " ".join(str(r) for r in self.ranks()))
        return lines


def presentation_of_splitting(s: SplittingData) -> Presentation:
    if s.variant == "hnn":
        return hnn_presentation(s.a_names, s.edge_subgroup_words, s.beta_images, s.stable_letter)
    es = s.edge_space
    loops = es.loop_basis()
    return amalgam_presentation(s.a_names, s.b_names,
                                [es.image_in_a(c) for c in loops], [es.image_in_b(c) for c in loops])


def _cell_edges(K: int, gen: Word, label: int) -> list[tuple[int, int, int, Word]]:
    k, odd = half_label(K)
    if odd:
        return [(0, 1, label, gen ** (k + 1)), (1, 0, label, gen**k)]
    return [(0, 0, label, gen**k), (1, 1, label, gen**k)]


def build_edge_space(params: ArtinParams, commutation: bool | None = None) -> EdgeSpaceData:
    """X_C with its double cover of X_B and its pushing map to X_A, and the fold X̄_C."""
    if commutation is None:
        commutation = params.family == FAMILY_2MN
    if params.family == FAMILY_DIHEDRAL:
        cells = _cell_edges(params.M, X, 1)
        b_rank, a_rank = 1, 1
    else:
        cells = _cell_edges(params.M, X, 1) + _cell_edges(params.N, Y, 2)
        if commutation:
            cells += [(0, 0, 3, Y * X.inverse()), (1, 1, 3, X.inverse() * Y)]
        b_rank, a_rank = (3 if commutation else 2), 2
    x_c = LabeledGraph(2, tuple((s, t, lab) for s, t, lab, _ in cells), b_rank, 0, "XC")
    x_b = rose(b_rank, name="XB")
    to_xb = GraphMorphism(x_c, x_b, (0, 0), tuple(lab - 1 for _, _, lab, _ in cells))
    words = tuple(w for *_, w in cells)
    realized = realize(x_c, words, a_rank, name="XC_realized")
    folded, trace = fold(realized)
    vmap = trace.vertex_map[: x_c.vertex_count]
    comps = components(x_c)
    markers = tuple("-" if v in comps[0] else "+" for v in range(x_c.vertex_count))
    data = EdgeSpaceData(x_c, to_xb, words, folded.renamed("XC_folded"), tuple(vmap), markers)
    _check_template(data, params, commutation)
    return data


def _check_template(es: EdgeSpaceData, params: ArtinParams, commutation: bool) -> None:
    if params.override:
        return
    cover = check_cover(es.to_xb)
    if cover.degree != 2:
        raise EdgeSpaceError(f"X_C -> X_B is not a double cover for {params}: {cover}")
    if not is_immersion(es.folded):
        raise EdgeSpaceError("folded edge space is not immersed")
    if es.connected:
        expected = rank(es.x_b) * 2 - 1
        if rank(es.x_c) != expected or rank(es.folded) != expected:
            raise EdgeSpaceError(f"rank(X_C)={rank(es.x_c)}, rank(folded)={rank(es.folded)}, expected {expected}")


def split_components(es: EdgeSpaceData) -> tuple[SubgroupGraph, SubgroupGraph]:
    """For a disconnected X_C: the folded components through b- and b+ as subgroups of A."""
    folded = es.folded
    out = []
    for v in (0, 1):
        fv = es.folded_vertex_map[v]
        comp = next(c for c in components(folded) if fv in c)
        sub, _ = induced_subgraph(folded, comp, fv, name=f"XB{'-+'[v]}")
        out.append(from_graph(sub))
    return out[0], out[1]


def split(params: ArtinParams) -> SplittingData:
    """Art_{2MN} as an HNN extension (both even) or an amalgam A *_C B."""
    if params.family != FAMILY_2MN:
        raise ValueError("split() builds Art_{2MN}; use split_infty or split_dihedral")
    if params.parity == BOTH_EVEN:
        m, n = params.m, params.n
        return SplittingData(
            "hnn", params,
            edge_subgroup_words=(X**m, Y**n, X.inverse() * Y),
            beta_images=(X**m, Y**n, Y * X.inverse()),
            edge_space=build_edge_space(params),
        )
    return SplittingData("amalgam", params, b_names=B_NAMES, edge_space=build_edge_space(params))


def split_infty(M: int, N: int, override: bool = False) -> SplittingData:
    """Art_{MN∞}: the same construction without the commutation cell."""
    params = ArtinParams(M, N, FAMILY_INF, override)
    if params.parity == BOTH_EVEN:
        gens = (X**params.m, Y**params.n)
        return SplittingData("hnn", params, edge_subgroup_words=gens, beta_images=gens)
    return SplittingData("amalgam", params, b_names=B_NAMES[:2], edge_space=build_edge_space(params))


def split_dihedral(M: int) -> SplittingData:
    """Art_M = <x> *_{<x^m>} (M = 2m) or <x> *_{x^M = y^2} <y> (M odd)."""
    params = ArtinParams(M, 0, FAMILY_DIHEDRAL)
    m, odd = half_label(M)
    if not odd:
        return SplittingData("hnn", params, a_names=("x",), edge_subgroup_words=(X**m,), beta_images=(X**m,))
    return SplittingData("amalgam", params, a_names=("x",), b_names=("y",), edge_space=build_edge_space(params))


@dataclass
class Check:
    name: str
    status: str
    evidence: str

    def line(self) -> str:
        return f"CHECK {self.name} {self.status} {self.evidence}"


@dataclass
class VerificationReport:
    params: ArtinParams
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def counts(self) -> tuple[int, int]:
        applicable = [c for c in self.checks if c.status != "n/a"]
        return sum(c.status == "pass" for c in applicable), len(applicable)

    def status(self, name: str) -> str:
        return next(c.status for c in self.checks if c.name == name)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


def expected_ranks(params: ArtinParams, variant: str) -> tuple[int, ...]:
    if params.family == FAMILY_DIHEDRAL:
        return (1, 1) if variant == "hnn" else (1, 1, 1)
    if params.family == FAMILY_INF:
        return (2, 2) if variant == "hnn" else (2, 2, 3)
    return (2, 3) if variant == "hnn" else (2, 3, 5)


def _ok(flag: bool) -> str:
    return "pass" if flag else "fail"


def verify_splitting(s: SplittingData, params: ArtinParams | None = None) -> VerificationReport:
    params = params or s.params
    report = VerificationReport(params)
    add = report.checks.append

    # (1) edge-group inclusions are π1-injective: folding preserves rank
    if s.variant == "hnn":
        r_b = from_words(s.edge_subgroup_words, s.rank_a).rank
        r_beta = from_words(s.beta_images, s.rank_a).rank
        k = len(s.edge_subgroup_words)
        add(Check("pi1_injective", _ok(r_b == k and r_beta == k),
                  f"rank<B>={r_b} rank<beta(B)>={r_beta} generators={k}"))
    else:
        es = s.edge_space
        pieces = []
        ok = True
        for comp in components(es.realization()):
            sub, _ = induced_subgraph(es.realization(), comp)
            before = rank(sub)
            after = rank(fold(sub)[0])
            pieces.append(f"{before}->{after}")
            ok &= before == after
        ok &= is_immersion(es.folded)
        add(Check("pi1_injective", _ok(ok), f"fold ranks {' '.join(pieces)} immersed={is_immersion(es.folded)}"))

    # (2) stated ranks
    got, want = s.ranks(), expected_ranks(params, s.variant)
    add(Check("ranks", _ok(got == want), f"got={got} expected={want}"))

    # (3) double cover X_C -> X_B
    if s.variant == "amalgam" and s.edge_space.connected:
        cover = check_cover(s.edge_space.to_xb)
        add(Check("double_cover", _ok(cover.is_cover and cover.degree == 2),
                  f"is_cover={cover.is_cover} degree={cover.degree}"))
    else:
        add(Check("double_cover", "n/a", "no connected edge space"))

    # (4) B and β(B) conjugate: identical folded graphs, different basepoints
    if s.variant == "hnn" and params.family == FAMILY_2MN:
        gb = from_words(s.edge_subgroup_words, s.rank_a).core
        gbeta = from_words(s.beta_images, s.rank_a).core
        same = canonical_form(gb, based=False) == canonical_form(gbeta, based=False)
        evidence = f"unbased_equal={same}"
        if s.edge_space is not None:
            # the two components of X_C fold onto the graphs of β(B) (at b-) and B (at b+)
            minus, plus = split_components(s.edge_space)
            carried = (canonical_form(minus.core, based=True) == canonical_form(gbeta, based=True)
                       and canonical_form(plus.core, based=True) == canonical_form(gb, based=True))
            same &= carried
            evidence += f" components_carry_B_and_betaB={carried}"
        add(Check("conjugate_edge_groups", _ok(same), evidence))
    else:
        add(Check("conjugate_edge_groups", "n/a", "not a both-even HNN splitting"))

    # (5) abelianization agrees with the standard presentation
    ours = abelianization(presentation_of_splitting(s))
    ref = abelianization(params.standard_presentation())
    add(Check("abelianization", _ok(ours == ref), f"splitting={ours} standard={ref}"))
    return report


def verify_grid(lo: int, hi: int) -> list[tuple[ArtinParams, SplittingData, VerificationReport]]:
    out = []
    for M in range(lo, hi + 1):
        for N in range(lo, hi + 1):
            params = ArtinParams(M, N)
            s = split(params)
            out.append((params, s, verify_splitting(s, params)))
    return out


def beta_conjugator(s: SplittingData) -> Word | None:
    """A word g with β(B) = g^-1 B g, read off an isomorphism of the folded graphs."""
    gb = from_words(s.edge_subgroup_words, s.rank_a).core
    gbeta = from_words(s.beta_images, s.rank_a).core
    for v in range(gb.vertex_count):
        if isomorphism(gbeta, gb, gbeta.basepoint, v) is not None:
            return path_word(gb, gb.basepoint, v)
    return None
