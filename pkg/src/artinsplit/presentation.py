"""Group presentations, Artin presentations and abelianization via Smith normal form."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .words import Word, format_word, parse_word

INF = math.inf
STANDARD_NAMES = ("a", "b", "c")
STAR_NAMES = ("b", "x", "y")


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "generator_names", tuple(self.generator_names))
        rels = tuple(r.cyclic_reduce() for r in self.relators)
        for r in rels:
            if r.max_generator() > len(self.generator_names):
                raise ValueError("relator uses an undeclared generator")
        object.__setattr__(self, "relators", rels)

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    def to_text(self) -> str:
        lines = ["gens " + " ".join(self.generator_names)]
        lines += ["rel " + format_word(r, self.generator_names) for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        names: tuple[str, ...] = ()
        rels = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tag, _, rest = line.partition(" ")
            if tag == "gens":
                names = tuple(rest.split())
            elif tag == "rel":
                rels.append(parse_word(rest, names))
            else:
                raise ValueError(f"bad presentation line: {line!r}")
        return cls(names, tuple(rels))


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = self.torsion
        if any(d < 2 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain of integers >= 2")

    def __str__(self) -> str:
        parts = ["Z"] * min(self.free_rank, 1)
        if self.free_rank > 1:
            parts = [f"Z^{self.free_rank}"]
        parts += [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) or "1"


def alternating(u: Word, v: Word, length: int) -> Word:
    """The alternating word ``u v u v ...`` with ``length`` factors."""
    out = Word()
    for k in range(length):
        out = out * (u if k % 2 == 0 else v)
    return out


def braid_relator(u: Word, v: Word, label: int | float) -> Word | None:
    """``(u,v)_K (v,u)_K^-1``, or None for an infinite label."""
    if label == INF:
        return None
    label = int(label)
    return alternating(u, v, label) * alternating(v, u, label).inverse()


def _check_label(k) -> None:
    if k != INF and (int(k) != k or k < 2):
        raise ValueError(f"Artin labels must be integers >= 2 or infinity, got {k}")


def artin_standard(M, N, P) -> Presentation:
    """``<a,b,c | (a,b)_M=(b,a)_M, (b,c)_N=(c,b)_N, (c,a)_P=(a,c)_P>``."""
    for k in (M, N, P):
        _check_label(k)
    a, b, c = (Word.gen(i) for i in (1, 2, 3))
    rels = [braid_relator(u, v, k) for u, v, k in ((a, b, M), (b, c, N), (c, a, P))]
    return Presentation(STANDARD_NAMES, tuple(r for r in rels if r is not None))


def artin_dihedral(M: int) -> Presentation:
    _check_label(M)
    a, b = Word.gen(1), Word.gen(2)
    return Presentation(("a", "b"), (braid_relator(a, b, M),))


def half_label(K: int) -> tuple[int, bool]:
    """``K = 2k`` or ``2k+1``: returns (k, K odd)."""
    return K // 2, K % 2 == 1


def r_relator(b: Word, x: Word, M: int) -> Word:
    """``b x^m b^-1 x^-m`` for M = 2m, ``b x^m b x^-(m+1)`` for M = 2m+1."""
    m, odd = half_label(M)
    if odd:
        return b * x**m * b * x ** -(m + 1)
    return b * x**m * b.inverse() * x**-m


def artin_star(M: int, N: int, override: bool = False) -> Presentation:
    """Presentation of Art_{2MN} on b, x = ab, y = cb."""
    if not override and (M < 3 or N < 3):
        raise ValueError(f"artin_star needs M, N >= 3 (got {M}, {N}); pass override=True to explore")
    _check_label(M)
    _check_label(N)
    b, x, y = (Word.gen(i) for i in (1, 2, 3))
    commutation = b * x.inverse() * y * b.inverse() * (y * x.inverse()).inverse()
    return Presentation(STAR_NAMES, (r_relator(b, x, M), r_relator(b, y, N), commutation))


def standard_to_star() -> tuple[Word, Word, Word]:
    """Images of a, b, c in the b, x, y alphabet (x = ab, y = cb)."""
    b, x, y = (Word.gen(i) for i in (1, 2, 3))
    return x * b.inverse(), b, y * b.inverse()


def cyclically_equal(u: Word, v: Word) -> bool:
    """Equal as cyclic words up to inversion."""
    u, v = u.cyclic_reduce(), v.cyclic_reduce()
    if len(u) != len(v):
        return False
    for w in (v, v.inverse()):
        doubled = w.letters + w.letters
        if any(doubled[i:i + len(u)] == u.letters for i in range(max(len(w), 1))):
            return True
    return False


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Nonzero invariant factors (a divisibility chain) and the rank.

    Exact integer arithmetic; pivots on the entry of least absolute value.
    """
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            nz = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            nz += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, pi, pj = min(nz)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag, len(diag)


def exponent_matrix(p: Presentation) -> list[list[int]]:
    return [r.exponent_sums(p.rank) for r in p.relators]


def abelianization(p: Presentation) -> AbelianInvariants:
    diag, r = smith_normal_form(exponent_matrix(p)) if p.relators else ([], 0)
    return AbelianInvariants(p.rank - r, tuple(d for d in diag if d > 1))


def hnn_presentation(a_names: Sequence[str], edge_words: Sequence[Word], images: Sequence[Word],
                     stable_letter: str = "t") -> Presentation:
    """``<A, t | t^-1 u t = beta(u)>`` over the given edge-group basis."""
    if len(edge_words) != len(images):
        raise ValueError("edge-group basis and images differ in length")
    t = Word.gen(len(a_names) + 1)
    rels = tuple(t.inverse() * u * t * w.inverse() for u, w in zip(edge_words, images))
    return Presentation(tuple(a_names) + (stable_letter,), rels)


def amalgam_presentation(a_names: Sequence[str], b_names: Sequence[str],
                         into_a: Sequence[Word], into_b: Sequence[Word]) -> Presentation:
    """``<A, B | i_A(c) = i_B(c)>`` over an edge-group basis; B letters are shifted."""
    if len(into_a) != len(into_b):
        raise ValueError("inclusions disagree on the edge-group basis size")
    shift = len(a_names)
    rels = []
    for u, v in zip(into_a, into_b):
        v_shifted = Word(tuple(x + shift if x > 0 else x - shift for x in v.letters))
        rels.append(u * v_shifted.inverse())
    return Presentation(tuple(a_names) + tuple(b_names), tuple(rels))
