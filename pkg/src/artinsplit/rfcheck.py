"""Numeric evidence for residual finiteness: the von Dyck quotient Â = <x,y | x^a, y^b, (x^-1 y)^c>.

Â is the rotation subgroup of the triangle reflection group with Coxeter
labels (ab) = a, (bc) = b, (ca) = c, realized in its geometric (Tits)
representation on R^3.  With reflections r_a, r_b, r_c we set x = r_b r_a and
y = r_b r_c, so x^-1 y = r_a r_c.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .fiber import conjugate_intersections
from .splitting import (
    BOTH_EVEN,
    BOTH_ODD,
    FAMILY_2MN,
    ArtinParams,
    build_edge_space,
    split,
)
from .subgroup import from_graph
from .words import Word, format_word

RELATOR_TOL = 1e-9
FAILURE_THRESHOLD = 1e-6
MAX_WORD_LENGTH = 64
CLOSURE_CAP = 256

X, Y = Word.gen(1), Word.gen(2)


class NumericError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuotientParams:
    x_order: int
    y_order: int
    z_order: int

    def __post_init__(self):
        for k in (self.x_order, self.y_order, self.z_order):
            if int(k) != k or k < 2:
                raise ValueError(f"orders must be integers >= 2, got {self}")

    @property
    def curvature(self) -> Fraction:
        return Fraction(1, self.x_order) + Fraction(1, self.y_order) + Fraction(1, self.z_order) - 1

    @property
    def geometry(self) -> str:
        c = self.curvature
        return "spherical" if c > 0 else "euclidean" if c == 0 else "hyperbolic"


@dataclass(frozen=True)
class TriangleRep:
    params: QuotientParams
    gram: np.ndarray
    reflections: tuple[np.ndarray, np.ndarray, np.ndarray]
    x_mat: np.ndarray
    y_mat: np.ndarray
    tol: float = RELATOR_TOL

    def generator(self, letter: int) -> np.ndarray:
        base = self.x_mat if abs(letter) == 1 else self.y_mat
        if letter > 0:
            return base
        return self.x_inv if abs(letter) == 1 else self.y_inv

    @property
    def x_inv(self) -> np.ndarray:
        # rotations are products of two involutions, so the inverse swaps the factors
        ra, rb, _ = self.reflections
        return ra @ rb

    @property
    def y_inv(self) -> np.ndarray:
        _, rb, rc = self.reflections
        return rc @ rb


def projective_distance(a: np.ndarray) -> float:
    """Max-abs distance from ``±I``."""
    eye = np.eye(a.shape[0])
    return float(min(np.max(np.abs(a - eye)), np.max(np.abs(a + eye))))


def triangle_rep(q: QuotientParams, tol: float = RELATOR_TOL) -> TriangleRep:
    # basis order e_a, e_b, e_c; m(a,b) = x_order, m(b,c) = y_order, m(c,a) = z_order
    labels = {(0, 1): q.x_order, (1, 2): q.y_order, (0, 2): q.z_order}
    gram = np.eye(3)
    for (i, j), k in labels.items():
        gram[i, j] = gram[j, i] = -math.cos(math.pi / k)
    refl = []
    for v in range(3):
        r = np.eye(3)
        r[v, :] -= 2 * gram[v, :]
        refl.append(r)
    ra, rb, rc = refl
    rep = TriangleRep(q, gram, (ra, rb, rc), rb @ ra, rb @ rc, tol)
    residuals = {f"r{name}^2": projective_distance(r @ r) for name, r in zip("abc", refl)}
    residuals.update(_relator_residuals(rep))
    bad = {k: v for k, v in residuals.items() if v >= tol}
    if bad:
        raise NumericError(f"triangle representation fails at tolerance {tol}: {bad}")
    return rep


def _relator_residuals(rep: TriangleRep) -> dict[str, float]:
    q = rep.params
    x, y = rep.x_mat, rep.y_mat
    z = np.linalg.inv(x) @ y
    return {
        f"x^{q.x_order}": projective_distance(np.linalg.matrix_power(x, q.x_order)),
        f"y^{q.y_order}": projective_distance(np.linalg.matrix_power(y, q.y_order)),
        f"(x^-1y)^{q.z_order}": projective_distance(np.linalg.matrix_power(z, q.z_order)),
    }


def evaluate(rep: TriangleRep, w: Word) -> np.ndarray:
    if len(w) > MAX_WORD_LENGTH:
        raise ValueError(f"word of length {len(w)} exceeds the {MAX_WORD_LENGTH}-letter tolerance budget")
    if w.max_generator() > 2:
        raise ValueError("words must be over x, y")
    out = np.eye(3)
    for a in w.letters:
        out = out @ rep.generator(a)
    return out


# --- quotient conditions -------------------------------------------------

def quotient_params_for(params: ArtinParams, p: int) -> QuotientParams:
    """Orders of x, y in Â: the odd label itself, or half an even label."""
    xo = params.M if params.M % 2 else params.m
    yo = params.N if params.N % 2 else params.n
    return QuotientParams(xo, yo, p)


def check_preconditions(params: ArtinParams, p: int) -> None:
    if params.family != FAMILY_2MN:
        raise ValueError("quotient conditions are implemented for Art_{2MN}")
    if params.parity == BOTH_EVEN:
        if p < 7:
            raise ValueError(f"both-even case needs p >= 7 (got p={p})")
        if max(params.m, params.n) < 3:
            raise ValueError("both-even case needs M or N at least 6 so that Â is hyperbolic"
                             " (M = N = 4 is handled by the finite-index edge group)")
    elif p < 6:
        raise ValueError(f"odd cases need p >= 6 (got p={p})")
    if quotient_params_for(params, p).geometry != "hyperbolic":
        raise ValueError("Â is not hyperbolic at these parameters")


@dataclass
class ConditionEntry:
    name: str
    status: str
    residual: float
    evidence: str = ""
    expected_failure: bool = False

    def line(self) -> str:
        out = f"RF {self.name} {self.status} residual={self.residual:.3e}"
        if self.evidence:
            out += f" {self.evidence}"
        if self.expected_failure:
            out += " expected_failure=yes"
        return out


@dataclass
class ConditionReport:
    params: ArtinParams
    p: int
    quotient: QuotientParams
    entries: list[ConditionEntry] = field(default_factory=list)

    def entry(self, name: str) -> ConditionEntry:
        return next(e for e in self.entries if e.name == name)

    @property
    def passed(self) -> bool:
        return all(e.status != "fail" or e.expected_failure for e in self.entries)

    def lines(self) -> list[str]:
        head = (f"# Art_{{{self.params.label}}} p={self.p} orders=({self.quotient.x_order},"
                f"{self.quotient.y_order},{self.quotient.z_order}) geometry={self.quotient.geometry}")
        notes = []
        if self.params.parity == BOTH_ODD:
            notes.append("# both labels odd: the self fiber product of the folded edge space is too large;"
                         " condition d is expected to fail")
        return [head, *notes, *(e.line() for e in self.entries)]


def _edge_words(params: ArtinParams) -> tuple[list[Word], list[Word]]:
    """Edge-group basis in A and its β-images (β given as words in A)."""
    s = split(params)
    if s.variant == "hnn":
        return list(s.edge_subgroup_words), list(s.beta_images)
    es = s.edge_space
    loops = es.loop_basis()
    return [es.image_in_a(c) for c in loops], [es.image_in_a(es.beta_path(c)) for c in loops]


def _kernel_preservation(rep: TriangleRep, params: ArtinParams, p: int) -> tuple[float, int]:
    """Worst distance from I over the 2-cell loops of X_C and their β-images."""
    es = build_edge_space(params)
    worst, count = 0.0, 0
    for loop, _ in es.cell_loops(commutation_power=p):
        for path in (loop, es.beta_path(loop)):
            worst = max(worst, projective_distance(evaluate(rep, es.image_in_a(path))))
            count += 1
    return worst, count


def _pure_power(w: Word) -> bool:
    return w.cyclic_reduce().single_generator_power() is not None


def _find_conjugator(rep: TriangleRep, us: list[Word], vs: list[Word], max_len: int = 4):
    """Shortest g (up to max_len) with π(v) = π(g^-1 u g) for all pairs; returns (g, residual)."""
    mats_u = [evaluate(rep, u) for u in us]
    mats_v = [evaluate(rep, v) for v in vs]
    best = (None, math.inf)
    for length in range(max_len + 1):
        for letters in itertools.product((1, -1, 2, -2), repeat=length):
            g = Word(letters)
            if len(g) != length:
                continue
            gm = evaluate(rep, g)
            gi = np.linalg.inv(gm)
            res = max(projective_distance(np.linalg.inv(gi @ mu @ gm) @ mv) for mu, mv in zip(mats_u, mats_v))
            if res < best[1]:
                best = (g, res)
            if res < rep.tol:
                return best
    return best


def _closure_size(mats: list[np.ndarray], cap: int) -> int | None:
    """Order of the matrix group generated by ``mats``; None past ``cap`` elements."""
    def key(a):
        # the sign ambiguity never arises for rotations (det 1), so key on the matrix itself
        return tuple(np.round(a, 6).ravel().tolist())

    gens = mats + [np.linalg.inv(m) for m in mats]
    seen = {key(np.eye(3)): np.eye(3)}
    frontier = [np.eye(3)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a @ g
                k = key(b)
                if k not in seen:
                    if len(seen) >= cap or np.max(np.abs(b)) > 1e6:
                        return None
                    seen[k] = b
                    nxt.append(b)
        frontier = nxt
    return len(seen)


def check_quotient_conditions(params: ArtinParams, p: int, tol: float = RELATOR_TOL) -> ConditionReport:
    check_preconditions(params, p)
    q = quotient_params_for(params, p)
    rep = triangle_rep(q, tol)
    report = ConditionReport(params, p, q)
    add = report.entries.append

    # (a) relators of Â and the pure-power edge-group words die in the quotient
    us, betas = _edge_words(params)
    res = dict(_relator_residuals(rep))
    for w in us + betas:
        if _pure_power(w):
            res[format_word(w)] = projective_distance(evaluate(rep, w))
    worst = max(res.values())
    add(ConditionEntry("a_relators", "pass" if worst < tol else "fail", worst, f"words={len(res)}"))

    # (b) π(x^-1 y) has order exactly p
    z = evaluate(rep, X.inverse() * Y)
    powers = [projective_distance(np.linalg.matrix_power(z, k)) for k in range(1, p + 1)]
    gap = min(powers[:-1]) if p > 1 else math.inf
    ok = powers[-1] < tol and gap > FAILURE_THRESHOLD
    add(ConditionEntry("b_order", "pass" if ok else "fail", powers[-1], f"min_subpower_distance={gap:.3e}"))

    # (c) β descends to π(B) -> π(β(B)) as conjugation in Â
    g, res_c = _find_conjugator(rep, us, betas)
    if res_c < tol:
        add(ConditionEntry("c_beta", "pass", res_c, f"method=conjugation conjugator={format_word(g)}"))
    elif split(params).variant == "amalgam":
        # β need not be inner in Â; it descends iff it keeps the relator loops in the kernel
        res_k, count = _kernel_preservation(rep, params, p)
        add(ConditionEntry("c_beta", "pass" if res_k < tol else "fail", res_k,
                           f"method=kernel-preservation loops={count}"))
    else:
        add(ConditionEntry("c_beta", "fail", res_c, "method=conjugation conjugator=none"))

    # (d) non-diagonal intersections of conjugates of C have finite image
    if split(params).variant == "amalgam":
        h = from_graph(build_edge_space(params).folded)
        sizes = []
        for entry in conjugate_intersections(h).entries:
            mats = [evaluate(rep, w) for w in entry.basis if len(w) <= MAX_WORD_LENGTH]
            if len(mats) < len(entry.basis):
                sizes.append(None)
                continue
            sizes.append(_closure_size(mats, CLOSURE_CAP))
        finite = all(s is not None for s in sizes)
        shown = ",".join("inf" if s is None else str(s) for s in sizes)
        add(ConditionEntry("d_intersections", "pass" if finite else "fail", 0.0,
                           f"image_orders=[{shown}] cap={CLOSURE_CAP}",
                           expected_failure=params.parity == BOTH_ODD and not finite))
    else:
        add(ConditionEntry("d_intersections", "n/a", 0.0, "edge-group images are finite cyclic"))

    # (e) hyperbolicity and virtual specialness are not checked numerically
    add(ConditionEntry("e_hyperbolic", "assumed", 0.0, f"geometry={q.geometry}"))
    return report


# --- ping-pong sampler ---------------------------------------------------

@dataclass
class PingPongReport:
    max_syllables: int
    words_tested: int
    min_distance_to_identity: float
    failures: list[Word] = field(default_factory=list)
    rows: list[tuple[str, int, float]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["word", "syllables", "distance"])
        for word, k, d in self.rows:
            out.writerow([word, k, f"{d:.12e}"])
        return buf.getvalue()


def ping_pong_generators(m: int) -> tuple[Word, Word]:
    z = X * Y.inverse()
    return z, (X**m) * z * (X**-m)


def alternating_words(p: int, max_syllables: int):
    """Yield (syllables, first factor) for alternating normal forms; exponents 1..p-1."""
    for k in range(1, max_syllables + 1):
        for first in (0, 1):
            for exps in itertools.product(range(1, p), repeat=k):
                yield tuple((first + i) % 2 for i in range(k)), exps


def normal_form_word(factors: tuple[Word, Word], kinds, exps, p: int) -> Word:
    if len(kinds) != len(exps) or any(kinds[i] == kinds[i + 1] for i in range(len(kinds) - 1)):
        raise ValueError("syllables must alternate between the two factors")
    if any(e % p == 0 for e in exps):
        raise ValueError("a syllable exponent divisible by p is not a normal form")
    out = Word()
    for kind, e in zip(kinds, exps):
        out = out * factors[kind] ** e
    return out


def ping_pong_check(rep: TriangleRep, m: int, p: int, max_syllables: int,
                    threshold: float = FAILURE_THRESHOLD, keep_rows: bool = False) -> PingPongReport:
    factors = ping_pong_generators(m)
    report = PingPongReport(max_syllables, 0, math.inf)
    for kinds, exps in alternating_words(p, max_syllables):
        w = normal_form_word(factors, kinds, exps, p)
        d = projective_distance(evaluate(rep, w))
        report.words_tested += 1
        report.min_distance_to_identity = min(report.min_distance_to_identity, d)
        if d <= threshold:
            report.failures.append(w)
        if keep_rows:
            report.rows.append((format_word(w), len(kinds), d))
    return report
