"""Freely reduced words in a finite-rank free group.

A letter is a nonzero int: ``+i`` is the i-th generator (1-based) and
``-i`` its inverse.  Words are immutable and always freely reduced.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

DEFAULT_NAMES = ("x", "y", "z")


def letter_generator(letter: int) -> int:
    return abs(letter)


def letter_sign(letter: int) -> int:
    return 1 if letter > 0 else -1


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True, order=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def gen(cls, i: int, power: int = 1) -> "Word":
        """``g_i ** power``; a negative index means the inverse generator."""
        a = i if power >= 0 else -i
        return cls((a,) * abs(power))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-a for a in reversed(self.letters)))

    __invert__ = inverse

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def conjugate(self, g: "Word") -> "Word":
        """``g^-1 * self * g``."""
        return g.inverse() * self * g

    def cyclic_reduce(self) -> "Word":
        w = self.letters
        i, j = 0, len(w)
        while j - i >= 2 and w[i] == -w[j - 1]:
            i += 1
            j -= 1
        return Word(w[i:j])

    def max_generator(self) -> int:
        return max((abs(a) for a in self.letters), default=0)

    def exponent_sums(self, rank: int) -> list[int]:
        sums = [0] * rank
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return sums

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Apply the homomorphism sending generator i to ``images[i-1]``."""
        out: list[int] = []
        for a in self.letters:
            img = images[abs(a) - 1]
            out.extend(img.letters if a > 0 else img.inverse().letters)
        return Word(tuple(out))

    def single_generator_power(self) -> tuple[int, int] | None:
        """(generator, exponent) if the word is a nonzero power of one generator."""
        if not self.letters:
            return None
        a = self.letters[0]
        if all(b == a for b in self.letters):
            return abs(a), len(self.letters) * letter_sign(a)
        return None

    def format(self, names: Sequence[str] = DEFAULT_NAMES) -> str:
        return format_word(self, names)


def format_word(w: Word, names: Sequence[str] = DEFAULT_NAMES) -> str:
    """Render as ``x^2.y^-1.x``; the identity renders as ``1``."""
    if not w.letters:
        return "1"
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        a, k = letters[i], j - i
        exp = k if a > 0 else -k
        name = _name(abs(a), names)
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return ".".join(parts)


def _name(i: int, names: Sequence[str]) -> str:
    if i - 1 < len(names):
        return names[i - 1]
    return f"g{i}"


def parse_word(text: str, names: Sequence[str] = DEFAULT_NAMES) -> Word:
    text = text.strip()
    if text in ("", "1", "e"):
        return Word()
    index = {n: i + 1 for i, n in enumerate(names)}
    letters: list[int] = []
    for token in text.split("."):
        token = token.strip()
        name, _, exp = token.partition("^")
        if name in index:
            g = index[name]
        elif name.startswith("g") and name[1:].isdigit():
            g = int(name[1:])
        else:
            raise ValueError(f"unknown generator {name!r} in {text!r}")
        k = int(exp) if exp else 1
        letters.extend([g if k > 0 else -g] * abs(k))
    return Word(tuple(letters))


def check_alphabet(w: Word, rank: int) -> None:
    if w.max_generator() > rank:
        raise ValueError(f"word {w.letters} uses a generator outside F_{rank}")


def reduced_words(rank: int, length: int) -> Iterator[Word]:
    """All freely reduced words of exactly the given length."""
    alphabet = [i for g in range(1, rank + 1) for i in (g, -g)]
    if length == 0:
        yield Word()
        return

    def extend(prefix: tuple[int, ...]):
        if len(prefix) == length:
            yield Word(prefix)
            return
        for a in alphabet:
            if prefix and prefix[-1] == -a:
                continue
            yield from extend(prefix + (a,))

    yield from extend(())


def words_up_to(rank: int, max_length: int) -> Iterator[Word]:
    for n in range(max_length + 1):
        yield from reduced_words(rank, n)
