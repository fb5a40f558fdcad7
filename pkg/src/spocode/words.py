"""Alphabets and words.

Words are plain tuples of symbol names (strings). Symbol names may be
longer than one character (``"-1"``, ``"g"``), so the textual form of a
word is the comma-joined list of its symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple  # tuple[str, ...]


class DomainError(ValueError):
    """An operation was called outside its documented domain."""


class ResourceError(RuntimeError):
    """A configurable size budget was exceeded."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if not symbols:
            raise DomainError("alphabet must be nonempty")
        if len(set(symbols)) != len(symbols):
            raise DomainError(f"duplicate symbols in alphabet {symbols}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def index(self, symbol: str) -> int:
        return self._index[symbol]

    def check(self, word: Sequence[str]) -> Word:
        w = tuple(word)
        for s in w:
            if s not in self._index:
                raise DomainError(f"symbol {s!r} not in alphabet {self.symbols}")
        return w

    def sort_key(self, word: Sequence[str]):
        """Length first, then position-wise alphabet order."""
        return (len(word), tuple(self._index[s] for s in word))

    def sorted(self, words: Iterable[Sequence[str]]) -> list:
        return sorted((tuple(w) for w in words), key=self.sort_key)


def word(spec, sep=",") -> Word:
    """Parse ``"g,d,g"`` (or pass through a sequence) into a word."""
    if isinstance(spec, str):
        spec = spec.strip()
        if not spec:
            return ()
        return tuple(s.strip() for s in spec.split(sep))
    return tuple(str(s) for s in spec)


def fmt(w: Sequence[str]) -> str:
    return ",".join(w)


def power(symbol: str, n: int) -> Word:
    return (symbol,) * n


def occurrences(pattern: Sequence[str], w: Sequence[str]) -> list:
    """Start positions of ``pattern`` in ``w`` (overlaps included)."""
    p, w = tuple(pattern), tuple(w)
    m = len(p)
    return [i for i in range(len(w) - m + 1) if w[i:i + m] == p]


def is_factor(pattern: Sequence[str], w: Sequence[str]) -> bool:
    return bool(occurrences(pattern, w))


def factors(w: Sequence[str], n: int) -> set:
    w = tuple(w)
    return {w[i:i + n] for i in range(len(w) - n + 1)}
