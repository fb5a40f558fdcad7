"""Bifix codes, marked words, overlap concatenation and window parsing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from .words import Alphabet, DomainError, Word, fmt


class ConstructionError(ValueError):
    """A constructed object violates its invariants."""


@dataclass(frozen=True)
class BifixCode:
    words: frozenset

    def __init__(self, words: Iterable[Sequence[str]]):
        ws = frozenset(tuple(w) for w in words)
        object.__setattr__(self, "words", ws)
        bad = self.violations()
        if bad:
            raise ConstructionError(f"not a bifix code: {bad[0]}")

    def violations(self) -> List[str]:
        out = []
        if any(len(w) == 0 for w in self.words):
            out.append("empty word")
        ws = sorted(self.words)
        for u in ws:
            for v in ws:
                if u == v or len(u) >= len(v):
                    continue
                if v[:len(u)] == u:
                    out.append(f"{fmt(u)} is a proper prefix of {fmt(v)}")
                if v[-len(u):] == u:
                    out.append(f"{fmt(u)} is a proper suffix of {fmt(v)}")
        return out

    def __contains__(self, w):
        return tuple(w) in self.words

    def __iter__(self):
        return iter(sorted(self.words, key=lambda w: (len(w), w)))

    def __len__(self):
        return len(self.words)

    @property
    def max_len(self) -> int:
        return max((len(w) for w in self.words), default=0)


@dataclass(frozen=True, order=True)
class MarkedWord:
    """A word with the lengths of its F-prefix and F-suffix."""

    word: Word
    prefix_len: int
    suffix_len: int

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        n = len(self.word)
        if not (0 < self.prefix_len < n and 0 < self.suffix_len < n):
            raise ConstructionError(
                f"marks ({self.prefix_len},{self.suffix_len}) not proper in {fmt(self.word)}")

    def __len__(self):
        return len(self.word)

    @property
    def prefix(self) -> Word:
        return self.word[:self.prefix_len]

    @property
    def suffix(self) -> Word:
        return self.word[len(self.word) - self.suffix_len:]

    @property
    def ring(self) -> Word:
        return self.word[:len(self.word) - self.suffix_len]

    @property
    def gap(self) -> int:
        return len(self.word) - self.prefix_len - self.suffix_len

    @property
    def is_bullet(self) -> bool:
        return self.gap <= 0

    def __str__(self):
        return f"{fmt(self.word)} @ {self.prefix_len} {self.suffix_len}"


def find_marks(F: BifixCode, w: Sequence[str]) -> Optional[MarkedWord]:
    """The unique proper F-prefix and F-suffix of ``w``, if both exist."""
    w = tuple(w)
    if not w:
        raise DomainError("find_marks needs a nonempty word")
    pre = [k for k in range(1, len(w)) if w[:k] in F.words]
    suf = [k for k in range(1, len(w)) if w[len(w) - k:] in F.words]
    # a bifix code admits at most one of each
    assert len(pre) <= 1 and len(suf) <= 1, (pre, suf)
    if not pre or not suf:
        return None
    return MarkedWord(w, pre[0], suf[0])


def ring(c: MarkedWord) -> Word:
    return c.ring


def chainable(a: MarkedWord, b: MarkedWord) -> bool:
    return a.suffix == b.prefix


def ostar(a: MarkedWord, b: MarkedWord) -> MarkedWord:
    """Overlap concatenation: ring(a) followed by b.

    Total on marked words; callers that need legal concatenations check
    :func:`chainable` first.
    """
    word = a.ring + b.word
    try:
        out = MarkedWord(word, a.prefix_len, b.suffix_len)
    except ConstructionError as exc:
        raise ConstructionError(f"{a} (*) {b}: {exc}") from None
    if out.prefix != a.prefix:
        raise ConstructionError(f"{a} (*) {b}: prefix mark of the left factor is destroyed")
    return out


def ostar_product(cs: Sequence[MarkedWord]) -> MarkedWord:
    if not cs:
        raise DomainError("empty product")
    out = cs[0]
    for c in cs[1:]:
        out = ostar(out, c)
    return out


@dataclass(frozen=True)
class SpoCode:
    """A finite code contained in C_F for a bifix code F."""

    bifix: BifixCode
    words: Tuple[MarkedWord, ...]
    name: str = ""

    def __post_init__(self):
        ws = tuple(sorted(set(self.words), key=lambda c: (len(c), c.word, c.prefix_len)))
        if not ws:
            raise ConstructionError("SPO-code needs at least one word")
        object.__setattr__(self, "words", ws)
        for c in ws:
            if c.prefix not in self.bifix or c.suffix not in self.bifix:
                raise ConstructionError(f"{c}: marks are not words of the bifix code")

    @classmethod
    def from_words(cls, F, words, name: str = "") -> "SpoCode":
        F = F if isinstance(F, BifixCode) else BifixCode(F)
        marked = []
        for w in words:
            if isinstance(w, MarkedWord):
                marked.append(w)
                continue
            m = find_marks(F, w)
            if m is None:
                raise ConstructionError(f"{fmt(w)} has no proper F-prefix and F-suffix")
            marked.append(m)
        return cls(F, tuple(marked), name)

    @property
    def bullet_flags(self) -> Tuple[bool, ...]:
        return tuple(c.is_bullet for c in self.words)

    @property
    def max_len(self) -> int:
        return max(len(c) for c in self.words)

    def symbols(self) -> list:
        seen = {}
        for c in self.words:
            for s in c.word:
                seen.setdefault(s, None)
        for f in self.bifix:
            for s in f:
                seen.setdefault(s, None)
        return list(seen)

    def successors(self, i: int) -> List[int]:
        a = self.words[i]
        return [j for j, b in enumerate(self.words) if chainable(a, b)]

    def chain_pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(len(self.words)) for j in self.successors(i)]


@dataclass(frozen=True)
class Factorization:
    """Placement of code words over a window ``[0, length)``.

    ``starts[k]`` is the window position of the first symbol of
    ``words[k]``; consecutive words overlap on the shared F-block, so
    ``starts[k+1] = starts[k] + len(ring(words[k]))``.  The first word is
    the one whose ring covers position 0 and the last one is the first
    word reaching the right edge; either may stick out of the window.
    """

    length: int
    starts: Tuple[int, ...]
    words: Tuple[MarkedWord, ...]

    @property
    def left_truncated(self) -> bool:
        return self.starts[0] < 0

    @property
    def right_truncated(self) -> bool:
        return self.starts[-1] + len(self.words[-1]) > self.length

    @property
    def is_full(self) -> bool:
        return not (self.left_truncated or self.right_truncated)

    @property
    def cuts(self) -> Tuple[Tuple[int, int], ...]:
        """Pairs (j, i): the shared block between words k and k+1 is w[j:i]."""
        return tuple((self.starts[k + 1], self.starts[k] + len(self.words[k]))
                     for k in range(len(self.words) - 1))

    def interior_cuts(self, margin: int) -> Tuple[Tuple[int, int], ...]:
        return tuple(c for c in self.cuts if margin <= c[0] <= self.length - margin)

    def full_factor_indices(self) -> List[int]:
        return [k for k, (s, c) in enumerate(zip(self.starts, self.words))
                if s >= 0 and s + len(c) <= self.length]

    def bullet_indices(self) -> List[int]:
        """Positions k whose factor is a bullet word (the set K for the window)."""
        return [k for k, c in enumerate(self.words) if c.is_bullet]

    def key(self):
        return (self.starts, tuple(c.word for c in self.words))


def _placements(code: SpoCode, w: Word):
    n = len(w)
    table = {}
    for i, c in enumerate(code.words):
        L = len(c)
        for s in range(-L + 1, n):
            lo, hi = max(0, s), min(n, s + L)
            if w[lo:hi] == c.word[lo - s:hi - s]:
                table.setdefault(s, []).append(i)
    return table


def parse_window(code: SpoCode, w: Sequence[str]) -> List[Factorization]:
    """All factorizations of the window ``w`` into chained code words."""
    w = tuple(w)
    n = len(w)
    if n == 0:
        return []
    table = _placements(code, w)
    succ = [code.successors(i) for i in range(len(code.words))]
    rings = [len(c.ring) for c in code.words]
    lens = [len(c) for c in code.words]
    out: List[Factorization] = []

    def extend(path):
        i, s = path[-1]
        if s + lens[i] >= n:
            out.append(Factorization(n, tuple(p[1] for p in path),
                                     tuple(code.words[p[0]] for p in path)))
            return
        s2 = s + rings[i]
        ok = table.get(s2, ())
        for j in succ[i]:
            if j in ok:
                path.append((j, s2))
                extend(path)
                path.pop()

    for s in sorted(table):
        if s > 0:
            break
        for i in table[s]:
            if s + rings[i] > 0:
                extend([(i, s)])
    out.sort(key=Factorization.key)
    return out


def legal_concatenations(code: SpoCode, n: int) -> dict:
    """Legal words c_1 (*) ... (*) c_K of length <= n, with one generating chain each.

    Maps each word to the shortlex-least index chain producing it.
    """
    found = {}
    succ = [code.successors(i) for i in range(len(code.words))]
    stack = [((i,), code.words[i]) for i in range(len(code.words)) if len(code.words[i]) <= n]
    while stack:
        chain, mw = stack.pop()
        prev = found.get(mw.word)
        if prev is None or (len(chain), chain) < (len(prev), prev):
            found[mw.word] = chain
        for j in succ[chain[-1]]:
            b = code.words[j]
            if len(mw.ring) + len(b) <= n:
                stack.append((chain + (j,), MarkedWord(mw.ring + b.word, mw.prefix_len, b.suffix_len)))
    return found


@dataclass
class UnambiguityVerdict:
    passed: bool
    n: int
    margin: int
    words_checked: int
    witness: Optional[Word] = None
    parses: Tuple[Factorization, ...] = ()
    reason: str = ""

    def to_dict(self):
        d = {"verdict": "pass-at-n" if self.passed else "fail", "n": self.n,
             "margin": self.margin, "words_checked": self.words_checked}
        if not self.passed:
            d["witness"] = fmt(self.witness)
            d["reason"] = self.reason
            d["parses"] = [factorization_dict(f) for f in self.parses]
        return d


def factorization_dict(f: Factorization) -> dict:
    return {"starts": list(f.starts), "words": [fmt(c.word) for c in f.words],
            "cuts": [list(c) for c in f.cuts],
            "left_truncated": f.left_truncated, "right_truncated": f.right_truncated}


def check_unambiguous(code: SpoCode, n: int, margin: Optional[int] = None,
                      alphabet: Optional[Alphabet] = None) -> UnambiguityVerdict:
    """Search legal concatenation words of length <= n for two parses.

    A word fails if it has two distinct full factorizations, or two window
    factorizations whose cuts inside the central region (``margin`` from
    each edge) differ.  The reported witness is shortlex-least.
    """
    m = code.max_len if margin is None else margin
    if n < 2 * code.max_len:
        raise DomainError(f"n={n} must be at least twice the longest code word ({code.max_len})")
    alphabet = alphabet or Alphabet(code.symbols())
    words = alphabet.sorted(legal_concatenations(code, n))
    for u in words:
        parses = parse_window(code, u)
        full = [f for f in parses if f.is_full]
        if len(full) >= 2:
            return UnambiguityVerdict(False, n, m, len(words), u, (full[0], full[1]),
                                      "two full factorizations")
        if len(u) >= 2 * m:
            seen = {}
            for f in parses:
                key = f.interior_cuts(m)
                if key not in seen:
                    seen[key] = f
                if len(seen) >= 2:
                    a, b = list(seen.values())[:2]
                    return UnambiguityVerdict(False, n, m, len(words), u, (a, b),
                                              "two interior factorizations of the central region")
    return UnambiguityVerdict(True, n, m, len(words))


def concatenation_language(code: SpoCode, n: int, alphabet: Optional[Alphabet] = None):
    """Language table (lengths 1..n) of the coded system generated by ``code``."""
    from .language import enumerate_language
    from .presentation import SpoCoded
    return enumerate_language(SpoCoded(code, alphabet), n)
